// Copyright 2026 The jerkseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "jerkseg/assembler.hpp"
#include "jerkseg/presets.hpp"
#include "oracles.hpp"

namespace jerkseg {
namespace {

using testing::ScaledMoments;

SegmentFamily PickPlaceFamily(double a_max, SegmentMethod m = SegmentMethod::kTimeOptimal) {
  const ParameterSet set = PickAndPlace();
  return PrecomputeFamily(a_max, set.limits, set.modal, m);
}

// Case 1 layout built directly from the family for given holds; returns the
// terminal position.
double Case1Position(const SegmentFamily& fam, double t1, double t2) {
  const double t_seg2 = fam.t_f1() + t1;
  const double t_seg3 = t_seg2 + fam.t_f2() + t2;
  std::vector<JerkStep> steps;
  for (const JerkStep& s : fam.seg1.profile.steps()) steps.push_back(s);
  for (const JerkStep& s : fam.seg2.profile.steps()) steps.push_back({s.t + t_seg2, s.a});
  for (const JerkStep& s : fam.seg3.profile.steps()) steps.push_back({s.t + t_seg3, s.a});
  const JerkProfile p(std::move(steps));
  return EvalKinematics(p, std::max(p.end_time(), 0.0) + 1.0).z;
}

void ExpectRestToRest(const PlanResult& p, double j_lim, const PlantModal& modal) {
  const KinematicSample end = EvalKinematics(p.profile, p.t_ft);
  EXPECT_NEAR(end.z, p.z_f, 1e-9);
  EXPECT_NEAR(end.v, 0.0, 1e-9);
  EXPECT_NEAR(end.acc, 0.0, 1e-9);
  EXPECT_LE(ScaledMoments(p.profile, j_lim, p.t_ft), 1e-9);
  EXPECT_LE(ResidualAmplitude(p.profile, modal), 1e-9);
}

TEST(Case1, ZeroHoldsGiveSegmentSum) {
  // Undamped plant with ZV segments: symmetric ramps, so both holds vanish
  // together.
  const ParameterSet set = SlowUndamped();
  const SegmentFamily fam = PrecomputeFamily(2.0, set.limits, set.modal, SegmentMethod::kZv);
  const double z = fam.s_f1() + fam.s_f2() + fam.s_f3() + fam.v_f1() * fam.t_f2() +
                   fam.v_f3() * fam.t_f3();
  const auto [t1, t2] = Case1Holds(z, fam);
  EXPECT_NEAR(t1, 0.0, 1e-12);
  EXPECT_NEAR(t2, 0.0, 1e-12);
  const PlanResult p = AssembleCase1(z, fam);
  EXPECT_NEAR(p.t_ft, fam.t_f1() + fam.t_f2() + fam.t_f3(), 1e-12);
  ExpectRestToRest(p, set.limits.j_lim, set.modal);
}

TEST(Case1, ZeroFirstHoldOnDampedFamily) {
  const SegmentFamily fam = PickPlaceFamily(20.0);
  const double c = (fam.v_f1() + fam.v_f2() - fam.v_f3()) / fam.a_max;
  const double z = Case1Position(fam, 0.0, c);
  const auto [t1, t2] = Case1Holds(z, fam);
  EXPECT_NEAR(t1, 0.0, 1e-11);
  EXPECT_NEAR(t2, c, 1e-11);
}

TEST(Case1, ShortMoveOverlapsAndViolatesJerk) {
  const ParameterSet set = PickAndPlace();
  const SegmentFamily fam = PickPlaceFamily(20.0);
  PlanResult p = AssembleCase1(0.0015, fam);
  EXPECT_LT(p.t1, 0.0);
  EXPECT_LT(p.t2, 0.0);
  const LimitReport r = CheckLimits(p, set.limits);
  EXPECT_TRUE(r.j_violated);
  EXPECT_GT(r.j_peak, set.limits.j_lim);
  ExpectRestToRest(p, set.limits.j_lim, set.modal);
}

TEST(Case1, ClosedFormMatchesBisection) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const SegmentFamily fam = PickPlaceFamily(5.0 + 15.0 * u(rng));
    const double z = 0.001 + 0.15 * u(rng);
    const double c = (fam.v_f1() + fam.v_f2() - fam.v_f3()) / fam.a_max;
    auto g = [&](double t1) { return Case1Position(fam, t1, t1 + c) - z; };
    // Walk down from a large hold to the first sign change: the larger root.
    double hi = 1.0, lo = hi;
    while (g(lo) > 0.0) lo -= 1e-3;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) > 0.0 ? hi : lo) = mid;
    }
    EXPECT_NEAR(Case1Holds(z, fam).first, 0.5 * (lo + hi), 1e-10);
  }
}

TEST(Case2, HoldAndCruiseVelocity) {
  const ParameterSet set = PickAndPlace();
  const SegmentFamily fam = PickPlaceFamily(20.0, SegmentMethod::kZv);
  const PlanResult p = AssembleCase2(0.3, fam, set.limits.v_lim);
  EXPECT_DOUBLE_EQ(p.t_a_max, (1.5 - (fam.v_f1() + fam.v_f3())) / 20.0);
  const double t3 = 2.0 * fam.t_f1() + p.t_a_max;
  const KinematicSample cruise = EvalKinematics(p.profile, t3);
  EXPECT_NEAR(cruise.v, 1.5, 1e-12);
  EXPECT_NEAR(cruise.acc, 0.0, 1e-12);
  EXPECT_NEAR(p.t_ft, 2.0 * t3 + p.t_v_max, 1e-12);
  EXPECT_GT(p.t_v_max, 0.0);
  ExpectRestToRest(p, set.limits.j_lim, set.modal);
}

TEST(Case2, MirrorSymmetry) {
  const ParameterSet set = PickAndPlace();
  for (SegmentMethod m : {SegmentMethod::kZv, SegmentMethod::kTimeOptimal}) {
    const SegmentFamily fam = PickPlaceFamily(20.0, m);
    const PlanResult p = AssembleCase2(0.25, fam, set.limits.v_lim);
    const double t3 = 2.0 * fam.t_f1() + p.t_a_max;
    const double t4 = t3 + p.t_v_max;
    for (int k = 0; k < 100; ++k) {
      const double t = t3 * (k + 0.5) / 100.0;
      EXPECT_NEAR(EvalKinematics(p.profile, t + t4).acc, -EvalKinematics(p.profile, t).acc,
                  1e-10);
    }
  }
}

TEST(Case3, ZeroHoldDistance) {
  const SegmentFamily fam = PickPlaceFamily(20.0);
  const double z = (fam.v_f1() + fam.v_f3()) * 2.0 * fam.t_f1();
  EXPECT_NEAR(Case3AccelHold(z, fam), 0.0, 1e-12);
}

TEST(Case3, MatchesIndependentQuadratic) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const SegmentFamily fam = PickPlaceFamily(4.0 + 16.0 * u(rng));
    const double z = 0.02 + 0.2 * u(rng);
    // a t^2 + (2 a t_f1 + v_f) t + (2 t_f1 v_f - z) = 0, in long double.
    const long double a = fam.a_max, vf = fam.v_f1() + fam.v_f3(), tf = fam.t_f1();
    const long double b = 2 * a * tf + vf, c = 2 * tf * vf - z;
    const long double root = (-b + std::sqrt(b * b - 4 * a * c)) / (2 * a);
    EXPECT_NEAR(Case3AccelHold(z, fam), static_cast<double>(root), 1e-12);
  }
}

TEST(Case3, GapDistanceHasLowPeakVelocity) {
  const ParameterSet set = PickAndPlace();
  const SegmentFamily fam = PickPlaceFamily(20.0);
  const double z = 0.157;
  ASSERT_LT(z, MinCase2Distance(fam, set.limits.v_lim));
  const PlanResult c1 = AssembleCase1(z, fam);
  EXPECT_TRUE(CheckLimits(c1, set.limits).v_violated);
  const PlanResult c3 = AssembleCase3(z, fam);
  const double v_max = fam.v_f1() + fam.v_f3() + fam.a_max * c3.t_a_max;
  EXPECT_LT(v_max, set.limits.v_lim);
  EXPECT_NEAR(CheckLimits(c3, set.limits).v_peak, v_max, 1e-12);
  ExpectRestToRest(c3, set.limits.j_lim, set.modal);
}

TEST(Case1, NegativeDiscriminantIsInfeasible) {
  // Hand-made family whose segments alone overshoot a tiny distance by far.
  SegmentFamily fam = PickPlaceFamily(20.0);
  fam.seg1.s_f = 10.0;
  EXPECT_THROW(Case1Holds(1e-6, fam), InfeasibleError);
  EXPECT_THROW(AssembleCase1(1e-6, fam), InfeasibleError);
}

TEST(PlanForAmax, CaseSelection) {
  const ParameterSet set = PickAndPlace();
  const SegmentFamily fam = PickPlaceFamily(20.0);
  EXPECT_EQ(PlanForAmax(0.0005, fam, set.limits).case_tag, CaseTag::kCase1);
  EXPECT_EQ(PlanForAmax(0.3, fam, set.limits).case_tag, CaseTag::kCase2);
  EXPECT_EQ(PlanForAmax(0.0, fam, set.limits).case_tag, CaseTag::kRest);
  EXPECT_EQ(PlanForAmax(0.0, fam, set.limits).t_ft, 0.0);
}

TEST(PlanForAmax, CaseRegionsAreContiguousAndOrdered) {
  for (const ParameterSet& set : AllParameterSets()) {
    const SegmentFamily fam =
        PrecomputeFamily(set.limits.a_lim, set.limits, set.modal, SegmentMethod::kTimeOptimal);
    const double z_top = 3.0 * MinCase2Distance(fam, set.limits.v_lim);
    std::vector<CaseTag> order;
    for (int k = 1; k <= 600; ++k) {
      const CaseTag tag = PlanForAmax(z_top * k / 600.0, fam, set.limits).case_tag;
      if (order.empty() || order.back() != tag) order.push_back(tag);
    }
    ASSERT_GE(order.size(), 2u) << set.name;
    EXPECT_EQ(order.front(), CaseTag::kCase1) << set.name;
    EXPECT_EQ(order.back(), CaseTag::kCase2) << set.name;
    if (order.size() == 3) EXPECT_EQ(order[1], CaseTag::kCase3) << set.name;
    EXPECT_LE(order.size(), 3u) << set.name;
  }
}

TEST(PlanForAmax, NegativeDistanceIsMirrored) {
  const ParameterSet set = PickAndPlace();
  const SegmentFamily fam = PickPlaceFamily(20.0);
  const PlanResult pos = PlanForAmax(0.04, fam, set.limits);
  const PlanResult neg = PlanForAmax(-0.04, fam, set.limits);
  EXPECT_EQ(neg.t_ft, pos.t_ft);
  EXPECT_EQ(neg.z_f, -0.04);
  EXPECT_NEAR(EvalKinematics(neg.profile, neg.t_ft).z, -0.04, 1e-12);
}

TEST(PlanForAmax, TimeNonDecreasingWithinEachCase) {
  const ParameterSet set = PickAndPlace();
  const SegmentFamily fam = PickPlaceFamily(20.0);
  PlanResult prev = PlanForAmax(0.0005, fam, set.limits);
  for (int k = 2; k <= 600; ++k) {
    const PlanResult p = PlanForAmax(0.0005 * k, fam, set.limits);
    if (p.case_tag == prev.case_tag) EXPECT_GE(p.t_ft, prev.t_ft - 1e-12);
    prev = p;
  }
}

TEST(CheckLimits, FullAccelerationIsClean) {
  const ParameterSet set = PickAndPlace();
  const PlanResult p = PlanForAmax(0.3, PickPlaceFamily(20.0), set.limits);
  EXPECT_TRUE(p.limit_report.clean());
  EXPECT_NEAR(p.limit_report.a_peak, 20.0, 1e-9);
  EXPECT_NEAR(p.limit_report.v_peak, 1.5, 1e-9);
  EXPECT_NEAR(p.limit_report.j_peak, 800.0, 1e-9);
}

TEST(CheckLimits, AccelerationAboveAmaxButBelowLimitIsAllowed) {
  // Overlapping segments at a low working acceleration can overshoot a_max;
  // only a_lim counts.
  const ParameterSet set = PickAndPlace();
  bool found = false;
  for (int ia = 1; ia <= 80 && !found; ++ia) {
    const SegmentFamily fam = PickPlaceFamily(0.25 * ia);
    for (int iz = 1; iz <= 200 && !found; ++iz) {
      PlanResult p;
      try {
        p = PlanForAmax(5e-6 * iz, fam, set.limits);
      } catch (const InfeasibleError&) {
        continue;
      }
      if (p.limit_report.a_peak > fam.a_max * (1.0 + 1e-6)) {
        found = true;
        EXPECT_LE(p.limit_report.a_peak, set.limits.a_lim);
        EXPECT_FALSE(p.limit_report.a_violated);
      }
    }
  }
  EXPECT_TRUE(found);
}

TEST(CheckLimits, VelocityPeakBetweenSteps) {
  // acc crosses zero inside an interval: the velocity peak lies there.
  const JerkProfile p({{0.0, -10.0}, {2.0, 10.0}}, {0.0, 0.0, 10.0});
  const LimitReport r = CheckLimits(p, {4.0, 100.0, 100.0});
  EXPECT_NEAR(r.v_peak, 5.0, 1e-12);
  EXPECT_TRUE(r.v_violated);
  EXPECT_FALSE(r.a_violated);
}

TEST(Assembled, RestToRestOnRandomDistances) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const ParameterSet& set : AllParameterSets()) {
    for (SegmentMethod m : {SegmentMethod::kZv, SegmentMethod::kTimeOptimal}) {
      for (int trial = 0; trial < 10; ++trial) {
        const SegmentFamily fam =
            PrecomputeFamily(set.limits.a_lim * (0.2 + 0.8 * u(rng)), set.limits, set.modal, m);
        const double z = 2.0 * MinCase2Distance(fam, set.limits.v_lim) * u(rng) + 1e-5;
        ExpectRestToRest(PlanForAmax(z, fam, set.limits), set.limits.j_lim, set.modal);
      }
    }
  }
}

}  // namespace
}  // namespace jerkseg
