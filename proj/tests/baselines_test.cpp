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

#include <algorithm>
#include <cmath>
#include <limits>

#include "jerkseg/baselines.hpp"
#include "jerkseg/optimizer.hpp"
#include "jerkseg/presets.hpp"
#include "oracles.hpp"

namespace jerkseg {
namespace {

using testing::IntegrateRk4;

void ExpectRestToRest(const PlanResult& p, double z, double tol) {
  const KinematicSample end = EvalKinematics(p.profile, p.t_ft);
  EXPECT_NEAR(end.z, z, tol);
  EXPECT_NEAR(end.v, 0.0, tol);
  EXPECT_NEAR(end.acc, 0.0, tol);
  EXPECT_NEAR(end.jerk, 0.0, tol);
}

// Evaluating the step sum at t_ft cancels terms of size j T^3 / 6, so the
// attainable endpoint accuracy scales with that.
double EvalTolerance(const PlanResult& p, const KinematicLimits& lim, double z) {
  const double t = p.t_ft;
  return 1e-12 * std::max(1.0, z) +
         64.0 * std::numeric_limits<double>::epsilon() * lim.j_lim *
             std::max(1.0, t * t * t);
}

TEST(SCurve, FullSevenPhaseProfile) {
  // Accel phase v/a + a/j = 0.1 s covers 75 mm; 150 mm of cruise at 1.5 m/s.
  const PlanResult p = SCurve(0.3, {1.5, 20.0, 800.0});
  EXPECT_NEAR(p.t_ft, 0.3, 1e-12);
  EXPECT_NEAR(p.t_v_max, 0.1, 1e-12);
  EXPECT_NEAR(p.t_a_max, 0.05, 1e-12);
  EXPECT_EQ(p.case_tag, CaseTag::kSCurve);
  EXPECT_EQ(p.profile.size(), 8u);
  ExpectRestToRest(p, 0.3, 1e-12);
  EXPECT_NEAR(p.limit_report.v_peak, 1.5, 1e-12);
  EXPECT_NEAR(p.limit_report.a_peak, 20.0, 1e-12);
  EXPECT_TRUE(p.limit_report.clean());
}

TEST(SCurve, TriangularJerkOnly) {
  const double z = 1e-4, j = 800.0;
  const PlanResult p = SCurve(z, {1.5, 20.0, j});
  EXPECT_NEAR(p.t_ft, 4.0 * std::cbrt(z / (2.0 * j)), 1e-12);
  EXPECT_EQ(p.t_a_max, 0.0);
  EXPECT_EQ(p.t_v_max, 0.0);
  ExpectRestToRest(p, z, 1e-12);
}

TEST(SCurve, VelocityLimitedWithoutAccelerationPlateau) {
  // sqrt(v j) = 10 < a_lim: the acceleration never plateaus.
  const KinematicLimits lim{0.125, 20.0, 800.0};
  const PlanResult p = SCurve(0.5, lim);
  EXPECT_EQ(p.t_a_max, 0.0);
  EXPECT_GT(p.t_v_max, 0.0);
  EXPECT_NEAR(p.limit_report.a_peak, std::sqrt(0.125 * 800.0), 1e-12);
  ExpectRestToRest(p, 0.5, EvalTolerance(p, lim, 0.5));
}

TEST(SCurve, RandomDistancesHitEndpointAndRespectLimits) {
  auto rng = testing::Rng(7);
  for (int i = 0; i < 200; ++i) {
    const KinematicLimits lim{testing::Uniform(rng, 0.1, 3.0),
                              testing::Uniform(rng, 1.0, 40.0),
                              testing::Uniform(rng, 50.0, 2000.0)};
    const double z = std::exp(testing::Uniform(rng, std::log(1e-5), std::log(2.0)));
    const PlanResult p = SCurve(z, lim);
    ExpectRestToRest(p, z, EvalTolerance(p, lim, z));
    EXPECT_TRUE(p.limit_report.clean()) << p.limit_report.Describe();
    EXPECT_EQ(MomentConditions(p.profile)[0], 0.0);
    // RK4 oracle of the chain of integrators.
    const PlantModal m = PlantModal::FromUndamped(50.0, 1.0, 0.1);
    const testing::OracleState s =
        IntegrateRk4(p.profile, m, testing::OracleState{}, p.t_ft, 1e-4);
    EXPECT_NEAR(s.z, z, 1e-9 * std::max(1.0, z));
  }
}

TEST(SCurve, NegativeDistanceMirrors) {
  const KinematicLimits lim{1.5, 20.0, 800.0};
  const PlanResult pos = SCurve(0.05, lim);
  const PlanResult neg = SCurve(-0.05, lim);
  EXPECT_EQ(neg.t_ft, pos.t_ft);
  EXPECT_EQ(neg.profile, pos.profile.Scaled(-1.0));
}

TEST(ZvShape, AddsHalfPeriodAndCancelsResidual) {
  const ParameterSet set = PickAndPlace();
  for (double z : {0.001, 0.03, 0.3}) {
    const PlanResult s = SCurve(z, set.limits);
    const PlanResult zv = ZvShape(s, set.modal);
    EXPECT_NEAR(zv.t_ft - s.t_ft, M_PI / set.modal.omega_d, 1e-12);
    EXPECT_EQ(zv.case_tag, CaseTag::kZvSCurve);
    ExpectRestToRest(zv, z, 1e-12);
    EXPECT_GT(ResidualAmplitude(s.profile, set.modal), 1e-7);
    EXPECT_LT(ResidualAmplitude(zv.profile, set.modal), 1e-9 * z);
  }
}

TEST(ZvShape, PeaksDoNotExceedUnshaped) {
  const ParameterSet set = LabSystem();
  for (double z : LabDistances()) {
    const PlanResult s = SCurve(z, set.limits);
    const PlanResult zv = ZvShape(s, set.modal);
    EXPECT_LE(zv.limit_report.v_peak, s.limit_report.v_peak * (1 + 1e-12));
    EXPECT_LE(zv.limit_report.a_peak, s.limit_report.a_peak * (1 + 1e-12));
    EXPECT_LE(zv.limit_report.j_peak, s.limit_report.j_peak * (1 + 1e-12));
  }
}

TEST(ZvShape, EqualsSumOfShiftedScaledCopies) {
  const ParameterSet set = LabSystem();
  const PlanResult s = SCurve(0.1, set.limits);
  const PlanResult zv = ZvShape(s, set.modal);
  const double k = std::exp(-set.modal.delta * M_PI / set.modal.omega_d);
  const double a1 = 1.0 / (1.0 + k), a2 = k / (1.0 + k);
  const JerkProfile expect =
      s.profile.Scaled(a1) + s.profile.Shifted(M_PI / set.modal.omega_d).Scaled(a2);
  for (double t = 0.0; t <= zv.t_ft; t += 1e-3) {
    const KinematicSample x = EvalKinematics(zv.profile, t);
    const KinematicSample y = EvalKinematics(expect, t);
    EXPECT_NEAR(x.z, y.z, 1e-13);
    EXPECT_NEAR(x.acc, y.acc, 1e-12);
  }
  // Shaping commutes with uniform time shift.
  const JerkProfile late = ZvShape(PlanResult{.profile = s.profile.Shifted(0.2),
                                              .t_ft = s.t_ft + 0.2},
                                   set.modal)
                               .profile;
  EXPECT_EQ(late.size(), zv.profile.size());
  for (std::size_t i = 0; i < late.size(); ++i) {
    EXPECT_NEAR(late.steps()[i].t, zv.profile.steps()[i].t + 0.2, 1e-12);
    EXPECT_NEAR(late.steps()[i].a, zv.profile.steps()[i].a, 1e-12);
  }
}

TEST(ZvShape, RigidPlantCostsNothing) {
  const KinematicLimits lim{1.5, 20.0, 800.0};
  const PlantModal stiff = PlantModal::FromUndamped(1e6, 0.0, 0.05);
  const PlanResult s = SCurve(0.1, lim);
  EXPECT_NEAR(ZvShape(s, stiff).t_ft, s.t_ft, 2.0 * M_PI / stiff.omega_d);
}

TEST(Baselines, LabOrdering) {
  const ParameterSet set = LabSystem();
  for (double z : LabDistances()) {
    const double ts = SCurve(z, set.limits).t_ft;
    const double tz = ZvShape(SCurve(z, set.limits), set.modal).t_ft;
    const double to = Plan(z, set.limits, set.modal).t_ft;
    EXPECT_LT(ts, to) << z;
    EXPECT_LT(to, tz) << z;
  }
}

}  // namespace
}  // namespace jerkseg
