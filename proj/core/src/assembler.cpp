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

#include "jerkseg/assembler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace jerkseg {

namespace {

// Collects shifted copies of segment step lists and tracks the extent.
class Layout {
 public:
  void Add(const JerkSegment& seg, double offset, double sign) {
    for (const JerkStep& s : seg.profile.steps()) {
      steps_.push_back({s.t + offset, sign * s.a});
    }
    begin_ = std::min(begin_, offset);
    end_ = std::max(end_, offset + seg.t_f);
  }

  void AddProfile(const std::vector<JerkStep>& steps, double offset,
                  double sign, double length) {
    for (const JerkStep& s : steps) steps_.push_back({s.t + offset, sign * s.a});
    begin_ = std::min(begin_, offset);
    end_ = std::max(end_, offset + length);
  }

  // Moves the earliest segment start to t = 0.
  void Finish(PlanResult& out) const {
    std::vector<JerkStep> steps = steps_;
    for (JerkStep& s : steps) s.t -= begin_;
    out.profile = JerkProfile(std::move(steps));
    out.t_ft = end_ - begin_;
  }

  const std::vector<JerkStep>& steps() const { return steps_; }
  double begin() const { return begin_; }
  double end() const { return end_; }

 private:
  std::vector<JerkStep> steps_;
  double begin_ = std::numeric_limits<double>::infinity();
  double end_ = -std::numeric_limits<double>::infinity();
};

void RequirePositive(double z_f) {
  if (!(z_f > 0.0) || !std::isfinite(z_f)) {
    throw std::invalid_argument("distance must be positive and finite");
  }
}

// Larger root of t^2 + p t + q = 0.
double LargerRoot(double p, double q, const char* what) {
  const double disc = 0.25 * p * p - q;
  if (disc < 0.0) {
    std::ostringstream msg;
    msg << what << ": negative discriminant " << disc;
    throw InfeasibleError(msg.str());
  }
  const double r = std::sqrt(disc);
  // Cancellation-free form when -p/2 and r nearly cancel.
  if (p > 0.0) return -q / (0.5 * p + r);
  return -0.5 * p + r;
}

PlanResult Mirrored(PlanResult p) {
  p.profile = p.profile.Scaled(-1.0);
  p.z_f = -p.z_f;
  return p;
}

}  // namespace

const char* ToString(CaseTag tag) {
  switch (tag) {
    case CaseTag::kRest: return "rest";
    case CaseTag::kCase1: return "case1";
    case CaseTag::kCase2: return "case2";
    case CaseTag::kCase3: return "case3";
    case CaseTag::kSCurve: return "scurve";
    case CaseTag::kZvSCurve: return "zv_scurve";
  }
  return "unknown";
}

std::string LimitReport::Describe() const {
  std::ostringstream out;
  out.precision(9);
  out << "v_peak=" << v_peak << (v_violated ? "!" : "") << " a_peak=" << a_peak
      << (a_violated ? "!" : "") << " j_peak=" << j_peak << (j_violated ? "!" : "");
  return out.str();
}

std::pair<double, double> Case1Holds(double z_f, const SegmentFamily& fam) {
  const double a = fam.a_max;
  const double v1 = fam.v_f1(), v2 = fam.v_f2(), v3 = fam.v_f3();
  const double p = (a * fam.t_f2() + 2.0 * v1 + v2) / a;
  const double q = -z_f / a +
                   (fam.s_f1() + fam.s_f2() + fam.s_f3() + v1 * fam.t_f2() +
                    v3 * fam.t_f3()) / a +
                   (v1 + v2 + v3) * (v1 + v2 - v3) / (2.0 * a * a);
  const double t1 = LargerRoot(p, q, "case 1");
  const double t2 = t1 + (v1 + v2 - v3) / a;
  return {t1, t2};
}

double Case2AccelHold(const SegmentFamily& fam, double v_lim) {
  return (v_lim - (fam.v_f1() + fam.v_f3())) / fam.a_max;
}

double Case3AccelHold(double z_f, const SegmentFamily& fam) {
  const double a = fam.a_max;
  const double vf = fam.v_f1() + fam.v_f3();
  const double p = (2.0 * a * fam.t_f1() + vf) / a;
  const double q = (2.0 * fam.t_f1() * vf - z_f) / a;
  return LargerRoot(p, q, "case 3");
}

double MinCase2Distance(const SegmentFamily& fam, double v_lim) {
  return v_lim * (2.0 * fam.t_f1() + Case2AccelHold(fam, v_lim));
}

PlanResult AssembleCase1(double z_f, const SegmentFamily& fam) {
  RequirePositive(z_f);
  const auto [t1, t2] = Case1Holds(z_f, fam);
  const double t_seg2 = fam.t_f1() + t1;
  const double t_seg3 = t_seg2 + fam.t_f2() + t2;
  Layout layout;
  layout.Add(fam.seg1, 0.0, 1.0);
  layout.Add(fam.seg2, t_seg2, 1.0);
  layout.Add(fam.seg3, t_seg3, 1.0);
  PlanResult out;
  out.case_tag = CaseTag::kCase1;
  out.z_f = z_f;
  out.t1 = t1;
  out.t2 = t2;
  out.a_max_used = fam.a_max;
  layout.Finish(out);
  return out;
}

namespace {

// Acceleration phase followed, after a cruise of t_v, by its mirror image.
PlanResult MirroredPhases(double z_f, const SegmentFamily& fam, double t_a,
                          double t_v, CaseTag tag) {
  Layout accel;
  accel.Add(fam.seg1, 0.0, 1.0);
  accel.Add(fam.seg3, fam.t_f1() + t_a, -1.0);
  const double t3 = 2.0 * fam.t_f1() + t_a;
  Layout full;
  full.AddProfile(accel.steps(), 0.0, 1.0, accel.end());
  full.AddProfile(accel.steps(), t3 + t_v, -1.0, accel.end());
  PlanResult out;
  out.case_tag = tag;
  out.z_f = z_f;
  out.t_a_max = t_a;
  out.t_v_max = t_v;
  out.a_max_used = fam.a_max;
  full.Finish(out);
  return out;
}

}  // namespace

PlanResult AssembleCase2(double z_f, const SegmentFamily& fam, double v_lim) {
  RequirePositive(z_f);
  if (!(v_lim > 0.0)) throw std::invalid_argument("v_lim must be positive");
  const double t_a = Case2AccelHold(fam, v_lim);
  const double t3 = 2.0 * fam.t_f1() + t_a;
  const double t_v = (z_f - v_lim * t3) / v_lim;
  return MirroredPhases(z_f, fam, t_a, t_v, CaseTag::kCase2);
}

PlanResult AssembleCase3(double z_f, const SegmentFamily& fam) {
  RequirePositive(z_f);
  return MirroredPhases(z_f, fam, Case3AccelHold(z_f, fam), 0.0, CaseTag::kCase3);
}

PlanResult PlanForAmax(double z_f, const SegmentFamily& fam,
                       const KinematicLimits& limits) {
  if (!std::isfinite(z_f)) throw std::invalid_argument("distance must be finite");
  if (z_f < 0.0) return Mirrored(PlanForAmax(-z_f, fam, limits));
  PlanResult out;
  if (z_f == 0.0) {
    out.a_max_used = fam.a_max;
    out.limit_report = CheckLimits(out, limits);
    return out;
  }
  out = AssembleCase1(z_f, fam);
  out.limit_report = CheckLimits(out, limits);
  if (out.limit_report.v_violated) {
    out = z_f >= MinCase2Distance(fam, limits.v_lim)
              ? AssembleCase2(z_f, fam, limits.v_lim)
              : AssembleCase3(z_f, fam);
    out.limit_report = CheckLimits(out, limits);
  }
  return out;
}

LimitReport CheckLimits(const JerkProfile& profile, const KinematicLimits& limits) {
  LimitReport r;
  auto track_v = [&](double v) { r.v_peak = std::max(r.v_peak, std::abs(v)); };
  KinematicSample prev = EvalKinematics(profile, 0.0);
  r.a_peak = std::abs(prev.acc);
  track_v(prev.v);
  double jerk = 0.0;
  double t_prev = 0.0;
  for (const JerkStep& s : profile.steps()) {
    if (s.t > t_prev) {
      const KinematicSample cur = EvalKinematics(profile, s.t);
      r.j_peak = std::max(r.j_peak, std::abs(jerk));
      r.a_peak = std::max(r.a_peak, std::abs(cur.acc));
      track_v(cur.v);
      // Stationary velocity where the linear acceleration crosses zero.
      if (jerk != 0.0 && prev.acc * cur.acc < 0.0) {
        const double tau = -prev.acc / jerk;
        track_v(prev.v + prev.acc * tau + 0.5 * jerk * tau * tau);
      }
      prev = cur;
      t_prev = s.t;
    }
    jerk += s.a;
  }
  // Beyond the last step the jerk persists.
  r.j_peak = std::max(r.j_peak, std::abs(jerk));
  const double tol = 1.0 + kLimitTolerance;
  r.v_violated = r.v_peak > limits.v_lim * tol;
  r.a_violated = r.a_peak > limits.a_lim * tol;
  r.j_violated = r.j_peak > limits.j_lim * tol;
  return r;
}

LimitReport CheckLimits(const PlanResult& plan, const KinematicLimits& limits) {
  return CheckLimits(plan.profile, limits);
}

}  // namespace jerkseg
