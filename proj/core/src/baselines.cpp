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

#include "jerkseg/baselines.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "jerkseg/segment.hpp"

namespace jerkseg {

PlanResult SCurve(double z_f, const KinematicLimits& limits) {
  Validate(limits);
  if (!std::isfinite(z_f)) throw std::invalid_argument("distance must be finite");
  if (z_f < 0.0) {
    PlanResult p = SCurve(-z_f, limits);
    p.profile = p.profile.Scaled(-1.0);
    p.z_f = z_f;
    return p;
  }
  PlanResult out;
  out.case_tag = CaseTag::kSCurve;
  out.z_f = z_f;
  out.a_max_used = limits.a_lim;
  if (z_f == 0.0) {
    out.limit_report = CheckLimits(out, limits);
    return out;
  }
  const double v = limits.v_lim, a = limits.a_lim, j = limits.j_lim;
  double tj, ta, tv = 0.0;
  if (v * j >= a * a) {
    tj = a / j;
    ta = tj + v / a;
  } else {
    tj = std::sqrt(v / j);
    ta = 2.0 * tj;
  }
  if (z_f >= v * ta) {
    tv = z_f / v - ta;
  } else {
    tj = a / j;
    ta = 0.5 * tj + std::sqrt(0.25 * tj * tj + z_f / a);
    if (ta < 2.0 * tj) {
      tj = std::cbrt(z_f / (2.0 * j));
      ta = 2.0 * tj;
    }
  }
  const double td = ta + tv;
  std::vector<JerkStep> steps = {
      {0.0, j}, {tj, -j}, {ta - tj, -j}, {ta, j},
      {td, -j}, {td + tj, j}, {td + ta - tj, j}, {td + ta, -j},
  };
  out.profile = JerkProfile(std::move(steps));
  out.t_a_max = ta - 2.0 * tj;
  out.t_v_max = tv;
  out.t_ft = td + ta;
  out.limit_report = CheckLimits(out, limits);
  return out;
}

PlanResult ZvShape(const PlanResult& plan, const PlantModal& modal) {
  Validate(modal);
  const ZvImpulses zv = MakeZvImpulses(modal);
  std::vector<JerkStep> steps;
  steps.reserve(2 * plan.profile.size());
  for (const JerkStep& s : plan.profile.steps()) {
    steps.push_back({s.t, zv.a1 * s.a});
    steps.push_back({s.t + zv.spacing, zv.a2 * s.a});
  }
  PlanResult out = plan;
  out.profile = JerkProfile(std::move(steps), plan.profile.initial());
  out.case_tag = CaseTag::kZvSCurve;
  out.t_ft = plan.t_ft + zv.spacing;
  // Convex combination of shifted copies: no peak can grow, so the flags of
  // the input carry over while the peaks are recomputed.
  const double inf = std::numeric_limits<double>::infinity();
  const LimitReport peaks = CheckLimits(out.profile, {inf, inf, inf});
  out.limit_report.v_peak = peaks.v_peak;
  out.limit_report.a_peak = peaks.a_peak;
  out.limit_report.j_peak = peaks.j_peak;
  return out;
}

}  // namespace jerkseg
