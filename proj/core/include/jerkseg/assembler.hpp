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

#ifndef JERKSEG_ASSEMBLER_HPP_
#define JERKSEG_ASSEMBLER_HPP_

// Full rest-to-rest trajectories assembled from one segment family.
//
//   Case 1: seg1, hold t1 at +a_max, seg2, hold t2 at -a_max, seg3.
//   Case 2: acceleration phase up to v_lim, cruise, mirrored deceleration.
//   Case 3: acceleration phase immediately followed by its mirror image.
//
// Hold durations may be negative. The affected segments are then shifted
// and their jerk steps superpose.

#include <stdexcept>
#include <string>

#include "jerkseg/model.hpp"
#include "jerkseg/segment.hpp"

namespace jerkseg {

enum class CaseTag { kRest, kCase1, kCase2, kCase3, kSCurve, kZvSCurve };

const char* ToString(CaseTag tag);

struct LimitReport {
  double v_peak = 0.0;
  double a_peak = 0.0;
  double j_peak = 0.0;
  bool v_violated = false;
  bool a_violated = false;
  bool j_violated = false;

  bool clean() const { return !v_violated && !a_violated && !j_violated; }
  std::string Describe() const;
};

struct PlanResult {
  JerkProfile profile;
  CaseTag case_tag = CaseTag::kRest;
  double z_f = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double t_a_max = 0.0;
  double t_v_max = 0.0;
  double a_max_used = 0.0;
  double t_ft = 0.0;
  LimitReport limit_report;
  int alg3_iterations = 0;  // 0 when the first plan was already feasible
};

// Raised when no real hold duration exists for the requested distance or
// when the acceleration search finds no feasible plan.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relative tolerance used when comparing peaks with limits.
inline constexpr double kLimitTolerance = 1e-9;

PlanResult AssembleCase1(double z_f, const SegmentFamily& fam);
PlanResult AssembleCase2(double z_f, const SegmentFamily& fam, double v_lim);
PlanResult AssembleCase3(double z_f, const SegmentFamily& fam);

// Closed-form hold durations. Case1Holds returns {t1, t2}.
std::pair<double, double> Case1Holds(double z_f, const SegmentFamily& fam);
double Case2AccelHold(const SegmentFamily& fam, double v_lim);
double Case3AccelHold(double z_f, const SegmentFamily& fam);

// Shortest distance for which the cruise hold of Case 2 is non-negative.
double MinCase2Distance(const SegmentFamily& fam, double v_lim);

// Case selection for one working acceleration. Negative distances are
// planned mirrored; z_f = 0 gives the empty plan. The limit report is filled.
PlanResult PlanForAmax(double z_f, const SegmentFamily& fam,
                       const KinematicLimits& limits);

// Exact peaks of |jerk|, |acc| and |v| over the profile.
LimitReport CheckLimits(const JerkProfile& profile, const KinematicLimits& limits);
LimitReport CheckLimits(const PlanResult& plan, const KinematicLimits& limits);

}  // namespace jerkseg

#endif  // JERKSEG_ASSEMBLER_HPP_
