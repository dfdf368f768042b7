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

#ifndef JERKSEG_BASELINES_HPP_
#define JERKSEG_BASELINES_HPP_

// Reference planners: the time-optimal jerk-limited double-S profile and
// the same profile convolved with the damped ZV shaper.

#include "jerkseg/assembler.hpp"
#include "jerkseg/model.hpp"

namespace jerkseg {

// Seven-phase S-curve honoring v_lim, a_lim and j_lim. Phases collapse as
// needed (no cruise, no constant-acceleration arc). Negative distances are
// mirrored.
PlanResult SCurve(double z_f, const KinematicLimits& limits);

// Convolves the plan's jerk steps with the two ZV impulses of `modal`. The
// duration grows by exactly pi / omega_d.
PlanResult ZvShape(const PlanResult& plan, const PlantModal& modal);

}  // namespace jerkseg

#endif  // JERKSEG_BASELINES_HPP_
