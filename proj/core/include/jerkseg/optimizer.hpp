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

#ifndef JERKSEG_OPTIMIZER_HPP_
#define JERKSEG_OPTIMIZER_HPP_

// Choice of the working acceleration a_max: the Case 2 optimum, the
// top-level planning flow and the binary search that restores feasibility
// for short distances.

#include <optional>
#include <string>
#include <vector>

#include "jerkseg/assembler.hpp"
#include "jerkseg/segment.hpp"

namespace jerkseg {

struct OptimizerConfig {
  double dt_boundary = 400e-6;  // stop once a feasible iterate gains less
  int n_max_iter = 23;
  int a_scan_points = 256;
  double fd_step_rel = 1e-4;  // central-difference step relative to a_lim
  SegmentMethod segment_method = SegmentMethod::kTimeOptimal;

  void Validate() const;
};

// Case 2 transition time without the distance term z_f / v_lim:
//   v_lim / a + 2 t_f1(a) - (v_f1(a) + v_f3(a)) / a.
double Case2Objective(double a_max, const KinematicLimits& limits,
                      const PlantModal& modal, SegmentMethod method);

// Global minimizer of Case2Objective over (0, a_lim]. A scan seeds a golden
// section search in every local basin; the winner is polished on the
// numerical derivative. Memoized per (limits, modal, cfg).
double BestAccelCase2(const KinematicLimits& limits, const PlantModal& modal,
                      const OptimizerConfig& cfg = {});

// Plans at a_best; falls back to OptimizeAmax if any limit is violated.
PlanResult Plan(double z_f, const KinematicLimits& limits,
                const PlantModal& modal, const OptimizerConfig& cfg = {});

// One iterate of the acceleration search, kept for diagnostics.
struct AmaxIterate {
  double a_iter = 0.0;
  bool feasible = false;
  double t_ft = 0.0;
  std::string note;
};

// Binary search on a_max in (0, a_best]. Returns the fastest feasible plan
// visited; throws InfeasibleError with the iterate trace if there is none.
PlanResult OptimizeAmax(double z_f, const KinematicLimits& limits,
                        const PlantModal& modal, double a_best,
                        const OptimizerConfig& cfg = {},
                        std::vector<AmaxIterate>* trace = nullptr);

void ClearBestAccelCache();

}  // namespace jerkseg

#endif  // JERKSEG_OPTIMIZER_HPP_
