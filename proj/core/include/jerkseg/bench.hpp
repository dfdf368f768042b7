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

#ifndef JERKSEG_BENCH_HPP_
#define JERKSEG_BENCH_HPP_

// Analysis layer: run configuration, distance and frequency sweeps over all
// planners, envelope fitting, controller-cycle resampling and CSV I/O.
//
// Config file grammar, one `key = value` per line, `#` comments:
//
//   [plant]      m_s, m_b, k, d          (physical form)
//             or omega0, delta, m_star   (modal form)
//   [limits]     v_lim, a_lim, j_lim
//   [optimizer]  dt_boundary, n_max_iter, a_scan_points, fd_step_rel
//   [bench]      segment_method (zv | timeopt), controller_cycle
//
// Sweep CSV columns, in order:
//   z_f, f_sys, t_scurve, t_zv, t_ocpj, dt_scurve_zv, dt_ocpj_zv, case,
//   a_max_used, alg3_iter, a0_scurve, a0_zv, a0_ocpj, error

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jerkseg/assembler.hpp"
#include "jerkseg/model.hpp"
#include "jerkseg/optimizer.hpp"

namespace jerkseg {

struct RunConfig {
  std::optional<PlantPhysical> physical;
  std::optional<PlantModal> modal_params;
  KinematicLimits limits;
  OptimizerConfig optimizer;
  double controller_cycle = 400e-6;

  PlantModal modal() const;
  void Validate() const;
};

// Config errors are reported as std::invalid_argument with the line number.
RunConfig ParseConfig(std::istream& in);
RunConfig LoadConfig(const std::string& path);
RunConfig PresetConfig(const std::string& name);
std::string SerializeConfig(const RunConfig& cfg);
// 64-bit FNV-1a of SerializeConfig.
std::uint64_t ConfigHash(const RunConfig& cfg);

struct SweepRow {
  double z_f = 0.0;
  double f_sys = 0.0;
  double t_scurve = 0.0;
  double t_zv = 0.0;
  double t_ocpj = 0.0;
  double dt_scurve_zv = 0.0;
  double dt_ocpj_zv = 0.0;
  std::string case_tag;
  double a_max_used = 0.0;
  int alg3_iter = 0;
  double a0_scurve = 0.0;
  double a0_zv = 0.0;
  double a0_ocpj = 0.0;
  std::string error;  // empty when every planner succeeded
};

std::vector<std::string> SweepColumns();

// One row per distance, simulated at the nominal plant. Rows are computed
// on `workers` threads (0 = hardware concurrency) and returned in input
// order.
std::vector<SweepRow> SweepDistances(const RunConfig& cfg,
                                     std::span<const double> z_list,
                                     unsigned workers = 0);

// Plans once at the nominal plant and simulates each frequency [Hz] with the
// nominal decay rate.
std::vector<SweepRow> SweepSensitivity(const RunConfig& cfg, double z_f,
                                       std::span<const double> f_sys_list);

// Distances z_min + k (z_max - z_min) / (n - 1), k = 0..n-1.
std::vector<double> LinearGrid(double lo, double hi, int n);

void WriteSweepCsv(std::ostream& out, const RunConfig& cfg,
                   std::span<const SweepRow> rows);
std::vector<SweepRow> ReadSweepCsv(std::istream& in);

struct EnvelopeFitResult {
  double a0 = 0.0;
  double phi0 = 0.0;
};

// Least-squares fit of a0 exp(-delta (t - t_ft)) sin(omega_d t - phi0) to
// samples x(t). Intended window: 0.25 s after t_ft. Throws
// std::domain_error when omega_d times the sample span is below 1 rad.
EnvelopeFitResult EnvelopeFit(std::span<const double> t, std::span<const double> x,
                              double t_ft, const PlantModal& modal);

// Samples at k * cycle for k = 0..ceil(t_ft / cycle).
std::vector<KinematicSample> ResampleToCycle(const PlanResult& plan, double cycle);
void WriteTrajectoryCsv(std::ostream& out, const RunConfig& cfg,
                        std::span<const KinematicSample> samples);

// a_max * omega_d / (2 pi): a jerk limit that ramps to a_max in one period.
double InitialJerkLimit(double a_max, const PlantModal& modal);

// Case 2 objective on the optimizer's scan grid, for plotting.
std::vector<std::pair<double, double>> Case2Curve(const RunConfig& cfg);

}  // namespace jerkseg

#endif  // JERKSEG_BENCH_HPP_
