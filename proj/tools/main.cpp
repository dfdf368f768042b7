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

// Command line front end: planning, sweeps and the a_best curve.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "jerkseg/baselines.hpp"
#include "jerkseg/bench.hpp"
#include "jerkseg/optimizer.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::invalid_argument("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void PrintPlan(const char* name, const jerkseg::PlanResult& p) {
  std::printf("%-10s t_ft=%.9f case=%s a_max=%.9g alg3_iter=%d %s\n", name, p.t_ft,
              jerkseg::ToString(p.case_tag), p.a_max_used, p.alg3_iterations,
              p.limit_report.Describe().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jerkseg: vibration-free point-to-point trajectories"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, preset = "pickplace", method;
  app.add_option("--config", config_path, "Config file (key = value sections)");
  app.add_option("--preset", preset, "Built-in parameter set: pickplace, lab, slow")
      ->capture_default_str();
  app.add_option("--method", method, "Segment design override: zv or timeopt");

  double zf = 0.0, zmin = 0.001, zmax = 0.3, fmin = 0.0, fmax = 0.0;
  int n = 300;
  std::string out_path;

  auto* plan = app.add_subcommand("plan", "Plan one trajectory");
  plan->add_option("--zf", zf, "Distance [m]")->required();
  plan->add_option("--out", out_path, "Trajectory CSV resampled to the controller cycle");

  auto* sweep = app.add_subcommand("sweep", "Sweep distances over all planners");
  sweep->add_option("--zmin", zmin, "First distance [m]")->capture_default_str();
  sweep->add_option("--zmax", zmax, "Last distance [m]")->capture_default_str();
  sweep->add_option("--n", n, "Number of distances")->capture_default_str();
  sweep->add_option("--out", out_path, "CSV file (stdout if omitted)");

  auto* sens = app.add_subcommand("sensitivity", "Residual amplitude versus plant frequency");
  sens->add_option("--zf", zf, "Distance [m]")->required();
  sens->add_option("--fmin", fmin, "Lowest simulated frequency [Hz]")->required();
  sens->add_option("--fmax", fmax, "Highest simulated frequency [Hz]")->required();
  sens->add_option("--n", n, "Number of frequencies")->capture_default_str();
  sens->add_option("--out", out_path, "CSV file (stdout if omitted)");

  auto* compare = app.add_subcommand("compare", "One-row table of all planners");
  compare->add_option("--zf", zf, "Distance [m]")->required();

  auto* abest = app.add_subcommand("abest", "Case 2 optimal acceleration and its curve");
  abest->add_option("--out", out_path, "CSV file for the curve (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  jerkseg::RunConfig cfg;
  try {
    cfg = config_path.empty() ? jerkseg::PresetConfig(preset)
                              : jerkseg::LoadConfig(config_path);
    if (!method.empty()) cfg.optimizer.segment_method = jerkseg::ParseSegmentMethod(method);
    cfg.Validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    const jerkseg::PlantModal modal = cfg.modal();
    if (*plan) {
      const jerkseg::PlanResult p = jerkseg::Plan(zf, cfg.limits, modal, cfg.optimizer);
      PrintPlan("ocpj", p);
      if (!out_path.empty()) {
        Output out(out_path);
        const auto samples = jerkseg::ResampleToCycle(p, cfg.controller_cycle);
        jerkseg::WriteTrajectoryCsv(out.stream(), cfg, samples);
      }
    } else if (*sweep) {
      if (n < 1 || !(zmin > 0.0) || zmax < zmin) {
        throw std::invalid_argument("sweep needs 0 < zmin <= zmax and n >= 1");
      }
      const auto z = jerkseg::LinearGrid(zmin, zmax, n);
      const auto rows = jerkseg::SweepDistances(cfg, z);
      Output out(out_path);
      jerkseg::WriteSweepCsv(out.stream(), cfg, rows);
    } else if (*sens) {
      if (n < 1 || !(fmin > 0.0) || fmax < fmin) {
        throw std::invalid_argument("sensitivity needs 0 < fmin <= fmax and n >= 1");
      }
      const auto f = jerkseg::LinearGrid(fmin, fmax, n);
      const auto rows = jerkseg::SweepSensitivity(cfg, zf, f);
      Output out(out_path);
      jerkseg::WriteSweepCsv(out.stream(), cfg, rows);
    } else if (*compare) {
      const double z[] = {zf};
      const auto rows = jerkseg::SweepDistances(cfg, z, 1);
      jerkseg::WriteSweepCsv(std::cout, cfg, rows);
      if (!rows.front().error.empty()) {
        std::cerr << rows.front().error << "\n";
        return kExitInfeasible;
      }
    } else if (*abest) {
      const double a = jerkseg::BestAccelCase2(cfg.limits, modal, cfg.optimizer);
      std::printf("a_best = %.17g\n", a);
      Output out(out_path);
      out.stream() << "a_max,t_case2_minus_z_over_v\n";
      char buf[80];
      for (const auto& [am, t] : jerkseg::Case2Curve(cfg)) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", am, t);
        out.stream() << buf;
      }
    }
  } catch (const jerkseg::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
