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

#include "jerkseg/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <tuple>

namespace jerkseg {

void OptimizerConfig::Validate() const {
  if (!(dt_boundary > 0.0)) throw std::invalid_argument("dt_boundary must be positive");
  if (n_max_iter < 1) throw std::invalid_argument("n_max_iter must be at least 1");
  if (a_scan_points < 8) throw std::invalid_argument("a_scan_points must be at least 8");
  if (!(fd_step_rel > 0.0) || fd_step_rel >= 0.5) {
    throw std::invalid_argument("fd_step_rel must lie in (0, 0.5)");
  }
}

double Case2Objective(double a_max, const KinematicLimits& limits,
                      const PlantModal& modal, SegmentMethod method) {
  if (!(a_max > 0.0)) throw std::invalid_argument("a_max must be positive");
  const JerkSegment seg1 = DesignSegment({0.0, a_max, limits.j_lim, a_max, modal}, method);
  const JerkSegment seg3 = DesignSegment({-a_max, 0.0, limits.j_lim, a_max, modal}, method);
  const double v_f = seg1.v_f - seg3.v_f;
  return limits.v_lim / a_max + 2.0 * seg1.t_f - v_f / a_max;
}

namespace {

using AccelKey = std::tuple<double, double, double, double, double, int, double, int>;

struct AccelCache {
  std::shared_mutex mutex;
  std::map<AccelKey, double> map;
};

AccelCache& Accels() {
  static AccelCache cache;
  return cache;
}

template <typename F>
double GoldenSection(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

double ComputeBestAccel(const KinematicLimits& limits, const PlantModal& modal,
                        const OptimizerConfig& cfg) {
  const SegmentMethod method = cfg.segment_method;
  auto f = [&](double a) { return Case2Objective(a, limits, modal, method); };
  const int n = cfg.a_scan_points;
  const double a_lim = limits.a_lim;
  std::vector<double> grid(n + 1), val(n + 1);
  for (int k = 1; k <= n; ++k) {
    grid[k] = a_lim * k / n;
    val[k] = f(grid[k]);
  }
  const double tol = 1e-12 * a_lim;
  double best_a = a_lim, best_f = val[n];
  for (int k = 1; k <= n; ++k) {
    const bool left_ok = k == 1 || val[k] <= val[k - 1];
    const bool right_ok = k == n || val[k] <= val[k + 1];
    if (!left_ok || !right_ok) continue;
    const double lo = k == 1 ? 0.5 * grid[1] : grid[k - 1];
    const double hi = k == n ? a_lim : grid[k + 1];
    const double a = GoldenSection(f, lo, hi, tol);
    const double fa = f(a);
    if (fa < best_f) {
      best_f = fa;
      best_a = a;
    }
    if (val[k] < best_f) {
      best_f = val[k];
      best_a = grid[k];
    }
  }

  // Polish on the central-difference derivative; kept only if no worse.
  const double h = cfg.fd_step_rel * a_lim;
  auto slope = [&](double a) { return (f(a + h) - f(a - h)) / (2.0 * h); };
  double lo = std::max(best_a - 2.0 * h, 2.0 * h);
  double hi = std::min(best_a + 2.0 * h, a_lim - h);
  if (lo < hi) {
    double g_lo = slope(lo);
    const double g_hi = slope(hi);
    if (g_lo < 0.0 && g_hi > 0.0) {
      for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double g = slope(mid);
        if (g < 0.0) {
          lo = mid;
          g_lo = g;
        } else {
          hi = mid;
        }
      }
      const double a = 0.5 * (lo + hi);
      if (f(a) <= best_f) best_a = a;
    }
  }
  return std::min(best_a, a_lim);
}

}  // namespace

double BestAccelCase2(const KinematicLimits& limits, const PlantModal& modal,
                      const OptimizerConfig& cfg) {
  Validate(limits);
  Validate(modal);
  cfg.Validate();
  const AccelKey key{limits.v_lim, limits.a_lim, limits.j_lim, modal.omega_d,
                     modal.delta, cfg.a_scan_points, cfg.fd_step_rel,
                     static_cast<int>(cfg.segment_method)};
  AccelCache& cache = Accels();
  {
    std::shared_lock lock(cache.mutex);
    auto it = cache.map.find(key);
    if (it != cache.map.end()) return it->second;
  }
  const double a = ComputeBestAccel(limits, modal, cfg);
  std::unique_lock lock(cache.mutex);
  cache.map.emplace(key, a);
  return a;
}

void ClearBestAccelCache() {
  AccelCache& cache = Accels();
  std::unique_lock lock(cache.mutex);
  cache.map.clear();
}

PlanResult Plan(double z_f, const KinematicLimits& limits,
                const PlantModal& modal, const OptimizerConfig& cfg) {
  if (!std::isfinite(z_f)) throw std::invalid_argument("distance must be finite");
  const double a_best = std::min(BestAccelCase2(limits, modal, cfg), limits.a_lim);
  if (z_f == 0.0) {
    PlanResult rest;
    rest.a_max_used = a_best;
    return rest;
  }
  if (z_f < 0.0) {
    PlanResult p = Plan(-z_f, limits, modal, cfg);
    p.profile = p.profile.Scaled(-1.0);
    p.z_f = z_f;
    return p;
  }
  const SegmentFamily fam = PrecomputeFamily(a_best, limits, modal, cfg.segment_method);
  try {
    PlanResult p = PlanForAmax(z_f, fam, limits);
    if (p.limit_report.clean()) return p;
  } catch (const InfeasibleError&) {
  }
  return OptimizeAmax(z_f, limits, modal, a_best, cfg);
}

PlanResult OptimizeAmax(double z_f, const KinematicLimits& limits,
                        const PlantModal& modal, double a_best,
                        const OptimizerConfig& cfg,
                        std::vector<AmaxIterate>* trace) {
  cfg.Validate();
  if (!(a_best > 0.0)) throw std::invalid_argument("a_best must be positive");
  const double a_total = a_best;
  int n_iter = 1;
  double a_iter = 0.5 * a_total;
  double dt_f = std::numeric_limits<double>::infinity();
  double t_prev = 0.0;
  bool have_prev = false;
  std::optional<PlanResult> best;
  std::vector<AmaxIterate> local;
  std::vector<AmaxIterate>& log = trace ? *trace : local;
  do {
    AmaxIterate it;
    it.a_iter = a_iter;
    std::optional<PlanResult> p;
    try {
      const SegmentFamily fam = PrecomputeFamily(a_iter, limits, modal, cfg.segment_method);
      p = PlanForAmax(z_f, fam, limits);
      it.note = p->limit_report.Describe();
    } catch (const std::exception& e) {
      it.note = e.what();
    }
    ++n_iter;
    const double step = std::ldexp(a_total, -n_iter);
    if (p && p->limit_report.clean()) {
      it.feasible = true;
      it.t_ft = p->t_ft;
      if (have_prev) dt_f = t_prev - p->t_ft;
      t_prev = p->t_ft;
      have_prev = true;
      if (!best || p->t_ft < best->t_ft) best = *p;
      a_iter += step;
    } else {
      a_iter -= step;
    }
    log.push_back(std::move(it));
  } while (!(dt_f <= cfg.dt_boundary || n_iter > cfg.n_max_iter));

  if (!best) {
    std::ostringstream msg;
    msg.precision(9);
    msg << "no feasible a_max for z_f = " << z_f << " after " << log.size()
        << " iterations:";
    for (const AmaxIterate& it : log) msg << "\n  a=" << it.a_iter << " " << it.note;
    throw InfeasibleError(msg.str());
  }
  best->alg3_iterations = static_cast<int>(log.size());
  return *best;
}

}  // namespace jerkseg
