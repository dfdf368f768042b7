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

#include "jerkseg/segment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace jerkseg {

namespace {

using Complex = std::complex<double>;

// A design normalized to a positive acceleration change of D * j_lim: step
// instants and jerk increments in units of j_lim.
struct UnitDesign {
  std::vector<JerkStep> steps;
  double duration = 0.0;
  std::string structure;
  bool bound_active = false;
};

// Pulse train with jerk levels in {-1, 0, +1}. Every arc duration is affine
// in (D, u, w); the Delta-a equation is already folded in, leaving the two
// real residual-vibration equations for the two unknowns u and w.
struct Structure {
  const char* name;
  int n;
  std::array<int, 4> levels;
  std::array<std::array<double, 3>, 4> arcs;  // coefficients of {D, u, w}
  double (*u_max)(double d, double slack);
  double (*w_max)(double d, double slack);
};

constexpr std::array<Structure, 4> kStructures = {{
    {"+0+", 3, {1, 0, 1, 0}, {{{0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {0, 0, 0}}},
     [](double d, double) { return d; }, [](double, double s) { return s; }},
    {"+-+", 3, {1, -1, 1, 0}, {{{0, 1, 0}, {0, 0, 1}, {1, -1, 1}, {0, 0, 0}}},
     [](double d, double) { return d; }, [](double, double s) { return 0.5 * s; }},
    {"+0-+", 4, {1, 0, -1, 1}, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 1}}},
     [](double, double s) { return s; },
     [](double d, double s) { return std::min(d, 0.5 * s); }},
    {"+-0+", 4, {1, -1, 0, 1}, {{{0, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 0}}},
     [](double d, double s) { return std::min(d, 0.5 * s); },
     [](double, double s) { return s; }},
}};

class StructureProblem {
 public:
  StructureProblem(const Structure& s, double d, Complex lambda)
      : s_(s), d_(d), lambda_(lambda) {}

  std::array<double, 4> Durations(double u, double w) const {
    std::array<double, 4> out{};
    for (int k = 0; k < s_.n; ++k) {
      out[k] = s_.arcs[k][0] * d_ + s_.arcs[k][1] * u + s_.arcs[k][2] * w;
    }
    return out;
  }

  // Residual sum_k Delta_k exp(-lambda t_k) and its partial derivatives.
  void Evaluate(double u, double w, Complex& v, Complex& dv_du,
                Complex& dv_dw) const {
    const auto dur = Durations(u, w);
    v = dv_du = dv_dw = 0.0;
    double t = 0.0, dt_du = 0.0, dt_dw = 0.0;
    int prev = 0;
    for (int k = 0; k <= s_.n; ++k) {
      const int level = k < s_.n ? s_.levels[k] : 0;
      const double jump = level - prev;
      const Complex e = jump * std::exp(-lambda_ * t);
      v += e;
      dv_du += -lambda_ * e * dt_du;
      dv_dw += -lambda_ * e * dt_dw;
      if (k < s_.n) {
        t += dur[k];
        dt_du += s_.arcs[k][1];
        dt_dw += s_.arcs[k][2];
      }
      prev = level;
    }
  }

  double Magnitude(double u, double w) const {
    Complex v, a, b;
    Evaluate(u, w, v, a, b);
    return std::abs(v);
  }

  // Damped Newton on the 2x2 real system. Returns false if it stalls.
  bool Solve(double& u, double& w, double tol) const {
    Complex v, du, dw;
    Evaluate(u, w, v, du, dw);
    double norm = std::abs(v);
    for (int iter = 0; iter < 80; ++iter) {
      if (norm <= tol) {
        // One more full step tightens the last bits.
        const double det = du.real() * dw.imag() - dw.real() * du.imag();
        if (det != 0.0) {
          const double su = (-v.real() * dw.imag() + dw.real() * v.imag()) / det;
          const double sw = (-du.real() * v.imag() + du.imag() * v.real()) / det;
          Complex v2, a2, b2;
          Evaluate(u + su, w + sw, v2, a2, b2);
          if (std::abs(v2) <= norm) {
            u += su;
            w += sw;
          }
        }
        return true;
      }
      const double det = du.real() * dw.imag() - dw.real() * du.imag();
      if (det == 0.0 || !std::isfinite(det)) return false;
      const double su = (-v.real() * dw.imag() + dw.real() * v.imag()) / det;
      const double sw = (-du.real() * v.imag() + du.imag() * v.real()) / det;
      double step = 1.0;
      bool improved = false;
      for (int back = 0; back < 30; ++back) {
        const double un = u + step * su;
        const double wn = w + step * sw;
        Complex vn, dun, dwn;
        Evaluate(un, wn, vn, dun, dwn);
        const double nn = std::abs(vn);
        if (nn < norm) {
          u = un;
          w = wn;
          v = vn;
          du = dun;
          dw = dwn;
          norm = nn;
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) return norm <= 100.0 * tol;
    }
    return norm <= tol;
  }

  const Structure& structure() const { return s_; }

 private:
  const Structure& s_;
  double d_;
  Complex lambda_;
};

struct Candidate {
  double duration = std::numeric_limits<double>::infinity();
  std::array<double, 4> arcs{};
  const Structure* structure = nullptr;
};

std::optional<UnitDesign> DesignTimeOptimalUnit(double d, const PlantModal& modal) {
  const Complex lambda(-modal.delta, modal.omega_d);
  const double period = 2.0 * std::numbers::pi / modal.omega_d;
  const double t_zv = d + 0.5 * period;
  const double slack = t_zv - d;
  const double tol = 1e-13;

  UnitDesign out;
  // Single ramp: vibration free only when the ramp spans whole damped
  // periods of an undamped plant.
  if (std::abs(1.0 - std::exp(-lambda * d)) <= tol) {
    out.steps = {{0.0, 1.0}, {d, -1.0}};
    out.duration = d;
    out.structure = "+";
    return out;
  }

  Candidate best;
  const double h_target = period / 40.0;
  for (const Structure& s : kStructures) {
    const StructureProblem problem(s, d, lambda);
    const double u_hi = s.u_max(d, slack);
    const double w_hi = s.w_max(d, slack);
    if (!(u_hi > 0.0) || !(w_hi > 0.0)) continue;
    const int nu = std::clamp(static_cast<int>(std::ceil(u_hi / h_target)), 24, 4000);
    const int nw = std::clamp(static_cast<int>(std::ceil(w_hi / h_target)), 24, 4000);
    std::vector<double> mag(static_cast<std::size_t>((nu + 1) * (nw + 1)));
    auto at = [&](int i, int j) -> double& {
      return mag[static_cast<std::size_t>(i * (nw + 1) + j)];
    };
    for (int i = 0; i <= nu; ++i) {
      for (int j = 0; j <= nw; ++j) {
        at(i, j) = problem.Magnitude(u_hi * i / nu, w_hi * j / nw);
      }
    }
    for (int i = 0; i <= nu; ++i) {
      for (int j = 0; j <= nw; ++j) {
        const double m = at(i, j);
        bool local_min = true;
        for (int di = -1; di <= 1 && local_min; ++di) {
          for (int dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            const int ii = i + di, jj = j + dj;
            if (ii < 0 || jj < 0 || ii > nu || jj > nw) continue;
            if (at(ii, jj) < m) {
              local_min = false;
              break;
            }
          }
        }
        if (!local_min) continue;
        double u = u_hi * i / nu;
        double w = w_hi * j / nw;
        if (!problem.Solve(u, w, tol)) continue;
        auto arcs = problem.Durations(u, w);
        double total = 0.0, level = 0.0;
        bool feasible = true;
        for (int k = 0; k < s.n && feasible; ++k) {
          if (arcs[k] < -1e-13 * t_zv) feasible = false;
          arcs[k] = std::max(arcs[k], 0.0);
          total += arcs[k];
          level += s.levels[k] * arcs[k];
          if (level < -1e-12 * d || level > d * (1.0 + 1e-12)) feasible = false;
        }
        if (!feasible || total > t_zv * (1.0 + 1e-12)) continue;
        if (total < best.duration - 1e-12) {
          best.duration = total;
          best.arcs = arcs;
          best.structure = &s;
        }
      }
    }
  }
  if (best.structure == nullptr) return std::nullopt;

  const Structure& s = *best.structure;
  double t = 0.0, level = 0.0;
  int prev = 0;
  for (int k = 0; k <= s.n; ++k) {
    const int lv = k < s.n ? s.levels[k] : 0;
    if (lv != prev) out.steps.push_back({t, static_cast<double>(lv - prev)});
    if (k < s.n) {
      t += best.arcs[k];
      level += s.levels[k] * best.arcs[k];
      const bool interior = k + 1 < s.n;
      const bool at_bound = std::abs(level) <= 1e-9 * d || std::abs(level - d) <= 1e-9 * d;
      if (interior && at_bound && best.arcs[k] > 0.0) out.bound_active = true;
    }
    prev = lv;
  }
  out.duration = t;
  out.structure = s.name;
  return out;
}

UnitDesign DesignZvUnit(double d, const PlantModal& modal) {
  const ZvImpulses zv = MakeZvImpulses(modal);
  UnitDesign out;
  out.steps = {{0.0, zv.a1}, {d, -zv.a1}, {zv.spacing, zv.a2}, {zv.spacing + d, -zv.a2}};
  out.duration = d + zv.spacing;
  out.structure = "zv";
  return out;
}

class DesignCache {
 public:
  using Key = std::tuple<double, double, double, int>;

  std::optional<std::optional<UnitDesign>> Find(const Key& key) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void Insert(const Key& key, const std::optional<UnitDesign>& value) {
    std::unique_lock lock(mutex_);
    if (map_.size() >= kMaxEntries) map_.clear();
    map_.emplace(key, value);
  }

  void Clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
  }

 private:
  static constexpr std::size_t kMaxEntries = 1 << 16;
  mutable std::shared_mutex mutex_;
  std::map<Key, std::optional<UnitDesign>> map_;
};

DesignCache& Cache() {
  static DesignCache cache;
  return cache;
}

std::optional<UnitDesign> CachedUnit(double d, const PlantModal& modal,
                                     SegmentMethod method) {
  const DesignCache::Key key{d, modal.omega_d, modal.delta, static_cast<int>(method)};
  if (auto hit = Cache().Find(key)) return *hit;
  std::optional<UnitDesign> unit = method == SegmentMethod::kZv
                                       ? std::optional<UnitDesign>(DesignZvUnit(d, modal))
                                       : DesignTimeOptimalUnit(d, modal);
  Cache().Insert(key, unit);
  return unit;
}

void ValidateSpec(const SegmentSpec& spec) {
  Validate(spec.modal);
  if (!(spec.j_lim > 0.0)) throw std::invalid_argument("segment j_lim must be positive");
  if (!(spec.a_max > 0.0)) throw std::invalid_argument("segment a_max must be positive");
  const double tol = 1e-12 * spec.a_max;
  auto is_level = [&](double a) {
    return std::abs(a) <= tol || std::abs(a - spec.a_max) <= tol ||
           std::abs(a + spec.a_max) <= tol;
  };
  if (!is_level(spec.a_start) || !is_level(spec.a_end)) {
    throw std::invalid_argument("segment endpoints must lie in {-a_max, 0, a_max}");
  }
  if (std::abs(spec.a_end - spec.a_start) <= tol) {
    throw std::invalid_argument("segment endpoints must differ");
  }
}

JerkSegment Materialize(const UnitDesign& unit, const SegmentSpec& spec) {
  const double sign = spec.a_end > spec.a_start ? 1.0 : -1.0;
  std::vector<JerkStep> steps = unit.steps;
  for (JerkStep& s : steps) s.a *= sign * spec.j_lim;
  JerkSegment seg;
  seg.profile = JerkProfile(std::move(steps), {0.0, 0.0, spec.a_start});
  seg.t_f = unit.duration;
  const KinematicSample end = EvalKinematics(seg.profile, seg.t_f);
  seg.s_f = end.z;
  seg.v_f = end.v;
  seg.structure = unit.structure;
  seg.accel_bound_active = unit.bound_active;
  return seg;
}

}  // namespace

const char* ToString(SegmentMethod method) {
  return method == SegmentMethod::kZv ? "zv" : "timeopt";
}

SegmentMethod ParseSegmentMethod(const std::string& text) {
  if (text == "zv") return SegmentMethod::kZv;
  if (text == "timeopt") return SegmentMethod::kTimeOptimal;
  throw std::invalid_argument("unknown segment method '" + text +
                              "' (expected zv or timeopt)");
}

ZvImpulses MakeZvImpulses(const PlantModal& modal) {
  const double k = std::exp(-modal.delta * std::numbers::pi / modal.omega_d);
  return {1.0 / (1.0 + k), k / (1.0 + k), std::numbers::pi / modal.omega_d};
}

JerkSegment DesignZvSegment(const SegmentSpec& spec) {
  ValidateSpec(spec);
  const double d = std::abs(spec.a_end - spec.a_start) / spec.j_lim;
  return Materialize(DesignZvUnit(d, spec.modal), spec);
}

std::optional<JerkSegment> TryDesignTimeOptimalSegment(const SegmentSpec& spec) {
  ValidateSpec(spec);
  const double d = std::abs(spec.a_end - spec.a_start) / spec.j_lim;
  auto unit = CachedUnit(d, spec.modal, SegmentMethod::kTimeOptimal);
  if (!unit) return std::nullopt;
  return Materialize(*unit, spec);
}

JerkSegment DesignSegment(const SegmentSpec& spec, SegmentMethod method) {
  if (method == SegmentMethod::kTimeOptimal) {
    if (auto seg = TryDesignTimeOptimalSegment(spec)) return *std::move(seg);
  }
  return DesignZvSegment(spec);
}

SegmentFamily PrecomputeFamily(double a_max, const KinematicLimits& limits,
                               const PlantModal& modal, SegmentMethod method) {
  Validate(limits);
  if (!(a_max > 0.0) || a_max > limits.a_lim * (1.0 + 1e-12)) {
    throw std::invalid_argument("a_max must lie in (0, a_lim], got " +
                                std::to_string(a_max));
  }
  SegmentFamily fam;
  fam.a_max = a_max;
  fam.seg1 = DesignSegment({0.0, a_max, limits.j_lim, a_max, modal}, method);
  fam.seg2 = DesignSegment({a_max, -a_max, limits.j_lim, a_max, modal}, method);
  fam.seg3 = DesignSegment({-a_max, 0.0, limits.j_lim, a_max, modal}, method);
  return fam;
}

void ClearSegmentCache() { Cache().Clear(); }

}  // namespace jerkseg
