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

#include "jerkseg/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jerkseg {

namespace {

void RequirePositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(name) + " must be positive and finite, got " +
                                std::to_string(value));
  }
}

// Affine forcing acc(tau) = acc0 + jerk * tau over an interval of length h.
OscState PropagateInterval(const OscState& s, const PlantModal& m, double acc0,
                           double jerk, double h) {
  const double w0sq = m.omega0 * m.omega0;
  // Particular solution x_p = c0 + c1 tau.
  const double c1 = -m.m_star * jerk / w0sq;
  const double c0 = (-m.m_star * acc0 - 2.0 * m.delta * c1) / w0sq;
  const double y0 = s.x - c0;
  const double yd0 = s.xdot - c1;
  const double e = std::exp(-m.delta * h);
  const double c = std::cos(m.omega_d * h);
  const double sn = std::sin(m.omega_d * h);
  const double y = e * (y0 * c + (yd0 + m.delta * y0) * sn / m.omega_d);
  const double yd = e * (yd0 * c - (w0sq * y0 + m.delta * yd0) * sn / m.omega_d);
  return {y + c0 + c1 * h, yd + c1};
}

// Walks the profile from t = 0, calling visit(t_from, t_to, acc_at_from,
// jerk) for each constant-jerk interval up to t_end.
template <typename Visitor>
void ForEachInterval(const JerkProfile& profile, double t_end, Visitor&& visit) {
  const KinematicSample k0 = EvalKinematics(profile, 0.0);
  double t = 0.0;
  double acc = k0.acc;
  double jerk = k0.jerk;
  for (const JerkStep& step : profile.steps()) {
    if (step.t <= 0.0) continue;
    if (step.t >= t_end) break;
    visit(t, step.t, acc, jerk);
    acc += jerk * (step.t - t);
    jerk += step.a;
    t = step.t;
  }
  if (t_end > t) visit(t, t_end, acc, jerk);
}

}  // namespace

PlantModal PlantModal::FromUndamped(double omega0, double delta, double m_star) {
  PlantModal m{omega0, delta, std::sqrt(omega0 * omega0 - delta * delta), m_star};
  Validate(m);
  return m;
}

PlantModal PlantModal::FromDamped(double omega_d, double delta, double m_star) {
  PlantModal m{std::sqrt(omega_d * omega_d + delta * delta), delta, omega_d, m_star};
  Validate(m);
  return m;
}

double PlantModal::damped_frequency_hz() const {
  return omega_d / (2.0 * std::numbers::pi);
}

double PlantModal::half_period() const { return std::numbers::pi / omega_d; }

PlantModal DeriveModal(const PlantPhysical& phys) {
  RequirePositive(phys.m_s, "m_s");
  RequirePositive(phys.m_b, "m_b");
  RequirePositive(phys.k, "k");
  if (!(phys.d >= 0.0) || !std::isfinite(phys.d)) {
    throw std::invalid_argument("d must be non-negative and finite");
  }
  const double m_g = phys.m_s + phys.m_b;
  const double omega0 = std::sqrt(phys.k / m_g);
  const double delta = phys.d / (2.0 * m_g);
  if (delta >= omega0) {
    throw std::invalid_argument(
        "plant is not underdamped (delta = " + std::to_string(delta) +
        " >= omega0 = " + std::to_string(omega0) + "); no oscillatory mode");
  }
  return PlantModal{omega0, delta, std::sqrt(omega0 * omega0 - delta * delta),
                    phys.m_s / m_g};
}

void Validate(const PlantModal& m) {
  RequirePositive(m.omega0, "omega0");
  RequirePositive(m.omega_d, "omega_d");
  RequirePositive(m.m_star, "m_star");
  if (!(m.delta >= 0.0) || m.delta >= m.omega0) {
    throw std::invalid_argument("delta must satisfy 0 <= delta < omega0");
  }
  const double expected = std::sqrt(m.omega0 * m.omega0 - m.delta * m.delta);
  if (std::abs(expected - m.omega_d) > 1e-9 * m.omega0) {
    throw std::invalid_argument("omega_d inconsistent with omega0 and delta");
  }
}

void Validate(const KinematicLimits& limits) {
  RequirePositive(limits.v_lim, "v_lim");
  RequirePositive(limits.a_lim, "a_lim");
  RequirePositive(limits.j_lim, "j_lim");
}

JerkProfile::JerkProfile(std::vector<JerkStep> steps, KinematicState initial)
    : initial_(initial) {
  std::stable_sort(steps.begin(), steps.end(),
                   [](const JerkStep& a, const JerkStep& b) { return a.t < b.t; });
  double scale = 0.0;
  for (const JerkStep& s : steps) scale = std::max(scale, std::abs(s.a));
  steps_.reserve(steps.size());
  for (const JerkStep& s : steps) {
    if (!steps_.empty() && s.t - steps_.back().t <= kMergeTolerance) {
      steps_.back().a += s.a;
    } else {
      steps_.push_back(s);
    }
  }
  // Merged pairs of opposite steps leave round-off residue.
  const double drop = 1e-12 * scale;
  std::erase_if(steps_, [drop](const JerkStep& s) { return std::abs(s.a) <= drop; });
}

double JerkProfile::end_time() const { return steps_.empty() ? 0.0 : steps_.back().t; }

double JerkProfile::start_time() const {
  return steps_.empty() ? 0.0 : steps_.front().t;
}

JerkProfile JerkProfile::Shifted(double dt) const {
  std::vector<JerkStep> out(steps_.begin(), steps_.end());
  for (JerkStep& s : out) s.t += dt;
  return JerkProfile(std::move(out), initial_);
}

JerkProfile JerkProfile::Scaled(double factor) const {
  std::vector<JerkStep> out(steps_.begin(), steps_.end());
  for (JerkStep& s : out) s.a *= factor;
  return JerkProfile(std::move(out), {initial_.z * factor, initial_.v * factor,
                                      initial_.acc * factor});
}

JerkProfile JerkProfile::operator+(const JerkProfile& other) const {
  std::vector<JerkStep> out(steps_.begin(), steps_.end());
  out.insert(out.end(), other.steps_.begin(), other.steps_.end());
  return JerkProfile(std::move(out),
                     {initial_.z + other.initial_.z, initial_.v + other.initial_.v,
                      initial_.acc + other.initial_.acc});
}

KinematicSample EvalKinematics(const JerkProfile& profile, double t) {
  const KinematicState& s0 = profile.initial();
  KinematicSample out{t, s0.z + s0.v * t + 0.5 * s0.acc * t * t, s0.v + s0.acc * t,
                      s0.acc, 0.0};
  for (const JerkStep& step : profile.steps()) {
    if (step.t > t) break;
    const double dt = t - step.t;
    out.jerk += step.a;
    out.acc += step.a * dt;
    out.v += 0.5 * step.a * dt * dt;
    out.z += step.a * dt * dt * dt / 6.0;
  }
  return out;
}

std::array<double, 3> MomentConditions(const JerkProfile& profile) {
  std::array<double, 3> m{0.0, 0.0, 0.0};
  for (const JerkStep& s : profile.steps()) {
    m[0] += s.a;
    m[1] += s.a * s.t;
    m[2] += s.a * s.t * s.t;
  }
  return m;
}

double ForcedEquilibrium(const PlantModal& modal, double acc) {
  return -modal.m_star * acc / (modal.omega0 * modal.omega0);
}

OscState PropagateOsc(const JerkProfile& profile, const PlantModal& modal,
                      OscState state0, double t) {
  OscState s = state0;
  ForEachInterval(profile, t, [&](double from, double to, double acc, double jerk) {
    s = PropagateInterval(s, modal, acc, jerk, to - from);
  });
  return s;
}

std::vector<double> SampleOsc(const JerkProfile& profile, const PlantModal& modal,
                              OscState state0, std::span<const double> times) {
  std::vector<double> out;
  out.reserve(times.size());
  if (times.empty()) return out;
  // Breakpoints are the union of step times and sample times.
  OscState s = state0;
  double t = 0.0;
  std::size_t next = 0;
  while (next < times.size() && times[next] <= 0.0) {
    out.push_back(s.x);
    ++next;
  }
  ForEachInterval(profile, times.back(),
                  [&](double from, double to, double acc, double jerk) {
                    while (next < times.size() && times[next] <= to) {
                      const double ts = times[next];
                      s = PropagateInterval(s, modal, acc + jerk * (t - from),
                                            jerk, ts - t);
                      t = ts;
                      out.push_back(s.x);
                      ++next;
                    }
                    if (to > t) {
                      s = PropagateInterval(s, modal, acc + jerk * (t - from), jerk,
                                            to - t);
                      t = to;
                    }
                  });
  return out;
}

double OscillationAmplitude(const OscState& state, const PlantModal& modal,
                            double acc_end) {
  const double e = state.x - ForcedEquilibrium(modal, acc_end);
  const double c = (state.xdot + modal.delta * e) / modal.omega_d;
  return std::hypot(e, c);
}

double ResidualAmplitude(const JerkProfile& profile, const PlantModal& sim) {
  const double t_end = profile.end_time();
  const KinematicSample k0 = EvalKinematics(profile, 0.0);
  const OscState s0{ForcedEquilibrium(sim, k0.acc), 0.0};
  const OscState s = PropagateOsc(profile, sim, s0, t_end);
  return OscillationAmplitude(s, sim, EvalKinematics(profile, t_end).acc);
}

}  // namespace jerkseg
