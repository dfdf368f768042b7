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

#ifndef JERKSEG_MODEL_HPP_
#define JERKSEG_MODEL_HPP_

// Plant description, jerk-step trajectories and exact evaluation of both the
// slider kinematics and the base oscillator they excite.
//
// The axis is a slider (position z) riding on a flexibly mounted base
// (deflection x). With the slider acceleration as input the base obeys
//
//   x'' = -omega0^2 x - 2 delta x' - m_star z''
//
// and the slider jerk z''' is a finite sum of Heaviside steps. All units SI.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace jerkseg {

struct PlantPhysical {
  double m_s = 0.0;  // slider mass [kg]
  double m_b = 0.0;  // base mass [kg]
  double k = 0.0;    // base stiffness [N/m]
  double d = 0.0;    // viscous damping [kg/s]
};

// First oscillatory mode of the base as seen from the slider acceleration.
struct PlantModal {
  double omega0 = 0.0;   // undamped angular frequency [rad/s]
  double delta = 0.0;    // decay rate [1/s]
  double omega_d = 0.0;  // damped angular frequency [rad/s]
  double m_star = 0.0;   // coupling ratio m_s / (m_s + m_b)

  // Builds a consistent modal set from omega0 and delta.
  static PlantModal FromUndamped(double omega0, double delta, double m_star);
  // Same mode with the damped frequency replaced and delta kept.
  static PlantModal FromDamped(double omega_d, double delta, double m_star);

  double damped_frequency_hz() const;
  double half_period() const;  // pi / omega_d
};

struct KinematicLimits {
  double v_lim = 0.0;
  double a_lim = 0.0;
  double j_lim = 0.0;
};

// Throws std::invalid_argument when any field is non-positive or the input is
// not underdamped.
PlantModal DeriveModal(const PlantPhysical& phys);
void Validate(const PlantModal& modal);
void Validate(const KinematicLimits& limits);

struct KinematicState {
  double z = 0.0;
  double v = 0.0;
  double acc = 0.0;

  friend bool operator==(const KinematicState&, const KinematicState&) = default;
};

struct JerkStep {
  double t = 0.0;  // switching instant [s]
  double a = 0.0;  // jerk increment [m/s^3]

  friend bool operator==(const JerkStep&, const JerkStep&) = default;
};

// Piecewise-constant jerk trajectory: the jerk is the sum of all steps with
// t_i <= t. The step list is kept normalized: sorted by time, steps closer
// than kMergeTolerance merged by summing amplitudes, zero increments dropped.
class JerkProfile {
 public:
  static constexpr double kMergeTolerance = 1e-12;

  JerkProfile() = default;
  explicit JerkProfile(std::vector<JerkStep> steps, KinematicState initial = {});

  std::span<const JerkStep> steps() const { return steps_; }
  const KinematicState& initial() const { return initial_; }
  bool empty() const { return steps_.empty(); }
  std::size_t size() const { return steps_.size(); }

  // Time of the last step, 0 for an empty profile.
  double end_time() const;
  double start_time() const;

  JerkProfile Shifted(double dt) const;
  JerkProfile Scaled(double factor) const;
  // Sum of jerks and initial states; overlapping steps superpose.
  JerkProfile operator+(const JerkProfile& other) const;

  friend bool operator==(const JerkProfile&, const JerkProfile&) = default;

 private:
  std::vector<JerkStep> steps_;
  KinematicState initial_;
};

struct KinematicSample {
  double t = 0.0;
  double z = 0.0;
  double v = 0.0;
  double acc = 0.0;
  double jerk = 0.0;
};

KinematicSample EvalKinematics(const JerkProfile& profile, double t);

// (sum a_i, sum a_i t_i, sum a_i t_i^2); all zero for a rest-to-rest profile.
std::array<double, 3> MomentConditions(const JerkProfile& profile);

struct OscState {
  double x = 0.0;
  double xdot = 0.0;
};

// Base deflection at rest under constant slider acceleration.
double ForcedEquilibrium(const PlantModal& modal, double acc);

// Exact state of the base oscillator at time t, starting from state0 at t = 0
// and driven by the slider acceleration of the profile. Each inter-step
// interval is propagated with the closed-form transition of the damped
// oscillator plus the particular solution for affine forcing.
OscState PropagateOsc(const JerkProfile& profile, const PlantModal& modal,
                      OscState state0, double t);

// Samples the base deflection at the given times (ascending), propagating
// interval by interval.
std::vector<double> SampleOsc(const JerkProfile& profile,
                              const PlantModal& modal, OscState state0,
                              std::span<const double> times);

// Amplitude of the free oscillation about the equilibrium for acceleration
// acc_end: sqrt(e^2 + ((xdot + delta e) / omega_d)^2) with e = x - x_eq.
double OscillationAmplitude(const OscState& state, const PlantModal& modal,
                            double acc_end);

// Runs the plant `sim` from equilibrium under the profile and returns the
// oscillation amplitude at the profile's end time.
double ResidualAmplitude(const JerkProfile& profile, const PlantModal& sim);

}  // namespace jerkseg

#endif  // JERKSEG_MODEL_HPP_
