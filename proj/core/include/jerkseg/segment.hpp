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

#ifndef JERKSEG_SEGMENT_HPP_
#define JERKSEG_SEGMENT_HPP_

// Jerk segments: piecewise-constant jerk primitives that move the slider
// acceleration between levels of {-a_max, 0, +a_max} and leave the base
// oscillator at rest (in the forced equilibrium) at both ends.
//
// For a jerk made of steps (t_i, a_i) that returns to zero, the free base
// oscillation after the last step is proportional to
//
//   sum_i a_i exp(-lambda t_i),   lambda = -delta + i omega_d,
//
// independent of the starting acceleration. A segment is vibration free when
// this complex sum vanishes.

#include <optional>
#include <string>

#include "jerkseg/model.hpp"

namespace jerkseg {

enum class SegmentMethod {
  kZv,           // ramp convolved with the damped two-impulse ZV shaper
  kTimeOptimal,  // shortest bang/coast pulse train, ZV fallback
};

const char* ToString(SegmentMethod method);
SegmentMethod ParseSegmentMethod(const std::string& text);

struct SegmentSpec {
  double a_start = 0.0;
  double a_end = 0.0;
  double j_lim = 0.0;
  double a_max = 0.0;
  PlantModal modal;
};

struct JerkSegment {
  JerkProfile profile;  // initial state (0, 0, a_start)
  double t_f = 0.0;     // duration
  double s_f = 0.0;     // distance travelled when entered at rest
  double v_f = 0.0;     // velocity gained
  // Pulse structure, e.g. "+-+" or "+0+"; "zv" for the shaped ramp.
  std::string structure;
  // True when the acceleration touches a_start/a_end bound inside the
  // segment (coast arc at the bound).
  bool accel_bound_active = false;
};

// Amplitudes and spacing of the damped zero-vibration shaper.
struct ZvImpulses {
  double a1 = 0.5;
  double a2 = 0.5;
  double spacing = 0.0;  // pi / omega_d
};
ZvImpulses MakeZvImpulses(const PlantModal& modal);

JerkSegment DesignZvSegment(const SegmentSpec& spec);

// Searches pulse structures with jerk levels in {-j_lim, 0, +j_lim} and at
// most three pulses for the shortest vibration-free segment. Returns
// std::nullopt when no structure is feasible within the ZV duration.
std::optional<JerkSegment> TryDesignTimeOptimalSegment(const SegmentSpec& spec);

// Time-optimal design falling back to the ZV construction.
JerkSegment DesignSegment(const SegmentSpec& spec, SegmentMethod method);

// The three primitives of a trajectory for one working acceleration:
// seg1 0 -> a_max, seg2 a_max -> -a_max, seg3 -a_max -> 0.
// v_f3 follows the sign convention v_f3 = -z'(t_f3) > 0.
struct SegmentFamily {
  JerkSegment seg1;
  JerkSegment seg2;
  JerkSegment seg3;
  double a_max = 0.0;

  double t_f1() const { return seg1.t_f; }
  double t_f2() const { return seg2.t_f; }
  double t_f3() const { return seg3.t_f; }
  double s_f1() const { return seg1.s_f; }
  double s_f2() const { return seg2.s_f; }
  double s_f3() const { return seg3.s_f; }
  double v_f1() const { return seg1.v_f; }
  double v_f2() const { return seg2.v_f; }
  double v_f3() const { return -seg3.v_f; }
};

SegmentFamily PrecomputeFamily(double a_max, const KinematicLimits& limits,
                               const PlantModal& modal, SegmentMethod method);

// Drops memoized segment designs. Designs are cached per
// (|delta a| / j_lim, modal, method).
void ClearSegmentCache();

}  // namespace jerkseg

#endif  // JERKSEG_SEGMENT_HPP_
