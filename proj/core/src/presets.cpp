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

#include "jerkseg/presets.hpp"

#include <stdexcept>

namespace jerkseg {

namespace {

// Lab rig: k = 117499 N/m, d = 50.4 kg/s, omega0 = 61.02 rad/s, so the
// moving mass is k / omega0^2.
constexpr double kLabOmega0 = 61.02;
constexpr double kLabStiffness = 117499.0;
constexpr double kLabDamping = 50.4;
// The slider share of the lab rig is not documented. This value makes the
// unshaped S-curve over 14.5 mm leave 645 um of base oscillation.
constexpr double kLabMassRatio = 0.151357671;

}  // namespace

PlantPhysical PickAndPlacePhysical() { return {25.0, 500.0, 15e6, 5e3}; }

ParameterSet PickAndPlace() {
  return {"pickplace", DeriveModal(PickAndPlacePhysical()), {1.5, 20.0, 800.0}};
}

ParameterSet LabSystem() {
  const double m_g = kLabStiffness / (kLabOmega0 * kLabOmega0);
  const double delta = kLabDamping / (2.0 * m_g);
  return {"lab", PlantModal::FromUndamped(kLabOmega0, delta, kLabMassRatio),
          {0.45, 6.0, 200.0}};
}

ParameterSet SlowUndamped() {
  return {"slow", PlantModal::FromUndamped(40.0, 0.0, 0.1), {1.0, 2.0, 10.0}};
}

std::vector<ParameterSet> AllParameterSets() {
  return {PickAndPlace(), SlowUndamped(), LabSystem()};
}

ParameterSet ParameterSetByName(const std::string& name) {
  for (const ParameterSet& s : AllParameterSets()) {
    if (s.name == name) return s;
  }
  throw std::invalid_argument("unknown parameter set '" + name +
                              "' (expected pickplace, lab or slow)");
}

std::array<double, 5> LabFrequencies() {
  return {8.71, 9.20, LabSystem().modal.damped_frequency_hz(), 10.27, 10.601};
}

std::array<double, 5> LabDistances() { return {0.0145, 0.061, 0.116, 0.139, 0.181}; }

}  // namespace jerkseg
