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

#ifndef JERKSEG_PRESETS_HPP_
#define JERKSEG_PRESETS_HPP_

// Built-in parameter sets.

#include <array>
#include <string>
#include <vector>

#include "jerkseg/model.hpp"

namespace jerkseg {

struct ParameterSet {
  std::string name;
  PlantModal modal;
  KinematicLimits limits;
};

// Pick-and-place machine: 25 kg slider on a 500 kg base.
PlantPhysical PickAndPlacePhysical();
ParameterSet PickAndPlace();
// Laboratory rig with exchangeable springs, nominal configuration.
ParameterSet LabSystem();
// Slow undamped axis.
ParameterSet SlowUndamped();

std::vector<ParameterSet> AllParameterSets();
// Returns the set named "pickplace", "lab" or "slow"; throws otherwise.
ParameterSet ParameterSetByName(const std::string& name);

// Damped frequencies [Hz] of the five lab spring configurations; the middle
// entry is the nominal one.
std::array<double, 5> LabFrequencies();
// Lab transfer distances [m].
std::array<double, 5> LabDistances();

}  // namespace jerkseg

#endif  // JERKSEG_PRESETS_HPP_
