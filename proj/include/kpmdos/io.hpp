// Copyright 2026 The kpmdos Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * CSV and JSON forms of MomentSet, DosCurve and thermodynamics tables.
 * Numbers are written with 17 significant digits so files round-trip.
 *
 * Moment CSV:  n,value,std_error,replica_scatter,zero_consistent
 * DOS CSV:     x,energy,g,weight    (energy empty without rescale data)
 * Thermo CSV:  beta,Z,F,E,S
 */

#pragma once

#include <string>
#include <string_view>

#include "kpmdos/estimator.hpp"
#include "kpmdos/kpm.hpp"

namespace kpmdos {

std::string moments_to_csv(const MomentSet &m);
/// Self-contained JSON carrying values, errors and provenance.
std::string moments_to_json(const MomentSet &m);
MomentSet moments_from_json(std::string_view text);
/// Reads the CSV form; provenance becomes FILE.
MomentSet moments_from_csv(std::string_view text);

std::string dos_to_csv(const DosCurve &d);
std::string dos_to_json(const DosCurve &d);
DosCurve dos_from_json(std::string_view text);

std::string thermo_to_csv(const ThermoTable &t);

std::string cost_to_json(const CostReport &c);

/// Shortest round-trip text for a double ("%.17g").
std::string format_number(double x);

} // namespace kpmdos
