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
 * Read-only diagnostics on a StateVector: single-qubit Pauli expectations,
 * seeded shot sampling, reduced density matrices and entanglement entropy.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "kpmdos/state_vector.hpp"

namespace kpmdos {

enum class PauliBasis { X, Y };

struct XYExpectation {
    double x = 0.0;
    double y = 0.0;
};

struct ShotCounts {
    std::uint64_t plus = 0;
    std::uint64_t minus = 0;

    [[nodiscard]] double mean() const {
        return (static_cast<double>(plus) - static_cast<double>(minus)) /
               static_cast<double>(plus + minus);
    }
};

/// <X> and <Y> of one qubit.
XYExpectation ancilla_xy_expectation(const StateVector &state,
                                     std::size_t ancilla);

/// <Z> of one qubit.
double ancilla_z_expectation(const StateVector &state, std::size_t ancilla);

/**
 * Draws `shots` outcomes of the ancilla measured in `basis`. Outcome +1 has
 * probability (1 + <P>)/2. The draw sequence is the Philox stream
 * (seed, stream), so a fixed pair always yields the same counts.
 */
ShotCounts sample_ancilla(const StateVector &state, std::size_t ancilla,
                          PauliBasis basis, std::uint64_t shots,
                          std::uint64_t seed, std::uint64_t stream = 0);

/// Same as sample_ancilla but from a known expectation value.
ShotCounts sample_pm1(double expectation, std::uint64_t shots,
                      std::uint64_t seed, std::uint64_t stream = 0);

/**
 * Partial trace onto `keep` (a nonempty strict subset). Row/column index of
 * the result enumerates the kept qubits in ascending order, lowest qubit as
 * the least-significant bit.
 */
Eigen::MatrixXcd reduced_density_matrix(const StateVector &state,
                                        std::vector<std::size_t> keep);

/// -sum(l ln l) in nats, with 0 ln 0 = 0.
double von_neumann_entropy(const Eigen::MatrixXcd &rho);

/// Entropy of qubits [0, L/2) against the rest.
double half_chain_entropy(const StateVector &state);

} // namespace kpmdos
