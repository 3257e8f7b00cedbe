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
 * Dense statevector over L qubits. Qubit q is bit q of the basis index
 * (qubit 0 is the least-significant bit).
 */

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "kpmdos/circuit.hpp"

namespace kpmdos {

using cplx = std::complex<double>;

/// Row-major 2x2 and 4x4 matrices. For two-qubit matrices the local index is
/// (bit of q0) + 2 * (bit of q1).
using Mat2 = std::array<cplx, 4>;
using Mat4 = std::array<cplx, 16>;

/// Largest register the simulator will allocate.
inline constexpr std::size_t kMaxQubits = 26;

class StateVector {
  public:
    /// |0...0> on n_qubits.
    explicit StateVector(std::size_t n_qubits);
    StateVector(std::size_t n_qubits, std::vector<cplx> amplitudes);

    static StateVector basis(std::size_t n_qubits, std::size_t index);

    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t size() const { return amps_.size(); }
    [[nodiscard]] std::span<const cplx> amplitudes() const { return amps_; }
    [[nodiscard]] std::span<cplx> amplitudes() { return amps_; }
    cplx operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm() const;

    void apply(const GateOp &gate);
    void apply(const Circuit &circuit);
    /// Applies ops [first, last) of the circuit.
    void apply(const Circuit &circuit, std::size_t first, std::size_t last);

    void apply_one_qubit(const Mat2 &m, std::size_t q);
    void apply_two_qubit(const Mat4 &m, std::size_t q0, std::size_t q1);
    /// Applies m to q when every qubit in control_mask is 1.
    void apply_controlled_one_qubit(const Mat2 &m, std::size_t q,
                                    std::size_t control_mask);
    void apply_controlled_two_qubit(const Mat4 &m, std::size_t q0,
                                    std::size_t q1, std::size_t control_mask);

  private:
    std::size_t n_qubits_;
    std::vector<cplx> amps_;
};

/// <a|b>.
cplx inner_product(const StateVector &a, const StateVector &b);

/// <a|b> over raw amplitude arrays of equal length.
cplx inner_product(std::span<const cplx> a, std::span<const cplx> b);

Mat2 gate_matrix_1q(GateKind kind, double theta, double phi = 0.0);
Mat4 gate_matrix_zz(double theta);

} // namespace kpmdos
