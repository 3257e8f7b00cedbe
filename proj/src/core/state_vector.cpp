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

#include "kpmdos/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "kpmdos/errors.hpp"

namespace kpmdos {

namespace {

/// Spreads k over the bit positions not in {lo, hi} (lo < hi), leaving those
/// two bits zero.
inline std::size_t insert_two_zero_bits(std::size_t k, std::size_t lo,
                                        std::size_t hi) {
    const std::size_t lo_mask = (std::size_t{1} << lo) - 1;
    k = ((k & ~lo_mask) << 1U) | (k & lo_mask);
    const std::size_t hi_mask = (std::size_t{1} << hi) - 1;
    return ((k & ~hi_mask) << 1U) | (k & hi_mask);
}

void check_qubit_count(std::size_t n) {
    if (n < 1) {
        throw DomainError("state needs at least one qubit");
    }
    if (n > kMaxQubits) {
        throw ResourceError("statevector of " + std::to_string(n) +
                            " qubits exceeds the cap of " +
                            std::to_string(kMaxQubits));
    }
}

} // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_{n_qubits} {
    check_qubit_count(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_{n_qubits}, amps_{std::move(amplitudes)} {
    check_qubit_count(n_qubits);
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw DomainError("amplitude array length must be 2^n_qubits");
    }
}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
    StateVector s(n_qubits);
    if (index >= s.size()) {
        throw DomainError("basis index " + std::to_string(index) +
                          " out of range for " + std::to_string(n_qubits) +
                          " qubits");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return std::sqrt(acc);
}

void StateVector::apply_one_qubit(const Mat2 &m, std::size_t q) {
    apply_controlled_one_qubit(m, q, 0);
}

void StateVector::apply_controlled_one_qubit(const Mat2 &m, std::size_t q,
                                             std::size_t control_mask) {
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t n = amps_.size();
    for (std::size_t block = 0; block < n; block += 2 * stride) {
        for (std::size_t j = block; j < block + stride; ++j) {
            if ((j & control_mask) != control_mask) {
                continue;
            }
            const cplx a0 = amps_[j];
            const cplx a1 = amps_[j + stride];
            amps_[j] = m[0] * a0 + m[1] * a1;
            amps_[j + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void StateVector::apply_two_qubit(const Mat4 &m, std::size_t q0,
                                  std::size_t q1) {
    apply_controlled_two_qubit(m, q0, q1, 0);
}

void StateVector::apply_controlled_two_qubit(const Mat4 &m, std::size_t q0,
                                             std::size_t q1,
                                             std::size_t control_mask) {
    const std::size_t b0 = std::size_t{1} << q0;
    const std::size_t b1 = std::size_t{1} << q1;
    const std::size_t lo = std::min(q0, q1);
    const std::size_t hi = std::max(q0, q1);
    const std::size_t quarter = amps_.size() / 4;
    for (std::size_t k = 0; k < quarter; ++k) {
        const std::size_t base = insert_two_zero_bits(k, lo, hi);
        if ((base & control_mask) != control_mask) {
            continue;
        }
        const std::array<std::size_t, 4> idx{base, base | b0, base | b1,
                                             base | b0 | b1};
        const std::array<cplx, 4> in{amps_[idx[0]], amps_[idx[1]],
                                     amps_[idx[2]], amps_[idx[3]]};
        for (std::size_t r = 0; r < 4; ++r) {
            amps_[idx[r]] = m[4 * r] * in[0] + m[4 * r + 1] * in[1] +
                            m[4 * r + 2] * in[2] + m[4 * r + 3] * in[3];
        }
    }
}

void StateVector::apply(const GateOp &gate) {
    gate.validate(n_qubits_);
    const std::size_t cmask =
        gate.control ? (std::size_t{1} << *gate.control) : 0;
    switch (gate.kind) {
    case GateKind::ZZ:
    case GateKind::CZZ: {
        // Diagonal: phase exp(-i theta/2) on even parity, exp(+i theta/2) on odd.
        const std::size_t mask = (std::size_t{1} << gate.targets[0]) |
                                 (std::size_t{1} << gate.targets[1]);
        const cplx even = std::polar(1.0, -gate.theta / 2);
        const cplx odd = std::polar(1.0, gate.theta / 2);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & cmask) != cmask) {
                continue;
            }
            amps_[i] *= (std::popcount(i & mask) % 2 == 0) ? even : odd;
        }
        break;
    }
    case GateKind::Z:
    case GateKind::CZ: {
        const std::size_t bit = std::size_t{1} << gate.targets[0];
        const cplx p0 = std::polar(1.0, -gate.theta / 2);
        const cplx p1 = std::polar(1.0, gate.theta / 2);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & cmask) != cmask) {
                continue;
            }
            amps_[i] *= (i & bit) ? p1 : p0;
        }
        break;
    }
    case GateKind::U1q:
    case GateKind::CU1q:
        apply_controlled_one_qubit(
            gate_matrix_1q(GateKind::U1q, gate.theta, gate.phi),
            gate.targets[0], cmask);
        break;
    case GateKind::H:
        apply_one_qubit(gate_matrix_1q(GateKind::H, 0.0), gate.targets[0]);
        break;
    case GateKind::Measure:
        break;
    }
}

void StateVector::apply(const Circuit &circuit) {
    apply(circuit, 0, circuit.ops.size());
}

void StateVector::apply(const Circuit &circuit, std::size_t first,
                        std::size_t last) {
    if (circuit.n_qubits != n_qubits_) {
        throw DomainError("circuit width " + std::to_string(circuit.n_qubits) +
                          " does not match state width " +
                          std::to_string(n_qubits_));
    }
    if (first > last || last > circuit.ops.size()) {
        throw DomainError("op range out of bounds");
    }
    for (std::size_t i = first; i < last; ++i) {
        apply(circuit.ops[i]);
    }
}

cplx inner_product(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) {
        throw DomainError("inner product of states with different dimension");
    }
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

cplx inner_product(const StateVector &a, const StateVector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw DomainError("inner product of states with different widths");
    }
    return inner_product(a.amplitudes(), b.amplitudes());
}

Mat2 gate_matrix_1q(GateKind kind, double theta, double phi) {
    using namespace std::complex_literals;
    switch (kind) {
    case GateKind::Z:
    case GateKind::CZ:
        return {std::polar(1.0, -theta / 2), 0.0, 0.0,
                std::polar(1.0, theta / 2)};
    case GateKind::U1q:
    case GateKind::CU1q: {
        const double c = std::cos(theta / 2);
        const double s = std::sin(theta / 2);
        return {c, -1i * s * std::polar(1.0, -phi), -1i * s * std::polar(1.0, phi),
                c};
    }
    case GateKind::H: {
        const double r = 1.0 / std::numbers::sqrt2;
        return {r, r, r, -r};
    }
    default:
        throw DomainError("not a one-qubit gate kind");
    }
}

Mat4 gate_matrix_zz(double theta) {
    const cplx e = std::polar(1.0, -theta / 2);
    const cplx o = std::polar(1.0, theta / 2);
    Mat4 m{};
    m[0] = e;
    m[5] = o;
    m[10] = o;
    m[15] = e;
    return m;
}

} // namespace kpmdos
