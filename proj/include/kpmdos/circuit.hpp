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
 * Gate operations over the trapped-ion native set and ordered circuits.
 *
 * Native gates:
 *   ZZ(theta)        = exp(-i theta/2 Z(x)Z)
 *   Z(theta)         = exp(-i theta/2 Z)
 *   U1q(theta, phi)  = exp(-i theta/2 (cos(phi) X + sin(phi) Y))
 * plus the Hadamard (used on the ancilla only) and the controlled versions
 * CZZ, CZ, CU1q, which act as the identity when the control is |0> and as the
 * plain gate (phase included) when the control is |1>.
 *
 * Text format, one op per line, angles in radians printed with 17
 * significant digits:
 *
 *   qubits 13
 *   # key = value            (metadata)
 *   ZZ q0 q1 theta
 *   Z q theta
 *   U1q q theta phi
 *   H q
 *   CZZ c q0 q1 theta
 *   CZ c q theta
 *   CU1q c q theta phi
 *   MEASURE q
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kpmdos {

enum class GateKind : std::uint8_t {
    ZZ,
    Z,
    U1q,
    H,
    CZZ,
    CZ,
    CU1q,
    Measure,
};

std::string_view gate_name(GateKind kind);

struct GateOp {
    GateKind kind = GateKind::Z;
    std::vector<std::size_t> targets;
    std::optional<std::size_t> control;
    double theta = 0.0;
    double phi = 0.0;

    static GateOp zz(std::size_t q0, std::size_t q1, double theta);
    static GateOp z(std::size_t q, double theta);
    static GateOp u1q(std::size_t q, double theta, double phi);
    static GateOp h(std::size_t q);
    static GateOp czz(std::size_t c, std::size_t q0, std::size_t q1,
                      double theta);
    static GateOp cz(std::size_t c, std::size_t q, double theta);
    static GateOp cu1q(std::size_t c, std::size_t q, double theta, double phi);
    static GateOp measure(std::size_t q);

    /// Throws DomainError when indices repeat or exceed n_qubits.
    void validate(std::size_t n_qubits) const;

    friend bool operator==(const GateOp &, const GateOp &) = default;
};

struct GateCounts {
    std::size_t one_qubit = 0;
    std::size_t two_qubit = 0;
    std::size_t controlled = 0; // CZZ/CZ/CU1q before lowering
    std::size_t measurements = 0;

    friend bool operator==(const GateCounts &, const GateCounts &) = default;
};

struct Circuit {
    std::size_t n_qubits = 0;
    std::vector<GateOp> ops;
    std::map<std::string, std::string> metadata;

    void append(const Circuit &other);
    void push(GateOp op) { ops.push_back(std::move(op)); }
};

/// Counts by op kind. Z, U1q and H are one-qubit; ZZ is two-qubit.
GateCounts gate_counts(const Circuit &circuit);

/**
 * Rewrites every controlled op into ZZ / Z / U1q gates that realize exactly
 * the same unitary (no global phase is introduced). H and MEASURE pass
 * through unchanged.
 */
Circuit lower_to_native(const Circuit &circuit);

std::string to_text(const Circuit &circuit);
Circuit parse_circuit(std::string_view text);

} // namespace kpmdos
