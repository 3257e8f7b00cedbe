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
 * Layered pseudo-random circuits (Par, Seq, Ric), their entanglement and
 * coefficient statistics, and stochastic trace estimation.
 *
 * One layer is a sublayer of ZZ(pi/2) gates followed by a sublayer of
 * single-qubit rotations, one per qubit. Starting from |0...0> the first ZZ
 * sublayer only adds phases, so a one-layer state is a product state.
 *
 *   Par  ZZ on (2i, (2i + p_l) mod L), i < L/2, with jumps p_l;
 *        rotations {X(pi/2), Y(pi/4), Z(pi/2)}
 *   Seq  ZZ on the open chain (i, i+1), i < L-1;
 *        rotations {X(pi/2), Y(pi/4), Z(pi/2)}
 *   Ric  ZZ on (2i, 2i+1) in even layers and (2i+1, 2i+2 mod L) in odd
 *        layers; rotations {X(pi/2), Y(pi/2), Z(pi/4)}
 *
 * X(t) = U1q(t, 0), Y(t) = U1q(t, pi/2). No qubit receives the same
 * rotation kind in two consecutive layers.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kpmdos/circuit.hpp"
#include "kpmdos/pauli.hpp"
#include "kpmdos/state_vector.hpp"

namespace kpmdos {

enum class Scheme : std::uint8_t { Par, Seq, Ric };

std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view name);

struct RandomCircuitSpec {
    std::size_t n_qubits = 12;
    Scheme scheme = Scheme::Par;
    std::size_t n_layers = 5;
    std::size_t s = 1;
    std::uint64_t seed = 0;
    /// Philox stream; replicas use stream_id(StreamDomain::Replica, r).
    std::uint64_t stream = 0;

    /// Copy addressing replica r of this spec.
    [[nodiscard]] RandomCircuitSpec replica(std::size_t r) const;
};

/**
 * First half p_l = -(-1)^l (2 s l + 1), l < n/2; second half is the first
 * half reversed with flipped signs. n_layers must be even.
 */
std::vector<int> jump_sequence(std::size_t L, std::size_t s,
                               std::size_t n_layers);

/// ZZ pairs of layer l (0-based) of an n_layers-deep circuit.
std::vector<std::pair<std::size_t, std::size_t>>
entangling_pairs(const RandomCircuitSpec &spec, std::size_t layer);

Circuit build_random_circuit(const RandomCircuitSpec &spec);
StateVector prepare_random_state(const RandomCircuitSpec &spec);

/// (L/2) ln 2 - 1/2.
double page_value(std::size_t L);

struct EntropyRow {
    std::size_t layers = 0;
    std::size_t two_qubit_gates = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::vector<double> per_seed;
};

/// Half-chain entropy statistics for depths 1..max_layers, state k using
/// replica stream k of `base`.
std::vector<EntropyRow> entropy_benchmark(const RandomCircuitSpec &base,
                                          std::size_t n_states,
                                          std::size_t max_layers);

struct TraceEstimate {
    std::complex<double> mean;
    double std_error = 0.0;
    std::size_t replicas = 0;
};

using LinearOperator =
    std::function<void(std::span<const cplx>, std::span<cplx>)>;

/// Mean of <r|X|r> over replicas 0..R-1 of `spec`; multiplied by 2^L when
/// `normalized` is false.
TraceEstimate stochastic_trace(const LinearOperator &op,
                               const RandomCircuitSpec &spec, std::size_t R,
                               bool normalized = true);

/// 2^L sum_i |c_i|^4 averaged over replicas 0..n_states-1.
/// 2^L * sum |c_i|^4 of one state: 1 for the uniform superposition, 2 for
/// Gaussian coefficients, 2^L for a basis state.
double fourth_moment(const StateVector &state);

/// fourth_moment averaged over replicas 0..n_states-1 of `spec`.
double fourth_moment_diagnostic(const RandomCircuitSpec &spec,
                                std::size_t n_states);

struct TraceBenchRow {
    std::size_t L = 0;
    std::size_t R = 0;
    double mean_relative_error = 0.0;
    std::vector<double> per_trial;
};

/**
 * Relative error |Theta - tr H / 2^L| / sqrt(tr H^2 / 2^L) of the normalized
 * stochastic trace of the staggered ring, for each L, averaged over
 * `trials` independent batches of R states. Batch t uses replicas
 * t*R .. t*R+R-1 of `base` (with n_qubits overridden).
 */
std::vector<TraceBenchRow> trace_benchmark(const std::vector<std::size_t> &Ls,
                                           const Couplings &couplings,
                                           const RandomCircuitSpec &base,
                                           std::size_t R, std::size_t trials);

/// Least-squares slope of log2(y) against x.
double log2_slope(std::span<const double> x, std::span<const double> y);

} // namespace kpmdos
