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
 * Hadamard-test moment circuits: random register state, ancilla in |+>,
 * ancilla-controlled product-formula evolution exp(+i n H), readout.
 *
 * Register qubits are 0..L-1 and the ancilla is qubit L. With
 * U = exp(i n H) the ancilla gives <X> = Re<r|U|r> and <Y> = Im<r|U|r>, and
 * the moment estimate is (-1)^floor(n/2) times <X> for even n, <Y> for odd n.
 *
 * The controlled evolution uses one first-order step per `steps`, each step
 * evolving for time n / steps: first every even bond (i even), then every
 * odd bond, each bond as controlled exp(i t (a XX + b YY + c ZZ)). The
 * identity coefficient becomes a final Z(n beta_id) on the ancilla.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kpmdos/circuit.hpp"
#include "kpmdos/kpm.hpp"
#include "kpmdos/measurement.hpp"
#include "kpmdos/pauli.hpp"
#include "kpmdos/random_state.hpp"

namespace kpmdos {

/// Bond (i, i+1 mod L) with its XX, YY and ZZ coefficients.
struct Bond {
    std::size_t q0 = 0;
    std::size_t q1 = 0;
    double xx = 0.0;
    double yy = 0.0;
    double zz = 0.0;

    [[nodiscard]] bool even() const { return q0 % 2 == 0; }
};

/**
 * Groups the terms into ring bonds, even bonds first, each group ordered by
 * i. Throws DomainError for any term that is not XX, YY or ZZ on a ring
 * bond.
 */
std::vector<Bond> ring_bonds(const HamiltonianSpec &h);

/// K = 0 returns h_tilde; K = 1 returns the updated-parameter spec.
HamiltonianSpec trotter_hamiltonian(const HamiltonianSpec &h_tilde,
                                    std::size_t K);

/// Appends controlled exp(i t (xx XX + yy YY + zz ZZ)) on the bond.
void append_controlled_bond(Circuit &c, std::size_t ancilla, const Bond &bond,
                            double t);

/// Controlled product-formula block on L + 1 qubits (ancilla = L).
Circuit build_controlled_trotter(const HamiltonianSpec &h_tilde, std::size_t n,
                                 std::size_t steps);

struct MomentCircuitPlan {
    std::size_t n = 0;
    std::size_t K = 0;
    std::size_t steps = 1;
    PauliBasis basis = PauliBasis::X;
    RandomCircuitSpec random;

    /// Plan with the basis fixed by the parity of n.
    static MomentCircuitPlan make(std::size_t n, std::size_t K,
                                  std::size_t steps,
                                  const RandomCircuitSpec &random);
};

/**
 * Random circuit, H on the ancilla, controlled block, readout (H for X;
 * Z(-pi/2) then H for Y) and MEASURE. Metadata records scheme, seed, n, K,
 * steps, basis and readout_offset, the index of the first readout op.
 */
Circuit build_moment_circuit(const MomentCircuitPlan &plan,
                             const HamiltonianSpec &h_tilde);

/// (-1)^floor(n/2) * (x_mean if n even, y_mean if n odd).
double moment_postprocess(std::size_t n, double x_mean, double y_mean);

struct EstimatorOptions {
    std::size_t R = 4;
    std::size_t M = 7;
    std::size_t K = 0;
    std::size_t steps = 1;
};

/// Infinite-shot moments averaged over replicas 0..R-1 of `random`.
MomentSet estimate_moments_exact(const HamiltonianSpec &h_tilde,
                                 const RandomCircuitSpec &random,
                                 const EstimatorOptions &opts);

/**
 * Shot-sampled moments. The ancilla of replica r, moment n is sampled from
 * Philox stream (shot_seed, stream_id(ShotBatch, r, n)). std_errors hold
 * sqrt((1 - mu^2) / (R shots)); replica_scatter holds the spread of the
 * per-replica estimates.
 */
MomentSet estimate_moments_shots(const HamiltonianSpec &h_tilde,
                                 const RandomCircuitSpec &random,
                                 const EstimatorOptions &opts,
                                 std::uint64_t shots, std::uint64_t shot_seed);

/// Noise floor sqrt(1 / (R shots)) of a shot estimate at mu = 0.
double shot_noise_floor(std::size_t R, std::uint64_t shots);

struct CostReport {
    std::uint64_t n_1q = 0;
    std::uint64_t n_2q = 0;
    std::uint64_t n_m = 0;
    std::uint64_t shots = 0;
    /// HQC as the reduced fraction hqc_num / hqc_den.
    std::uint64_t hqc_num = 5;
    std::uint64_t hqc_den = 1;

    [[nodiscard]] double hqc() const {
        return static_cast<double>(hqc_num) / static_cast<double>(hqc_den);
    }
};

/// 5 + (shots / 5000) (N_1q + 10 N_2q + 5 N_m) in exact arithmetic.
CostReport hqc_cost(std::uint64_t n_1q, std::uint64_t n_2q, std::uint64_t n_m,
                    std::uint64_t shots);

/// Cost of the circuit after lowering controlled ops to native gates.
CostReport hqc_cost(const Circuit &circuit, std::uint64_t shots);

} // namespace kpmdos
