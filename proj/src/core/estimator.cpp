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

#include "kpmdos/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "kpmdos/errors.hpp"
#include "kpmdos/parallel.hpp"
#include "kpmdos/rng.hpp"

namespace kpmdos {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// Rotations R with R Z R^dag = X (resp. Y), applied as R^dag, CZZ, R.
void append_basis_change(Circuit &c, const Bond &b, Pauli p, bool dagger) {
    for (std::size_t q : {b.q0, b.q1}) {
        if (p == Pauli::X) {
            c.push(GateOp::u1q(q, dagger ? -kHalfPi : kHalfPi, kHalfPi));
        } else {
            c.push(GateOp::u1q(q, dagger ? kHalfPi : -kHalfPi, 0.0));
        }
    }
}

struct ReplicaRun {
    std::vector<double> x;
    std::vector<double> y;
};

ReplicaRun run_replica(const HamiltonianSpec &h, const RandomCircuitSpec &spec,
                       std::size_t M, std::size_t steps) {
    const std::size_t L = h.n_qubits;
    Circuit prep = build_random_circuit(spec);
    prep.n_qubits = L + 1;
    StateVector base(L + 1);
    base.apply(prep);
    base.apply(GateOp::h(L));
    ReplicaRun out;
    out.x.resize(M + 1);
    out.y.resize(M + 1);
    for (std::size_t n = 0; n <= M; ++n) {
        StateVector s = base;
        s.apply(build_controlled_trotter(h, n, steps));
        const auto xy = ancilla_xy_expectation(s, L);
        out.x[n] = xy.x;
        out.y[n] = xy.y;
    }
    return out;
}

void check_inputs(const HamiltonianSpec &h_tilde,
                  const RandomCircuitSpec &random,
                  const EstimatorOptions &opts) {
    if (!h_tilde.rescale) {
        throw DomainError("moment circuits need a rescaled Hamiltonian");
    }
    if (random.n_qubits != h_tilde.n_qubits) {
        throw DomainError("random-state width does not match the Hamiltonian");
    }
    if (h_tilde.n_qubits + 1 > kMaxQubits) {
        throw ResourceError("L + 1 = " + std::to_string(h_tilde.n_qubits + 1) +
                            " qubits exceed the statevector cap");
    }
    if (opts.R < 1) {
        throw DomainError("at least one replica is required");
    }
    if (opts.steps < 1) {
        throw DomainError("trotter steps must be at least 1");
    }
}

void fill_metadata(MomentSet &m, const RandomCircuitSpec &random,
                   const EstimatorOptions &opts) {
    m.metadata["scheme"] = std::string(scheme_name(random.scheme));
    m.metadata["layers"] = std::to_string(random.n_layers);
    m.metadata["s"] = std::to_string(random.s);
    m.metadata["seed"] = std::to_string(random.seed);
    m.metadata["K"] = std::to_string(opts.K);
    m.metadata["steps"] = std::to_string(opts.steps);
}

} // namespace

std::vector<Bond> ring_bonds(const HamiltonianSpec &h) {
    const std::size_t L = h.n_qubits;
    std::map<std::size_t, Bond> bonds;
    for (const auto &t : h.terms) {
        const bool pair = t.ops.size() == 2 && t.ops[0].second == t.ops[1].second;
        if (!pair) {
            throw DomainError("only XX, YY and ZZ bond terms can be compiled "
                              "into controlled evolutions");
        }
        const std::size_t s0 = t.ops[0].first;
        const std::size_t s1 = t.ops[1].first;
        std::size_t i = 0;
        if (s1 == s0 + 1) {
            i = s0;
        } else if (s0 == 0 && s1 == L - 1 && L > 2) {
            i = L - 1;
        } else {
            throw DomainError("term on sites " + std::to_string(s0) + "," +
                              std::to_string(s1) + " is not a ring bond");
        }
        Bond &b = bonds[i];
        b.q0 = i;
        b.q1 = (i + 1) % L;
        switch (t.ops[0].second) {
        case Pauli::X:
            b.xx += t.coefficient;
            break;
        case Pauli::Y:
            b.yy += t.coefficient;
            break;
        default:
            b.zz += t.coefficient;
        }
    }
    std::vector<Bond> out;
    for (int parity : {0, 1}) {
        for (const auto &[i, b] : bonds) {
            if (static_cast<int>(i % 2) == parity) {
                out.push_back(b);
            }
        }
    }
    return out;
}

HamiltonianSpec trotter_hamiltonian(const HamiltonianSpec &h_tilde,
                                    std::size_t K) {
    if (K == 0) {
        return h_tilde;
    }
    if (K == 1) {
        return updated_st_hamiltonian(h_tilde);
    }
    throw DomainError("circuits support arc-cosine order K = 0 or K = 1");
}

void append_controlled_bond(Circuit &c, std::size_t ancilla, const Bond &bond,
                            double t) {
    for (const auto &[p, coeff] :
         {std::pair{Pauli::X, bond.xx}, std::pair{Pauli::Y, bond.yy},
          std::pair{Pauli::Z, bond.zz}}) {
        if (coeff == 0.0) {
            continue;
        }
        // exp(i phi ZZ) = ZZ(-2 phi).
        const double theta = -2.0 * t * coeff;
        if (p == Pauli::Z) {
            c.push(GateOp::czz(ancilla, bond.q0, bond.q1, theta));
            continue;
        }
        append_basis_change(c, bond, p, true);
        c.push(GateOp::czz(ancilla, bond.q0, bond.q1, theta));
        append_basis_change(c, bond, p, false);
    }
}

Circuit build_controlled_trotter(const HamiltonianSpec &h_tilde, std::size_t n,
                                 std::size_t steps) {
    if (steps < 1) {
        throw DomainError("trotter steps must be at least 1");
    }
    if (!h_tilde.rescale) {
        throw DomainError("controlled evolution needs a rescaled Hamiltonian");
    }
    const std::size_t L = h_tilde.n_qubits;
    Circuit c;
    c.n_qubits = L + 1;
    if (n == 0) {
        return c;
    }
    const auto bonds = ring_bonds(h_tilde);
    const double t = static_cast<double>(n) / static_cast<double>(steps);
    for (std::size_t step = 0; step < steps; ++step) {
        for (const auto &b : bonds) {
            append_controlled_bond(c, L, b, t);
        }
    }
    const double phase = static_cast<double>(n) * h_tilde.rescale->beta_id;
    if (phase != 0.0) {
        c.push(GateOp::z(L, phase));
    }
    return c;
}

MomentCircuitPlan MomentCircuitPlan::make(std::size_t n, std::size_t K,
                                          std::size_t steps,
                                          const RandomCircuitSpec &random) {
    MomentCircuitPlan p;
    p.n = n;
    p.K = K;
    p.steps = steps;
    p.basis = (n % 2 == 0) ? PauliBasis::X : PauliBasis::Y;
    p.random = random;
    return p;
}

Circuit build_moment_circuit(const MomentCircuitPlan &plan,
                             const HamiltonianSpec &h_tilde) {
    const std::size_t L = h_tilde.n_qubits;
    if (plan.random.n_qubits != L) {
        throw DomainError("random-state width does not match the Hamiltonian");
    }
    const HamiltonianSpec h = trotter_hamiltonian(h_tilde, plan.K);
    Circuit c = build_random_circuit(plan.random);
    c.n_qubits = L + 1;
    c.push(GateOp::h(L));
    c.append(build_controlled_trotter(h, plan.n, plan.steps));
    c.metadata["readout_offset"] = std::to_string(c.ops.size());
    if (plan.basis == PauliBasis::Y) {
        c.push(GateOp::z(L, -kHalfPi));
    }
    c.push(GateOp::h(L));
    c.push(GateOp::measure(L));
    c.metadata["n"] = std::to_string(plan.n);
    c.metadata["K"] = std::to_string(plan.K);
    c.metadata["steps"] = std::to_string(plan.steps);
    c.metadata["basis"] = plan.basis == PauliBasis::X ? "X" : "Y";
    c.metadata["beta_id"] = std::to_string(h.identity_shift());
    return c;
}

double moment_postprocess(std::size_t n, double x_mean, double y_mean) {
    const double sign = ((n / 2) % 2 == 0) ? 1.0 : -1.0;
    return sign * ((n % 2 == 0) ? x_mean : y_mean);
}

MomentSet estimate_moments_exact(const HamiltonianSpec &h_tilde,
                                 const RandomCircuitSpec &random,
                                 const EstimatorOptions &opts) {
    check_inputs(h_tilde, random, opts);
    const HamiltonianSpec h = trotter_hamiltonian(h_tilde, opts.K);
    std::vector<std::vector<double>> per(opts.R);
    parallel_for(opts.R, [&](std::size_t r) {
        const auto run = run_replica(h, random.replica(r), opts.M, opts.steps);
        per[r].resize(opts.M + 1);
        for (std::size_t n = 0; n <= opts.M; ++n) {
            per[r][n] = moment_postprocess(n, run.x[n], run.y[n]);
        }
    });
    MomentSet out;
    out.provenance = Provenance::CircuitExact;
    out.replicas = opts.R;
    out.rescale = h_tilde.rescale;
    out.values.assign(opts.M + 1, 0.0);
    out.std_errors.assign(opts.M + 1, 0.0);
    const double R = static_cast<double>(opts.R);
    for (std::size_t n = 0; n <= opts.M; ++n) {
        double mean = 0.0;
        for (const auto &v : per) {
            mean += v[n];
        }
        mean /= R;
        double var = 0.0;
        for (const auto &v : per) {
            var += (v[n] - mean) * (v[n] - mean);
        }
        var = opts.R > 1 ? var / (R - 1) : 0.0;
        out.values[n] = mean;
        out.std_errors[n] = std::sqrt(var / R);
    }
    out.replica_scatter = out.std_errors;
    fill_metadata(out, random, opts);
    return out;
}

double shot_noise_floor(std::size_t R, std::uint64_t shots) {
    return std::sqrt(1.0 / (static_cast<double>(R) * static_cast<double>(shots)));
}

MomentSet estimate_moments_shots(const HamiltonianSpec &h_tilde,
                                 const RandomCircuitSpec &random,
                                 const EstimatorOptions &opts,
                                 std::uint64_t shots, std::uint64_t shot_seed) {
    check_inputs(h_tilde, random, opts);
    if (shots < 1) {
        throw DomainError("shots must be at least 1");
    }
    const HamiltonianSpec h = trotter_hamiltonian(h_tilde, opts.K);
    std::vector<std::vector<double>> per(opts.R);
    parallel_for(opts.R, [&](std::size_t r) {
        const auto run = run_replica(h, random.replica(r), opts.M, opts.steps);
        per[r].resize(opts.M + 1);
        for (std::size_t n = 0; n <= opts.M; ++n) {
            const double expectation = (n % 2 == 0) ? run.x[n] : run.y[n];
            const auto counts =
                sample_pm1(expectation, shots, shot_seed,
                           stream_id(StreamDomain::ShotBatch, r, n));
            const double m = counts.mean();
            per[r][n] = moment_postprocess(n, m, m);
        }
    });
    MomentSet out;
    out.provenance = Provenance::CircuitShots;
    out.replicas = opts.R;
    out.shots = shots;
    out.rescale = h_tilde.rescale;
    out.values.assign(opts.M + 1, 0.0);
    out.std_errors.assign(opts.M + 1, 0.0);
    out.replica_scatter.assign(opts.M + 1, 0.0);
    const double R = static_cast<double>(opts.R);
    const double total = R * static_cast<double>(shots);
    for (std::size_t n = 0; n <= opts.M; ++n) {
        double mean = 0.0;
        for (const auto &v : per) {
            mean += v[n];
        }
        mean /= R;
        double var = 0.0;
        for (const auto &v : per) {
            var += (v[n] - mean) * (v[n] - mean);
        }
        var = opts.R > 1 ? var / (R - 1) : 0.0;
        out.values[n] = mean;
        out.std_errors[n] =
            std::sqrt(std::max(0.0, 1.0 - mean * mean) / total);
        out.replica_scatter[n] = std::sqrt(var / R);
    }
    fill_metadata(out, random, opts);
    out.metadata["shot_seed"] = std::to_string(shot_seed);
    return out;
}

CostReport hqc_cost(std::uint64_t n_1q, std::uint64_t n_2q, std::uint64_t n_m,
                    std::uint64_t shots) {
    CostReport r;
    r.n_1q = n_1q;
    r.n_2q = n_2q;
    r.n_m = n_m;
    r.shots = shots;
    const std::uint64_t weight = n_1q + 10 * n_2q + 5 * n_m;
    const std::uint64_t num = 5 * 5000 + shots * weight;
    const std::uint64_t g = std::gcd(num, std::uint64_t{5000});
    r.hqc_num = num / g;
    r.hqc_den = 5000 / g;
    return r;
}

CostReport hqc_cost(const Circuit &circuit, std::uint64_t shots) {
    const GateCounts c = gate_counts(lower_to_native(circuit));
    return hqc_cost(c.one_qubit, c.two_qubit, c.measurements, shots);
}

} // namespace kpmdos
