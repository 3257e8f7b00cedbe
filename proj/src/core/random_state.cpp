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

#include "kpmdos/random_state.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>

#include "kpmdos/errors.hpp"
#include "kpmdos/measurement.hpp"
#include "kpmdos/parallel.hpp"
#include "kpmdos/rng.hpp"

namespace kpmdos {

namespace {

constexpr double kPi = std::numbers::pi;

struct Rotation {
    double theta;
    double phi;
    bool is_z;
};

std::array<Rotation, 3> rotation_set(Scheme s) {
    if (s == Scheme::Ric) {
        return {{{kPi / 2, 0.0, false}, {kPi / 2, kPi / 2, false},
                 {kPi / 4, 0.0, true}}};
    }
    return {{{kPi / 2, 0.0, false}, {kPi / 4, kPi / 2, false},
             {kPi / 2, 0.0, true}}};
}

void validate(const RandomCircuitSpec &spec) {
    if (spec.n_qubits < 2) {
        throw DomainError("random circuits need at least two qubits");
    }
    if (spec.n_qubits > kMaxQubits) {
        throw ResourceError("random circuit width exceeds the statevector cap");
    }
    if (spec.n_layers < 1) {
        throw DomainError("random circuits need at least one layer");
    }
    if (spec.scheme != Scheme::Seq && spec.n_qubits % 2 != 0) {
        throw DomainError(std::string(scheme_name(spec.scheme)) +
                          " needs an even number of qubits");
    }
}

std::vector<int> jumps_unchecked(std::size_t s, std::size_t n_layers) {
    const std::size_t half = n_layers / 2;
    std::vector<int> p(n_layers);
    for (std::size_t l = 0; l < half; ++l) {
        const int mag = static_cast<int>(2 * s * l + 1);
        p[l] = (l % 2 == 0) ? -mag : mag;
        p[n_layers - 1 - l] = -p[l];
    }
    return p;
}

} // namespace

std::string_view scheme_name(Scheme s) {
    switch (s) {
    case Scheme::Par:
        return "par";
    case Scheme::Seq:
        return "seq";
    case Scheme::Ric:
        return "ric";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "par") {
        return Scheme::Par;
    }
    if (lower == "seq") {
        return Scheme::Seq;
    }
    if (lower == "ric") {
        return Scheme::Ric;
    }
    throw DomainError("unknown random-circuit scheme '" + std::string(name) +
                      "' (expected par, seq or ric)");
}

RandomCircuitSpec RandomCircuitSpec::replica(std::size_t r) const {
    RandomCircuitSpec out = *this;
    out.stream = stream_id(StreamDomain::Replica, r);
    return out;
}

std::vector<int> jump_sequence(std::size_t L, std::size_t s,
                               std::size_t n_layers) {
    if (L < 2 || L % 2 != 0) {
        throw DomainError("jumps are defined for even L");
    }
    if (n_layers == 0 || n_layers % 2 != 0) {
        throw DomainError("jump sequences need an even, nonzero layer count");
    }
    return jumps_unchecked(s, n_layers);
}

std::vector<std::pair<std::size_t, std::size_t>>
entangling_pairs(const RandomCircuitSpec &spec, std::size_t layer) {
    const std::size_t L = spec.n_qubits;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    switch (spec.scheme) {
    case Scheme::Par: {
        // Odd depths reuse the jumps of the next even depth, truncated.
        const auto p = jumps_unchecked(spec.s, spec.n_layers + spec.n_layers % 2);
        const auto Li = static_cast<long long>(L);
        for (std::size_t i = 0; i < L / 2; ++i) {
            const long long q = static_cast<long long>(2 * i) + p[layer];
            pairs.emplace_back(2 * i,
                               static_cast<std::size_t>(((q % Li) + Li) % Li));
        }
        break;
    }
    case Scheme::Seq:
        for (std::size_t i = 0; i + 1 < L; ++i) {
            pairs.emplace_back(i, i + 1);
        }
        break;
    case Scheme::Ric:
        for (std::size_t i = layer % 2; i < L; i += 2) {
            pairs.emplace_back(i, (i + 1) % L);
        }
        break;
    }
    return pairs;
}

Circuit build_random_circuit(const RandomCircuitSpec &spec) {
    validate(spec);
    const std::size_t L = spec.n_qubits;
    Circuit c;
    c.n_qubits = L;
    c.metadata["scheme"] = std::string(scheme_name(spec.scheme));
    c.metadata["layers"] = std::to_string(spec.n_layers);
    c.metadata["s"] = std::to_string(spec.s);
    c.metadata["seed"] = std::to_string(spec.seed);
    c.metadata["stream"] = std::to_string(spec.stream);
    const auto rotations = rotation_set(spec.scheme);
    Philox rng(spec.seed, spec.stream);
    std::vector<std::size_t> previous(L, 0);
    for (std::size_t layer = 0; layer < spec.n_layers; ++layer) {
        for (const auto &[q0, q1] : entangling_pairs(spec, layer)) {
            c.push(GateOp::zz(q0, q1, kPi / 2));
        }
        for (std::size_t q = 0; q < L; ++q) {
            const std::size_t k = (layer == 0)
                                      ? rng.below(3)
                                      : (previous[q] + 1 + rng.below(2)) % 3;
            previous[q] = k;
            const Rotation &r = rotations[k];
            c.push(r.is_z ? GateOp::z(q, r.theta)
                          : GateOp::u1q(q, r.theta, r.phi));
        }
    }
    return c;
}

StateVector prepare_random_state(const RandomCircuitSpec &spec) {
    const Circuit c = build_random_circuit(spec);
    StateVector s(spec.n_qubits);
    s.apply(c);
    return s;
}

double page_value(std::size_t L) {
    if (L == 0 || L % 2 != 0) {
        throw DomainError("the Page value is defined here for even L");
    }
    return static_cast<double>(L / 2) * std::numbers::ln2 - 0.5;
}

std::vector<EntropyRow> entropy_benchmark(const RandomCircuitSpec &base,
                                          std::size_t n_states,
                                          std::size_t max_layers) {
    if (n_states < 1) {
        throw DomainError("entropy benchmark needs at least one state");
    }
    if (max_layers < 1) {
        throw DomainError("entropy benchmark needs at least one layer");
    }
    RandomCircuitSpec probe = base;
    probe.n_layers = max_layers;
    validate(probe);
    std::vector<EntropyRow> rows(max_layers);
    std::size_t gates = 0;
    for (std::size_t d = 1; d <= max_layers; ++d) {
        RandomCircuitSpec spec = base;
        spec.n_layers = d;
        EntropyRow &row = rows[d - 1];
        row.layers = d;
        row.per_seed.assign(n_states, 0.0);
        parallel_for(n_states, [&](std::size_t k) {
            row.per_seed[k] = half_chain_entropy(
                prepare_random_state(spec.replica(k)));
        });
        gates += entangling_pairs(spec, d - 1).size();
        row.two_qubit_gates = gates;
        row.mean = std::accumulate(row.per_seed.begin(), row.per_seed.end(),
                                   0.0) /
                   static_cast<double>(n_states);
        row.min = *std::min_element(row.per_seed.begin(), row.per_seed.end());
        row.max = *std::max_element(row.per_seed.begin(), row.per_seed.end());
    }
    return rows;
}

TraceEstimate stochastic_trace(const LinearOperator &op,
                               const RandomCircuitSpec &spec, std::size_t R,
                               bool normalized) {
    if (R < 1) {
        throw DomainError("stochastic trace needs at least one replica");
    }
    std::vector<cplx> samples(R);
    parallel_for(R, [&](std::size_t r) {
        const StateVector state = prepare_random_state(spec.replica(r));
        std::vector<cplx> out(state.size());
        op(state.amplitudes(), out);
        samples[r] = inner_product(state.amplitudes(), out);
    });
    const double scale =
        normalized ? 1.0 : std::ldexp(1.0, static_cast<int>(spec.n_qubits));
    cplx mean{0.0, 0.0};
    for (const auto &v : samples) {
        mean += v;
    }
    mean /= static_cast<double>(R);
    double var = 0.0;
    if (R > 1) {
        for (const auto &v : samples) {
            var += std::norm(v - mean);
        }
        var /= static_cast<double>(R - 1);
    }
    return {mean * scale, scale * std::sqrt(var / static_cast<double>(R)), R};
}

double fourth_moment(const StateVector &state) {
    double acc = 0.0;
    for (const auto &c : state.amplitudes()) {
        const double p = std::norm(c);
        acc += p * p;
    }
    return std::ldexp(acc, static_cast<int>(state.n_qubits()));
}

double fourth_moment_diagnostic(const RandomCircuitSpec &spec,
                                std::size_t n_states) {
    if (n_states < 1) {
        throw DomainError("fourth-moment diagnostic needs at least one state");
    }
    std::vector<double> per_state(n_states);
    parallel_for(n_states, [&](std::size_t k) {
        per_state[k] = fourth_moment(prepare_random_state(spec.replica(k)));
    });
    return std::accumulate(per_state.begin(), per_state.end(), 0.0) /
           static_cast<double>(n_states);
}

std::vector<TraceBenchRow> trace_benchmark(const std::vector<std::size_t> &Ls,
                                           const Couplings &couplings,
                                           const RandomCircuitSpec &base,
                                           std::size_t R, std::size_t trials) {
    if (R < 1 || trials < 1) {
        throw DomainError("trace benchmark needs R >= 1 and trials >= 1");
    }
    std::vector<TraceBenchRow> rows;
    for (std::size_t L : Ls) {
        HamiltonianSpec h = build_xyz_staggered(L, couplings);
        simplify(h);
        // Distinct Pauli strings are orthonormal under tr(.)/2^L.
        double exact = 0.0;
        double norm2 = 0.0;
        for (const auto &t : h.terms) {
            if (t.is_identity()) {
                exact += t.coefficient;
            }
            norm2 += t.coefficient * t.coefficient;
        }
        const LinearOperator op = [&h](std::span<const cplx> in,
                                       std::span<cplx> out) {
            apply_hamiltonian(h, in, out);
        };
        TraceBenchRow row;
        row.L = L;
        row.R = R;
        row.per_trial.assign(trials, 0.0);
        for (std::size_t t = 0; t < trials; ++t) {
            RandomCircuitSpec spec = base;
            spec.n_qubits = L;
            std::vector<cplx> samples(R);
            parallel_for(R, [&](std::size_t r) {
                const StateVector state =
                    prepare_random_state(spec.replica(t * R + r));
                std::vector<cplx> out(state.size());
                op(state.amplitudes(), out);
                samples[r] = inner_product(state.amplitudes(), out);
            });
            cplx mean{0.0, 0.0};
            for (const auto &v : samples) {
                mean += v;
            }
            mean /= static_cast<double>(R);
            row.per_trial[t] = std::abs(mean.real() - exact) / std::sqrt(norm2);
        }
        row.mean_relative_error =
            std::accumulate(row.per_trial.begin(), row.per_trial.end(), 0.0) /
            static_cast<double>(trials);
        rows.push_back(std::move(row));
    }
    return rows;
}

double log2_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw DomainError("slope fit needs at least two paired points");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > 0.0)) {
            throw DomainError("slope fit needs positive y values");
        }
        const double ly = std::log2(y[i]);
        sx += x[i];
        sy += ly;
        sxx += x[i] * x[i];
        sxy += x[i] * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace kpmdos
