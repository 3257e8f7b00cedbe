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

#include "kpmdos/kpm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "kpmdos/errors.hpp"
#include "kpmdos/parallel.hpp"

namespace kpmdos {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<std::pair<Provenance, std::string_view>, 7> kProvenance{{
    {Provenance::ED, "ED"},
    {Provenance::Recursion, "RECURSION"},
    {Provenance::Arccos, "ARCCOS"},
    {Provenance::ST, "ST"},
    {Provenance::CircuitExact, "CIRCUIT-EXACT"},
    {Provenance::CircuitShots, "CIRCUIT-SHOTS"},
    {Provenance::File, "FILE"},
}};

void check_spectrum(std::span<const double> eig) {
    if (eig.empty()) {
        throw DomainError("empty spectrum");
    }
    for (double e : eig) {
        if (!(std::abs(e) <= 1.0 + 1e-12)) {
            throw DomainError("rescaled eigenvalue " + std::to_string(e) +
                              " lies outside [-1, 1]");
        }
    }
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

} // namespace

std::string_view provenance_name(Provenance p) {
    for (const auto &[k, name] : kProvenance) {
        if (k == p) {
            return name;
        }
    }
    return "?";
}

Provenance parse_provenance(std::string_view name) {
    for (const auto &[k, n] : kProvenance) {
        if (n == name) {
            return k;
        }
    }
    throw ParseError("unknown moment provenance '" + std::string(name) + "'");
}

bool MomentSet::zero_consistent(std::size_t n) const {
    if (n >= values.size() || n >= std_errors.size() || std_errors[n] <= 0.0) {
        return false;
    }
    return std::abs(values[n]) < 2.0 * std_errors[n];
}

MomentSet MomentSet::truncated(std::size_t M) const {
    MomentSet out = *this;
    const std::size_t n = std::min(M + 1, values.size());
    out.values.resize(n);
    if (out.std_errors.size() > n) {
        out.std_errors.resize(n);
    }
    if (out.replica_scatter.size() > n) {
        out.replica_scatter.resize(n);
    }
    return out;
}

double chebyshev_T(std::size_t m, double x) {
    if (!(std::abs(x) <= 1.0)) {
        throw DomainError("Chebyshev argument must lie in [-1, 1]");
    }
    if (m == 0) {
        return 1.0;
    }
    double t_prev = 1.0;
    double t = x;
    for (std::size_t k = 1; k < m; ++k) {
        const double next = 2.0 * x * t - t_prev;
        t_prev = t;
        t = next;
    }
    return t;
}

MomentSet moments_by_ed(std::span<const double> rescaled_eigenvalues,
                        std::size_t M) {
    check_spectrum(rescaled_eigenvalues);
    std::vector<double> acc(M + 1, 0.0);
    for (double e : rescaled_eigenvalues) {
        const double x = clamp_unit(e);
        double t_prev = 1.0;
        double t = x;
        acc[0] += 1.0;
        if (M >= 1) {
            acc[1] += x;
        }
        for (std::size_t m = 2; m <= M; ++m) {
            const double next = 2.0 * x * t - t_prev;
            t_prev = t;
            t = next;
            acc[m] += t;
        }
    }
    MomentSet out;
    out.values.resize(M + 1);
    const double d = static_cast<double>(rescaled_eigenvalues.size());
    for (std::size_t m = 0; m <= M; ++m) {
        out.values[m] = acc[m] / d;
    }
    out.std_errors.assign(M + 1, 0.0);
    out.provenance = Provenance::ED;
    return out;
}

MomentSet moments_by_recursion(const HamiltonianSpec &h_tilde,
                               const StateVector &r, std::size_t M) {
    if (!h_tilde.rescale) {
        throw DomainError("recursion moments need a rescaled Hamiltonian");
    }
    if (r.n_qubits() != h_tilde.n_qubits) {
        throw DomainError("state width does not match the Hamiltonian");
    }
    const std::size_t d = r.size();
    std::vector<cplx> prev(r.amplitudes().begin(), r.amplitudes().end());
    std::vector<cplx> cur(d);
    std::vector<cplx> next(d);
    MomentSet out;
    out.values.assign(M + 1, 0.0);
    out.std_errors.assign(M + 1, 0.0);
    out.provenance = Provenance::Recursion;
    out.replicas = 1;
    out.rescale = h_tilde.rescale;
    out.values[0] = inner_product(r.amplitudes(), prev).real();
    if (M == 0) {
        return out;
    }
    apply_hamiltonian(h_tilde, prev, cur);
    out.values[1] = inner_product(r.amplitudes(), cur).real();
    for (std::size_t m = 2; m <= M; ++m) {
        apply_hamiltonian(h_tilde, cur, next);
        for (std::size_t i = 0; i < d; ++i) {
            next[i] = 2.0 * next[i] - prev[i];
        }
        out.values[m] = inner_product(r.amplitudes(), next).real();
        if (std::abs(out.values[m]) > 10.0) {
            throw DomainError("Chebyshev recursion diverges; the Hamiltonian "
                              "is not rescaled into [-1, 1]");
        }
        std::swap(prev, cur);
        std::swap(cur, next);
    }
    return out;
}

MomentSet moments_by_recursion(const HamiltonianSpec &h_tilde,
                               const RandomCircuitSpec &spec, std::size_t R,
                               std::size_t M) {
    if (R < 1) {
        throw DomainError("recursion average needs at least one replica");
    }
    if (spec.n_qubits != h_tilde.n_qubits) {
        throw DomainError("random-state width does not match the Hamiltonian");
    }
    std::vector<std::vector<double>> per(R);
    parallel_for(R, [&](std::size_t r) {
        per[r] = moments_by_recursion(h_tilde,
                                      prepare_random_state(spec.replica(r)), M)
                     .values;
    });
    MomentSet out;
    out.provenance = Provenance::Recursion;
    out.replicas = R;
    out.rescale = h_tilde.rescale;
    out.values.assign(M + 1, 0.0);
    out.std_errors.assign(M + 1, 0.0);
    for (std::size_t m = 0; m <= M; ++m) {
        double mean = 0.0;
        for (std::size_t r = 0; r < R; ++r) {
            mean += per[r][m];
        }
        mean /= static_cast<double>(R);
        double var = 0.0;
        for (std::size_t r = 0; r < R && R > 1; ++r) {
            var += (per[r][m] - mean) * (per[r][m] - mean);
        }
        if (R > 1) {
            var /= static_cast<double>(R - 1);
        }
        out.values[m] = mean;
        out.std_errors[m] = std::sqrt(var / static_cast<double>(R));
    }
    out.replica_scatter = out.std_errors;
    out.metadata["scheme"] = std::string(scheme_name(spec.scheme));
    out.metadata["layers"] = std::to_string(spec.n_layers);
    out.metadata["seed"] = std::to_string(spec.seed);
    return out;
}

MomentSet moments_by_arccos(std::span<const double> rescaled_eigenvalues,
                            std::size_t M, std::size_t K) {
    check_spectrum(rescaled_eigenvalues);
    std::vector<double> acc(M + 1, 0.0);
    for (double e : rescaled_eigenvalues) {
        const double hk = arccos_series(clamp_unit(e), K);
        for (std::size_t n = 0; n <= M; ++n) {
            const double angle = static_cast<double>(n) * hk;
            acc[n] += (n % 2 == 0) ? std::cos(angle) : std::sin(angle);
        }
    }
    MomentSet out;
    out.values.resize(M + 1);
    const double d = static_cast<double>(rescaled_eigenvalues.size());
    for (std::size_t n = 0; n <= M; ++n) {
        const double sign = ((n / 2) % 2 == 0) ? 1.0 : -1.0;
        out.values[n] = sign * acc[n] / d;
    }
    out.std_errors.assign(M + 1, 0.0);
    out.provenance = Provenance::Arccos;
    out.metadata["K"] = std::to_string(K);
    return out;
}

std::string_view kernel_name(KernelKind k) {
    return k == KernelKind::Jackson ? "jackson" : "dirichlet";
}

KernelKind parse_kernel(std::string_view name) {
    if (name == "jackson") {
        return KernelKind::Jackson;
    }
    if (name == "dirichlet" || name == "none") {
        return KernelKind::Dirichlet;
    }
    throw DomainError("unknown kernel '" + std::string(name) +
                      "' (expected jackson or dirichlet)");
}

std::vector<double> jackson_kernel(std::size_t M) {
    std::vector<double> g(M + 1);
    g[0] = 1.0;
    // Jackson factors for N = M + 1 retained moments.
    const double n1 = static_cast<double>(M + 2);
    const double cot = 1.0 / std::tan(kPi / n1);
    for (std::size_t m = 1; m <= M; ++m) {
        const double md = static_cast<double>(m);
        const double q = kPi * md / n1;
        g[m] = ((n1 - md) * std::cos(q) + std::sin(q) * cot) / n1;
    }
    return g;
}

std::vector<double> make_kernel(KernelKind kind, std::size_t M) {
    if (kind == KernelKind::Jackson) {
        return jackson_kernel(M);
    }
    return std::vector<double>(M + 1, 1.0);
}

Grid chebyshev_grid(std::size_t N) {
    if (N < 2) {
        throw DomainError("Chebyshev grid needs at least two points");
    }
    std::vector<double> x(N);
    const double nd = static_cast<double>(N);
    for (std::size_t j = 0; j < N; ++j) {
        // Ascending order: reverse of the textbook node index.
        x[j] = std::cos(kPi * (static_cast<double>(N - 1 - j) + 0.5) / nd);
    }
    return trapezoid_grid(std::move(x));
}

Grid trapezoid_grid(std::vector<double> x) {
    if (x.size() < 2) {
        throw DomainError("trapezoid grid needs at least two points");
    }
    if (!std::is_sorted(x.begin(), x.end()) ||
        std::adjacent_find(x.begin(), x.end()) != x.end()) {
        throw DomainError("grid points must be strictly ascending");
    }
    Grid g;
    g.w.assign(x.size(), 0.0);
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
        const double h = (x[j + 1] - x[j]) / 2;
        g.w[j] += h;
        g.w[j + 1] += h;
    }
    g.x = std::move(x);
    return g;
}

std::vector<double> DosCurve::physical_energies() const {
    if (!rescale) {
        throw DomainError("curve carries no rescale parameters");
    }
    std::vector<double> e(energies.size());
    for (std::size_t j = 0; j < e.size(); ++j) {
        e[j] = rescale->b * energies[j] + rescale->a;
    }
    return e;
}

double DosCurve::integral() const {
    double acc = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        acc += weights[j] * values[j];
    }
    return acc;
}

DosCurve kpm_reconstruct(const MomentSet &moments,
                         std::span<const double> kernel, const Grid &grid,
                         std::string kernel_label) {
    if (kernel.empty()) {
        throw DomainError("kernel must have at least one coefficient");
    }
    if (kernel.size() > moments.values.size()) {
        throw DomainError("kernel has " + std::to_string(kernel.size()) +
                          " coefficients but only " +
                          std::to_string(moments.values.size()) +
                          " moments are available");
    }
    if (grid.x.size() != grid.w.size()) {
        throw DomainError("grid points and weights differ in length");
    }
    DosCurve out;
    out.energies = grid.x;
    out.weights = grid.w;
    out.values.resize(grid.x.size());
    out.M = kernel.size() - 1;
    out.kernel = std::move(kernel_label);
    out.provenance = moments.provenance;
    out.rescale = moments.rescale;
    for (std::size_t j = 0; j < grid.x.size(); ++j) {
        const double x = grid.x[j];
        if (!(std::abs(x) < 1.0)) {
            throw DomainError("grid point " + std::to_string(x) +
                              " is not strictly inside (-1, 1)");
        }
        double acc = kernel[0] * moments.values[0];
        double t_prev = 1.0;
        double t = x;
        for (std::size_t m = 1; m < kernel.size(); ++m) {
            if (m >= 2) {
                const double next = 2.0 * x * t - t_prev;
                t_prev = t;
                t = next;
            }
            acc += 2.0 * kernel[m] * moments.values[m] * t;
        }
        out.values[j] = acc / (kPi * std::sqrt(1.0 - x * x));
    }
    return out;
}

DosCurve dos_histogram_from_ed(std::span<const double> rescaled_eigenvalues,
                               std::size_t n_bins) {
    if (n_bins < 2) {
        throw DomainError("histogram needs at least two bins");
    }
    check_spectrum(rescaled_eigenvalues);
    const double width = 2.0 / static_cast<double>(n_bins);
    std::vector<double> counts(n_bins, 0.0);
    for (double e : rescaled_eigenvalues) {
        auto bin = static_cast<std::size_t>((clamp_unit(e) + 1.0) / width);
        counts[std::min(bin, n_bins - 1)] += 1.0;
    }
    DosCurve out;
    out.M = 0;
    out.kernel = "histogram";
    out.provenance = Provenance::ED;
    const double total = static_cast<double>(rescaled_eigenvalues.size());
    for (std::size_t k = 0; k < n_bins; ++k) {
        out.energies.push_back(-1.0 + (static_cast<double>(k) + 0.5) * width);
        out.values.push_back(counts[k] / (total * width));
        out.weights.push_back(width);
    }
    return out;
}

double partition_function(const DosCurve &dos, double beta,
                          const ThermoOptions &opts, std::size_t *clipped) {
    if (!std::isfinite(beta)) {
        throw DomainError("beta must be finite");
    }
    double a = 0.0;
    double b = 1.0;
    double log_dim = 0.0;
    if (opts.units == EnergyUnits::Physical) {
        const auto &p = opts.rescale ? opts.rescale : dos.rescale;
        if (!p) {
            throw DomainError("physical units need rescale parameters");
        }
        if (opts.n_qubits == 0) {
            throw DomainError("physical units need the qubit count");
        }
        a = p->a;
        b = p->b;
        log_dim = static_cast<double>(opts.n_qubits) * std::numbers::ln2;
    }
    std::size_t n_clipped = 0;
    double z = 0.0;
    for (std::size_t j = 0; j < dos.values.size(); ++j) {
        double g = dos.values[j];
        if (g < 0.0) {
            ++n_clipped;
            g = 0.0;
        }
        z += dos.weights[j] * g * std::exp(log_dim - beta * (b * dos.energies[j] + a));
    }
    if (clipped != nullptr) {
        *clipped = n_clipped;
    }
    return z;
}

ThermoTable thermodynamics(const DosCurve &dos, std::span<const double> betas,
                           const ThermoOptions &opts) {
    ThermoTable table;
    const bool physical = opts.units == EnergyUnits::Physical;
    const auto log_z = [&](double beta) {
        return std::log(partition_function(dos, beta, opts));
    };
    partition_function(dos, 0.0, opts, &table.clipped_points);
    for (double beta : betas) {
        if (!std::isfinite(beta)) {
            throw DomainError("beta grid must be finite");
        }
        ThermoRow row;
        row.beta = beta;
        row.Z = partition_function(dos, beta, opts);
        const double h = opts.fd_scale * std::max(1.0, std::abs(beta));
        row.E = -(log_z(beta + h) - log_z(beta - h)) / (2 * h);
        const double lz = std::log(row.Z);
        if (beta == 0.0) {
            row.F = physical ? -std::numeric_limits<double>::infinity() : row.E;
            row.S = lz;
        } else {
            row.F = -lz / beta;
            row.S = beta * (row.E - row.F);
        }
        table.rows.push_back(row);
    }
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        const auto &p = table.rows[i - 1];
        const auto &c = table.rows[i];
        if (c.beta > p.beta &&
            c.E > p.E + 1e-9 * std::max(1.0, std::abs(p.E))) {
            table.energy_monotone = false;
        }
    }
    return table;
}

} // namespace kpmdos
