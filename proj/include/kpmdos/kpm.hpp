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
 * Chebyshev moments, kernels, KPM reconstruction of the density of states
 * and thermodynamics by quadrature.
 *
 * Energies are in rescaled units x in (-1, 1) unless a routine says
 * otherwise; physical energies are E = b x + a.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kpmdos/pauli.hpp"
#include "kpmdos/random_state.hpp"
#include "kpmdos/state_vector.hpp"

namespace kpmdos {

enum class Provenance : std::uint8_t {
    ED,
    Recursion,
    Arccos,
    ST,
    CircuitExact,
    CircuitShots,
    File,
};

std::string_view provenance_name(Provenance p);
Provenance parse_provenance(std::string_view name);

struct MomentSet {
    std::vector<double> values;
    std::vector<double> std_errors;
    /// Sample std of per-replica estimates over sqrt(R); empty if unused.
    std::vector<double> replica_scatter;
    Provenance provenance = Provenance::ED;
    std::size_t replicas = 0;
    std::uint64_t shots = 0;
    std::optional<RescaleParams> rescale;
    std::map<std::string, std::string> metadata;

    [[nodiscard]] std::size_t size() const { return values.size(); }
    /// |mu_n| < 2 std_error (false for exact paths).
    [[nodiscard]] bool zero_consistent(std::size_t n) const;
    /// Copy holding moments 0..M.
    [[nodiscard]] MomentSet truncated(std::size_t M) const;
};

/// T_m(x) by the three-term recursion.
double chebyshev_T(std::size_t m, double x);

/// mu_m = mean_k T_m(E_k) over a rescaled spectrum.
MomentSet moments_by_ed(std::span<const double> rescaled_eigenvalues,
                        std::size_t M);

/**
 * mu_m = Re <r| T_m(H) |r> with |r_m> = 2 H |r_{m-1}> - |r_{m-2}>, H the
 * full rescaled operator.
 */
MomentSet moments_by_recursion(const HamiltonianSpec &h_tilde,
                               const StateVector &r, std::size_t M);

/// Average of the single-state recursion over replicas 0..R-1 of `spec`.
MomentSet moments_by_recursion(const HamiltonianSpec &h_tilde,
                               const RandomCircuitSpec &spec, std::size_t R,
                               std::size_t M);

/**
 * Moments of the order-K arc-cosine surrogate evaluated on a rescaled
 * spectrum: (-1)^floor(n/2) times mean cos(n H_K) (n even) or
 * mean sin(n H_K) (n odd), H_K = arccos_series(E, K).
 */
MomentSet moments_by_arccos(std::span<const double> rescaled_eigenvalues,
                            std::size_t M, std::size_t K);

enum class KernelKind : std::uint8_t { Jackson, Dirichlet };

std::string_view kernel_name(KernelKind k);
KernelKind parse_kernel(std::string_view name);

/**
 * Jackson damping for the M + 1 moments 0..M, with N = M + 2:
 * g_m = [(N - m) cos(pi m / N) + sin(pi m / N) cot(pi / N)] / N.
 */
std::vector<double> jackson_kernel(std::size_t M);
std::vector<double> make_kernel(KernelKind kind, std::size_t M);

/// Energy points with quadrature weights.
struct Grid {
    std::vector<double> x;
    std::vector<double> w;
};

/**
 * Nodes x_j = cos(pi (j + 1/2) / N) sorted ascending, with trapezoid
 * weights. The nodes cluster toward the 1/sqrt(1 - x^2) edges.
 */
Grid chebyshev_grid(std::size_t N);

/// Trapezoid weights on arbitrary ascending points.
Grid trapezoid_grid(std::vector<double> x);

struct DosCurve {
    std::vector<double> energies;
    std::vector<double> values;
    std::vector<double> weights;
    std::size_t M = 0;
    std::string kernel;
    Provenance provenance = Provenance::ED;
    std::optional<RescaleParams> rescale;
    /// Qubit count of the source model, 0 when unknown.
    std::size_t n_qubits = 0;

    /// b x + a for each grid point; requires rescale.
    [[nodiscard]] std::vector<double> physical_energies() const;
    /// sum_j w_j g_j.
    [[nodiscard]] double integral() const;
};

/**
 * g(x) = (g_0 mu_0 + 2 sum_{m>=1} g_m mu_m T_m(x)) / (pi sqrt(1 - x^2)).
 * Uses moments 0..kernel.size()-1.
 */
DosCurve kpm_reconstruct(const MomentSet &moments,
                         std::span<const double> kernel, const Grid &grid,
                         std::string kernel_label = "jackson");

/// Normalized histogram over [-1, 1] placed at bin centers.
DosCurve dos_histogram_from_ed(std::span<const double> rescaled_eigenvalues,
                               std::size_t n_bins);

enum class EnergyUnits : std::uint8_t { Rescaled, Physical };

struct ThermoOptions {
    EnergyUnits units = EnergyUnits::Rescaled;
    /// Needed in physical mode: a, b and the qubit count (Z carries 2^L).
    std::optional<RescaleParams> rescale;
    std::size_t n_qubits = 0;
    /// Finite-difference step is fd_scale * max(1, |beta|).
    double fd_scale = 1e-4;
};

/**
 * Rescaled: Z = sum_j w_j e^{-beta x_j} g_j.
 * Physical: Z = 2^L sum_j w_j e^{-beta (b x_j + a)} g_j.
 * Negative values of g are clipped to zero; the count of clipped points is
 * returned through `clipped` when given.
 */
double partition_function(const DosCurve &dos, double beta,
                          const ThermoOptions &opts = {},
                          std::size_t *clipped = nullptr);

struct ThermoRow {
    double beta = 0.0;
    double Z = 0.0;
    double F = 0.0;
    double E = 0.0;
    double S = 0.0;
};

struct ThermoTable {
    std::vector<ThermoRow> rows;
    std::size_t clipped_points = 0;
    /// E non-increasing along the (ascending) beta grid.
    bool energy_monotone = true;
};

/**
 * E = -d ln Z / d beta by centered differences, F = -ln Z / beta,
 * S = beta (E - F). At beta = 0: F = E(0) in rescaled mode (the limit of
 * -ln Z / beta with Z(0) = 1), F = -inf in physical mode, and S = ln Z(0),
 * i.e. 0 rescaled and L ln 2 physical.
 */
ThermoTable thermodynamics(const DosCurve &dos, std::span<const double> betas,
                           const ThermoOptions &opts = {});

} // namespace kpmdos
