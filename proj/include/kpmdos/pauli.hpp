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
 * Weighted Pauli-string Hamiltonians, the staggered XYZ ring builder,
 * rescaling into the Chebyshev window and the arc-cosine helpers.
 *
 * The operator represented by a HamiltonianSpec is the sum of its terms plus,
 * for rescaled specs, beta_id times the identity. Every routine that applies
 * or diagonalizes a spec uses this full operator.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kpmdos/state_vector.hpp"

namespace kpmdos {

enum class Pauli : std::uint8_t { I, X, Y, Z };

char pauli_letter(Pauli p);

struct PauliTerm {
    double coefficient = 0.0;
    /// Non-identity letters, sorted by site, each site at most once.
    std::vector<std::pair<std::size_t, Pauli>> ops;

    [[nodiscard]] bool is_identity() const { return ops.empty(); }
    [[nodiscard]] Pauli at(std::size_t site) const;

    /// Sorts by site and rejects repeated sites or explicit I letters.
    void canonicalize();

    friend bool operator==(const PauliTerm &, const PauliTerm &) = default;
};

struct Couplings {
    double jx = 1.0;
    double jy = 1.0 / 3.0;
    double jz = 0.5;
    double lambda = 0.5;
};

struct RescaleParams {
    double a = 0.0;
    double b = 1.0;
    double epsilon = 0.01;
    double beta_id = 0.0;
};

struct HamiltonianSpec {
    std::size_t n_qubits = 0;
    std::vector<PauliTerm> terms;
    std::optional<Couplings> couplings;
    bool periodic = true;
    std::optional<RescaleParams> rescale;

    /// beta_id for rescaled specs, 0 otherwise.
    [[nodiscard]] double identity_shift() const {
        return rescale ? rescale->beta_id : 0.0;
    }
    /// True when every term has an even number of Y letters.
    [[nodiscard]] bool is_real() const;
};

/// Merges identical strings (summing coefficients) and drops exact zeros.
void simplify(HamiltonianSpec &h);

/**
 * Periodic XYZ ring with staggered ZZ coupling: bond (i, i+1 mod L) carries
 * Jx XX + Jy YY + (Jz + (-1)^i Lambda) ZZ. Zero coefficients are omitted
 * and duplicate strings (the L = 2 ring) are merged.
 */
HamiltonianSpec build_xyz_staggered(std::size_t L, const Couplings &c);

/// out = H in (full operator, identity shift included).
void apply_hamiltonian(const HamiltonianSpec &h, std::span<const cplx> in,
                       std::span<cplx> out);
StateVector apply_hamiltonian(const HamiltonianSpec &h,
                              const StateVector &state);

enum class BoundsMethod : std::uint8_t { Auto, Exact, CoefficientNorm };

struct SpectralBounds {
    double emin = 0.0;
    double emax = 0.0;
};

inline constexpr std::size_t kMaxExactQubits = 14;

/// Auto picks Exact for L <= 14 and CoefficientNorm above.
SpectralBounds spectral_bounds(const HamiltonianSpec &h,
                               BoundsMethod method = BoundsMethod::Auto);

struct RescaledHamiltonian {
    HamiltonianSpec h_tilde;
    RescaleParams params;
};

/// (H - a)/b with a, b from the bounds; identity parts move into beta_id.
RescaledHamiltonian rescale(const HamiltonianSpec &h,
                            const SpectralBounds &bounds,
                            double epsilon = 0.01);
RescaledHamiltonian rescale(const HamiltonianSpec &h, double epsilon = 0.01,
                            BoundsMethod method = BoundsMethod::Auto);

/// Taylor coefficients of arcsin: c_k = (2k)! / (4^k (k!)^2 (2k+1)).
std::vector<double> arccos_coefficients(std::size_t K);

/// sum_k c_k x^(2k+1), i.e. the order-K approximation of pi/2 - arccos(x).
double arccos_series(double x, std::size_t K);

/**
 * Coefficients of H + H^3/6 restricted to the strings already present in
 * the rescaled staggered ring with Jz + Lambda = Jx and Jz = Lambda.
 * `jx`, `jy` are the rescaled couplings and `beta_id` the identity
 * coefficient of the rescaled operator.
 */
struct UpdatedSTParameters {
    double jx_even = 0.0;
    double jx_odd = 0.0;
    double jy_even = 0.0;
    double jy_odd = 0.0;
    double jz_even = 0.0;
    double id_coeff = 0.0;
};

UpdatedSTParameters updated_st_parameters(double jx, double jy, double beta_id,
                                          std::size_t L);

/// Builds the K = 1 spec with the updated couplings from a rescaled ring.
HamiltonianSpec updated_st_hamiltonian(const HamiltonianSpec &h_tilde);

struct ErrorEstimates {
    double eps_odd = 0.0;
    double eps_even = 0.0;
};

/// Gaussian-DOS error estimates of the K = 0 arc-cosine approximation.
ErrorEstimates error_estimates(std::size_t m, double e_bar, double delta_e);

/// Budget for moment n: eps_odd(m) for n = 2m+1, eps_even(m) for n = 2m.
double moment_error_budget(std::size_t n, double e_bar, double delta_e);

/// `coeff site:letter site:letter ...`, one term per line.
std::string terms_to_text(const HamiltonianSpec &h);
HamiltonianSpec parse_terms(std::string_view text, std::size_t n_qubits);

} // namespace kpmdos
