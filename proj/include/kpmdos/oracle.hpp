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
 * Exact references: dense diagonalization (LAPACK), dense matrix functions,
 * the classical product-formula path and comparison tables.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kpmdos/kpm.hpp"
#include "kpmdos/pauli.hpp"
#include "kpmdos/random_state.hpp"

namespace kpmdos {

inline constexpr std::size_t kMaxDenseFunctionQubits = 10;

struct SpectrumRecord {
    std::size_t n_qubits = 0;
    /// Ascending eigenvalues of the full operator.
    std::vector<double> eigenvalues;
    /// (E - a)/b when rescale parameters are attached.
    std::vector<double> rescaled;
    std::optional<Couplings> couplings;
    std::optional<RescaleParams> params;

    /// Mean and standard deviation of the rescaled spectrum.
    [[nodiscard]] double rescaled_mean() const;
    [[nodiscard]] double rescaled_stddev() const;
};

/// Full spectrum by dense Hermitian eigensolve. L above `cap` throws
/// ResourceError.
SpectrumRecord exact_diagonalize(const HamiltonianSpec &h,
                                 std::size_t cap = kMaxExactQubits);

/// Attaches params and fills the rescaled copy.
void attach_rescale(SpectrumRecord &rec, const RescaleParams &params);

/// Dense matrix of the full operator (row index = output basis state).
Eigen::MatrixXcd dense_matrix(const HamiltonianSpec &h,
                              std::size_t cap = kMaxDenseFunctionQubits);

enum class MatrixFunctionKind { CosN, SinN, ChebyshevT, ExpIt, ArccosSeries };

struct MatrixFunction {
    MatrixFunctionKind kind = MatrixFunctionKind::ChebyshevT;
    /// n for CosN/SinN, m for ChebyshevT, t for ExpIt.
    double param = 0.0;
    /// Order K for ArccosSeries.
    std::size_t K = 0;
};

/// f(H) by spectral decomposition of the dense full operator.
Eigen::MatrixXcd dense_matrix_function(const HamiltonianSpec &h,
                                       const MatrixFunction &f,
                                       std::size_t cap = kMaxDenseFunctionQubits);

struct MomentComparisonRow {
    std::size_t n = 0;
    double a = 0.0;
    double b = 0.0;
    double diff = 0.0;
    double combined_std_error = 0.0;
};

struct MomentComparison {
    std::vector<MomentComparisonRow> rows;
    double max_abs = 0.0;
    double rms = 0.0;

    [[nodiscard]] std::string to_csv() const;
};

MomentComparison compare_moment_sets(const MomentSet &a, const MomentSet &b);

struct DosComparison {
    double l1 = 0.0;
    double linf = 0.0;
    std::vector<double> energies;
    std::vector<double> a;
    std::vector<double> b;

    [[nodiscard]] std::string to_csv() const;
};

/**
 * Resamples the coarser curve by linear interpolation onto the finer grid
 * (end values held outside its range) and integrates |a - b| with the finer
 * grid's weights.
 */
DosComparison dos_compare(const DosCurve &a, const DosCurve &b);

/// exp(i t (xx XX + yy YY + zz ZZ)) as a 4x4 matrix, by eigendecomposition.
Eigen::Matrix4cd bond_exponential(double xx, double yy, double zz, double t);

/**
 * Classical product-formula moments on the statevector: per step the dense
 * bond exponentials in the circuit's order, then the identity phase,
 * averaged over replicas 0..R-1 of `random`.
 */
MomentSet st_matrix_moments(const HamiltonianSpec &h_tilde,
                            const RandomCircuitSpec &random, std::size_t R,
                            std::size_t M, std::size_t steps = 1);

/**
 * Exact trace tr[exp(i n H_odd) exp(i n H_even) e^{i n beta_id}] / 2^L for
 * one product-formula step, n = 0..M, from the Kronecker eigenbases of the
 * two bond groups. Needs a ring with even L >= 4 and L <= 12.
 */
MomentSet exact_st_trace_moments(const HamiltonianSpec &h_tilde,
                                 std::size_t M);

/// `# key = value` header lines, then `index,eigenvalue,rescaled`.
std::string spectrum_to_csv(const SpectrumRecord &rec);

} // namespace kpmdos
