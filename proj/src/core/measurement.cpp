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

#include "kpmdos/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kpmdos/errors.hpp"
#include "kpmdos/rng.hpp"

namespace kpmdos {

namespace {

void check_qubit(const StateVector &state, std::size_t q) {
    if (q >= state.n_qubits()) {
        throw DomainError("qubit " + std::to_string(q) + " out of range");
    }
}

} // namespace

XYExpectation ancilla_xy_expectation(const StateVector &state,
                                     std::size_t ancilla) {
    check_qubit(state, ancilla);
    const auto amps = state.amplitudes();
    const std::size_t bit = std::size_t{1} << ancilla;
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) == 0) {
            acc += std::conj(amps[i]) * amps[i | bit];
        }
    }
    return {2.0 * acc.real(), 2.0 * acc.imag()};
}

double ancilla_z_expectation(const StateVector &state, std::size_t ancilla) {
    check_qubit(state, ancilla);
    const auto amps = state.amplitudes();
    const std::size_t bit = std::size_t{1} << ancilla;
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += (i & bit) ? -std::norm(amps[i]) : std::norm(amps[i]);
    }
    return acc;
}

ShotCounts sample_pm1(double expectation, std::uint64_t shots,
                      std::uint64_t seed, std::uint64_t stream) {
    if (shots == 0) {
        throw DomainError("shots must be at least 1");
    }
    if (!(std::abs(expectation) <= 1.0 + 1e-12)) {
        throw DomainError("expectation value outside [-1, 1]");
    }
    const double p_plus = std::clamp((1.0 + expectation) / 2.0, 0.0, 1.0);
    Philox rng(seed, stream);
    ShotCounts counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        if (rng.uniform() < p_plus) {
            ++counts.plus;
        }
    }
    counts.minus = shots - counts.plus;
    return counts;
}

ShotCounts sample_ancilla(const StateVector &state, std::size_t ancilla,
                          PauliBasis basis, std::uint64_t shots,
                          std::uint64_t seed, std::uint64_t stream) {
    const auto xy = ancilla_xy_expectation(state, ancilla);
    return sample_pm1(basis == PauliBasis::X ? xy.x : xy.y, shots, seed,
                      stream);
}

Eigen::MatrixXcd reduced_density_matrix(const StateVector &state,
                                        std::vector<std::size_t> keep) {
    const std::size_t n = state.n_qubits();
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.empty() || keep.size() >= n) {
        throw DomainError("keep set must be a nonempty strict subset of the "
                          "qubits");
    }
    for (std::size_t q : keep) {
        check_qubit(state, q);
    }
    std::vector<std::size_t> env;
    for (std::size_t q = 0; q < n; ++q) {
        if (!std::binary_search(keep.begin(), keep.end(), q)) {
            env.push_back(q);
        }
    }
    const std::size_t dk = std::size_t{1} << keep.size();
    const std::size_t de = std::size_t{1} << env.size();
    Eigen::MatrixXcd psi(dk, de);
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::size_t ki = 0;
        std::size_t ei = 0;
        for (std::size_t b = 0; b < keep.size(); ++b) {
            ki |= ((i >> keep[b]) & 1U) << b;
        }
        for (std::size_t b = 0; b < env.size(); ++b) {
            ei |= ((i >> env[b]) & 1U) << b;
        }
        psi(static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(ei)) =
            amps[i];
    }
    return psi * psi.adjoint();
}

double von_neumann_entropy(const Eigen::MatrixXcd &rho) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
        throw DomainError("density matrix must be square and nonempty");
    }
    const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-10) {
        throw DomainError("density matrix is not Hermitian (max deviation " +
                          std::to_string(asym) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (double l : solver.eigenvalues()) {
        if (l > 0.0) {
            s -= l * std::log(l);
        }
    }
    return std::max(s, 0.0);
}

double half_chain_entropy(const StateVector &state) {
    const std::size_t n = state.n_qubits();
    if (n < 2) {
        throw DomainError("half-chain entropy needs at least two qubits");
    }
    std::vector<std::size_t> keep(n / 2);
    for (std::size_t q = 0; q < keep.size(); ++q) {
        keep[q] = q;
    }
    return von_neumann_entropy(reduced_density_matrix(state, keep));
}

} // namespace kpmdos
