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
#include <cmath>
#include <numeric>

#include <catch_amalgamated.hpp>

#include "kpmdos/errors.hpp"
#include "kpmdos/estimator.hpp"
#include "kpmdos/oracle.hpp"
#include "test_support.hpp"

using namespace kpmdos;
using namespace kpmdos::test;
using Catch::Approx;

namespace {

const Couplings kReference{1.0, 1.0 / 3.0, 0.5, 0.5};
const cd kI{0.0, 1.0};

HamiltonianSpec complex_spec() {
    HamiltonianSpec h = build_xyz_staggered(6, {0.7, -0.2, 0.9, 0.3});
    h.terms.push_back({0.35, {{1, Pauli::Y}}});
    h.terms.push_back({-0.6, {{0, Pauli::X}, {3, Pauli::Z}, {4, Pauli::Y}}});
    return h;
}

} // namespace

TEST_CASE("Dense matrix", "[oracle][dense]") {
    const auto h = complex_spec();
    REQUIRE_FALSE(h.is_real());
    const auto m = dense_matrix(h);
    REQUIRE((m - kron_hamiltonian(h)).cwiseAbs().maxCoeff() < 1e-14);
    REQUIRE((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE_THROWS_AS(dense_matrix(build_xyz_staggered(12, kReference)),
                      ResourceError);
}

TEST_CASE("Exact diagonalization", "[oracle][ed]") {
    SECTION("Real and complex specs against Eigen") {
        for (const auto &h :
             {build_xyz_staggered(8, kReference), complex_spec()}) {
            const auto rec = exact_diagonalize(h);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
                kron_hamiltonian(h), Eigen::EigenvaluesOnly);
            REQUIRE(rec.eigenvalues.size() == static_cast<std::size_t>(
                                                  es.eigenvalues().size()));
            for (std::size_t k = 0; k < rec.eigenvalues.size(); ++k) {
                REQUIRE(rec.eigenvalues[k] ==
                        Approx(es.eigenvalues()(static_cast<Eigen::Index>(k)))
                            .margin(1e-11));
            }
            REQUIRE(std::accumulate(rec.eigenvalues.begin(),
                                    rec.eigenvalues.end(), 0.0) ==
                    Approx(0.0).margin(1e-9));
        }
    }
    SECTION("Rescaled spectra") {
        const auto h = build_xyz_staggered(8, kReference);
        const auto r = rescale(h, 0.01, BoundsMethod::Exact);
        auto rec = exact_diagonalize(h);
        attach_rescale(rec, r.params);
        const auto direct = exact_diagonalize(r.h_tilde);
        for (std::size_t k = 0; k < rec.rescaled.size(); ++k) {
            REQUIRE(rec.rescaled[k] == Approx(direct.rescaled[k]).margin(1e-12));
        }
        REQUIRE(rec.rescaled.front() == Approx(-1 + 0.005).margin(1e-12));
        REQUIRE(rec.rescaled.back() == Approx(1 - 0.005).margin(1e-12));
        REQUIRE(rec.rescaled_stddev() > 0.0);
    }
    SECTION("Caps") {
        REQUIRE_THROWS_AS(exact_diagonalize(build_xyz_staggered(16, kReference)),
                          ResourceError);
        REQUIRE_THROWS_AS(exact_diagonalize(build_xyz_staggered(8, kReference), 6),
                          ResourceError);
    }
    SECTION("Spectrum CSV header") {
        const auto r = rescale(build_xyz_staggered(4, kReference), 0.01,
                               BoundsMethod::Exact);
        auto rec = exact_diagonalize(build_xyz_staggered(4, kReference));
        attach_rescale(rec, r.params);
        const auto csv = spectrum_to_csv(rec);
        REQUIRE(csv.starts_with("# L = 4\n"));
        REQUIRE(csv.find("index,eigenvalue,rescaled\n") != std::string::npos);
        REQUIRE(std::count(csv.begin(), csv.end(), '\n') ==
                static_cast<long>(1 + 4 + 4 + 1 + 16));
    }
}

TEST_CASE("Dense matrix functions", "[oracle][functions]") {
    const auto r = rescale(build_xyz_staggered(6, kReference), 0.01,
                           BoundsMethod::Exact);
    const auto m = kron_hamiltonian(r.h_tilde);
    const auto u =
        dense_matrix_function(r.h_tilde, {MatrixFunctionKind::ExpIt, 1.7, 0});
    REQUIRE((u - expm(kI * 1.7 * m)).cwiseAbs().maxCoeff() < 1e-10);
    const auto c = dense_matrix_function(r.h_tilde, {MatrixFunctionKind::CosN, 3.0, 0});
    const auto s = dense_matrix_function(r.h_tilde, {MatrixFunctionKind::SinN, 3.0, 0});
    const auto e3 = dense_matrix_function(r.h_tilde, {MatrixFunctionKind::ExpIt, 3.0, 0});
    REQUIRE((c + kI * s - e3).cwiseAbs().maxCoeff() < 1e-12);
    const auto t3 =
        dense_matrix_function(r.h_tilde, {MatrixFunctionKind::ChebyshevT, 3.0, 0});
    REQUIRE((t3 - (4.0 * m * m * m - 3.0 * m)).cwiseAbs().maxCoeff() < 1e-12);
    const auto a0 = dense_matrix_function(
        r.h_tilde, {MatrixFunctionKind::ArccosSeries, 0.0, 0});
    REQUIRE((a0 - m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Product-formula error decays as 1/steps", "[oracle][trotter]") {
    const auto r = rescale(build_xyz_staggered(6, kReference), 0.01,
                           BoundsMethod::Exact);
    const double n = 3.0;
    const auto exact =
        dense_matrix_function(r.h_tilde, {MatrixFunctionKind::ExpIt, n, 0});
    std::vector<double> log_steps;
    std::vector<double> errors;
    for (std::size_t steps : {4, 8, 16, 32, 64}) {
        const Circuit c = build_controlled_trotter(r.h_tilde, 3, steps);
        StateVector probe(7);
        Eigen::MatrixXcd block(64, 64);
        for (std::size_t col = 0; col < 64; ++col) {
            StateVector s = StateVector::basis(7, col | 64U);
            s.apply(c);
            for (std::size_t row = 0; row < 64; ++row) {
                block(static_cast<Eigen::Index>(row),
                      static_cast<Eigen::Index>(col)) = s[row | 64U];
            }
        }
        // The |1> branch carries half of the identity phase.
        block *= std::exp(kI * n * r.params.beta_id / 2.0);
        log_steps.push_back(std::log2(static_cast<double>(steps)));
        errors.push_back((block - exact).norm());
    }
    const double slope = log2_slope(log_steps, errors);
    REQUIRE(slope == Approx(-1.0).epsilon(0.2));
}

TEST_CASE("Bond exponential", "[oracle][bond]") {
    const auto u = bond_exponential(0.3, -0.7, 1.1, 0.9);
    const Eigen::MatrixXcd gen = 0.3 * kron(pauli_matrix('X'), pauli_matrix('X')) -
                                 0.7 * kron(pauli_matrix('Y'), pauli_matrix('Y')) +
                                 1.1 * kron(pauli_matrix('Z'), pauli_matrix('Z'));
    REQUIRE((Eigen::MatrixXcd(u) - expm(kI * 0.9 * gen)).cwiseAbs().maxCoeff() <
            1e-12);
}

TEST_CASE("Classical product-formula moments", "[oracle][st]") {
    for (std::size_t L : {4, 6, 8}) {
        const auto r = rescale(build_xyz_staggered(L, kReference), 0.01,
                               BoundsMethod::Exact);
        const auto st = exact_st_trace_moments(r.h_tilde, 10);
        // Dense trace of the one-step product formula.
        const auto dim = static_cast<Eigen::Index>(std::size_t{1} << L);
        for (std::size_t n = 0; n <= 10; ++n) {
            const Circuit c = build_controlled_trotter(r.h_tilde, n, 1);
            cd tr{0.0, 0.0};
            for (Eigen::Index col = 0; col < dim; ++col) {
                StateVector s = StateVector::basis(
                    L + 1, static_cast<std::size_t>(col) | (std::size_t{1} << L));
                s.apply(c);
                tr += s[static_cast<std::size_t>(col) | (std::size_t{1} << L)];
            }
            tr *= std::exp(kI * static_cast<double>(n) * r.params.beta_id / 2.0) /
                  static_cast<double>(dim);
            REQUIRE(st.values[n] ==
                    Approx(moment_postprocess(n, tr.real(), tr.imag()))
                        .margin(1e-10));
        }
    }
    SECTION("Replica path converges to the trace path") {
        const auto r = rescale(build_xyz_staggered(8, kReference), 0.01,
                               BoundsMethod::Exact);
        const auto exact = exact_st_trace_moments(r.h_tilde, 8);
        const std::size_t R = 32;
        const auto sampled =
            st_matrix_moments(r.h_tilde, {8, Scheme::Par, 10, 1, 0, 0}, R, 8);
        for (std::size_t n = 0; n <= 8; ++n) {
            REQUIRE(std::abs(sampled.values[n] - exact.values[n]) <
                    3.0 / std::sqrt(R * 256.0));
        }
    }
    SECTION("Limits") {
        const auto r = rescale(build_xyz_staggered(14, kReference), 0.01,
                               BoundsMethod::CoefficientNorm);
        REQUIRE_THROWS_AS(exact_st_trace_moments(r.h_tilde, 3), ResourceError);
        REQUIRE_THROWS_AS(exact_st_trace_moments(build_xyz_staggered(4, kReference), 3),
                          DomainError);
    }
}

TEST_CASE("Comparisons", "[oracle][compare]") {
    SECTION("Moment sets") {
        MomentSet a;
        MomentSet b;
        a.values = {1.0, 0.2, -0.3};
        b.values = {1.0, 0.1, -0.3};
        a.std_errors = {0.0, 0.03, 0.0};
        b.std_errors = {0.0, 0.04, 0.0};
        const auto c = compare_moment_sets(a, b);
        REQUIRE(c.max_abs == Approx(0.1));
        REQUIRE(c.rows[1].combined_std_error == Approx(0.05));
        REQUIRE(c.rms == Approx(0.1 / std::sqrt(3.0)));
        REQUIRE(c.to_csv().starts_with("n,a,b,diff,combined_std_error\n"));
        b.values.push_back(0.0);
        REQUIRE_THROWS_AS(compare_moment_sets(a, b), DomainError);
    }
    SECTION("DOS curves") {
        const Grid fine = chebyshev_grid(512);
        DosCurve a;
        a.energies = fine.x;
        a.weights = fine.w;
        for (double x : fine.x) {
            a.values.push_back(0.75 * (1 - x * x));
        }
        REQUIRE(dos_compare(a, a).l1 == 0.0);
        DosCurve b = a;
        for (auto &v : b.values) {
            v += 0.1;
        }
        REQUIRE(dos_compare(a, b).l1 == Approx(0.2).margin(1e-4));
        REQUIRE(dos_compare(a, b).linf == Approx(0.1));
        // Linear curves interpolate exactly from a coarse grid.
        DosCurve line;
        for (double x : a.energies) {
            line.values.push_back(0.5 + 0.2 * x);
        }
        line.energies = a.energies;
        line.weights = a.weights;
        const Grid g5 = trapezoid_grid({-1.0, -0.5, 0.0, 0.5, 1.0});
        DosCurve coarse;
        coarse.energies = g5.x;
        coarse.weights = g5.w;
        for (double x : g5.x) {
            coarse.values.push_back(0.5 + 0.2 * x);
        }
        const auto cmp = dos_compare(coarse, line);
        REQUIRE(cmp.energies.size() == fine.x.size());
        REQUIRE(cmp.l1 == Approx(0.0).margin(1e-12));
        a = line;
        REQUIRE(dos_compare(a, coarse).l1 == Approx(0.0).margin(1e-12));
        DosCurve far = coarse;
        far.energies = {2.0, 3.0, 4.0, 5.0, 6.0};
        REQUIRE_THROWS_AS(dos_compare(far, line), DomainError);
    }
}
