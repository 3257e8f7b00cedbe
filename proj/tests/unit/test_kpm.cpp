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
#include <algorithm>
#include <cmath>
#include <numbers>

#include <catch_amalgamated.hpp>

#include "kpmdos/errors.hpp"
#include "kpmdos/kpm.hpp"
#include "kpmdos/oracle.hpp"
#include "test_support.hpp"

using namespace kpmdos;
using namespace kpmdos::test;
using Catch::Approx;

namespace {

const Couplings kReference{1.0, 1.0 / 3.0, 0.5, 0.5};

MomentSet delta_moments(double x0, std::size_t M) {
    const std::vector<double> eig{x0};
    return moments_by_ed(eig, M);
}

} // namespace

TEST_CASE("Chebyshev polynomials", "[kpm][chebyshev]") {
    REQUIRE(chebyshev_T(0, 0.37) == 1.0);
    REQUIRE(chebyshev_T(1, 0.37) == 0.37);
    REQUIRE(chebyshev_T(2, 0.5) == Approx(-0.5));
    for (std::size_t m = 0; m <= 200; m += 7) {
        REQUIRE(chebyshev_T(m, 1.0) == Approx(1.0));
    }
    for (std::size_t m = 0; m <= 200; ++m) {
        for (int k = 0; k <= 100; k += 3) {
            const double x = -1.0 + k / 50.0;
            REQUIRE(std::abs(chebyshev_T(m, x) -
                             std::cos(static_cast<double>(m) * std::acos(x))) <
                    1e-10);
        }
    }
    REQUIRE_THROWS_AS(chebyshev_T(2, 1.5), DomainError);
}

TEST_CASE("Moments from a spectrum", "[kpm][moments]") {
    SECTION("Single eigenvalue at zero") {
        const auto m = delta_moments(0.0, 8);
        const std::vector<double> expected{1, 0, -1, 0, 1, 0, -1, 0, 1};
        for (std::size_t n = 0; n < expected.size(); ++n) {
            REQUIRE(m.values[n] == Approx(expected[n]).margin(1e-15));
        }
        REQUIRE(m.provenance == Provenance::ED);
    }
    SECTION("Symmetric spectrum has vanishing odd moments") {
        const std::vector<double> eig{-0.7, -0.2, 0.2, 0.7};
        const auto m = moments_by_ed(eig, 15);
        for (std::size_t n = 1; n <= 15; n += 2) {
            REQUIRE(m.values[n] == Approx(0.0).margin(1e-15));
        }
    }
    SECTION("Reference model at L=8: odd moments follow the spectrum symmetry") {
        const auto r = rescale(build_xyz_staggered(8, kReference), 0.01,
                               BoundsMethod::Exact);
        const auto eig = exact_diagonalize(r.h_tilde).eigenvalues;
        bool symmetric = true;
        for (std::size_t i = 0; i < eig.size(); ++i) {
            symmetric = symmetric &&
                        std::abs(eig[i] + eig[eig.size() - 1 - i]) < 1e-12;
        }
        const auto m = moments_by_ed(eig, 11);
        double odd = 0.0;
        for (std::size_t n = 1; n <= 11; n += 2) {
            odd = std::max(odd, std::abs(m.values[n]));
        }
        REQUIRE((odd < 1e-12) == symmetric);
    }
    SECTION("Out-of-window spectrum is rejected") {
        const std::vector<double> eig{0.5, 1.2};
        REQUIRE_THROWS_AS(moments_by_ed(eig, 3), DomainError);
        REQUIRE_THROWS_AS(moments_by_ed(std::vector<double>{}, 3),
                          DomainError);
    }
    SECTION("Arc-cosine moments converge to the exact ones in K") {
        const std::vector<double> eig{-0.4, -0.1, 0.05, 0.3};
        const auto exact = moments_by_ed(eig, 8);
        double prev = 1e9;
        for (std::size_t K : {0, 2, 8, 40}) {
            const auto a = moments_by_arccos(eig, 8, K);
            double err = 0.0;
            for (std::size_t n = 0; n <= 8; ++n) {
                err = std::max(err, std::abs(a.values[n] - exact.values[n]));
            }
            REQUIRE(err <= prev + 1e-15);
            prev = err;
        }
        REQUIRE(prev < 1e-10);
    }
}

TEST_CASE("Recursion moments", "[kpm][recursion]") {
    const std::size_t L = 8;
    const auto r = rescale(build_xyz_staggered(L, kReference), 0.01,
                           BoundsMethod::Exact);

    SECTION("Single state against the dense spectral decomposition") {
        StateVector s(L, random_amplitudes(L, 31));
        const auto m = moments_by_recursion(r.h_tilde, s, 50);
        REQUIRE(m.values[0] == Approx(1.0).margin(1e-14));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            kron_hamiltonian(r.h_tilde));
        const Eigen::VectorXcd c = es.eigenvectors().adjoint() * to_eigen(s);
        for (std::size_t n = 0; n <= 50; ++n) {
            double ref = 0.0;
            for (Eigen::Index k = 0; k < c.size(); ++k) {
                ref += std::norm(c(k)) *
                       std::cos(static_cast<double>(n) *
                                std::acos(es.eigenvalues()(k)));
            }
            REQUIRE(m.values[n] == Approx(ref).margin(1e-9));
        }
    }
    SECTION("Replica average matches ED moments") {
        const std::size_t R = 64;
        const auto rec = moments_by_recursion(
            r.h_tilde, RandomCircuitSpec{L, Scheme::Par, 10, 1, 2, 0}, R, 20);
        const auto ed =
            moments_by_ed(exact_diagonalize(r.h_tilde).eigenvalues, 20);
        const double envelope = 3.0 / std::sqrt(R * std::ldexp(1.0, L));
        for (std::size_t n = 0; n <= 20; ++n) {
            REQUIRE(std::abs(rec.values[n] - ed.values[n]) < envelope);
            REQUIRE(std::abs(rec.values[n]) <= 1 + 3 * rec.std_errors[n]);
        }
        REQUIRE(rec.replicas == R);
        REQUIRE(rec.provenance == Provenance::Recursion);
    }
    SECTION("Unscaled operator is rejected") {
        REQUIRE_THROWS_AS(moments_by_recursion(build_xyz_staggered(4, kReference),
                                               StateVector(4), 5),
                          DomainError);
    }
}

TEST_CASE("Jackson kernel", "[kpm][kernel]") {
    for (std::size_t M : {0, 1, 5, 25, 100}) {
        const auto g = jackson_kernel(M);
        REQUIRE(g.size() == M + 1);
        REQUIRE(g[0] == Approx(1.0));
        for (std::size_t m = 1; m <= M; ++m) {
            REQUIRE(g[m] > 0.0);
            REQUIRE(g[m] < g[m - 1]);
        }
    }
    REQUIRE(jackson_kernel(1)[1] == Approx(0.5).margin(1e-15));
    // Pinned regression values.
    const auto g5 = jackson_kernel(5);
    REQUIRE(g5[1] == Approx(0.9009688679).margin(1e-9));
    REQUIRE(g5[5] == Approx(0.0537871712).margin(1e-9));
    REQUIRE(make_kernel(KernelKind::Dirichlet, 4) ==
            std::vector<double>(5, 1.0));
    REQUIRE(parse_kernel("jackson") == KernelKind::Jackson);
    REQUIRE_THROWS_AS(parse_kernel("lorentz"), DomainError);
}

TEST_CASE("KPM reconstruction", "[kpm][reconstruct]") {
    const Grid grid = chebyshev_grid(2048);

    SECTION("Grid layout") {
        REQUIRE(std::is_sorted(grid.x.begin(), grid.x.end()));
        REQUIRE(grid.x.front() > -1.0);
        REQUIRE(grid.x.back() < 1.0);
    }
    SECTION("Unit moment gives the arcsine density") {
        MomentSet m;
        m.values.assign(11, 0.0);
        m.values[0] = 1.0;
        const auto d = kpm_reconstruct(m, jackson_kernel(10), grid);
        for (std::size_t j = 0; j < grid.x.size(); j += 97) {
            const double x = grid.x[j];
            REQUIRE(d.values[j] ==
                    Approx(1.0 / (std::numbers::pi * std::sqrt(1 - x * x))));
        }
        REQUIRE(d.integral() == Approx(1.0).margin(1e-6));
    }
    SECTION("Delta spectrum peaks at its eigenvalue") {
        const auto d = kpm_reconstruct(delta_moments(0.3, 100),
                                       jackson_kernel(100), grid);
        const auto it = std::max_element(d.values.begin(), d.values.end());
        const double argmax = grid.x[static_cast<std::size_t>(
            std::distance(d.values.begin(), it))];
        REQUIRE(std::abs(argmax - 0.3) < 0.01);
        REQUIRE(d.integral() == Approx(1.0).margin(1e-3));
    }
    SECTION("Jackson reconstruction of a point spectrum is nonnegative") {
        const std::vector<double> eig{-0.8, -0.35, 0.0, 0.1, 0.62};
        for (std::size_t M : {8, 25, 64}) {
            const auto d = kpm_reconstruct(moments_by_ed(eig, M),
                                           jackson_kernel(M), grid);
            REQUIRE(*std::min_element(d.values.begin(), d.values.end()) >
                    -1e-9);
        }
    }
    SECTION("Too few moments") {
        MomentSet m;
        m.values = {1.0, 0.0};
        REQUIRE_THROWS_AS(kpm_reconstruct(m, jackson_kernel(5), grid),
                          DomainError);
    }
}

TEST_CASE("ED histogram", "[kpm][histogram]") {
    SECTION("Single eigenvalue") {
        const std::vector<double> eig{0.31};
        const auto h = dos_histogram_from_ed(eig, 20);
        std::size_t nonzero = 0;
        for (double v : h.values) {
            nonzero += v > 0 ? 1 : 0;
        }
        REQUIRE(nonzero == 1);
        REQUIRE(h.integral() == Approx(1.0));
    }
    SECTION("Reference model at L=10 against KPM with M=50") {
        const auto r = rescale(build_xyz_staggered(10, kReference), 0.01,
                               BoundsMethod::Exact);
        const auto eig = exact_diagonalize(r.h_tilde).eigenvalues;
        const auto hist = dos_histogram_from_ed(eig, 25);
        REQUIRE(hist.integral() == Approx(1.0));
        const auto kpm = kpm_reconstruct(moments_by_ed(eig, 50),
                                         jackson_kernel(50), chebyshev_grid(2048));
        REQUIRE(kpm.integral() == Approx(1.0).margin(1e-3));
        REQUIRE(dos_compare(hist, kpm).l1 < 0.08);
    }
}

TEST_CASE("Partition function and thermodynamics", "[kpm][thermo]") {
    const Grid grid = chebyshev_grid(2048);
    MomentSet unit;
    unit.values.assign(2, 0.0);
    unit.values[0] = 1.0;
    const auto arcsine = kpm_reconstruct(unit, jackson_kernel(1), grid);

    SECTION("Arcsine density") {
        REQUIRE(partition_function(arcsine, 0.0) == Approx(1.0).margin(1e-6));
        REQUIRE(partition_function(arcsine, 1.0) ==
                Approx(std::cyl_bessel_i(0.0, 1.0)).margin(1e-4));
        REQUIRE(std::abs(partition_function(arcsine, 1.0) - 1.26607) < 1e-4);
        REQUIRE(partition_function(arcsine, 2.5) ==
                Approx(partition_function(arcsine, -2.5)).epsilon(1e-12));
    }
    SECTION("Thermodynamic table in rescaled units") {
        const std::vector<double> eig{-0.6, -0.1, 0.2, 0.45};
        const auto m = moments_by_ed(eig, 40);
        const auto d = kpm_reconstruct(m, jackson_kernel(40), grid);
        const std::vector<double> betas{0.0, 0.5, 1.0, 2.0, 5.0};
        const auto t = thermodynamics(d, betas);
        REQUIRE(t.rows.size() == betas.size());
        REQUIRE(t.rows[0].Z == Approx(1.0).margin(1e-6));
        // The curve carries the damped first moment g_1 mu_1.
        REQUIRE(t.rows[0].E ==
                Approx(jackson_kernel(40)[1] * m.values[1]).margin(1e-8));
        REQUIRE(t.rows[0].S == Approx(0.0).margin(1e-6));
        REQUIRE(t.energy_monotone);
        for (const auto &row : t.rows) {
            if (row.beta > 0) {
                REQUIRE(row.F == Approx(-std::log(row.Z) / row.beta));
                REQUIRE(row.S == Approx(row.beta * (row.E - row.F)));
            }
        }
    }
    SECTION("Symmetric density has zero mean energy") {
        const std::vector<double> eig{-0.5, 0.5};
        const auto d = kpm_reconstruct(moments_by_ed(eig, 30),
                                       jackson_kernel(30), grid);
        const std::vector<double> betas{0.0};
        REQUIRE(thermodynamics(d, betas).rows[0].E ==
                Approx(0.0).margin(1e-8));
    }
    SECTION("Physical units carry 2^L and the L ln 2 entropy offset") {
        MomentSet m = unit;
        m.rescale = RescaleParams{0.5, 3.0, 0.01, 0.0};
        const auto d = kpm_reconstruct(m, jackson_kernel(1), grid);
        ThermoOptions opts;
        opts.units = EnergyUnits::Physical;
        opts.n_qubits = 6;
        REQUIRE(partition_function(d, 0.0, opts) == Approx(64.0));
        // Z(beta) = 2^L e^{-beta a} I_0(beta b) for the arcsine density.
        REQUIRE(partition_function(d, 0.4, opts) ==
                Approx(64.0 * std::exp(-0.2) * std::cyl_bessel_i(0.0, 1.2))
                    .epsilon(1e-6));
        const std::vector<double> betas{0.0, 0.4};
        const auto t = thermodynamics(d, betas, opts);
        REQUIRE(t.rows[0].S == Approx(6 * std::numbers::ln2));
        REQUIRE(std::isinf(t.rows[0].F));
        REQUIRE(t.rows[0].E == Approx(0.5).margin(1e-6));
        opts.n_qubits = 0;
        REQUIRE_THROWS_AS(partition_function(d, 1.0, opts), DomainError);
    }
    SECTION("Negative values are clipped and counted") {
        DosCurve d = arcsine;
        d.values[10] = -0.5;
        d.values[20] = -0.1;
        std::size_t clipped = 0;
        partition_function(d, 0.3, {}, &clipped);
        REQUIRE(clipped == 2);
        const std::vector<double> betas{0.0};
        REQUIRE(thermodynamics(d, betas).clipped_points == 2);
    }
}

TEST_CASE("MomentSet helpers", "[kpm][moments]") {
    MomentSet m;
    m.values = {1.0, 0.01, 0.5, -0.02};
    m.std_errors = {0.0, 0.016, 0.016, 0.016};
    REQUIRE_FALSE(m.zero_consistent(0));
    REQUIRE(m.zero_consistent(1));
    REQUIRE_FALSE(m.zero_consistent(2));
    REQUIRE(m.zero_consistent(3));
    const auto t = m.truncated(1);
    REQUIRE(t.values.size() == 2);
    REQUIRE(t.std_errors.size() == 2);
    REQUIRE(parse_provenance(provenance_name(Provenance::CircuitShots)) ==
            Provenance::CircuitShots);
    REQUIRE_THROWS_AS(parse_provenance("LANCZOS"), ParseError);
}
