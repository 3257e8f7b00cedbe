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
#include <numbers>

#include <catch_amalgamated.hpp>

#include "kpmdos/errors.hpp"
#include "kpmdos/measurement.hpp"
#include "kpmdos/rng.hpp"
#include "test_support.hpp"

using namespace kpmdos;
using namespace kpmdos::test;
using Catch::Approx;

TEST_CASE("Philox known answers", "[rng]") {
    // Reference vector for Philox4x32-10 with zero key and zero counter.
    Philox g(0, 0);
    REQUIRE(g() == 0xe169c58d6627e8d5ULL);
    REQUIRE(g() == 0x9b00dbd8bc57ac4cULL);
}

TEST_CASE("Philox streams", "[rng]") {
    SECTION("Same address, same draws") {
        Philox a(42, 7);
        Philox b(42, 7);
        for (int i = 0; i < 100; ++i) {
            REQUIRE(a() == b());
        }
    }
    SECTION("Different stream, different draws") {
        Philox a(42, stream_id(StreamDomain::Replica, 0));
        Philox b(42, stream_id(StreamDomain::Replica, 1));
        int same = 0;
        for (int i = 0; i < 100; ++i) {
            same += a() == b() ? 1 : 0;
        }
        REQUIRE(same == 0);
    }
    SECTION("Stream ids are distinct across domains") {
        REQUIRE(stream_id(StreamDomain::Replica, 3) !=
                stream_id(StreamDomain::ShotBatch, 3, 0));
        REQUIRE(stream_id(StreamDomain::ShotBatch, 1, 2) !=
                stream_id(StreamDomain::ShotBatch, 2, 1));
    }
    SECTION("Uniform draws are in range with the right mean") {
        Philox g(9);
        double sum = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            const double u = g.uniform();
            REQUIRE(u >= 0.0);
            REQUIRE(u < 1.0);
            sum += u;
        }
        REQUIRE(sum / n == Approx(0.5).margin(0.005));
    }
    SECTION("below(n) covers every value") {
        Philox g(1);
        std::array<int, 3> hits{};
        for (int i = 0; i < 3000; ++i) {
            const auto v = g.below(3);
            REQUIRE(v < 3);
            ++hits[v];
        }
        for (int h : hits) {
            REQUIRE(h > 900);
        }
    }
}

TEST_CASE("Ancilla expectations", "[measurement]") {
    SECTION("|+> and |+i> on the top qubit") {
        StateVector s(3);
        s.apply(GateOp::h(2));
        auto e = ancilla_xy_expectation(s, 2);
        REQUIRE(e.x == Approx(1.0));
        REQUIRE(e.y == Approx(0.0).margin(1e-15));
        s.apply(GateOp::z(2, std::numbers::pi / 2));
        e = ancilla_xy_expectation(s, 2);
        REQUIRE(e.x == Approx(0.0).margin(1e-15));
        REQUIRE(e.y == Approx(1.0));
        REQUIRE(ancilla_z_expectation(s, 2) == Approx(0.0).margin(1e-15));
    }
    SECTION("Random state against dense Pauli strings") {
        StateVector s(4, random_amplitudes(4, 12));
        const auto v = to_eigen(s);
        for (std::size_t q = 0; q < 4; ++q) {
            const auto e = ancilla_xy_expectation(s, q);
            const double x = v.dot(pauli_string(4, {{q, 'X'}}) * v).real();
            const double y = v.dot(pauli_string(4, {{q, 'Y'}}) * v).real();
            const double z = v.dot(pauli_string(4, {{q, 'Z'}}) * v).real();
            REQUIRE(e.x == Approx(x).margin(1e-14));
            REQUIRE(e.y == Approx(y).margin(1e-14));
            REQUIRE(ancilla_z_expectation(s, q) == Approx(z).margin(1e-14));
        }
    }
}

TEST_CASE("Shot sampling", "[measurement]") {
    StateVector s(2, random_amplitudes(2, 3));
    const auto e = ancilla_xy_expectation(s, 1);

    SECTION("Deterministic for a fixed seed and stream") {
        const auto a = sample_ancilla(s, 1, PauliBasis::X, 1000, 5, 2);
        const auto b = sample_ancilla(s, 1, PauliBasis::X, 1000, 5, 2);
        REQUIRE(a.plus == b.plus);
        REQUIRE(a.plus + a.minus == 1000);
    }
    SECTION("Mean converges to the expectation") {
        const auto a = sample_ancilla(s, 1, PauliBasis::Y, 200000, 8);
        const double sigma = std::sqrt((1 - e.y * e.y) / 200000.0);
        REQUIRE(std::abs(a.mean() - e.y) < 5 * sigma);
    }
    SECTION("Eigenstates give a single outcome") {
        const auto a = sample_pm1(1.0, 500, 1);
        REQUIRE(a.minus == 0);
        const auto b = sample_pm1(-1.0, 500, 1);
        REQUIRE(b.plus == 0);
    }
    SECTION("Empirical variance matches the binomial law") {
        const double mu = 0.3;
        const int runs = 400;
        double s1 = 0.0;
        double s2 = 0.0;
        for (int r = 0; r < runs; ++r) {
            const double m =
                sample_pm1(mu, 1000, 77, stream_id(StreamDomain::User, r))
                    .mean();
            s1 += m;
            s2 += m * m;
        }
        const double var = s2 / runs - (s1 / runs) * (s1 / runs);
        const double expected = (1 - mu * mu) / 1000.0;
        REQUIRE(var == Approx(expected).epsilon(0.2));
    }
    SECTION("Invalid arguments") {
        REQUIRE_THROWS_AS(sample_pm1(1.5, 10, 0), DomainError);
        REQUIRE_THROWS_AS(sample_pm1(0.5, 0, 0), DomainError);
    }
}

TEST_CASE("Reduced density matrix and entropy", "[measurement][entropy]") {
    SECTION("Product state has zero entropy") {
        StateVector s(4);
        s.apply(GateOp::u1q(0, 0.7, 0.2));
        s.apply(GateOp::u1q(3, 1.3, -0.4));
        REQUIRE(half_chain_entropy(s) == Approx(0.0).margin(1e-10));
    }
    SECTION("Bell pairs across the cut give ln 2 each") {
        StateVector s(4);
        s.apply(GateOp::h(0));
        s.apply(GateOp::h(1));
        // CNOT-like entanglement built from native gates: ZZ(pi/2) between
        // |+> states yields a maximally entangled pair up to local phases.
        s.apply(GateOp::h(2));
        s.apply(GateOp::h(3));
        s.apply(GateOp::zz(0, 2, std::numbers::pi / 2));
        s.apply(GateOp::zz(1, 3, std::numbers::pi / 2));
        REQUIRE(half_chain_entropy(s) ==
                Approx(2 * std::log(2.0)).margin(1e-10));
    }
    SECTION("Partial trace matches the Kronecker oracle") {
        StateVector s(3, random_amplitudes(3, 19));
        const auto rho = reduced_density_matrix(s, {0, 2});
        REQUIRE(rho.trace().real() == Approx(1.0));
        // <P0 P2> from rho equals the full-space expectation.
        const auto v = to_eigen(s);
        Eigen::Matrix4cd xz = kron(pauli_matrix('Z'), pauli_matrix('X'));
        const double from_rho = (rho * xz).trace().real();
        const double full =
            v.dot(pauli_string(3, {{0, 'X'}, {2, 'Z'}}) * v).real();
        REQUIRE(from_rho == Approx(full).margin(1e-13));
    }
    SECTION("Invalid subsets") {
        StateVector s(3);
        REQUIRE_THROWS_AS(reduced_density_matrix(s, {}), DomainError);
        REQUIRE_THROWS_AS(reduced_density_matrix(s, {0, 1, 2}), DomainError);
        REQUIRE_THROWS_AS(reduced_density_matrix(s, {3}), DomainError);
    }
    SECTION("Non-Hermitian input is rejected") {
        Eigen::MatrixXcd m(2, 2);
        m << 0.5, 0.1, 0.0, 0.5;
        REQUIRE_THROWS_AS(von_neumann_entropy(m), DomainError);
    }
}
