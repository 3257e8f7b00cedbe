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
#include <limits>

#include <catch_amalgamated.hpp>

#include "kpmdos/errors.hpp"
#include "kpmdos/io.hpp"

using namespace kpmdos;

namespace {

MomentSet sample_moments() {
    MomentSet m;
    m.values = {1.0, 0.1 / 3.0, -0.123456789012345678, 1e-300};
    m.std_errors = {0.0, 0.01, 0.02, 0.5};
    m.replica_scatter = {0.0, 0.011, 0.019, 0.4};
    m.provenance = Provenance::CircuitShots;
    m.replicas = 8;
    m.shots = 12345;
    m.rescale = RescaleParams{0.25, 7.5, 0.01, -1.0 / 30.0};
    m.metadata = {{"scheme", "par"}, {"L", "12"}};
    return m;
}

} // namespace

TEST_CASE("Number formatting", "[io]") {
    REQUIRE(format_number(0.1) == "0.10000000000000001");
    REQUIRE(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    REQUIRE(format_number(3.0) == "3");
}

TEST_CASE("Moment JSON round trip", "[io][moments]") {
    const MomentSet m = sample_moments();
    const MomentSet back = moments_from_json(moments_to_json(m));
    REQUIRE(back.values == m.values);
    REQUIRE(back.std_errors == m.std_errors);
    REQUIRE(back.replica_scatter == m.replica_scatter);
    REQUIRE(back.provenance == m.provenance);
    REQUIRE(back.replicas == 8);
    REQUIRE(back.shots == 12345);
    REQUIRE(back.rescale.has_value());
    REQUIRE(back.rescale->beta_id == m.rescale->beta_id);
    REQUIRE(back.metadata == m.metadata);
}

TEST_CASE("Moment CSV round trip", "[io][moments]") {
    const MomentSet m = sample_moments();
    const std::string csv = moments_to_csv(m);
    REQUIRE(csv.starts_with("n,value,std_error,replica_scatter,zero_consistent\n"));
    // 1e-300 with error 0.5 is consistent with zero; the others are not.
    REQUIRE(csv.find("\n3,1e-300,0.5,0.40000000000000002,1\n") !=
            std::string::npos);
    const MomentSet back = moments_from_csv(csv);
    REQUIRE(back.values == m.values);
    REQUIRE(back.std_errors == m.std_errors);
    REQUIRE(back.provenance == Provenance::File);
    SECTION("Comments, CRLF and two-column files") {
        const auto t = moments_from_csv("# header\r\n0,1\r\n1,0.5\r\n");
        REQUIRE(t.values == std::vector<double>{1.0, 0.5});
        REQUIRE(t.std_errors == std::vector<double>{0.0, 0.0});
    }
}

TEST_CASE("Malformed moment files", "[io][errors]") {
    REQUIRE_THROWS_AS(moments_from_csv(""), ParseError);
    REQUIRE_THROWS_AS(moments_from_csv("0,1\n2,0.5\n"), ParseError);
    REQUIRE_THROWS_AS(moments_from_csv("0,abc\n"), ParseError);
    REQUIRE_THROWS_AS(moments_from_csv("0\n"), ParseError);
    REQUIRE_THROWS_AS(moments_from_json("{"), ParseError);
    REQUIRE_THROWS_AS(moments_from_json(R"({"values": [1.0]})"), ParseError);
    REQUIRE_THROWS_AS(
        moments_from_json(R"({"provenance": "ED", "values": []})"), ParseError);
}

TEST_CASE("DOS files", "[io][dos]") {
    DosCurve d;
    d.energies = {-0.5, 0.0, 0.5};
    d.values = {0.25, 1.0 / 3.0, 0.25};
    d.weights = {0.5, 1.0, 0.5};
    d.M = 25;
    d.kernel = "jackson";
    d.provenance = Provenance::CircuitShots;
    d.rescale = RescaleParams{1.0, 2.0, 0.01, 0.0};
    const DosCurve back = dos_from_json(dos_to_json(d));
    REQUIRE(back.energies == d.energies);
    REQUIRE(back.values == d.values);
    REQUIRE(back.weights == d.weights);
    REQUIRE(back.M == 25);
    REQUIRE(back.kernel == "jackson");
    REQUIRE(back.rescale->b == 2.0);

    const std::string csv = dos_to_csv(d);
    REQUIRE(csv.starts_with("x,energy,g,weight\n-0.5,0,0.25,0.5\n"));
    d.rescale.reset();
    REQUIRE(dos_to_csv(d).find("\n0,,") != std::string::npos);

    REQUIRE_THROWS_AS(
        dos_from_json(R"({"M": 1, "kernel": "none", "provenance": "ED",
                          "x": [0, 1], "g": [1], "weights": [1, 1]})"),
        ParseError);
    REQUIRE_THROWS_AS(dos_from_json("[]"), ParseError);
}

TEST_CASE("Thermo and cost output", "[io]") {
    ThermoTable t;
    t.rows.push_back({0.0, 1.0, 0.0, 0.0, 0.0});
    t.rows.push_back({1.0, 2.0, -0.5, 0.25, 0.75});
    REQUIRE(thermo_to_csv(t) == "beta,Z,F,E,S\n0,1,0,0,0\n1,2,-0.5,0.25,0.75\n");
    CostReport c;
    c.n_1q = 10;
    c.n_2q = 2;
    c.n_m = 1;
    c.shots = 100;
    c.hqc_num = 67;
    c.hqc_den = 5;
    const std::string j = cost_to_json(c);
    REQUIRE(j.find("\"hqc\": 13.4") != std::string::npos);
    REQUIRE(j.find("\"hqc_numerator\": 67") != std::string::npos);
}
