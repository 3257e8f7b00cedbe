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

#include "kpmdos/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "kpmdos/errors.hpp"

namespace kpmdos {

using nlohmann::json;

namespace {

json rescale_json(const std::optional<RescaleParams> &p) {
    if (!p) {
        return nullptr;
    }
    return {{"a", p->a}, {"b", p->b}, {"epsilon", p->epsilon},
            {"beta_id", p->beta_id}};
}

std::optional<RescaleParams> rescale_from(const json &j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    RescaleParams p;
    p.a = j.at("a").get<double>();
    p.b = j.at("b").get<double>();
    p.epsilon = j.at("epsilon").get<double>();
    p.beta_id = j.at("beta_id").get<double>();
    return p;
}

std::vector<double> doubles(const json &j) {
    std::vector<double> out;
    for (const auto &v : j) {
        out.push_back(v.get<double>());
    }
    return out;
}

template <typename F> auto parse_guard(F &&f) {
    try {
        return f();
    } catch (const json::exception &e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

double parse_double(std::string_view tok, std::size_t line_no) {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        throw ParseError("CSV line " + std::to_string(line_no) +
                         ": bad number '" + std::string(tok) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

} // namespace

std::string format_number(double x) {
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.17g", x);
    return {buf.data(), static_cast<std::size_t>(n)};
}

std::string moments_to_csv(const MomentSet &m) {
    std::ostringstream os;
    os << "n,value,std_error,replica_scatter,zero_consistent\n";
    for (std::size_t n = 0; n < m.values.size(); ++n) {
        os << n << ',' << format_number(m.values[n]) << ','
           << format_number(n < m.std_errors.size() ? m.std_errors[n] : 0.0)
           << ',';
        if (n < m.replica_scatter.size()) {
            os << format_number(m.replica_scatter[n]);
        }
        os << ',' << (m.zero_consistent(n) ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string moments_to_json(const MomentSet &m) {
    json j;
    j["provenance"] = std::string(provenance_name(m.provenance));
    j["M"] = m.values.empty() ? 0 : m.values.size() - 1;
    j["values"] = m.values;
    j["std_errors"] = m.std_errors;
    j["replica_scatter"] = m.replica_scatter;
    j["replicas"] = m.replicas;
    j["shots"] = m.shots;
    j["rescale"] = rescale_json(m.rescale);
    j["metadata"] = m.metadata;
    std::vector<bool> zero(m.values.size());
    for (std::size_t n = 0; n < zero.size(); ++n) {
        zero[n] = m.zero_consistent(n);
    }
    j["zero_consistent"] = zero;
    return j.dump(2) + "\n";
}

MomentSet moments_from_json(std::string_view text) {
    return parse_guard([&] {
        const json j = json::parse(text);
        MomentSet m;
        m.provenance = parse_provenance(j.at("provenance").get<std::string>());
        m.values = doubles(j.at("values"));
        m.std_errors = doubles(j.value("std_errors", json::array()));
        m.replica_scatter = doubles(j.value("replica_scatter", json::array()));
        m.replicas = j.value("replicas", std::size_t{0});
        m.shots = j.value("shots", std::uint64_t{0});
        m.rescale = rescale_from(j.value("rescale", json(nullptr)));
        m.metadata = j.value("metadata",
                             std::map<std::string, std::string>{});
        if (m.values.empty()) {
            throw ParseError("moment file holds no values");
        }
        if (m.std_errors.size() != m.values.size()) {
            m.std_errors.assign(m.values.size(), 0.0);
        }
        return m;
    });
}

MomentSet moments_from_csv(std::string_view text) {
    MomentSet m;
    m.provenance = Provenance::File;
    std::istringstream is{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#' || line.starts_with("n,")) {
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() < 2) {
            throw ParseError("CSV line " + std::to_string(line_no) +
                             ": expected at least n,value");
        }
        const double n = parse_double(f[0], line_no);
        if (n != static_cast<double>(m.values.size())) {
            throw ParseError("CSV line " + std::to_string(line_no) +
                             ": moment indices must run 0, 1, 2, ...");
        }
        m.values.push_back(parse_double(f[1], line_no));
        m.std_errors.push_back(
            f.size() > 2 && !f[2].empty() ? parse_double(f[2], line_no) : 0.0);
    }
    if (m.values.empty()) {
        throw ParseError("moment CSV holds no rows");
    }
    return m;
}

std::string dos_to_csv(const DosCurve &d) {
    std::ostringstream os;
    os << "x,energy,g,weight\n";
    const auto phys = d.rescale ? d.physical_energies() : std::vector<double>{};
    for (std::size_t j = 0; j < d.energies.size(); ++j) {
        os << format_number(d.energies[j]) << ',';
        if (!phys.empty()) {
            os << format_number(phys[j]);
        }
        os << ',' << format_number(d.values[j]) << ','
           << format_number(d.weights[j]) << '\n';
    }
    return os.str();
}

std::string dos_to_json(const DosCurve &d) {
    json j;
    j["M"] = d.M;
    j["kernel"] = d.kernel;
    j["provenance"] = std::string(provenance_name(d.provenance));
    j["rescale"] = rescale_json(d.rescale);
    j["L"] = d.n_qubits;
    j["x"] = d.energies;
    j["g"] = d.values;
    j["weights"] = d.weights;
    j["integral"] = d.integral();
    return j.dump(2) + "\n";
}

DosCurve dos_from_json(std::string_view text) {
    return parse_guard([&] {
        const json j = json::parse(text);
        DosCurve d;
        d.M = j.at("M").get<std::size_t>();
        d.kernel = j.at("kernel").get<std::string>();
        d.provenance = parse_provenance(j.at("provenance").get<std::string>());
        d.rescale = rescale_from(j.value("rescale", json(nullptr)));
        d.n_qubits = j.value("L", std::size_t{0});
        d.energies = doubles(j.at("x"));
        d.values = doubles(j.at("g"));
        d.weights = doubles(j.at("weights"));
        if (d.energies.size() != d.values.size() ||
            d.weights.size() != d.values.size() || d.values.empty()) {
            throw ParseError("DOS file has inconsistent column lengths");
        }
        return d;
    });
}

std::string thermo_to_csv(const ThermoTable &t) {
    std::ostringstream os;
    os << "beta,Z,F,E,S\n";
    for (const auto &r : t.rows) {
        os << format_number(r.beta) << ',' << format_number(r.Z) << ','
           << format_number(r.F) << ',' << format_number(r.E) << ','
           << format_number(r.S) << '\n';
    }
    return os.str();
}

std::string cost_to_json(const CostReport &c) {
    json j;
    j["N_1q"] = c.n_1q;
    j["N_2q"] = c.n_2q;
    j["N_m"] = c.n_m;
    j["shots"] = c.shots;
    j["hqc_numerator"] = c.hqc_num;
    j["hqc_denominator"] = c.hqc_den;
    j["hqc"] = c.hqc();
    return j.dump(2) + "\n";
}

} // namespace kpmdos
