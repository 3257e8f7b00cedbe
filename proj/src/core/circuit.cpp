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

#include "kpmdos/circuit.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>

#include "kpmdos/errors.hpp"

namespace kpmdos {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

struct KindInfo {
    GateKind kind;
    std::string_view name;
    std::size_t n_targets;
    bool controlled;
    std::size_t n_angles;
};

constexpr std::array<KindInfo, 8> kKinds{{
    {GateKind::ZZ, "ZZ", 2, false, 1},
    {GateKind::Z, "Z", 1, false, 1},
    {GateKind::U1q, "U1q", 1, false, 2},
    {GateKind::H, "H", 1, false, 0},
    {GateKind::CZZ, "CZZ", 2, true, 1},
    {GateKind::CZ, "CZ", 1, true, 1},
    {GateKind::CU1q, "CU1q", 1, true, 2},
    {GateKind::Measure, "MEASURE", 1, false, 0},
}};

const KindInfo &info(GateKind kind) {
    for (const auto &k : kKinds) {
        if (k.kind == kind) {
            return k;
        }
    }
    throw DomainError("unknown gate kind");
}

std::string format_angle(double x) {
    std::array<char, 64> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.17g", x);
    return {buf.data(), static_cast<std::size_t>(n)};
}

// Lowered pieces. Each helper appends ops realizing the named unitary exactly.

void lower_cz(std::vector<GateOp> &out, std::size_t c, std::size_t t,
              double theta) {
    // C-Z(theta) = exp(-i theta/4 Z_t) exp(+i theta/4 Z_c Z_t)
    out.push_back(GateOp::z(t, theta / 2));
    out.push_back(GateOp::zz(c, t, -theta / 2));
}

// exp(-i pi/4) CNOT(a -> b) and its inverse, built from a CZ conjugated by a
// Y rotation on b. The phases cancel whenever both are used as a pair.
void lower_cnot_phase(std::vector<GateOp> &out, std::size_t a, std::size_t b,
                      bool inverse) {
    out.push_back(GateOp::u1q(b, -kHalfPi, kHalfPi));
    if (!inverse) {
        out.push_back(GateOp::z(a, kHalfPi));
        out.push_back(GateOp::z(b, kHalfPi));
        out.push_back(GateOp::zz(a, b, -kHalfPi));
    } else {
        out.push_back(GateOp::zz(a, b, kHalfPi));
        out.push_back(GateOp::z(a, -kHalfPi));
        out.push_back(GateOp::z(b, -kHalfPi));
    }
    out.push_back(GateOp::u1q(b, kHalfPi, kHalfPi));
}

} // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }

GateOp GateOp::zz(std::size_t q0, std::size_t q1, double theta) {
    return {GateKind::ZZ, {q0, q1}, std::nullopt, theta, 0.0};
}
GateOp GateOp::z(std::size_t q, double theta) {
    return {GateKind::Z, {q}, std::nullopt, theta, 0.0};
}
GateOp GateOp::u1q(std::size_t q, double theta, double phi) {
    return {GateKind::U1q, {q}, std::nullopt, theta, phi};
}
GateOp GateOp::h(std::size_t q) {
    return {GateKind::H, {q}, std::nullopt, 0.0, 0.0};
}
GateOp GateOp::czz(std::size_t c, std::size_t q0, std::size_t q1,
                   double theta) {
    return {GateKind::CZZ, {q0, q1}, c, theta, 0.0};
}
GateOp GateOp::cz(std::size_t c, std::size_t q, double theta) {
    return {GateKind::CZ, {q}, c, theta, 0.0};
}
GateOp GateOp::cu1q(std::size_t c, std::size_t q, double theta, double phi) {
    return {GateKind::CU1q, {q}, c, theta, phi};
}
GateOp GateOp::measure(std::size_t q) {
    return {GateKind::Measure, {q}, std::nullopt, 0.0, 0.0};
}

void GateOp::validate(std::size_t n_qubits) const {
    const auto &k = info(kind);
    if (targets.size() != k.n_targets) {
        throw DomainError(std::string(k.name) + " expects " +
                          std::to_string(k.n_targets) + " target(s)");
    }
    if (control.has_value() != k.controlled) {
        throw DomainError(std::string(k.name) +
                          (k.controlled ? " requires a control qubit"
                                        : " does not take a control qubit"));
    }
    std::vector<std::size_t> all = targets;
    if (control) {
        all.push_back(*control);
    }
    for (std::size_t q : all) {
        if (q >= n_qubits) {
            throw DomainError(std::string(k.name) + ": qubit " +
                              std::to_string(q) + " out of range");
        }
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw DomainError(std::string(k.name) +
                          ": control and target qubits must be distinct");
    }
}

void Circuit::append(const Circuit &other) {
    if (other.n_qubits > n_qubits) {
        throw DomainError("appended circuit is wider than the host circuit");
    }
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

GateCounts gate_counts(const Circuit &circuit) {
    GateCounts c;
    for (const auto &op : circuit.ops) {
        switch (op.kind) {
        case GateKind::Z:
        case GateKind::U1q:
        case GateKind::H:
            ++c.one_qubit;
            break;
        case GateKind::ZZ:
            ++c.two_qubit;
            break;
        case GateKind::CZZ:
        case GateKind::CZ:
        case GateKind::CU1q:
            ++c.controlled;
            break;
        case GateKind::Measure:
            ++c.measurements;
            break;
        }
    }
    return c;
}

Circuit lower_to_native(const Circuit &circuit) {
    Circuit out{circuit.n_qubits, {}, circuit.metadata};
    out.ops.reserve(circuit.ops.size());
    for (const auto &op : circuit.ops) {
        switch (op.kind) {
        case GateKind::CZ:
            lower_cz(out.ops, *op.control, op.targets[0], op.theta);
            break;
        case GateKind::CU1q: {
            // V Z V^dag = cos(phi) X + sin(phi) Y with V = Z(phi) Ry(pi/2).
            const std::size_t t = op.targets[0];
            out.ops.push_back(GateOp::z(t, -op.phi));
            out.ops.push_back(GateOp::u1q(t, -kHalfPi, kHalfPi));
            lower_cz(out.ops, *op.control, t, op.theta);
            out.ops.push_back(GateOp::u1q(t, kHalfPi, kHalfPi));
            out.ops.push_back(GateOp::z(t, op.phi));
            break;
        }
        case GateKind::CZZ: {
            // CNOT(a->b) C-Z_b(theta) CNOT(a->b), with Z_b -> Z_a Z_b.
            const std::size_t a = op.targets[0];
            const std::size_t b = op.targets[1];
            lower_cnot_phase(out.ops, a, b, true);
            lower_cz(out.ops, *op.control, b, op.theta);
            lower_cnot_phase(out.ops, a, b, false);
            break;
        }
        default:
            out.ops.push_back(op);
        }
    }
    return out;
}

std::string to_text(const Circuit &circuit) {
    std::ostringstream os;
    os << "qubits " << circuit.n_qubits << '\n';
    for (const auto &[key, value] : circuit.metadata) {
        os << "# " << key << " = " << value << '\n';
    }
    for (const auto &op : circuit.ops) {
        const auto &k = info(op.kind);
        os << k.name;
        if (op.control) {
            os << ' ' << *op.control;
        }
        for (std::size_t t : op.targets) {
            os << ' ' << t;
        }
        if (k.n_angles >= 1) {
            os << ' ' << format_angle(op.theta);
        }
        if (k.n_angles == 2) {
            os << ' ' << format_angle(op.phi);
        }
        os << '\n';
    }
    return os.str();
}

namespace {

std::size_t parse_index(const std::string &tok, std::size_t line_no) {
    std::size_t v = 0;
    const auto *end = tok.data() + tok.size();
    const auto res = std::from_chars(tok.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": bad qubit index '" + tok + "'");
    }
    return v;
}

double parse_angle(const std::string &tok, std::size_t line_no) {
    double v = 0.0;
    const auto *end = tok.data() + tok.size();
    const auto res = std::from_chars(tok.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ParseError("line " + std::to_string(line_no) + ": bad angle '" +
                         tok + "'");
    }
    return v;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    bool have_header = false;
    std::istringstream is{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                c.metadata[trim(line.substr(1, eq - 1))] =
                    trim(line.substr(eq + 1));
            }
            continue;
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(t);
        }
        if (tok[0] == "qubits") {
            if (tok.size() != 2) {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected 'qubits N'");
            }
            c.n_qubits = parse_index(tok[1], line_no);
            have_header = true;
            continue;
        }
        const auto it = std::find_if(kKinds.begin(), kKinds.end(),
                                     [&](const KindInfo &k) {
                                         return k.name == tok[0];
                                     });
        if (it == kKinds.end()) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": unknown gate '" + tok[0] + "'");
        }
        const std::size_t expected =
            1 + (it->controlled ? 1 : 0) + it->n_targets + it->n_angles;
        if (tok.size() != expected) {
            throw ParseError("line " + std::to_string(line_no) + ": " +
                             std::string(it->name) + " expects " +
                             std::to_string(expected - 1) + " fields");
        }
        GateOp op;
        op.kind = it->kind;
        std::size_t pos = 1;
        if (it->controlled) {
            op.control = parse_index(tok[pos++], line_no);
        }
        for (std::size_t t = 0; t < it->n_targets; ++t) {
            op.targets.push_back(parse_index(tok[pos++], line_no));
        }
        if (it->n_angles >= 1) {
            op.theta = parse_angle(tok[pos++], line_no);
        }
        if (it->n_angles == 2) {
            op.phi = parse_angle(tok[pos++], line_no);
        }
        c.ops.push_back(std::move(op));
    }
    if (!have_header) {
        throw ParseError("circuit text lacks a 'qubits N' header");
    }
    for (const auto &op : c.ops) {
        try {
            op.validate(c.n_qubits);
        } catch (const DomainError &e) {
            throw ParseError(e.what());
        }
    }
    return c;
}

} // namespace kpmdos
