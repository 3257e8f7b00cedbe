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

#include "kpmdos/pauli.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "kpmdos/errors.hpp"
#include "kpmdos/oracle.hpp"

namespace kpmdos {

namespace {

struct CompiledTerm {
    std::size_t flip = 0;  // X or Y
    std::size_t phase = 0; // Y or Z
    cplx coeff;
};

CompiledTerm compile(const PauliTerm &t) {
    CompiledTerm c;
    int n_y = 0;
    for (const auto &[site, p] : t.ops) {
        const std::size_t bit = std::size_t{1} << site;
        if (p == Pauli::X || p == Pauli::Y) {
            c.flip |= bit;
        }
        if (p == Pauli::Y || p == Pauli::Z) {
            c.phase |= bit;
        }
        n_y += (p == Pauli::Y) ? 1 : 0;
    }
    // Y = i X Z per site.
    static constexpr std::array<cplx, 4> kIPow{cplx{1, 0}, cplx{0, 1},
                                               cplx{-1, 0}, cplx{0, -1}};
    c.coeff = t.coefficient * kIPow[static_cast<std::size_t>(n_y % 4)];
    return c;
}

std::string format_double(double x) {
    std::array<char, 64> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.17g", x);
    return {buf.data(), static_cast<std::size_t>(n)};
}

} // namespace

char pauli_letter(Pauli p) {
    static constexpr std::array<char, 4> kLetters{'I', 'X', 'Y', 'Z'};
    return kLetters[static_cast<std::size_t>(p)];
}

Pauli PauliTerm::at(std::size_t site) const {
    for (const auto &[s, p] : ops) {
        if (s == site) {
            return p;
        }
    }
    return Pauli::I;
}

void PauliTerm::canonicalize() {
    std::sort(ops.begin(), ops.end());
    for (std::size_t k = 0; k < ops.size(); ++k) {
        if (ops[k].second == Pauli::I) {
            throw DomainError("explicit I letters are not stored in terms");
        }
        if (k > 0 && ops[k].first == ops[k - 1].first) {
            throw DomainError("site " + std::to_string(ops[k].first) +
                              " appears twice in one Pauli string");
        }
    }
}

bool HamiltonianSpec::is_real() const {
    return std::all_of(terms.begin(), terms.end(), [](const PauliTerm &t) {
        return std::count_if(t.ops.begin(), t.ops.end(), [](const auto &op) {
                   return op.second == Pauli::Y;
               }) %
                   2 ==
               0;
    });
}

void simplify(HamiltonianSpec &h) {
    std::vector<PauliTerm> merged;
    std::map<std::vector<std::pair<std::size_t, Pauli>>, std::size_t> index;
    for (auto t : h.terms) {
        t.canonicalize();
        const auto it = index.find(t.ops);
        if (it == index.end()) {
            index.emplace(t.ops, merged.size());
            merged.push_back(std::move(t));
        } else {
            merged[it->second].coefficient += t.coefficient;
        }
    }
    std::erase_if(merged,
                  [](const PauliTerm &t) { return t.coefficient == 0.0; });
    h.terms = std::move(merged);
}

HamiltonianSpec build_xyz_staggered(std::size_t L, const Couplings &c) {
    if (L < 2 || L % 2 != 0) {
        throw DomainError("the staggered ring needs an even L >= 2, got " +
                          std::to_string(L));
    }
    if (L > kMaxQubits) {
        throw ResourceError("L = " + std::to_string(L) +
                            " exceeds the statevector cap");
    }
    HamiltonianSpec h;
    h.n_qubits = L;
    h.couplings = c;
    h.periodic = true;
    for (std::size_t i = 0; i < L; ++i) {
        const std::size_t j = (i + 1) % L;
        const double jz = c.jz + ((i % 2 == 0) ? c.lambda : -c.lambda);
        for (const auto &[p, coeff] :
             {std::pair{Pauli::X, c.jx}, std::pair{Pauli::Y, c.jy},
              std::pair{Pauli::Z, jz}}) {
            if (coeff != 0.0) {
                PauliTerm t{coeff, {{i, p}, {j, p}}};
                t.canonicalize();
                h.terms.push_back(std::move(t));
            }
        }
    }
    if (L == 2) {
        simplify(h);
    }
    return h;
}

void apply_hamiltonian(const HamiltonianSpec &h, std::span<const cplx> in,
                       std::span<cplx> out) {
    const std::size_t dim = std::size_t{1} << h.n_qubits;
    if (in.size() != dim || out.size() != dim) {
        throw DomainError("vector length does not match 2^L of the "
                          "Hamiltonian");
    }
    if (in.data() == out.data()) {
        throw DomainError("apply_hamiltonian cannot run in place");
    }
    const double shift = h.identity_shift();
    for (std::size_t i = 0; i < dim; ++i) {
        out[i] = shift * in[i];
    }
    for (const auto &term : h.terms) {
        const CompiledTerm c = compile(term);
        for (std::size_t i = 0; i < dim; ++i) {
            const bool odd = (std::popcount(i & c.phase) & 1) != 0;
            out[i ^ c.flip] += (odd ? -c.coeff : c.coeff) * in[i];
        }
    }
}

StateVector apply_hamiltonian(const HamiltonianSpec &h,
                              const StateVector &state) {
    if (state.n_qubits() != h.n_qubits) {
        throw DomainError("state has " + std::to_string(state.n_qubits()) +
                          " qubits, Hamiltonian has " +
                          std::to_string(h.n_qubits));
    }
    std::vector<cplx> out(state.size());
    apply_hamiltonian(h, state.amplitudes(), out);
    return StateVector(h.n_qubits, std::move(out));
}

SpectralBounds spectral_bounds(const HamiltonianSpec &h, BoundsMethod method) {
    if (method == BoundsMethod::Auto) {
        method = h.n_qubits <= kMaxExactQubits ? BoundsMethod::Exact
                                               : BoundsMethod::CoefficientNorm;
    }
    if (method == BoundsMethod::Exact) {
        const auto spectrum = exact_diagonalize(h);
        return {spectrum.eigenvalues.front(), spectrum.eigenvalues.back()};
    }
    double center = h.identity_shift();
    double radius = 0.0;
    for (const auto &t : h.terms) {
        if (t.is_identity()) {
            center += t.coefficient;
        } else {
            radius += std::abs(t.coefficient);
        }
    }
    return {center - radius, center + radius};
}

RescaledHamiltonian rescale(const HamiltonianSpec &h,
                            const SpectralBounds &bounds, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw DomainError("epsilon must lie in (0, 1)");
    }
    if (!(bounds.emax > bounds.emin)) {
        throw DomainError("trivial spectrum (Emax = Emin) cannot be rescaled");
    }
    RescaleParams p;
    p.epsilon = epsilon;
    p.a = (bounds.emax + bounds.emin) / 2;
    p.b = (bounds.emax - bounds.emin) / (2 - epsilon);
    double identity = h.identity_shift();
    RescaledHamiltonian out;
    out.h_tilde.n_qubits = h.n_qubits;
    out.h_tilde.couplings = h.couplings;
    out.h_tilde.periodic = h.periodic;
    for (const auto &t : h.terms) {
        if (t.is_identity()) {
            identity += t.coefficient;
            continue;
        }
        out.h_tilde.terms.push_back({t.coefficient / p.b, t.ops});
    }
    p.beta_id = (identity - p.a) / p.b;
    out.h_tilde.rescale = p;
    out.params = p;
    return out;
}

RescaledHamiltonian rescale(const HamiltonianSpec &h, double epsilon,
                            BoundsMethod method) {
    return rescale(h, spectral_bounds(h, method), epsilon);
}

std::vector<double> arccos_coefficients(std::size_t K) {
    std::vector<double> c(K + 1);
    double central = 1.0; // (2k)! / (4^k (k!)^2)
    for (std::size_t k = 0; k <= K; ++k) {
        if (k > 0) {
            central *= static_cast<double>(2 * k - 1) / static_cast<double>(2 * k);
        }
        c[k] = central / static_cast<double>(2 * k + 1);
    }
    return c;
}

double arccos_series(double x, std::size_t K) {
    const auto c = arccos_coefficients(K);
    double acc = 0.0;
    double power = x;
    for (std::size_t k = 0; k <= K; ++k) {
        acc += c[k] * power;
        power *= x * x;
    }
    return acc;
}

UpdatedSTParameters updated_st_parameters(double jx, double jy, double beta_id,
                                          std::size_t L) {
    // The closed forms are written for b = -beta_id, the angle of the final
    // ancilla rotation Z(-b).
    const double b = -beta_id;
    const double l = static_cast<double>(L);
    const double jx2 = jx * jx;
    const double jy2 = jy * jy;
    UpdatedSTParameters u;
    u.jx_even = jx * (1 + ((4.5 * l - 2) * jx2 + (3 * l - 4) * jy2 +
                           3 * b * b + 6 * jy * b) /
                              6);
    u.jx_odd = jx * (1 + ((4.5 * l - 6) * jx2 + (3 * l - 4) * jy2 + 3 * b * b) /
                             6);
    u.jy_even = jy + ((3 * l - 2) * jy2 * jy + (4.5 * l - 4) * jy * jx2 +
                      3 * jy * b * b + 6 * jx2 * b) /
                         6;
    u.jy_odd = jy * (1 + ((3 * l - 2) * jy2 + (4.5 * l - 8) * jx2 + 3 * b * b) /
                             6);
    u.jz_even = jx * (1 + ((4.5 * l - 6) * jx2 + (3 * l - 4) * jy2 +
                           3 * b * b + 6 * jy * b) /
                              6);
    // Identity coefficient of H + H^3/6 on the ring (H^3 traced against I).
    u.id_coeff = beta_id + (beta_id * beta_id * beta_id +
                            3 * beta_id * l * (1.5 * jx2 + jy2) -
                            3 * l * jx2 * jy) /
                               6;
    return u;
}

HamiltonianSpec updated_st_hamiltonian(const HamiltonianSpec &h_tilde) {
    if (!h_tilde.rescale || !h_tilde.couplings) {
        throw DomainError("updated parameters need a rescaled staggered ring");
    }
    const Couplings &c = *h_tilde.couplings;
    const double tol = 1e-12 * std::max(1.0, std::abs(c.jx));
    if (std::abs(c.jz + c.lambda - c.jx) > tol ||
        std::abs(c.jz - c.lambda) > tol) {
        throw DomainError("updated parameters require Jz + Lambda = Jx and "
                          "Jz = Lambda");
    }
    const double b = h_tilde.rescale->b;
    const std::size_t L = h_tilde.n_qubits;
    const auto u =
        updated_st_parameters(c.jx / b, c.jy / b, h_tilde.rescale->beta_id, L);
    HamiltonianSpec out = h_tilde;
    out.couplings.reset();
    out.terms.clear();
    for (std::size_t i = 0; i < L; ++i) {
        const std::size_t j = (i + 1) % L;
        const bool even = (i % 2 == 0);
        const std::array<std::pair<Pauli, double>, 3> bond{
            std::pair{Pauli::X, even ? u.jx_even : u.jx_odd},
            std::pair{Pauli::Y, even ? u.jy_even : u.jy_odd},
            std::pair{Pauli::Z, even ? u.jz_even : 0.0}};
        for (const auto &[p, coeff] : bond) {
            if (coeff != 0.0) {
                PauliTerm t{coeff, {{i, p}, {j, p}}};
                t.canonicalize();
                out.terms.push_back(std::move(t));
            }
        }
    }
    out.rescale->beta_id = u.id_coeff;
    return out;
}

ErrorEstimates error_estimates(std::size_t m, double e_bar, double delta_e) {
    const double md = static_cast<double>(m);
    const double e2 = e_bar * e_bar;
    const double d2 = delta_e * delta_e;
    ErrorEstimates out;
    out.eps_odd = ((2 * md + 1) / 6) * e_bar * (e2 + 3 * d2);
    out.eps_even = (md * md / 18) * (e2 * e2 * e2 + 15 * d2 * e2 * e2 +
                                     45 * d2 * d2 * e2 + 15 * d2 * d2 * d2);
    return out;
}

double moment_error_budget(std::size_t n, double e_bar, double delta_e) {
    const auto est = error_estimates(n / 2, e_bar, delta_e);
    return (n % 2 == 1) ? std::abs(est.eps_odd) : est.eps_even;
}

std::string terms_to_text(const HamiltonianSpec &h) {
    std::ostringstream os;
    if (h.identity_shift() != 0.0) {
        os << format_double(h.identity_shift()) << '\n';
    }
    for (const auto &t : h.terms) {
        os << format_double(t.coefficient);
        for (const auto &[site, p] : t.ops) {
            os << ' ' << site << ':' << pauli_letter(p);
        }
        os << '\n';
    }
    return os.str();
}

HamiltonianSpec parse_terms(std::string_view text, std::size_t n_qubits) {
    HamiltonianSpec h;
    h.n_qubits = n_qubits;
    std::istringstream is{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) {
            continue;
        }
        const auto fail = [&](const std::string &what) {
            return ParseError("terms line " + std::to_string(line_no) + ": " +
                              what);
        };
        PauliTerm t;
        {
            const auto *end = tok.data() + tok.size();
            const auto res = std::from_chars(tok.data(), end, t.coefficient);
            if (res.ec != std::errc{} || res.ptr != end) {
                throw fail("bad coefficient '" + tok + "'");
            }
        }
        while (ls >> tok) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos || colon + 2 != tok.size()) {
                throw fail("expected site:letter, got '" + tok + "'");
            }
            std::size_t site = 0;
            const auto res = std::from_chars(tok.data(), tok.data() + colon, site);
            if (res.ec != std::errc{} || res.ptr != tok.data() + colon) {
                throw fail("bad site in '" + tok + "'");
            }
            if (site >= n_qubits) {
                throw fail("site " + std::to_string(site) + " out of range");
            }
            Pauli p{};
            switch (tok[colon + 1]) {
            case 'X':
                p = Pauli::X;
                break;
            case 'Y':
                p = Pauli::Y;
                break;
            case 'Z':
                p = Pauli::Z;
                break;
            case 'I':
                continue;
            default:
                throw fail("unknown Pauli letter in '" + tok + "'");
            }
            t.ops.emplace_back(site, p);
        }
        try {
            t.canonicalize();
        } catch (const DomainError &e) {
            throw fail(e.what());
        }
        h.terms.push_back(std::move(t));
    }
    return h;
}

} // namespace kpmdos
