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

#include "kpmdos/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <new>
#include <numeric>
#include <sstream>

#include <lapacke.h>

#include "kpmdos/errors.hpp"
#include "kpmdos/estimator.hpp"
#include "kpmdos/parallel.hpp"

namespace kpmdos {

namespace {

std::string fmt(double x) {
    std::array<char, 64> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.17g", x);
    return {buf.data(), static_cast<std::size_t>(n)};
}

struct TermMasks {
    std::size_t flip = 0;
    std::size_t phase = 0;
    int n_y = 0;
};

TermMasks masks(const PauliTerm &t) {
    TermMasks m;
    for (const auto &[site, p] : t.ops) {
        const std::size_t bit = std::size_t{1} << site;
        if (p == Pauli::X || p == Pauli::Y) {
            m.flip |= bit;
        }
        if (p == Pauli::Y || p == Pauli::Z) {
            m.phase |= bit;
        }
        m.n_y += p == Pauli::Y ? 1 : 0;
    }
    return m;
}

cplx i_pow(int k) {
    static constexpr std::array<cplx, 4> kIPow{cplx{1, 0}, cplx{0, 1},
                                               cplx{-1, 0}, cplx{0, -1}};
    return kIPow[static_cast<std::size_t>(k % 4)];
}

void check_cap(const HamiltonianSpec &h, std::size_t cap, const char *what) {
    if (h.n_qubits > cap) {
        throw ResourceError(std::string(what) + " is capped at L = " +
                            std::to_string(cap) + ", got L = " +
                            std::to_string(h.n_qubits));
    }
}

// Column-major dense real symmetric matrix; valid when h.is_real().
std::vector<double> dense_real(const HamiltonianSpec &h) {
    const std::size_t d = std::size_t{1} << h.n_qubits;
    std::vector<double> a(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        a[i * d + i] = h.identity_shift();
    }
    for (const auto &t : h.terms) {
        const TermMasks m = masks(t);
        const double c = t.coefficient * i_pow(m.n_y).real();
        for (std::size_t i = 0; i < d; ++i) {
            const bool odd = (std::popcount(i & m.phase) & 1) != 0;
            a[i * d + (i ^ m.flip)] += odd ? -c : c;
        }
    }
    return a;
}

// Column-major dense block of h on the basis states listed in `sector`.
// Valid when every term maps the sector into itself.
std::vector<double> dense_real_block(const HamiltonianSpec &h,
                                     const std::vector<std::size_t> &sector,
                                     const std::vector<std::size_t> &pos) {
    const std::size_t d = sector.size();
    std::vector<double> a(d * d, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
        a[k * d + k] = h.identity_shift();
    }
    for (const auto &t : h.terms) {
        const TermMasks m = masks(t);
        const double c = t.coefficient * i_pow(m.n_y).real();
        for (std::size_t k = 0; k < d; ++k) {
            const std::size_t i = sector[k];
            const bool odd = (std::popcount(i & m.phase) & 1) != 0;
            a[k * d + pos[i ^ m.flip]] += odd ? -c : c;
        }
    }
    return a;
}

std::vector<double> eigvals_real(std::vector<double> a, std::size_t d) {
    std::vector<double> w(d);
    const auto n = static_cast<lapack_int>(d);
    const lapack_int info = LAPACKE_dsyevd_2stage(LAPACK_COL_MAJOR, 'N', 'U', n,
                                                  a.data(), n, w.data());
    if (info != 0) {
        throw std::runtime_error("LAPACK dsyevd_2stage failed, info = " +
                                 std::to_string(info));
    }
    return w;
}

std::vector<double> eigvals_complex(Eigen::MatrixXcd a) {
    const auto n = static_cast<lapack_int>(a.rows());
    std::vector<double> w(static_cast<std::size_t>(n));
    const lapack_int info = LAPACKE_zheevd_2stage(
        LAPACK_COL_MAJOR, 'N', 'U', n,
        reinterpret_cast<lapack_complex_double *>(a.data()), n, w.data());
    if (info != 0) {
        throw std::runtime_error("LAPACK zheevd_2stage failed, info = " +
                                 std::to_string(info));
    }
    return w;
}

Eigen::Matrix4d bond_matrix(double xx, double yy, double zz) {
    // Local index k = bit(q0) + 2 bit(q1).
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    for (int k = 0; k < 4; ++k) {
        const double parity = (std::popcount(static_cast<unsigned>(k)) % 2 == 0)
                                  ? 1.0
                                  : -1.0;
        m(k ^ 3, k) += xx - yy * parity;
        m(k, k) += zz * parity;
    }
    return m;
}

} // namespace

double SpectrumRecord::rescaled_mean() const {
    if (rescaled.empty()) {
        throw DomainError("spectrum has no rescaled copy");
    }
    return std::accumulate(rescaled.begin(), rescaled.end(), 0.0) /
           static_cast<double>(rescaled.size());
}

double SpectrumRecord::rescaled_stddev() const {
    const double mean = rescaled_mean();
    double acc = 0.0;
    for (double e : rescaled) {
        acc += (e - mean) * (e - mean);
    }
    return std::sqrt(acc / static_cast<double>(rescaled.size()));
}

SpectrumRecord exact_diagonalize(const HamiltonianSpec &h, std::size_t cap) {
    check_cap(h, cap, "exact diagonalization");
    SpectrumRecord rec;
    rec.n_qubits = h.n_qubits;
    rec.couplings = h.couplings;
    const std::size_t d = std::size_t{1} << h.n_qubits;
    try {
        const bool parity_even = std::all_of(
            h.terms.begin(), h.terms.end(), [](const PauliTerm &t) {
                return std::popcount(masks(t).flip) % 2 == 0;
            });
        if (h.is_real() && parity_even && h.n_qubits >= 2) {
            // H commutes with the global Z parity: diagonalize both sectors.
            std::vector<std::size_t> pos(d);
            std::array<std::vector<std::size_t>, 2> sectors;
            for (std::size_t i = 0; i < d; ++i) {
                auto &sec = sectors[std::popcount(i) & 1];
                pos[i] = sec.size();
                sec.push_back(i);
            }
            for (const auto &sec : sectors) {
                const auto w = eigvals_real(dense_real_block(h, sec, pos),
                                            sec.size());
                rec.eigenvalues.insert(rec.eigenvalues.end(), w.begin(),
                                       w.end());
            }
        } else if (h.is_real()) {
            rec.eigenvalues = eigvals_real(dense_real(h), d);
        } else {
            rec.eigenvalues = eigvals_complex(dense_matrix(h, cap));
        }
    } catch (const std::bad_alloc &) {
        throw ResourceError("not enough memory for a dense " +
                            std::to_string(d) + "-dimensional eigensolve");
    }
    std::sort(rec.eigenvalues.begin(), rec.eigenvalues.end());
    if (h.rescale) {
        // The operator is already rescaled; record the identity mapping.
        rec.params = h.rescale;
        rec.rescaled = rec.eigenvalues;
    }
    return rec;
}

void attach_rescale(SpectrumRecord &rec, const RescaleParams &params) {
    rec.params = params;
    rec.rescaled.resize(rec.eigenvalues.size());
    for (std::size_t k = 0; k < rec.eigenvalues.size(); ++k) {
        rec.rescaled[k] = (rec.eigenvalues[k] - params.a) / params.b;
    }
}

Eigen::MatrixXcd dense_matrix(const HamiltonianSpec &h, std::size_t cap) {
    check_cap(h, cap, "dense matrix construction");
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << h.n_qubits);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d) * h.identity_shift();
    for (const auto &t : h.terms) {
        const TermMasks tm = masks(t);
        const cplx c = t.coefficient * i_pow(tm.n_y);
        for (Eigen::Index i = 0; i < d; ++i) {
            const auto iu = static_cast<std::size_t>(i);
            const bool odd = (std::popcount(iu & tm.phase) & 1) != 0;
            m(static_cast<Eigen::Index>(iu ^ tm.flip), i) += odd ? -c : c;
        }
    }
    return m;
}

Eigen::MatrixXcd dense_matrix_function(const HamiltonianSpec &h,
                                       const MatrixFunction &f,
                                       std::size_t cap) {
    Eigen::MatrixXcd v = dense_matrix(h, cap);
    const auto n = static_cast<lapack_int>(v.rows());
    std::vector<double> w(static_cast<std::size_t>(n));
    const lapack_int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'U', n,
        reinterpret_cast<lapack_complex_double *>(v.data()), n, w.data());
    if (info != 0) {
        throw std::runtime_error("LAPACK zheevd failed, info = " +
                                 std::to_string(info));
    }
    Eigen::VectorXcd fw(n);
    for (lapack_int k = 0; k < n; ++k) {
        const double e = w[static_cast<std::size_t>(k)];
        cplx val;
        switch (f.kind) {
        case MatrixFunctionKind::CosN:
            val = std::cos(f.param * e);
            break;
        case MatrixFunctionKind::SinN:
            val = std::sin(f.param * e);
            break;
        case MatrixFunctionKind::ChebyshevT:
            if (std::abs(e) > 1.0 + 1e-12) {
                throw DomainError("T_m needs the spectrum inside [-1, 1]");
            }
            val = std::cos(f.param * std::acos(std::clamp(e, -1.0, 1.0)));
            break;
        case MatrixFunctionKind::ExpIt:
            val = std::polar(1.0, f.param * e);
            break;
        case MatrixFunctionKind::ArccosSeries:
            val = arccos_series(e, f.K);
            break;
        }
        fw(k) = val;
    }
    return v * fw.asDiagonal() * v.adjoint();
}

std::string MomentComparison::to_csv() const {
    std::ostringstream os;
    os << "n,a,b,diff,combined_std_error\n";
    for (const auto &r : rows) {
        os << r.n << ',' << fmt(r.a) << ',' << fmt(r.b) << ',' << fmt(r.diff)
           << ',' << fmt(r.combined_std_error) << '\n';
    }
    return os.str();
}

MomentComparison compare_moment_sets(const MomentSet &a, const MomentSet &b) {
    if (a.values.size() != b.values.size()) {
        throw DomainError("moment sets differ in length (" +
                          std::to_string(a.values.size()) + " vs " +
                          std::to_string(b.values.size()) + ")");
    }
    const auto se = [](const MomentSet &s, std::size_t n) {
        return n < s.std_errors.size() ? s.std_errors[n] : 0.0;
    };
    MomentComparison out;
    double sq = 0.0;
    for (std::size_t n = 0; n < a.values.size(); ++n) {
        MomentComparisonRow r;
        r.n = n;
        r.a = a.values[n];
        r.b = b.values[n];
        r.diff = r.a - r.b;
        r.combined_std_error = std::hypot(se(a, n), se(b, n));
        out.max_abs = std::max(out.max_abs, std::abs(r.diff));
        sq += r.diff * r.diff;
        out.rows.push_back(r);
    }
    if (!out.rows.empty()) {
        out.rms = std::sqrt(sq / static_cast<double>(out.rows.size()));
    }
    return out;
}

std::string DosComparison::to_csv() const {
    std::ostringstream os;
    os << "x,a,b,abs_diff\n";
    for (std::size_t j = 0; j < energies.size(); ++j) {
        os << fmt(energies[j]) << ',' << fmt(a[j]) << ',' << fmt(b[j]) << ','
           << fmt(std::abs(a[j] - b[j])) << '\n';
    }
    return os.str();
}

namespace {

double interpolate(const DosCurve &c, double x) {
    const auto &e = c.energies;
    if (x <= e.front()) {
        return c.values.front();
    }
    if (x >= e.back()) {
        return c.values.back();
    }
    const auto hi = static_cast<std::size_t>(
        std::upper_bound(e.begin(), e.end(), x) - e.begin());
    const std::size_t lo = hi - 1;
    const double s = (x - e[lo]) / (e[hi] - e[lo]);
    return (1 - s) * c.values[lo] + s * c.values[hi];
}

} // namespace

DosComparison dos_compare(const DosCurve &a, const DosCurve &b) {
    for (const DosCurve *c : {&a, &b}) {
        if (c->energies.size() < 2 || c->values.size() != c->energies.size() ||
            c->weights.size() != c->energies.size()) {
            throw DomainError("curves need matching grids of >= 2 points");
        }
    }
    if (a.energies.back() < b.energies.front() ||
        b.energies.back() < a.energies.front()) {
        throw DomainError("curves live on disjoint energy ranges");
    }
    // The finer curve provides the grid; ties go to the lexicographically
    // smaller grid so the result does not depend on argument order.
    bool a_fine = a.energies.size() > b.energies.size();
    if (a.energies.size() == b.energies.size()) {
        a_fine = !(b.energies < a.energies);
    }
    const DosCurve &fine = a_fine ? a : b;
    const DosCurve &coarse = a_fine ? b : a;
    const bool same = fine.energies == coarse.energies;
    DosComparison out;
    out.energies = fine.energies;
    for (std::size_t j = 0; j < fine.energies.size(); ++j) {
        const double vf = fine.values[j];
        const double vc = same ? coarse.values[j]
                               : interpolate(coarse, fine.energies[j]);
        const double va = a_fine ? vf : vc;
        const double vb = a_fine ? vc : vf;
        out.a.push_back(va);
        out.b.push_back(vb);
        const double diff = std::abs(va - vb);
        out.l1 += fine.weights[j] * diff;
        out.linf = std::max(out.linf, diff);
    }
    return out;
}

Eigen::Matrix4cd bond_exponential(double xx, double yy, double zz, double t) {
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(
        bond_matrix(xx, yy, zz));
    Eigen::Vector4cd phases;
    for (int k = 0; k < 4; ++k) {
        phases(k) = std::polar(1.0, t * es.eigenvalues()(k));
    }
    const Eigen::Matrix4cd v = es.eigenvectors().cast<cplx>();
    return v * phases.asDiagonal() * v.adjoint();
}

MomentSet st_matrix_moments(const HamiltonianSpec &h_tilde,
                            const RandomCircuitSpec &random, std::size_t R,
                            std::size_t M, std::size_t steps) {
    if (!h_tilde.rescale) {
        throw DomainError("product-formula moments need a rescaled Hamiltonian");
    }
    if (R < 1 || steps < 1) {
        throw DomainError("need R >= 1 and steps >= 1");
    }
    if (random.n_qubits != h_tilde.n_qubits) {
        throw DomainError("random-state width does not match the Hamiltonian");
    }
    const auto bonds = ring_bonds(h_tilde);
    const double beta = h_tilde.rescale->beta_id;
    std::vector<std::vector<double>> per(R, std::vector<double>(M + 1));
    parallel_for(R, [&](std::size_t r) {
        const StateVector ket = prepare_random_state(random.replica(r));
        for (std::size_t n = 0; n <= M; ++n) {
            const double t = static_cast<double>(n) / static_cast<double>(steps);
            std::vector<Mat4> mats;
            for (const auto &b : bonds) {
                const Eigen::Matrix4cd u = bond_exponential(b.xx, b.yy, b.zz, t);
                Mat4 m{};
                for (int i = 0; i < 4; ++i) {
                    for (int j = 0; j < 4; ++j) {
                        m[static_cast<std::size_t>(4 * i + j)] = u(i, j);
                    }
                }
                mats.push_back(m);
            }
            StateVector s = ket;
            for (std::size_t step = 0; step < steps; ++step) {
                for (std::size_t k = 0; k < bonds.size(); ++k) {
                    s.apply_two_qubit(mats[k], bonds[k].q0, bonds[k].q1);
                }
            }
            const cplx overlap = inner_product(ket, s) *
                                 std::polar(1.0, static_cast<double>(n) * beta);
            per[r][n] = moment_postprocess(n, overlap.real(), overlap.imag());
        }
    });
    MomentSet out;
    out.provenance = Provenance::ST;
    out.replicas = R;
    out.rescale = h_tilde.rescale;
    out.values.assign(M + 1, 0.0);
    out.std_errors.assign(M + 1, 0.0);
    const double Rd = static_cast<double>(R);
    for (std::size_t n = 0; n <= M; ++n) {
        double mean = 0.0;
        for (const auto &v : per) {
            mean += v[n];
        }
        mean /= Rd;
        double var = 0.0;
        for (const auto &v : per) {
            var += (v[n] - mean) * (v[n] - mean);
        }
        var = R > 1 ? var / (Rd - 1) : 0.0;
        out.values[n] = mean;
        out.std_errors[n] = std::sqrt(var / Rd);
    }
    out.replica_scatter = out.std_errors;
    out.metadata["steps"] = std::to_string(steps);
    return out;
}

MomentSet exact_st_trace_moments(const HamiltonianSpec &h_tilde,
                                 std::size_t M) {
    if (!h_tilde.rescale) {
        throw DomainError("product-formula moments need a rescaled Hamiltonian");
    }
    const std::size_t L = h_tilde.n_qubits;
    if (L < 4 || L % 2 != 0) {
        throw DomainError("Kronecker trace path needs an even ring, L >= 4");
    }
    if (L > 12) {
        throw ResourceError("Kronecker trace path is capped at L = 12");
    }
    const auto bonds = ring_bonds(h_tilde);
    const std::size_t d = std::size_t{1} << L;
    const auto di = static_cast<Eigen::Index>(d);

    // Per-bond eigenpairs, indexed by bond start i.
    std::vector<Eigen::Matrix4d> vecs(L, Eigen::Matrix4d::Identity());
    std::vector<Eigen::Vector4d> vals(L, Eigen::Vector4d::Zero());
    for (const auto &b : bonds) {
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(
            bond_matrix(b.xx, b.yy, b.zz));
        vecs[b.q0] = es.eigenvectors();
        vals[b.q0] = es.eigenvalues();
    }
    const auto local = [L](std::size_t idx, std::size_t i) {
        return ((idx >> i) & 1U) | (((idx >> ((i + 1) % L)) & 1U) << 1U);
    };
    const auto basis = [&](std::size_t parity, Eigen::MatrixXd &v,
                           Eigen::VectorXd &lam) {
        v.resize(di, di);
        lam.resize(di);
        for (std::size_t j = 0; j < d; ++j) {
            double e = 0.0;
            for (std::size_t i = parity; i < L; i += 2) {
                e += vals[i](static_cast<Eigen::Index>(local(j, i)));
            }
            lam(static_cast<Eigen::Index>(j)) = e;
            for (std::size_t row = 0; row < d; ++row) {
                double p = 1.0;
                for (std::size_t i = parity; i < L && p != 0.0; i += 2) {
                    p *= vecs[i](static_cast<Eigen::Index>(local(row, i)),
                                 static_cast<Eigen::Index>(local(j, i)));
                }
                v(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) =
                    p;
            }
        }
    };
    Eigen::MatrixXd w;
    Eigen::VectorXd lam_even;
    Eigen::VectorXd lam_odd;
    try {
        Eigen::MatrixXd v_even;
        Eigen::MatrixXd v_odd;
        basis(0, v_even, lam_even);
        basis(1, v_odd, lam_odd);
        w.noalias() = v_odd.transpose() * v_even;
        w = w.cwiseAbs2().eval();
    } catch (const std::bad_alloc &) {
        throw ResourceError("not enough memory for the Kronecker trace path");
    }
    const double beta = h_tilde.rescale->beta_id;
    MomentSet out;
    out.provenance = Provenance::ST;
    out.rescale = h_tilde.rescale;
    out.values.assign(M + 1, 0.0);
    out.std_errors.assign(M + 1, 0.0);
    for (std::size_t n = 0; n <= M; ++n) {
        const double nd = static_cast<double>(n);
        Eigen::VectorXd vc(di);
        Eigen::VectorXd vs(di);
        for (Eigen::Index k = 0; k < di; ++k) {
            vc(k) = std::cos(nd * lam_even(k));
            vs(k) = std::sin(nd * lam_even(k));
        }
        const Eigen::VectorXd wc = w * vc;
        const Eigen::VectorXd ws = w * vs;
        cplx tr{0.0, 0.0};
        for (Eigen::Index j = 0; j < di; ++j) {
            tr += std::polar(1.0, nd * lam_odd(j)) * cplx{wc(j), ws(j)};
        }
        tr *= std::polar(1.0, nd * beta) / static_cast<double>(d);
        out.values[n] = moment_postprocess(n, tr.real(), tr.imag());
    }
    out.metadata["steps"] = "1";
    out.metadata["trace"] = "exact";
    return out;
}

std::string spectrum_to_csv(const SpectrumRecord &rec) {
    std::ostringstream os;
    os << "# L = " << rec.n_qubits << '\n';
    if (rec.couplings) {
        os << "# Jx = " << fmt(rec.couplings->jx) << '\n'
           << "# Jy = " << fmt(rec.couplings->jy) << '\n'
           << "# Jz = " << fmt(rec.couplings->jz) << '\n'
           << "# lambda = " << fmt(rec.couplings->lambda) << '\n';
    }
    if (rec.params) {
        os << "# a = " << fmt(rec.params->a) << '\n'
           << "# b = " << fmt(rec.params->b) << '\n'
           << "# epsilon = " << fmt(rec.params->epsilon) << '\n'
           << "# beta_id = " << fmt(rec.params->beta_id) << '\n';
    }
    os << "index,eigenvalue,rescaled\n";
    for (std::size_t k = 0; k < rec.eigenvalues.size(); ++k) {
        os << k << ',' << fmt(rec.eigenvalues[k]) << ',';
        if (k < rec.rescaled.size()) {
            os << fmt(rec.rescaled[k]);
        }
        os << '\n';
    }
    return os.str();
}

} // namespace kpmdos
