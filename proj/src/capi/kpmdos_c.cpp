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
#include "kpmdos/kpmdos.h"

#include <cstring>
#include <memory>
#include <mutex>
#include <new>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "kpmdos/errors.hpp"
#include "kpmdos/estimator.hpp"
#include "kpmdos/io.hpp"
#include "kpmdos/kpm.hpp"
#include "kpmdos/oracle.hpp"
#include "kpmdos/parallel.hpp"
#include "kpmdos/random_state.hpp"

#ifndef KPMDOS_VERSION_STRING
#define KPMDOS_VERSION_STRING "0.0.0"
#endif

struct kpmdos_model {
    kpmdos::HamiltonianSpec h;
    kpmdos::RescaledHamiltonian r;
    mutable std::mutex mu;
    mutable std::optional<kpmdos::SpectrumRecord> spectrum;

    const kpmdos::SpectrumRecord &ed() const {
        std::lock_guard lock(mu);
        if (!spectrum) {
            auto rec = kpmdos::exact_diagonalize(h);
            kpmdos::attach_rescale(rec, r.params);
            spectrum = std::move(rec);
        }
        return *spectrum;
    }
};

struct kpmdos_moments {
    kpmdos::MomentSet m;
};

struct kpmdos_dos {
    kpmdos::DosCurve d;
};

namespace {

thread_local std::string g_last_error;

class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

template <typename F> kpmdos_status guarded(F &&f) {
    g_last_error.clear();
    try {
        f();
        return KPMDOS_OK;
    } catch (const InvalidArgument &e) {
        g_last_error = e.what();
        return KPMDOS_ERR_INVALID_ARGUMENT;
    } catch (const kpmdos::ParseError &e) {
        g_last_error = e.what();
        return KPMDOS_ERR_PARSE;
    } catch (const kpmdos::ResourceError &e) {
        g_last_error = e.what();
        return KPMDOS_ERR_RESOURCE;
    } catch (const std::bad_alloc &) {
        g_last_error = "out of memory";
        return KPMDOS_ERR_RESOURCE;
    } catch (const kpmdos::DomainError &e) {
        g_last_error = e.what();
        return KPMDOS_ERR_DOMAIN;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return KPMDOS_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return KPMDOS_ERR_INTERNAL;
    }
}

void need(const void *p, const char *what) {
    if (p == nullptr) {
        throw InvalidArgument(std::string(what) + " is NULL");
    }
}

char *dup_string(const std::string &s) {
    char *out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

kpmdos::Scheme to_scheme(kpmdos_scheme s) {
    switch (s) {
    case KPMDOS_SCHEME_PAR:
        return kpmdos::Scheme::Par;
    case KPMDOS_SCHEME_SEQ:
        return kpmdos::Scheme::Seq;
    case KPMDOS_SCHEME_RIC:
        return kpmdos::Scheme::Ric;
    }
    throw InvalidArgument("unknown scheme");
}

kpmdos::RandomCircuitSpec to_spec(std::size_t L, const kpmdos_random_params &p) {
    kpmdos::RandomCircuitSpec spec;
    spec.n_qubits = L;
    spec.scheme = to_scheme(p.scheme);
    spec.n_layers = p.layers;
    spec.s = p.s;
    spec.seed = p.seed;
    return spec;
}

kpmdos::Couplings to_couplings(const kpmdos_model_params &p) {
    return {p.jx, p.jy, p.jz, p.lambda};
}

const char *method_name(kpmdos_method m) {
    switch (m) {
    case KPMDOS_METHOD_ED:
        return "ed";
    case KPMDOS_METHOD_RECURSION:
        return "recursion";
    case KPMDOS_METHOD_ARCCOS:
        return "arccos";
    case KPMDOS_METHOD_ST:
        return "st";
    case KPMDOS_METHOD_CIRCUIT_EXACT:
        return "circuit-exact";
    case KPMDOS_METHOD_CIRCUIT_SHOTS:
        return "circuit-shots";
    }
    return "?";
}

} // namespace

extern "C" {

const char *kpmdos_version(void) { return KPMDOS_VERSION_STRING; }

const char *kpmdos_last_error(void) { return g_last_error.c_str(); }

const char *kpmdos_status_name(kpmdos_status status) {
    switch (status) {
    case KPMDOS_OK:
        return "ok";
    case KPMDOS_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case KPMDOS_ERR_DOMAIN:
        return "domain error";
    case KPMDOS_ERR_RESOURCE:
        return "resource limit";
    case KPMDOS_ERR_PARSE:
        return "parse error";
    case KPMDOS_ERR_IO:
        return "I/O error";
    case KPMDOS_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

void kpmdos_free_string(char *s) { delete[] s; }

kpmdos_status kpmdos_set_threads(size_t n) {
    return guarded([&] { kpmdos::set_max_threads(n); });
}

size_t kpmdos_threads(void) { return kpmdos::max_threads(); }

kpmdos_model_params kpmdos_model_defaults(void) {
    return {12, 1.0, 1.0 / 3.0, 0.5, 0.5, 0.01};
}

kpmdos_moment_params kpmdos_moment_defaults(void) {
    return {KPMDOS_METHOD_ED, 25, 0, 1, 4, 1000, 7,
            {KPMDOS_SCHEME_PAR, 5, 1, 1}};
}

kpmdos_status kpmdos_model_create(const kpmdos_model_params *params,
                                  kpmdos_model **out) {
    return guarded([&] {
        need(params, "params");
        need(out, "out");
        *out = nullptr;
        auto m = std::make_unique<kpmdos_model>();
        m->h = kpmdos::build_xyz_staggered(params->L, to_couplings(*params));
        if (params->L <= kpmdos::kMaxExactQubits) {
            // One eigensolve serves both the bounds and later spectrum queries.
            auto rec = kpmdos::exact_diagonalize(m->h);
            m->r = kpmdos::rescale(
                m->h, {rec.eigenvalues.front(), rec.eigenvalues.back()},
                params->epsilon);
            kpmdos::attach_rescale(rec, m->r.params);
            m->spectrum = std::move(rec);
        } else {
            m->r = kpmdos::rescale(m->h, params->epsilon);
        }
        *out = m.release();
    });
}

void kpmdos_model_destroy(kpmdos_model *model) { delete model; }

kpmdos_status kpmdos_model_rescale(const kpmdos_model *model, kpmdos_rescale *out) {
    return guarded([&] {
        need(model, "model");
        need(out, "out");
        const auto &p = model->r.params;
        *out = {p.a, p.b, p.epsilon, p.beta_id};
    });
}

kpmdos_status kpmdos_model_terms(const kpmdos_model *model, char **out) {
    return guarded([&] {
        need(model, "model");
        need(out, "out");
        *out = dup_string(kpmdos::terms_to_text(model->r.h_tilde));
    });
}

kpmdos_status kpmdos_model_spectrum_csv(const kpmdos_model *model, char **out) {
    return guarded([&] {
        need(model, "model");
        need(out, "out");
        *out = dup_string(kpmdos::spectrum_to_csv(model->ed()));
    });
}

kpmdos_status kpmdos_moments_compute(const kpmdos_model *model,
                                     const kpmdos_moment_params *params,
                                     kpmdos_moments **out) {
    return guarded([&] {
        need(model, "model");
        need(params, "params");
        need(out, "out");
        *out = nullptr;
        const std::size_t L = model->h.n_qubits;
        const auto &h_tilde = model->r.h_tilde;
        const auto random = to_spec(L, params->random);
        const kpmdos::EstimatorOptions opts{params->R, params->M, params->K,
                                            params->steps};
        kpmdos::MomentSet m;
        switch (params->method) {
        case KPMDOS_METHOD_ED:
            m = kpmdos::moments_by_ed(model->ed().rescaled, params->M);
            break;
        case KPMDOS_METHOD_ARCCOS:
            m = kpmdos::moments_by_arccos(model->ed().rescaled, params->M,
                                          params->K);
            m.metadata["K"] = std::to_string(params->K);
            break;
        case KPMDOS_METHOD_RECURSION:
            m = kpmdos::moments_by_recursion(h_tilde, random, params->R,
                                             params->M);
            break;
        case KPMDOS_METHOD_ST:
            m = kpmdos::st_matrix_moments(h_tilde, random, params->R, params->M,
                                          params->steps);
            break;
        case KPMDOS_METHOD_CIRCUIT_EXACT:
            m = kpmdos::estimate_moments_exact(h_tilde, random, opts);
            break;
        case KPMDOS_METHOD_CIRCUIT_SHOTS:
            m = kpmdos::estimate_moments_shots(h_tilde, random, opts,
                                               params->shots, params->shot_seed);
            break;
        default:
            throw InvalidArgument("unknown moment method");
        }
        m.rescale = model->r.params;
        m.metadata["L"] = std::to_string(L);
        m.metadata["method"] = method_name(params->method);
        *out = new kpmdos_moments{std::move(m)};
    });
}

kpmdos_status kpmdos_moments_parse(const char *text, kpmdos_format format,
                                   kpmdos_moments **out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = nullptr;
        if (format == KPMDOS_FORMAT_JSON) {
            *out = new kpmdos_moments{kpmdos::moments_from_json(text)};
        } else if (format == KPMDOS_FORMAT_CSV) {
            *out = new kpmdos_moments{kpmdos::moments_from_csv(text)};
        } else {
            throw InvalidArgument("unknown format");
        }
    });
}

void kpmdos_moments_destroy(kpmdos_moments *moments) { delete moments; }

kpmdos_status kpmdos_moments_count(const kpmdos_moments *moments, size_t *out) {
    return guarded([&] {
        need(moments, "moments");
        need(out, "out");
        *out = moments->m.values.size();
    });
}

kpmdos_status kpmdos_moments_get(const kpmdos_moments *moments, size_t n,
                                 double *value, double *std_error) {
    return guarded([&] {
        need(moments, "moments");
        const auto &m = moments->m;
        if (n >= m.values.size()) {
            throw InvalidArgument("moment index " + std::to_string(n) +
                                  " out of range");
        }
        if (value != nullptr) {
            *value = m.values[n];
        }
        if (std_error != nullptr) {
            *std_error = n < m.std_errors.size() ? m.std_errors[n] : 0.0;
        }
    });
}

kpmdos_status kpmdos_moments_truncate(const kpmdos_moments *moments, size_t M,
                                      kpmdos_moments **out) {
    return guarded([&] {
        need(moments, "moments");
        need(out, "out");
        *out = nullptr;
        kpmdos::MomentSet m = moments->m.truncated(M);
        const std::size_t measured = m.values.size();
        if (measured < M + 1) {
            m.values.resize(M + 1, 0.0);
            m.std_errors.resize(M + 1, 0.0);
            if (!m.replica_scatter.empty()) {
                m.replica_scatter.resize(M + 1, 0.0);
            }
            m.metadata["zero_padded_from"] = std::to_string(measured);
        }
        *out = new kpmdos_moments{std::move(m)};
    });
}

kpmdos_status kpmdos_moments_serialize(const kpmdos_moments *moments,
                                       kpmdos_format format, char **out) {
    return guarded([&] {
        need(moments, "moments");
        need(out, "out");
        if (format == KPMDOS_FORMAT_JSON) {
            *out = dup_string(kpmdos::moments_to_json(moments->m));
        } else if (format == KPMDOS_FORMAT_CSV) {
            *out = dup_string(kpmdos::moments_to_csv(moments->m));
        } else {
            throw InvalidArgument("unknown format");
        }
    });
}

kpmdos_status kpmdos_reconstruct(const kpmdos_moments *moments,
                                 kpmdos_kernel kernel, size_t M,
                                 size_t grid_points, kpmdos_dos **out) {
    return guarded([&] {
        need(moments, "moments");
        need(out, "out");
        *out = nullptr;
        if (grid_points < 2) {
            throw InvalidArgument("grid needs at least 2 points");
        }
        kpmdos::KernelKind kind{};
        if (kernel == KPMDOS_KERNEL_JACKSON) {
            kind = kpmdos::KernelKind::Jackson;
        } else if (kernel == KPMDOS_KERNEL_DIRICHLET) {
            kind = kpmdos::KernelKind::Dirichlet;
        } else {
            throw InvalidArgument("unknown kernel");
        }
        const auto g = kpmdos::make_kernel(kind, M);
        auto d = kpmdos::kpm_reconstruct(moments->m, g,
                                         kpmdos::chebyshev_grid(grid_points),
                                         std::string(kpmdos::kernel_name(kind)));
        const auto it = moments->m.metadata.find("L");
        if (it != moments->m.metadata.end()) {
            d.n_qubits = std::stoul(it->second);
        }
        *out = new kpmdos_dos{std::move(d)};
    });
}

kpmdos_status kpmdos_ed_histogram(const kpmdos_model *model, size_t bins,
                                  kpmdos_dos **out) {
    return guarded([&] {
        need(model, "model");
        need(out, "out");
        *out = nullptr;
        auto d = kpmdos::dos_histogram_from_ed(model->ed().rescaled, bins);
        d.rescale = model->r.params;
        d.n_qubits = model->h.n_qubits;
        *out = new kpmdos_dos{std::move(d)};
    });
}

kpmdos_status kpmdos_dos_parse(const char *json, kpmdos_dos **out) {
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        *out = nullptr;
        *out = new kpmdos_dos{kpmdos::dos_from_json(json)};
    });
}

void kpmdos_dos_destroy(kpmdos_dos *dos) { delete dos; }

kpmdos_status kpmdos_dos_size(const kpmdos_dos *dos, size_t *out) {
    return guarded([&] {
        need(dos, "dos");
        need(out, "out");
        *out = dos->d.values.size();
    });
}

kpmdos_status kpmdos_dos_point(const kpmdos_dos *dos, size_t j, double *x,
                               double *g, double *weight) {
    return guarded([&] {
        need(dos, "dos");
        if (j >= dos->d.values.size()) {
            throw InvalidArgument("grid index out of range");
        }
        if (x != nullptr) {
            *x = dos->d.energies[j];
        }
        if (g != nullptr) {
            *g = dos->d.values[j];
        }
        if (weight != nullptr) {
            *weight = dos->d.weights[j];
        }
    });
}

kpmdos_status kpmdos_dos_serialize(const kpmdos_dos *dos, kpmdos_format format,
                                   char **out) {
    return guarded([&] {
        need(dos, "dos");
        need(out, "out");
        if (format == KPMDOS_FORMAT_JSON) {
            *out = dup_string(kpmdos::dos_to_json(dos->d));
        } else if (format == KPMDOS_FORMAT_CSV) {
            *out = dup_string(kpmdos::dos_to_csv(dos->d));
        } else {
            throw InvalidArgument("unknown format");
        }
    });
}

kpmdos_status kpmdos_dos_l1(const kpmdos_dos *a, const kpmdos_dos *b, double *out) {
    return guarded([&] {
        need(a, "a");
        need(b, "b");
        need(out, "out");
        *out = kpmdos::dos_compare(a->d, b->d).l1;
    });
}

kpmdos_status kpmdos_thermo_csv(const kpmdos_dos *dos, const double *betas,
                                size_t n_betas, kpmdos_units units, char **out,
                                int *energy_monotone, size_t *clipped_points) {
    return guarded([&] {
        need(dos, "dos");
        need(betas, "betas");
        need(out, "out");
        kpmdos::ThermoOptions opts;
        if (units == KPMDOS_UNITS_PHYSICAL) {
            if (!dos->d.rescale || dos->d.n_qubits == 0) {
                throw kpmdos::DomainError(
                    "physical units need the rescale record and qubit count");
            }
            opts.units = kpmdos::EnergyUnits::Physical;
            opts.rescale = dos->d.rescale;
            opts.n_qubits = dos->d.n_qubits;
        } else if (units != KPMDOS_UNITS_RESCALED) {
            throw InvalidArgument("unknown units");
        }
        const auto t = kpmdos::thermodynamics(
            dos->d, std::span<const double>(betas, n_betas), opts);
        *out = dup_string(kpmdos::thermo_to_csv(t));
        if (energy_monotone != nullptr) {
            *energy_monotone = t.energy_monotone ? 1 : 0;
        }
        if (clipped_points != nullptr) {
            *clipped_points = t.clipped_points;
        }
    });
}

kpmdos_status kpmdos_entropy_bench_csv(size_t L, const kpmdos_random_params *random,
                                       size_t n_states, size_t max_layers,
                                       char **out) {
    return guarded([&] {
        need(random, "random");
        need(out, "out");
        const auto rows =
            kpmdos::entropy_benchmark(to_spec(L, *random), n_states, max_layers);
        std::ostringstream os;
        os << "layers,two_qubit_gates,mean,min,max,page";
        for (std::size_t k = 0; k < n_states; ++k) {
            os << ",seed_" << k;
        }
        os << '\n';
        const std::string page = kpmdos::format_number(kpmdos::page_value(L));
        for (const auto &r : rows) {
            os << r.layers << ',' << r.two_qubit_gates << ','
               << kpmdos::format_number(r.mean) << ','
               << kpmdos::format_number(r.min) << ','
               << kpmdos::format_number(r.max) << ',' << page;
            for (double v : r.per_seed) {
                os << ',' << kpmdos::format_number(v);
            }
            os << '\n';
        }
        *out = dup_string(os.str());
    });
}

kpmdos_status kpmdos_trace_bench_csv(const size_t *Ls, size_t n_Ls,
                                     const kpmdos_model_params *couplings,
                                     const kpmdos_random_params *random,
                                     size_t R, size_t trials, char **out,
                                     double *log2_slope) {
    return guarded([&] {
        need(Ls, "Ls");
        need(couplings, "couplings");
        need(random, "random");
        need(out, "out");
        const std::vector<std::size_t> sizes(Ls, Ls + n_Ls);
        if (sizes.empty()) {
            throw InvalidArgument("no system sizes given");
        }
        const auto rows = kpmdos::trace_benchmark(
            sizes, to_couplings(*couplings), to_spec(sizes.front(), *random), R,
            trials);
        std::ostringstream os;
        os << "L,R,mean_relative_error";
        for (std::size_t k = 0; k < trials; ++k) {
            os << ",trial_" << k;
        }
        os << '\n';
        std::vector<double> x;
        std::vector<double> y;
        for (const auto &r : rows) {
            os << r.L << ',' << r.R << ','
               << kpmdos::format_number(r.mean_relative_error);
            for (double v : r.per_trial) {
                os << ',' << kpmdos::format_number(v);
            }
            os << '\n';
            x.push_back(static_cast<double>(r.L));
            y.push_back(r.mean_relative_error);
        }
        if (log2_slope != nullptr) {
            *log2_slope = rows.size() >= 2 ? kpmdos::log2_slope(x, y) : 0.0;
        }
        *out = dup_string(os.str());
    });
}

kpmdos_status kpmdos_cost_json(const kpmdos_model *model,
                               const kpmdos_moment_params *params, char **out) {
    return guarded([&] {
        need(model, "model");
        need(params, "params");
        need(out, "out");
        const auto random = to_spec(model->h.n_qubits, params->random);
        nlohmann::json rows = nlohmann::json::array();
        std::uint64_t total_num = 0;
        std::uint64_t total_den = 1;
        for (std::size_t n = 0; n <= params->M; ++n) {
            const auto plan = kpmdos::MomentCircuitPlan::make(
                n, params->K, params->steps, random);
            const auto c = kpmdos::hqc_cost(
                kpmdos::build_moment_circuit(plan, model->r.h_tilde), params->shots);
            auto row = nlohmann::json::parse(kpmdos::cost_to_json(c));
            row["n"] = n;
            rows.push_back(row);
            // Running sum of reduced fractions.
            const std::uint64_t num = total_num * c.hqc_den + c.hqc_num * total_den;
            const std::uint64_t den = total_den * c.hqc_den;
            const std::uint64_t g = std::gcd(num, den);
            total_num = num / g;
            total_den = den / g;
        }
        nlohmann::json j;
        j["shots"] = params->shots;
        j["circuits"] = rows;
        j["total_hqc_numerator"] = total_num;
        j["total_hqc_denominator"] = total_den;
        j["total_hqc"] = static_cast<double>(total_num) /
                         static_cast<double>(total_den);
        j["replicas"] = params->R;
        j["total_hqc_all_replicas"] =
            static_cast<double>(params->R) * static_cast<double>(total_num) /
            static_cast<double>(total_den);
        *out = dup_string(j.dump(2) + "\n");
    });
}

kpmdos_status kpmdos_hqc(uint64_t n_1q, uint64_t n_2q, uint64_t n_m, uint64_t shots,
                         uint64_t *numerator, uint64_t *denominator) {
    return guarded([&] {
        need(numerator, "numerator");
        need(denominator, "denominator");
        const auto c = kpmdos::hqc_cost(n_1q, n_2q, n_m, shots);
        *numerator = c.hqc_num;
        *denominator = c.hqc_den;
    });
}

} // extern "C"
