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
/**
 * @file
 * C interface of libkpmdos.
 *
 * Every call returns a kpmdos_status. On failure the message is available
 * from kpmdos_last_error() on the calling thread until its next call.
 * Strings returned through char** are owned by the caller and released with
 * kpmdos_free_string(). Handles are released with their _destroy function,
 * which accepts NULL.
 */
#ifndef KPMDOS_KPMDOS_H
#define KPMDOS_KPMDOS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define KPMDOS_API __attribute__((visibility("default")))
#else
#define KPMDOS_API
#endif

typedef enum kpmdos_status {
    KPMDOS_OK = 0,
    KPMDOS_ERR_INVALID_ARGUMENT = 1,
    KPMDOS_ERR_DOMAIN = 2,
    KPMDOS_ERR_RESOURCE = 3,
    KPMDOS_ERR_PARSE = 4,
    KPMDOS_ERR_IO = 5,
    KPMDOS_ERR_INTERNAL = 6
} kpmdos_status;

typedef enum kpmdos_method {
    KPMDOS_METHOD_ED = 0,
    KPMDOS_METHOD_RECURSION = 1,
    KPMDOS_METHOD_ARCCOS = 2,
    KPMDOS_METHOD_ST = 3,
    KPMDOS_METHOD_CIRCUIT_EXACT = 4,
    KPMDOS_METHOD_CIRCUIT_SHOTS = 5
} kpmdos_method;

typedef enum kpmdos_scheme {
    KPMDOS_SCHEME_PAR = 0,
    KPMDOS_SCHEME_SEQ = 1,
    KPMDOS_SCHEME_RIC = 2
} kpmdos_scheme;

typedef enum kpmdos_kernel {
    KPMDOS_KERNEL_JACKSON = 0,
    KPMDOS_KERNEL_DIRICHLET = 1
} kpmdos_kernel;

typedef enum kpmdos_format { KPMDOS_FORMAT_CSV = 0, KPMDOS_FORMAT_JSON = 1 } kpmdos_format;

typedef enum kpmdos_units { KPMDOS_UNITS_RESCALED = 0, KPMDOS_UNITS_PHYSICAL = 1 } kpmdos_units;

typedef struct kpmdos_model kpmdos_model;
typedef struct kpmdos_moments kpmdos_moments;
typedef struct kpmdos_dos kpmdos_dos;

/** Staggered XYZ ring and its Chebyshev window margin. */
typedef struct kpmdos_model_params {
    size_t L;
    double jx;
    double jy;
    double jz;
    double lambda;
    double epsilon;
} kpmdos_model_params;

typedef struct kpmdos_random_params {
    kpmdos_scheme scheme;
    size_t layers;
    size_t s;
    uint64_t seed;
} kpmdos_random_params;

typedef struct kpmdos_moment_params {
    kpmdos_method method;
    /** Highest moment index. */
    size_t M;
    /** Arc-cosine order; 0 and 1 are supported by the circuit paths. */
    size_t K;
    size_t steps;
    /** Random-state replicas. */
    size_t R;
    uint64_t shots;
    uint64_t shot_seed;
    kpmdos_random_params random;
} kpmdos_moment_params;

typedef struct kpmdos_rescale {
    double a;
    double b;
    double epsilon;
    double beta_id;
} kpmdos_rescale;

KPMDOS_API const char *kpmdos_version(void);
KPMDOS_API const char *kpmdos_last_error(void);
KPMDOS_API const char *kpmdos_status_name(kpmdos_status status);
KPMDOS_API void kpmdos_free_string(char *s);

/** Caps worker threads; 0 restores the hardware default. */
KPMDOS_API kpmdos_status kpmdos_set_threads(size_t n);
KPMDOS_API size_t kpmdos_threads(void);

/** Defaults: L = 12, Jx = 1, Jy = 1/3, Jz = lambda = 1/2, epsilon = 0.01. */
KPMDOS_API kpmdos_model_params kpmdos_model_defaults(void);
/** Defaults: ED, M = 25, K = 0, one step, R = 4, 1000 shots, Par with 5 layers. */
KPMDOS_API kpmdos_moment_params kpmdos_moment_defaults(void);

/** Builds and rescales the model (exact bounds up to 14 qubits). */
KPMDOS_API kpmdos_status kpmdos_model_create(const kpmdos_model_params *params,
                                             kpmdos_model **out);
KPMDOS_API void kpmdos_model_destroy(kpmdos_model *model);
KPMDOS_API kpmdos_status kpmdos_model_rescale(const kpmdos_model *model,
                                              kpmdos_rescale *out);
/** Pauli terms of the rescaled operator, one per line. */
KPMDOS_API kpmdos_status kpmdos_model_terms(const kpmdos_model *model, char **out);
/** Exact spectrum as CSV (index, eigenvalue, rescaled). */
KPMDOS_API kpmdos_status kpmdos_model_spectrum_csv(const kpmdos_model *model,
                                                   char **out);

KPMDOS_API kpmdos_status kpmdos_moments_compute(const kpmdos_model *model,
                                                const kpmdos_moment_params *params,
                                                kpmdos_moments **out);
KPMDOS_API kpmdos_status kpmdos_moments_parse(const char *text, kpmdos_format format,
                                              kpmdos_moments **out);
KPMDOS_API void kpmdos_moments_destroy(kpmdos_moments *moments);
KPMDOS_API kpmdos_status kpmdos_moments_count(const kpmdos_moments *moments,
                                              size_t *out);
KPMDOS_API kpmdos_status kpmdos_moments_get(const kpmdos_moments *moments, size_t n,
                                            double *value, double *std_error);
/** Copy holding moments 0..M; indices past the source are zero. */
KPMDOS_API kpmdos_status kpmdos_moments_truncate(const kpmdos_moments *moments,
                                                 size_t M, kpmdos_moments **out);
KPMDOS_API kpmdos_status kpmdos_moments_serialize(const kpmdos_moments *moments,
                                                  kpmdos_format format, char **out);

/**
 * KPM reconstruction with moments 0..M on a Chebyshev grid of
 * grid_points nodes. M must not exceed the available moments.
 */
KPMDOS_API kpmdos_status kpmdos_reconstruct(const kpmdos_moments *moments,
                                            kpmdos_kernel kernel, size_t M,
                                            size_t grid_points, kpmdos_dos **out);
/** Normalized histogram of the exact rescaled spectrum. */
KPMDOS_API kpmdos_status kpmdos_ed_histogram(const kpmdos_model *model, size_t bins,
                                             kpmdos_dos **out);
KPMDOS_API kpmdos_status kpmdos_dos_parse(const char *json, kpmdos_dos **out);
KPMDOS_API void kpmdos_dos_destroy(kpmdos_dos *dos);
KPMDOS_API kpmdos_status kpmdos_dos_size(const kpmdos_dos *dos, size_t *out);
KPMDOS_API kpmdos_status kpmdos_dos_point(const kpmdos_dos *dos, size_t j, double *x,
                                          double *g, double *weight);
KPMDOS_API kpmdos_status kpmdos_dos_serialize(const kpmdos_dos *dos,
                                              kpmdos_format format, char **out);
/** L1 distance after resampling the coarser curve onto the finer grid. */
KPMDOS_API kpmdos_status kpmdos_dos_l1(const kpmdos_dos *a, const kpmdos_dos *b,
                                       double *out);

/**
 * Thermodynamics table as CSV (beta, Z, F, E, S). Physical units need the
 * rescale record and qubit count carried by the curve.
 */
KPMDOS_API kpmdos_status kpmdos_thermo_csv(const kpmdos_dos *dos, const double *betas,
                                           size_t n_betas, kpmdos_units units,
                                           char **out, int *energy_monotone,
                                           size_t *clipped_points);

/** Half-chain entropy series with per-seed columns. */
KPMDOS_API kpmdos_status kpmdos_entropy_bench_csv(size_t L,
                                                  const kpmdos_random_params *random,
                                                  size_t n_states, size_t max_layers,
                                                  char **out);
/** Stochastic-trace relative error of the model operator versus L. */
KPMDOS_API kpmdos_status kpmdos_trace_bench_csv(const size_t *Ls, size_t n_Ls,
                                                const kpmdos_model_params *couplings,
                                                const kpmdos_random_params *random,
                                                size_t R, size_t trials, char **out,
                                                double *log2_slope);

/** HQC of the moment circuits n = 0..M for one replica, as JSON. */
KPMDOS_API kpmdos_status kpmdos_cost_json(const kpmdos_model *model,
                                          const kpmdos_moment_params *params,
                                          char **out);
/** 5 + (shots / 5000) (N_1q + 10 N_2q + 5 N_m) as a reduced fraction. */
KPMDOS_API kpmdos_status kpmdos_hqc(uint64_t n_1q, uint64_t n_2q, uint64_t n_m,
                                    uint64_t shots, uint64_t *numerator,
                                    uint64_t *denominator);

#ifdef __cplusplus
}
#endif

#endif // KPMDOS_KPMDOS_H
