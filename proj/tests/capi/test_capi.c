/* Copyright 2026 The kpmdos Authors.

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "kpmdos/kpmdos.h"

static int failures = 0;

#define CHECK(cond)                                                            \
    do {                                                                       \
        if (!(cond)) {                                                         \
            fprintf(stderr, "%s:%d: CHECK(%s) failed; last error: %s\n",       \
                    __FILE__, __LINE__, #cond, kpmdos_last_error());           \
            ++failures;                                                        \
        }                                                                      \
    } while (0)

static void test_errors(void) {
    kpmdos_model *m = NULL;
    kpmdos_model_params p = kpmdos_model_defaults();
    CHECK(kpmdos_model_create(NULL, &m) == KPMDOS_ERR_INVALID_ARGUMENT);
    CHECK(strstr(kpmdos_last_error(), "NULL") != NULL);
    p.L = 3;
    CHECK(kpmdos_model_create(&p, &m) == KPMDOS_ERR_DOMAIN);
    CHECK(m == NULL);
    CHECK(strlen(kpmdos_last_error()) > 0);

    kpmdos_moments *mo = NULL;
    CHECK(kpmdos_moments_parse("{", KPMDOS_FORMAT_JSON, &mo) == KPMDOS_ERR_PARSE);
    CHECK(kpmdos_moments_parse("0,x\n", KPMDOS_FORMAT_CSV, &mo) == KPMDOS_ERR_PARSE);
    CHECK(mo == NULL);

    p = kpmdos_model_defaults();
    p.L = 16;
    CHECK(kpmdos_model_create(&p, &m) == KPMDOS_OK);
    kpmdos_moment_params mp = kpmdos_moment_defaults();
    CHECK(kpmdos_moments_compute(m, &mp, &mo) == KPMDOS_ERR_RESOURCE);
    kpmdos_model_destroy(m);
    kpmdos_model_destroy(NULL);
    CHECK(strcmp(kpmdos_status_name(KPMDOS_ERR_PARSE), "parse error") == 0);
}

static void test_pipeline(void) {
    kpmdos_model_params p = kpmdos_model_defaults();
    p.L = 8;
    kpmdos_model *m = NULL;
    CHECK(kpmdos_model_create(&p, &m) == KPMDOS_OK);
    kpmdos_rescale r;
    CHECK(kpmdos_model_rescale(m, &r) == KPMDOS_OK);
    CHECK(r.b > 0.0 && r.epsilon == 0.01);

    kpmdos_moment_params mp = kpmdos_moment_defaults();
    mp.M = 30;
    kpmdos_moments *ed = NULL;
    CHECK(kpmdos_moments_compute(m, &mp, &ed) == KPMDOS_OK);
    size_t count = 0;
    double mu0 = 0.0;
    CHECK(kpmdos_moments_count(ed, &count) == KPMDOS_OK && count == 31);
    CHECK(kpmdos_moments_get(ed, 0, &mu0, NULL) == KPMDOS_OK);
    CHECK(fabs(mu0 - 1.0) < 1e-12);
    CHECK(kpmdos_moments_get(ed, 31, &mu0, NULL) == KPMDOS_ERR_INVALID_ARGUMENT);

    /* JSON round trip is exact. */
    char *json = NULL;
    CHECK(kpmdos_moments_serialize(ed, KPMDOS_FORMAT_JSON, &json) == KPMDOS_OK);
    kpmdos_moments *back = NULL;
    CHECK(kpmdos_moments_parse(json, KPMDOS_FORMAT_JSON, &back) == KPMDOS_OK);
    kpmdos_free_string(json);
    for (size_t n = 0; n < count; ++n) {
        double a = 0.0, b = 1.0;
        kpmdos_moments_get(ed, n, &a, NULL);
        kpmdos_moments_get(back, n, &b, NULL);
        CHECK(a == b);
    }

    /* Zero padding past the measured moments. */
    kpmdos_moments *padded = NULL;
    CHECK(kpmdos_moments_truncate(ed, 40, &padded) == KPMDOS_OK);
    double v = 1.0;
    CHECK(kpmdos_moments_get(padded, 40, &v, NULL) == KPMDOS_OK && v == 0.0);

    kpmdos_dos *kpm = NULL;
    kpmdos_dos *hist = NULL;
    CHECK(kpmdos_reconstruct(ed, KPMDOS_KERNEL_JACKSON, 30, 512, &kpm) == KPMDOS_OK);
    CHECK(kpmdos_reconstruct(ed, KPMDOS_KERNEL_JACKSON, 31, 512, &hist) ==
          KPMDOS_ERR_DOMAIN);
    CHECK(kpmdos_ed_histogram(m, 25, &hist) == KPMDOS_OK);
    double l1 = 1.0;
    CHECK(kpmdos_dos_l1(kpm, hist, &l1) == KPMDOS_OK);
    CHECK(l1 < 0.2);

    /* DOS JSON carries the qubit count needed for physical units. */
    CHECK(kpmdos_dos_serialize(kpm, KPMDOS_FORMAT_JSON, &json) == KPMDOS_OK);
    kpmdos_dos *kpm2 = NULL;
    CHECK(kpmdos_dos_parse(json, &kpm2) == KPMDOS_OK);
    kpmdos_free_string(json);
    const double betas[3] = {0.0, 0.5, 1.0};
    char *csv = NULL;
    int monotone = 0;
    size_t clipped = 99;
    CHECK(kpmdos_thermo_csv(kpm2, betas, 3, KPMDOS_UNITS_PHYSICAL, &csv, &monotone,
                            &clipped) == KPMDOS_OK);
    CHECK(monotone == 1);
    /* beta = 0: Z = 2^L up to quadrature error, F = -inf. */
    CHECK(strncmp(csv, "beta,Z,F,E,S\n0,", 15) == 0);
    CHECK(fabs(strtod(csv + 15, NULL) / 256.0 - 1.0) < 1e-4);
    CHECK(strstr(csv, ",-inf,") != NULL);
    kpmdos_free_string(csv);

    char *cost = NULL;
    mp.M = 3;
    CHECK(kpmdos_cost_json(m, &mp, &cost) == KPMDOS_OK);
    CHECK(strstr(cost, "\"total_hqc\"") != NULL);
    kpmdos_free_string(cost);

    kpmdos_dos_destroy(kpm2);
    kpmdos_dos_destroy(hist);
    kpmdos_dos_destroy(kpm);
    kpmdos_moments_destroy(padded);
    kpmdos_moments_destroy(back);
    kpmdos_moments_destroy(ed);
    kpmdos_model_destroy(m);
}

static void test_utilities(void) {
    uint64_t num = 0, den = 0;
    CHECK(kpmdos_hqc(100, 50, 13, 5000, &num, &den) == KPMDOS_OK);
    CHECK(num == 670 && den == 1);
    CHECK(kpmdos_set_threads(2) == KPMDOS_OK && kpmdos_threads() == 2);
    CHECK(kpmdos_set_threads(0) == KPMDOS_OK && kpmdos_threads() >= 1);
    CHECK(strlen(kpmdos_version()) > 0);

    kpmdos_random_params rp = kpmdos_moment_defaults().random;
    char *csv = NULL;
    CHECK(kpmdos_entropy_bench_csv(6, &rp, 3, 4, &csv) == KPMDOS_OK);
    CHECK(strncmp(csv, "layers,two_qubit_gates,mean,min,max,page,seed_0,seed_1,seed_2\n",
                  62) == 0);
    kpmdos_free_string(csv);

    const size_t Ls[3] = {6, 8, 10};
    kpmdos_model_params cp = kpmdos_model_defaults();
    double slope = 0.0;
    CHECK(kpmdos_trace_bench_csv(Ls, 3, &cp, &rp, 2, 4, &csv, &slope) == KPMDOS_OK);
    CHECK(slope < 0.0);
    kpmdos_free_string(csv);
}

int main(void) {
    test_errors();
    test_pipeline();
    test_utilities();
    if (failures != 0) {
        fprintf(stderr, "%d check(s) failed\n", failures);
        return 1;
    }
    printf("all C API checks passed\n");
    return 0;
}
