/* Copyright 2026 SKECE contributors. Licensed under the Apache License,
 * Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0 */

/* C interface to the SKECE key-extraction library.
 *
 * Objects are opaque and owned by the caller once returned; release each with
 * its _free function. Every fallible call returns a skece_status; on failure
 * skece_last_error() describes the problem for the calling thread. */

#ifndef SKECE_SKECE_H
#define SKECE_SKECE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SKECE_API __declspec(dllexport)
#elif defined(SKECE_BUILDING_LIBRARY)
#define SKECE_API __attribute__((visibility("default")))
#else
#define SKECE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum skece_status {
  SKECE_OK = 0,
  SKECE_ERR_INVALID_ARGUMENT = 1,
  SKECE_ERR_PARSE = 2,
  SKECE_ERR_IO = 3,
  SKECE_ERR_PROTOCOL = 4,
  SKECE_ERR_INSUFFICIENT_MATERIAL = 5,
  SKECE_ERR_DESYNC = 6,
  SKECE_ERR_INTERNAL = 99
} skece_status;

SKECE_API const char* skece_version(void);
/* Short lowercase name, e.g. "parse". */
SKECE_API const char* skece_status_name(skece_status status);
/* Message of the last failure on this thread; "" if none. */
SKECE_API const char* skece_last_error(void);

/* Least r with 1 - 2^-r >= gamma; -1 when gamma is outside (0,1). */
SKECE_API int skece_checking_length(double gamma);

/* ---- scenarios and traces ---- */

typedef struct skece_scenario skece_scenario;
typedef struct skece_traces skece_traces;

/* A preset letter "A".."F" or the path of a scenario JSON file. */
SKECE_API skece_status skece_scenario_load(const char* preset_or_path, skece_scenario** out);
SKECE_API skece_status skece_scenario_set_seed(skece_scenario* s, uint64_t seed);
SKECE_API skece_status skece_scenario_set_probe_count(skece_scenario* s, size_t probes);
SKECE_API skece_status skece_scenario_set_eve_correlation(skece_scenario* s, double rho);
/* Writes NUL-terminated JSON into buf when it fits; *needed gets the size
 * including the terminator either way. */
SKECE_API skece_status skece_scenario_to_json(const skece_scenario* s, char* buf, size_t cap,
                                              size_t* needed);
SKECE_API void skece_scenario_free(skece_scenario* s);

SKECE_API skece_status skece_simulate(const skece_scenario* s, skece_traces** out);
/* alice.csv, bob.csv and eve.csv inside an existing directory. */
SKECE_API skece_status skece_traces_save(const skece_traces* t, const char* dir);
/* eve_path may be NULL; Eve's trace is then empty. */
SKECE_API skece_status skece_traces_load(const char* alice_path, const char* bob_path,
                                         const char* eve_path, skece_traces** out);
SKECE_API size_t skece_traces_subcarriers(const skece_traces* t);
SKECE_API size_t skece_traces_length(const skece_traces* t);
SKECE_API void skece_traces_free(skece_traces* t);

/* ---- key agreement ---- */

typedef struct skece_params {
  double alpha;
  double gamma;
  unsigned theta;
  size_t key_length;
  unsigned max_rounds;
  uint64_t seed;
  int circular_metric; /* nonzero: min(d, theta - d) difference degree */
} skece_params;

SKECE_API void skece_params_default(skece_params* p);

typedef struct skece_agreement skece_agreement;

typedef enum skece_direction {
  SKECE_ALICE_TO_BOB = 0,
  SKECE_BOB_TO_ALICE = 1,
  SKECE_BOTH = 2
} skece_direction;

SKECE_API skece_status skece_agree(const skece_traces* t, const skece_params* p,
                                   skece_agreement** out);
SKECE_API int skece_agreement_succeeded(const skece_agreement* a);
/* "agreed", "rounds_exhausted" or "insufficient_material". */
SKECE_API const char* skece_agreement_status(const skece_agreement* a);
/* "none", "direct" or "recombination". */
SKECE_API const char* skece_agreement_matched_via(const skece_agreement* a);
SKECE_API unsigned skece_agreement_rounds(const skece_agreement* a);
SKECE_API size_t skece_agreement_key_bits(const skece_agreement* a);
/* One byte (0 or 1) per key bit; cap must hold skece_agreement_key_bits. */
SKECE_API skece_status skece_agreement_key(const skece_agreement* a, uint8_t* bits, size_t cap);
SKECE_API size_t skece_agreement_messages(const skece_agreement* a, skece_direction d);
/* Messages other than PROBE and DROP_LIST. */
SKECE_API size_t skece_agreement_reconciliation_messages(const skece_agreement* a);
SKECE_API size_t skece_agreement_bytes(const skece_agreement* a);
/* JSON lines: type, direction, length, payload hex. */
SKECE_API skece_status skece_agreement_write_transcript(const skece_agreement* a,
                                                        const char* path);
/* Pearson correlation of Eve's bits with Alice's per stream; NaN where
 * undefined. *count gets the stream count. */
SKECE_API skece_status skece_agreement_eve_correlation(const skece_agreement* a, double* out,
                                                       size_t cap, size_t* count);
SKECE_API void skece_agreement_free(skece_agreement* a);

/* ---- experiments ---- */

typedef enum skece_format { SKECE_FORMAT_CSV = 0, SKECE_FORMAT_JSON = 1 } skece_format;

typedef struct skece_experiment {
  const char* scenario; /* preset letter or JSON path; "all" runs A-F where supported */
  size_t trials;        /* 0: command default */
  uint64_t seed;
  double alpha;         /* < 0: per-command default */
  double gamma;
  unsigned theta;
  size_t key_length;    /* 0: command default */
  const char* out;      /* file, or directory for simulate; NULL writes to stdout */
  skece_format format;
} skece_experiment;

SKECE_API void skece_experiment_default(skece_experiment* e);

SKECE_API skece_status skece_run_simulate(const skece_experiment* e);
SKECE_API skece_status skece_run_extract(const skece_experiment* e);
SKECE_API skece_status skece_run_compare(const skece_experiment* e);
SKECE_API skece_status skece_run_randomness(const skece_experiment* e);
SKECE_API skece_status skece_run_attack(const skece_experiment* e);

#ifdef __cplusplus
}
#endif

#endif /* SKECE_SKECE_H */
