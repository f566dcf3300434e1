/* Copyright 2026 The oidclab Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the OpenID Connect attack lab.
 *
 * All objects are opaque and owned by the caller once returned; release them
 * with the matching *_free function. Strings returned through char** out
 * parameters are NUL-terminated, heap-allocated, and released with
 * oidclab_string_free. Every function returning oidclab_status leaves a
 * human-readable message in oidclab_last_error() on failure. That message is
 * per thread and valid until the next failing call on the same thread.
 *
 * Distinct objects may be used from different threads concurrently; a single
 * object must not be.
 */
#ifndef OIDCLAB_OIDCLAB_H_
#define OIDCLAB_OIDCLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(OIDCLAB_BUILDING_LIBRARY)
#define OIDCLAB_API __attribute__((visibility("default")))
#else
#define OIDCLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum oidclab_status {
  OIDCLAB_OK = 0,
  OIDCLAB_E_NULL_ARGUMENT = 1,
  OIDCLAB_E_INVALID_ARGUMENT = 2,
  /* Malformed JSON handed to oidclab_scenario_from_json. */
  OIDCLAB_E_PARSE = 3,
  /* The harness could not set up the requested world. */
  OIDCLAB_E_SCENARIO_PANIC = 4,
  OIDCLAB_E_INTERNAL = 5
} oidclab_status;

typedef enum oidclab_verdict {
  OIDCLAB_VERDICT_COMPROMISED = 0,
  OIDCLAB_VERDICT_BLOCKED = 1,
  OIDCLAB_VERDICT_COMPLETED_HONEST = 2
} oidclab_verdict;

typedef enum oidclab_format {
  OIDCLAB_FORMAT_JSON = 0,
  OIDCLAB_FORMAT_TEXT = 1
} oidclab_format;

typedef struct oidclab_scenario oidclab_scenario;
typedef struct oidclab_outcome oidclab_outcome;
typedef struct oidclab_matrix oidclab_matrix;

OIDCLAB_API const char* oidclab_version(void);
OIDCLAB_API const char* oidclab_last_error(void);
OIDCLAB_API const char* oidclab_status_name(oidclab_status status);
OIDCLAB_API void oidclab_string_free(char* s);

/* Scenario specs. A new spec is the honest baseline, code flow, seed 42,
 * every defense off. */
OIDCLAB_API oidclab_status oidclab_scenario_new(oidclab_scenario** out);
OIDCLAB_API oidclab_status oidclab_scenario_from_json(const char* json, oidclab_scenario** out);
OIDCLAB_API oidclab_status oidclab_scenario_to_json(const oidclab_scenario* s, char** out);
OIDCLAB_API void oidclab_scenario_free(oidclab_scenario* s);

/* "none", "token-theft-code", "token-theft-implicit", "ssrf", "injection",
 * "dos". */
OIDCLAB_API oidclab_status oidclab_scenario_set_attack(oidclab_scenario* s, const char* attack);
/* "code" or "implicit". */
OIDCLAB_API oidclab_status oidclab_scenario_set_flow(oidclab_scenario* s, const char* flow);
OIDCLAB_API oidclab_status oidclab_scenario_set_seed(oidclab_scenario* s, uint64_t seed);

/* Comma-separated origins; NULL clears the whitelist (any OP accepted). */
OIDCLAB_API oidclab_status oidclab_scenario_set_whitelist(oidclab_scenario* s, const char* urls);
/* Boolean settings by name: "endpoint_restriction", "csrf_protection",
 * "require_issuer_binding", "sanitize_userinfo", "head_check",
 * "lying_head". */
OIDCLAB_API oidclab_status oidclab_scenario_set_flag(oidclab_scenario* s, const char* name, int on);
/* 0 disables the cap. */
OIDCLAB_API oidclab_status oidclab_scenario_set_byte_cap(oidclab_scenario* s, uint64_t bytes);
/* "secret_post", "client_secret_jwt" or "private_key_jwt". */
OIDCLAB_API oidclab_status oidclab_scenario_set_client_auth_mode(oidclab_scenario* s, const char* mode);
OIDCLAB_API oidclab_status oidclab_scenario_set_payload_size(oidclab_scenario* s, uint64_t bytes);
OIDCLAB_API oidclab_status oidclab_scenario_set_adversary_domain(oidclab_scenario* s, const char* host);

/* Runs the scenario on a fresh simulated network. */
OIDCLAB_API oidclab_status oidclab_run(const oidclab_scenario* s, oidclab_outcome** out);
OIDCLAB_API oidclab_verdict oidclab_outcome_verdict(const oidclab_outcome* o);
/* COMPROMISED, BLOCKED(reason@step) or COMPLETED_HONEST. */
OIDCLAB_API oidclab_status oidclab_outcome_label(const oidclab_outcome* o, char** out);
OIDCLAB_API oidclab_status oidclab_outcome_report(const oidclab_outcome* o, oidclab_format format, char** out);
/* One JSON object per line, one line per simulated request. */
OIDCLAB_API oidclab_status oidclab_outcome_transcript_jsonl(const oidclab_outcome* o, char** out);
OIDCLAB_API uint64_t oidclab_outcome_bytes_pulled_by_client(const oidclab_outcome* o);
OIDCLAB_API void oidclab_outcome_free(oidclab_outcome* o);

/* Attack x defense table. NULL lists select all five attacks and the six
 * standard defense configs. `base` may be NULL; otherwise its payload and
 * adversary settings apply to every cell. workers == 0 uses every core. */
OIDCLAB_API oidclab_status oidclab_matrix_run(const char* const* attacks, size_t n_attacks,
                                              const char* const* defenses, size_t n_defenses,
                                              uint64_t seed, const oidclab_scenario* base,
                                              unsigned workers, oidclab_matrix** out);
OIDCLAB_API oidclab_status oidclab_matrix_report(const oidclab_matrix* m, oidclab_format format, char** out);
OIDCLAB_API void oidclab_matrix_free(oidclab_matrix* m);

#ifdef __cplusplus
}
#endif

#endif /* OIDCLAB_OIDCLAB_H_ */
