/*
 * Copyright 2026 The BBC Ledger Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the biometric-attested supply-chain ledger.
 *
 * All objects are opaque handles owned by the library; every *_free is safe
 * on NULL. Functions return BBC_OK (0) on success; on failure
 * bbc_last_error() carries a human-readable detail message for the calling
 * thread. Strings returned through char** are heap-allocated and must be
 * released with bbc_string_free.
 */

#ifndef BBC_BBC_H
#define BBC_BBC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BBC_API __declspec(dllexport)
#else
#define BBC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bbc_status {
  BBC_OK = 0,
  BBC_ERR_INVALID_ARGUMENT = 1,
  BBC_ERR_IO = 2,
  BBC_ERR_PARSE = 3,
  BBC_ERR_BAD_MAGIC = 4,
  BBC_ERR_TRUNCATED = 5,
  BBC_ERR_DUPLICATE_ACTOR = 6,
  BBC_ERR_TEMPLATE_RANGE = 7,
  BBC_ERR_KEY_MISMATCH = 8,
  BBC_ERR_UNKNOWN_ACTOR = 9,
  BBC_ERR_UNATTESTED_TX = 10,
  BBC_ERR_EMPTY_BLOCK = 11,
  BBC_ERR_VALIDATION = 12,   /* chain failed verification; see out params */
  BBC_ERR_INVALID_CHAIN = 13,
  BBC_ERR_NOT_FOUND = 14,
  BBC_ERR_AMBIGUOUS = 15,
  BBC_ERR_NOT_RETAILED = 16,
  BBC_ERR_BUDGET_EXCEEDED = 17,
  BBC_ERR_RANGE = 18,
  BBC_ERR_INTERNAL = 19
} bbc_status;

typedef struct bbc_key bbc_key;
typedef struct bbc_template bbc_template;
typedef struct bbc_registry bbc_registry;
typedef struct bbc_chain bbc_chain;
typedef struct bbc_scenario bbc_scenario;
typedef struct bbc_sim_result bbc_sim_result;

BBC_API const char* bbc_status_name(bbc_status status);

/* Detail message for the current thread's most recent failure. */
BBC_API const char* bbc_last_error(void);

BBC_API void bbc_string_free(char* s);

/* The frozen default match threshold (squared fixed-point distance). */
BBC_API uint64_t bbc_default_threshold(void);

/* --- Scrambling keys and templates ------------------------------------- */

BBC_API bbc_status bbc_key_derive(uint64_t seed, uint32_t key_id,
                                  bbc_key** out);
BBC_API bbc_status bbc_key_load(const char* path, bbc_key** out);
BBC_API bbc_status bbc_key_save(const bbc_key* key, const char* path);
BBC_API void bbc_key_free(bbc_key* key);

BBC_API bbc_status bbc_template_load(const char* path, bbc_template** out);
BBC_API void bbc_template_free(bbc_template* tpl);

/* --- Actor registry ----------------------------------------------------- */

BBC_API bbc_status bbc_registry_create(bbc_registry** out);
BBC_API bbc_status bbc_registry_load(const char* path, bbc_registry** out);
BBC_API bbc_status bbc_registry_save(const bbc_registry* registry,
                                     const char* path);
/* role: "FARMER" | "PROCESSOR" | "SHIPPER" | "RETAILER". The raw template
 * is scrambled under `key` and not retained. */
BBC_API bbc_status bbc_registry_enroll(bbc_registry* registry,
                                       uint32_t actor_id, const char* role,
                                       const bbc_template* tpl,
                                       const bbc_key* key);
BBC_API void bbc_registry_free(bbc_registry* registry);

/* --- Scenario simulation ------------------------------------------------- */

BBC_API bbc_status bbc_scenario_load(const char* path, bbc_scenario** out);
BBC_API void bbc_scenario_free(bbc_scenario* scenario);

/* Runs to quiescence. Returns BBC_ERR_BUDGET_EXCEEDED when max_ticks was
 * hit with work pending; a partial result is still produced. */
BBC_API bbc_status bbc_sim_run(const bbc_scenario* scenario,
                               bbc_sim_result** out);
BBC_API bbc_status bbc_sim_summary_json(const bbc_sim_result* result,
                                        char** out_json);
BBC_API bbc_status bbc_sim_chain(const bbc_sim_result* result,
                                 uint32_t node_id, bbc_chain** out);
BBC_API bbc_status bbc_sim_trace_jsonl(const bbc_sim_result* result,
                                       char** out_jsonl);
BBC_API void bbc_sim_result_free(bbc_sim_result* result);

/* --- Chains: files, verification, queries -------------------------------- */

BBC_API bbc_status bbc_chain_load(const char* path, bbc_chain** out);
BBC_API bbc_status bbc_chain_save(const bbc_chain* chain, const char* path);
BBC_API bbc_status bbc_chain_to_json(const bbc_chain* chain, char** out_json);
BBC_API bbc_status bbc_chain_from_json(const char* json_text,
                                       bbc_chain** out);
BBC_API bbc_status bbc_chain_head_hash_hex(const bbc_chain* chain,
                                           char** out_hex);

/* Full verification (hash linkage, Merkle roots, tx ids, attestation
 * re-verification). expected_head_hex optionally anchors the tip hash. On
 * BBC_ERR_VALIDATION, fail_height and fail_kind (static string) identify
 * the first failing check. */
BBC_API bbc_status bbc_chain_verify(const bbc_chain* chain,
                                    const bbc_registry* registry,
                                    uint64_t threshold,
                                    const char* expected_head_hex,
                                    uint64_t* fail_height,
                                    const char** fail_kind);

/* Custody trace as a JSON array (empty array for unknown items). */
BBC_API bbc_status bbc_chain_trace_json(const bbc_chain* chain,
                                        const bbc_registry* registry,
                                        uint64_t threshold,
                                        const char* item_id, char** out_json);

/* Ingredient-label audit as a JSON array of violations. */
BBC_API bbc_status bbc_chain_audit_json(const bbc_chain* chain,
                                        const bbc_registry* registry,
                                        uint64_t threshold,
                                        const char* item_id, char** out_json);

/* Responsible actor for (item, stage). BBC_ERR_AMBIGUOUS reports all
 * candidate locations via out_candidates_json. */
BBC_API bbc_status bbc_chain_responsible_actor(
    const bbc_chain* chain, const bbc_registry* registry, uint64_t threshold,
    const char* item_id, const char* stage, uint32_t* out_actor_id,
    char** out_candidates_json);

BBC_API void bbc_chain_free(bbc_chain* chain);

/* XORs one byte (with 0x01) inside block `block_index` of a chain file, at
 * `offset` relative to that block's first byte. Demo of tamper evidence. */
BBC_API bbc_status bbc_tamper_chain_file(const char* path,
                                         uint64_t block_index,
                                         uint64_t offset,
                                         uint8_t* out_before,
                                         uint8_t* out_after);

#ifdef __cplusplus
}
#endif

#endif /* BBC_BBC_H */
