#ifndef SIEU_H
#define SIEU_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum SieuStatus {
  SIEU_STATUS_OK = 0,
  SIEU_STATUS_NULL_ARGUMENT = 1,
  SIEU_STATUS_INVALID_UTF8 = 2,
  SIEU_STATUS_EMPTY_QUERY = 3,
  SIEU_STATUS_CONFIG = 4,
  SIEU_STATUS_RESOURCE = 5,
  SIEU_STATUS_BACKEND_UNAVAILABLE = 6,
  SIEU_STATUS_PARSE = 7,
  SIEU_STATUS_INTERNAL = 8,
} SieuStatus;

/**
 * Opaque engine handle.
 */
typedef struct SieuEngine SieuEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds an engine from a TOML config file, or from the bundled data when
 * `config_path` is null.
 *
 * # Safety
 * `config_path` must be null or a NUL-terminated string. `out` must be a
 * valid pointer; on success it receives a handle to free with
 * [`sieu_engine_free`].
 */
enum SieuStatus sieu_engine_new(const char *config_path, struct SieuEngine **out);

/**
 * Releases an engine. Null is ignored.
 *
 * # Safety
 * `engine` must be null or a handle from [`sieu_engine_new`] that has not
 * been freed.
 */
void sieu_engine_free(struct SieuEngine *engine);

/**
 * Runs the full pipeline and writes the response as JSON to `out_json`.
 * `k` is the per-query result count; 0 keeps the configured value.
 *
 * # Safety
 * `engine` must be a live handle, `query` a NUL-terminated string and
 * `out_json` a valid pointer.
 */
enum SieuStatus sieu_engine_search(const struct SieuEngine *engine,
                                   const char *query,
                                   size_t k,
                                   char **out_json);

/**
 * Runs analysis through refinement and writes the trace as JSON.
 *
 * # Safety
 * Same contract as [`sieu_engine_search`].
 */
enum SieuStatus sieu_engine_expand(const struct SieuEngine *engine,
                                   const char *query,
                                   char **out_json);

/**
 * Scores two run files (`qid\trank\turl` lines) against pooled judgments
 * (`qid\turl` lines) and writes `{rows, averages}` as JSON.
 *
 * # Safety
 * All string arguments must be NUL-terminated; `out_json` must be valid.
 */
enum SieuStatus sieu_evaluate(const char *name_a,
                              const char *run_a,
                              const char *name_b,
                              const char *run_b,
                              const char *judgments,
                              char **out_json);

/**
 * Releases a string returned through an `out_json` parameter. Null is
 * ignored.
 *
 * # Safety
 * `s` must be null or a string produced by this library, not yet freed.
 */
void sieu_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *sieu_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sieu_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIEU_H */
