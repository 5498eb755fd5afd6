#ifndef CONGESTLAB_H
#define CONGESTLAB_H

/* C interface of the congestlab shared library. All functions return a
 * clab_status; on failure clab_last_error() carries a message for the calling
 * thread. Strings returned through char** are heap copies; release them with
 * clab_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CLAB_API __declspec(dllexport)
#else
#define CLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum clab_status {
  CLAB_OK = 0,
  CLAB_INVALID_ARGUMENT = 1,
  CLAB_PARSE_ERROR = 2,
  CLAB_LIMIT_EXCEEDED = 3,
  CLAB_BANDWIDTH_VIOLATION = 4,
  CLAB_INTERNAL_ERROR = 5
} clab_status;

typedef struct clab_instance clab_instance;

CLAB_API const char* clab_version(void);
/* Message of the last failure on this thread; empty string if none. */
CLAB_API const char* clab_last_error(void);
CLAB_API void clab_string_free(char* s);
CLAB_API void clab_instance_free(clab_instance* inst);

/* Builds an instance from a spec such as
 *   {"kind":"mvc","k":2,"x":{"bits":4,"hex":"9"},"y":{"bits":4,"hex":"1"}}
 *   {"kind":"colc","k":2,"c":4, ...}
 *   {"kind":"ident","k":4,"wx":[...],"wy":[...]}        (optional "w_max")
 *   {"kind":"star","n":8,"x":{"bits":18,"hex":"..."}}
 * Any kind also accepts {"random":true,"seed":N} (plus {"equal":true|false}
 * for "ident") instead of explicit inputs. */
CLAB_API clab_status clab_build(const char* spec_json, clab_instance** out);

CLAB_API clab_status clab_instance_from_json(const char* text, clab_instance** out);
CLAB_API clab_status clab_instance_to_json(const clab_instance* inst, char** out);
CLAB_API clab_status clab_instance_to_dot(const clab_instance* inst, char** out);
CLAB_API clab_status clab_instance_size(const clab_instance* inst, int32_t* nodes,
                                        int32_t* edges);

/* Communication value and exact graph property, as matched by the reduction
 * lemmas. Star instances are rejected (they encode a value, not a bit). */
CLAB_API clab_status clab_verify(const clab_instance* inst, int32_t* f_value,
                                 int32_t* property);

/* Fingerprint detection run on an identical-subgraphs instance.
 * bandwidth_bits = 0 selects the default budget; every out pointer may be
 * NULL. verdict is 1 when the two cliques were declared equal. */
CLAB_API clab_status clab_simulate_ident(const clab_instance* inst, uint64_t seed,
                                         int32_t bandwidth_bits, int32_t max_rounds,
                                         int32_t* verdict, int32_t* rounds,
                                         int64_t* total_bits, uint64_t* prime);

/* Three-way reduction check (function, oracle, distributed verdict) with cut
 * accounting, serialized as JSON. */
CLAB_API clab_status clab_reduction_report(const clab_instance* inst, uint64_t seed,
                                           int32_t bandwidth_bits, int32_t max_rounds,
                                           char** report_json);

/* One-exchange distance protocol across the instance partition; the report
 * records bit counts, the bound and whether the output matched the exact
 * distances. w_max = 0 uses the largest edge weight. */
CLAB_API clab_status clab_apsp_two_party(const clab_instance* inst, int64_t w_max,
                                         char** report_json);

/* Blackboard variant on a random connected graph with t players. */
CLAB_API clab_status clab_apsp_blackboard_random(int32_t n, int32_t t,
                                                 int32_t extra_edges, int64_t w_max,
                                                 uint64_t seed, char** report_json);

/* Lemma sweep; spec example:
 *   {"kind":"cycle8","k":3,"exhaustive":true,"max_ones_per_side":3}
 *   {"kind":"mvc","k":4,"samples":200,"seed":1} */
CLAB_API clab_status clab_check_lemma(const char* spec_json, char** report_json);

/* Built-in micro-benchmarks, serialized as a JSON array. */
CLAB_API clab_status clab_bench(uint64_t seed, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* CONGESTLAB_H */
