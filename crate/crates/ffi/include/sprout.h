#ifndef SPROUT_H
#define SPROUT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Acceptance condition type of a learned automaton.
 */
typedef enum SproutAccType {
  SPROUT_ACC_TYPE_BUCHI = 0,
  SPROUT_ACC_TYPE_GEN_BUCHI = 1,
  SPROUT_ACC_TYPE_PARITY = 2,
  SPROUT_ACC_TYPE_RABIN = 3,
} SproutAccType;

/**
 * Result of a call.
 */
typedef enum SproutStatus {
  SPROUT_STATUS_OK = 0,
  SPROUT_STATUS_NULL_POINTER = 1,
  SPROUT_STATUS_INVALID_UTF8 = 2,
  SPROUT_STATUS_PARSE_ERROR = 3,
  SPROUT_STATUS_INVALID_INPUT = 4,
  SPROUT_STATUS_UNSUPPORTED = 5,
  SPROUT_STATUS_TOO_LARGE = 6,
  SPROUT_STATUS_INTERNAL = 7,
  SPROUT_STATUS_PANIC = 8,
} SproutStatus;

/**
 * A deterministic automaton with a transition-based condition.
 */
typedef struct SproutAutomaton SproutAutomaton;

/**
 * A labeled sample of ultimately periodic words.
 */
typedef struct SproutSample SproutSample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or an empty
 * string. Valid until the next call into the library on this thread.
 */
const char *sprout_last_error(void);

/**
 * Parses a sample file.
 *
 * # Safety
 * `text` is a NUL-terminated string and `out` is a valid pointer.
 */
enum SproutStatus sprout_sample_parse(const char *text, struct SproutSample **out);

/**
 * Number of words in a sample.
 *
 * # Safety
 * `sample` is null or a live handle.
 */
size_t sprout_sample_len(const struct SproutSample *sample);

/**
 * # Safety
 * `sample` is null or a handle not yet freed.
 */
void sprout_sample_free(struct SproutSample *sample);

/**
 * Learns an automaton of the given type consistent with the sample.
 *
 * # Safety
 * `sample` is a live handle and `out` is a valid pointer.
 */
enum SproutStatus sprout_learn(const struct SproutSample *sample,
                               enum SproutAccType acc_type,
                               struct SproutAutomaton **out);

/**
 * Reads an automaton from a HOA document.
 *
 * # Safety
 * `text` is a NUL-terminated string and `out` is a valid pointer.
 */
enum SproutStatus sprout_automaton_from_hoa(const char *text, struct SproutAutomaton **out);

/**
 * Renders an automaton as a HOA document; free it with
 * `sprout_string_free`.
 *
 * # Safety
 * `automaton` is a live handle and `out` is a valid pointer.
 */
enum SproutStatus sprout_automaton_to_hoa(const struct SproutAutomaton *automaton, char **out);

/**
 * Number of states; 0 for a null handle.
 *
 * # Safety
 * `automaton` is null or a live handle.
 */
size_t sprout_automaton_num_states(const struct SproutAutomaton *automaton);

/**
 * Decides membership of a word written `u(v)`.
 *
 * # Safety
 * `automaton` is a live handle, `word` a NUL-terminated string and
 * `accepted` a valid pointer.
 */
enum SproutStatus sprout_automaton_accepts(const struct SproutAutomaton *automaton,
                                           const char *word,
                                           bool *accepted);

/**
 * Decides language equivalence. When the automata differ and
 * `counterexample` is not null, it receives a separating word that must be
 * freed with `sprout_string_free`; otherwise it is set to null.
 *
 * # Safety
 * Both handles are live, `equivalent` is a valid pointer and
 * `counterexample` is null or a valid pointer.
 */
enum SproutStatus sprout_automaton_equivalent(const struct SproutAutomaton *a,
                                              const struct SproutAutomaton *b,
                                              bool *equivalent,
                                              char **counterexample);

/**
 * # Safety
 * `automaton` is null or a handle not yet freed.
 */
void sprout_automaton_free(struct SproutAutomaton *automaton);

/**
 * # Safety
 * `s` is null or a string returned by this library and not yet freed.
 */
void sprout_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPROUT_H */
