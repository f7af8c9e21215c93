/*
 * C interface to the fsm library.
 *
 * Every object is an opaque handle owned by the caller and released with the
 * matching *_free function. Functions return FSM_OK or an error status; the
 * message for the last failure on the calling thread is available from
 * fsm_last_error(). Strings returned through char** outputs are allocated by
 * the library and released with fsm_string_free().
 */
#ifndef FSM_FSM_H
#define FSM_FSM_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(FSM_BUILDING_LIBRARY)
#    define FSM_API __declspec(dllexport)
#  else
#    define FSM_API __declspec(dllimport)
#  endif
#else
#  define FSM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fsm_status {
  FSM_OK = 0,
  FSM_ERR_INVALID_ARGUMENT = 1,
  FSM_ERR_PARSE = 2,
  FSM_ERR_IO = 3,
  FSM_ERR_NOT_FOUND = 4,
  FSM_ERR_INVALID_MACHINE = 5,
  FSM_ERR_ALPHABET_MISMATCH = 6,
  FSM_ERR_UNKNOWN_STATE = 7,
  FSM_ERR_DETERMINISM_REQUIRED = 8,
  FSM_ERR_OUTPUT_KIND_MISMATCH = 9,
  FSM_ERR_CONNECTION_RANGE = 10,
  FSM_ERR_INTERNAL = 99
} fsm_status;

typedef enum fsm_machine_kind {
  FSM_RECOGNIZER = 0,
  FSM_MOORE = 1
} fsm_machine_kind;

/* Which output map encode-style conversions attach. */
typedef enum fsm_output_view {
  FSM_VIEW_ENABLED = 0, /* set of symbols with an outgoing transition */
  FSM_VIEW_ACCEPT = 1   /* accept bit */
} fsm_output_view;

typedef struct fsm_document fsm_document;
typedef struct fsm_machine fsm_machine;
typedef struct fsm_outcomes fsm_outcomes;

FSM_API const char* fsm_version(void);
FSM_API const char* fsm_last_error(void);
FSM_API const char* fsm_status_string(fsm_status status);
FSM_API void fsm_string_free(char* s);

/* Documents */
FSM_API fsm_status fsm_document_parse(const char* text, fsm_document** out);
FSM_API fsm_status fsm_document_load(const char* path, fsm_document** out);
FSM_API void fsm_document_free(fsm_document* doc);
FSM_API size_t fsm_document_size(const fsm_document* doc);
/* Copies machine `index` out of the document. */
FSM_API fsm_status fsm_document_get(const fsm_document* doc, size_t index, fsm_machine** out);
FSM_API fsm_status fsm_document_find(const fsm_document* doc, const char* name,
                                     fsm_machine** out);
FSM_API fsm_status fsm_document_serialize(const fsm_document* doc, char** out);

/* Machines */
FSM_API void fsm_machine_free(fsm_machine* m);
FSM_API fsm_machine_kind fsm_machine_get_kind(const fsm_machine* m);
FSM_API const char* fsm_machine_name(const fsm_machine* m);
FSM_API size_t fsm_machine_state_count(const fsm_machine* m);
FSM_API size_t fsm_machine_transition_count(const fsm_machine* m);
FSM_API fsm_status fsm_machine_serialize(const fsm_machine* m, char** out);
FSM_API fsm_status fsm_machine_to_dot(const fsm_machine* m, char** out);

/* Recognizer constructions. `word` holds `length` symbol names. */
FSM_API fsm_status fsm_accepts(const fsm_machine* m, const char* const* word, size_t length,
                               int* accepted);
FSM_API fsm_status fsm_determinize(const fsm_machine* m, fsm_machine** out);
FSM_API fsm_status fsm_complete(const fsm_machine* m, fsm_machine** out);
FSM_API fsm_status fsm_minimize(const fsm_machine* m, fsm_machine** out);
FSM_API fsm_status fsm_regex_to_nfa(const char* expression, const char* const* alphabet,
                                    size_t alphabet_size, fsm_machine** out);
FSM_API fsm_status fsm_nfa_to_regex(const fsm_machine* m, char** out);

/* Encodings. Recognizers take either view; Moore machines are copied as-is. */
FSM_API fsm_status fsm_encode_moore(const fsm_machine* m, fsm_output_view view,
                                    fsm_machine** out);

/* Equivalences. Recognizers are compared through their accept bit.
 * counterexample: comma-joined symbols of a shortest distinguishing word,
 * set only when inequivalent (may be NULL). */
FSM_API fsm_status fsm_language_equivalent(const fsm_machine* a, const fsm_machine* b,
                                           int* equivalent, char** counterexample);
/* Does `b` cover `a`; stuck_state is set only when it does not (may be NULL). */
FSM_API fsm_status fsm_covers(const fsm_machine* b, const fsm_machine* a, int* covers,
                              char** stuck_state);
FSM_API fsm_status fsm_bisimilar(const fsm_machine* a, const fsm_machine* b, int* bisimilar,
                                 size_t* block_of_a_initial, size_t* block_of_b_initial);

/* Button experiments; recognizers are encoded with the enabled-actions view. */
FSM_API fsm_status fsm_experiment(const fsm_machine* m, const char* const* presses,
                                  size_t length, fsm_outcomes** out);
FSM_API void fsm_outcomes_free(fsm_outcomes* outcomes);
FSM_API size_t fsm_outcomes_size(const fsm_outcomes* outcomes);
/* Outcomes are sorted: success first, then blocked by presses completed. */
FSM_API fsm_status fsm_outcomes_get(const fsm_outcomes* outcomes, size_t index, int* success,
                                    size_t* presses_completed);

/* Products; recognizers are encoded with the enabled-actions view. */
FSM_API fsm_status fsm_product_experimenter(const fsm_machine* process,
                                            const char* const* presses, size_t length,
                                            fsm_machine** out);
FSM_API fsm_status fsm_product_sync(const fsm_machine* const* machines, size_t count,
                                    fsm_machine** out);

#ifdef __cplusplus
}
#endif

#endif /* FSM_FSM_H */
