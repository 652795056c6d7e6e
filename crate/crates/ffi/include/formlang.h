#ifndef FORMLANG_H
#define FORMLANG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * How a nondeterministic automaton accepts.
 */
typedef enum FlMode {
  FL_MODE_EXISTS = 0,
  FL_MODE_FOR_ALL = 1,
  FL_MODE_PARITY = 2,
} FlMode;

/**
 * Result of a call. `FL_STATUS_OK` and `FL_STATUS_NO` are the two answers
 * of a yes/no question; everything from `FL_STATUS_INPUT` up is a failure.
 */
typedef enum FlStatus {
  FL_STATUS_OK = 0,
  FL_STATUS_NO = 1,
  FL_STATUS_INPUT = 2,
  FL_STATUS_STRUCTURE = 3,
  FL_STATUS_PARSE = 4,
  FL_STATUS_RESOURCE = 5,
  FL_STATUS_DIVERGENCE = 6,
  FL_STATUS_VALIDATION = 7,
  FL_STATUS_JSON = 8,
  FL_STATUS_IO = 9,
  FL_STATUS_NULL_ARGUMENT = 10,
  FL_STATUS_INVALID_UTF8 = 11,
  FL_STATUS_PANIC = 12,
} FlStatus;

/**
 * A finite automaton, deterministic or not.
 */
typedef struct FlAutomaton FlAutomaton;

/**
 * A grammar of any class.
 */
typedef struct FlGrammar FlGrammar;

/**
 * A pushdown automaton.
 */
typedef struct FlPda FlPda;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null after a
 * successful call. The pointer stays valid until the next call.
 */
const char *fl_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void fl_string_free(char *s);

/**
 * Parses a `dfa` or `nfa` document.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a writable pointer.
 */
enum FlStatus fl_automaton_from_json(const char *json, struct FlAutomaton **out);

/**
 * Serializes an automaton to its JSON document.
 *
 * # Safety
 * `m` must be a live handle and `out` a writable pointer.
 */
enum FlStatus fl_automaton_to_json(const struct FlAutomaton *m, char **out);

/**
 * Number of states, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t fl_automaton_num_states(const struct FlAutomaton *m);

/**
 * Runs the automaton on `word`. Deterministic automata ignore `mode`.
 * Returns `FL_STATUS_OK` on acceptance and `FL_STATUS_NO` on rejection.
 *
 * # Safety
 * `m` must be a live handle and `word` a nul-terminated string.
 */
enum FlStatus fl_automaton_run(const struct FlAutomaton *m, const char *word, enum FlMode mode);

/**
 * Subset construction under the given acceptance mode.
 *
 * # Safety
 * `m` must be a live handle and `out` a writable pointer.
 */
enum FlStatus fl_automaton_determinize(const struct FlAutomaton *m,
                                       enum FlMode mode,
                                       struct FlAutomaton **out);

/**
 * Minimal equivalent DFA. The input must be deterministic.
 *
 * # Safety
 * `m` must be a live handle and `out` a writable pointer.
 */
enum FlStatus fl_automaton_minimize(const struct FlAutomaton *m, struct FlAutomaton **out);

/**
 * Decides language equality. Nondeterministic inputs are determinized
 * under existential acceptance first. On `FL_STATUS_NO`, a shortest word
 * accepted by exactly one of the two is stored in `*witness` when
 * `witness` is not null.
 *
 * # Safety
 * `a` and `b` must be live handles; `witness` must be null or writable.
 */
enum FlStatus fl_automaton_equivalent(const struct FlAutomaton *a,
                                      const struct FlAutomaton *b,
                                      char **witness);

/**
 * Compiles a regular expression to an ε-NFA. When `alphabet` is not null,
 * its characters are added to the automaton's alphabet.
 *
 * # Safety
 * `pattern` must be a nul-terminated string, `alphabet` null or one, and
 * `out` a writable pointer.
 */
enum FlStatus fl_regex_compile(const char *pattern, const char *alphabet, struct FlAutomaton **out);

/**
 * Releases an automaton. Null is ignored.
 *
 * # Safety
 * `m` must come from this library and must not be used afterwards.
 */
void fl_automaton_free(struct FlAutomaton *m);

/**
 * Parses a `grammar` document.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a writable pointer.
 */
enum FlStatus fl_grammar_from_json(const char *json, struct FlGrammar **out);

/**
 * Serializes a grammar to its JSON document.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum FlStatus fl_grammar_to_json(const struct FlGrammar *g, char **out);

/**
 * Membership of `word`. Context-free grammars go through CYK; the others
 * use a bounded search over sentential forms, which may report
 * `FL_STATUS_RESOURCE`.
 *
 * # Safety
 * `g` must be a live handle and `word` a nul-terminated string.
 */
enum FlStatus fl_grammar_member(const struct FlGrammar *g, const char *word);

/**
 * Equivalent grammar in Chomsky normal form.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum FlStatus fl_grammar_to_cnf(const struct FlGrammar *g, struct FlGrammar **out);

/**
 * Number of words of each length `0..=max_len`, written to `*out` as
 * space-separated decimal integers. Context-free grammars outside Chomsky
 * normal form are converted first.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum FlStatus fl_grammar_count(const struct FlGrammar *g, size_t max_len, char **out);

/**
 * Releases a grammar. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and must not be used afterwards.
 */
void fl_grammar_free(struct FlGrammar *g);

/**
 * Parses a `pda` document.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a writable pointer.
 */
enum FlStatus fl_pda_from_json(const char *json, struct FlPda **out);

/**
 * Searches for an accepting run on `word`. A zero `max_stack` or
 * `max_configs` picks the default for the word's length. A search cut off
 * by either limit reports `FL_STATUS_RESOURCE`.
 *
 * # Safety
 * `p` must be a live handle and `word` a nul-terminated string.
 */
enum FlStatus fl_pda_run(const struct FlPda *p,
                         const char *word,
                         size_t max_stack,
                         size_t max_configs);

/**
 * Releases a pushdown automaton. Null is ignored.
 *
 * # Safety
 * `p` must come from this library and must not be used afterwards.
 */
void fl_pda_free(struct FlPda *p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FORMLANG_H */
