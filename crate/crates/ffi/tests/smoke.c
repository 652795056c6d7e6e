#include <stdio.h>
#include <string.h>

#include "formlang.h"

static const char *NOBB =
    "{\"type\": \"dfa\", \"states\": [\"1\", \"2\", \"3\"], \"alphabet\": [\"a\", \"b\"],"
    " \"start\": \"1\", \"accepting\": [\"1\", \"2\"], \"transitions\": ["
    " {\"from\": \"1\", \"symbol\": \"a\", \"to\": [\"1\"]},"
    " {\"from\": \"1\", \"symbol\": \"b\", \"to\": [\"2\"]},"
    " {\"from\": \"2\", \"symbol\": \"a\", \"to\": [\"1\"]},"
    " {\"from\": \"2\", \"symbol\": \"b\", \"to\": [\"3\"]},"
    " {\"from\": \"3\", \"symbol\": \"a\", \"to\": [\"3\"]},"
    " {\"from\": \"3\", \"symbol\": \"b\", \"to\": [\"3\"]}]}";

int main(void) {
    FlAutomaton *m = NULL;
    if (fl_automaton_from_json(NOBB, &m) != FL_STATUS_OK) {
        fprintf(stderr, "%s\n", fl_last_error());
        return 1;
    }
    const char *words[] = {"bab", "abb"};
    for (int i = 0; i < 2; i++) {
        FlStatus s = fl_automaton_run(m, words[i], FL_MODE_EXISTS);
        printf("%s %s\n", words[i], s == FL_STATUS_OK ? "yes" : "no");
    }

    FlAutomaton *even = NULL, *odd = NULL;
    fl_regex_compile("(aa)*", NULL, &even);
    fl_regex_compile("(aaa)*", NULL, &odd);
    char *witness = NULL;
    if (fl_automaton_equivalent(even, odd, &witness) == FL_STATUS_NO) {
        printf("witness %s\n", witness);
        fl_string_free(witness);
    } else {
        fprintf(stderr, "%s\n", fl_last_error());
    }

    FlGrammar *g = NULL;
    fl_grammar_from_json(
        "{\"type\": \"grammar\", \"class\": \"cfg\", \"variables\": [\"S\"],"
        " \"terminals\": [\"(\", \")\"], \"start\": \"S\","
        " \"rules\": [{\"lhs\": [\"S\"], \"rhs\": [\"(\", \"S\", \")\", \"S\"]},"
        " {\"lhs\": [\"S\"], \"rhs\": []}]}",
        &g);
    char *counts = NULL;
    if (g && fl_grammar_count(g, 4, &counts) == FL_STATUS_OK) {
        printf("counts %s\n", counts);
        fl_string_free(counts);
    } else {
        fprintf(stderr, "%s\n", fl_last_error());
    }

    FlAutomaton *none = NULL;
    FlStatus s = fl_automaton_minimize(even, &none);
    printf("error %d\n", (int)s);

    fl_grammar_free(g);
    fl_automaton_free(even);
    fl_automaton_free(odd);
    fl_automaton_free(m);
    return 0;
}
