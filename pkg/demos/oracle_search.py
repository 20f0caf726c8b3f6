#!/usr/bin/env python3
"""The exhaustive oracle, and how fragile a close decision can be.

Alongside the pruning engine, the package ships an exact search that
enumerates complete two-layer analyses with branch-and-bound and scores
them by the same multiplicative penalty rule.  It doubles as a ground
truth for the pruning engine and as a way to inspect the runners-up.

Run:  python3 demos/oracle_search.py
"""

import wcdp
from wcdp.fixtures import path


def describe(sentence, scored):
    parts = []
    for token in sentence.tokens:
        sem = scored.relation_for(token.position, "sem")
        if sem.label in ("AG", "PAT"):
            parts.append(f"{token.form}={sem.label}")
    return "  ".join(parts)


def main():
    grammar = wcdp.load_grammar(path("toy.gram"))
    lexicon = wcdp.load_lexicon(path("toy.lex"))

    text = "Gräser fressen Pferd"
    sentence = wcdp.make_sentence(lexicon, text)
    print(f"Top analyses for {text!r} (grass eating a horse, singular):")
    for rank, scored in enumerate(wcdp.best_k(sentence, grammar, k=4), 1):
        violated = ",".join(sorted({v.constraint_id
                                    for v in scored.violations})) or "none"
        print(f"    #{rank}  {scored.score:<8g} {describe(sentence, scored)}"
              f"   violated: {violated}")

    print("\nThe canonical reading wins 0.07 to 0.06 — two selectional")
    print("violations against a doubled syntactic markedness.  One word")
    print("order change is enough to tip it over:")

    text = "Pferd fressen Gräser"
    sentence = wcdp.make_sentence(lexicon, text)
    for rank, scored in enumerate(wcdp.best_k(sentence, grammar, k=2), 1):
        print(f"    #{rank}  {scored.score:<8g} {describe(sentence, scored)}")

    print("\nThe pruning engine agrees with the oracle's best analysis on")
    print("every fixture sentence; the oracle is exponential and exists to")
    print("prove that, not to parse with.")


if __name__ == "__main__":
    main()
