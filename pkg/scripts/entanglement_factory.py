#!/usr/bin/env python3
"""Synthesize automata for a few entanglement targets and verify the output.

Shows the full pipeline: target terms -> suffix-trie automaton -> joint
permutation -> exact simulation -> entropy / AME verification. Add your own
targets with --string (repeatable, e.g. --string aab --string +i*aba).
"""

import argparse
import math

from qsync.analysis import ame_check, factor_spectators
from qsync.qsim import unpack_register
from qsync.synth import TargetSpec, run_synthesis, synthesize, verify_synthesis


def builtin_specs():
    w = 1 / math.sqrt(3)
    s = 1 / (2 * math.sqrt(2))
    return {
        "bell": TargetSpec.make({"aa": 1, "bb": 1}, "aa"),
        "ghz3": TargetSpec.make({"aaa": 1, "bbb": 1}, "aaa"),
        "w3": TargetSpec.make({"aab": w, "aba": w, "baa": w}, "aaa"),
        "ame5": TargetSpec.make(
            {
                "AAAAA": s, "AAABB": s, "ABBAA": s, "BBABA": s,
                "ABBBB": -s, "BBAAB": s, "BABBA": s, "BABAB": -s,
            },
            "BBBBB",
        ),
    }


def parse_term(raw):
    # formats: 'aab', '-aab', '+i*aab', '0.5*aab'
    if "*" in raw:
        coefficient, text = raw.split("*", 1)
        coefficient = coefficient.replace("i", "j")
        return text, complex(coefficient)
    if raw.startswith("-"):
        return raw[1:], -1.0
    return raw.lstrip("+"), 1.0


def describe(name, spec):
    result = synthesize(spec)
    final = run_synthesis(result, spec)
    verified = verify_synthesis(result, spec)
    print(f"== {name}: {result.perm.n}-state automaton, word {spec.input_word!r}, "
          f"levels {list(result.level_sizes)}, verified={verified}")
    register = {unpack_register(p, final.k): amp for (p, _), amp in final.amps.items()}
    for text, amp in sorted(register.items()):
        print(f"   |{text}>  {amp.real:+.4f}{amp.imag:+.4f}i")
    split = factor_spectators(register)
    if split["spectators"]:
        print(f"   spectators: {split['spectators']}")
    if final.k >= 2:
        verdict = ame_check(register)
        print(f"   half-cut uniformity deviation {verdict['worst_deviation']:.2e} "
              f"-> AME: {verdict['is_ame']}")
    print()


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--string", action="append", default=[],
                        help="target term, repeatable; e.g. aab, -bba, 0.5*abb")
    parser.add_argument("--word", default=None, help="input word (default all-b)")
    args = parser.parse_args()

    if args.string:
        terms = dict(parse_term(raw) for raw in args.string)
        describe("custom", TargetSpec.make(terms, args.word))
    else:
        for name, spec in builtin_specs().items():
            describe(name, spec)


if __name__ == "__main__":
    main()
