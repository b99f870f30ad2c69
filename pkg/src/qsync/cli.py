"""Command-line front end.

Exit codes: 0 for success including negative verdicts (an automaton that is
merely not balanced or not synchronizing is an answer, not an error), 1 for
domain errors, 2 for usage errors. `-` reads any FILE argument from stdin.
"""

from __future__ import annotations

import argparse
import sys

from . import analysis, census, papersuite, qsim, syncword, synth
from .automaton import degree_profile, dfa_to_doc, parse_dfa, zoo
from .errors import FormatError, QsyncError
from .jsonio import SCHEMA_VERSION, dumps, loads
from .unitarize import parse_perm, perm_to_doc, unitarize


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise QsyncError(f"cannot read {path}: {exc}") from None


def _parse_pi(text: str, n: int):
    if text == "swap01":
        return None  # zoo default
    try:
        pi = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise FormatError(f"--pi must be 'swap01' or a comma-separated image list, got {text!r}") from None
    if len(pi) != n:
        raise FormatError(f"--pi lists {len(pi)} images for {n} states")
    return pi


def _parse_cut(text: str):
    cut = []
    for part in text.split(","):
        part = part.strip()
        if part.upper() == "Q":
            cut.append("Q")
        else:
            try:
                cut.append(int(part))
            except ValueError:
                raise FormatError(f"bad cut label {part!r}; use positions or Q") from None
    return cut


def _load_register_state(text: str, tol: float) -> dict:
    state = qsim.parse_state(text, tol=tol)
    behavior = qsim.classify_behavior(state)
    if behavior.schmidt_rank != 1 or behavior.register_factor is None:
        raise QsyncError("state does not factor from the automaton; no register-only state exists")
    return behavior.register_factor


def _emit(args, doc, text_lines):
    if args.output == "json":
        print(dumps(doc))
    else:
        for line in text_lines:
            print(line)


def cmd_zoo(args):
    dfa = zoo(args.name, n=args.n, pi=_parse_pi(args.pi, args.n or 4) if args.pi else None)
    doc = dfa_to_doc(dfa)
    lines = [f"{dfa.name}: {dfa.n} states over {'/'.join(dfa.alphabet)}"]
    for token, row in zip(dfa.alphabet, dfa.delta):
        lines.append(f"  {token}: {list(row)}")
    _emit(args, doc, lines)
    return 0


def cmd_balance(args):
    dfa = parse_dfa(_read_input(args.file))
    profile = degree_profile(dfa)
    doc = {
        "qsync_schema": SCHEMA_VERSION,
        "in_total": list(profile.in_total),
        "out_total": list(profile.out_total),
        "balanced": profile.balanced,
        "violations": list(profile.violations()),
    }
    lines = [
        f"in degrees : {list(profile.in_total)}",
        f"out degrees: {list(profile.out_total)}",
        f"balanced   : {profile.balanced}",
    ]
    _emit(args, doc, lines)
    return 0


def cmd_sync(args):
    dfa = parse_dfa(_read_input(args.file))
    if args.word is not None:
        if args.blocks is not None:
            raw = loads(_read_input(args.blocks))
            table = raw["blocks"] if isinstance(raw, dict) else raw
            if not isinstance(table, list) or len(table) != dfa.n:
                raise FormatError(f"blocks file must list one block id per state ({dfa.n})")
            final = syncword.synchronizes_to_class(dfa, args.word, lambda q: table[q])
        else:
            final = syncword.is_synchronizing_word(dfa, args.word)
        synchronizing = final is not None
        doc = {"qsync_schema": SCHEMA_VERSION, "synchronizing": synchronizing, "method": "verify"}
        if synchronizing:
            doc.update({"word": args.word, "final": final, "length": len(args.word)})
        lines = [f"word {args.word!r}: " + (f"synchronizes to {final}" if synchronizing else "does not synchronize")]
        _emit(args, doc, lines)
        return 0
    report = syncword.greedy_sync_word(dfa) if args.greedy else syncword.shortest_sync_word(dfa)
    if report is None:
        doc = {"qsync_schema": SCHEMA_VERSION, "synchronizing": False,
               "method": "greedy_pairs" if args.greedy else "subset_bfs"}
        _emit(args, doc, ["not synchronizing"])
        return 0
    doc = {"qsync_schema": SCHEMA_VERSION, "synchronizing": True}
    doc.update(report.to_doc())
    _emit(args, doc, [f"word {report.word!r} (length {report.length}) -> state {report.final} [{report.method}]"])
    return 0


def cmd_unitarize(args):
    dfa = parse_dfa(_read_input(args.file))
    perm = unitarize(dfa, args.mode)
    doc = perm_to_doc(perm)
    lines = [f"permutation on {2 * perm.n} pairs ({args.mode} mode)"]
    for entry in doc["map"]:
        src, dst = entry["from"], entry["to"]
        lines.append(f"  ({src['letter']},{src['state']}) -> ({dst['letter']},{dst['state']})")
    _emit(args, doc, lines)
    return 0


def cmd_simulate(args):
    perm = parse_perm(_read_input(args.perm))
    state = qsim.parse_state(_read_input(args.init), n=perm.n, tol=args.tol)
    trajectory = qsim.run(perm, state)
    behavior = qsim.classify_behavior(trajectory[-1])
    doc = {
        "qsync_schema": SCHEMA_VERSION,
        "behavior": behavior.to_doc(),
        "final_state": qsim.state_to_doc(trajectory[-1]),
    }
    if args.trajectory:
        doc["trajectory"] = [qsim.state_to_doc(s) for s in trajectory]
    lines = [f"behavior: {behavior.kind} (Schmidt rank {behavior.schmidt_rank})"]
    for text, q, amp in trajectory[-1].terms():
        lines.append(f"  |{text}>|{q}>  {amp.real:+.6f}{amp.imag:+.6f}i")
    _emit(args, doc, lines)
    return 0


def cmd_entropy(args):
    state = qsim.parse_state(_read_input(args.state), tol=args.tol)
    cut = _parse_cut(args.cut)
    report = analysis.reduced_spectrum(state, cut)
    doc = {"qsync_schema": SCHEMA_VERSION, "cut": [str(c) for c in cut]}
    doc.update(report.to_doc())
    _emit(args, doc, [
        f"cut {args.cut}: entropy {report.entropy_bits:.10f} bits, rank {report.rank}",
        f"eigenvalues: {list(report.eigenvalues)}",
    ])
    return 0


def cmd_ame(args):
    register = _load_register_state(_read_input(args.state), args.tol)
    verdict = analysis.ame_check(register, tol=args.tol if args.tol != qsim.DEFAULT_TOL else analysis.SPECTRUM_TOL)
    doc = {"qsync_schema": SCHEMA_VERSION}
    doc.update({"is_ame": verdict["is_ame"], "worst_deviation": verdict["worst_deviation"]})
    _emit(args, doc, [f"AME: {verdict['is_ame']} (worst marginal deviation {verdict['worst_deviation']:.3e})"])
    return 0


def cmd_synth(args):
    spec = synth.parse_targetspec(_read_input(args.targets))
    result = synth.synthesize(spec)
    verified = synth.verify_synthesis(result, spec)
    final = synth.run_synthesis(result, spec)
    doc = {
        "qsync_schema": SCHEMA_VERSION,
        "dfa": dfa_to_doc(result.dfa),
        "perm": perm_to_doc(result.perm),
        "branch_states": {text: state for text, state in sorted(result.branch_states.items())},
        "final_state": result.final_state,
        "level_sizes": list(result.level_sizes),
        "verified": verified,
        "output_state": qsim.state_to_doc(final),
    }
    lines = [
        f"synthesized {result.perm.n}-state automaton (levels {list(result.level_sizes)})",
        f"input word {spec.input_word!r}, final state {result.final_state}, verified: {verified}",
    ]
    _emit(args, doc, lines)
    return 0


def cmd_census(args):
    samples = args.sample
    report = census.census_report(args.n, samples=samples, seed=args.seed)
    doc = report.to_doc()
    if args.enumerate:
        total, balanced = census.enumerate_balanced(args.n)
        doc["enumeration"] = {
            "total": total,
            "balanced": balanced,
            "matches_formulas": total == report.n_dfa and balanced == report.n_qdfa,
        }
    lines = [
        f"n = {report.n}: {report.n_dfa} DFAs, {report.n_qdfa} unitarizable",
        f"fraction {float(report.f_exact):.8g} (stirling {report.f_stirling:.8g})",
    ]
    if report.sample_estimate:
        lines.append(f"sampled fraction {report.sample_estimate['fraction']:.8g} "
                     f"({report.sample_estimate['hits']}/{report.sample_estimate['samples']})")
    if args.enumerate:
        lines.append(f"enumeration: {doc['enumeration']['balanced']}/{doc['enumeration']['total']} "
                     f"(matches: {doc['enumeration']['matches_formulas']})")
    _emit(args, doc, lines)
    return 0


def cmd_paper_suite(args):
    entries = papersuite.run_suite()
    failed = [entry for entry in entries if entry["status"] == "fail"]
    doc = {
        "qsync_schema": SCHEMA_VERSION,
        "checks": entries,
        "passed": sum(entry["status"] == "pass" for entry in entries),
        "errata": sum(entry["status"] == "erratum" for entry in entries),
        "failed": len(failed),
    }
    lines = []
    for entry in entries:
        lines.append(f"[{entry['status'].upper():>7}] {entry['id']}: {entry['detail']}")
    lines.append(
        f"{doc['passed']} reproduced, {doc['errata']} documented errata, {doc['failed']} failures"
    )
    _emit(args, doc, lines)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsync",
        description="synchronizing automata, their unitarizations, and the entanglement they pump out",
    )
    parser.add_argument("--output", choices=("json", "text"), default="json")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tol", type=float, default=qsim.DEFAULT_TOL)
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("zoo", help="emit a named automaton file")
    sub.add_argument("name")
    sub.add_argument("--n", type=int, default=None)
    sub.add_argument("--pi", default=None, help="'swap01' or comma-separated images")
    sub.set_defaults(handler=cmd_zoo)

    sub = commands.add_parser("balance", help="degree profile and balance verdict")
    sub.add_argument("file")
    sub.set_defaults(handler=cmd_balance)

    sub = commands.add_parser("sync", help="find or verify synchronizing words")
    sub.add_argument("file")
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--shortest", action="store_true", default=True)
    group.add_argument("--greedy", action="store_true", default=False)
    sub.add_argument("--word", default=None, help="verify this word instead of searching")
    sub.add_argument("--blocks", default=None, help="block table file for partition mode")
    sub.set_defaults(handler=cmd_sync)

    sub = commands.add_parser("unitarize", help="construct a joint permutation")
    sub.add_argument("file")
    sub.add_argument("--mode", choices=("canonical", "eulerian"), default="canonical")
    sub.set_defaults(handler=cmd_unitarize)

    sub = commands.add_parser("simulate", help="run the quantum evolution")
    sub.add_argument("--perm", required=True)
    sub.add_argument("--init", required=True)
    sub.add_argument("--trajectory", action="store_true")
    sub.set_defaults(handler=cmd_simulate)

    sub = commands.add_parser("entropy", help="reduced spectrum over a cut")
    sub.add_argument("--state", required=True)
    sub.add_argument("--cut", required=True, help="comma-separated positions, Q = automaton")
    sub.set_defaults(handler=cmd_entropy)

    sub = commands.add_parser("ame", help="absolutely-maximally-entangled check")
    sub.add_argument("--state", required=True)
    sub.set_defaults(handler=cmd_ame)

    sub = commands.add_parser("synth", help="synthesize an automaton for a target state")
    sub.add_argument("--targets", required=True)
    sub.set_defaults(handler=cmd_synth)

    sub = commands.add_parser("census", help="count DFAs and the unitarizable fraction")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--enumerate", action="store_true")
    sub.add_argument("--sample", type=int, default=None)
    sub.set_defaults(handler=cmd_census)

    sub = commands.add_parser("paper-suite", help="reproduce every published claim")
    sub.set_defaults(handler=cmd_paper_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except QsyncError as exc:
        print(f"qsync: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
