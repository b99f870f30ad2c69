"""Synthesis of unitarizable automata that emit requested register states.

Construction: one automaton state per distinct suffix of the target strings
at each time level. While qubit t is processed, the branch sitting on the
node of suffix s writes s's first letter into the register and hops to the
node of the one-shorter suffix. Distinct suffixes never share a node, two
branches merge only where their next output letters differ, so the partial
map is injective and any bijective completion realizes a balanced DFA. The
target coefficients (signs, phases) live purely in the initial automaton
superposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .analysis import fidelity
from .automaton import Dfa
from .errors import FormatError
from .jsonio import SCHEMA_VERSION
from .qsim import init_joint, pack_register, run, unpack_register
from .unitarize import JointPerm, verify_realizes
from .automaton import is_balanced


@dataclass(frozen=True)
class TargetSpec:
    """Equal-length register strings with coefficients, plus the input word."""

    k: int
    terms: tuple  # ((string, complex), ...)
    input_word: str

    def __post_init__(self):
        if self.k < 1:
            raise FormatError("target strings must be nonempty")
        if not self.terms:
            raise FormatError("need at least one target term")
        seen = set()
        for text, _ in self.terms:
            if len(text) != self.k:
                raise FormatError(f"target string {text!r} has length != {self.k}")
            if text in seen:
                raise FormatError(f"duplicate target string {text!r}")
            seen.add(text)
        if len(self.input_word) != self.k:
            raise FormatError("input word length must match the target strings")
        norm_sq = sum(abs(c) ** 2 for _, c in self.terms)
        if abs(norm_sq - 1.0) > 1e-9:
            raise FormatError("target coefficients are not normalized")

    @classmethod
    def make(cls, terms, input_word: str | None = None) -> "TargetSpec":
        """Normalize coefficients and letter case; default word is all-b."""
        if isinstance(terms, dict):
            terms = terms.items()
        canonical = []
        k = None
        for text, coefficient in terms:
            packed, length = pack_register(text)
            if k is None:
                k = length
            canonical.append((unpack_register(packed, length), complex(coefficient)))
        if k is None:
            raise FormatError("need at least one target term")
        norm = math.sqrt(sum(abs(c) ** 2 for _, c in canonical))
        if norm <= 1e-12:
            raise FormatError("target coefficients are all zero")
        canonical = tuple((text, c / norm) for text, c in canonical)
        if input_word is None:
            word = "b" * k
        else:
            packed, length = pack_register(input_word)
            word = unpack_register(packed, length)
        return cls(k=k, terms=canonical, input_word=word)

    @property
    def strings(self) -> tuple[str, ...]:
        return tuple(text for text, _ in self.terms)


@dataclass(frozen=True)
class SynthResult:
    dfa: Dfa
    perm: JointPerm
    branch_states: dict  # target string -> initial automaton state
    final_state: int
    level_sizes: tuple[int, ...]


def suffix_levels(strings) -> tuple[int, ...]:
    """level_sizes[t] = number of distinct suffixes starting at position t;
    level 0 counts whole strings, level k the single empty suffix.
    """
    strings = list(strings)
    if not strings:
        raise FormatError("need at least one string")
    k = len(strings[0])
    if any(len(text) != k for text in strings):
        raise FormatError("strings must share one length")
    if len(set(strings)) != len(strings):
        raise FormatError("strings must be distinct")
    return tuple(len({text[t:] for text in strings}) for t in range(k + 1))


def synthesize(spec: TargetSpec) -> SynthResult:
    """Build the suffix-trie automaton and its joint permutation."""
    strings = spec.strings
    k = spec.k
    levels = suffix_levels(strings)

    # nodes numbered level-major, suffix-lexicographic inside a level
    node_of: dict[tuple[int, str], int] = {}
    counter = 0
    for t in range(k + 1):
        for suffix in sorted({text[t:] for text in strings}):
            node_of[(t, suffix)] = counter
            counter += 1
    total_states = counter
    final_state = node_of[(k, "")]

    letter_index = {"a": 0, "b": 1}
    images: list[tuple[int, int] | None] = [None] * (2 * total_states)
    for text in strings:
        for t in range(1, k + 1):
            source = node_of[(t - 1, text[t - 1 :])]
            in_letter = letter_index[spec.input_word[t - 1]]
            image = (letter_index[text[t - 1]], node_of[(t, text[t:])])
            slot = in_letter * total_states + source
            assert images[slot] is None or images[slot] == image
            images[slot] = image

    used_images = {image for image in images if image is not None}
    free_images = sorted(
        (letter, q)
        for letter in range(2)
        for q in range(total_states)
        if (letter, q) not in used_images
    )
    free_slots = [i for i, image in enumerate(images) if image is None]
    for slot, image in zip(free_slots, free_images):
        images[slot] = image

    perm = JointPerm(total_states, tuple(images))
    dfa = perm.to_dfa(name=f"synth[{','.join(strings)}]")
    branch_states = {text: node_of[(0, text)] for text in strings}
    return SynthResult(
        dfa=dfa,
        perm=perm,
        branch_states=branch_states,
        final_state=final_state,
        level_sizes=levels,
    )


def initial_superposition(result: SynthResult, spec: TargetSpec):
    """(state, coefficient) pairs that make the run emit the target state."""
    return [(result.branch_states[text], coefficient) for text, coefficient in spec.terms]


def run_synthesis(result: SynthResult, spec: TargetSpec):
    """End-to-end simulation; returns the final joint SparseState."""
    s0 = init_joint(spec.input_word, initial_superposition(result, spec), n=result.perm.n)
    return run(result.perm, s0)[-1]


def verify_synthesis(result: SynthResult, spec: TargetSpec, tol: float = 1e-12) -> bool:
    """Decoupled output on |final>, target fidelity 1, balanced automaton."""
    if not verify_realizes(result.perm, result.dfa):
        return False
    if not is_balanced(result.dfa):
        return False
    final = run_synthesis(result, spec)
    states = {q for (_, q) in final.amps}
    if states != {result.final_state}:
        return False
    register = {unpack_register(packed, final.k): amp for (packed, _), amp in final.amps.items()}
    return abs(fidelity(register, dict(spec.terms)) - 1.0) <= tol


# ---------------------------------------------------------------------------
# file format


def targetspec_to_doc(spec: TargetSpec) -> dict:
    return {
        "qsync_schema": SCHEMA_VERSION,
        "k": spec.k,
        "word": spec.input_word,
        "terms": [
            {"string": text, "re": c.real, "im": c.imag} for text, c in spec.terms
        ],
    }


def parse_targetspec(text: str) -> TargetSpec:
    import json

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed target file: {exc}") from None
    try:
        entries = doc["terms"]
    except (TypeError, KeyError):
        raise FormatError("target file needs a 'terms' list") from None
    terms = []
    for entry in entries:
        try:
            terms.append((entry["string"], complex(entry["re"], entry.get("im", 0.0))))
        except (TypeError, KeyError):
            raise FormatError(f"bad target term: {entry!r}") from None
    spec = TargetSpec.make(terms, doc.get("word"))
    if "k" in doc and doc["k"] != spec.k:
        raise FormatError(f"declared k = {doc['k']} does not match strings of length {spec.k}")
    return spec
