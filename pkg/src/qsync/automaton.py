"""Deterministic finite automata over small alphabets.

A DFA is kept as one transition row per letter: ``delta[letter][state]`` is
the successor state. Rows double as the arc sets of the per-letter transition
graphs, which is the view the balance analysis (and everything downstream of
it) works with. All values here are immutable; share them freely.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import FormatError
from .jsonio import SCHEMA_VERSION, dumps

DEFAULT_ALPHABET = ("a", "b")


@dataclass(frozen=True)
class Dfa:
    """States 0..n-1, letters 0..|alphabet|-1, total transition table."""

    n: int
    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]  # delta[letter][state] -> state
    name: str | None = None
    labels: tuple[str, ...] | None = None  # cosmetic state names

    def __post_init__(self):
        if self.n < 1:
            raise FormatError(f"need at least one state, got {self.n}")
        if len(self.alphabet) < 2:
            raise FormatError("alphabet must have at least two letters")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise FormatError("alphabet letters must be distinct")
        if len(self.delta) != len(self.alphabet):
            raise FormatError(
                f"expected {len(self.alphabet)} transition rows, got {len(self.delta)}"
            )
        for letter, row in zip(self.alphabet, self.delta):
            if len(row) != self.n:
                raise FormatError(
                    f"row for letter {letter!r} has {len(row)} entries, expected {self.n}"
                )
            for q, target in enumerate(row):
                if not isinstance(target, int) or not 0 <= target < self.n:
                    raise FormatError(
                        f"transition {letter!r}[{q}] -> {target!r} is outside [0, {self.n})"
                    )
        if self.labels is not None and len(self.labels) != self.n:
            raise FormatError("labels array must name every state")

    @property
    def alphabet_size(self) -> int:
        return len(self.alphabet)

    def step(self, q: int, letter: int) -> int:
        return self.delta[letter][q]

    def letter_index(self, token: str) -> int:
        try:
            return self.alphabet.index(token)
        except ValueError:
            raise FormatError(f"letter {token!r} not in alphabet {self.alphabet}") from None


@dataclass(frozen=True)
class Word:
    """Nonempty letter-index sequence, applied left to right."""

    letters: tuple[int, ...]
    alphabet_size: int = 2

    def __post_init__(self):
        if not self.letters:
            raise FormatError("empty words cannot be applied")
        for letter in self.letters:
            if not 0 <= letter < self.alphabet_size:
                raise FormatError(f"letter index {letter} outside alphabet")

    @classmethod
    def from_text(cls, text: str, alphabet=DEFAULT_ALPHABET) -> "Word":
        lookup = {token: i for i, token in enumerate(alphabet)}
        # quantum-facing words accept the capitalized alphabet of the AME example
        for token, i in list(lookup.items()):
            lookup.setdefault(token.upper(), i)
        try:
            letters = tuple(lookup[ch] for ch in text)
        except KeyError as exc:
            raise FormatError(f"letter {exc.args[0]!r} not in alphabet {alphabet}") from None
        return cls(letters, len(alphabet))

    def text(self, alphabet=DEFAULT_ALPHABET) -> str:
        return "".join(alphabet[letter] for letter in self.letters)

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class DegreeProfile:
    """Per-state arc counts summed over every letter graph."""

    in_total: tuple[int, ...]
    out_total: tuple[int, ...]

    @property
    def balanced(self) -> bool:
        return self.in_total == self.out_total

    def violations(self) -> tuple[int, ...]:
        return tuple(q for q, (i, o) in enumerate(zip(self.in_total, self.out_total)) if i != o)


def _coerce_word(dfa: Dfa, w) -> Word:
    if isinstance(w, Word):
        return w
    return Word.from_text(w, dfa.alphabet)


def degree_profile(dfa: Dfa) -> DegreeProfile:
    in_total = [0] * dfa.n
    for row in dfa.delta:
        for target in row:
            in_total[target] += 1
    return DegreeProfile(tuple(in_total), (dfa.alphabet_size,) * dfa.n)


def is_balanced(dfa: Dfa) -> bool:
    """True iff every state's total in-degree equals the alphabet size."""
    return degree_profile(dfa).balanced


def apply_word(dfa: Dfa, w, q0: int) -> int:
    """Left-to-right fold of the transition function over `w` from `q0`."""
    if not 0 <= q0 < dfa.n:
        raise FormatError(f"start state {q0} outside [0, {dfa.n})")
    word = _coerce_word(dfa, w)
    q = q0
    for letter in word.letters:
        q = dfa.delta[letter][q]
    return q


# ---------------------------------------------------------------------------
# file format


def parse_dfa(text: str) -> Dfa:
    """Parse the JSON automaton format; rejects partial or duplicated rows."""
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed automaton file: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("automaton file must be a JSON object")
    try:
        n = doc["states"]
        alphabet = doc["alphabet"]
        transitions = doc["transitions"]
    except KeyError as exc:
        raise FormatError(f"automaton file missing key {exc.args[0]!r}") from None
    if not isinstance(n, int) or n < 1:
        raise FormatError(f"states must be a positive integer, got {n!r}")
    if not isinstance(alphabet, list) or not all(isinstance(t, str) for t in alphabet):
        raise FormatError("alphabet must be a list of letter tokens")
    if not isinstance(transitions, dict):
        raise FormatError("transitions must map each letter to a row")
    rows = []
    for token in alphabet:
        if token not in transitions:
            raise FormatError(f"missing transition row for letter {token!r}")
        row = transitions[token]
        if not isinstance(row, list):
            raise FormatError(f"transition row for {token!r} must be a list")
        rows.append(tuple(row))
    extra = set(transitions) - set(alphabet)
    if extra:
        raise FormatError(f"transition rows for unknown letters: {sorted(extra)}")
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(t, str) for t in labels):
            raise FormatError("labels must be a list of strings")
        labels = tuple(labels)
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise FormatError("name must be a string")
    return Dfa(n=n, alphabet=tuple(alphabet), delta=tuple(rows), name=name, labels=labels)


def _reject_duplicate_keys(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise FormatError(f"duplicate key {key!r} in automaton file")
        seen[key] = value
    return seen


def dfa_to_doc(dfa: Dfa) -> dict:
    doc = {"qsync_schema": SCHEMA_VERSION}
    if dfa.name is not None:
        doc["name"] = dfa.name
    doc["states"] = dfa.n
    doc["alphabet"] = list(dfa.alphabet)
    doc["transitions"] = {
        token: list(row) for token, row in zip(dfa.alphabet, dfa.delta)
    }
    if dfa.labels is not None:
        doc["labels"] = list(dfa.labels)
    return doc


def serialize_dfa(dfa: Dfa) -> str:
    return dumps(dfa_to_doc(dfa))


# ---------------------------------------------------------------------------
# zoo

ROBOT_FACINGS = ("N", "E", "S", "W")
# facing -> (dx, dy); x grows rightward, y grows downward, N decreases y
_ROBOT_MOVES = {"N": (0, -1), "E": (1, 0), "S": (0, 1), "W": (-1, 0)}
_ROBOT_LEFT = {"N": "W", "W": "S", "S": "E", "E": "N"}


def robot_state_index(x: int, y: int, facing: str) -> int:
    return (y * 3 + x) * 4 + ROBOT_FACINGS.index(facing)


def robot_cell_of(state: int) -> tuple[int, int]:
    cell = state // 4
    return cell % 3, cell // 3


def robot_cell_blocks() -> tuple[int, ...]:
    """block_of table projecting robot states to their cell id y*3+x."""
    return tuple(q // 4 for q in range(36))


def _build_robot(move_table=_ROBOT_MOVES, left_table=_ROBOT_LEFT) -> Dfa:
    row_a, row_b, labels = [], [], []
    for q in range(36):
        x, y = robot_cell_of(q)
        facing = ROBOT_FACINGS[q % 4]
        dx, dy = move_table[facing]
        nx, ny = x + dx, y + dy
        if 0 <= nx < 3 and 0 <= ny < 3:
            row_a.append(robot_state_index(nx, ny, facing))
        else:
            row_a.append(q)  # blocked at the boundary: stay put
        row_b.append(robot_state_index(x, y, left_table[facing]))
        labels.append(f"({x},{y},{facing})")
    return Dfa(
        n=36,
        alphabet=DEFAULT_ALPHABET,
        delta=(tuple(row_a), tuple(row_b)),
        name="robot",
        labels=tuple(labels),
    )


def swap01(n: int) -> tuple[int, ...]:
    if n < 2:
        raise FormatError("swap01 needs at least two states")
    return (1, 0) + tuple(range(2, n))


def example3(n: int, pi=None) -> Dfa:
    """Cycle-with-chord family: letter `a` is the reference loop 0->1->...->
    n-1->1, letter `b` is the same graph with states relabeled by `pi`.
    """
    if n < 3:
        raise FormatError(f"example3 needs n >= 3, got {n}")
    pi = tuple(pi) if pi is not None else swap01(n)
    if sorted(pi) != list(range(n)):
        raise FormatError(f"pi is not a permutation of 0..{n - 1}")
    row_a = tuple(q + 1 if q < n - 1 else 1 for q in range(n))
    # arc u->v of graph a becomes pi(u)->pi(v) in graph b
    row_b = [0] * n
    for u in range(n):
        row_b[pi[u]] = pi[row_a[u]]
    return Dfa(n=n, alphabet=DEFAULT_ALPHABET, delta=(row_a, tuple(row_b)), name=f"example3({n})")


def zoo(name: str, n: int | None = None, pi=None) -> Dfa:
    """Named automata used throughout the test corpus and the CLI."""
    if name == "example1":
        return Dfa(2, DEFAULT_ALPHABET, ((1, 1), (0, 0)), name="example1")
    if name == "example2":
        return Dfa(3, DEFAULT_ALPHABET, ((1, 2, 1), (0, 1, 1)), name="example2")
    if name == "example3":
        return example3(4 if n is None else n, pi)
    if name == "ghz4":
        # equals example3(4, pi=(0 1)(2 3)); spelled out because the quantum
        # modules treat it as a fixed reference point
        dfa = Dfa(4, DEFAULT_ALPHABET, ((1, 2, 3, 1), (3, 0, 0, 2)), name="ghz4")
        assert dfa.delta == example3(4, (1, 0, 3, 2)).delta
        return dfa
    if name == "robot":
        return _build_robot()
    raise FormatError(f"unknown zoo automaton {name!r}")
