"""Permutation realizations of balanced two-letter automata.

A joint permutation acts on the 2n pairs (letter, state); its state component
must follow the automaton's transition function, which is exactly what makes
the single-step evolution a classical-basis unitary. Balance of the transition
multigraph decides existence; an Eulerian circuit of the union graph gives a
single-cycle construction, and a per-state matching gives a canonical one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automaton import Dfa, degree_profile
from .errors import (
    DisconnectedError,
    FormatError,
    GuardExceededError,
    NotBalancedError,
    WrongAlphabetError,
)
from .jsonio import SCHEMA_VERSION, dumps

BRUTE_FORCE_MAX_STATES = 8


@dataclass(frozen=True)
class JointPerm:
    """Bijection on (letter, state) pairs; pairs[letter * n + state] is the
    image pair. The same map is applied at every time step.
    """

    n: int
    pairs: tuple[tuple[int, int], ...]
    alphabet: tuple[str, ...] = ("a", "b")

    def __post_init__(self):
        if len(self.pairs) != 2 * self.n:
            raise FormatError(f"need {2 * self.n} images, got {len(self.pairs)}")
        seen = set()
        for letter, state in self.pairs:
            if not (0 <= letter < 2 and 0 <= state < self.n):
                raise FormatError(f"image ({letter}, {state}) out of range")
            seen.add((letter, state))
        if len(seen) != 2 * self.n:
            raise FormatError("image pairs are not distinct: not a permutation")

    def apply(self, letter: int, state: int) -> tuple[int, int]:
        return self.pairs[letter * self.n + state]

    def inverse(self) -> "JointPerm":
        inv = [None] * (2 * self.n)
        for idx, (letter, state) in enumerate(self.pairs):
            inv[letter * self.n + state] = divmod(idx, self.n)
        return JointPerm(self.n, tuple(inv), self.alphabet)

    def to_dfa(self, name=None) -> Dfa:
        """Extract the automaton this permutation realizes."""
        rows = tuple(
            tuple(self.pairs[letter * self.n + q][1] for q in range(self.n))
            for letter in range(2)
        )
        return Dfa(self.n, self.alphabet, rows, name=name)

    def cycles(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Disjoint cycles in canonical form: each rotated to start at its
        smallest pair, cycles sorted by starting pair.
        """
        seen = set()
        cycles = []
        for start_letter in range(2):
            for start_state in range(self.n):
                start = (start_letter, start_state)
                if start in seen:
                    continue
                cycle = []
                node = start
                while node not in seen:
                    seen.add(node)
                    cycle.append(node)
                    node = self.apply(*node)
                pivot = cycle.index(min(cycle))
                cycles.append(tuple(cycle[pivot:] + cycle[:pivot]))
        return tuple(sorted(cycles))


def _require_two_letters(dfa: Dfa):
    if dfa.alphabet not in (("a", "b"), ("A", "B")):
        raise WrongAlphabetError(
            f"permutation construction needs alphabet a/b (or A/B), got {dfa.alphabet}"
        )


def _incoming_arcs(dfa: Dfa):
    """arcs[q] = [(letter, source), ...] sorted by (letter, source)."""
    arcs = [[] for _ in range(dfa.n)]
    for letter, row in enumerate(dfa.delta):
        for source, target in enumerate(row):
            arcs[target].append((letter, source))
    return [sorted(entries) for entries in arcs]


def _check_balanced(dfa: Dfa):
    profile = degree_profile(dfa)
    if not profile.balanced:
        bad = profile.violations()
        raise NotBalancedError(
            "no permutation realization: states "
            f"{list(bad)} have in-degrees {[profile.in_total[q] for q in bad]} "
            f"instead of {dfa.alphabet_size}",
            violations=bad,
        )


def _union_connected(dfa: Dfa) -> bool:
    """Weak connectivity of the union multigraph (balance then gives the
    strong connectivity an Eulerian circuit needs).
    """
    adjacency = [set() for _ in range(dfa.n)]
    for row in dfa.delta:
        for source, target in enumerate(row):
            adjacency[source].add(target)
            adjacency[target].add(source)
    seen = {0}
    stack = [0]
    while stack:
        for neighbor in adjacency[stack.pop()]:
            if neighbor not in seen:
                seen.add(neighbor)
                stack.append(neighbor)
    return len(seen) == dfa.n


def _eulerian_circuit(dfa: Dfa) -> list[tuple[int, int]]:
    """Hierholzer on the union multigraph, arcs as (letter, source) pairs.

    Starts at state 0 and consumes out-arcs in letter order, so the circuit
    is deterministic.
    """
    unused = [[(letter, q) for letter in (1, 0)] for q in range(dfa.n)]  # stacks, a on top
    circuit: list[tuple[int, int]] = []
    path: list[tuple[int, int]] = []
    vertex_stack = [0]
    while vertex_stack:
        v = vertex_stack[-1]
        if unused[v]:
            letter, source = unused[v].pop()
            path.append((letter, source))
            vertex_stack.append(dfa.delta[letter][source])
        else:
            vertex_stack.pop()
            if path:
                circuit.append(path.pop())
    circuit.reverse()
    return circuit


def unitarize(dfa: Dfa, mode: str = "canonical") -> JointPerm:
    """Construct a joint permutation realizing `dfa`.

    canonical: per target state, incoming arcs sorted by (letter, source)
    receive output letters in alphabet order.
    eulerian: follow an Eulerian circuit of the union graph; each arc's pair
    maps to the next arc's pair, producing a single 2n-cycle.
    """
    _require_two_letters(dfa)
    _check_balanced(dfa)
    n = dfa.n
    images: list[tuple[int, int] | None] = [None] * (2 * n)
    if mode == "canonical":
        for target, arcs in enumerate(_incoming_arcs(dfa)):
            for out_letter, (letter, source) in enumerate(arcs):
                images[letter * n + source] = (out_letter, target)
    elif mode == "eulerian":
        if not _union_connected(dfa):
            raise DisconnectedError(
                "union transition graph is disconnected; no Eulerian circuit exists "
                "(canonical mode still applies)"
            )
        circuit = _eulerian_circuit(dfa)
        for i, (letter, source) in enumerate(circuit):
            nxt_letter, nxt_source = circuit[(i + 1) % len(circuit)]
            images[letter * n + source] = (nxt_letter, nxt_source)
    else:
        raise FormatError(f"unknown unitarization mode {mode!r}")
    return JointPerm(n, tuple(images), dfa.alphabet)


def verify_realizes(perm: JointPerm, dfa: Dfa) -> bool:
    """True iff `perm` is a bijection whose state components follow delta."""
    if perm.n != dfa.n or dfa.alphabet_size != 2:
        return False
    if len(set(perm.pairs)) != 2 * perm.n:
        return False
    for letter in range(2):
        for q in range(dfa.n):
            if perm.apply(letter, q)[1] != dfa.delta[letter][q]:
                return False
    return True


def exists_permutation_bruteforce(dfa: Dfa, max_states: int = BRUTE_FORCE_MAX_STATES) -> bool:
    """Backtracking existence oracle, independent of the balance criterion.

    The state component of every image is forced by delta; the search is over
    output-letter assignments subject to global injectivity.
    """
    _require_two_letters(dfa)
    if dfa.n > max_states:
        raise GuardExceededError(f"brute-force oracle guard is {max_states} states")
    slots = [(letter, q) for letter in range(2) for q in range(dfa.n)]
    used = set()

    def assign(i: int) -> bool:
        if i == len(slots):
            return True
        letter, q = slots[i]
        target = dfa.delta[letter][q]
        for out_letter in range(2):
            image = (out_letter, target)
            if image not in used:
                used.add(image)
                if assign(i + 1):
                    return True
                used.remove(image)
        return False

    return assign(0)


def ghz4_perm() -> JointPerm:
    """The single-8-cycle realization of the ghz4 automaton, reconstructed
    from its displayed three- and four-step evolutions.
    """
    n = 4
    mapping = {
        (0, 0): (0, 1),
        (0, 1): (0, 2),
        (0, 2): (0, 3),
        (0, 3): (1, 1),
        (1, 1): (1, 0),
        (1, 0): (1, 3),
        (1, 2): (0, 0),
        (1, 3): (1, 2),
    }
    return JointPerm(n, tuple(mapping[(eff, q)] for eff in range(2) for q in range(n)))


# ---------------------------------------------------------------------------
# file format


def perm_to_doc(perm: JointPerm) -> dict:
    entries = []
    for letter in range(2):
        for q in range(perm.n):
            out_letter, out_state = perm.apply(letter, q)
            entries.append(
                {
                    "from": {"letter": perm.alphabet[letter], "state": q},
                    "to": {"letter": perm.alphabet[out_letter], "state": out_state},
                }
            )
    return {"qsync_schema": SCHEMA_VERSION, "n": perm.n, "map": entries}


def serialize_perm(perm: JointPerm) -> str:
    return dumps(perm_to_doc(perm))


def parse_perm(text: str) -> JointPerm:
    import json

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed permutation file: {exc}") from None
    try:
        n = doc["n"]
        entries = doc["map"]
    except (TypeError, KeyError):
        raise FormatError("permutation file needs keys 'n' and 'map'") from None
    if not isinstance(n, int) or n < 1 or not isinstance(entries, list) or len(entries) != 2 * n:
        raise FormatError(f"permutation file must list exactly {2 * n if isinstance(n, int) else '2n'} map entries")
    alphabet = ("a", "b")
    lookup = {"a": 0, "b": 1, "A": 0, "B": 1}
    images: list[tuple[int, int] | None] = [None] * (2 * n)
    for entry in entries:
        try:
            src, dst = entry["from"], entry["to"]
            letter = lookup[src["letter"]]
            state = src["state"]
            image = (lookup[dst["letter"]], dst["state"])
        except (TypeError, KeyError):
            raise FormatError(f"bad permutation map entry: {entry!r}") from None
        if not 0 <= state < n:
            raise FormatError(f"source state {state} out of range")
        if images[letter * n + state] is not None:
            raise FormatError(f"duplicate source pair ({src['letter']}, {state})")
        images[letter * n + state] = image
    return JointPerm(n, tuple(images), alphabet)
