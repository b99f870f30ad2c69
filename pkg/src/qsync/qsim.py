"""Exact simulation of the register (x) automaton evolution.

A joint permutation only relabels classical basis vectors, so a state is a
sparse map from (register string, automaton state) to its amplitude: support
size and every |amplitude| are conserved along the whole trajectory, and one
step costs O(support). Register strings live as packed ints, bit t-1 holding
the 1-based position t (0 = a, 1 = b).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import FormatError
from .jsonio import SCHEMA_VERSION, dumps
from .unitarize import JointPerm

DEFAULT_TOL = 1e-9
RANK_TOL = 1e-9

LETTER_TOKENS = ("a", "b")
_LETTER_LOOKUP = {"a": 0, "b": 1, "A": 0, "B": 1}


def pack_register(text: str) -> tuple[int, int]:
    """Register string -> (packed bits, length). Accepts a/b or A/B."""
    packed = 0
    for i, ch in enumerate(text):
        try:
            packed |= _LETTER_LOOKUP[ch] << i
        except KeyError:
            raise FormatError(f"register letter {ch!r} is not a/b") from None
    return packed, len(text)


def unpack_register(packed: int, k: int) -> str:
    return "".join(LETTER_TOKENS[(packed >> i) & 1] for i in range(k))


@dataclass(frozen=True)
class SparseState:
    """Normalized joint state over (register, automaton) basis pairs."""

    k: int
    n: int
    amps: dict  # (packed register, state) -> complex
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.k < 1:
            raise FormatError("register must hold at least one letter")
        if self.n < 1:
            raise FormatError("automaton dimension must be positive")
        norm_sq = sum(abs(value) ** 2 for value in self.amps.values())
        if abs(norm_sq - 1.0) > max(self.tol, 1e-12) * 10:
            raise FormatError(f"state norm^2 = {norm_sq!r} is not 1")

    @property
    def support(self) -> int:
        return len(self.amps)

    def norm_sq(self) -> float:
        return sum(abs(value) ** 2 for value in self.amps.values())

    def terms(self):
        """Amplitudes as (register string, state, amplitude), sorted."""
        rows = [
            (unpack_register(packed, self.k), q, amp)
            for (packed, q), amp in self.amps.items()
        ]
        rows.sort(key=lambda row: (row[0], row[1]))
        return rows

    def register_terms(self) -> dict:
        """Register-side marginal terms {string: amplitude}; only meaningful
        when every support entry shares one automaton state.
        """
        states = {q for (_, q) in self.amps}
        if len(states) != 1:
            raise FormatError("state does not factor: multiple automaton states in support")
        return {unpack_register(packed, self.k): amp for (packed, _), amp in self.amps.items()}


def _clean_amps(raw: dict, tol: float) -> dict:
    total = math.sqrt(sum(abs(value) ** 2 for value in raw.values()))
    if total <= tol:
        raise FormatError("zero amplitude vector")
    return {key: value / total for key, value in raw.items() if abs(value) / total > tol}


def init_joint(word: str, automaton_amps, n: int | None = None, tol: float = DEFAULT_TOL) -> SparseState:
    """Product state |word> (x) sum_q c_q |q>, renormalized."""
    packed, k = pack_register(word)
    if k < 1:
        raise FormatError("register word must be nonempty")
    raw: dict = {}
    for q, amp in automaton_amps:
        if (packed, q) in raw:
            raise FormatError(f"duplicate amplitude entry for state {q}")
        raw[(packed, q)] = complex(amp)
    if n is None:
        n = max(q for (_, q) in raw) + 1 if raw else 0
    for (_, q) in raw:
        if not 0 <= q < n:
            raise FormatError(f"state {q} outside automaton dimension {n}")
    return SparseState(k=k, n=n, amps=_clean_amps(raw, tol), tol=tol)


def step(perm: JointPerm, s: SparseState, t: int) -> SparseState:
    """Apply the joint permutation to qubit t (1-based) and the automaton."""
    if not 1 <= t <= s.k:
        raise FormatError(f"step index {t} outside 1..{s.k}")
    if perm.n != s.n:
        raise FormatError(f"permutation dimension {perm.n} != state dimension {s.n}")
    bit = 1 << (t - 1)
    moved: dict = {}
    for (packed, q), amp in s.amps.items():
        letter = (packed >> (t - 1)) & 1
        out_letter, out_state = perm.apply(letter, q)
        out_packed = (packed & ~bit) | (out_letter << (t - 1))
        moved[(out_packed, out_state)] = amp
    assert len(moved) == len(s.amps)  # permutation: support is conserved
    return SparseState(k=s.k, n=s.n, amps=moved, tol=s.tol)


def run(perm: JointPerm, s0: SparseState) -> list[SparseState]:
    """Full k-step trajectory [s0, s1, ..., sk]."""
    trajectory = [s0]
    for t in range(1, s0.k + 1):
        trajectory.append(step(perm, trajectory[-1], t))
    return trajectory


# ---------------------------------------------------------------------------
# behavior classification


@dataclass(frozen=True)
class BehaviorClass:
    kind: str  # Basis | Decoupled | Entangled
    schmidt_rank: int
    register_factor: dict | None = None  # {register string: amplitude}
    automaton_factor: tuple = ()  # complex amplitudes, length n

    def to_doc(self) -> dict:
        doc = {"kind": self.kind, "schmidt_rank": self.schmidt_rank}
        if self.register_factor is not None:
            doc["register_factor"] = [
                {"register": text, "re": amp.real, "im": amp.imag}
                for text, amp in sorted(self.register_factor.items())
            ]
            doc["automaton_factor"] = [
                {"state": q, "re": amp.real, "im": amp.imag}
                for q, amp in enumerate(self.automaton_factor)
                if abs(amp) > RANK_TOL
            ]
        return doc


def automaton_gram(s: SparseState) -> tuple[list[int], np.ndarray]:
    """States present in the support and the automaton-side density matrix
    rho_Q[i, j] = sum_r psi[r, q_i] conj(psi[r, q_j]).
    """
    vectors: dict[int, dict[int, complex]] = {}
    for (packed, q), amp in s.amps.items():
        vectors.setdefault(q, {})[packed] = amp
    states = sorted(vectors)
    gram = np.zeros((len(states), len(states)), dtype=complex)
    for i, qi in enumerate(states):
        vi = vectors[qi]
        for j in range(i, len(states)):
            vj = vectors[states[j]]
            small, is_left = (vi, True) if len(vi) <= len(vj) else (vj, False)
            big = vj if is_left else vi
            acc = 0j
            for r, a in small.items():
                b = big.get(r)
                if b is None:
                    continue
                acc += a * b.conjugate() if is_left else b * a.conjugate()
            gram[i, j] = acc
            gram[j, i] = acc.conjugate()
    return states, gram


def classify_behavior(s: SparseState) -> BehaviorClass:
    """Schmidt analysis across the register | automaton cut.

    Rank 1 with a single register string is Basis; rank 1 otherwise is
    Decoupled (factors returned, gauge: largest automaton amplitude made
    real positive); rank > 1 is Entangled.
    """
    states, gram = automaton_gram(s)
    eigvals, eigvecs = np.linalg.eigh(gram)
    rank = int(np.sum(eigvals > RANK_TOL))
    if rank > 1:
        return BehaviorClass("Entangled", rank)
    chi = eigvecs[:, -1]
    pivot = int(np.argmax(np.abs(chi)))
    chi = chi * cmath.exp(-1j * cmath.phase(chi[pivot]))
    automaton_factor = [0j] * s.n
    for i, q in enumerate(states):
        automaton_factor[q] = complex(chi[i])
    # project the joint state onto the automaton factor to get the register side
    register: dict[str, complex] = {}
    for (packed, q), amp in s.amps.items():
        text = unpack_register(packed, s.k)
        register[text] = register.get(text, 0j) + amp * np.conj(automaton_factor[q])
    register = {text: amp for text, amp in register.items() if abs(amp) > s.tol}
    kind = "Basis" if len(register) == 1 else "Decoupled"
    return BehaviorClass(kind, 1, register, tuple(automaton_factor))


# ---------------------------------------------------------------------------
# mixed inputs as pure-state ensembles


@dataclass(frozen=True)
class MixedEnsemble:
    """Probability-weighted automaton pure states (the mixed input rho_Q)."""

    n: int
    members: tuple  # ((probability, amplitude tuple length n), ...)
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not self.members:
            raise FormatError("ensemble needs at least one member")
        total = 0.0
        for probability, vector in self.members:
            if probability < 0:
                raise FormatError("ensemble probabilities must be nonnegative")
            if len(vector) != self.n:
                raise FormatError("ensemble vector has wrong dimension")
            norm_sq = sum(abs(c) ** 2 for c in vector)
            if abs(norm_sq - 1.0) > 10 * self.tol:
                raise FormatError(f"ensemble vector norm^2 = {norm_sq} is not 1")
            total += probability
        if abs(total - 1.0) > 10 * self.tol:
            raise FormatError(f"ensemble probabilities sum to {total}, not 1")

    @classmethod
    def from_vectors(cls, pairs, n: int, tol: float = DEFAULT_TOL) -> "MixedEnsemble":
        members = []
        for probability, vector in pairs:
            vec = tuple(complex(c) for c in vector)
            norm = math.sqrt(sum(abs(c) ** 2 for c in vec))
            if norm <= tol:
                raise FormatError("zero vector in ensemble")
            members.append((float(probability), tuple(c / norm for c in vec)))
        return cls(n=n, members=tuple(members), tol=tol)

    @classmethod
    def maximally_mixed(cls, n: int) -> "MixedEnsemble":
        basis = []
        for q in range(n):
            vector = [0j] * n
            vector[q] = 1 + 0j
            basis.append((1.0 / n, tuple(vector)))
        return cls(n=n, members=tuple(basis))

    def density_matrix(self) -> np.ndarray:
        rho = np.zeros((self.n, self.n), dtype=complex)
        for probability, vector in self.members:
            v = np.array(vector, dtype=complex)
            rho += probability * np.outer(v, np.conj(v))
        return rho


def run_mixed(perm: JointPerm, word: str, ensemble: MixedEnsemble) -> list[tuple[float, SparseState]]:
    """Evolve every ensemble branch under the same word; probabilities ride."""
    evolved = []
    for probability, vector in ensemble.members:
        amps = [(q, c) for q, c in enumerate(vector) if abs(c) > ensemble.tol]
        s0 = init_joint(word, amps, n=perm.n, tol=ensemble.tol)
        evolved.append((probability, run(perm, s0)[-1]))
    return evolved


# ---------------------------------------------------------------------------
# file format


def state_to_doc(s: SparseState) -> dict:
    return {
        "qsync_schema": SCHEMA_VERSION,
        "k": s.k,
        "amplitudes": [
            {"register": text, "state": q, "re": amp.real, "im": amp.imag}
            for text, q, amp in s.terms()
        ],
    }


def serialize_state(s: SparseState) -> str:
    return dumps(state_to_doc(s))


def parse_state(text: str, n: int | None = None, tol: float = DEFAULT_TOL) -> SparseState:
    import json

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed state file: {exc}") from None
    if isinstance(doc, dict) and "final_state" in doc and "amplitudes" not in doc:
        doc = doc["final_state"]  # accept simulate bundles for piping
    try:
        k = doc["k"]
        entries = doc["amplitudes"]
    except (TypeError, KeyError):
        raise FormatError("state file needs keys 'k' and 'amplitudes'") from None
    raw: dict = {}
    for entry in entries:
        try:
            packed, length = pack_register(entry["register"])
            q = entry["state"]
            amp = complex(entry["re"], entry["im"])
        except (TypeError, KeyError):
            raise FormatError(f"bad amplitude entry: {entry!r}") from None
        if length != k:
            raise FormatError(f"register {entry['register']!r} length != k = {k}")
        if (packed, q) in raw:
            raise FormatError(f"duplicate amplitude entry {entry['register']}/{q}")
        raw[(packed, q)] = amp
    if not raw:
        raise FormatError("state file has no amplitudes")
    if n is None:
        n = max(q for (_, q) in raw) + 1
    return SparseState(k=k, n=n, amps=_clean_amps(raw, tol), tol=tol)
