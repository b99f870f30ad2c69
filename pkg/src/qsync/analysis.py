"""Entanglement analysis: reduced spectra, entropies, fidelity, AME test.

Every reduction goes through a Gram matrix over whichever basis grouping of
the sparse support is smaller, so nothing of size 2^k is ever built. All
entropies are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FormatError, NotSynchronizingError, QsyncError
from .qsim import MixedEnsemble, SparseState, pack_register, run_mixed, unpack_register
from .syncword import is_synchronizing_word
from .unitarize import JointPerm

SPECTRUM_TOL = 1e-9
NEGATIVE_EIGENVALUE_LIMIT = -1e-12

AUTOMATON_LABEL = "Q"


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple[float, ...]  # descending, clipped at 0
    entropy_bits: float
    rank: int

    def to_doc(self) -> dict:
        return {
            "eigenvalues": list(self.eigenvalues),
            "entropy_bits": self.entropy_bits,
            "rank": self.rank,
        }


def entropy_bits(eigenvalues) -> float:
    """Von Neumann entropy -sum(l log2 l) with 0 log 0 = 0."""
    total = 0.0
    for value in eigenvalues:
        if value > 0:
            total -= value * math.log2(value)
    return total


def _spectrum_of_entries(entries) -> SpectrumReport:
    """Spectrum of rho_cut from (cut key, complement key, amplitude) triples.

    The Gram matrix is built on the smaller grouping; larger-than-tiny
    negative eigenvalues signal a construction bug and raise.
    """
    x_index: dict = {}
    y_index: dict = {}
    for x, y, _ in entries:
        x_index.setdefault(x, len(x_index))
        y_index.setdefault(y, len(y_index))
    matrix = np.zeros((len(x_index), len(y_index)), dtype=complex)
    for x, y, amp in entries:
        matrix[x_index[x], y_index[y]] += amp
    if len(x_index) <= len(y_index):
        gram = matrix @ matrix.conj().T
    else:
        gram = matrix.conj().T @ matrix
    eigenvalues = np.linalg.eigvalsh(gram)[::-1]
    if eigenvalues[-1] < NEGATIVE_EIGENVALUE_LIMIT:
        raise QsyncError(f"reduced spectrum has eigenvalue {eigenvalues[-1]}: Gram construction bug")
    clipped = tuple(float(max(value, 0.0)) for value in eigenvalues)
    return SpectrumReport(clipped, entropy_bits(clipped), sum(v > SPECTRUM_TOL for v in clipped))


def _normalize_cut(cut, k: int) -> tuple[tuple[int, ...], bool]:
    positions = []
    automaton = False
    for label in cut:
        if label == AUTOMATON_LABEL:
            automaton = True
        elif isinstance(label, int) and 1 <= label <= k:
            positions.append(label)
        else:
            raise FormatError(f"cut label {label!r} is not a register position or {AUTOMATON_LABEL!r}")
    positions = tuple(sorted(set(positions)))
    if not positions and not automaton:
        raise FormatError("cut is empty")
    if len(positions) == k and automaton:
        raise FormatError("cut covers every subsystem; reduction is trivial")
    return positions, automaton


def _joint_entries(s: SparseState, positions, automaton_in_cut, weight=1.0, tag=None):
    comp_positions = tuple(p for p in range(1, s.k + 1) if p not in positions)
    scale = math.sqrt(weight)
    for (packed, q), amp in s.amps.items():
        x_bits = tuple((packed >> (p - 1)) & 1 for p in positions)
        y_bits = tuple((packed >> (p - 1)) & 1 for p in comp_positions)
        x = (x_bits, q) if automaton_in_cut else (x_bits,)
        y = (y_bits,) if automaton_in_cut else (y_bits, q)
        yield (x, (tag, y) if tag is not None else y, scale * amp)


def reduced_spectrum(state, cut) -> SpectrumReport:
    """Spectrum of the reduced density operator on `cut`.

    `state` is a SparseState or an evolved ensemble [(probability, SparseState),
    ...]; `cut` lists register positions (1-based) and/or "Q".
    """
    if isinstance(state, SparseState):
        positions, automaton = _normalize_cut(cut, state.k)
        return _spectrum_of_entries(list(_joint_entries(state, positions, automaton)))
    members = list(state)
    if not members:
        raise FormatError("empty ensemble")
    k = members[0][1].k
    positions, automaton = _normalize_cut(cut, k)
    entries = []
    for tag, (probability, member) in enumerate(members):
        if member.k != k:
            raise FormatError("ensemble members disagree on register length")
        entries.extend(_joint_entries(member, positions, automaton, weight=probability, tag=tag))
    return _spectrum_of_entries(entries)


def mutual_information_QR(s: SparseState) -> float:
    """I(Q:R) = 2 S_R for a pure joint state (S_QR = 0)."""
    if abs(s.norm_sq() - 1.0) > 10 * s.tol:
        raise FormatError("state is not normalized")
    s_register = reduced_spectrum(s, range(1, s.k + 1)).entropy_bits
    s_automaton = reduced_spectrum(s, [AUTOMATON_LABEL]).entropy_bits
    if abs(s_register - s_automaton) > 1e-9:
        raise QsyncError(
            f"purity violated: S_R = {s_register} but S_Q = {s_automaton}"
        )
    return 2.0 * s_register


# ---------------------------------------------------------------------------
# register-only states


def register_state(terms, k: int | None = None) -> dict:
    """Normalize {string: amplitude} terms into a register-only state."""
    if isinstance(terms, dict):
        terms = terms.items()
    state: dict[str, complex] = {}
    for text, amp in terms:
        packed, length = pack_register(text)
        canonical = unpack_register(packed, length)
        if k is None:
            k = length
        if length != k:
            raise FormatError(f"term {text!r} has length {length}, expected {k}")
        if canonical in state:
            raise FormatError(f"duplicate register term {text!r}")
        state[canonical] = complex(amp)
    if not state:
        raise FormatError("register state needs at least one term")
    norm = math.sqrt(sum(abs(a) ** 2 for a in state.values()))
    if norm <= SPECTRUM_TOL:
        raise FormatError("zero register state")
    return {text: amp / norm for text, amp in state.items()}


def fidelity(state, target) -> float:
    """|<target|state>|^2 between two register-only states of equal length."""
    left = register_state(state)
    right = register_state(target)
    if len(next(iter(left))) != len(next(iter(right))):
        raise FormatError("register lengths differ")
    overlap = sum(amp * right[text].conjugate() for text, amp in left.items() if text in right)
    return abs(overlap) ** 2


def register_reduced_spectrum(state, positions) -> SpectrumReport:
    """Reduced spectrum of a register-only state on 1-based `positions`."""
    terms = register_state(state)
    k = len(next(iter(terms)))
    positions = tuple(sorted(set(positions)))
    if not positions or len(positions) >= k:
        raise FormatError("cut must be a nonempty proper subset of positions")
    comp = tuple(p for p in range(1, k + 1) if p not in positions)
    entries = [
        (
            tuple(text[p - 1] for p in positions),
            tuple(text[p - 1] for p in comp),
            amp,
        )
        for text, amp in terms.items()
    ]
    return _spectrum_of_entries(entries)


def ame_check(state, tol: float = SPECTRUM_TOL) -> dict:
    """Is every floor(m/2)-qubit reduction maximally mixed?

    Spectra are padded with zeros to the full cut dimension before comparing
    against the uniform value, so rank deficits count as deviations.
    """
    terms = register_state(state)
    m = len(next(iter(terms)))
    half = m // 2
    if half < 1:
        raise FormatError("AME check needs at least two qubits")
    uniform = 2.0**-half
    worst = 0.0
    from itertools import combinations

    for positions in combinations(range(1, m + 1), half):
        spectrum = list(register_reduced_spectrum(terms, positions).eigenvalues)
        spectrum += [0.0] * (2**half - len(spectrum))
        deviation = max(abs(value - uniform) for value in spectrum)
        worst = max(worst, deviation)
    return {"is_ame": worst < tol, "worst_deviation": worst}


def factor_spectators(state, tol: float = SPECTRUM_TOL) -> dict:
    """Split off every position whose single-qubit reduction is a pure basis
    letter; the rest is the renormalized core.

    Positions that are pure in a rotated basis (no basis letter to name) stay
    in the core, which keeps the reconstruction exact.
    """
    terms = register_state(state)
    k = len(next(iter(terms)))
    spectators = []
    for position in range(1, k + 1):
        weight_b = sum(abs(amp) ** 2 for text, amp in terms.items() if text[position - 1] == "b")
        if weight_b <= tol:
            spectators.append((position, "a"))
        elif 1.0 - weight_b <= tol:
            spectators.append((position, "b"))
    drop = {position for position, _ in spectators}
    majority = {position: letter for position, letter in spectators}
    core: dict[str, complex] = {}
    for text, amp in terms.items():
        if any(text[position - 1] != majority[position] for position in drop):
            continue  # minority residue below tol, dropped by the projection
        reduced = "".join(ch for i, ch in enumerate(text, start=1) if i not in drop)
        core[reduced] = core.get(reduced, 0j) + amp
    if core and len(next(iter(core))) == 0:
        core = {}  # fully factored: no core left
    return {
        "spectators": spectators,
        "core": register_state(core) if core else {},
    }


def reconstruct_from_spectators(spectators, core, k: int) -> dict:
    """Inverse of factor_spectators, for round-trip checks."""
    letters_at = dict(spectators)
    core = register_state(core) if core else {"": 1.0 + 0j}
    rebuilt = {}
    for text, amp in core.items():
        chars = []
        core_iter = iter(text)
        for position in range(1, k + 1):
            chars.append(letters_at.get(position) or next(core_iter))
        rebuilt["".join(chars)] = amp
    return rebuilt


# ---------------------------------------------------------------------------
# entropy pump


def ensemble_entropy(ensemble: MixedEnsemble) -> float:
    """S(rho_Q) of the input ensemble, via the weighted vector Gram matrix."""
    vectors = [math.sqrt(p) * np.array(v, dtype=complex) for p, v in ensemble.members]
    matrix = np.stack(vectors, axis=1)  # n x members
    if matrix.shape[0] <= matrix.shape[1]:
        gram = matrix @ matrix.conj().T
    else:
        gram = matrix.conj().T @ matrix
    eigenvalues = np.linalg.eigvalsh(gram)
    if eigenvalues[0] < NEGATIVE_EIGENVALUE_LIMIT:
        raise QsyncError(f"ensemble spectrum has eigenvalue {eigenvalues[0]}")
    return entropy_bits(float(max(v, 0.0)) for v in eigenvalues)


def entropy_pump_check(perm: JointPerm, word: str, ensemble: MixedEnsemble) -> dict:
    """Verify that synchronization moves all input entropy into the register:
    S(rho_R out) = S(rho_Q in).
    """
    dfa = perm.to_dfa()
    if is_synchronizing_word(dfa, word) is None:
        raise NotSynchronizingError(
            f"word {word!r} does not synchronize the underlying automaton; "
            "the entropy transfer identity is not guaranteed"
        )
    s_in = ensemble_entropy(ensemble)
    evolved = run_mixed(perm, word, ensemble)
    k = evolved[0][1].k
    s_out = reduced_spectrum(evolved, range(1, k + 1)).entropy_bits
    return {"S_in": s_in, "S_out_register": s_out, "delta": abs(s_in - s_out)}
