"""Shared helpers: independent oracles and random-instance builders.

The dense oracle here materializes full 2^k x n state vectors and takes
partial traces with plain numpy reshapes; production code never does that,
which is exactly what makes it a useful cross-check.
"""

import numpy as np
import pytest

from qsync.automaton import Dfa
from qsync.qsim import SparseState


def dense_vector(state: SparseState) -> np.ndarray:
    """SparseState -> dense array indexed [q1, q2, ..., qk, automaton]."""
    psi = np.zeros((2,) * state.k + (state.n,), dtype=complex)
    for (packed, q), amp in state.amps.items():
        bits = tuple((packed >> (t - 1)) & 1 for t in range(1, state.k + 1))
        psi[bits + (q,)] = amp
    return psi


def dense_reduced_spectrum(state: SparseState, cut) -> np.ndarray:
    """Eigenvalues (descending) of the reduced density operator on `cut`,
    via a dense partial trace. Cut labels: 1-based positions and/or "Q".
    """
    psi = dense_vector(state)
    axes = list(range(state.k + 1))  # k register axes then the automaton axis
    cut_axes = sorted(
        (state.k if label == "Q" else label - 1) for label in cut
    )
    keep = cut_axes + [axis for axis in axes if axis not in cut_axes]
    psi = np.transpose(psi, keep)
    dim_cut = int(np.prod([psi.shape[i] for i in range(len(cut_axes))])) if cut_axes else 1
    matrix = psi.reshape(dim_cut, -1)
    rho = matrix @ matrix.conj().T
    return np.linalg.eigvalsh(rho)[::-1]


def random_dfa(rng, n: int) -> Dfa:
    rows = tuple(tuple(int(x) for x in rng.integers(0, n, size=n)) for _ in range(2))
    return Dfa(n, ("a", "b"), rows)


def random_balanced_dfa(rng, n: int) -> Dfa:
    """Uniform over balanced DFAs: deal the target multiset (each state
    twice) onto the 2n (letter, source) arc slots.
    """
    targets = [q for q in range(n) for _ in range(2)]
    rng.shuffle(targets)
    return Dfa(n, ("a", "b"), (tuple(targets[:n]), tuple(targets[n:])))


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
