"""Counting two-letter DFAs and the unitarizable fraction among them.

Counts are exact arbitrary-precision integers; the fraction keeps an exact
rational next to its float so nothing is lost at large n. Monte Carlo
validation draws DFAs with numpy's PCG64 generator, seeded per fixed-size
chunk from (seed, chunk index), so the hit count is independent of how the
chunks are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import FormatError
from .jsonio import SCHEMA_VERSION

SAMPLE_CHUNK = 4096


@dataclass(frozen=True)
class CensusReport:
    n: int
    n_dfa: int
    n_qdfa: int
    f_exact: Fraction
    f_stirling: float
    sample_estimate: dict | None = None

    def to_doc(self) -> dict:
        doc = {
            "qsync_schema": SCHEMA_VERSION,
            "n": self.n,
            "n_dfa": str(self.n_dfa),
            "n_qdfa": str(self.n_qdfa),
            "f_exact": {
                "numerator": str(self.f_exact.numerator),
                "denominator": str(self.f_exact.denominator),
                "value": float(self.f_exact),
            },
            "f_stirling": self.f_stirling,
        }
        if self.sample_estimate is not None:
            doc["sample_estimate"] = dict(self.sample_estimate)
        return doc


def _require_positive(n: int):
    if not isinstance(n, int) or n < 1:
        raise FormatError(f"state count must be a positive integer, got {n!r}")


def n_dfa(n: int) -> int:
    """n^(2n): every one of the 2n labeled arcs picks any target."""
    _require_positive(n)
    return n ** (2 * n)


def n_qdfa(n: int) -> int:
    """(2n)!/2^n: distributions of the 2n labeled arcs, two per target."""
    _require_positive(n)
    return math.factorial(2 * n) // 2**n


def f_qdfa(n: int) -> tuple[Fraction, float]:
    """Unitarizable fraction, exact and as a correctly rounded float."""
    _require_positive(n)
    exact = Fraction(n_qdfa(n), n_dfa(n))
    return exact, float(exact)


def f_stirling(n: int) -> float:
    """Stirling approximation sqrt(4 pi n) * (2/e^2)^n; 2/e^2 ~ 0.27."""
    _require_positive(n)
    return math.sqrt(4 * math.pi * n) * (2 / math.e**2) ** n


def sample_fraction(n: int, samples: int, seed: int) -> dict:
    """Monte Carlo estimate of the balanced fraction over uniform DFAs.

    Work is cut into SAMPLE_CHUNK-sized chunks; chunk i draws from
    PCG64(SeedSequence([seed, i])). Summing hits over chunks is
    order-independent, so parallel scheduling cannot change the result.
    """
    _require_positive(n)
    if not isinstance(samples, int) or samples < 1:
        raise FormatError(f"sample count must be >= 1, got {samples!r}")
    hits = 0
    done = 0
    chunk_index = 0
    while done < samples:
        size = min(SAMPLE_CHUNK, samples - done)
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, chunk_index])))
        targets = rng.integers(0, n, size=(size, 2 * n))
        counts = np.apply_along_axis(np.bincount, 1, targets, minlength=n)
        hits += int(np.count_nonzero(np.all(counts == 2, axis=1)))
        done += size
        chunk_index += 1
    return {
        "samples": samples,
        "hits": hits,
        "fraction": hits / samples,
        "seed": seed,
        "generator": "pcg64-seedseq(seed, chunk)/chunk=4096",
    }


def enumerate_balanced(n: int) -> tuple[int, int]:
    """Exhaustively count (total, balanced) over all n-state two-letter DFAs.

    Independent of the closed-form counts; practical for n <= 4.
    """
    _require_positive(n)
    if n > 4:
        raise FormatError("enumeration is limited to n <= 4 (n^(2n) table scan)")
    total = 0
    balanced = 0
    counts = [0] * n
    arcs = 2 * n

    def scan(i: int):
        nonlocal total, balanced
        if i == arcs:
            total += 1
            balanced += all(c == 2 for c in counts)
            return
        for target in range(n):
            counts[target] += 1
            scan(i + 1)
            counts[target] -= 1

    scan(0)
    return total, balanced


def census_report(n: int, samples: int | None = None, seed: int = 0) -> CensusReport:
    exact, _ = f_qdfa(n)
    estimate = sample_fraction(n, samples, seed) if samples else None
    return CensusReport(
        n=n,
        n_dfa=n_dfa(n),
        n_qdfa=n_qdfa(n),
        f_exact=exact,
        f_stirling=f_stirling(n),
        sample_estimate=estimate,
    )
