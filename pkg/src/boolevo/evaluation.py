"""Budget-counted fitness evaluation.

The evolutionary loops never rank individuals by the float fitness directly;
they use an exact integer key ``(nl << n) + (2**n - num_max)`` so comparisons
cannot suffer rounding artefacts.  ``key / 2**n`` reproduces the float
fitness exactly (both terms are dyadic rationals).

All spectrum paths below are numerically exact: Walsh values are integers of
magnitude at most ``2**n <= 65536``, far below the 2**24 threshold where
float32 accumulation of integers could round.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .encodings import GENERAL, ROTATION, float_bits, tree_truth_bits
from .orbits import compute_orbits, orbit_sign_patterns
from .truthtable import hadamard_transform

#: Dimensions up to which the dense Hadamard matrix is cached for the
#: matrix-product spectrum path (2**11 x 2**11 float32 = 16 MiB).
MATRIX_PATH_MAX_N = 11

EXHAUSTED_EVALUATIONS = "budget"
EXHAUSTED_TIME = "time"


class BudgetExhausted(Exception):
    """Raised when a run may not spend any further fitness evaluations."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@lru_cache(maxsize=None)
def _hadamard_float(n: int) -> np.ndarray:
    index = np.arange(1 << n, dtype=np.uint32)
    overlap = index[:, None] & index[None, :]
    parity = np.zeros(overlap.shape, dtype=np.uint8)
    for shift in range(n):
        parity ^= ((overlap >> shift) & 1).astype(np.uint8)
    h = (1.0 - 2.0 * parity).astype(np.float32)
    h.flags.writeable = False
    return h


@lru_cache(maxsize=None)
def _patterns_float(n: int) -> np.ndarray:
    p = orbit_sign_patterns(n).astype(np.float32)
    p.flags.writeable = False
    return p


def spectrum_key(spectrum: np.ndarray, n: int) -> tuple[int, int]:
    """Exact ``(fitness key, nonlinearity)`` of a Walsh spectrum vector."""
    mags = np.abs(spectrum)
    peak = int(mags.max())
    count = int(np.count_nonzero(mags == peak))
    nl = (1 << (n - 1)) - peak // 2
    return (nl << n) + ((1 << n) - count), nl


def key_to_fitness(key: int, n: int) -> float:
    return key / (1 << n)


@dataclass(frozen=True)
class Individual:
    """A genotype with its cached evaluation results."""

    genotype: object
    key: int        # exact ranking key, (nl << n) + (2**n - num_max)
    nl: int
    fitness: float  # key / 2**n, exact

    @classmethod
    def make(cls, genotype, key: int, nl: int, n: int) -> "Individual":
        return cls(genotype, key, nl, key_to_fitness(key, n))


class FitnessEvaluator:
    """Maps raw genotypes to fitness keys while enforcing run budgets.

    Raw genotypes are the forms the search loops actually carry: uint8 bit
    arrays for the bitstring encoding, float64 arrays for the float encoding
    and nested tuples for trees.  Every call to :meth:`evaluate` (and every
    flip probed through :class:`BitFlipSession`) charges one evaluation;
    crossing the budget or the wall-clock limit raises
    :class:`BudgetExhausted`.
    """

    def __init__(
        self,
        n: int,
        encoding: str,
        mode: str = GENERAL,
        decode: int = 3,
        budget: int | None = None,
        time_limit: float | None = None,
    ):
        if encoding not in ("bitstring", "float", "tree"):
            raise ValueError(f"unknown encoding {encoding!r}")
        if mode not in (GENERAL, ROTATION):
            raise ValueError(f"unknown mode {mode!r}")
        if encoding == "tree" and mode == ROTATION:
            raise ValueError("tree genotypes only target the general space")
        self.n = n
        self.encoding = encoding
        self.mode = mode
        self.decode = decode
        self.budget = budget
        self.evaluations = 0
        self._deadline = None if time_limit is None else time.perf_counter() + time_limit
        if mode == ROTATION:
            self._orbits = compute_orbits(n)
            self._patterns = _patterns_float(n)
        elif n <= MATRIX_PATH_MAX_N:
            self._hadamard = _hadamard_float(n)
        else:
            self._hadamard = None

    @property
    def genotype_length(self) -> int:
        """Bits in a bitstring genotype for this search space."""
        if self.mode == ROTATION:
            return self._orbits.num_orbits
        return 1 << self.n

    def charge(self, count: int = 1) -> None:
        """Account for ``count`` fitness evaluations, or refuse to."""
        if self.budget is not None and self.evaluations + count > self.budget:
            raise BudgetExhausted(EXHAUSTED_EVALUATIONS)
        before = self.evaluations
        self.evaluations += count
        if self._deadline is not None and before // 1024 != self.evaluations // 1024:
            if time.perf_counter() > self._deadline:
                raise BudgetExhausted(EXHAUSTED_TIME)

    def evaluate(self, genotype) -> tuple[int, int]:
        """Charge one evaluation and return ``(fitness key, nonlinearity)``."""
        self.charge()
        return spectrum_key(self._spectrum(genotype), self.n)

    # -- spectrum paths ----------------------------------------------------

    def _spectrum(self, genotype) -> np.ndarray:
        if self.encoding == "tree":
            return self._spectrum_general(tree_truth_bits(genotype, self.n))
        if self.encoding == "float":
            genotype = float_bits(genotype, self.decode)
        if self.mode == ROTATION:
            return self._spectrum_orbit(genotype)
        return self._spectrum_general(genotype)

    def _spectrum_general(self, bits: np.ndarray) -> np.ndarray:
        if self._hadamard is not None:
            signs = 1.0 - 2.0 * bits.astype(np.float32)
            return signs @ self._hadamard
        return hadamard_transform(1 - 2 * bits.astype(np.int64))

    def _spectrum_orbit(self, orbit_bits: np.ndarray) -> np.ndarray:
        signs = 1.0 - 2.0 * orbit_bits.astype(np.float32)
        return signs @ self._patterns

    def _flip_row(self, position: int) -> np.ndarray:
        """Spectrum delta direction for flipping one genotype bit."""
        if self.mode == ROTATION:
            return self._patterns[position]
        if self._hadamard is not None:
            return self._hadamard[position]
        index = np.arange(1 << self.n, dtype=np.uint64)
        parity = np.bitwise_count(index & np.uint64(position)).astype(np.int64) & 1
        return (1 - 2 * parity).astype(np.float64)


class BitFlipSession:
    """Incremental re-evaluation of single-bit flips of a bitstring genotype.

    Flipping genotype bit ``j`` moves the spectrum by ``-2 * sign_j * row_j``
    where ``row_j`` is the Hadamard row (general mode) or orbit sign pattern
    (rotation mode) for that position, so each probe is one vector update
    instead of a full transform.  Probes charge the evaluator exactly like
    full evaluations; the setup recomputes the incumbent's spectrum without
    charging because its fitness is already known.
    """

    def __init__(self, evaluator: FitnessEvaluator, bits: np.ndarray):
        if evaluator.encoding != "bitstring":
            raise ValueError("bit-flip search needs the bitstring encoding")
        self.evaluator = evaluator
        self.bits = np.array(bits, dtype=np.uint8, copy=True)
        if self.bits.shape != (evaluator.genotype_length,):
            raise ValueError(
                f"expected {evaluator.genotype_length} genotype bits, "
                f"got shape {self.bits.shape}"
            )
        if evaluator.mode == ROTATION:
            self.spectrum = evaluator._spectrum_orbit(self.bits)
        else:
            self.spectrum = evaluator._spectrum_general(self.bits)
        self.spectrum = np.array(self.spectrum, dtype=np.float64)
        self.key, self.nl = spectrum_key(self.spectrum, evaluator.n)
        self._pending: int | None = None
        self._pending_spectrum: np.ndarray | None = None

    def try_flip(self, position: int) -> tuple[int, int]:
        """Probe flipping one bit; charges one evaluation."""
        self.evaluator.charge()
        sign = 1.0 - 2.0 * float(self.bits[position])
        candidate = self.spectrum - (2.0 * sign) * self.evaluator._flip_row(position)
        self._pending = position
        self._pending_spectrum = candidate
        return spectrum_key(candidate, self.evaluator.n)

    def commit(self) -> None:
        """Adopt the most recently probed flip."""
        if self._pending is None:
            raise RuntimeError("no probed flip to commit")
        self.bits[self._pending] ^= 1
        self.spectrum = self._pending_spectrum
        self.key, self.nl = spectrum_key(self.spectrum, self.evaluator.n)
        self._pending = None
        self._pending_spectrum = None
