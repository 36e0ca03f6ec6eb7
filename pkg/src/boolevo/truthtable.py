"""Truth tables, Walsh spectra and nonlinearity bounds for Boolean functions.

Conventions used throughout the package:

* A function of ``n`` variables is stored as its output column: a vector of
  ``2**n`` bits.  Row ``i`` holds ``f(x)`` where ``x`` is the big-endian
  ``n``-bit expansion of ``i``, i.e. the first variable is the most
  significant bit of the row index.
* The Walsh value at ``a`` is ``W(a) = sum_x (-1)**(f(x) ^ (a & x parity))``,
  so ``W(0) = 2**n - 2*weight(f)`` and a balanced function has ``W(0) = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAX_DIMENSION = 16

#: Largest verified nonlinearity of an n-variable function, for the odd
#: dimensions this package targets.
BEST_KNOWN_NONLINEARITY = {7: 56, 9: 242, 11: 996, 13: 4040}


def _check_dimension(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"number of variables must be an int, got {n!r}")
    if not 1 <= n <= MAX_DIMENSION:
        raise ValueError(f"number of variables must be in 1..{MAX_DIMENSION}, got {n}")


def bits_to_hex(bits: np.ndarray) -> str:
    """Encode a bit vector whose length is a multiple of 4 as lowercase hex.

    Digit ``k`` covers positions ``4k..4k+3``; the most significant bit of
    each digit is the lowest position, so the string reads left to right in
    index order.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.ndim != 1 or bits.size % 4 != 0:
        raise ValueError("bit vector length must be a multiple of 4")
    nibbles = bits.reshape(-1, 4)
    values = nibbles[:, 0] * 8 + nibbles[:, 1] * 4 + nibbles[:, 2] * 2 + nibbles[:, 3]
    return "".join("0123456789abcdef"[v] for v in values)


def bits_from_hex(digits: str, length: int) -> np.ndarray:
    """Decode the hex form produced by :func:`bits_to_hex` back to bits."""
    if length % 4 != 0:
        raise ValueError("bit vector length must be a multiple of 4")
    if len(digits) != length // 4:
        raise ValueError(
            f"expected {length // 4} hex digits for {length} bits, got {len(digits)}"
        )
    try:
        values = np.array([int(c, 16) for c in digits], dtype=np.uint8)
    except ValueError as exc:
        raise ValueError(f"invalid hex string: {digits!r}") from exc
    bits = np.empty(length, dtype=np.uint8)
    bits[0::4] = (values >> 3) & 1
    bits[1::4] = (values >> 2) & 1
    bits[2::4] = (values >> 1) & 1
    bits[3::4] = values & 1
    return bits


@dataclass(frozen=True, eq=False)
class TruthTable:
    """Immutable output column of an ``n``-variable Boolean function."""

    n: int
    bits: np.ndarray

    def __post_init__(self) -> None:
        _check_dimension(self.n)
        bits = np.array(self.bits, dtype=np.uint8, copy=True)
        if bits.shape != (1 << self.n,):
            raise ValueError(
                f"truth table for n={self.n} needs {1 << self.n} bits, "
                f"got shape {bits.shape}"
            )
        if bits.size and int(bits.max()) > 1:
            raise ValueError("truth table entries must be 0 or 1")
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_hex(cls, digits: str, n: int) -> "TruthTable":
        _check_dimension(n)
        if n < 2:
            raise ValueError("hex form requires at least 2 variables")
        return cls(n, bits_from_hex(digits, 1 << n))

    def to_hex(self) -> str:
        if self.n < 2:
            raise ValueError("hex form requires at least 2 variables")
        return bits_to_hex(self.bits)

    def weight(self) -> int:
        """Hamming weight: number of inputs mapped to 1."""
        return int(self.bits.sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self) -> int:
        return hash((self.n, self.bits.tobytes()))


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    """All ``2**n`` Walsh values of a function, indexed by the mask ``a``."""

    n: int
    values: np.ndarray

    def __post_init__(self) -> None:
        _check_dimension(self.n)
        values = np.array(self.values, dtype=np.int32, copy=True)
        if values.shape != (1 << self.n,):
            raise ValueError(
                f"spectrum for n={self.n} needs {1 << self.n} values, "
                f"got shape {values.shape}"
            )
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def max_abs(self) -> int:
        return int(np.max(np.abs(self.values)))


def hadamard_transform(values: np.ndarray) -> np.ndarray:
    """Apply the unnormalised Hadamard butterfly along the last axis.

    The input length must be a power of two.  Output row ``a`` equals
    ``sum_x (-1)**parity(a & x) * values[x]``.
    """
    work = np.array(values, dtype=np.int64, copy=True)
    size = work.shape[-1]
    if size & (size - 1):
        raise ValueError("transform length must be a power of two")
    half = 1
    while half < size:
        work = work.reshape(work.shape[:-1] + (-1, 2, half))
        top = work[..., 0, :].copy()
        work[..., 0, :] += work[..., 1, :]
        work[..., 1, :] = top - work[..., 1, :]
        work = work.reshape(work.shape[:-3] + (size,))
        half *= 2
    return work


def walsh_transform(table: TruthTable) -> WalshSpectrum:
    """Walsh spectrum of a truth table via the fast butterfly."""
    signs = 1 - 2 * table.bits.astype(np.int64)
    return WalshSpectrum(table.n, hadamard_transform(signs))


def nonlinearity(spectrum: WalshSpectrum) -> int:
    """Minimum Hamming distance to the affine functions."""
    return (1 << (spectrum.n - 1)) - spectrum.max_abs() // 2


def spectrum_profile(spectrum: WalshSpectrum) -> tuple[int, int, int]:
    """Return ``(nonlinearity, max |W|, multiplicity of the max)``."""
    mags = np.abs(spectrum.values)
    peak = int(mags.max())
    count = int(np.count_nonzero(mags == peak))
    return (1 << (spectrum.n - 1)) - peak // 2, peak, count


def fitness_parts(table: TruthTable) -> tuple[int, int]:
    """Return ``(nonlinearity, 2**n - multiplicity of max |W|)``.

    The second part rewards spectra whose extreme value occurs rarely; it is
    always in ``0..2**n - 1``, so as a fraction of ``2**n`` it can never lift
    the fitness past the next nonlinearity level.
    """
    nl, _, count = spectrum_profile(walsh_transform(table))
    return nl, (1 << table.n) - count


def fitness(table: TruthTable) -> float:
    """Nonlinearity plus the fractional tie-break of :func:`fitness_parts`."""
    nl, frac = fitness_parts(table)
    return nl + frac / (1 << table.n)


def balancedness(table: TruthTable) -> tuple[bool, int]:
    """Return ``(is balanced, Hamming weight)``."""
    hw = table.weight()
    return hw == 1 << (table.n - 1), hw


@dataclass(frozen=True)
class PropertyReport:
    """Cryptographic summary of one Boolean function."""

    n: int
    nonlinearity: int
    balanced: bool
    hamming_weight: int
    max_abs_walsh: int
    num_max_values: int
    fitness: float


def property_report(table: TruthTable) -> PropertyReport:
    spectrum = walsh_transform(table)
    nl, peak, count = spectrum_profile(spectrum)
    balanced, hw = balancedness(table)
    return PropertyReport(
        n=table.n,
        nonlinearity=nl,
        balanced=balanced,
        hamming_weight=hw,
        max_abs_walsh=peak,
        num_max_values=count,
        fitness=nl + ((1 << table.n) - count) / (1 << table.n),
    )


def quadratic_bound(n: int) -> int:
    """Nonlinearity reached by quadratic functions in odd dimension."""
    _check_dimension(n)
    if n % 2 == 0:
        raise ValueError(f"quadratic bound is defined here for odd n, got {n}")
    return (1 << (n - 1)) - (1 << ((n - 1) // 2))


def covering_radius_bound(n: int) -> int:
    """Tight upper bound ``2**(n-1) - 2**(n/2-1)`` for even dimension (bent)."""
    _check_dimension(n)
    if n % 2 != 0:
        raise ValueError(f"covering radius bound is an integer only for even n, got {n}")
    return (1 << (n - 1)) - (1 << (n // 2 - 1))


def odd_upper_bound(n: int) -> int:
    """Best general upper bound for odd dimension.

    Equals ``2 * floor(2**(n-2) - 2**((n-4)/2))``.  Because ``2**n`` is not a
    perfect square for odd ``n``, the floor can be taken exactly with integer
    square roots: ``floor(2**(n-2) - sqrt(2**(n-4))) = (2**n - isqrt(2**n) - 1) // 4``.
    """
    _check_dimension(n)
    if n % 2 == 0:
        raise ValueError(f"odd-dimension upper bound needs odd n, got {n}")
    if n == 1:
        return 0
    return 2 * (((1 << n) - math.isqrt(1 << n) - 1) // 4)


@dataclass(frozen=True)
class NonlinearityBounds:
    """Quadratic lower bound, best published value, and general upper bound."""

    n: int
    quadratic: int
    best_known: int
    upper: int


def bounds(n: int) -> NonlinearityBounds:
    """Bounds triple for one of the odd dimensions with a published record.

    Raises ``ValueError`` for an even or out-of-range ``n`` and
    ``LookupError`` for an odd ``n`` without a published best value, so the
    two failure modes stay distinguishable.
    """
    _check_dimension(n)
    if n % 2 == 0:
        raise ValueError(f"bounds table covers odd dimensions only, got {n}")
    if n not in BEST_KNOWN_NONLINEARITY:
        raise LookupError(f"no published best nonlinearity for n={n}")
    return NonlinearityBounds(
        n=n,
        quadratic=quadratic_bound(n),
        best_known=BEST_KNOWN_NONLINEARITY[n],
        upper=odd_upper_bound(n),
    )
