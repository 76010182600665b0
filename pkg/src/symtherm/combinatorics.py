"""Exact and log-domain combinatorics of S_N irreducible representations.

Partitions label both irreducible representations and occupation sectors of
an ensemble of N identical d-level systems.  Everything here is a pure
function; the exact path works on arbitrary-precision integers, the log path
on log-gamma evaluations.  The crossover is the caller's choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class Partition:
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are stripped on construction, so ``Partition([3, 0])``
    equals ``Partition([3])``.  The empty partition (of 0) is allowed as a
    recursion base.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int]):
        norm = tuple(int(p) for p in parts)
        while norm and norm[-1] == 0:
            norm = norm[:-1]
        for i, p in enumerate(norm):
            if p <= 0:
                raise ValueError(f"parts must be positive, got {p}")
            if i and norm[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing, got {norm}")
        self.parts = norm

    @property
    def n(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        """Transpose of the Young diagram: column lengths become parts."""
        if not self.parts:
            return Partition(())
        return Partition(
            sum(1 for p in self.parts if p > j) for j in range(self.parts[0])
        )

    def padded(self, d: int) -> tuple[int, ...]:
        """Parts extended with zeros to length d."""
        if len(self.parts) > d:
            raise ValueError(f"shape exceeds d: {len(self.parts)} parts > {d}")
        return self.parts + (0,) * (d - len(self.parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, Partition):
            return self.parts == other.parts
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Partition{self.parts}"


@dataclass(frozen=True)
class RescaledShape:
    """A partition divided by N: weakly decreasing weights summing to one.

    Zero entries are legal here, unlike in :class:`Partition`.
    """

    x: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        if any(v < 0.0 for v in self.x):
            raise ValueError(f"weights must be non-negative, got {self.x}")
        for i in range(len(self.x) - 1):
            if self.x[i] < self.x[i + 1] - 1e-12:
                raise ValueError(f"weights must be weakly decreasing, got {self.x}")
        if abs(sum(self.x) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got sum {sum(self.x)!r}")

    @classmethod
    def two_level(cls, l: float) -> "RescaledShape":
        """The d=2 shape (1/2 + l, 1/2 - l) for a rescaled magnetization l."""
        if not 0.0 <= l <= 0.5:
            raise ValueError(f"l must lie in [0, 1/2], got {l}")
        return cls((0.5 + l, 0.5 - l))


def enumerate_partitions(n: int, d: int) -> list[Partition]:
    """All partitions of n with at most d parts, in reverse-lexicographic order."""
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    out: list[Partition] = []

    def descend(remaining: int, max_part: int, slots: int, prefix: tuple[int, ...]):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        if slots == 0:
            return
        lo = -(-remaining // slots)  # ceil: smallest feasible leading part
        for first in range(min(remaining, max_part), lo - 1, -1):
            descend(remaining - first, first, slots - 1, prefix + (first,))

    descend(n, n, d, ())
    return out


def dim_irrep(lam: Partition) -> int:
    """Dimension of the S_N irrep labelled by lam, via the hook length formula.

    Equals the number of standard Young tableaux of shape lam.  Exact
    arbitrary-precision integer.
    """
    if not lam.parts:
        return 1
    conj = lam.conjugate().parts
    hooks = 1
    for i, row in enumerate(lam.parts):
        for j in range(row):
            hooks *= row - j + conj[j] - i - 1
    return math.factorial(lam.n) // hooks


def log_dim_irrep(lam: Partition) -> float:
    """Natural log of dim_irrep, safe for shapes far beyond float range.

    Two-row shapes use the exact identity
    dim(a, b) = C(a+b, b) - C(a+b, b-1) evaluated in log domain; other shapes
    use log-gamma for N! and a log-sum over integer hooks.
    """
    if len(lam) <= 1:
        return 0.0
    if len(lam) == 2:
        n, b = lam.n, lam.parts[1]
        log_binom = (
            math.lgamma(n + 1) - math.lgamma(b + 1) - math.lgamma(n - b + 1)
        )
        # C(n, b-1)/C(n, b) = b/(n-b+1) < 1 for a weakly decreasing shape
        return log_binom + math.log1p(-b / (n - b + 1))
    conj = lam.conjugate().parts
    log_hooks = 0.0
    for i, row in enumerate(lam.parts):
        for j in range(row):
            log_hooks += math.log(row - j + conj[j] - i - 1)
    return math.lgamma(lam.n + 1) - log_hooks


def _dominates(lam: tuple[int, ...], mu: tuple[int, ...]) -> bool:
    """Dominance order on partitions of equal weight: prefix sums of lam >= mu."""
    acc_l = acc_m = 0
    for k in range(max(len(lam), len(mu))):
        acc_l += lam[k] if k < len(lam) else 0
        acc_m += mu[k] if k < len(mu) else 0
        if acc_l < acc_m:
            return False
    return True


def _horizontal_strips(shape: tuple[int, ...], k: int) -> Iterator[tuple[int, ...]]:
    """Partitions nu <= shape with |shape| - |nu| = k and shape/nu a horizontal strip.

    Interlacing condition: shape[i] >= nu[i] >= shape[i+1] for every row.
    """

    def rows(i: int, removed: int, prefix: tuple[int, ...]):
        if i == len(shape):
            if removed == k:
                yield prefix
            return
        below = shape[i + 1] if i + 1 < len(shape) else 0
        for nu_i in range(shape[i], below - 1, -1):
            took = removed + shape[i] - nu_i
            if took > k:
                continue
            yield from rows(i + 1, took, prefix + (nu_i,))

    yield from rows(0, 0, ())


@lru_cache(maxsize=None)
def _kostka(shape: tuple[int, ...], content: tuple[int, ...]) -> int:
    if not content:
        return 1 if not shape else 0
    if not _dominates(shape, content):
        return 0
    total = 0
    for nu in _horizontal_strips(shape, content[-1]):
        trimmed = nu
        while trimmed and trimmed[-1] == 0:
            trimmed = trimmed[:-1]
        total += _kostka(trimmed, content[:-1])
    return total


def kostka(lam: Partition, mu: Partition) -> int:
    """Kostka number K_{lam,mu}: semistandard tableaux of shape lam, content mu.

    Computed by a memoized recursion peeling the horizontal strip occupied by
    the largest content entry.  Zero whenever lam does not dominate mu.
    """
    if lam.n != mu.n:
        raise ValueError(f"partition size mismatch: {lam.n} != {mu.n}")
    return _kostka(lam.parts, mu.parts)


def schur_at_ones(lam: Partition, d: int) -> int:
    """Schur polynomial of lam evaluated at d ones (Weyl product formula).

    This is the multiplicity of the S_N irrep lam inside (C^d)^{tensor N},
    i.e. the number of semistandard tableaux of shape lam with entries in
    1..d.  Exact integer; bounded above by (N+1)^(d(d-1)/2).
    """
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    padded = lam.padded(d)
    num = den = 1
    for i in range(d):
        for j in range(i + 1, d):
            num *= padded[i] - padded[j] + j - i
            den *= j - i
    return num // den


def sector_dim(mu: Partition) -> int:
    """Dimension of the occupation sector mu: the multinomial N!/(mu_1!...mu_d!)."""
    out = math.factorial(mu.n)
    for p in mu.parts:
        out //= math.factorial(p)
    return out


def rate_entropy(x: RescaledShape) -> float:
    """Entropy rate of irrep dimensions at rescaled shape x: -sum x_j ln x_j.

    The convention 0*ln(0) = 0 is applied by explicit branch.  Bounded by
    ln(d) for a shape with d entries.
    """
    s = 0.0
    for v in x.x:
        if v > 0.0:
            s -= v * math.log(v)
    return s


@lru_cache(maxsize=None)
def _npartitions(n: int, d: int) -> int:
    if n == 0:
        return 1
    if n < 0 or d == 0:
        return 0
    return _npartitions(n, d - 1) + _npartitions(n - d, d)


def count_irreps(n: int, d: int) -> int:
    """Number of partitions of n with at most d parts (distinct irrep labels)."""
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    return _npartitions(n, d)
