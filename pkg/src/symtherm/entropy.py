"""Block decomposition of the von Neumann entropy for invariant states.

A permutation-invariant density matrix splits into blocks labelled by
partitions.  Each block contributes a dimension term p*ln(dim), a
coarse-grained entropy term p*S(rho_tilde), and the weights add a Shannon
term H(p).  Blocks carry eigenvalue lists, never matrices; matrix-level work
lives in :mod:`symtherm.oracle`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from symtherm.combinatorics import Partition, RescaledShape, rate_entropy

_WEIGHT_TOL = 1e-10


def shannon(p: Sequence[float]) -> float:
    """Shannon entropy -sum p ln p of a probability vector, 0*ln(0) = 0."""
    total = 0.0
    s = 0.0
    for v in p:
        if v < 0.0:
            raise ValueError(f"negative probability {v}")
        total += v
        if v > 0.0:
            s -= v * math.log(v)
    if abs(total - 1.0) > _WEIGHT_TOL:
        raise ValueError(f"probabilities sum to {total!r}, expected 1")
    return s


@dataclass(frozen=True)
class BlockSpectrum:
    """One invariant block: weight, dimensions, and the coarse spectrum.

    ``dim`` is the irrep dimension (the identity direction inside the
    block), ``deg`` its multiplicity (the size of the coarse-grained state).
    """

    shape: Partition
    p: float
    dim: int
    deg: int
    coarse_spectrum: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "coarse_spectrum", tuple(float(q) for q in self.coarse_spectrum)
        )
        if not -1e-12 <= self.p <= 1.0 + 1e-12:
            raise ValueError(f"block weight {self.p} outside [0, 1]")
        if len(self.coarse_spectrum) > self.deg:
            raise ValueError(
                f"coarse spectrum of length {len(self.coarse_spectrum)} exceeds deg {self.deg}"
            )
        if any(q < -1e-14 for q in self.coarse_spectrum):
            raise ValueError("coarse spectrum must be non-negative")
        if abs(sum(self.coarse_spectrum) - 1.0) > 1e-12:
            raise ValueError(
                f"coarse spectrum sums to {sum(self.coarse_spectrum)!r}, expected 1"
            )

    def coarse_entropy(self) -> float:
        s = 0.0
        for q in self.coarse_spectrum:
            if q > 0.0:
                s -= q * math.log(q)
        return s


@dataclass(frozen=True)
class EntropyBreakdown:
    """The three contributions to S(rho) of an invariant state and their sum."""

    dim_term: float
    coarse_term: float
    shannon_term: float
    total: float


def block_entropy(blocks: Sequence[BlockSpectrum]) -> EntropyBreakdown:
    """Assemble the entropy of an invariant state from its blocks.

    Returns sum_b p_b ln(dim_b) + sum_b p_b S(coarse_b) + H(p), exactly in
    that decomposition.  ``dim`` may be an arbitrary-precision integer far
    beyond float range.
    """
    weights = [b.p for b in blocks]
    if abs(sum(weights) - 1.0) > _WEIGHT_TOL:
        raise ValueError(f"block weights not normalized: sum {sum(weights)!r}")
    dim_term = 0.0
    coarse_term = 0.0
    for b in blocks:
        if b.p > 0.0:
            dim_term += b.p * math.log(b.dim)
            coarse_term += b.p * b.coarse_entropy()
    shannon_term = 0.0
    for w in weights:
        if w > 0.0:
            shannon_term -= w * math.log(w)
    return EntropyBreakdown(
        dim_term=dim_term,
        coarse_term=coarse_term,
        shannon_term=shannon_term,
        total=dim_term + coarse_term + shannon_term,
    )


@dataclass(frozen=True)
class BoundReport:
    """Per-block and Shannon-term slack against the structural entropy bounds.

    Slacks are ``ln(deg) - S(coarse)`` per block and ``ln(num_irreps) - H(p)``
    overall; a violation is a slack below -1e-12.  Violations are reported,
    never raised: inputs may be numerically noisy.
    """

    block_slack: tuple[float, ...]
    shannon_slack: float
    violations: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.violations and self.shannon_slack >= -1e-12


def verify_bounds(blocks: Sequence[BlockSpectrum], num_irreps: int) -> BoundReport:
    """Check S(coarse_b) <= ln(deg_b) per block and H(p) <= ln(num_irreps)."""
    if num_irreps < len(blocks):
        raise ValueError(
            f"num_irreps {num_irreps} smaller than block count {len(blocks)}"
        )
    slacks = []
    violations = []
    for i, b in enumerate(blocks):
        slack = math.log(b.deg) - b.coarse_entropy()
        slacks.append(slack)
        if slack < -1e-12:
            violations.append(i)
    hp = 0.0
    for b in blocks:
        if b.p > 0.0:
            hp -= b.p * math.log(b.p)
    return BoundReport(
        block_slack=tuple(slacks),
        shannon_slack=math.log(num_irreps) - hp,
        violations=tuple(violations),
    )


def intensive_entropy(samples: Sequence[tuple[RescaledShape, float]]) -> float:
    """Entropy per particle from a sampled density over rescaled shapes.

    Trapezoid quadrature of integral p(x) s(x) dx on the caller's grid,
    using the first shape component as the integration coordinate (it must
    be strictly increasing).  A single sample is treated as a point mass.
    The sampled density must be trapezoid-normalized to one.
    """
    if not samples:
        raise ValueError("need at least one sample")
    densities = [float(p) for _, p in samples]
    if any(p < 0.0 for p in densities):
        raise ValueError("densities must be non-negative")
    if len(samples) == 1:
        weights = [1.0]
    else:
        coords = [shape.x[0] for shape, _ in samples]
        for a, b in zip(coords, coords[1:]):
            if b <= a:
                raise ValueError(
                    "sample grid must be strictly increasing in the first component"
                )
        weights = [0.0] * len(coords)
        for i in range(len(coords) - 1):
            half = 0.5 * (coords[i + 1] - coords[i])
            weights[i] += half
            weights[i + 1] += half
    norm = sum(w * p for w, p in zip(weights, densities))
    if abs(norm - 1.0) > 1e-6:
        raise ValueError(f"density not normalized: quadrature mass {norm!r}")
    return sum(
        w * p * rate_entropy(shape)
        for w, (shape, _), p in zip(weights, samples, densities)
    )
