"""Brute-force validation of the sector reduction at small particle number.

Everything here works on explicit 2^n x 2^n matrices: the full Hamiltonian,
the total-spin operator and its eigenspaces, and the Gibbs state projected
block by block.  The size cap keeps the whole suite cheap; the point is to
certify the block machinery, not to scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from symtherm import curie_weiss, spectral
from symtherm.combinatorics import Partition
from symtherm.curie_weiss import ModelParams, sector_multiplicity
from symtherm.entropy import BlockSpectrum

MAX_QUBITS = 12
_CLUSTER_TOL = 1e-8


@dataclass(frozen=True)
class DenseOperator:
    """Real symmetric operator on n qubits in the computational basis."""

    n_qubits: int
    entries: np.ndarray

    def __post_init__(self):
        dim = 1 << self.n_qubits
        a = np.asarray(self.entries, dtype=float)
        if a.shape != (dim, dim):
            raise ValueError(f"expected shape {(dim, dim)}, got {a.shape}")
        if np.abs(a - a.T).max(initial=0.0) > 1e-14 * max(1.0, np.abs(a).max()):
            raise ValueError("operator must be symmetric")
        object.__setattr__(self, "entries", a)


@dataclass(frozen=True)
class SectorBasis:
    """Orthonormal basis of one total-spin eigenspace.

    The eigenspace of L^2 with eigenvalue L(L+1) has dimension
    copy_count * (2L + 1): copy_count independent spin-L multiplets.
    """

    L: float
    columns: np.ndarray
    copy_count: int


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"need 1 <= n <= {MAX_QUBITS}, got {n}")


def _mz_diagonal(n: int) -> np.ndarray:
    states = np.arange(1 << n, dtype=np.int64)
    popcount = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        popcount += (states >> i) & 1
    return (n - 2 * popcount) / 2.0


def build_full_hamiltonian(n: int, omega: float, alpha: float) -> DenseOperator:
    """Dense transverse-field Curie-Weiss Hamiltonian on n spins.

    The all-to-all coupling sum includes the i = j terms, which contribute
    the constant -alpha/4 per particle pair budget, i.e. -alpha/4 overall.
    """
    _check_n(n)
    dim = 1 << n
    states = np.arange(dim, dtype=np.int64)
    h = np.zeros((dim, dim))
    # sum_ij Sx_i Sx_j = Lx^2: n/4 on the diagonal, 1/2 between states two
    # bit flips apart
    diag = -omega * _mz_diagonal(n) - (alpha / n) * (n / 4.0)
    h[states, states] = diag
    coupling = -(alpha / n) * 0.5
    for i in range(n):
        for j in range(i + 1, n):
            flipped = states ^ ((1 << i) | (1 << j))
            h[states, flipped] += coupling
    return DenseOperator(n_qubits=n, entries=h)


def total_spin_squared(n: int) -> DenseOperator:
    """Dense L^2 = Lx^2 + Ly^2 + Lz^2 for n spin-1/2 particles."""
    _check_n(n)
    dim = 1 << n
    states = np.arange(dim, dtype=np.int64)
    mz = _mz_diagonal(n)
    l2 = np.zeros((dim, dim))
    l2[states, states] = mz * mz + n / 2.0
    for i in range(n):
        for j in range(i + 1, n):
            flipped = states ^ ((1 << i) | (1 << j))
            bits_differ = ((states >> i) & 1) != ((states >> j) & 1)
            # Sx_i Sx_j + Sy_i Sy_j moves only anti-aligned pairs, weight 1/2
            l2[states[bits_differ], flipped[bits_differ]] += 1.0
    return DenseOperator(n_qubits=n, entries=l2)


def total_spin_blocks(n: int) -> list[SectorBasis]:
    """Eigenspaces of L^2 grouped by total spin, ascending in L."""
    _check_n(n)
    evals, evecs = np.linalg.eigh(total_spin_squared(n).entries)
    two_ls = np.round(np.sqrt(4.0 * evals + 1.0) - 1.0).astype(int)
    blocks = []
    for tl in sorted(set(int(t) for t in two_ls)):
        idx = np.where(two_ls == tl)[0]
        L = tl / 2.0
        if np.abs(evals[idx] - L * (L + 1.0)).max() > _CLUSTER_TOL:
            raise ValueError(
                f"ambiguous eigenvalue clustering around L={L}: "
                f"max deviation {np.abs(evals[idx] - L * (L + 1.0)).max():.3e}"
            )
        dim = len(idx)
        if dim % (tl + 1) != 0:
            raise ValueError(
                f"eigenspace of L={L} has dimension {dim}, not a multiple of {tl + 1}"
            )
        blocks.append(
            SectorBasis(L=L, columns=evecs[:, idx], copy_count=dim // (tl + 1))
        )
    return blocks


def _two_row_shape(n: int, two_l: int) -> Partition:
    return Partition(((n + two_l) // 2, (n - two_l) // 2))


def _boltzmann(evals: np.ndarray, beta: float) -> np.ndarray:
    """Normalized Boltzmann weights over a spectrum."""
    w = np.exp(-beta * (evals - evals.min()))
    return w / w.sum()


def decompose_gibbs(
    n: int,
    params: ModelParams,
    blocks: list[SectorBasis] | None = None,
    eigensystem: tuple[np.ndarray, np.ndarray] | None = None,
) -> list[BlockSpectrum]:
    """Project the dense Gibbs state onto total-spin blocks.

    Per block, the projected state factorizes as coarse x identity; its
    eigenvalues come in groups of copy_count equal values, one group per
    coarse eigenvalue.  The grouping is asserted numerically, not assumed.
    The projected block is formed as a Gram matrix, so its spectrum is
    non-negative by construction.  ``blocks`` and ``eigensystem`` allow
    reusing the L^2 and Hamiltonian diagonalizations across calls.
    """
    _check_n(n)
    if params.n != n:
        raise ValueError(f"params.n={params.n} disagrees with n={n}")
    if eigensystem is None:
        h = build_full_hamiltonian(n, params.omega, params.alpha)
        eigensystem = np.linalg.eigh(h.entries)
    evals, evecs = eigensystem
    weights = _boltzmann(evals, params.beta)
    if blocks is None:
        blocks = total_spin_blocks(n)
    sqrt_w = np.sqrt(weights)
    out = []
    for basis in blocks:
        tl = int(round(2 * basis.L))
        deg = tl + 1
        overlap = basis.columns.T @ evecs
        sv = np.linalg.svd(overlap * sqrt_w, compute_uv=False)
        block_eigs = np.sort(sv * sv)[::-1]
        p = float(block_eigs.sum())
        groups = block_eigs.reshape(deg, basis.copy_count)
        if p > 1e-10:
            spread = (groups.max(axis=1) - groups.min(axis=1)).max()
            if spread > 1e-8 * block_eigs.max():
                raise ValueError(
                    f"block L={basis.L} lacks the coarse x identity structure: "
                    f"eigenvalue group spread {spread:.3e}"
                )
        if p > 0.0:
            coarse = tuple(groups.sum(axis=1) / p)
        else:
            coarse = tuple(np.full(deg, 1.0 / deg))
        out.append(
            BlockSpectrum(
                shape=_two_row_shape(n, tl),
                p=min(p, 1.0),
                dim=basis.copy_count,
                deg=deg,
                coarse_spectrum=coarse,
            )
        )
    return out


def check_permutation_invariance(h: DenseOperator) -> bool:
    """True iff h commutes with every adjacent-transposition permutation.

    The permutation matrices act on the tensor basis by exchanging qubit
    labels; the commutator is checked entrywise against 1e-13.
    """
    n = h.n_qubits
    dim = 1 << n
    states = np.arange(dim, dtype=np.int64)
    a = h.entries
    for i in range(n - 1):
        j = i + 1
        bi = (states >> i) & 1
        bj = (states >> j) & 1
        swapped = states ^ np.where(bi != bj, (1 << i) | (1 << j), 0)
        conjugated = a[np.ix_(swapped, swapped)]
        if np.abs(conjugated - a).max() > 1e-13:
            return False
    return True


def dense_free_energy(h: DenseOperator, beta: float) -> float:
    """-ln Tr exp(-beta*H) / beta from the dense spectrum."""
    evals = spectral.eig_sym_dense(h.entries).eigenvalues
    return -spectral.log_sum_exp(np.zeros(evals.size), -beta * evals) / beta


def dense_gibbs_entropy(h: DenseOperator, beta: float) -> float:
    """Von Neumann entropy of the dense Gibbs state, from Boltzmann weights."""
    evals = spectral.eig_sym_dense(h.entries).eigenvalues
    w = _boltzmann(evals, beta)
    nz = w[w > 0.0]
    return float(-(nz * np.log(nz)).sum())


@dataclass(frozen=True)
class OracleCheck:
    name: str
    passed: bool
    worst: float
    tolerance: float


def run_oracle_checks(
    params: ModelParams, blocks: list[SectorBasis] | None = None
) -> list[OracleCheck]:
    """The four equivalence properties at one parameter point.

    Spectrum multiset, free energy, and entropy compare the dense 2^n
    calculation against the sector machinery; the bound check validates the
    structural entropy inequalities on the decomposed Gibbs state.
    ``blocks`` lets a parameter sweep reuse the L^2 diagonalization.
    """
    from symtherm.entropy import block_entropy, verify_bounds

    n = params.n
    _check_n(n)
    if blocks is None:
        blocks = total_spin_blocks(n)
    h = build_full_hamiltonian(n, params.omega, params.alpha)
    evals, evecs = np.linalg.eigh(h.entries)
    sector_union = []
    for tl in curie_weiss.attainable_two_l(n):
        eig = spectral.eig_sym_banded(
            curie_weiss.build_sector_hamiltonian(
                n, tl / (2.0 * n), params.omega, params.alpha
            )
        ).eigenvalues
        sector_union.extend(list(eig) * sector_multiplicity(n, tl / 2.0))
    spectrum_dev = float(np.abs(np.sort(np.array(sector_union)) - evals).max())

    f_dense = -spectral.log_sum_exp(np.zeros(evals.size), -params.beta * evals) / (
        params.beta * n
    )
    f_blocks = curie_weiss.free_energy_exact(params)
    free_energy_dev = abs(f_dense - f_blocks) / max(abs(f_dense), 1e-300)

    gibbs = decompose_gibbs(n, params, blocks=blocks, eigensystem=(evals, evecs))
    w = _boltzmann(evals, params.beta)
    nz = w[w > 0.0]
    s_dense = float(-(nz * np.log(nz)).sum())
    s_blocks = block_entropy(gibbs).total
    entropy_dev = abs(s_dense - s_blocks)

    report = verify_bounds(gibbs, num_irreps=len(gibbs))
    bound_worst = min(min(report.block_slack), report.shannon_slack)

    return [
        OracleCheck("spectrum_equivalence", spectrum_dev <= 1e-9, spectrum_dev, 1e-9),
        OracleCheck(
            "free_energy_equivalence", free_energy_dev <= 1e-10, free_energy_dev, 1e-10
        ),
        OracleCheck("entropy_equivalence", entropy_dev <= 1e-10, entropy_dev, 1e-10),
        OracleCheck("bound_satisfaction", bound_worst >= -1e-12, bound_worst, -1e-12),
    ]
