"""Independent brute-force oracles used to freeze expected values.

Everything here deliberately avoids the code paths under test: tableaux are
enumerated cell by cell, block density matrices are assembled as explicit
matrices and diagonalized with numpy.
"""

from __future__ import annotations

import numpy as np


def count_standard_tableaux(shape: tuple[int, ...]) -> int:
    """Count standard Young tableaux by growing the diagram cell by cell.

    A standard tableau is a chain of partitions; count chains recursively.
    """
    if not shape:
        return 1

    def chains(current: tuple[int, ...]) -> int:
        if all(c == 0 for c in current):
            return 1
        total = 0
        for i in range(len(current)):
            # remove the last cell of row i if the result is still a partition
            if current[i] > 0 and (i == len(current) - 1 or current[i] > current[i + 1]):
                reduced = current[:i] + (current[i] - 1,) + current[i + 1 :]
                total += chains(reduced)
        return total

    return chains(tuple(shape))


def count_semistandard_tableaux(shape: tuple[int, ...], content: tuple[int, ...]) -> int:
    """Count semistandard tableaux by explicit row-by-row filling.

    Entry value v appears content[v-1] times; rows weakly increase, columns
    strictly increase.
    """
    rows = len(shape)
    remaining = list(content)

    def fill(r: int, c: int, above: list[list[int]]) -> int:
        if r == rows:
            return 1 if all(k == 0 for k in remaining) else 0
        if c == shape[r]:
            return fill(r + 1, 0, above)
        lo = 1
        if c > 0 and above[r][c - 1] > 0:
            lo = above[r][c - 1]  # weakly increasing along the row
        if r > 0:
            lo = max(lo, above[r - 1][c] + 1)  # strictly increasing down
        total = 0
        for v in range(lo, len(content) + 1):
            if remaining[v - 1] == 0:
                continue
            remaining[v - 1] -= 1
            above[r][c] = v
            total += fill(r, c + 1, above)
            above[r][c] = 0
            remaining[v - 1] += 1
        return total

    grid = [[0] * w for w in shape]
    return fill(0, 0, grid)


def assemble_block_density(blocks) -> np.ndarray:
    """Explicit block-diagonal density matrix sum_b p_b/dim_b (diag(q) x I)."""
    mats = []
    for b in blocks:
        coarse = np.diag(np.array(b.coarse_spectrum))
        # the block carries mass p, spread uniformly over dim copies
        mats.append(np.kron(coarse * b.p, np.eye(b.dim) / b.dim))
    dim = sum(m.shape[0] for m in mats)
    out = np.zeros((dim, dim))
    at = 0
    for m in mats:
        k = m.shape[0]
        out[at : at + k, at : at + k] = m
        at += k
    return out


def von_neumann_entropy(rho: np.ndarray) -> float:
    evals = np.linalg.eigvalsh(rho)
    nz = evals[evals > 1e-300]
    return float(-(nz * np.log(nz)).sum())


def classical_sector_energy(l: float, omega: float, alpha: float, grid: int = 20001) -> float:
    """Dense minimization of -omega*lz - alpha*(l^2 - lz^2) over lz in [-l, l].

    Grid scan refined by golden-section search around the best cell.
    """
    if l == 0.0:
        return 0.0
    lz = np.linspace(-l, l, grid)
    vals = -omega * lz - alpha * (l * l - lz * lz)
    k = int(np.argmin(vals))
    lo = lz[max(k - 1, 0)]
    hi = lz[min(k + 1, grid - 1)]
    phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    f = lambda z: -omega * z - alpha * (l * l - z * z)
    c, d = b - phi * (b - a), a + phi * (b - a)
    for _ in range(200):
        if f(c) < f(d):
            b, d = d, c
            c = b - phi * (b - a)
        else:
            a, c = c, d
            d = a + phi * (b - a)
    mid = (a + b) / 2
    return float(f(mid))
