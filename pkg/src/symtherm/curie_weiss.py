"""Transverse-field Curie-Weiss model resolved over total-spin sectors.

The Hamiltonian H = -omega * sum_i S_z^(i) - (alpha/N) * sum_ij S_x^(i) S_x^(j)
commutes with the total spin, so it reduces to one pentadiagonal block per
total-spin value L.  Free energies follow from a weighted log-sum over
sectors; the weight of sector L is the number of spin-L multiplets, i.e. the
two-row irrep dimension.  Everything is expressed per particle in the
rescaled magnetization l = L/N in [0, 1/2].
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from symtherm import spectral
from symtherm.cache import SpectraCache
from symtherm.combinatorics import RescaledShape, rate_entropy

METHODS = ("exact", "asymptotic", "analytic")


@dataclass(frozen=True)
class ModelParams:
    """Model and bath parameters: size, transverse field, coupling, 1/T."""

    n: int
    omega: float
    alpha: float
    beta: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if self.beta <= 0:
            raise ValueError(f"need beta > 0, got {self.beta}")
        if self.omega < 0:
            raise ValueError(f"need omega >= 0, got {self.omega}")


@dataclass(frozen=True)
class CurvePoint:
    l: float
    f: float
    s: float
    e: float


@dataclass(frozen=True)
class ThermoCurve:
    """Sampled free-energy potential with per-point entropy and energy rates.

    Every point satisfies f = e - s/beta with the method's own e and s.
    """

    method: str
    params: ModelParams
    points: tuple[CurvePoint, ...]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(pt, name) for pt in self.points])


@dataclass(frozen=True)
class PhasePoint:
    """Minimizer of the free-energy potential at one (beta, alpha) point."""

    beta: float
    alpha: float
    omega: float
    n: int
    l_star: float
    f_star: float
    s_star: float
    e_star: float


def attainable_two_l(n: int) -> range:
    """Doubled total-spin values realizable for n spin-1/2 particles."""
    return range(n % 2, n + 1, 2)


def attainable_l_grid(n: int) -> np.ndarray:
    """The native l grid: L/n for every attainable sector, ascending."""
    return np.array([tl / (2.0 * n) for tl in attainable_two_l(n)])


def _two_l_of(n: int, l: float) -> int:
    two_l = 2.0 * l * n
    rounded = int(round(two_l))
    if (
        abs(two_l - rounded) <= 1e-9
        and 0 <= rounded <= n
        and (n - rounded) % 2 == 0
    ):
        return rounded
    nearest = min(
        attainable_two_l(n), key=lambda tl: (abs(two_l - tl), tl)
    )
    raise ValueError(
        f"l={l} is not attainable for n={n}; nearest attainable value is "
        f"{nearest / (2.0 * n)}"
    )


def build_sector_hamiltonian(
    n: int, l: float, omega: float, alpha: float
) -> spectral.SymBandMatrix:
    """Reduced spin-(l*n) block in the L_z eigenbasis, as a banded matrix.

    Diagonal -omega*m - (alpha/n)*(L(L+1) - m^2)/2; the raising/lowering
    parts of L_x^2 couple m to m+2 with weight
    -(alpha/(4n)) * sqrt((L(L+1)-m(m+1)) * (L(L+1)-(m+1)(m+2))).
    The first off-diagonal vanishes identically.
    """
    two_l = _two_l_of(n, l)
    dim = two_l + 1
    ll1 = two_l * (two_l + 2) / 4.0
    m = (2.0 * np.arange(dim) - two_l) / 2.0
    diag = -omega * m - (alpha / n) * (ll1 - m * m) / 2.0
    bands = [diag]
    if dim >= 2:
        bands.append(np.zeros(dim - 1))
    if dim >= 3:
        mm = m[: dim - 2]
        bands.append(
            -(alpha / (4.0 * n))
            * np.sqrt((ll1 - mm * (mm + 1.0)) * (ll1 - (mm + 1.0) * (mm + 2.0)))
        )
    return spectral.SymBandMatrix(dim, len(bands) - 1, tuple(bands))


def sector_multiplicity(n: int, L: float) -> int:
    """Number of spin-L multiplets in (C^2)^(tensor n): a binomial difference.

    Equals the dimension of the two-row irrep (n/2 + L, n/2 - L); exact
    arbitrary-precision integer.
    """
    two_l = int(round(2 * L))
    if abs(2 * L - two_l) > 1e-9:
        raise ValueError(f"parity violation: 2L = {2 * L} is not an integer")
    if not 0 <= two_l <= n or (n - two_l) % 2 != 0:
        raise ValueError(f"parity violation: L={L} not attainable for n={n}")
    lam2 = (n - two_l) // 2
    low = math.comb(n, lam2 - 1) if lam2 >= 1 else 0
    return math.comb(n, lam2) - low


def _sector_spectrum(
    n: int, two_l: int, omega: float, alpha: float, cache: SpectraCache | None
) -> np.ndarray:
    if cache is not None:
        hit = cache.get(n, two_l, omega, alpha)
        if hit is not None:
            return hit
    m = build_sector_hamiltonian(n, two_l / (2.0 * n), omega, alpha)
    eig = spectral.eig_sym_banded(m).eigenvalues
    if cache is not None:
        cache.put(n, two_l, omega, alpha, eig)
    return eig


def _all_sector_spectra(
    n: int,
    omega: float,
    alpha: float,
    cache: SpectraCache | None,
    threads: int = 1,
    two_ls: Sequence[int] | None = None,
) -> dict[int, np.ndarray]:
    """Spectra of the requested sectors; solves may run concurrently.

    The result is keyed and later reduced in ascending L, so the output is
    identical for any worker count.
    """
    wanted = list(two_ls) if two_ls is not None else list(attainable_two_l(n))
    if threads > 1 and len(wanted) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = pool.map(
                lambda tl: _sector_spectrum(n, tl, omega, alpha, cache), wanted
            )
            return dict(zip(wanted, results))
    return {tl: _sector_spectrum(n, tl, omega, alpha, cache) for tl in wanted}


def energy_rate_numeric(n: int, l: float, omega: float, alpha: float) -> float:
    """Ground-state energy per particle of the spin-(l*n) sector."""
    return spectral.ground_state_energy(build_sector_hamiltonian(n, l, omega, alpha)) / n


def energy_rate_analytic(
    l: float, omega: float, alpha: float, paper_constant: bool = False
) -> float:
    """Large-N sector ground-state energy per particle, in closed form.

    Minimizes the classical energy -omega*l_z - alpha*(l^2 - l_z^2) over
    l_z in [-l, l].  The interior branch carries the constant -omega^2/(4*alpha)
    obtained from that minimization; ``paper_constant`` switches to the
    variant -omega^2/(2*alpha) for side-by-side comparison.
    """
    if alpha <= 0.0 or 2.0 * alpha * l <= omega:
        return -omega * l
    shift = omega * omega / (2.0 * alpha if paper_constant else 4.0 * alpha)
    return -alpha * l * l - shift


def _log_mult(n: int, two_l: int) -> float:
    return math.log(sector_multiplicity(n, two_l / 2.0))


def free_energy_exact(
    params: ModelParams,
    cache: SpectraCache | None = None,
    threads: int = 1,
) -> float:
    """Free energy per particle from the full sector-resolved partition sum."""
    spectra = _all_sector_spectra(params.n, params.omega, params.alpha, cache, threads)
    log_weights = []
    log_traces = []
    for tl in sorted(spectra):
        eig = spectra[tl]
        log_weights.append(_log_mult(params.n, tl))
        log_traces.append(
            spectral.log_sum_exp(np.zeros(eig.size), -params.beta * eig)
        )
    return -spectral.log_sum_exp(log_weights, log_traces) / (params.beta * params.n)


def potential_curve(
    params: ModelParams,
    method: str,
    l_grid: Sequence[float] | None = None,
    cache: SpectraCache | None = None,
    threads: int = 1,
    paper_constant: bool = False,
) -> ThermoCurve:
    """Free-energy potential f(l) sampled on a grid of attainable l values.

    method "exact": f = -(ln mult + ln Tr exp(-beta*H_l)) / (beta*n), split as
    e = -(ln Tr)/(beta*n) and s = ln(mult)/n.  method "asymptotic": sector
    ground-state energy per particle with the asymptotic entropy rate.
    method "analytic": closed-form energy branch with the same entropy rate.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}, expected one of {METHODS}")
    n, beta = params.n, params.beta
    if l_grid is None:
        grid_two_l = list(attainable_two_l(n))
    else:
        grid_two_l = [_two_l_of(n, l) for l in l_grid]
        if any(b <= a for a, b in zip(grid_two_l, grid_two_l[1:])):
            raise ValueError("l_grid must be strictly increasing")
    points = []
    if method == "exact":
        spectra = _all_sector_spectra(
            n, params.omega, params.alpha, cache, threads, two_ls=grid_two_l
        )
        for tl in grid_two_l:
            eig = spectra[tl]
            s = _log_mult(n, tl) / n
            e = -spectral.log_sum_exp(np.zeros(eig.size), -beta * eig) / (beta * n)
            points.append(CurvePoint(l=tl / (2.0 * n), f=e - s / beta, s=s, e=e))
    else:
        for tl in grid_two_l:
            l = tl / (2.0 * n)
            s = rate_entropy(RescaledShape.two_level(l))
            if method == "asymptotic":
                e = energy_rate_numeric(n, l, params.omega, params.alpha)
            else:
                e = energy_rate_analytic(
                    l, params.omega, params.alpha, paper_constant=paper_constant
                )
            points.append(CurvePoint(l=l, f=e - s / beta, s=s, e=e))
    return ThermoCurve(method=method, params=params, points=tuple(points))


def _parabolic_min(x: np.ndarray, y: np.ndarray, i: int) -> float:
    """Vertex abscissa of the parabola through points i-1, i, i+1, clamped."""
    x0, x1, x2 = x[i - 1], x[i], x[i + 1]
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    num = (x1 - x0) ** 2 * (y1 - y2) - (x1 - x2) ** 2 * (y1 - y0)
    # den = h*(2*y1 - y0 - y2) is strictly negative for a bracketed minimum;
    # zero means the three points are collinear
    den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0)
    if den == 0.0:
        return float(x1)
    return float(min(max(x1 - 0.5 * num / den, x0), x2))


def _quadratic_value(x: np.ndarray, y: np.ndarray, i: int, at: float) -> float:
    """Lagrange interpolation through points i-1, i, i+1 evaluated at ``at``."""
    xs = x[i - 1 : i + 2]
    ys = y[i - 1 : i + 2]
    out = 0.0
    for a in range(3):
        term = ys[a]
        for b in range(3):
            if a != b:
                term *= (at - xs[b]) / (xs[a] - xs[b])
        out += term
    return float(out)


def minimize_potential(curve: ThermoCurve) -> PhasePoint:
    """Grid argmin of f(l) with three-point parabolic refinement.

    Ties break toward smaller l.  The refined s and e are interpolated
    through the same three points.
    """
    if not curve.points:
        raise ValueError("cannot minimize an empty curve")
    ls = curve.column("l")
    fs = curve.column("f")
    i = int(np.argmin(fs))  # first occurrence = smallest l on ties
    p = curve.params
    if 0 < i < len(ls) - 1:
        l_star = _parabolic_min(ls, fs, i)
        f_star = _quadratic_value(ls, fs, i, l_star)
        s_star = _quadratic_value(ls, curve.column("s"), i, l_star)
        e_star = _quadratic_value(ls, curve.column("e"), i, l_star)
    else:
        pt = curve.points[i]
        l_star, f_star, s_star, e_star = pt.l, pt.f, pt.s, pt.e
    return PhasePoint(
        beta=p.beta,
        alpha=p.alpha,
        omega=p.omega,
        n=p.n,
        l_star=l_star,
        f_star=f_star,
        s_star=s_star,
        e_star=e_star,
    )


def phase_diagram(
    beta_grid: Sequence[float],
    alpha_grid: Sequence[float],
    omega: float,
    n: int,
    method: str,
    cache: SpectraCache | None = None,
    threads: int = 1,
) -> list[PhasePoint]:
    """Potential minimizer on a Cartesian (beta, alpha) grid, row-major in beta.

    Sector spectra depend only on alpha (not beta), so each alpha column is
    solved once and reduced for every beta.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}, expected one of {METHODS}")
    betas = [float(b) for b in beta_grid]
    alphas = [float(a) for a in alpha_grid]
    if not betas or not alphas:
        raise ValueError("beta and alpha grids must be non-empty")
    columns: dict[int, list[ThermoCurve]] = {}
    for j, alpha in enumerate(alphas):
        shared = SpectraCache() if cache is None else cache
        if method == "exact":
            # spectra are beta-independent; the shared cache makes the first
            # curve pay for all sector solves of this column
            columns[j] = [
                potential_curve(
                    ModelParams(n=n, omega=omega, alpha=alpha, beta=beta),
                    method,
                    cache=shared,
                    threads=threads,
                )
                for beta in betas
            ]
        else:
            base = potential_curve(
                ModelParams(n=n, omega=omega, alpha=alpha, beta=betas[0]),
                method,
                cache=shared,
                threads=threads,
            )
            curves = [base]
            for beta in betas[1:]:
                params = ModelParams(n=n, omega=omega, alpha=alpha, beta=beta)
                points = tuple(
                    CurvePoint(l=pt.l, f=pt.e - pt.s / beta, s=pt.s, e=pt.e)
                    for pt in base.points
                )
                curves.append(ThermoCurve(method=method, params=params, points=points))
            columns[j] = curves
    out = []
    for i, _beta in enumerate(betas):
        for j, _alpha in enumerate(alphas):
            out.append(minimize_potential(columns[j][i]))
    return out


def beta_critical(omega: float, alpha: float) -> float:
    """Critical inverse temperature 2*atanh(omega/alpha)/omega.

    Returns infinity when no finite critical point exists (alpha <= 0 or
    omega >= alpha); the omega -> 0 limit 2/alpha is taken exactly at
    omega = 0.
    """
    if omega < 0:
        raise ValueError(f"need omega >= 0, got {omega}")
    if alpha <= 0.0 or omega >= alpha:
        return math.inf
    if omega == 0.0:
        return 2.0 / alpha
    return 2.0 * math.atanh(omega / alpha) / omega


def paramagnetic_lstar(omega: float, beta: float) -> float:
    """Field-induced magnetization tanh(omega*beta/2)/2 of the disordered phase."""
    if omega < 0 or beta <= 0:
        raise ValueError(f"need omega >= 0 and beta > 0, got {omega}, {beta}")
    return math.tanh(omega * beta / 2.0) / 2.0
