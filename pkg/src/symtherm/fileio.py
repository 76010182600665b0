"""CSV emission and the JSON block-file format.

CSV output is RFC-4180 style (CRLF, header row) with '.'-decimal floats at
17 significant digits, enough to round-trip every double exactly.  Block
files store one JSON object per invariant block; the dim/deg fields are
string-encoded because they routinely exceed the float range.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping, Sequence

from symtherm.combinatorics import Partition, RescaledShape, rate_entropy
from symtherm.curie_weiss import PhasePoint, ThermoCurve
from symtherm.entropy import BlockSpectrum

POTENTIAL_COLUMNS = (
    "l",
    "f_exact",
    "f_asymptotic",
    "f_analytic",
    "s",
    "e_numeric",
    "e_analytic",
)
PHASE_COLUMNS = ("beta", "alpha", "l_star", "f_star", "s_star", "e_star")


def format_float(x: float) -> str:
    return "%.17g" % float(x)


def csv_text(
    header: Sequence[str], rows: Sequence[Sequence[float | str | None]]
) -> str:
    """Render rows of floats as CSV text (None renders as an empty field)."""
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if cell is None:
                cells.append("")
            elif isinstance(cell, str):
                cells.append(cell)
            else:
                cells.append(format_float(cell))
        lines.append(",".join(cells))
    return "\r\n".join(lines) + "\r\n"


def write_csv(
    path: str | Path,
    header: Sequence[str],
    rows: Sequence[Sequence[float | str | None]],
) -> None:
    Path(path).write_text(csv_text(header, rows))


def potential_rows(
    curves: Mapping[str, ThermoCurve],
) -> list[list[float | None]]:
    """Merge per-method curves into the potential CSV layout.

    The shared ``s`` column always carries the asymptotic entropy rate at l;
    method-specific fields are empty when the method was not computed.
    """
    grid: list[float] = []
    for curve in curves.values():
        ls = [pt.l for pt in curve.points]
        if not grid:
            grid = ls
        elif ls != grid:
            raise ValueError("curves must share one l grid")
    by_method = {
        method: {pt.l: pt for pt in curve.points} for method, curve in curves.items()
    }
    rows: list[list[float | None]] = []
    for l in grid:
        exact = by_method.get("exact", {}).get(l)
        asym = by_method.get("asymptotic", {}).get(l)
        analytic = by_method.get("analytic", {}).get(l)
        rows.append(
            [
                l,
                exact.f if exact else None,
                asym.f if asym else None,
                analytic.f if analytic else None,
                rate_entropy(RescaledShape.two_level(l)),
                asym.e if asym else None,
                analytic.e if analytic else None,
            ]
        )
    return rows


def phase_rows(points: Sequence[PhasePoint]) -> list[list[float]]:
    return [
        [pt.beta, pt.alpha, pt.l_star, pt.f_star, pt.s_star, pt.e_star]
        for pt in points
    ]


def dump_blocks(path: str | Path, blocks: Sequence[BlockSpectrum]) -> None:
    docs = [
        {
            "lambda": list(b.shape.parts),
            "p": b.p,
            "dim": str(b.dim),
            "deg": str(b.deg),
            "spectrum": list(b.coarse_spectrum),
        }
        for b in blocks
    ]
    Path(path).write_text(json.dumps(docs, indent=1))


def load_blocks(path: str | Path) -> list[BlockSpectrum]:
    """Parse a JSON block file into validated block spectra."""
    docs = json.loads(Path(path).read_text())
    if not isinstance(docs, list):
        raise ValueError("block file must contain a JSON array")
    blocks = []
    for i, doc in enumerate(docs):
        try:
            blocks.append(
                BlockSpectrum(
                    shape=Partition(doc["lambda"]),
                    p=float(doc["p"]),
                    dim=int(doc["dim"]),
                    deg=int(doc["deg"]),
                    coarse_spectrum=tuple(float(q) for q in doc["spectrum"]),
                )
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed block entry {i}: {exc}") from exc
    return blocks
