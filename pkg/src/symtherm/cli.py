"""Command-line front end.

Standard output carries machine-readable results only; progress goes to
standard error.  Exit codes: 0 success, 2 validation/usage error, 1 internal
error.  Flags override values from an optional JSON config file, which
overrides built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from symtherm import combinatorics, curie_weiss, fileio, oracle, svgplot
from symtherm.cache import SpectraCache, default_cache_dir
from symtherm.combinatorics import Partition
from symtherm.curie_weiss import ModelParams
from symtherm.entropy import block_entropy, verify_bounds


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr)


def _parse_shape(text: str) -> Partition:
    try:
        return Partition(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError as exc:
        raise ValueError(f"bad shape {text!r}: {exc}") from exc


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise ValueError("missing required options: " + ", ".join(f"--{n}" for n in missing))


def _apply_config(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset options from the JSON config file, if one was given."""
    path = getattr(args, "config", None)
    if not path:
        return args
    doc = json.loads(Path(path).read_text())
    if not isinstance(doc, dict):
        raise ValueError("config file must contain a JSON object")
    for key, value in doc.items():
        dest = key.replace("-", "_")
        if hasattr(args, dest) and getattr(args, dest) is None:
            setattr(args, dest, value)
    return args


def _cache_from(args: argparse.Namespace) -> SpectraCache | None:
    if getattr(args, "no_cache", False):
        return SpectraCache(None)
    directory = getattr(args, "cache_dir", None)
    return SpectraCache(directory if directory else default_cache_dir())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symtherm",
        description="Symmetry-resolved thermodynamics of permutation-invariant spin ensembles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    combo = sub.add_parser("combo", help="representation-combinatorics queries")
    combo.add_argument(
        "query",
        choices=["dim", "logdim", "kostka", "schur", "sector-dim", "partitions", "count"],
    )
    combo.add_argument("--shape", help="partition, e.g. 2,1")
    combo.add_argument("--content", help="content partition for kostka")
    combo.add_argument("--d", type=int, help="local dimension / maximum part count")
    combo.add_argument("--n", type=int, help="partition weight")

    ent = sub.add_parser("entropy", help="block entropy from a JSON block file")
    ent.add_argument("--blocks", required=True, help="path to the block file")
    ent.add_argument(
        "--num-irreps", type=int, help="also check entropy bounds against this count"
    )

    pot = sub.add_parser("potential", help="free-energy potential f(l)")
    pot.add_argument("--config", help="JSON config file (flags take precedence)")
    pot.add_argument("--n", type=int)
    pot.add_argument("--alpha", type=float)
    pot.add_argument("--omega", type=float)
    pot.add_argument("--beta", type=float)
    pot.add_argument(
        "--method", choices=["exact", "asymptotic", "analytic", "all"], default=None
    )
    pot.add_argument("--l-min", type=float)
    pot.add_argument("--l-max", type=float)
    pot.add_argument("--out", help="CSV output path")
    pot.add_argument("--svg", help="SVG plot path")
    pot.add_argument("--threads", type=int)
    pot.add_argument(
        "--paper-constant",
        action="store_true",
        help="use the alternative interior-branch constant in the analytic energy",
    )
    pot.add_argument("--cache-dir")
    pot.add_argument("--no-cache", action="store_true")

    phase = sub.add_parser("phase", help="minimizer l* over a (beta, alpha) grid")
    phase.add_argument("--config", help="JSON config file (flags take precedence)")
    phase.add_argument("--n", type=int)
    phase.add_argument("--omega", type=float)
    phase.add_argument("--beta-min", type=float)
    phase.add_argument("--beta-max", type=float)
    phase.add_argument("--beta-count", type=int)
    phase.add_argument("--alpha-min", type=float)
    phase.add_argument("--alpha-max", type=float)
    phase.add_argument("--alpha-count", type=int)
    phase.add_argument(
        "--method", choices=["exact", "asymptotic", "analytic"], default=None
    )
    phase.add_argument("--out", help="CSV output path")
    phase.add_argument("--svg", help="SVG heat-map path")
    phase.add_argument("--threads", type=int)
    phase.add_argument("--cache-dir")
    phase.add_argument("--no-cache", action="store_true")

    orc = sub.add_parser("oracle", help="brute-force validation at small n")
    orc.add_argument("--n", type=int, required=True)
    orc.add_argument("--alpha", type=float, required=True)
    orc.add_argument("--omega", type=float, required=True)
    orc.add_argument("--beta", type=float, required=True)

    cache = sub.add_parser("cache", help="inspect or clear the spectra cache")
    cache.add_argument("action", choices=["inspect", "clear"])
    cache.add_argument("--cache-dir")

    return parser


def _cmd_combo(args: argparse.Namespace) -> int:
    q = args.query
    if q in ("dim", "logdim", "sector-dim", "schur"):
        _require(args, "shape")
        shape = _parse_shape(args.shape)
        if q == "dim":
            print(combinatorics.dim_irrep(shape))
        elif q == "logdim":
            print(fileio.format_float(combinatorics.log_dim_irrep(shape)))
        elif q == "sector-dim":
            print(combinatorics.sector_dim(shape))
        else:
            _require(args, "d")
            print(combinatorics.schur_at_ones(shape, args.d))
    elif q == "kostka":
        _require(args, "shape", "content")
        print(combinatorics.kostka(_parse_shape(args.shape), _parse_shape(args.content)))
    elif q == "partitions":
        _require(args, "n", "d")
        for p in combinatorics.enumerate_partitions(args.n, args.d):
            print(",".join(str(x) for x in p.parts))
    else:  # count
        _require(args, "n", "d")
        print(combinatorics.count_irreps(args.n, args.d))
    return 0


def _cmd_entropy(args: argparse.Namespace) -> int:
    blocks = fileio.load_blocks(args.blocks)
    breakdown = block_entropy(blocks)
    doc = {
        "dim_term": breakdown.dim_term,
        "coarse_term": breakdown.coarse_term,
        "shannon_term": breakdown.shannon_term,
        "total": breakdown.total,
    }
    if args.num_irreps is not None:
        report = verify_bounds(blocks, num_irreps=args.num_irreps)
        doc["bounds"] = {
            "ok": report.ok,
            "shannon_slack": report.shannon_slack,
            "min_block_slack": min(report.block_slack),
            "violations": list(report.violations),
        }
    print(json.dumps(doc, indent=1))
    return 0


def _cmd_potential(args: argparse.Namespace) -> int:
    _apply_config(args)
    _require(args, "n", "alpha", "omega", "beta")
    method = args.method or "all"
    threads = args.threads or 1
    params = ModelParams(n=args.n, omega=args.omega, alpha=args.alpha, beta=args.beta)
    grid = curie_weiss.attainable_l_grid(params.n)
    if args.l_min is not None:
        grid = grid[grid >= args.l_min - 1e-12]
    if args.l_max is not None:
        grid = grid[grid <= args.l_max + 1e-12]
    if grid.size == 0:
        raise ValueError("l window contains no attainable values")
    cache = _cache_from(args)
    methods = list(curie_weiss.METHODS) if method == "all" else [method]
    curves = {}
    for name in methods:
        t0 = time.perf_counter()
        curves[name] = curie_weiss.potential_curve(
            params,
            name,
            l_grid=grid,
            cache=cache,
            threads=threads,
            paper_constant=args.paper_constant,
        )
        _progress(f"{name}: {grid.size} points in {time.perf_counter() - t0:.2f}s")
    if args.out:
        fileio.write_csv(args.out, fileio.POTENTIAL_COLUMNS, fileio.potential_rows(curves))
        _progress(f"wrote {args.out}")
    if args.svg:
        series = [
            (name, [pt.l for pt in c.points], [pt.f for pt in c.points])
            for name, c in curves.items()
        ]
        svgplot.render_curves_svg(args.svg, series, "l", "f(l)")
        _progress(f"wrote {args.svg}")
    if not args.out and not args.svg:
        sys.stdout.write(
            fileio.csv_text(fileio.POTENTIAL_COLUMNS, fileio.potential_rows(curves))
        )
    for name in methods:
        star = curie_weiss.minimize_potential(curves[name])
        _progress(f"{name}: l*={star.l_star:.6f} f*={star.f_star:.9f}")
    return 0


def _cmd_phase(args: argparse.Namespace) -> int:
    _apply_config(args)
    _require(
        args,
        "n",
        "omega",
        "beta-min",
        "beta-max",
        "beta-count",
        "alpha-min",
        "alpha-max",
        "alpha-count",
        "method",
    )
    betas = np.linspace(args.beta_min, args.beta_max, args.beta_count)
    alphas = np.linspace(args.alpha_min, args.alpha_max, args.alpha_count)
    cache = _cache_from(args)
    t0 = time.perf_counter()
    points = curie_weiss.phase_diagram(
        betas,
        alphas,
        omega=args.omega,
        n=args.n,
        method=args.method,
        cache=cache,
        threads=args.threads or 1,
    )
    _progress(
        f"{len(points)} phase points ({args.method}) in {time.perf_counter() - t0:.2f}s"
    )
    if args.out:
        fileio.write_csv(args.out, fileio.PHASE_COLUMNS, fileio.phase_rows(points))
        _progress(f"wrote {args.out}")
    else:
        sys.stdout.write(fileio.csv_text(fileio.PHASE_COLUMNS, fileio.phase_rows(points)))
    if args.svg:
        values = [
            [points[i * len(alphas) + j].l_star for j in range(len(alphas))]
            for i in range(len(betas))
        ]
        svgplot.render_heatmap_svg(args.svg, list(betas), list(alphas), values, "beta", "alpha")
        _progress(f"wrote {args.svg}")
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    params = ModelParams(n=args.n, omega=args.omega, alpha=args.alpha, beta=args.beta)
    checks = oracle.run_oracle_checks(params)
    for c in checks:
        verdict = "PASS" if c.passed else "FAIL"
        print(f"{verdict} {c.name} (worst {c.worst:.3e}, tol {c.tolerance:.0e})")
    return 0 if all(c.passed for c in checks) else 1


def _cmd_cache(args: argparse.Namespace) -> int:
    cache = SpectraCache(args.cache_dir if args.cache_dir else default_cache_dir())
    if args.action == "inspect":
        count = 0
        for entry in cache.entries():
            count += 1
            print(
                f"n={entry['n']} two_l={entry['two_l']} omega={entry['omega']} "
                f"alpha={entry['alpha']} eigenvalues={entry['count']}"
            )
        _progress(f"{count} cached sectors in {cache.directory}")
    else:
        removed = cache.clear()
        print(f"removed {removed}")
    return 0


_HANDLERS = {
    "combo": _cmd_combo,
    "entropy": _cmd_entropy,
    "potential": _cmd_potential,
    "phase": _cmd_phase,
    "oracle": _cmd_oracle,
    "cache": _cmd_cache,
}


def run(argv: list[str] | None = None) -> int:
    """Parse and execute one subcommand; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        path = getattr(exc, "filename", None)
        suffix = f" ({path})" if path else ""
        print(f"error: {exc}{suffix}", file=sys.stderr)
        return 1
    except Exception as exc:  # internal failure
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
