"""Command-line entry point.

Every module is exposed as one subcommand emitting deterministic CSV; a
run manifest (subcommand, parameters, seed, artifact paths, tool version)
is printed to stdout as JSON.  Exit codes: 0 success, 2 invalid
arguments, 3 resource-budget violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .primes import BudgetError
from . import barriers as bar
from . import consecutive as cons
from . import constants as cst
from . import correlation as corr
from . import ctau as ct
from . import llt
from . import smooth as sm

_FNS = {"omega": cons.Fn.OMEGA, "bigomega": cons.Fn.BIG_OMEGA, "tau": cons.Fn.TAU}


@dataclass
class RunManifest:
    subcommand: str
    parameters: dict
    seed: int | None
    artifact_paths: list[str] = field(default_factory=list)
    tool_version: str = __version__


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def _write_json(path: str, payload) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


def _threads(args) -> int:
    env = os.environ.get("ERDOSLAB_THREADS")
    if env is not None:
        return max(1, int(env))
    return max(1, args.threads)


# --- subcommand handlers ----------------------------------------------------


def _run_constants(args) -> tuple[list, list[str], dict]:
    rows = []
    for kind in cst.ConstantKind:
        r = cst.constant(kind, args.pmax)
        rows.append([r.kind.value, r.value, r.p_max, r.tail_bound])
    for kind in cst.SeriesKind:
        r = cst.series(kind, args.terms)
        rows.append([r.kind.value, r.value, r.n_terms, r.tail_bound])
    summary = {row[0]: row[1] for row in rows}
    summary["series_identity_gap_60"] = cst.check_series_identity(60)
    return rows, ["kind", "value", "p_max", "tail_bound"], summary


def _run_scan(args) -> tuple[list, list[str], dict]:
    fs = list(_FNS.values()) if args.f == "all" else [_FNS[args.f]]
    rows = [
        [r.x, r.f.value, r.density, r.normalized, r.imputed_B, r.B_shift, r.c]
        for r in cons.scan(fs, args.xmax)
    ]
    return (
        rows,
        ["x", "f", "density", "normalized", "imputed_B", "B_shift", "c"],
        {"rows": len(rows)},
    )


def _run_hist(args) -> tuple[list, list[str], dict]:
    fs = list(_FNS.values()) if args.f == "all" else [_FNS[args.f]]
    rows = []
    summary = {}
    for f in fs:
        h = cons.diff_histogram(f, args.xmax)
        mu, var = h.mean(), h.variance()
        if f is cons.Fn.TAU:
            scale, B = h.total(), 0.0
        elif f is cons.Fn.OMEGA:
            scale, B = args.xmax, cons.B5_REFERENCE
        else:
            scale, B = args.xmax, cons.B6_REFERENCE
        L = llt.loglog(args.xmax) + B
        for m, c in h.counts.items():
            rows.append([f.value, args.xmax, m, c, scale * llt.gaussian_local(m, L)])
        rows.append([f.value, args.xmax, "mu_hat", mu, ""])
        rows.append([f.value, args.xmax, "sigma2_hat", var, ""])
        summary[f.value] = {"mean": mu, "variance": var, "total": h.total()}
    return rows, ["f", "x", "m", "count", "gaussian_pred"], summary


def _run_ctau(args) -> tuple[list, list[str], dict]:
    rows = []
    grid = cons.x_grid(args.xmax)
    c1 = ct.ctau_lower_c1(args.pmax)
    c3 = ct.ctau_lower_c3(min(args.pmax, 10**5))
    counts = {"empirical": None}
    # one streaming pass would be nicer, but each density is a cached-window
    # pass already; the grid is short
    for x in grid:
        rows.append([x, "empirical", ct.ctau_empirical(x) if x >= 10**3 else _small_ctau(x), 0.0, 0.0, ""])
    for label, ps in (("nu3", (3,)), ("nu35", (3, 5)), ("nu357", (3, 5, 7))):
        for x in grid:
            val = ct.nu_match_upper(x, ps) if x >= 10**3 else _small_nu(x, ps)
            rows.append([x, label, val, 0.0, 0.0, ""])
    for x in grid:
        rows.append([x, "lower_c1", c1.value, 0.0, c1.tail_bound, ""])
        rows.append([x, "lower_c1_c3", c1.value + c3.value, 0.0, c1.tail_bound + c3.tail_bound, ""])
    summary = {"lower_c1": c1.value, "lower_c1_c3": c1.value + c3.value}
    if args.samples > 0:
        est = ct.ctau_monte_carlo(args.pmax, args.samples, args.seed, threads=_threads(args))
        rows.append([est.p_max, "model_mc", est.point, est.mc_stderr, est.tail_bound, est.seed])
        summary["model_mc"] = est.point
    return rows, ["x_or_pmax", "method", "estimate", "stderr", "tail_bound", "seed"], summary


def _small_ctau(x: int) -> float:
    from .sieve import cached_window
    from .ctau import odd_part_array

    w = cached_window(1, max(x + 1, 11))
    odd = odd_part_array(w.tau)
    return int(np.count_nonzero(odd[:x] == odd[1 : x + 1])) / x


def _small_nu(x: int, ps) -> float:
    from .sieve import cached_window
    from .ctau import _nu_in_tau

    w = cached_window(1, max(x + 1, 11))
    mask = np.ones(x, dtype=bool)
    for p in ps:
        e = _nu_in_tau(w.tau, p)
        mask &= e[:x] == e[1 : x + 1]
    return int(np.count_nonzero(mask)) / x


def _run_llt(args) -> tuple[list, list[str], dict]:
    variant = llt.BpVariant.BIG_OMEGA if args.variant == "bigomega" else llt.BpVariant.SMALL_OMEGA
    pmf = llt.sum_pmf(args.w, args.z, variant)
    L = pmf.variance() / 2.0
    rows = [
        [m, pmf.mass_at(m), llt.gaussian_local(m, L), L, variant.value, args.w, args.z, pmf.truncated_mass]
        for m in pmf.support()
    ]
    dev, _ = llt.llt_deviation(args.w, args.z, variant)
    return (
        rows,
        ["m", "pmf", "gaussian", "L", "variant", "w", "z", "truncated_mass"],
        {"L": L, "deviation": dev},
    )


def _run_smooth(args) -> tuple[list, list[str], dict]:
    us = [args.u] if args.u is not None else [1.5, 2.0, 3.0]
    vs = [args.v] if args.v is not None else [1.5, 2.0, 3.0]
    rows = []
    for u in us:
        ru = sm.dickman_rho(u)
        for v in vs:
            rv = sm.dickman_rho(v)
            pd = sm.pair_density(args.xmax, u, v)
            rows.append([args.xmax, u, v, pd, ru, rv, ru * rv])
    return (
        rows,
        ["x", "u", "v", "pair_density", "rho_u", "rho_v", "product"],
        {"rows": len(rows)},
    )


def _parse_fn(spec: str) -> corr.MultiplicativeFn:
    name, _, rest = spec.partition(":")
    if name == "liouville":
        return corr.liouville()
    if name == "moebius":
        return corr.moebius()
    if name == "one":
        return corr.one()
    if name == "exp_omega":
        return corr.exp_alpha_omega(float(rest))
    if name == "exp_bigomega":
        return corr.exp_alpha_big_omega(float(rest))
    if name == "band":
        lo, _, hi = rest.partition(":")
        return corr.smooth_band_indicator(float(lo), float(hi))
    raise ValueError(f"unknown multiplicative function spec {spec!r}")


def _run_corr(args) -> tuple[list, list[str], dict]:
    g1 = _parse_fn(args.g1)
    g2 = _parse_fn(args.g2)
    q = corr.CorrelationQuery(args.N, args.W, args.b, args.h1, args.h2, args.delta)
    val = corr.two_point_correlation(g1, g2, q)
    rows = [
        [g1.label(), g2.label(), q.N, q.W, q.b, q.h1, q.h2, q.delta_N, val.real, val.imag, abs(val)]
    ]
    return (
        rows,
        ["g1", "g2", "N", "W", "b", "h1", "h2", "delta", "re", "im", "abs"],
        {"abs": abs(val)},
    )


def _run_barriers(args) -> tuple[list, list[str], dict]:
    rows = []
    summary = {}
    if args.definition in ("omega", "both"):
        rep = bar.omega_barriers(args.xmax)
        rows += [[rep.definition.value, rep.x, n] for n in rep.barriers]
        summary["omega_barriers"] = len(rep.barriers)
    if args.definition in ("tau_k2", "both"):
        rep = bar.tau_k2_scan(max(args.xmax, 25))
        rows += [[rep.definition.value, rep.x, n] for n in rep.barriers]
        summary["tau_k2"] = len(rep.barriers)
    if args.profile_k:
        best, witness = bar.linear_profile(args.profile_xmax, args.profile_k)
        summary["linear_profile"] = {"K": args.profile_k, "x": args.profile_xmax, "best_C": best, "argmin_n": witness}
    return rows, ["definition", "x", "n"], summary


_HANDLERS = {
    "constants": _run_constants,
    "scan": _run_scan,
    "hist": _run_hist,
    "ctau": _run_ctau,
    "llt": _run_llt,
    "smooth": _run_smooth,
    "corr": _run_corr,
    "barriers": _run_barriers,
}


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="erdoslab", description=__doc__)
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def common(p, seeded=False):
        p.add_argument("--out", required=True, help="output CSV path")
        p.add_argument("--json", default=None, help="optional JSON summary path")
        p.add_argument("--threads", type=int, default=1)
        if seeded:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("constants", help="prime-sum constants and dyadic series")
    p.add_argument("--pmax", type=int, default=10**6)
    p.add_argument("--terms", type=int, default=200)
    common(p)

    p = sub.add_parser("scan", help="consecutive-equal-value densities over an x grid")
    p.add_argument("--f", choices=[*_FNS, "all"], default="all")
    p.add_argument("--xmax", type=int, required=True)
    common(p)

    p = sub.add_parser("hist", help="difference histograms at one x")
    p.add_argument("--f", choices=[*_FNS, "all"], default="all")
    p.add_argument("--xmax", type=int, required=True)
    common(p)

    p = sub.add_parser("ctau", help="divisor-ratio constant: model and data")
    p.add_argument("--xmax", type=int, default=10**5)
    p.add_argument("--pmax", type=int, default=10**4)
    p.add_argument("--samples", type=int, default=0, help="Monte Carlo samples (0 = skip)")
    common(p, seeded=True)

    p = sub.add_parser("llt", help="exact random-walk PMF vs its Gaussian local limit")
    p.add_argument("--w", type=float, default=2.0)
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--variant", choices=["bigomega", "omega"], default="bigomega")
    common(p)

    p = sub.add_parser("smooth", help="consecutive smooth-pair densities vs rho")
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--u", type=float, default=None)
    p.add_argument("--v", type=float, default=None)
    common(p)

    p = sub.add_parser("corr", help="two-point correlation of multiplicative functions")
    p.add_argument("--g1", default="liouville")
    p.add_argument("--g2", default="liouville")
    p.add_argument("--N", type=int, default=10**6)
    p.add_argument("--W", type=int, default=1)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--h1", type=int, default=0)
    p.add_argument("--h2", type=int, default=1)
    p.add_argument("--delta", type=float, default=0.0)
    common(p)

    p = sub.add_parser("barriers", help="barrier scans")
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--definition", choices=["omega", "tau_k2", "both"], default="both")
    p.add_argument("--profile-k", type=int, default=0, dest="profile_k")
    p.add_argument("--profile-xmax", type=int, default=10**4, dest="profile_xmax")
    common(p)

    return ap


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    try:
        rows, header, summary = _HANDLERS[args.subcommand](args)
        _write_csv(args.out, header, rows)
        artifacts = [args.out]
        if args.json:
            _write_json(args.json, summary)
            artifacts.append(args.json)
    except BudgetError as e:
        print(f"resource budget exceeded: {e} (required: {e.required})", file=sys.stderr)
        return 3
    except (ValueError, NotImplementedError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    manifest = RunManifest(
        subcommand=args.subcommand,
        parameters={
            k: v for k, v in sorted(vars(args).items()) if k not in ("subcommand",)
        },
        seed=getattr(args, "seed", None),
        artifact_paths=artifacts,
    )
    print(json.dumps(asdict(manifest), sort_keys=True, default=str))
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
