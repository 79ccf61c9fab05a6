"""Command-line front end.

Subcommands::

    outage    single-point outage probabilities
    sweep     one-parameter sweep, CSV output
    region    energy-secrecy operating points, CSV output
    validate  quadrature vs series vs Monte Carlo report for all 8 cases

Exit status: 0 success, 1 validation failure, 2 usage or configuration
error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from contextlib import contextmanager
from typing import Optional, Sequence

import numpy as np

from .channel import EveMode, SystemParams
from .config import ConfigError, dump_config, load_params
from .experiments import FIGURE_SWEEPS, MCSettings, SweepSpec, region_sweep, sweep_outage
from .montecarlo import SimSpec, simulate_outage
from .outage import (
    ARCH_PAIRS,
    DIVERGENCE_TOL,
    EVE_MODES,
    ArchitecturePair,
    UnsupportedCaseError,
    outage_quadrature,
    outage_series,
)

__all__ = ["main", "build_parser", "CSV_HEADER", "parse_grid", "validation_report"]

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
CSV_HEADER = ["axis", "axis_value", "arch_s", "arch_e", "mode",
              "p_quad", "p_series", "p_mc", "mc_ci", "divergence"]
REGION_HEADER = ["mode", "rho_s", "mean_eh", "ergodic_secrecy", "outage",
                 "mean_eh_ci", "ergodic_secrecy_ci", "outage_ci"]
MC_SIGMAS = 3.0


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    return format(float(x), ".10g")


def parse_grid(text: str) -> list[float]:
    """``start:stop:count`` (inclusive linspace) or a comma-separated list."""
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            n = int(count)
            if n < 1:
                raise ValueError
            return [float(v) for v in np.linspace(float(start), float(stop), n)]
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad grid {text!r}; use start:stop:count or a,b,c") from None


def _arch_cases(choice: str) -> tuple[ArchitecturePair, ...]:
    return ARCH_PAIRS if choice == "all" else (ArchitecturePair.parse(choice),)


def _modes(choice: str) -> tuple[EveMode, ...]:
    return EVE_MODES if choice == "both" else (EveMode(choice),)


def _mc(args) -> MCSettings:
    if args.mc_samples < 1000:
        raise UsageError("--mc-samples must be at least 1000")
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    return MCSettings(args.mc_samples, args.seed, args.workers)


@contextmanager
def _output(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


# subcommands ---------------------------------------------------------------------

def cmd_outage(args, p: SystemParams) -> int:
    methods = ("quad", "series", "mc") if args.method == "all" else (args.method,)
    mc = _mc(args) if "mc" in methods else None
    lines = []
    for arch in _arch_cases(args.arch):
        for mode in _modes(args.mode):
            quad = outage_quadrature(p, arch, mode)
            for method in methods:
                if method == "quad":
                    est = quad
                elif method == "series":
                    try:
                        est = outage_series(p, arch, mode, variant=args.series_variant,
                                            reference=quad.value)
                    except UnsupportedCaseError as exc:
                        lines.append(f"{arch.label:6s} {mode.value:8s} series  unavailable ({exc})")
                        continue
                else:
                    est = simulate_outage(SimSpec(p, arch, mode, mc.n_samples, mc.seed, mc.workers))
                line = f"{arch.label:6s} {mode.value:8s} {est.method:20s} {est.value:.10g}"
                if est.method == "monte_carlo":
                    line += f"  ci95=+/-{est.ci_halfwidth:.3g}"
                if est.divergence is not None:
                    line += f"  raw={est.meta['raw_value']:.10g} diverged={_fmt(est.divergence)}"
                lines.append(line)
    with _output(args.output) as fh:
        fh.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_sweep(args, p: SystemParams) -> int:
    if args.figure:
        axis, grid, overrides = FIGURE_SWEEPS[args.figure]
        p = p.replace(**overrides)
        axis = args.axis or axis
        grid = parse_grid(args.grid) if args.grid else grid
    else:
        if not (args.axis and args.grid):
            raise UsageError("sweep needs --axis and --grid (or --figure)")
        axis, grid = args.axis, parse_grid(args.grid)
    try:
        spec = SweepSpec(
            p, axis, grid,
            arch_cases=_arch_cases(args.arch),
            modes=_modes(args.mode),
            mc=_mc(args) if args.mc else None,
            series_variant=args.series_variant,
            couple_power=not args.uncoupled,
            workers=args.workers,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = sweep_outage(spec)
    with _output(args.output) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow([r.axis, _fmt(r.axis_value), r.arch.at_s.label, r.arch.at_e.label,
                        r.mode.value, _fmt(r.p_quadrature), _fmt(r.p_series), _fmt(r.p_mc),
                        _fmt(r.mc_ci), _fmt(r.divergence_flag)])
    failed = [r for r in rows if r.error]
    for r in failed:
        print(f"numerical failure at {r.axis}={r.axis_value:g} {r.arch.label} "
              f"{r.mode.value}: {r.error}", file=sys.stderr)
    return EXIT_NUMERIC if failed else EXIT_OK


def cmd_region(args, p: SystemParams) -> int:
    rho_grid = parse_grid(args.rho_grid)
    # a region is drawn for one architecture pair; "all" falls back to Sp-Sp
    arch = _arch_cases(args.arch)[0]
    try:
        curves = region_sweep(p, rho_grid, _modes(args.mode), arch=arch,
                              mc=_mc(args), track_eh_side=args.track)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    with _output(args.output) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REGION_HEADER)
        for mode, pts in curves.items():
            for q in pts:
                ci = q.ci_halfwidths
                w.writerow([mode.value, _fmt(q.rho_s), _fmt(q.mean_eh), _fmt(q.ergodic_secrecy),
                            _fmt(q.outage), _fmt(ci["mean_eh"]), _fmt(ci["ergodic_secrecy"]),
                            _fmt(ci["outage"])])
    return EXIT_OK


def validation_report(p: SystemParams, mc: MCSettings) -> tuple[str, bool]:
    """Compare quadrature, both series variants and Monte Carlo on all 8 cases.

    Returns ``(report text, passed)``. The text depends only on the
    parameters, sample count and seed.
    """
    out = io.StringIO()
    pr = lambda s="": out.write(s + "\n")  # noqa: E731
    pr("swipt-secrecy validation report")
    pr(f"monte carlo: n_samples={mc.n_samples} seed={mc.seed} band={MC_SIGMAS:g} sigma")
    pr(f"series tolerance: {DIVERGENCE_TOL:g}")
    pr("parameters:")
    for line in dump_config(p).splitlines()[1:]:
        pr("  " + line)
    pr()
    n_mc = n_red = n_cases = 0
    flagged = []
    for arch in ARCH_PAIRS:
        for mode in EVE_MODES:
            n_cases += 1
            q = outage_quadrature(p, arch, mode).value
            est = simulate_outage(SimSpec(p, arch, mode, mc.n_samples, mc.seed, mc.workers))
            p_hat, n = est.value, mc.n_samples
            band = MC_SIGMAS * math.sqrt(p_hat * (1.0 - p_hat) / n)
            mc_ok = abs(q - p_hat) <= band
            n_mc += mc_ok
            pr(f"[{arch.label} {mode.value}]")
            pr(f"  quadrature          {q:.10f}")
            pr(f"  monte carlo         {p_hat:.10f}  |diff|={abs(q - p_hat):.3e} "
               f"band={band:.3e}  {'PASS' if mc_ok else 'FAIL'}")
            try:
                red = outage_series(p, arch, mode, variant="rederived", reference=q)
                pub = outage_series(p, arch, mode, variant="as_published", reference=q)
            except UnsupportedCaseError as exc:
                pr(f"  series              unavailable: {exc}")
                pr()
                continue
            red_ok = not red.divergence
            n_red += red_ok
            pr(f"  series rederived    {red.meta['raw_value']:.10f}  "
               f"|diff|={red.meta['abs_diff']:.3e}  {'PASS' if red_ok else 'FAIL'}")
            raw = pub.meta["raw_value"]
            pr(f"  series as-printed   {raw:.10f}  |diff|={pub.meta['abs_diff']:.3e}  "
               f"{'DIVERGED' if pub.divergence else 'consistent'}")
            if pub.divergence:
                flagged.append(f"{arch.label} {mode.value}")
                closer = "quadrature" if abs(q - p_hat) <= abs(raw - p_hat) else "as-printed series"
                inside = abs(raw - p_hat) <= band
                pr(f"  arbitration         monte carlo sides with {closer}; "
                   f"as-printed value {'inside' if inside else 'outside'} MC band")
            pr()
    pr("summary")
    pr(f"  quadrature vs monte carlo:       {n_mc}/{n_cases} agree")
    pr(f"  rederived series vs quadrature:  {n_red}/{n_cases} within {DIVERGENCE_TOL:g}")
    pr(f"  as-printed series diverged:      {len(flagged)}/{n_cases}"
       + (f" ({', '.join(flagged)})" if flagged else ""))
    passed = n_mc == n_cases and n_red == n_cases
    pr(f"  result: {'PASS' if passed else 'FAIL'}")
    return out.getvalue(), passed


def cmd_validate(args, p: SystemParams) -> int:
    text, passed = validation_report(p, _mc(args))
    with _output(args.output) as fh:
        fh.write(text)
    return EXIT_OK if passed else EXIT_VALIDATION


# parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default="table1",
                        help="config file path or preset name (default: table1)")
    common.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="KEY=VALUE", help="override one parameter (repeatable)")
    common.add_argument("--mc-samples", type=int, default=100_000)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--output", "-o", default=None, help="output file (default: stdout)")
    common.add_argument("--arch", default="all",
                        choices=["sp-sp", "sp-in", "in-sp", "in-in", "all"])
    common.add_argument("--mode", default="both", choices=["noncoop", "coop", "both"])
    common.add_argument("--series-variant", default="rederived",
                        choices=["rederived", "as_published"])
    common.add_argument("--dump-config", action="store_true",
                        help="print the resolved parameters and exit")

    parser = argparse.ArgumentParser(
        prog="swipt-secrecy",
        description="Secrecy outage and harvested energy of a SWIPT downlink "
                    "with multiple energy-harvesting eavesdroppers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_out = sub.add_parser("outage", parents=[common], help="single-point outage")
    p_out.add_argument("--method", default="quad", choices=["quad", "series", "mc", "all"])

    p_sw = sub.add_parser("sweep", parents=[common], help="one-parameter sweep to CSV")
    p_sw.add_argument("--axis", help="parameter to sweep, e.g. gbar_s_db, rho_s, n_eves")
    p_sw.add_argument("--grid", help="start:stop:count or comma list")
    p_sw.add_argument("--figure", choices=sorted(FIGURE_SWEEPS), help="named sweep preset")
    p_sw.add_argument("--mc", action="store_true", help="add Monte Carlo columns")
    p_sw.add_argument("--uncoupled", action="store_true",
                      help="sweep average SNR without scaling the link power")

    p_rg = sub.add_parser("region", parents=[common], help="energy-secrecy points to CSV")
    p_rg.add_argument("--rho-grid", default="0.05:0.95:19")
    p_rg.add_argument("--track", default="main", choices=["main", "eve"],
                      help="whose harvested energy to report")

    sub.add_parser("validate", parents=[common], help="analytic vs Monte Carlo report")
    return parser


COMMANDS = {"outage": cmd_outage, "sweep": cmd_sweep, "region": cmd_region,
            "validate": cmd_validate}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        p = load_params(args.config, args.overrides)
        if args.dump_config:
            with _output(args.output) as fh:
                fh.write(dump_config(p))
            return EXIT_OK
        return COMMANDS[args.command](args, p)
    except (ConfigError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        diag = getattr(exc, "diagnostics", None)
        print(f"numerical failure: {exc}" + (f"\ndiagnostics: {diag}" if diag else ""),
              file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
