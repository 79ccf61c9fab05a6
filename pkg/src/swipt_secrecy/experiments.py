"""Parameter sweeps and energy-secrecy regions.

A sweep varies one parameter over a grid and evaluates every requested
(architecture pair, eavesdropper mode) at each point with the quadrature
route, the kernel series and, optionally, Monte Carlo. Rows come out in a
fixed order: grid point, then architecture pair, then mode.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .channel import EveMode, SystemParams, db_to_lin
from .montecarlo import EnergySecrecyPoint, SimSpec, simulate_energy_secrecy, simulate_outage
from .outage import (
    ARCH_PAIRS,
    EVE_MODES,
    ArchitecturePair,
    UnsupportedCaseError,
    outage_quadrature,
    outage_series,
)

__all__ = [
    "SweepSpec",
    "SweepRow",
    "MCSettings",
    "apply_axis",
    "sweep_outage",
    "nakagami_surface",
    "region_sweep",
    "region_area",
    "FIGURE_SWEEPS",
    "figure_sweep",
]

_FIELDS = set(SystemParams.__dataclass_fields__)
_POWER_FIELDS = {"omega_s", "omega_e", "gbar_s", "gbar_e", "n0", "sigma2_s", "sigma2_e"}
# axes that set both links at once
JOINT_AXES = {"m": ("m_s", "m_e"), "rho": ("rho_s", "rho_e"), "delta": ("delta_s", "delta_e")}


@dataclass(frozen=True)
class MCSettings:
    n_samples: int = 100_000
    seed: int = 42
    workers: int = 1


def _split_axis(axis: str) -> tuple[str, bool]:
    """Return (field, value_is_db)."""
    for sfx, is_db in (("_db", True), ("_lin", False)):
        if axis.endswith(sfx):
            name = axis[: -len(sfx)]
            if name not in _POWER_FIELDS:
                raise ValueError(f"axis {axis!r}: only power quantities take a unit suffix")
            return name, is_db
    if axis in _FIELDS or axis in JOINT_AXES:
        return axis, False
    raise ValueError(f"unknown sweep axis {axis!r}")


def apply_axis(base: SystemParams, axis: str, value: float, couple_power: bool = True) -> SystemParams:
    """Return ``base`` with the axis parameter set to ``value``.

    Average-SNR axes (``gbar_s``, ``gbar_e``) scale the link power along
    with the SNR when ``couple_power`` is set, so the fading-power mean stays
    fixed.
    """
    name, is_db = _split_axis(axis)
    v = db_to_lin(value) if is_db else float(value)
    if name in JOINT_AXES:
        return base.replace(**{f: v for f in JOINT_AXES[name]})
    if name == "n_eves":
        if v != int(v):
            raise ValueError("n_eves grid values must be integers")
        return base.replace(n_eves=int(v))
    if couple_power and name in ("gbar_s", "gbar_e"):
        return base.with_mean_snr("main" if name == "gbar_s" else "eve", v)
    return base.replace(**{name: v})


@dataclass
class SweepSpec:
    base: SystemParams
    axis: str
    grid: Sequence[float]
    arch_cases: Sequence[ArchitecturePair] = ARCH_PAIRS
    modes: Sequence[EveMode] = EVE_MODES
    mc: Optional[MCSettings] = None
    series_variant: str = "rederived"
    couple_power: bool = True
    workers: int = 1

    def __post_init__(self):
        grid = [float(g) for g in self.grid]
        if not grid:
            raise ValueError("sweep grid is empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("sweep grid must be strictly increasing")
        self.grid = grid
        _split_axis(self.axis)


@dataclass
class SweepRow:
    axis: str
    axis_value: float
    arch: ArchitecturePair
    mode: EveMode
    p_quadrature: Optional[float]
    p_series: Optional[float]
    p_mc: Optional[float] = None
    mc_ci: Optional[float] = None
    divergence_flag: Optional[bool] = None
    error: Optional[str] = None
    meta: dict = field(default_factory=dict)


def _evaluate_point(spec: SweepSpec, value: float) -> list[SweepRow]:
    p = apply_axis(spec.base, spec.axis, value, spec.couple_power)
    rows = []
    for arch in spec.arch_cases:
        for mode in spec.modes:
            row = SweepRow(spec.axis, value, arch, mode, None, None)
            try:
                q = outage_quadrature(p, arch, mode)
                row.p_quadrature = q.value
                row.meta["quad_error"] = q.meta["error_estimate"]
            except ArithmeticError as exc:
                row.error = f"quadrature: {exc} {getattr(exc, 'diagnostics', '')}"
            if row.p_quadrature is not None:
                try:
                    s = outage_series(p, arch, mode, variant=spec.series_variant,
                                      reference=row.p_quadrature)
                    row.p_series = s.meta["raw_value"]
                    row.divergence_flag = s.divergence
                except UnsupportedCaseError:
                    pass
                except ArithmeticError as exc:
                    row.error = f"series: {exc} {getattr(exc, 'diagnostics', '')}"
            if spec.mc is not None:
                est = simulate_outage(SimSpec(p, arch, mode, spec.mc.n_samples,
                                              spec.mc.seed, spec.mc.workers))
                row.p_mc = est.value
                row.mc_ci = est.ci_halfwidth
            rows.append(row)
    return rows


def sweep_outage(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate every (grid point, arch, mode) combination.

    Numerical failures are recorded on the affected row (``error``) and the
    sweep carries on.
    """
    if spec.workers > 1:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            chunks = list(pool.map(lambda v: _evaluate_point(spec, v), spec.grid))
    else:
        chunks = [_evaluate_point(spec, v) for v in spec.grid]
    return [row for chunk in chunks for row in chunk]


def nakagami_surface(
    base: SystemParams,
    snr_grid_db: Sequence[float],
    m_grid: Sequence[float],
    **kwargs,
) -> dict[float, list[SweepRow]]:
    """Outage over (average main SNR in dB) x (common shape m_s = m_e)."""
    out = {}
    for m in m_grid:
        spec = SweepSpec(base.replace(m_s=m, m_e=m), "gbar_s_db", snr_grid_db, **kwargs)
        out[float(m)] = sweep_outage(spec)
    return out


def region_sweep(
    base: SystemParams,
    rho_grid: Sequence[float],
    mode_list: Sequence[EveMode] = EVE_MODES,
    *,
    arch: ArchitecturePair = ARCH_PAIRS[0],
    mc: MCSettings = MCSettings(),
    track_eh_side: str = "main",
) -> dict[EveMode, list[EnergySecrecyPoint]]:
    """Energy-secrecy operating points over the main-link splitting factor.

    Each curve keeps only the points whose ergodic secrecy rate is
    non-negative. All points share ``mc.seed``, so neighbouring points use
    common random numbers.
    """
    grid = [float(r) for r in rho_grid]
    if not grid or any(not 0.0 < r < 1.0 for r in grid):
        raise ValueError("rho grid must be non-empty and inside (0, 1)")
    curves = {}
    for mode in mode_list:
        pts = []
        for rho in grid:
            spec = SimSpec(base.replace(rho_s=rho), arch, mode, mc.n_samples, mc.seed, mc.workers)
            pt = simulate_energy_secrecy(spec, track_eh_side)
            if pt.ergodic_secrecy >= 0.0:
                pts.append(pt)
        curves[mode] = pts
    return curves


def region_area(points: Sequence[EnergySecrecyPoint]) -> tuple[float, float]:
    """Trapezoid area under (mean_eh, ergodic_secrecy), sorted by energy.

    Returns ``(area, halfwidth)``; the half-width adds the per-point secrecy
    half-widths with their trapezoid weights (a worst-case, fully correlated
    propagation).
    """
    pts = sorted(points, key=lambda q: q.mean_eh)
    if len(pts) < 2:
        return 0.0, 0.0
    x = np.array([q.mean_eh for q in pts])
    y = np.array([q.ergodic_secrecy for q in pts])
    ci = np.array([q.ci_halfwidths.get("ergodic_secrecy", 0.0) for q in pts])
    dx = np.diff(x)
    weights = np.zeros_like(x)
    weights[:-1] += 0.5 * dx
    weights[1:] += 0.5 * dx
    return float(weights @ y), float(weights @ ci)


def _lin_grid(lo: float, hi: float, n: int) -> list[float]:
    return [float(v) for v in np.linspace(lo, hi, n)]


#: Named sweep presets; values are (axis, grid, overrides).
FIGURE_SWEEPS = {
    "fig3a": ("gbar_s_db", _lin_grid(0.0, 50.0, 21), {}),
    "fig3b": ("gbar_s_db", _lin_grid(0.0, 50.0, 21), {"r_s": 2.0}),
    "fig5_rho_s": ("rho_s", _lin_grid(0.1, 0.9, 9), {"rho_e": 0.5}),
    "fig5_rho_e": ("rho_e", _lin_grid(0.1, 0.9, 9), {"rho_s": 0.5}),
    "fig6a": ("delta_s", _lin_grid(0.001, 0.9, 21), {"delta_e": 0.001}),
    "fig6b": ("delta_s", _lin_grid(0.001, 0.9, 21), {"delta_e": 0.5}),
    "fig6c": ("delta_e", _lin_grid(0.001, 0.9, 21), {"delta_s": 0.001}),
    "fig6d": ("delta_e", _lin_grid(0.001, 0.9, 21), {"delta_s": 0.5}),
}


def figure_sweep(name: str, base: SystemParams, **kwargs) -> SweepSpec:
    axis, grid, overrides = FIGURE_SWEEPS[name]
    return SweepSpec(base.replace(**overrides), axis, grid, **kwargs)
