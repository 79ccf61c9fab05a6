"""Secrecy rate and secrecy outage probability for the four receiver
architecture pairings, with non-cooperative (max) or cooperative (sum)
eavesdroppers.

Two analytic routes are provided:

``outage_quadrature``
    One code path for all eight cases. Outage is the event
    ``C_s(chi_s) - C_e(chi_e) < R_s``, i.e. ``chi_s < g(chi_e)`` with the
    architecture-dependent threshold ``g``; the probability is
    ``integral F_s(g(x)) f_e(x) dx`` over the wiretap SNR.

``outage_series``
    The closed forms built on the single-integral kernels M, T, U and V.
    ``variant="as_published"`` evaluates the printed expressions literally
    (integer fading shapes only). ``variant="rederived"`` evaluates the same
    kernel structure after correcting the printed sign, shape and
    integration-limit slips, and should agree with the quadrature route.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional, Sequence

import numpy as np

from . import distributions as dist
from . import specfun
from .channel import Architecture, EveMode, SystemParams
from .quadrature import QuadratureError, integrate_semi_infinite

__all__ = [
    "C_CONST",
    "ArchitecturePair",
    "ARCH_PAIRS",
    "EVE_MODES",
    "OutageEstimate",
    "UnsupportedCaseError",
    "achievable_rate",
    "secrecy_rate",
    "snr_threshold",
    "outage_quadrature",
    "kernel_M",
    "kernel_T",
    "kernel_U",
    "kernel_V",
    "outage_series",
    "DIVERGENCE_TOL",
]

#: Constant of the integrated receiver's high-SNR rate, log2(C chi).
C_CONST = math.sqrt(math.e / (2.0 * math.pi))

#: Series and quadrature disagreeing by more than this raises the divergence flag.
DIVERGENCE_TOL = 1e-3

QUAD_ERROR_LIMIT = 1e-8


@dataclass(frozen=True)
class ArchitecturePair:
    at_s: Architecture
    at_e: Architecture

    @property
    def label(self) -> str:
        return f"{self.at_s.label}-{self.at_e.label}"

    @classmethod
    def parse(cls, text: str) -> "ArchitecturePair":
        s, _, e = text.lower().partition("-")
        return cls(Architecture(s), Architecture(e))

    def __str__(self) -> str:
        return self.label


S, I = Architecture.SEPARATED, Architecture.INTEGRATED
ARCH_PAIRS = (
    ArchitecturePair(S, S),
    ArchitecturePair(S, I),
    ArchitecturePair(I, S),
    ArchitecturePair(I, I),
)
EVE_MODES = (EveMode.NON_COOPERATIVE, EveMode.COOPERATIVE)


class Method(str, enum.Enum):
    QUADRATURE = "quadrature"
    SERIES_AS_PUBLISHED = "series_as_published"
    SERIES_REDERIVED = "series_rederived"
    MONTE_CARLO = "monte_carlo"


@dataclass
class OutageEstimate:
    """Outage probability with its provenance.

    ``ci_halfwidth`` is the 95% Wald half-width for Monte Carlo estimates
    and 0 for deterministic methods. ``meta`` carries diagnostics such as the
    integration error estimate or the sample count.
    """

    value: float
    method: str
    ci_halfwidth: float = 0.0
    meta: dict = field(default_factory=dict)
    divergence: Optional[bool] = None

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"outage probability outside [0, 1]: {self.value!r}")
        if self.ci_halfwidth < 0:
            raise ValueError("ci_halfwidth must be non-negative")


class UnsupportedCaseError(ValueError):
    """Raised when a closed form does not cover the requested parameters."""


# rates -------------------------------------------------------------------------

def achievable_rate(chi, arch: Architecture):
    """log2(1 + chi) (separated) or log2(C chi) (integrated); bits/s/Hz."""
    chi = np.asarray(chi, dtype=float)
    with np.errstate(divide="ignore"):
        if arch is Architecture.SEPARATED:
            out = np.log2(1.0 + chi)
        else:
            out = np.log2(C_CONST * chi)
    return float(out) if out.ndim == 0 else out


def secrecy_rate(chi_s, chi_e, arch: ArchitecturePair):
    """[C_s - C_e]^+."""
    cs = np.asarray(achievable_rate(chi_s, arch.at_s))
    ce = np.asarray(achievable_rate(chi_e, arch.at_e))
    with np.errstate(invalid="ignore"):
        diff = cs - ce
    # -inf - (-inf): both links at zero SNR, no secrecy
    out = np.where(np.isnan(diff), 0.0, np.maximum(diff, 0.0))
    return float(out) if out.ndim == 0 else out


def snr_threshold(gamma_e, arch: ArchitecturePair, r_s: float):
    """g(gamma_e) such that outage <=> chi_s < g(chi_e). May be negative."""
    if r_s <= 0:
        raise ValueError("target secrecy rate must be positive")
    g = np.asarray(gamma_e, dtype=float)
    two_r = 2.0**r_s
    if arch.at_s is S and arch.at_e is S:
        out = two_r * (1.0 + g) - 1.0
    elif arch.at_s is S:
        out = two_r * g * C_CONST - 1.0
    elif arch.at_e is S:
        out = two_r * (1.0 + g) / C_CONST
    else:
        out = two_r * g
    return float(out) if out.ndim == 0 else out


def _threshold_root(arch: ArchitecturePair, r_s: float) -> Optional[float]:
    """Wiretap SNR at which g crosses zero, if inside (0, inf)."""
    if arch.at_s is S and arch.at_e is I:
        return 1.0 / (2.0**r_s * C_CONST)
    return None


# unified quadrature ---------------------------------------------------------------

def outage_quadrature(p: SystemParams, arch: ArchitecturePair, mode: EveMode) -> OutageEstimate:
    """P_out = integral_0^inf F_s(g(x)) f_e(x) dx.

    The upper limit is the wiretap quantile whose survival is ~1e-13; the
    exact survival function bounds the discarded tail because F_s <= 1.
    When the wiretap density is singular at the origin (total shape < 1)
    the substitution x = t^2 is used.

    Raises
    ------
    QuadratureError
        If the combined error estimate exceeds 1e-8.
    """
    d = dist.link_distributions(p, mode)
    eve_law = d.eve_sum if mode is EveMode.COOPERATIVE else d.eve_single
    n_tail = 1 if mode is EveMode.COOPERATIVE else p.n_eves
    x_hi = specfun.gamma_ppf(1e-13 / n_tail, eve_law, upper=True)
    root = _threshold_root(arch, p.r_s)
    singular = eve_law.shape < 1.0

    def integrand_x(x):
        g = snr_threshold(x, arch, p.r_s)
        g = np.atleast_1d(g)
        log_fs = np.full(g.shape, -np.inf)
        pos = g > 0
        if pos.any():
            log_fs[pos] = specfun.log_regularized_lower_gamma(d.main.shape, d.main.rate * g[pos])
        with np.errstate(invalid="ignore"):
            out = np.exp(log_fs + np.atleast_1d(dist.eve_logpdf(x, d)))
        return np.where(np.isnan(out), 0.0, out)

    if singular:
        def integrand(t):
            return integrand_x(t * t) * 2.0 * t

        res = integrate_semi_infinite(
            integrand, 0.0,
            scale=math.sqrt(x_hi),
            tail_bound=lambda t: dist.eve_sf(t * t, d),
            breakpoints=[math.sqrt(root)] if root else (),
        )
    else:
        res = integrate_semi_infinite(
            integrand_x, 0.0,
            scale=x_hi,
            tail_bound=lambda x: dist.eve_sf(x, d),
            breakpoints=[root] if root else (),
        )
    meta = {
        "error_estimate": res.error,
        "n_evals": res.n_evals,
        "upper_limit": res.upper if not singular else res.upper**2,
        "tail_bound": res.tail_bound,
    }
    if res.error > QUAD_ERROR_LIMIT:
        raise QuadratureError(
            f"outage quadrature error estimate {res.error:.3g} exceeds {QUAD_ERROR_LIMIT:g}",
            {"arch": arch.label, "mode": mode.value, **meta},
        )
    value = min(max(res.value, 0.0), 1.0)
    return OutageEstimate(value, Method.QUADRATURE.value, 0.0, meta)


# kernels ---------------------------------------------------------------------------

Psi = Callable[[np.ndarray], np.ndarray]


def _incgamma(shape: float, x: np.ndarray, literal: bool) -> np.ndarray:
    """Gamma(shape, x); negative x is clamped to 0 unless ``literal``."""
    x = np.asarray(x, dtype=float)
    if literal and np.any(x < 0):
        return np.asarray(specfun.upper_gamma_integer_series(shape, x))
    return np.asarray(specfun.upper_incomplete_gamma(shape, np.maximum(x, 0.0)))


def _log_incgamma(shape: float, x: np.ndarray) -> np.ndarray:
    return np.asarray(specfun.log_upper_incomplete_gamma(shape, np.maximum(x, 0.0)))


def _log_pow(x: np.ndarray, a: float) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return (a - 1.0) * np.log(x) if a != 1.0 else np.zeros_like(x)


def _kernel_integral(f, lower: float, scale: float, breakpoints: Sequence[float]) -> float:
    res = integrate_semi_infinite(f, lower, scale=scale, breakpoints=breakpoints)
    if res.error > QUAD_ERROR_LIMIT * max(1.0, abs(res.value)):
        raise QuadratureError("kernel quadrature did not meet tolerance",
                              {"value": res.value, "error": res.error})
    return res.value


def _default_scale(p: SystemParams) -> float:
    d = dist.link_distributions(p, EveMode.NON_COOPERATIVE)
    return max(d.eve_single.mean, 1e-3)


def kernel_M(
    p: SystemParams,
    w: int,
    psi_a: Psi,
    psi_b: Psi,
    *,
    literal: bool = False,
    breakpoints: Sequence[float] = (),
    scale: Optional[float] = None,
) -> float:
    """M(a, b) = int_0^inf x^(m_e-1) e^(-m_e a) Gamma(m_e, m_e a)^w Gamma(m_s, m_s b) dx.

    ``a = psi_a(x)``, ``b = psi_b(x)``. A negative ``b`` is clamped to 0
    (Gamma(m_s, 0) = Gamma(m_s)) unless ``literal``, in which case the
    integer-shape finite sum is extended to negative arguments.
    """
    if w < 0:
        raise ValueError("w must be non-negative")
    m_e, m_s = p.m_e, p.m_s

    def f(x):
        a = np.asarray(psi_a(x), dtype=float)
        b = np.asarray(psi_b(x), dtype=float)
        log_part = _log_pow(x, m_e) - m_e * a
        if w:
            log_part = log_part + w * _log_incgamma(m_e, m_e * a)
        return np.exp(log_part) * _incgamma(m_s, m_s * b, literal)

    return _kernel_integral(f, 0.0, scale or _default_scale(p), breakpoints)


def kernel_T(
    p: SystemParams,
    z: int,
    psi_a: Psi,
    psi_b: Psi,
    *,
    lower: float,
    breakpoints: Sequence[float] = (),
    scale: Optional[float] = None,
) -> float:
    """T(a, b) = int_lower^inf Gamma(m_e, m_e a)^z x^(m_s-1) e^(-m_s b) dx."""
    if z < 0:
        raise ValueError("z must be non-negative")
    m_e, m_s = p.m_e, p.m_s

    def f(x):
        a = np.asarray(psi_a(x), dtype=float)
        b = np.asarray(psi_b(x), dtype=float)
        log_part = _log_pow(x, m_s) - m_s * b
        if z:
            log_part = log_part + z * _log_incgamma(m_e, m_e * a)
        return np.exp(log_part)

    return _kernel_integral(f, lower, scale or _default_scale(p), breakpoints)


def kernel_U(
    p: SystemParams,
    psi_a: Psi,
    psi_b: Psi,
    *,
    as_published: bool = False,
    breakpoints: Sequence[float] = (),
    scale: Optional[float] = None,
) -> float:
    """U(a, b) = int_0^inf x^(N m_e - 1)/Gamma(N m_e) e^(-m_e a) R(m_s b) dx.

    ``R`` is the regularized upper incomplete gamma of shape ``m_s`` (the
    main-link survival), or of shape ``N m_e`` with the literal
    negative-argument extension when ``as_published``.
    """
    n_me = p.n_eves * p.m_e
    m_e, m_s = p.m_e, p.m_s
    lg = math.lgamma(n_me)

    def f(x):
        a = np.asarray(psi_a(x), dtype=float)
        b = np.asarray(psi_b(x), dtype=float)
        base = np.exp(_log_pow(x, n_me) - lg - m_e * a)
        if as_published:
            tail = _incgamma(n_me, m_s * b, literal=True) / math.gamma(n_me)
        else:
            tail = np.asarray(specfun.regularized_upper_gamma(m_s, np.maximum(m_s * b, 0.0)))
        return base * tail

    return _kernel_integral(f, 0.0, scale or _default_scale(p), breakpoints)


def kernel_V(
    p: SystemParams,
    psi_a: Psi,
    psi_b: Psi,
    *,
    lower: float,
    as_published: bool = False,
    breakpoints: Sequence[float] = (),
    scale: Optional[float] = None,
) -> float:
    """V over ``[lower, inf)``.

    Rederived: ``int x^(m_s-1) e^(-m_s b) Q(N m_e, m_e a) dx`` -- the
    main-link density against the survival of the summed wiretap SNR.
    As published: ``int x^(m_s-1) e^(-m_s a) Q(N m_s, m_e b) dx``.
    """
    m_e, m_s, n = p.m_e, p.m_s, p.n_eves

    def f(x):
        a = np.asarray(psi_a(x), dtype=float)
        b = np.asarray(psi_b(x), dtype=float)
        if as_published:
            expo, shape, arg = a, n * m_s, m_e * b
        else:
            expo, shape, arg = b, n * m_e, m_e * a
        log_part = _log_pow(x, m_s) - m_s * expo
        log_part = log_part + np.asarray(
            specfun.log_regularized_upper_gamma(shape, np.maximum(arg, 0.0))
        )
        return np.exp(log_part)

    return _kernel_integral(f, lower, scale or _default_scale(p), breakpoints)


# series assembly ----------------------------------------------------------------------

def _psis(p: SystemParams):
    d = dist.link_distributions(p, EveMode.NON_COOPERATIVE)
    a_s = d.main.rate / p.m_s
    a_e = d.eve_single.rate / p.m_e
    two_r = 2.0**p.r_s
    return {
        "A_s": a_s,
        "A_e": a_e,
        1: lambda x: a_e * x,
        2: lambda x: a_s * (two_r * (1.0 + x) - 1.0),
        3: lambda x: a_s * (two_r * x * C_CONST - 1.0),
        4: lambda x: a_e * (x * C_CONST / two_r - 1.0),
        5: lambda x: a_s * x,
        6: lambda x: a_e * x / two_r,
    }


def outage_series(
    p: SystemParams,
    arch: ArchitecturePair,
    mode: EveMode,
    *,
    variant: str = "rederived",
    reference: Optional[float] = None,
) -> OutageEstimate:
    """Closed-form (kernel) evaluation of the secrecy outage probability.

    Parameters
    ----------
    variant : {"rederived", "as_published"}
        ``as_published`` reproduces the printed expressions term by term.
    reference : float, optional
        Quadrature value to compare against; computed if omitted. The
        result's ``divergence`` flag is set when the two differ by more than
        :data:`DIVERGENCE_TOL`.

    Raises
    ------
    UnsupportedCaseError
        For non-integer fading shapes; use :func:`outage_quadrature`.
    """
    if variant not in ("rederived", "as_published"):
        raise ValueError(f"unknown series variant {variant!r}")
    if p.m_s != int(p.m_s) or p.m_e != int(p.m_e):
        raise UnsupportedCaseError(
            "closed-form series need integer Nakagami shapes; use outage_quadrature"
        )
    pub = variant == "as_published"
    m_s, m_e, n = int(p.m_s), int(p.m_e), p.n_eves
    psi = _psis(p)
    beta_s = m_s * psi["A_s"]
    beta_e = m_e * psi["A_e"]
    g_ms, g_me = math.gamma(m_s), math.gamma(m_e)
    two_r = 2.0**p.r_s
    eve_scale = (n * m_e if mode is EveMode.COOPERATIVE else m_e) / beta_e
    main_scale = m_s / beta_s

    if arch.at_s is S:
        b_psi = psi[2] if arch.at_e is S else psi[3]
        root = _threshold_root(arch, p.r_s)
        bps = [root] if root else []
        if mode is EveMode.NON_COOPERATIVE:
            total = 0.0
            for w in range(n):
                m_val = kernel_M(p, w, psi[1], b_psi, literal=pub, breakpoints=bps, scale=eve_scale)
                denom = g_me * g_ms if pub else g_me**w * g_ms
                total += comb(n - 1, w) * (-1) ** w / denom * m_val
            value = n / g_me * beta_e**m_e * total
            if not pub:
                value = 1.0 - value
        else:
            u_val = kernel_U(p, psi[1], b_psi, as_published=pub, breakpoints=bps, scale=eve_scale)
            value = 1.0 - beta_e ** (n * m_e) * u_val
    else:
        a_psi = psi[4] if arch.at_e is S else psi[6]
        if arch.at_e is S:
            lower = two_r / C_CONST
        else:
            lower = two_r if pub else 0.0
        if mode is EveMode.NON_COOPERATIVE:
            total = 0.0
            for z in range(n + 1):
                t_val = kernel_T(p, z, a_psi, psi[5], lower=lower, scale=main_scale)
                denom = g_ms * g_me if pub else g_ms * g_me**z
                total += comb(n, z) * (-1) ** z / denom * t_val
            value = 1.0 - beta_s**m_s * total
        else:
            first = 1.0 - specfun.regularized_upper_gamma(m_s, beta_s * lower)
            v_val = kernel_V(p, a_psi, psi[5], lower=lower, as_published=pub, scale=main_scale)
            sign = -1.0 if pub else 1.0
            value = first + sign * beta_s**m_s / g_ms * v_val

    if reference is None:
        reference = outage_quadrature(p, arch, mode).value
    method = Method.SERIES_AS_PUBLISHED if pub else Method.SERIES_REDERIVED
    raw = float(value)
    diverged = bool(not math.isfinite(raw) or abs(raw - reference) > DIVERGENCE_TOL)
    # literal forms can leave [0, 1]; keep the raw number in meta
    clipped = min(max(raw, 0.0), 1.0) if math.isfinite(raw) else float("nan")
    if not math.isfinite(clipped):
        clipped = 1.0
    return OutageEstimate(
        clipped,
        method.value,
        0.0,
        {"raw_value": raw, "reference": reference, "abs_diff": abs(raw - reference)},
        divergence=diverged,
    )
