"""System parameters, link budget, effective SNR under imperfect CSI, and
harvested energy for the AP -> {S, E_1..E_N} power-splitting downlink.

All quantities are linear (not dB). A link's instantaneous SNR is
``chi = k * |h|^2`` where ``k`` folds in the power-splitting fraction, the
CSI error and both noise terms, and ``|h|^2`` is Gamma distributed with
shape ``m`` and mean ``gbar / omega``.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass

import numpy as np

from .specfun import GammaShapeRate

__all__ = [
    "Architecture",
    "EveMode",
    "SystemParams",
    "LinkGeometry",
    "db_to_lin",
    "lin_to_db",
    "path_loss",
    "omega_from_geometry",
    "effective_snr_coeff",
    "snr_distribution",
    "sample_fading_power",
    "corrupt_csi",
    "harvested_energy",
    "mean_harvested_energy",
    "TABLE1",
]

SIDES = ("main", "eve")


class Architecture(enum.Enum):
    SEPARATED = "sp"
    INTEGRATED = "in"

    @property
    def label(self) -> str:
        return "Sp" if self is Architecture.SEPARATED else "In"


class EveMode(enum.Enum):
    NON_COOPERATIVE = "noncoop"
    COOPERATIVE = "coop"


def db_to_lin(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def lin_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class SystemParams:
    """Scalar model parameters (linear units).

    ``gbar_s``/``gbar_e`` are average SNRs; the per-link fading power has
    mean ``gbar / omega``. Every eavesdropper shares the ``_e`` parameters.
    """

    omega_s: float
    omega_e: float
    gbar_s: float
    gbar_e: float
    n0: float
    sigma2_s: float
    sigma2_e: float
    rho_s: float
    rho_e: float
    delta_s: float
    delta_e: float
    m_s: float
    m_e: float
    n_eves: int
    r_s: float
    zeta_s: float = 0.8
    zeta_e: float = 0.8

    def __post_init__(self):
        for name in ("omega_s", "omega_e", "gbar_s", "gbar_e", "n0"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")
        for name in ("sigma2_s", "sigma2_e"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"{name} must be non-negative, got {v!r}")
        for name in ("rho_s", "rho_e", "delta_s", "delta_e"):
            v = getattr(self, name)
            if not 0.0 <= v < 1.0:
                raise ValueError(f"{name} must lie in [0, 1), got {v!r}")
        for name in ("m_s", "m_e"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0.5):
                raise ValueError(f"{name} must be >= 0.5, got {v!r}")
        if int(self.n_eves) != self.n_eves or self.n_eves < 1:
            raise ValueError(f"n_eves must be an integer >= 1, got {self.n_eves!r}")
        object.__setattr__(self, "n_eves", int(self.n_eves))
        if not (math.isfinite(self.r_s) and self.r_s > 0):
            raise ValueError(f"r_s must be positive, got {self.r_s!r}")
        for name in ("zeta_s", "zeta_e"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"{name} must lie in (0, 1], got {v!r}")

    def replace(self, **changes) -> "SystemParams":
        return dataclasses.replace(self, **changes)

    def side(self, side: str) -> dict:
        """Per-side parameter view: omega, gbar, sigma2, rho, delta, m, zeta."""
        sfx = _suffix(side)
        return {
            k: getattr(self, f"{k}_{sfx}")
            for k in ("omega", "gbar", "sigma2", "rho", "delta", "m", "zeta")
        }

    def fading_mean(self, side: str) -> float:
        """E|h|^2 on one link (per eavesdropper on the wiretap side)."""
        v = self.side(side)
        return v["gbar"] / v["omega"]

    def with_mean_snr(self, side: str, gbar: float) -> "SystemParams":
        """Set the average SNR of a link by scaling its received power.

        The fading power mean ``gbar / omega`` is held fixed, so raising
        ``gbar`` also raises ``omega`` (and with it the CSI-error
        self-interference term).
        """
        sfx = _suffix(side)
        mean = self.fading_mean(side)
        return self.replace(**{f"gbar_{sfx}": gbar, f"omega_{sfx}": gbar / mean})


def _suffix(side: str) -> str:
    if side not in SIDES:
        raise ValueError(f"side must be 'main' or 'eve', got {side!r}")
    return "s" if side == "main" else "e"


TABLE1 = SystemParams(
    omega_s=db_to_lin(30.0),
    omega_e=db_to_lin(10.0),
    gbar_s=db_to_lin(30.0),
    gbar_e=db_to_lin(10.0),
    n0=db_to_lin(0.1),
    sigma2_s=db_to_lin(0.0),
    sigma2_e=db_to_lin(0.0),
    rho_s=0.8,
    rho_e=0.8,
    delta_s=0.2,
    delta_e=0.2,
    m_s=2.0,
    m_e=2.0,
    n_eves=5,
    r_s=1.0,
    zeta_s=0.8,
    zeta_e=0.8,
)


@dataclass(frozen=True)
class LinkGeometry:
    distance: float
    pathloss_exponent: float
    gain_tx: float = 1.0
    gain_rx: float = 1.0
    wavelength: float = 0.125
    tx_power: float = 1.0

    def __post_init__(self):
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{f.name} must be positive, got {v!r}")


def path_loss(geom: LinkGeometry) -> float:
    """Free-space style loss (4 pi)^2 d^Xi / (G_t G_r lambda^2)."""
    return (
        (4.0 * math.pi) ** 2
        * geom.distance**geom.pathloss_exponent
        / (geom.gain_tx * geom.gain_rx * geom.wavelength**2)
    )


def omega_from_geometry(geom: LinkGeometry) -> float:
    """Received power ratio P / P_loss."""
    return geom.tx_power / path_loss(geom)


def _noise_denominator(p: SystemParams, side: str, as_published: bool = False) -> float:
    v = p.side(side)
    # the printed wiretap SNR carries rho_s in the CSI-error term
    rho_err = p.rho_s if (as_published and side == "eve") else v["rho"]
    return v["omega"] * rho_err * v["delta"] ** 2 + v["rho"] * p.n0 + v["sigma2"]


def effective_snr_coeff(p: SystemParams, side: str, *, as_published: bool = False) -> float:
    """k in ``chi = k |h|^2``: rho Omega (1 - delta^2) / (Omega rho delta^2 + rho N0 + sigma^2).

    ``as_published=True`` reproduces the wiretap expression exactly as
    printed, with the main-link splitting factor in the CSI-error term.
    """
    v = p.side(side)
    return v["rho"] * v["omega"] * (1.0 - v["delta"] ** 2) / _noise_denominator(p, side, as_published)


def snr_distribution(
    p: SystemParams,
    side: str,
    mode: EveMode = EveMode.NON_COOPERATIVE,
    *,
    as_published: bool = False,
) -> GammaShapeRate:
    """Gamma law of the effective SNR.

    ``side='main'`` gives the legitimate link; ``side='eve'`` gives one
    wiretap link, or, with ``mode=COOPERATIVE``, the sum over all N
    eavesdroppers (shape ``N m_e``, same rate). The non-cooperative maximum
    is not Gamma; see :mod:`swipt_secrecy.distributions`.
    """
    v = p.side(side)
    k = effective_snr_coeff(p, side, as_published=as_published)
    rate = v["m"] / (k * p.fading_mean(side))
    shape = v["m"]
    if side == "eve" and mode is EveMode.COOPERATIVE:
        shape = p.n_eves * v["m"]
    return GammaShapeRate(shape, rate)


def sample_fading_power(m: float, mean: float, stream: np.random.Generator, size=None):
    """Draw |h|^2 ~ Gamma(shape m, mean ``mean``) (Nakagami-m power)."""
    if m < 0.5:
        raise ValueError(f"Nakagami shape must be >= 0.5, got {m!r}")
    if mean <= 0:
        raise ValueError(f"mean must be positive, got {mean!r}")
    return stream.gamma(m, mean / m, size=size)


def corrupt_csi(h, delta: float, stream: np.random.Generator):
    """Channel estimate sqrt(1 - delta^2) h + delta v with v ~ N(0, 1).

    One standard normal is drawn per element of ``h`` even when
    ``delta == 0``, so the stream advances identically for every delta.
    """
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"delta must lie in [0, 1), got {delta!r}")
    h = np.asarray(h, dtype=float)
    v = stream.standard_normal(h.shape)
    if delta == 0.0:
        out = h.copy()
    else:
        out = math.sqrt(1.0 - delta**2) * h + delta * v
    return float(out) if out.ndim == 0 else out


def harvested_energy(p: SystemParams, hhat_sq, side: str):
    """zeta (1 - rho) Omega |h_hat|^2 at S (``'main'``) or at one eavesdropper."""
    v = p.side(side)
    return v["zeta"] * (1.0 - v["rho"]) * v["omega"] * np.asarray(hhat_sq, dtype=float)


def mean_harvested_energy(p: SystemParams, side: str) -> float:
    """E[EH] using E|h_hat|^2 = (1 - delta^2) E|h|^2 + delta^2."""
    v = p.side(side)
    second_moment = (1.0 - v["delta"] ** 2) * p.fading_mean(side) + v["delta"] ** 2
    return v["zeta"] * (1.0 - v["rho"]) * v["omega"] * second_moment
