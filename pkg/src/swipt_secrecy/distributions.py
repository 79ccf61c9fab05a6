"""Effective-SNR laws: the main link, the strongest of N wiretap links
(non-cooperative eavesdroppers), and the sum of N wiretap links
(cooperative eavesdroppers).

The max law has CDF ``F1(x)^N`` and PDF ``N f1(x) F1(x)^(N-1)`` where
``F1``/``f1`` belong to a single wiretap link. The sum law is Gamma with
shape ``N m_e`` and the single-link rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .channel import EveMode, SystemParams, snr_distribution
from .specfun import GammaShapeRate

__all__ = [
    "LinkDistributions",
    "link_distributions",
    "main_cdf",
    "main_pdf",
    "main_sf",
    "eve_max_cdf",
    "eve_max_cdf_series",
    "eve_max_pdf",
    "eve_max_logpdf",
    "eve_max_sf",
    "eve_sum_cdf",
    "eve_sum_pdf",
    "eve_sum_sf",
    "eve_cdf",
    "eve_pdf",
    "eve_logpdf",
    "eve_sf",
]


@dataclass(frozen=True)
class LinkDistributions:
    main: GammaShapeRate
    eve_single: GammaShapeRate
    n_eves: int
    mode: EveMode

    def __post_init__(self):
        if int(self.n_eves) != self.n_eves or self.n_eves < 1:
            raise ValueError(f"n_eves must be an integer >= 1, got {self.n_eves!r}")

    @property
    def eve_sum(self) -> GammaShapeRate:
        return GammaShapeRate(self.n_eves * self.eve_single.shape, self.eve_single.rate)


def link_distributions(p: SystemParams, mode: EveMode) -> LinkDistributions:
    return LinkDistributions(
        main=snr_distribution(p, "main"),
        eve_single=snr_distribution(p, "eve"),
        n_eves=p.n_eves,
        mode=mode,
    )


def _clamped(x):
    x = np.asarray(x, dtype=float)
    return x, np.maximum(x, 0.0)


def _scalar(out, like):
    return float(out) if np.ndim(like) == 0 else out


# main link -----------------------------------------------------------------

def main_cdf(x, d: LinkDistributions):
    """1 - Q(m_s, beta_s x); zero for x <= 0."""
    x, xc = _clamped(x)
    return _scalar(specfun.regularized_lower_gamma(d.main.shape, d.main.rate * xc), x)


def main_sf(x, d: LinkDistributions):
    x, xc = _clamped(x)
    return _scalar(specfun.regularized_upper_gamma(d.main.shape, d.main.rate * xc), x)


def main_pdf(x, d: LinkDistributions):
    return specfun.gamma_pdf(x, d.main)


# non-cooperative: max of N ---------------------------------------------------

def _single_log_cdf(xc, g: GammaShapeRate):
    return specfun.log_regularized_lower_gamma(g.shape, g.rate * xc)


def eve_max_cdf(x, d: LinkDistributions):
    """[1 - Q(m_e, beta_e x)]^N."""
    x, xc = _clamped(x)
    with np.errstate(divide="ignore"):
        out = np.exp(d.n_eves * _single_log_cdf(xc, d.eve_single))
    return _scalar(out, x)


def eve_max_sf(x, d: LinkDistributions):
    """1 - F1^N computed without cancellation when F1 is near 1."""
    x, xc = _clamped(x)
    p, q = specfun.regularized_gamma_pq(d.eve_single.shape, d.eve_single.rate * xc)
    p, q = np.asarray(p), np.asarray(q)
    with np.errstate(divide="ignore"):
        out = np.where(
            q < 0.5,
            -np.expm1(d.n_eves * np.log1p(-q)),
            1.0 - p**d.n_eves,
        )
    return _scalar(out, x)


def eve_max_cdf_series(x, d: LinkDistributions):
    """Integer-shape finite-sum form of the max CDF.

    ``[1 - exp(-beta x) sum_{r<m} (beta x)^r / r!]^N``; requires integer m_e.
    """
    m = d.eve_single.shape
    if m != int(m):
        raise ValueError("finite-sum form requires an integer fading shape")
    x, xc = _clamped(x)
    y = d.eve_single.rate * xc
    term = np.ones_like(y)
    total = np.ones_like(y)
    for r in range(1, int(m)):
        term = term * y / r
        total = total + term
    out = (1.0 - np.exp(-y) * total) ** d.n_eves
    return _scalar(out, x)


def eve_max_logpdf(x, d: LinkDistributions):
    """log N + log f1(x) + (N - 1) log F1(x)."""
    x, xc = _clamped(x)
    g = d.eve_single
    with np.errstate(divide="ignore", invalid="ignore"):
        out = math.log(d.n_eves) + np.asarray(specfun.gamma_logpdf(xc, g))
        if d.n_eves > 1:
            out = out + (d.n_eves - 1) * _single_log_cdf(xc, g)
    out = np.where(np.isnan(out), -np.inf, out)
    out = np.where(x < 0, -np.inf, out)
    return _scalar(out, x)


def eve_max_pdf(x, d: LinkDistributions):
    return np.exp(eve_max_logpdf(x, d))


# cooperative: sum of N --------------------------------------------------------

def eve_sum_cdf(x, d: LinkDistributions):
    """1 - Q(N m_e, beta_e x)."""
    x, xc = _clamped(x)
    g = d.eve_sum
    return _scalar(specfun.regularized_lower_gamma(g.shape, g.rate * xc), x)


def eve_sum_sf(x, d: LinkDistributions):
    x, xc = _clamped(x)
    g = d.eve_sum
    return _scalar(specfun.regularized_upper_gamma(g.shape, g.rate * xc), x)


def eve_sum_pdf(x, d: LinkDistributions):
    return specfun.gamma_pdf(x, d.eve_sum)


# mode dispatch ------------------------------------------------------------------

def eve_cdf(x, d: LinkDistributions):
    if d.mode is EveMode.COOPERATIVE:
        return eve_sum_cdf(x, d)
    return eve_max_cdf(x, d)


def eve_sf(x, d: LinkDistributions):
    if d.mode is EveMode.COOPERATIVE:
        return eve_sum_sf(x, d)
    return eve_max_sf(x, d)


def eve_logpdf(x, d: LinkDistributions):
    if d.mode is EveMode.COOPERATIVE:
        return specfun.gamma_logpdf(x, d.eve_sum)
    return eve_max_logpdf(x, d)


def eve_pdf(x, d: LinkDistributions):
    return np.exp(eve_logpdf(x, d))
