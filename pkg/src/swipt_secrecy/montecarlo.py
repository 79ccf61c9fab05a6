"""Monte Carlo oracle for secrecy outage, ergodic secrecy rate and harvested
energy.

Realizations are generated in fixed-size chunks. Chunk ``j`` draws from its
own Philox stream keyed by ``SeedSequence(seed, spawn_key=(j,))``, and chunk
results are reduced in index order, so the output for a given
``(seed, n_samples)`` is bit-identical for any number of workers.

Within a chunk the draw order is: main fading power, main CSI noise,
wiretap fading powers, wiretap CSI noises. The main-link quantities are
therefore identical across runs that differ only in eavesdropper settings.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import (
    EveMode,
    SystemParams,
    corrupt_csi,
    effective_snr_coeff,
    harvested_energy,
    sample_fading_power,
)
from .outage import ArchitecturePair, Method, OutageEstimate, secrecy_rate

__all__ = [
    "CHUNK_SIZE",
    "SimSpec",
    "EnergySecrecyPoint",
    "chunk_stream",
    "simulate_chunk",
    "simulate_outage",
    "simulate_energy_secrecy",
]

CHUNK_SIZE = 4096
Z95 = 1.96


@dataclass(frozen=True)
class SimSpec:
    params: SystemParams
    arch: ArchitecturePair
    mode: EveMode
    n_samples: int = 100_000
    seed: int = 42
    workers: int = 1

    def __post_init__(self):
        if self.n_samples < 1000:
            raise ValueError("n_samples must be at least 1000")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass
class EnergySecrecyPoint:
    rho_s: float
    mean_eh: float
    ergodic_secrecy: float
    outage: float
    ci_halfwidths: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mean_eh < 0 or self.ergodic_secrecy < 0:
            raise ValueError("energy and ergodic secrecy must be non-negative")


def chunk_stream(seed: int, chunk_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(chunk_index,))
    return np.random.Generator(np.random.Philox(ss))


def _chunk_sizes(n: int) -> list[int]:
    full, rest = divmod(n, CHUNK_SIZE)
    return [CHUNK_SIZE] * full + ([rest] if rest else [])


def simulate_chunk(spec: SimSpec, chunk_index: int, size: int, track_eh_side: str = "main") -> dict:
    """Sufficient statistics of one chunk of realizations."""
    p = spec.params
    rng = chunk_stream(spec.seed, chunk_index)
    hs2 = sample_fading_power(p.m_s, p.fading_mean("main"), rng, size)
    hhat_s = corrupt_csi(np.sqrt(hs2), p.delta_s, rng)
    he2 = sample_fading_power(p.m_e, p.fading_mean("eve"), rng, (size, p.n_eves))
    hhat_e = corrupt_csi(np.sqrt(he2), p.delta_e, rng)

    # the SNR depends on the true gain; the estimate enters only through k
    chi_s = effective_snr_coeff(p, "main") * hs2
    chi_ie = effective_snr_coeff(p, "eve") * he2
    chi_e = chi_ie.sum(axis=1) if spec.mode is EveMode.COOPERATIVE else chi_ie.max(axis=1)

    csec = secrecy_rate(chi_s, chi_e, spec.arch)
    if track_eh_side == "main":
        eh = harvested_energy(p, hhat_s**2, "main")
    elif track_eh_side == "eve":
        eh = harvested_energy(p, hhat_e**2, "eve").sum(axis=1)
    else:
        raise ValueError(f"track_eh_side must be 'main' or 'eve', got {track_eh_side!r}")
    return {
        "n": size,
        "outages": int(np.count_nonzero(csec < p.r_s)),
        "csec_sum": float(csec.sum()),
        "csec_sq": float(np.square(csec).sum()),
        "eh_sum": float(eh.sum()),
        "eh_sq": float(np.square(eh).sum()),
    }


def _run(spec: SimSpec, track_eh_side: str = "main") -> dict:
    sizes = _chunk_sizes(spec.n_samples)
    jobs = list(enumerate(sizes))

    def work(job):
        idx, size = job
        return simulate_chunk(spec, idx, size, track_eh_side)

    if spec.workers == 1 or len(jobs) == 1:
        parts = [work(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            parts = list(pool.map(work, jobs))
    total = {k: 0 for k in parts[0]}
    for part in parts:
        for k, v in part.items():
            total[k] += v
    return total


def _mean_ci(s: float, sq: float, n: int) -> tuple[float, float]:
    mean = s / n
    var = max(sq / n - mean * mean, 0.0) * n / (n - 1)
    return mean, Z95 * math.sqrt(var / n)


def simulate_outage(spec: SimSpec) -> OutageEstimate:
    """Fraction of realizations with [C_s - C_e]^+ < R_s, with Wald 95% CI."""
    t = _run(spec)
    n = t["n"]
    p_hat = t["outages"] / n
    hw = Z95 * math.sqrt(p_hat * (1.0 - p_hat) / n)
    return OutageEstimate(
        p_hat,
        Method.MONTE_CARLO.value,
        hw,
        {"n_samples": n, "outages": t["outages"], "seed": spec.seed},
    )


def simulate_energy_secrecy(spec: SimSpec, track_eh_side: str = "main") -> EnergySecrecyPoint:
    """Mean harvested energy and ergodic secrecy rate E[(C_s - C_e)^+].

    ``track_eh_side='eve'`` reports the energy summed over all N
    eavesdroppers instead of the energy at S.
    """
    t = _run(spec, track_eh_side)
    n = t["n"]
    eh, eh_ci = _mean_ci(t["eh_sum"], t["eh_sq"], n)
    cs, cs_ci = _mean_ci(t["csec_sum"], t["csec_sq"], n)
    p_hat = t["outages"] / n
    return EnergySecrecyPoint(
        rho_s=spec.params.rho_s,
        mean_eh=eh,
        ergodic_secrecy=cs,
        outage=p_hat,
        ci_halfwidths={
            "mean_eh": eh_ci,
            "ergodic_secrecy": cs_ci,
            "outage": Z95 * math.sqrt(p_hat * (1.0 - p_hat) / n),
        },
    )
