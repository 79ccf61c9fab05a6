import math

import numpy as np
import pytest

from swipt_secrecy.channel import TABLE1, EveMode, mean_harvested_energy
from swipt_secrecy.montecarlo import (
    CHUNK_SIZE,
    EnergySecrecyPoint,
    SimSpec,
    chunk_stream,
    simulate_chunk,
    simulate_energy_secrecy,
    simulate_outage,
)
from swipt_secrecy.outage import ARCH_PAIRS, outage_quadrature

SP_SP = ARCH_PAIRS[0]
NC, CO = EveMode.NON_COOPERATIVE, EveMode.COOPERATIVE


def test_reproducible_and_worker_independent():
    a = simulate_outage(SimSpec(TABLE1, SP_SP, NC, 30_000, seed=9, workers=1))
    b = simulate_outage(SimSpec(TABLE1, SP_SP, NC, 30_000, seed=9, workers=4))
    assert a.value == b.value and a.meta == b.meta
    c = simulate_outage(SimSpec(TABLE1, SP_SP, NC, 30_000, seed=10))
    assert c.value != a.value


def test_partial_last_chunk_counts_every_sample():
    n = 3 * CHUNK_SIZE + 17
    est = simulate_outage(SimSpec(TABLE1, SP_SP, NC, n))
    assert est.meta["n_samples"] == n


def test_chunk_streams_are_distinct():
    x = chunk_stream(1, 0).random(4)
    y = chunk_stream(1, 1).random(4)
    assert not np.allclose(x, y)
    np.testing.assert_array_equal(x, chunk_stream(1, 0).random(4))


def test_main_link_draws_do_not_depend_on_eavesdroppers():
    # same seed, different N: the main-link energy statistic is unchanged
    s1 = simulate_chunk(SimSpec(TABLE1, SP_SP, NC, 5000), 0, 1000)
    s2 = simulate_chunk(SimSpec(TABLE1.replace(n_eves=2), SP_SP, CO, 5000), 0, 1000)
    assert s1["eh_sum"] == s2["eh_sum"]


def test_wald_interval():
    est = simulate_outage(SimSpec(TABLE1, SP_SP, CO, 20_000))
    p = est.value
    assert est.ci_halfwidth == pytest.approx(1.96 * math.sqrt(p * (1 - p) / 20_000))


def test_outage_consistent_with_quadrature_off_reference():
    p = TABLE1.replace(m_s=1.3, m_e=0.8, n_eves=3, delta_e=0.5)
    for arch in ARCH_PAIRS:
        for mode in (NC, CO):
            q = outage_quadrature(p, arch, mode).value
            est = simulate_outage(SimSpec(p, arch, mode, 40_000, seed=5))
            sd = math.sqrt(max(q * (1 - q), 1e-12) / 40_000)
            assert abs(est.value - q) < 4.5 * sd


def test_energy_point_matches_analytic_mean():
    spec = SimSpec(TABLE1.replace(rho_s=0.4), SP_SP, NC, 50_000)
    pt = simulate_energy_secrecy(spec)
    want = mean_harvested_energy(spec.params, "main")
    assert abs(pt.mean_eh - want) < 4 * pt.ci_halfwidths["mean_eh"] / 1.96
    eve = simulate_energy_secrecy(spec, track_eh_side="eve")
    want_e = TABLE1.n_eves * mean_harvested_energy(spec.params, "eve")
    assert abs(eve.mean_eh - want_e) < 4 * eve.ci_halfwidths["mean_eh"] / 1.96
    assert pt.ergodic_secrecy == eve.ergodic_secrecy


def test_spec_validation():
    with pytest.raises(ValueError):
        SimSpec(TABLE1, SP_SP, NC, 999)
    with pytest.raises(ValueError):
        SimSpec(TABLE1, SP_SP, NC, workers=0)
    with pytest.raises(ValueError):
        simulate_energy_secrecy(SimSpec(TABLE1, SP_SP, NC, 1000), track_eh_side="relay")
    with pytest.raises(ValueError):
        EnergySecrecyPoint(0.5, -1.0, 0.1, 0.2)
