"""Acceptance criteria, each at its stated tolerance.

Every test records a PASS/FAIL line that ``conftest.py`` prints in the
terminal summary. Run just this module with::

    pytest tests/test_acceptance.py -rA
"""

import math
import time

import numpy as np
import pytest

from swipt_secrecy import specfun
from swipt_secrecy.channel import TABLE1, EveMode
from swipt_secrecy.cli import main
from swipt_secrecy.distributions import (
    eve_max_cdf,
    eve_max_pdf,
    eve_sum_cdf,
    eve_sum_pdf,
    link_distributions,
    main_cdf,
    main_pdf,
)
from swipt_secrecy.experiments import MCSettings, apply_axis, region_area, region_sweep
from swipt_secrecy.montecarlo import SimSpec, simulate_outage
from swipt_secrecy.outage import ARCH_PAIRS, EVE_MODES, ArchitecturePair, outage_quadrature, outage_series
from swipt_secrecy.quadrature import integrate_semi_infinite

N_MC = 100_000
SEED = 42
SP_SP, SP_IN, IN_SP, IN_IN = ARCH_PAIRS
NONCOOP, COOP = EVE_MODES


def quad(p, arch=SP_SP, mode=NONCOOP):
    return outage_quadrature(p, arch, mode).value


def test_ac1_quadrature_agrees_with_monte_carlo(record_criterion):
    t0 = time.perf_counter()
    worst = 0.0
    failures = []
    for arch in ARCH_PAIRS:
        for mode in EVE_MODES:
            q = quad(TABLE1, arch, mode)
            p_hat = simulate_outage(SimSpec(TABLE1, arch, mode, N_MC, SEED)).value
            band = 3.0 * math.sqrt(p_hat * (1.0 - p_hat) / N_MC)
            worst = max(worst, abs(q - p_hat) / band)
            if abs(q - p_hat) > band:
                failures.append(f"{arch.label} {mode.value}: {q:.6f} vs {p_hat:.6f}")
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed <= 60.0
    record_criterion(1, ok, f"8 cases, worst |diff|/band={worst:.2f}, {elapsed:.1f} s")
    assert not failures, failures
    assert elapsed <= 60.0


def test_ac2_series_fidelity_and_published_divergence(record_criterion, tmp_path):
    cases = [(a, NONCOOP) for a in ARCH_PAIRS] + [(SP_SP, COOP), (SP_IN, COOP)]
    worst = 0.0
    for arch, mode in cases:
        q = quad(TABLE1, arch, mode)
        s = outage_series(TABLE1, arch, mode, variant="rederived", reference=q)
        worst = max(worst, abs(s.meta["raw_value"] - q))
    # as-printed forms: every divergence flagged and arbitrated in the report
    out = tmp_path / "report.txt"
    code = main(["validate", "--output", str(out)])
    report = out.read_text()
    flagged_ok = True
    for arch in ARCH_PAIRS:
        for mode in EVE_MODES:
            pub = outage_series(TABLE1, arch, mode, variant="as_published")
            block = report.split(f"[{arch.label} {mode.value}]")[1].split("\n\n")[0]
            if pub.divergence:
                flagged_ok &= "DIVERGED" in block and "arbitration" in block
            else:
                flagged_ok &= "consistent" in block
    ok = worst <= 1e-3 and flagged_ok and code == 0
    record_criterion(2, ok, f"max |series-quad|={worst:.2e}, divergences flagged={flagged_ok}")
    assert worst <= 1e-3
    assert flagged_ok
    assert code == 0


def test_ac3_architecture_ordering(record_criterion):
    slack = 1e-9  # at low SNR several pairs sit at outage 1 together
    bad = []
    for g in range(0, 55, 5):
        p = apply_axis(TABLE1, "gbar_s_db", g)
        vals = {m: {a: quad(p, a, m) for a in ARCH_PAIRS} for m in EVE_MODES}
        for m in EVE_MODES:
            v = vals[m]
            if v[SP_IN] > min(v.values()) + slack or v[IN_SP] < max(v.values()) - slack:
                bad.append((g, m.value, "order"))
        for a in ARCH_PAIRS:
            if vals[COOP][a] < vals[NONCOOP][a] - slack:
                bad.append((g, a.label, "coop<noncoop"))
    record_criterion(3, not bad, f"11 SNR points x 2 modes, violations={len(bad)}")
    assert not bad


# Known failure: at delta_s = 0.2 the 40 -> 50 dB change is about 2.1e-3
# (the floor is only reached near 60 dB), and at delta_s = 0.001 the change
# is smaller, not larger, because the whole curve sits lower. The criterion is
# evaluated exactly as stated; the analysis is in the decisions ledger.
@pytest.mark.xfail(strict=True, reason="criterion not met by the model; see decisions ledger")
def test_ac4_outage_floor(record_criterion):
    def gap(delta_s):
        base = TABLE1.replace(delta_s=delta_s)
        p40 = quad(apply_axis(base, "gbar_s_db", 40.0))
        p50 = quad(apply_axis(base, "gbar_s_db", 50.0))
        return abs(p40 - p50)

    g_err, g_clean = gap(0.2), gap(0.001)
    ok = g_err < 1e-3 and g_clean > 10 * g_err
    record_criterion(4, ok, f"gap(0.2)={g_err:.3e} (<1e-3?), gap(0.001)={g_clean:.3e} (>10x?)")
    assert g_err < 1e-3
    assert g_clean > 10 * g_err


MONOTONE = {
    # axis: (grid, +1 nondecreasing / -1 nonincreasing)
    "r_s": ([0.5, 1.0, 1.5, 2.0, 2.5], +1),
    "rho_e": ([0.1, 0.3, 0.5, 0.7, 0.9], +1),
    "delta_s": ([0.001, 0.2, 0.4, 0.6, 0.8], +1),
    "n_eves": ([1, 2, 3, 5, 8], +1),
    "gbar_e_db": ([0.0, 5.0, 10.0, 15.0, 20.0], +1),
    "rho_s": ([0.1, 0.3, 0.5, 0.7, 0.9], -1),
    "delta_e": ([0.001, 0.2, 0.4, 0.6, 0.8], -1),
    "gbar_s_db": ([10.0, 20.0, 30.0, 40.0, 50.0], -1),
}


def test_ac5_monotonicity(record_criterion):
    bad = []
    for axis, (grid, sign) in MONOTONE.items():
        for arch in ARCH_PAIRS:
            for mode in EVE_MODES:
                vals = np.array([quad(apply_axis(TABLE1, axis, v), arch, mode) for v in grid])
                steps = sign * np.diff(vals)
                if np.any(steps < -1e-9):
                    bad.append((axis, arch.label, mode.value, float(steps.min())))
    record_criterion(5, not bad, f"8 axes x 8 cases, violations={len(bad)}")
    assert not bad, bad


RHO = np.linspace(0.05, 0.95, 19)


def _curves(p, modes=EVE_MODES):
    return region_sweep(p, RHO, modes, mc=MCSettings(N_MC, SEED, 1))


def test_ac6_energy_secrecy_region(record_criterion):
    c5, c10 = _curves(TABLE1), _curves(TABLE1.replace(n_eves=10))
    checks = {}
    # area comparisons must hold beyond the (worst-case) MC half-widths
    for mode in EVE_MODES:
        a5, h5 = region_area(c5[mode])
        a10, h10 = region_area(c10[mode])
        checks[f"N10<N5 {mode.value}"] = a10 + h10 < a5 - h5
    for n, c in ((5, c5), (10, c10)):
        ac, hc = region_area(c[COOP])
        an, hn = region_area(c[NONCOOP])
        checks[f"coop<noncoop N={n}"] = ac + hc < an - hn
    # CSI: compare at matched harvested energy by interpolating the other curve
    good = _curves(TABLE1.replace(delta_s=0.001, delta_e=0.001), [NONCOOP])[NONCOOP]
    poor = c5[NONCOOP]
    x_p = np.array([q.mean_eh for q in poor])
    order = np.argsort(x_p)
    y_p = np.array([q.ergodic_secrecy for q in poor])[order]
    ci_p = np.array([q.ci_halfwidths["ergodic_secrecy"] for q in poor])[order]
    x_p = x_p[order]
    dominated = True
    for q in good:
        if not x_p[0] <= q.mean_eh <= x_p[-1]:
            continue
        y = np.interp(q.mean_eh, x_p, y_p)
        ci = np.interp(q.mean_eh, x_p, ci_p) + q.ci_halfwidths["ergodic_secrecy"]
        dominated &= q.ergodic_secrecy >= y - ci
    checks["delta 0.001 dominates 0.2"] = dominated
    failed = [k for k, v in checks.items() if not v]
    record_criterion(6, not failed, f"{len(checks) - len(failed)}/{len(checks)} region checks")
    assert not failed, failed


def _rel(a, b):
    return np.abs(a - b) / np.maximum(np.abs(b), 1e-300)


def test_ac7_special_function_suite(record_criterion):
    rng = np.random.default_rng(7)
    worst_id = 0.0
    for _ in range(200):
        s = rng.uniform(0.5, 30.0)
        x = rng.uniform(0.01, 60.0)
        p, q = specfun.regularized_gamma_pq(s, x)
        worst_id = max(worst_id, abs(p + q - 1.0))
        # Gamma(s+1, x) = s Gamma(s, x) + x^s e^-x
        lhs = specfun.upper_incomplete_gamma(s + 1, x)
        rhs = s * specfun.upper_incomplete_gamma(s, x) + math.exp(s * math.log(x) - x)
        worst_id = max(worst_id, _rel(lhs, rhs))
    for n in range(1, 25):
        for x in rng.uniform(0.01, 50.0, 10):
            worst_id = max(worst_id, _rel(specfun.upper_incomplete_gamma(n, x),
                                          specfun.upper_gamma_integer_series(n, x)))

    d_nc = link_distributions(TABLE1.replace(m_s=1.5, m_e=0.7), NONCOOP)
    d_c = link_distributions(TABLE1.replace(m_s=3.0, m_e=0.6), COOP)
    pairs = [
        (lambda x: main_cdf(x, d_nc), lambda x: main_pdf(x, d_nc), d_nc.main.mean),
        (lambda x: eve_max_cdf(x, d_nc), lambda x: eve_max_pdf(x, d_nc), d_nc.eve_single.mean * 3),
        (lambda x: eve_sum_cdf(x, d_c), lambda x: eve_sum_pdf(x, d_c), d_c.eve_sum.mean),
        (lambda x: main_cdf(x, d_c), lambda x: main_pdf(x, d_c), d_c.main.mean),
    ]
    worst_mass = 0.0
    worst_fd = 0.0
    for cdf, pdf, scale in pairs:
        # x = t^2 removes the integrable singularity of shapes below 1
        res = integrate_semi_infinite(lambda t: pdf(t * t) * 2 * t, 0.0, scale=math.sqrt(scale),
                                      tail_bound=lambda t: 1.0 - cdf(t * t))
        worst_mass = max(worst_mass, abs(res.value - 1.0))
        for x in scale * np.array([0.05, 0.3, 1.0, 2.0, 4.0]):
            h = 1e-3 * x
            # five-point central difference
            fd = (-cdf(x + 2 * h) + 8 * cdf(x + h) - 8 * cdf(x - h) + cdf(x - 2 * h)) / (12 * h)
            worst_fd = max(worst_fd, _rel(fd, pdf(x)))
    ok = worst_id <= 1e-10 and worst_mass <= 1e-8 and worst_fd <= 1e-6
    record_criterion(7, ok, f"identities {worst_id:.1e}, pdf mass {worst_mass:.1e}, "
                            f"finite-diff {worst_fd:.1e}")
    assert worst_id <= 1e-10
    assert worst_mass <= 1e-8
    assert worst_fd <= 1e-6


def test_ac8_validate_deterministic_across_workers(record_criterion, tmp_path):
    outs = []
    for workers in (1, 3):
        path = tmp_path / f"report_{workers}.txt"
        main(["validate", "--seed", "42", "--workers", str(workers), "--output", str(path)])
        outs.append(path.read_bytes())
    same = outs[0] == outs[1]
    record_criterion(8, same, "workers=1 vs workers=3 byte-identical" if same else "reports differ")
    assert same
