# %% [markdown]
# Checking the analytic results by simulation
#
# The Monte Carlo oracle draws fading, corrupts the channel estimate and
# counts secrecy outages directly, so it shares no algebra with the
# analytic routes. Chunked counter-based streams make results independent
# of the number of worker threads.

# %%
import math

from swipt_secrecy import TABLE1, ARCH_PAIRS, EVE_MODES, SimSpec, outage_quadrature, simulate_outage

n = 100_000
print("case              quadrature   monte carlo   |diff|/sigma")
for arch in ARCH_PAIRS:
    for mode in EVE_MODES:
        q = outage_quadrature(TABLE1, arch, mode).value
        mc = simulate_outage(SimSpec(TABLE1, arch, mode, n, seed=42))
        sigma = math.sqrt(mc.value * (1 - mc.value) / n)
        print(f"{arch.label} {mode.value:8s}    {q:.6f}     {mc.value:.6f}      {abs(q - mc.value) / sigma:.2f}")

# %%
a = simulate_outage(SimSpec(TABLE1, ARCH_PAIRS[0], EVE_MODES[0], 50_000, seed=1, workers=1))
b = simulate_outage(SimSpec(TABLE1, ARCH_PAIRS[0], EVE_MODES[0], 50_000, seed=1, workers=4))
print("\nsame answer with 1 and 4 workers:", a.value == b.value)
