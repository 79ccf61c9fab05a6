# %% [markdown]
# Trading harvested energy for secrecy
#
# Sweeping the power-splitting factor at S traces an operating curve:
# energy harvested at S against the ergodic secrecy rate E[(C_s - C_e)^+].
# More eavesdroppers, collusion or a poorer channel estimate all shrink
# the area under the curve.

# %%
import numpy as np

from swipt_secrecy import TABLE1, EveMode, MCSettings, region_area, region_sweep

rho = np.linspace(0.05, 0.95, 10)
mc = MCSettings(n_samples=20_000, seed=7)


def area(p, mode):
    pts = region_sweep(p, rho, [mode], mc=mc)[mode]
    return region_area(pts)


cases = {
    "N=5  non-coop":              (TABLE1, EveMode.NON_COOPERATIVE),
    "N=10 non-coop":              (TABLE1.replace(n_eves=10), EveMode.NON_COOPERATIVE),
    "N=5  coop":                  (TABLE1, EveMode.COOPERATIVE),
    "N=5  non-coop delta=0.001":  (TABLE1.replace(delta_s=0.001, delta_e=0.001), EveMode.NON_COOPERATIVE),
}
for label, (p, mode) in cases.items():
    a, hw = area(p, mode)
    print(f"{label:28s} area = {a:8.1f} +/- {hw:.1f}")

# %%
pts = region_sweep(TABLE1, rho, [EveMode.NON_COOPERATIVE], mc=mc)[EveMode.NON_COOPERATIVE]
print("\n rho_s   E[EH]     ergodic secrecy [bit/s/Hz]")
for q in pts:
    print(f"{q.rho_s:6.2f}  {q.mean_eh:8.1f}   {q.ergodic_secrecy:.4f}")
