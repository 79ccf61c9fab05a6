# %% [markdown]
# Channel estimation error and power splitting
#
# Estimation error at S caps the useful SNR: once the self-interference
# term dominates, pushing the average SNR higher stops helping. Estimation
# error at the eavesdroppers works in S's favour.

# %%
from swipt_secrecy import TABLE1, ARCH_PAIRS, EveMode, outage_quadrature
from swipt_secrecy.experiments import apply_axis

sp_sp, nc = ARCH_PAIRS[0], EveMode.NON_COOPERATIVE

print("gbar_s[dB]   delta_s=0.2   delta_s=0.001")
for g in (20, 30, 40, 50, 60, 70):
    row = [outage_quadrature(apply_axis(TABLE1.replace(delta_s=d), "gbar_s_db", g), sp_sp, nc).value
           for d in (0.2, 0.001)]
    print(f"{g:10d}   {row[0]:.6f}      {row[1]:.6f}")

# %% [markdown]
# With delta_s = 0.2 the curve flattens onto a floor near 0.338; with a
# near-perfect estimate the outage keeps falling toward zero.

# %%
print("\ndelta_e   P_out (Sp-Sp, non-cooperative)")
for d in (0.001, 0.3, 0.6, 0.9):
    print(f"{d:7.3f}   {outage_quadrature(TABLE1.replace(delta_e=d), sp_sp, nc).value:.6f}")

# %%
print("\nrho_s   P_out   (more power to decoding, less to harvesting)")
for rho in (0.1, 0.3, 0.5, 0.7, 0.9):
    print(f"{rho:5.1f}   {outage_quadrature(TABLE1.replace(rho_s=rho), sp_sp, nc).value:.6f}")
