# %% [markdown]
# Wiretap SNR laws: strongest eavesdropper vs colluding eavesdroppers
#
# Non-cooperating eavesdroppers are as dangerous as the best of them (max of
# N gamma variables). Colluding ones add their SNRs (a single gamma variable
# with N times the shape). The sum always dominates the max.

# %%
import numpy as np

from swipt_secrecy import TABLE1, EveMode, link_distributions
from swipt_secrecy.distributions import eve_cdf

d_max = link_distributions(TABLE1, EveMode.NON_COOPERATIVE)
d_sum = link_distributions(TABLE1, EveMode.COOPERATIVE)
print("single-link mean SNR:", d_max.eve_single.mean)

# %%
x = np.array([1.0, 5.0, 10.0, 20.0, 40.0, 80.0])
print("      x   P(max<=x)   P(sum<=x)")
for xi, a, b in zip(x, eve_cdf(x, d_max), eve_cdf(x, d_sum)):
    print(f"{xi:7.1f}   {a:.6f}    {b:.6f}")

# %%
# A quick simulation check of the max law
rng = np.random.default_rng(0)
g = d_max.eve_single
draws = rng.gamma(g.shape, g.scale, size=(200_000, d_max.n_eves)).max(axis=1)
for xi in (5.0, 20.0):
    print(f"x={xi}: empirical {np.mean(draws <= xi):.4f}  analytic {eve_cdf(xi, d_max):.4f}")
