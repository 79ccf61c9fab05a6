"""Secrecy outage probability and harvested energy for a SWIPT downlink
with multiple energy-harvesting eavesdroppers.

The analytic routes (direct quadrature and the kernel series) live in
:mod:`.outage`; :mod:`.montecarlo` is an independent simulation oracle.
"""

from .channel import (
    TABLE1,
    Architecture,
    EveMode,
    SystemParams,
    db_to_lin,
    effective_snr_coeff,
    harvested_energy,
    lin_to_db,
    mean_harvested_energy,
)
from .distributions import LinkDistributions, link_distributions
from .experiments import (
    MCSettings,
    SweepRow,
    SweepSpec,
    figure_sweep,
    nakagami_surface,
    region_area,
    region_sweep,
    sweep_outage,
)
from .montecarlo import EnergySecrecyPoint, SimSpec, simulate_energy_secrecy, simulate_outage
from .outage import (
    ARCH_PAIRS,
    EVE_MODES,
    ArchitecturePair,
    OutageEstimate,
    UnsupportedCaseError,
    outage_quadrature,
    outage_series,
    secrecy_rate,
)
from .quadrature import QuadratureError

__version__ = "0.1.0"
