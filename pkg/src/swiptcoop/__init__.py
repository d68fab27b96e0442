"""swiptcoop: outage analysis of SWIPT-assisted two-user downlink cooperation.

Three protocols are modeled at SINR level over quasi-static Rayleigh fading:

* csanc - conventional SWIPT-assisted NOMA cooperation (only the cell-center
  user harvests and relays),
* isanc - impartial SWIPT-assisted NOMA cooperation (both users do),
* isaoc - the impartial scheme in an OFDMA framework.

The package estimates per-user and system outage probabilities by Monte
Carlo, evaluates the matching closed-form and high-SNR expressions, fits
diversity orders, evaluates diversity-multiplexing trade-off formulas, and
searches power/frequency allocations, including the error-free relaying
limit.
"""

from .params import (
    PROTOCOLS,
    SimulationSettings,
    SystemParams,
    ValidationError,
    dbm_to_mw,
    load_config,
    mw_to_dbm,
    validate,
)
from .channel import ChannelRealization, sample
from .noma import (
    TrialOutcome,
    eh_factor,
    evaluate_csanc_trial,
    evaluate_isanc_trial,
    noma_thresholds,
)
from .ofdma import evaluate_isaoc_trial, ofdma_thresholds
from .montecarlo import OutageEstimate, estimate, event_frequencies
from .numerics import DomainError, QuadratureError, bessel_k1, quadrature
from .analytic import (
    NomaEventProbs,
    OfdmaEventProbs,
    OutageProbs,
    noma_event_probs,
    ofdma_event_probs,
    outage_csanc,
    outage_isanc,
    outage_isaoc,
)
from .asymptotic import (
    DmtCurve,
    diversity_slope,
    dmt,
    dmt_curve,
    highsnr_noma_event_probs,
    highsnr_ofdma_event_probs,
    nse,
)
from .efrc import (
    efrc_optimal_isanc,
    efrc_optimal_isaoc,
    efrc_sop_csanc,
    efrc_sop_isanc,
    efrc_sop_isaoc,
)
from .optimizer import GridSearchResult, minimize_sop

__version__ = "0.1.0"
