"""Finite-blocklength converse and achievability bounds for erasure and
binary symmetric channels, with exact small-code decoding oracles."""

from ._backend import BACKEND
from .achievability import (
    MCEstimate,
    dt_bound_bec,
    mc_dt_bound_bec,
    mc_rcu_bound_bsc,
    rcu_bound_bsc,
)
from .channels import (
    ChannelSpec,
    ChannelState,
    CodePoint,
    state_capacity,
    state_pmf,
    unsupported_states,
)
from .converse import (
    BoundResult,
    PerStateStrategy,
    converse_epsilon_lb,
    meta_converse_bec,
    per_state_error_lb,
    structural,
    wolfowitz,
)
from .errors import InvariantError
from .numerics import (
    LOG_ZERO,
    LogValue,
    binomial_pmf,
    log_binomial,
    negbinomial_pmf,
    stable_sum,
)
from .oracle import (
    Codebook,
    ExactError,
    exact_eps_bsc,
    exact_eps_qec,
    full_space_code,
    hamming74_code,
    load_codebook,
    min_distance,
    repetition_code,
    rs_code,
)
from .solver import (
    CurvePoint,
    CurveRequest,
    bound_epsilon_fn,
    curve_csv,
    invert_rate,
    run_curve,
    run_vlsf_curve,
)
from .vlsf import VlsfPoint, VlsfResult, packet_success_prob, vlsf_blocklength_lb

__all__ = [
    "BACKEND",
    "BoundResult",
    "ChannelSpec",
    "ChannelState",
    "Codebook",
    "CodePoint",
    "CurvePoint",
    "CurveRequest",
    "ExactError",
    "InvariantError",
    "LOG_ZERO",
    "LogValue",
    "MCEstimate",
    "PerStateStrategy",
    "VlsfPoint",
    "VlsfResult",
    "binomial_pmf",
    "bound_epsilon_fn",
    "converse_epsilon_lb",
    "curve_csv",
    "dt_bound_bec",
    "exact_eps_bsc",
    "exact_eps_qec",
    "full_space_code",
    "hamming74_code",
    "invert_rate",
    "load_codebook",
    "log_binomial",
    "mc_dt_bound_bec",
    "mc_rcu_bound_bsc",
    "meta_converse_bec",
    "min_distance",
    "negbinomial_pmf",
    "packet_success_prob",
    "per_state_error_lb",
    "rcu_bound_bsc",
    "repetition_code",
    "rs_code",
    "run_curve",
    "run_vlsf_curve",
    "stable_sum",
    "state_capacity",
    "state_pmf",
    "structural",
    "unsupported_states",
    "vlsf_blocklength_lb",
    "wolfowitz",
]

__version__ = "0.1.0"
