"""Random-coding achievability bounds used for comparison curves.

Closed-form specialisations under equiprobable inputs:

* :func:`dt_bound_bec`: after e erasures the information density is
  (n - e) bits, so the dependence-testing expectation collapses to
  sum_e C(n,e) d^e (1-d)^(n-e) min{1, (M-1)/2 * 2^-(n-e)};
* :func:`rcu_bound_bsc`: a competing codeword beats a t-error event iff it
  lies within distance t of the output, so the union term is
  min{1, (M-1) 2^-n sum_{k<=t} C(n,k)}.

Both specialisations are validated against seeded Monte-Carlo evaluations
of the underlying expectations (:func:`mc_dt_bound_bec`,
:func:`mc_rcu_bound_bsc`); the inner cumulative counts survive n = 2000 by
running in log domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import LN2
from .numerics import log_binomial_row, logsumexp_array


def _ln_m_minus_1(log2M: float) -> float:
    """ln(M - 1) from log2 M, exact -inf at M = 1, stable for huge M."""
    if log2M < 0:
        raise ValueError(f"codebook size must be >= 1, got log2M={log2M}")
    if log2M == 0:
        return float("-inf")
    ln_m = log2M * LN2
    return ln_m + math.log1p(-math.exp(-ln_m))


def _ln_state_pmf(n: int, counts: np.ndarray, delta: float) -> np.ndarray:
    if delta == 0.0:
        return np.where(counts == 0, 0.0, -np.inf)
    if delta == 1.0:
        return np.where(counts == n, 0.0, -np.inf)
    return (
        log_binomial_row(n)[counts]
        + counts * math.log(delta)
        + (n - counts) * math.log1p(-delta)
    )


def _check_args(n: int, M: float, delta: float) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"blocklength n must be an integer >= 1, got {n}")
    if not M >= 1:
        raise ValueError(f"codebook size M must be >= 1, got {M}")
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must be in [0,1], got {delta}")


def dt_bound_bec(n: int, M: float, delta: float) -> float:
    """Dependence-testing upper bound for the binary erasure channel."""
    _check_args(n, M, delta)
    return _dt_bound_bec_log2M(n, math.log2(M), delta)


def _dt_bound_bec_log2M(n: int, log2M: float, delta: float) -> float:
    e = np.arange(n + 1, dtype=np.int64)
    ln_half_m1 = _ln_m_minus_1(log2M) - LN2
    ln_min = np.minimum(0.0, ln_half_m1 - (n - e) * LN2)
    ln_terms = _ln_state_pmf(n, e, delta) + ln_min
    keep = ln_terms > -np.inf
    if not keep.any():
        return 0.0
    return min(math.exp(logsumexp_array(ln_terms[keep])), 1.0)


def rcu_bound_bsc(n: int, M: float, delta: float) -> float:
    """Random-coding-union upper bound for the binary symmetric channel."""
    _check_args(n, M, delta)
    return _rcu_bound_bsc_log2M(n, math.log2(M), delta)


def _rcu_bound_bsc_log2M(n: int, log2M: float, delta: float) -> float:
    t = np.arange(n + 1, dtype=np.int64)
    # ln sum_{k<=t} C(n,k), iterated log-sum-exp
    ln_cum = np.logaddexp.accumulate(log_binomial_row(n))
    ln_min = np.minimum(0.0, _ln_m_minus_1(log2M) - n * LN2 + ln_cum)
    ln_terms = _ln_state_pmf(n, t, delta) + ln_min
    keep = ln_terms > -np.inf
    if not keep.any():
        return 0.0
    return min(math.exp(logsumexp_array(ln_terms[keep])), 1.0)


@dataclass(frozen=True, slots=True)
class MCEstimate:
    """Monte-Carlo mean with its standard error."""

    mean: float
    std_err: float
    samples: int


def mc_dt_bound_bec(
    n: int, M: float, delta: float, samples: int = 10**6, seed: int = 0
) -> MCEstimate:
    """Monte-Carlo evaluation of the dependence-testing expectation.

    Samples channel noise (erasure counts are Binomial(n, delta)) and
    averages exp(-[i - ln((M-1)/2)]^+) with the information density
    i = (n - e) ln 2 computed per realisation.
    """
    _check_args(n, M, delta)
    rng = np.random.default_rng(seed)
    e = rng.binomial(n, delta, size=samples)
    ln_half_m1 = _ln_m_minus_1(math.log2(M)) - LN2
    vals = np.exp(np.minimum(0.0, ln_half_m1 - (n - e) * LN2))
    return MCEstimate(
        float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(samples)), samples
    )


def mc_rcu_bound_bsc(
    n: int, M: float, delta: float, samples: int = 10**6, seed: int = 0
) -> MCEstimate:
    """Monte-Carlo evaluation of the random-coding-union expectation.

    The inner probability that an independent uniform codeword ties or
    beats the transmitted one is counted by exhaustive enumeration of the
    2^n competitor offsets (so n <= 24), and the outer expectation over
    channel noise is sampled.
    """
    _check_args(n, M, delta)
    if n > 24:
        raise ValueError(f"exhaustive competitor enumeration needs n <= 24, got {n}")
    rng = np.random.default_rng(seed)
    # number of words within distance t of any fixed centre, by enumeration
    weights = np.bitwise_count(np.arange(1 << n, dtype=np.int64))
    cnt_le = np.cumsum(np.bincount(weights, minlength=n + 1)).astype(np.float64)
    t = rng.binomial(n, delta, size=samples)
    vals = np.minimum(1.0, (M - 1.0) * cnt_le[t] / float(1 << n))
    return MCEstimate(
        float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(samples)), samples
    )
