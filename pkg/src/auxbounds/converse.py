"""Converse bounds: state-split error lower bounds and the hypothesis-testing
closed form for the binary erasure channel.

The engine sums, over every state s whose capacity cannot carry the message
(see :func:`auxbounds.channels.unsupported_states`), the state probability
times a per-state error lower bound.  Two per-state strategies exist:

* structural: uses the exact posterior of the optimal decoder given the
  state, giving 1 - q^(n-s-logqM) for erasures and
  1 - C(n,s)^-1 2^(n-logqM) for flips;
* wolfowitz: the strong-converse estimate 1 - 4A/x^2 - exp(-x/2) with
  x = (logqM - C_s) converted to nats, applied with auxiliary blocklength 1;
  A > 0 is a free constant surfaced in all outputs.

Everything is evaluated in (n, logqM) coordinates; message sizes never need
to be integer powers of q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import BSC, LN2, QEC, ChannelSpec, CodePoint, unsupported_states
from .numerics import LogValue, log_binomial_row, logsumexp_array

STRUCTURAL = "structural"
WOLFOWITZ = "wolfowitz"

# canonical bound identifiers used in CurveRequest lists, CSV output and the CLI
BOUND_ID = {
    (QEC, STRUCTURAL): "thm2",
    (QEC, WOLFOWITZ): "thm3",
    (BSC, STRUCTURAL): "thm4",
    (BSC, WOLFOWITZ): "thm5",
}


@dataclass(frozen=True, slots=True)
class PerStateStrategy:
    """Per-state lower-bound strategy; A is required iff kind is wolfowitz."""

    kind: str
    A: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in (STRUCTURAL, WOLFOWITZ):
            raise ValueError(f"strategy must be structural or wolfowitz, got {self.kind!r}")
        if self.kind == WOLFOWITZ:
            if self.A is None or not self.A > 0:
                raise ValueError(f"wolfowitz strategy needs a constant A > 0, got {self.A}")
        elif self.A is not None:
            raise ValueError("structural strategy takes no constant A")


def structural() -> PerStateStrategy:
    return PerStateStrategy(STRUCTURAL)


def wolfowitz(A: float) -> PerStateStrategy:
    return PerStateStrategy(WOLFOWITZ, A)


@dataclass(frozen=True)
class BoundResult:
    """A converse value with its identity and optional per-state diagnostics."""

    epsilon_lb: float
    bound_id: str
    A: float | None = None
    per_state_terms: tuple[tuple[int, LogValue], ...] | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.epsilon_lb <= 1.0:
            raise ValueError(f"epsilon_lb out of [0,1]: {self.epsilon_lb}")


def _per_state_lb_vector(
    ch: ChannelSpec, n: int, s: np.ndarray, logqM: float, strat: PerStateStrategy
) -> np.ndarray:
    """Per-state error lower bounds for an array of unsupported states."""
    lnq = math.log(ch.q)
    if strat.kind == STRUCTURAL:
        # 1 - exp(-x) via expm1: exact through the x -> 0 cancellation zone
        if ch.kind == QEC:
            lb = -np.expm1((n - s - logqM) * lnq)
        else:
            lb = -np.expm1((n - logqM) * LN2 - log_binomial_row(n)[s])
    else:
        if ch.kind == QEC:
            x = (logqM - (n - s)) * lnq
        else:
            x = (logqM - n) * LN2 + log_binomial_row(n)[s]
        # x*x can underflow for subnormal rate excess; the resulting
        # -inf is clamped to 0 below, which is the correct limit
        with np.errstate(divide="ignore", over="ignore"):
            lb = np.where(
                x > 0.0, 1.0 - 4.0 * strat.A / (x * x) - np.exp(-x / 2.0), 0.0
            )
    return np.maximum(lb, 0.0)


def per_state_error_lb(
    ch: ChannelSpec, n: int, s: int, logqM: float, strat: PerStateStrategy
) -> float:
    """Error lower bound conditioned on state s, for a state the rate exceeds.

    Raises ValueError when s is a supported state (contract violation).  A
    wolfowitz evaluation whose rate excess collapses to zero returns 0.
    """
    states = unsupported_states(ch, CodePoint(n, logqM))
    if s not in states:
        raise ValueError(
            f"state s={s} supports logqM={logqM} at n={n}; the per-state bound "
            "applies only to unsupported states"
        )
    return float(_per_state_lb_vector(ch, n, np.array([s]), logqM, strat)[0])


def converse_epsilon_lb(
    ch: ChannelSpec,
    point: CodePoint,
    strat: PerStateStrategy,
    collect_terms: bool = False,
) -> BoundResult:
    """Sum of state_pmf(s) * per_state_error_lb(s) over unsupported states.

    Terms are accumulated from the largest state downward through the
    log-sum-exp primitive; an empty state set yields 0.  Pure; safe for
    data-parallel evaluation across grid points.
    """
    bound_id = BOUND_ID[(ch.kind, strat.kind)]
    states = unsupported_states(ch, point)
    if len(states) == 0:
        return BoundResult(0.0, bound_id, strat.A)
    n, logqM = point.n, point.logqM
    s = np.arange(states[-1], states[0] - 1, -1, dtype=np.int64)
    lb = _per_state_lb_vector(ch, n, s, logqM, strat)
    if ch.delta == 0.0:
        ln_pmf = np.where(s == 0, 0.0, -np.inf)
    elif ch.delta == 1.0:
        ln_pmf = np.where(s == n, 0.0, -np.inf)
    else:
        ln_pmf = (
            log_binomial_row(n)[s]
            + s * math.log(ch.delta)
            + (n - s) * math.log1p(-ch.delta)
        )
    keep = lb > 0.0
    if not keep.any():
        return BoundResult(0.0, bound_id, strat.A)
    ln_terms = ln_pmf[keep] + np.log(lb[keep])
    eps = min(math.exp(logsumexp_array(ln_terms)), 1.0)
    terms = None
    if collect_terms:
        terms = tuple(
            (int(si), LogValue(float(t)))
            for si, t in zip(s[keep], ln_terms)
        )
    return BoundResult(eps, bound_id, strat.A, terms)


def meta_converse_bec(n: int, M: float, delta: float) -> float:
    """Hypothesis-testing converse for the binary erasure channel.

    sum over l of C(n,l) delta^l (1-delta)^(n-l) (1 - 2^(n-l)/M) for
    l = floor(n - log2 M) + 1 .. n.  Accepts any real codebook size M >= 1.
    """
    if not M >= 1:
        raise ValueError(f"codebook size M must be >= 1, got {M}")
    return _meta_converse_bec_log2M(n, math.log2(M), delta)


def _meta_converse_bec_log2M(n: int, log2M: float, delta: float) -> float:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"blocklength n must be an integer >= 1, got {n}")
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must be in [0,1], got {delta}")
    # floor(n - log2M) + 1, written so the subtraction cannot round across
    # an integer for tiny log2M
    l0 = n - math.ceil(log2M) + 1
    if l0 > n:
        return 0.0
    l = np.arange(n, max(l0, 0) - 1, -1, dtype=np.int64)
    factor = -np.expm1((n - l - log2M) * LN2)
    if delta == 0.0:
        ln_pmf = np.where(l == 0, 0.0, -np.inf)
    elif delta == 1.0:
        ln_pmf = np.where(l == n, 0.0, -np.inf)
    else:
        ln_pmf = (
            log_binomial_row(n)[l]
            + l * math.log(delta)
            + (n - l) * math.log1p(-delta)
        )
    keep = factor > 0.0
    if not keep.any():
        return 0.0
    return min(math.exp(logsumexp_array(ln_pmf[keep] + np.log(factor[keep]))), 1.0)
