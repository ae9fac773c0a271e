"""Rate-inversion solver: turns epsilon-bounds into rate-vs-blocklength curves.

For a converse the reported rate is the largest message size not yet
refuted at the target error probability; for an achievability bound it is
the largest message size still guaranteed.  Both are computed by bisection
on real-valued logqM (bounds are monotone nondecreasing in logqM), to an
absolute tolerance on logqM, never more than 64 iterations.

Every (n, bound) evaluation is independent and pure; requests are processed
in deterministic grid order and identical requests produce bit-identical
CSV (12 significant digits, '.' decimal separator, no locale).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .achievability import _dt_bound_bec_log2M, _rcu_bound_bsc_log2M
from .channels import BSC, QEC, ChannelSpec, CodePoint
from .converse import (
    _meta_converse_bec_log2M,
    converse_epsilon_lb,
    structural,
    wolfowitz,
)
from .errors import InvariantError
from .vlsf import VlsfPoint, vlsf_blocklength_lb

DEFAULT_A = 0.25
DEFAULT_RATE_TOL = 1e-9
_MAX_BISECTIONS = 64
_BRACKET_SLACK = 1e-12

CONVERSE_BOUNDS = ("thm2", "thm3", "thm4", "thm5", "meta")
ACHIEVABILITY_BOUNDS = ("dt", "rcu")
ALL_BOUNDS = CONVERSE_BOUNDS + ACHIEVABILITY_BOUNDS

CSV_HEADER = "n,bound,rate,logqM,params"
VLSF_CSV_HEADER = "k,n,delta,la_lb,rate,m_max,tail_mass"


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


@dataclass(frozen=True, slots=True)
class CurveRequest:
    """A rate-vs-blocklength sweep for one channel and a set of bound ids."""

    channel: ChannelSpec
    eps_target: float
    n_grid: tuple[int, ...]
    bounds: tuple[str, ...]
    A: float = DEFAULT_A
    rate_tolerance: float = DEFAULT_RATE_TOL

    def __post_init__(self) -> None:
        if not 0.0 < self.eps_target < 1.0:
            raise ValueError(f"eps_target must be in (0,1), got {self.eps_target}")
        if not self.n_grid or list(self.n_grid) != sorted(set(self.n_grid)):
            raise ValueError("n_grid must be nonempty and strictly ascending")
        if any(not isinstance(n, int) or n < 1 for n in self.n_grid):
            raise ValueError("n_grid entries must be integers >= 1")
        if not self.bounds:
            raise ValueError("at least one bound id is required")
        for b in self.bounds:
            if b not in ALL_BOUNDS:
                raise ValueError(f"unknown bound id {b!r}; known: {ALL_BOUNDS}")
        if not self.A > 0:
            raise ValueError(f"constant A must be > 0, got {self.A}")
        if not self.rate_tolerance > 0:
            raise ValueError(f"rate_tolerance must be > 0, got {self.rate_tolerance}")


@dataclass(frozen=True, slots=True)
class CurvePoint:
    n: int
    bound_id: str
    rate: float
    logqM: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.rate <= 1.0:
            raise ValueError(f"rate out of [0,1]: {self.rate}")


def bound_epsilon_fn(
    channel: ChannelSpec, bound_id: str, A: float = DEFAULT_A
) -> Callable[[int, float], float]:
    """Resolve a bound id to eps(n, logqM) for the given channel.

    Converse ids thm2/thm3 need an erasure channel and thm4/thm5 a binary
    symmetric channel; meta and dt are binary-erasure only, rcu binary
    symmetric only.
    """
    if bound_id in ("thm2", "thm3"):
        if channel.kind != QEC:
            raise ValueError(f"bound {bound_id} needs an erasure channel, got {channel}")
        strat = structural() if bound_id == "thm2" else wolfowitz(A)
        return lambda n, logqM: converse_epsilon_lb(
            channel, CodePoint(n, logqM), strat
        ).epsilon_lb
    if bound_id in ("thm4", "thm5"):
        if channel.kind != BSC:
            raise ValueError(f"bound {bound_id} needs a binary symmetric channel, got {channel}")
        strat = structural() if bound_id == "thm4" else wolfowitz(A)
        return lambda n, logqM: converse_epsilon_lb(
            channel, CodePoint(n, logqM), strat
        ).epsilon_lb
    if bound_id == "meta":
        if channel.kind != QEC or channel.q != 2:
            raise ValueError(f"bound meta needs a binary erasure channel, got {channel}")
        return lambda n, logqM: _meta_converse_bec_log2M(n, logqM, channel.delta)
    if bound_id == "dt":
        if channel.kind != QEC or channel.q != 2:
            raise ValueError(f"bound dt needs a binary erasure channel, got {channel}")
        return lambda n, logqM: _dt_bound_bec_log2M(n, logqM, channel.delta)
    if bound_id == "rcu":
        if channel.kind != BSC:
            raise ValueError(f"bound rcu needs a binary symmetric channel, got {channel}")
        return lambda n, logqM: _rcu_bound_bsc_log2M(n, logqM, channel.delta)
    raise ValueError(f"unknown bound id {bound_id!r}; known: {ALL_BOUNDS}")


def invert_rate(
    bound: Callable[[float], float],
    n: int,
    eps_target: float,
    tol: float = DEFAULT_RATE_TOL,
) -> float:
    """sup{logqM : bound(logqM) <= eps_target} / n by bisection.

    ``bound`` must be nondecreasing in logqM on [0, n]; a bracket violation
    observed during bisection raises InvariantError with diagnostics.
    """
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    lo, hi = 0.0, float(n)
    f_lo = bound(lo)
    if f_lo > eps_target:
        return 0.0
    f_hi = bound(hi)
    if f_hi <= eps_target:
        return 1.0
    for _ in range(_MAX_BISECTIONS):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        f_mid = bound(mid)
        if f_mid < f_lo - _BRACKET_SLACK or f_mid > f_hi + _BRACKET_SLACK:
            raise InvariantError(
                f"non-monotone bound during bisection at n={n}: "
                f"f({lo})={f_lo}, f({mid})={f_mid}, f({hi})={f_hi}"
            )
        if f_mid <= eps_target:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return lo / n


def run_curve(req: CurveRequest) -> list[CurvePoint]:
    """Evaluate invert_rate for every (n, bound) pair in grid order."""
    points: list[CurvePoint] = []
    for n in req.n_grid:
        for bound_id in req.bounds:
            fn = bound_epsilon_fn(req.channel, bound_id, req.A)
            try:
                rate = invert_rate(
                    lambda logqM: fn(n, logqM), n, req.eps_target, req.rate_tolerance
                )
            except InvariantError as exc:
                raise InvariantError(f"bound {bound_id}: {exc}") from exc
            points.append(CurvePoint(n, bound_id, rate, rate * n))
    return points


def curve_csv(points: Sequence[CurvePoint], req: CurveRequest) -> str:
    """Deterministic CSV for a curve run; params stays comma-free."""
    lines = [CSV_HEADER]
    ch = req.channel
    base = f"kind={ch.kind};q={ch.q};delta={_fmt(ch.delta)};eps={_fmt(req.eps_target)}"
    for p in points:
        params = base
        if p.bound_id in ("thm3", "thm5"):
            params += f";A={_fmt(req.A)}"
        lines.append(
            f"{p.n},{p.bound_id},{_fmt(p.rate)},{_fmt(p.logqM)},{params}"
        )
    return "\n".join(lines) + "\n"


def run_vlsf_curve(
    k_grid: Sequence[float],
    n: int,
    delta: float,
    q: int = 2,
    tol: float = 1e-12,
) -> str:
    """Sweep the stop-feedback blocklength bound over a message-size grid.

    Returns CSV rows k,n,delta,la_lb,rate,m_max,tail_mass with
    rate = k / la_lb.
    """
    lines = [VLSF_CSV_HEADER]
    for k in k_grid:
        res = vlsf_blocklength_lb(VlsfPoint(n, float(k), delta, q), tol)
        rate = k / res.la_lb if res.la_lb > 0 else math.inf
        lines.append(
            f"{_fmt(k)},{n},{_fmt(delta)},{_fmt(res.la_lb)},{_fmt(rate)},"
            f"{res.m_max},{_fmt(res.tail_mass)}"
        )
    return "\n".join(lines) + "\n"
