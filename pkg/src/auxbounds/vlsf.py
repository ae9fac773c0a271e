"""Lower bound on the average blocklength of zero-error stop-feedback coding
over the q-ary erasure channel.

Decoding cannot finish before the ceil(k)-th unerased symbol arrives, and
transmission stops only at packet boundaries of n symbols.  The arrival
time of the ceil(k)-th unerased symbol is negative-binomial, so the mean
number of packets is bounded below by sum_m m P(m) with P(m) the mass the
waiting time puts on the m-th packet window.

The series is truncated on cumulative mass, never on term size: dropped
terms are nonnegative, so the reported value stays a certified lower bound
and the residual mass is reported alongside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _kernels
from .numerics import LogValue, negbinomial_pmf, stable_sum


@dataclass(frozen=True, slots=True)
class VlsfPoint:
    """Packet size n, message size k in q-ary symbols, erasure rate delta."""

    n: int
    k: float
    delta: float
    q: int = 2

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"packet size n must be an integer >= 1, got {self.n}")
        if not self.k > 0:
            raise ValueError(f"message size k must be > 0, got {self.k}")
        if not 0.0 <= self.delta < 1.0:
            raise ValueError(f"delta must be in [0,1), got {self.delta}")
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"alphabet size q must be an integer >= 2, got {self.q}")

    @property
    def k_ceil(self) -> int:
        return math.ceil(self.k)


@dataclass(frozen=True, slots=True)
class VlsfResult:
    """Certified lower bound on the average blocklength, with truncation info."""

    la_lb: float
    m_max: int
    tail_mass: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.tail_mass <= 1.0:
            raise ValueError(f"tail_mass out of [0,1]: {self.tail_mass}")
        if self.la_lb < 0.0:
            raise ValueError(f"la_lb must be nonnegative, got {self.la_lb}")


def packet_success_prob(m: int, pt: VlsfPoint) -> LogValue:
    """Probability that decoding first becomes possible during packet m.

    Sums the waiting-time pmf of the k_ceil-th unerased symbol over the
    m-th packet window; window positions before k_ceil contribute zero.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"packet index m must be an integer >= 1, got {m}")
    k = pt.k_ceil
    lo = max(m * pt.n - pt.n + 1, k)
    return stable_sum(
        negbinomial_pmf(j, k, pt.delta) for j in range(lo, m * pt.n + 1)
    )


def vlsf_blocklength_lb(pt: VlsfPoint, tol: float = 1e-12) -> VlsfResult:
    """n * sum_m m * packet_success_prob(m), truncated on cumulative mass.

    Stops at the smallest m_max whose cumulative success probability
    reaches 1 - tol and whose dropped weighted tail is certified below
    ~4 tol relative (or once the remaining mass underflows past the
    waiting-time mean); tail_mass reports the residual so callers can
    verify the truncation is dominated by tol.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")
    k = pt.k_ceil
    if pt.delta == 0.0:
        # noiseless: decoding possible exactly when k symbols have arrived
        m = -(-k // pt.n)
        return VlsfResult(float(pt.n * m), m, 0.0)
    w, m_max, cum = _kernels.vlsf_sums(
        pt.n,
        k,
        math.log(pt.delta),
        math.log1p(-pt.delta),
        tol,
        k / (1.0 - pt.delta),
    )
    return VlsfResult(pt.n * w, int(m_max), max(0.0, min(1.0 - cum, 1.0)))
