"""Channel specifications, the per-error-count state model, and state capacities.

A block of n uses is classified by the number s of erroneous transmissions
(erasures for the q-ary erasure channel, flips for the binary symmetric
channel).  States are Binomial(n, delta) distributed; conditioning on s
yields a side-information channel whose capacity is n - s q-ary symbols
(erasures) or n - log2 C(n,s) bits (flips).

Pure functions over immutable specs; thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvariantError
from .numerics import LogValue, binomial_pmf, log_binomial_row

LN2 = math.log(2.0)

QEC = "qec"
BSC = "bsc"

# a channel state is the error count s within one block, 0 <= s <= n
ChannelState = int


@dataclass(frozen=True, slots=True)
class ChannelSpec:
    """Erasure (qec) or binary symmetric (bsc) channel with parameter delta."""

    kind: str
    q: int
    delta: float

    def __post_init__(self) -> None:
        if self.kind not in (QEC, BSC):
            raise ValueError(f"channel kind must be 'qec' or 'bsc', got {self.kind!r}")
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"alphabet size q must be an integer >= 2, got {self.q}")
        if self.kind == BSC and self.q != 2:
            raise ValueError("bsc requires q = 2")
        if not 0.0 <= self.delta <= 1.0 or math.isnan(self.delta):
            raise ValueError(f"delta must be in [0,1], got {self.delta}")

    @classmethod
    def qec(cls, q: int, delta: float) -> "ChannelSpec":
        return cls(QEC, q, delta)

    @classmethod
    def bsc(cls, delta: float) -> "ChannelSpec":
        return cls(BSC, 2, delta)

    @classmethod
    def parse(cls, text: str) -> "ChannelSpec":
        """Parse 'qec:q=Q,delta=D' or 'bsc:delta=D'."""
        head, sep, rest = text.strip().partition(":")
        kind = head.strip().lower()
        if not sep or kind not in (QEC, BSC):
            raise ValueError(
                f"cannot parse channel {text!r}; expected 'qec:q=Q,delta=D' or 'bsc:delta=D'"
            )
        fields: dict[str, str] = {}
        for item in rest.split(","):
            key, eq, val = item.partition("=")
            if not eq:
                raise ValueError(f"malformed channel field {item!r} in {text!r}")
            fields[key.strip().lower()] = val.strip()
        try:
            delta = float(fields.pop("delta"))
        except KeyError:
            raise ValueError(f"channel {text!r} is missing delta") from None
        if kind == QEC:
            try:
                q = int(fields.pop("q"))
            except KeyError:
                raise ValueError(f"channel {text!r} is missing q") from None
        else:
            q = int(fields.pop("q", "2"))
        if fields:
            raise ValueError(f"unknown channel fields {sorted(fields)} in {text!r}")
        return cls(kind, q, delta)

    def __str__(self) -> str:
        if self.kind == QEC:
            return f"qec:q={self.q},delta={self.delta:g}"
        return f"bsc:delta={self.delta:g}"


@dataclass(frozen=True, slots=True)
class CodePoint:
    """One bound evaluation: blocklength n, message size logqM in q-ary symbols."""

    n: int
    logqM: float
    eps_target: float | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"blocklength n must be an integer >= 1, got {self.n}")
        if math.isnan(self.logqM) or not 0.0 <= self.logqM <= self.n:
            raise ValueError(
                f"logqM must satisfy 0 <= logqM <= n, got logqM={self.logqM} n={self.n}"
            )
        if self.eps_target is not None and not 0.0 < self.eps_target < 1.0:
            raise ValueError(f"eps_target must be in (0,1), got {self.eps_target}")


def state_pmf(ch: ChannelSpec, n: int, s: int) -> LogValue:
    """Probability of exactly s erroneous transmissions in n uses (log domain)."""
    return binomial_pmf(n, s, ch.delta)


def state_capacity(ch: ChannelSpec, n: int, s: int) -> float:
    """Aggregate capacity of the state-s block.

    q-ary symbols for the erasure channel (n - s), bits for the binary
    symmetric channel (n - log2 C(n,s)).
    """
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got n={n} s={s}")
    if ch.kind == QEC:
        return float(n - s)
    return n - float(log_binomial_row(n)[s]) / LN2


def unsupported_states(ch: ChannelSpec, point: CodePoint) -> range:
    """States whose capacity falls strictly below logqM.

    For both channels the set is a contiguous window of error counts, so it
    is returned as a range.  Ties (capacity == logqM) count as supported.
    May be empty, in which case every bound built on it is 0.
    """
    n, logqM = point.n, point.logqM
    if ch.kind == QEC:
        start = n - math.ceil(logqM) + 1
        if start > n:
            return range(0)
        return range(max(start, 0), n + 1)
    # flips: capacity < logqM  <=>  ln C(n,s) > (n - logqM) ln 2; the row
    # is unimodal so the solution set is one window, symmetric in s <-> n-s
    row = log_binomial_row(n)
    hits = np.nonzero(row > (n - logqM) * LN2)[0]
    if hits.size == 0:
        return range(0)
    lo, hi = int(hits[0]), int(hits[-1])
    if hits.size != hi - lo + 1:
        raise InvariantError(
            f"state window not contiguous for n={n} logqM={logqM}: {hits}"
        )
    return range(lo, hi + 1)
