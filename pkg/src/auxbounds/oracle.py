"""Exact maximum-likelihood error probabilities of explicit small codes.

These enumerations sandwich the converse bounds from above and, for
maximum-distance-separable codes on the erasure channel, meet them with
equality.  Both evaluators reduce the channel enumeration to integer
profiles that are independent of delta:

* erasure channel: for each of the 2^n erasure patterns E, the optimal
  decoder errs with probability 1 - G(E)/M where G(E) counts distinct
  codeword restrictions off E (uniform tie-breaking over the ambiguity
  set); the kernel accumulates sum(M - G) per erasure weight;
* binary symmetric channel: the minimum-distance decoder is evaluated by
  enumerating all 2^n outputs and profiling their distance to the nearest
  codeword.

Passing ``delta`` as :class:`fractions.Fraction` switches the final
combination to exact rational arithmetic on the same integer profiles.

Enumeration is read-only over the codebook; patterns may be sharded across
workers and partial profiles summed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

_ENUM_N_MAX = 20
_BSC_M_MAX = 1 << 12
_QEC_M_MAX = 1 << 16


@dataclass(frozen=True, eq=False)
class Codebook:
    """M distinct length-n words over {0..q-1}, stored as a read-only array."""

    q: int
    n: int
    words: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"alphabet size q must be an integer >= 2, got {self.q}")
        words = np.ascontiguousarray(np.asarray(self.words, dtype=np.int64))
        if words.ndim != 2 or words.shape[0] < 1 or words.shape[1] != self.n:
            raise ValueError(f"words must be a nonempty (M, {self.n}) array")
        if words.min() < 0 or words.max() >= self.q:
            raise ValueError(f"symbols must lie in 0..{self.q - 1}")
        if np.unique(words, axis=0).shape[0] != words.shape[0]:
            raise ValueError("codewords must be distinct")
        words.flags.writeable = False
        object.__setattr__(self, "words", words)

    @classmethod
    def from_words(cls, q: int, words: Iterable[Sequence[int]]) -> "Codebook":
        arr = np.asarray(list(words), dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        return cls(q, arr.shape[1], arr)

    @property
    def M(self) -> int:
        return int(self.words.shape[0])

    @property
    def logqM(self) -> float:
        """log_q M, snapped to an exact integer when M is a power of q."""
        r = math.log(self.M) / math.log(self.q)
        rr = round(r)
        return float(rr) if self.q**rr == self.M else r


@dataclass(frozen=True, slots=True)
class ExactError:
    """Average decoding-error probability; rational when computed exactly."""

    epsilon: float | Fraction

    def __post_init__(self) -> None:
        if not 0 <= self.epsilon <= 1:
            raise ValueError(f"epsilon out of [0,1]: {self.epsilon}")


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def rs_code(q: int, n: int, k: int) -> Codebook:
    """Polynomial-evaluation code over the prime field GF(q).

    All q^k polynomials of degree < k evaluated at the points 0..n-1;
    minimum distance n - k + 1, which meets the Singleton bound.
    """
    if not _is_prime(q):
        raise ValueError(f"q must be prime (prime-field arithmetic only), got {q}")
    if not 1 <= k <= n <= q:
        raise ValueError(f"need 1 <= k <= n <= q, got q={q} n={n} k={k}")
    points = np.arange(n, dtype=np.int64)
    # vandermonde[d, i] = point_i^d mod q
    vander = np.empty((k, n), dtype=np.int64)
    vander[0] = 1
    for d in range(1, k):
        vander[d] = vander[d - 1] * points % q
    # coeffs enumerates {0..q-1}^k, least-significant coefficient first
    idx = np.arange(q**k, dtype=np.int64)
    coeffs = np.empty((q**k, k), dtype=np.int64)
    for d in range(k):
        coeffs[:, d] = idx % q
        idx //= q
    return Codebook(q, n, coeffs @ vander % q)


def repetition_code(q: int, n: int) -> Codebook:
    """The q words that repeat one symbol n times."""
    sym = np.arange(q, dtype=np.int64)
    return Codebook(q, n, np.repeat(sym[:, None], n, axis=1))


def full_space_code(q: int, n: int) -> Codebook:
    """All q^n words."""
    if q**n > _QEC_M_MAX:
        raise ValueError(f"full space q^n = {q**n} exceeds the enumeration limit")
    idx = np.arange(q**n, dtype=np.int64)
    words = np.empty((q**n, n), dtype=np.int64)
    for i in range(n):
        words[:, i] = idx % q
        idx //= q
    return Codebook(q, n, words)


_HAMMING74_PARITY = np.array(
    [[1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]], dtype=np.int64
)


def hamming74_code() -> Codebook:
    """The [7,4] single-error-correcting perfect binary code."""
    msgs = full_space_code(2, 4).words
    return Codebook(2, 7, np.hstack([msgs, msgs @ _HAMMING74_PARITY % 2]))


def load_codebook(path: str | Path, q: int | None = None) -> Codebook:
    """Read a codebook from plain text, one q-ary word of digits per line."""
    rows: list[list[int]] = []
    for line_no, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([int(c) for c in line])
        except ValueError:
            raise ValueError(f"{path}:{line_no}: invalid codeword {line!r}") from None
    if not rows:
        raise ValueError(f"{path}: no codewords found")
    if q is None:
        q = max(2, max(max(r) for r in rows) + 1)
    return Codebook.from_words(q, rows)


def min_distance(code: Codebook) -> int:
    """Exhaustive pairwise minimum Hamming distance."""
    words = code.words
    best = code.n
    for i in range(code.M - 1):
        d = (words[i + 1 :] != words[i]).sum(axis=1).min()
        best = min(best, int(d))
    return best


def _qec_profile(code: Codebook) -> np.ndarray:
    if code.n > _ENUM_N_MAX:
        raise ValueError(f"erasure enumeration needs n <= {_ENUM_N_MAX}, got {code.n}")
    if code.M > _QEC_M_MAX:
        raise ValueError(f"erasure enumeration needs M <= {_QEC_M_MAX}, got {code.M}")
    if code.q ** code.n < 2**62:
        return _kernels.qec_deficiency_profile(code.words, code.q)
    # key space exceeds int64: fall back to hashing restriction tuples
    out = np.zeros(code.n + 1, dtype=np.int64)
    words = [tuple(w) for w in code.words.tolist()]
    for mask in range(1 << code.n):
        kept = [i for i in range(code.n) if not (mask >> i) & 1]
        out[code.n - len(kept)] += code.M - len(
            {tuple(w[i] for i in kept) for w in words}
        )
    return out


def exact_eps_qec(code: Codebook, delta: float | Fraction) -> ExactError:
    """Exact average error of optimal erasure decoding with uniform messages.

    Averages 1 - G(E)/M over erasure patterns; exact rational output when
    delta is a Fraction.
    """
    profile = _qec_profile(code)
    n, M = code.n, code.M
    if isinstance(delta, Fraction):
        if not 0 <= delta <= 1:
            raise ValueError(f"delta must be in [0,1], got {delta}")
        one = Fraction(1)
        eps = sum(
            Fraction(int(profile[e]), M) * delta**e * (one - delta) ** (n - e)
            for e in range(n + 1)
        )
        return ExactError(eps)
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must be in [0,1], got {delta}")
    eps = math.fsum(
        int(profile[e]) / M * delta**e * (1.0 - delta) ** (n - e)
        for e in range(n + 1)
    )
    return ExactError(min(max(eps, 0.0), 1.0))


def bsc_dmin_profile(code: Codebook) -> np.ndarray:
    """counts[d] = number of outputs whose nearest codeword is at distance d."""
    if code.q != 2:
        raise ValueError(f"binary enumeration requires q = 2, got q={code.q}")
    if code.n > _ENUM_N_MAX:
        raise ValueError(f"output enumeration needs n <= {_ENUM_N_MAX}, got {code.n}")
    if code.M > _BSC_M_MAX:
        raise ValueError(f"output enumeration needs M <= {_BSC_M_MAX}, got {code.M}")
    bits = (code.words << np.arange(code.n, dtype=np.int64)).sum(axis=1)
    return _kernels.bsc_dmin_profile(np.ascontiguousarray(bits), code.n)


def exact_eps_bsc(code: Codebook, delta: float | Fraction) -> ExactError:
    """Exact average error of minimum-distance decoding with uniform messages.

    For every transmitted word and noise vector the decoder picks a nearest
    codeword with uniform tie-breaking; ties contribute exactly one
    maximum-likelihood term per output, so the average collapses to the
    distance profile of the 2^n outputs.
    """
    profile = bsc_dmin_profile(code)
    n, M = code.n, code.M
    if isinstance(delta, Fraction):
        if not 0 <= delta <= 1:
            raise ValueError(f"delta must be in [0,1], got {delta}")
        one = Fraction(1)
        correct = sum(
            Fraction(int(profile[d]), M) * delta**d * (one - delta) ** (n - d)
            for d in range(n + 1)
        )
        return ExactError(one - correct)
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must be in [0,1], got {delta}")
    correct = math.fsum(
        int(profile[d]) / M * delta**d * (1.0 - delta) ** (n - d)
        for d in range(n + 1)
    )
    return ExactError(min(max(1.0 - correct, 0.0), 1.0))
