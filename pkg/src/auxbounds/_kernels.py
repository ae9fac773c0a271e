"""Hot numeric kernels with a numba backend and a numpy/Python fallback.

Every kernel exists in two functionally identical flavours selected via
``AUXBOUNDS_BACKEND`` (see ``_backend``).  The compiled flavour is a plain
loop nest handed to ``numba.njit``; the fallback keeps the same semantics
using vectorised numpy where that does not change the summation policy.

Accuracy policy: log-binomial rows are built by compensated (Kahan)
cumulative summation of ln((n-s+1)/s), which reproduces exact big-integer
values to ~2e-16 relative; log-sum-exp uses max-shift plus compensated
accumulation of the exponentials.
"""

from __future__ import annotations

import math

import numpy as np

from ._backend import USE_NUMBA, njit

_NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# log-binomial row
# ---------------------------------------------------------------------------

def _binom_half_row_loop(n: int) -> np.ndarray:
    # ln C(n, s) for s = 0 .. n//2, Kahan-compensated cumulative sum.
    out = np.empty(n // 2 + 1, dtype=np.float64)
    out[0] = 0.0
    acc = 0.0
    comp = 0.0
    for s in range(1, n // 2 + 1):
        term = math.log((n - s + 1) / s)
        y = term - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
        out[s] = acc
    return out


# ---------------------------------------------------------------------------
# log-sum-exp
# ---------------------------------------------------------------------------

def _logsumexp_loop(a: np.ndarray) -> float:
    m = _NEG_INF
    for i in range(a.shape[0]):
        if a[i] > m:
            m = a[i]
    if m == _NEG_INF:
        return _NEG_INF
    acc = 0.0
    comp = 0.0
    for i in range(a.shape[0]):
        y = math.exp(a[i] - m) - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
    return m + math.log(acc)


def _logsumexp_numpy(a: np.ndarray) -> float:
    if a.size == 0:
        return _NEG_INF
    m = float(a.max())
    if m == _NEG_INF:
        return _NEG_INF
    return m + math.log(math.fsum(np.exp(a - m)))


# ---------------------------------------------------------------------------
# stop-feedback blocklength accumulation
# ---------------------------------------------------------------------------

def _vlsf_sums_loop(
    n: int,
    k_ceil: int,
    ln_d: float,
    ln_1md: float,
    tol: float,
    mean_j: float,
) -> tuple[float, int, float]:
    # Accumulates cum = sum_m P(m) and w = sum_m m*P(m) over packets of n
    # transmissions, where P(m) collects the waiting-time pmf over the m-th
    # packet window.  Requires 0 < delta < 1 (ln_d finite).
    #
    # Stops once the cumulative mass reaches 1 - tol AND the crude bound
    # m * (1 - cum) on the dropped weighted tail is certified below
    # 4 * tol * w; with a long geometric tail (small k, delta near 1) the
    # first condition alone would leave a deficit of order m/mean * tol.
    #
    # The pmf is tracked in log domain via the recurrence
    #   ln p(j+1) = ln p(j) + ln_d + ln(j / (j - k_ceil + 1)),
    # so rising-from-underflow regions (large k_ceil, delta near 1) are kept.
    one_minus_tol = 1.0 - tol
    lnp = k_ceil * ln_1md
    j = k_ceil
    m = (k_ceil + n - 1) // n
    cum = 0.0
    cum_c = 0.0
    w = 0.0
    w_c = 0.0
    m_max = m
    while True:
        packet_end = m * n
        packet_prob = 0.0
        while j <= packet_end:
            packet_prob += math.exp(lnp)
            lnp += ln_d + math.log(j / (j - k_ceil + 1))
            j += 1
        y = packet_prob - cum_c
        t = cum + y
        cum_c = (t - cum) - y
        cum = t
        y = m * packet_prob - w_c
        t = w + y
        w_c = (t - w) - y
        w = t
        m_max = m
        if cum >= one_minus_tol and m * (1.0 - cum) <= 4.0 * tol * w:
            break
        if packet_prob == 0.0 and packet_end > mean_j:
            break
        m += 1
    return w, m_max, cum


# ---------------------------------------------------------------------------
# erasure-channel decoding oracle: ambiguity deficiency profile
# ---------------------------------------------------------------------------

def _qec_deficiency_profile_loop(words: np.ndarray, q: int) -> np.ndarray:
    # For every erasure pattern E (bit set = erased) count G(E), the number
    # of distinct codeword restrictions off E, and return
    #   out[e] = sum over |E| = e of (M - G(E)).
    m_words, n = words.shape
    out = np.zeros(n + 1, dtype=np.int64)
    keys = np.empty(m_words, dtype=np.int64)
    pw = np.empty(n, dtype=np.int64)
    p = np.int64(1)
    for i in range(n):
        pw[i] = p
        p *= q
    for mask in range(1 << n):
        e = 0
        for i in range(n):
            if (mask >> i) & 1:
                e += 1
        for w_i in range(m_words):
            key = np.int64(0)
            for i in range(n):
                if not (mask >> i) & 1:
                    key += words[w_i, i] * pw[i]
            keys[w_i] = key
        keys.sort()
        distinct = 1
        for w_i in range(1, m_words):
            if keys[w_i] != keys[w_i - 1]:
                distinct += 1
        out[e] += m_words - distinct
    return out


def _qec_deficiency_profile_numpy(words: np.ndarray, q: int) -> np.ndarray:
    m_words, n = words.shape
    out = np.zeros(n + 1, dtype=np.int64)
    pw = q ** np.arange(n, dtype=np.int64)
    for mask in range(1 << n):
        bits = (mask >> np.arange(n)) & 1
        keys = words @ (pw * (1 - bits))
        out[int(bits.sum())] += m_words - np.unique(keys).size
    return out


# ---------------------------------------------------------------------------
# binary-channel decoding oracle: minimum-distance profile
# ---------------------------------------------------------------------------

def _bsc_dmin_profile_loop(word_bits: np.ndarray, n: int) -> np.ndarray:
    # out[d] = number of length-n outputs whose nearest codeword sits at
    # Hamming distance d.  Unit-cost distance transform over the hypercube:
    # one relaxation pass per coordinate computes exact distances in
    # O(n 2^n), independent of the codebook size.
    size = 1 << n
    dist = np.full(size, n + 1, dtype=np.int64)
    for w_i in range(word_bits.shape[0]):
        dist[word_bits[w_i]] = 0
    for b in range(n):
        bit = 1 << b
        for y in range(size):
            alt = dist[y ^ bit] + 1
            if alt < dist[y]:
                dist[y] = alt
    out = np.zeros(n + 1, dtype=np.int64)
    for y in range(size):
        out[dist[y]] += 1
    return out


def _bsc_dmin_profile_numpy(word_bits: np.ndarray, n: int) -> np.ndarray:
    dist = np.full(1 << n, n + 1, dtype=np.int64)
    dist[word_bits] = 0
    for b in range(n):
        view = dist.reshape(-1, 2, 1 << b)
        lo, hi = view[:, 0, :], view[:, 1, :]
        np.minimum(lo, hi + 1, out=lo)
        np.minimum(hi, lo + 1, out=hi)
    return np.bincount(dist, minlength=n + 1).astype(np.int64)


# ---------------------------------------------------------------------------
# backend dispatch
# ---------------------------------------------------------------------------

if USE_NUMBA:
    binom_half_row = njit(_binom_half_row_loop)
    logsumexp = njit(_logsumexp_loop)
    vlsf_sums = njit(_vlsf_sums_loop)
    qec_deficiency_profile = njit(_qec_deficiency_profile_loop)
    bsc_dmin_profile = njit(_bsc_dmin_profile_loop)
else:
    binom_half_row = _binom_half_row_loop
    logsumexp = _logsumexp_numpy
    vlsf_sums = _vlsf_sums_loop
    qec_deficiency_profile = _qec_deficiency_profile_numpy
    bsc_dmin_profile = _bsc_dmin_profile_numpy
