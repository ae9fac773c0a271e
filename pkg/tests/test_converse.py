import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from auxbounds.channels import ChannelSpec, CodePoint
from auxbounds.converse import (
    BoundResult,
    PerStateStrategy,
    _per_state_lb_vector,
    converse_epsilon_lb,
    meta_converse_bec,
    per_state_error_lb,
    structural,
    wolfowitz,
)
from oracles import rational_erasure_converse

BEC_HALF = ChannelSpec.qec(2, 0.5)
BSC_TENTH = ChannelSpec.bsc(0.1)
BSC_NICKEL = ChannelSpec.bsc(0.05)


class TestPerStateStrategy:
    def test_wolfowitz_requires_positive_A(self):
        with pytest.raises(ValueError):
            PerStateStrategy("wolfowitz")
        with pytest.raises(ValueError):
            wolfowitz(0.0)
        with pytest.raises(ValueError):
            wolfowitz(-1.0)

    def test_structural_takes_no_A(self):
        with pytest.raises(ValueError):
            PerStateStrategy("structural", 0.25)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            PerStateStrategy("other")


class TestPerStateErrorLb:
    def test_erasure_structural_hand_value(self):
        got = per_state_error_lb(BEC_HALF, 2, 2, 1.0, structural())
        assert got == pytest.approx(0.5, rel=1e-12)

    def test_bsc_structural_hand_value(self):
        got = per_state_error_lb(BSC_TENTH, 4, 2, 2.0, structural())
        assert got == pytest.approx(1 / 3, rel=1e-12)

    def test_erasure_wolfowitz_hand_value(self):
        got = per_state_error_lb(BEC_HALF, 2, 1, 2.0, wolfowitz(0.01))
        expected = 1 - 0.04 / math.log(2) ** 2 - math.exp(-math.log(2) / 2)
        assert got == pytest.approx(expected, rel=1e-12)
        assert got == pytest.approx(0.2096, abs=5e-5)

    def test_supported_state_is_contract_violation(self):
        with pytest.raises(ValueError):
            per_state_error_lb(BEC_HALF, 4, 1, 2.0, structural())
        with pytest.raises(ValueError):
            per_state_error_lb(BSC_TENTH, 7, 0, 4.0, structural())

    def test_wolfowitz_zero_rate_excess_guard(self):
        # internal guard: x = 0 must not divide by zero, bound collapses to 0
        lb = _per_state_lb_vector(BEC_HALF, 2, np.array([1]), 1.0, wolfowitz(0.25))
        assert lb[0] == 0.0

    def test_values_in_unit_interval(self):
        for strat in (structural(), wolfowitz(0.01), wolfowitz(1.0)):
            for s in (2, 3, 4, 5):
                v = per_state_error_lb(BSC_NICKEL, 7, s, 4.0, strat)
                assert 0.0 <= v <= 1.0

    def test_wolfowitz_below_structural(self):
        for s in (2, 3, 4, 5):
            w = per_state_error_lb(BSC_NICKEL, 7, s, 4.0, wolfowitz(0.25))
            t = per_state_error_lb(BSC_NICKEL, 7, s, 4.0, structural())
            assert w <= t


class TestConverseEpsilonLb:
    def test_erasure_two_line_hand_value(self):
        res = converse_epsilon_lb(BEC_HALF, CodePoint(2, 1.0), structural())
        assert res.epsilon_lb == pytest.approx(0.125, rel=1e-12)
        assert res.bound_id == "thm2"

    def test_bsc_single_term_hand_value(self):
        res = converse_epsilon_lb(BSC_TENTH, CodePoint(4, 2.0), structural())
        assert res.epsilon_lb == pytest.approx(0.0162, rel=1e-9)
        assert res.bound_id == "thm4"

    def test_bsc_four_term_hand_value(self):
        # sum over s in {2,3,4,5} of C(7,s) .05^s .95^(7-s) (1 - C(7,s)^-1 8)
        hand = (
            21 * 0.05**2 * 0.95**5 * (13 / 21)
            + 35 * 0.05**3 * 0.95**4 * (27 / 35)
            + 35 * 0.05**4 * 0.95**3 * (27 / 35)
            + 21 * 0.05**5 * 0.95**2 * (13 / 21)
        )
        res = converse_epsilon_lb(BSC_NICKEL, CodePoint(7, 4.0), structural())
        assert res.epsilon_lb == pytest.approx(hand, rel=1e-12)
        # the same sum in exact arithmetic: 35897840 / 20^7
        assert res.epsilon_lb == pytest.approx(35897840 / 1280000000, rel=1e-12)

    def test_empty_state_set_gives_zero(self):
        res = converse_epsilon_lb(BSC_TENTH, CodePoint(3, 1.0), structural())
        assert res.epsilon_lb == 0.0
        res = converse_epsilon_lb(BEC_HALF, CodePoint(5, 0.0), structural())
        assert res.epsilon_lb == 0.0

    def test_wolfowitz_ids(self):
        assert converse_epsilon_lb(BEC_HALF, CodePoint(4, 2.0), wolfowitz(0.25)).bound_id == "thm3"
        assert converse_epsilon_lb(BSC_TENTH, CodePoint(4, 2.0), wolfowitz(0.25)).bound_id == "thm5"

    def test_diagnostic_terms_reassemble(self):
        res = converse_epsilon_lb(
            BSC_NICKEL, CodePoint(7, 4.0), structural(), collect_terms=True
        )
        assert [s for s, _ in res.per_state_terms] == [5, 4, 3, 2]
        total = math.fsum(t.to_linear() for _, t in res.per_state_terms)
        assert total == pytest.approx(res.epsilon_lb, rel=1e-12)

    def test_rational_oracle_agreement(self):
        for n, k, q, delta in [(6, 3, 2, 0.5), (5, 2, 5, 0.5), (9, 4, 3, 0.25)]:
            want = float(rational_erasure_converse(n, k, q, Fraction(delta)))
            ch = ChannelSpec.qec(q, delta)
            got = converse_epsilon_lb(ch, CodePoint(n, float(k)), structural())
            assert got.epsilon_lb == pytest.approx(want, rel=1e-12)

    @given(
        st.integers(min_value=1, max_value=300),
        st.floats(min_value=0.0, max_value=1.0),
        st.floats(min_value=0.0, max_value=1.0),
        st.sampled_from([0.1, 0.5]),
        st.sampled_from(["structural", "wolf"]),
    )
    def test_monotone_in_message_size(self, n, f1, f2, delta, kind):
        strat = structural() if kind == "structural" else wolfowitz(0.25)
        lo, hi = sorted((f1 * n, f2 * n))
        a = converse_epsilon_lb(BEC_HALF, CodePoint(n, lo), strat).epsilon_lb
        b = converse_epsilon_lb(BEC_HALF, CodePoint(n, hi), strat).epsilon_lb
        assert a <= b + 1e-15

    @given(
        st.integers(min_value=1, max_value=200),
        st.floats(min_value=0.0, max_value=1.0),
    )
    def test_monotone_in_delta_erasure_structural(self, n, frac):
        logqM = frac * n
        deltas = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]
        vals = [
            converse_epsilon_lb(
                ChannelSpec.qec(2, d), CodePoint(n, logqM), structural()
            ).epsilon_lb
            for d in deltas
        ]
        for a, b in zip(vals, vals[1:]):
            assert a <= b + 1e-15

    @given(
        st.integers(min_value=1, max_value=300),
        st.floats(min_value=0.0, max_value=1.0),
        st.sampled_from([0.01, 0.25, 1.0]),
    )
    def test_wolfowitz_never_exceeds_structural(self, n, frac, A):
        pt = CodePoint(n, frac * n)
        w = converse_epsilon_lb(BEC_HALF, pt, wolfowitz(A)).epsilon_lb
        s = converse_epsilon_lb(BEC_HALF, pt, structural()).epsilon_lb
        assert w <= s + 1e-15

    def test_wolfowitz_below_structural_on_figure_grid(self):
        for n in range(10, 501, 49):
            for frac in (0.1, 0.35, 0.5, 0.75, 0.9):
                pt = CodePoint(n, frac * n)
                s = converse_epsilon_lb(BEC_HALF, pt, structural()).epsilon_lb
                for A in (0.1, 0.25, 1.0):
                    w = converse_epsilon_lb(BEC_HALF, pt, wolfowitz(A)).epsilon_lb
                    assert w <= s + 1e-15, (n, frac, A)

    def test_range_is_unit_interval(self):
        for ch in (BEC_HALF, BSC_TENTH, ChannelSpec.qec(7, 0.9), ChannelSpec.bsc(1.0)):
            for n in (1, 2, 17, 64):
                for frac in (0.0, 0.3, 0.9, 1.0):
                    res = converse_epsilon_lb(ch, CodePoint(n, frac * n), structural())
                    assert 0.0 <= res.epsilon_lb <= 1.0

    def test_bound_result_validates(self):
        with pytest.raises(ValueError):
            BoundResult(1.2, "thm2")


class TestMetaConverseBec:
    def test_hand_value(self):
        assert meta_converse_bec(2, 2, 0.5) == pytest.approx(0.125, rel=1e-12)

    def test_single_codeword_never_errs(self):
        assert meta_converse_bec(1, 1, 0.5) == 0.0

    def test_identity_with_erasure_converse_at_power_of_two(self):
        a = meta_converse_bec(10, 2.0**5, 0.5)
        b = converse_epsilon_lb(BEC_HALF, CodePoint(10, 5.0), structural()).epsilon_lb
        assert a == pytest.approx(b, rel=1e-12)

    def test_rejects_tiny_codebook(self):
        with pytest.raises(ValueError):
            meta_converse_bec(4, 0.5, 0.5)

    @given(
        st.integers(min_value=1, max_value=500),
        st.integers(min_value=0, max_value=499),
        st.one_of(st.just(0.0), st.floats(min_value=0.01, max_value=0.99)),
        st.sampled_from([0.1, 0.5]),
    )
    def test_identity_property(self, n, whole, phi, delta):
        # The fractional part is kept off the integers: M = 2**logqM as a
        # double carries log2M only to ~ulp(M), and that noise amplifies as
        # 1/phi in the boundary-state factor.  The log-space interface below
        # covers the corner exactly.
        logqM = min(float(whole) + phi, float(n))
        ch = ChannelSpec.qec(2, delta)
        a = converse_epsilon_lb(ch, CodePoint(n, logqM), structural()).epsilon_lb
        b = meta_converse_bec(n, 2.0**logqM, delta)
        if max(a, b) > 1e-300:
            assert abs(a - b) <= 1e-12 * max(a, b)

    @given(
        st.integers(min_value=1, max_value=500),
        st.floats(min_value=0.0, max_value=1.0),
        st.sampled_from([0.1, 0.5]),
    )
    def test_identity_property_log_interface(self, n, frac, delta):
        from auxbounds.converse import _meta_converse_bec_log2M

        logqM = frac * n
        ch = ChannelSpec.qec(2, delta)
        a = converse_epsilon_lb(ch, CodePoint(n, logqM), structural()).epsilon_lb
        b = _meta_converse_bec_log2M(n, logqM, delta)
        if max(a, b) > 1e-300:
            assert abs(a - b) <= 1e-12 * max(a, b)
