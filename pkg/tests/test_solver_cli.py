import math
import subprocess
import sys

import pytest

from auxbounds.channels import ChannelSpec
from auxbounds.cli import main
from auxbounds.errors import InvariantError
from auxbounds.solver import (
    CurveRequest,
    bound_epsilon_fn,
    curve_csv,
    invert_rate,
    run_curve,
    run_vlsf_curve,
)

BEC_HALF = ChannelSpec.qec(2, 0.5)
BSC_NICKEL = ChannelSpec.bsc(0.05)


class TestInvertRate:
    def test_hand_bracketed_fixed_point(self):
        # on (1, 2] the erasure converse is 0.75 - 1.25 * 2^-logqM, so the
        # level-0.2 crossing sits at log2(1.25 / 0.55)
        fn = bound_epsilon_fn(BEC_HALF, "thm2")
        rate = invert_rate(lambda x: fn(2, x), 2, 0.2, tol=1e-12)
        assert rate == pytest.approx(math.log2(1.25 / 0.55) / 2, abs=1e-11)

    def test_everything_allowed_at_eps_one(self):
        fn = bound_epsilon_fn(BEC_HALF, "thm2")
        assert invert_rate(lambda x: fn(50, x), 50, 1.0) == 1.0

    def test_bsc_admits_four_symbols(self):
        fn = bound_epsilon_fn(BSC_NICKEL, "thm4")
        rate = invert_rate(lambda x: fn(7, x), 7, 0.0444)
        assert rate >= 4.0 / 7.0 - 1e-9

    def test_zero_when_refuted_everywhere(self):
        assert invert_rate(lambda x: 0.5, 10, 0.2) == 0.0

    def test_non_monotone_detection(self):
        # bumps above the right bracket endpoint at the first midpoint
        def bogus(logqM):
            if logqM < 2.5:
                return 0.1
            return 0.95 if logqM < 7.5 else 0.9

        with pytest.raises(InvariantError):
            invert_rate(bogus, 10, 0.5)

    def test_achievability_direction(self):
        fn = bound_epsilon_fn(BEC_HALF, "dt")
        rate = invert_rate(lambda x: fn(20, x), 20, 1e-3)
        assert 0.0 < rate < 0.5


class TestCurveRequest:
    def test_validations(self):
        with pytest.raises(ValueError):
            CurveRequest(BEC_HALF, 1.0, (10,), ("thm2",))
        with pytest.raises(ValueError):
            CurveRequest(BEC_HALF, 1e-3, (), ("thm2",))
        with pytest.raises(ValueError):
            CurveRequest(BEC_HALF, 1e-3, (10, 10), ("thm2",))
        with pytest.raises(ValueError):
            CurveRequest(BEC_HALF, 1e-3, (20, 10), ("thm2",))
        with pytest.raises(ValueError):
            CurveRequest(BEC_HALF, 1e-3, (10,), ("nope",))
        with pytest.raises(ValueError):
            CurveRequest(BEC_HALF, 1e-3, (10,), ("thm2",), A=0.0)

    def test_bound_channel_mismatch(self):
        with pytest.raises(ValueError):
            bound_epsilon_fn(BSC_NICKEL, "thm2")
        with pytest.raises(ValueError):
            bound_epsilon_fn(BEC_HALF, "rcu")
        with pytest.raises(ValueError):
            bound_epsilon_fn(ChannelSpec.qec(3, 0.5), "meta")
        with pytest.raises(ValueError):
            bound_epsilon_fn(ChannelSpec.qec(3, 0.5), "dt")


class TestRunCurve:
    def test_deterministic_csv(self):
        req = CurveRequest(BEC_HALF, 1e-3, (10, 20, 30), ("thm2", "meta", "dt"))
        a = curve_csv(run_curve(req), req)
        b = curve_csv(run_curve(req), req)
        assert a == b

    def test_csv_schema(self):
        req = CurveRequest(BEC_HALF, 1e-3, (10,), ("thm2", "thm3"), A=0.5)
        text = curve_csv(run_curve(req), req)
        lines = text.strip().split("\n")
        assert lines[0] == "n,bound,rate,logqM,params"
        assert len(lines) == 3
        for line in lines[1:]:
            assert len(line.split(",")) == 5
        row = lines[1].split(",")
        assert row[0] == "10" and row[1] == "thm2"
        assert "A=0.5" in lines[2]
        assert "A=" not in lines[1]

    def test_converse_dominates_achievability(self):
        req = CurveRequest(BEC_HALF, 1e-3, (10, 40, 80), ("thm2", "dt"))
        rates = {(p.n, p.bound_id): p.rate for p in run_curve(req)}
        for n in (10, 40, 80):
            assert rates[(n, "dt")] <= rates[(n, "thm2")] + 1e-9

    def test_rates_in_unit_interval_and_logqM_consistent(self):
        req = CurveRequest(BSC_NICKEL, 1e-3, (10, 50), ("thm4", "thm5", "rcu"))
        for p in run_curve(req):
            assert 0.0 <= p.rate <= 1.0
            assert p.logqM == pytest.approx(p.rate * p.n, rel=1e-12, abs=1e-12)

    def test_rate_curves_monotone_in_n_where_that_holds(self):
        # Monotonicity in n is a property of the tight curves only.  The
        # strong-converse variants descend steeply at small n (weak there
        # for every A), and the flip-channel curves wiggle at the ~1e-4
        # scale because the unsupported-state window moves in integer
        # jumps; those shapes are pinned by the acceptance suite instead.
        grid = tuple(range(10, 501, 10))
        for channel, bounds in (
            (BEC_HALF, ("thm2", "meta", "dt")),
            (BSC_NICKEL, ("rcu",)),
        ):
            req = CurveRequest(channel, 1e-3, grid, bounds)
            curves = {}
            for p in run_curve(req):
                curves.setdefault(p.bound_id, []).append(p.rate)
            for bound_id, rates in curves.items():
                for a, b in zip(rates, rates[1:]):
                    assert b >= a - 1e-9, (bound_id, a, b)


class TestVlsfCurve:
    def test_schema_and_rate(self):
        text = run_vlsf_curve([1.0, 2.0, 4.0], 2, 0.5)
        lines = text.strip().split("\n")
        assert lines[0] == "k,n,delta,la_lb,rate,m_max,tail_mass"
        k1 = lines[1].split(",")
        assert float(k1[0]) == 1.0
        assert float(k1[4]) == pytest.approx(1.0 / float(k1[3]), rel=1e-12)


def run_cli(*argv):
    import contextlib
    import io

    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestCli:
    def test_point(self):
        code, out, _ = run_cli(
            "point", "--channel", "qec:q=2,delta=0.5", "--n", "2",
            "--logqM", "1", "--bound", "thm2",
        )
        assert code == 0
        assert float(out.strip()) == pytest.approx(0.125, rel=1e-12)

    def test_point_terms_csv(self, tmp_path):
        terms = tmp_path / "terms.csv"
        code, out, _ = run_cli(
            "point", "--channel", "bsc:delta=0.05", "--n", "7",
            "--logqM", "4", "--bound", "thm4", "--terms", str(terms),
        )
        assert code == 0
        lines = terms.read_text().strip().split("\n")
        assert lines[0] == "s,pmf,per_state_lb,term"
        assert [int(r.split(",")[0]) for r in lines[1:]] == [5, 4, 3, 2]
        total = sum(float(r.split(",")[3]) for r in lines[1:])
        assert total == pytest.approx(float(out.strip()), rel=1e-9)

    def test_point_terms_rejected_for_achievability(self, tmp_path):
        code, _, err = run_cli(
            "point", "--channel", "qec:q=2,delta=0.5", "--n", "2",
            "--logqM", "1", "--bound", "dt", "--terms", str(tmp_path / "t.csv"),
        )
        assert code == 2
        assert "error" in err

    def test_curve_roundtrip(self, tmp_path):
        out_file = tmp_path / "curve.csv"
        code, _, _ = run_cli(
            "curve", "--channel", "qec:q=2,delta=0.5", "--eps", "1e-3",
            "--nmin", "10", "--nmax", "30", "--nstep", "10",
            "--bounds", "thm2,meta,dt", "--out", str(out_file),
        )
        assert code == 0
        lines = out_file.read_text().strip().split("\n")
        assert lines[0] == "n,bound,rate,logqM,params"
        assert len(lines) == 1 + 3 * 3

    def test_vlsf_roundtrip(self, tmp_path):
        out_file = tmp_path / "vlsf.csv"
        code, _, _ = run_cli(
            "vlsf", "--n", "2", "--delta", "0.5", "--q", "2",
            "--kmin", "1", "--kmax", "5", "--kstep", "1", "--out", str(out_file),
        )
        assert code == 0
        assert len(out_file.read_text().strip().split("\n")) == 6

    def test_oracle_with_compare(self):
        code, out, _ = run_cli(
            "oracle", "--family", "rs", "--channel", "qec:q=5,delta=0.5",
            "--n", "4", "--k", "2", "--compare", "thm2",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "family=rs q=5 n=4 M=25 logqM=2"
        assert float(lines[1].split()[1]) == pytest.approx(0.26, abs=1e-15)
        assert float(lines[2].split()[1]) == pytest.approx(0.26, abs=1e-12)

    def test_oracle_file_family(self, tmp_path):
        path = tmp_path / "code.txt"
        path.write_text("000\n111\n")
        code, out, _ = run_cli(
            "oracle", "--family", f"file:{path}", "--channel", "bsc:delta=0.1",
        )
        assert code == 0
        assert float(out.strip().split("\n")[1].split()[1]) == pytest.approx(0.028, rel=1e-12)

    def test_validate_bec(self):
        code, out, _ = run_cli(
            "--seed", "0", "validate", "--channel", "qec:q=2,delta=0.5",
            "--n", "10", "--logqM", "4", "--samples", "200000",
        )
        assert code == 0
        assert "ok" in out

    def test_validate_bsc(self):
        code, out, _ = run_cli(
            "validate", "--channel", "bsc:delta=0.05",
            "--n", "10", "--logqM", "3", "--samples", "200000",
        )
        assert code == 0
        assert "ok" in out

    def test_domain_error_exit_code(self):
        code, _, err = run_cli(
            "point", "--channel", "bsc:delta=1.5", "--n", "2",
            "--logqM", "1", "--bound", "thm4",
        )
        assert code == 2 and "error" in err

    def test_bound_channel_mismatch_exit_code(self):
        code, _, err = run_cli(
            "point", "--channel", "bsc:delta=0.1", "--n", "2",
            "--logqM", "1", "--bound", "thm2",
        )
        assert code == 2 and "error" in err

    def test_argparse_error_exit_code(self):
        code, _, _ = run_cli("point", "--bound", "bogus")
        assert code == 2

    def test_internal_invariant_exit_code(self, monkeypatch):
        from auxbounds import cli as cli_mod

        def boom(args):
            raise InvariantError("synthetic")

        monkeypatch.setitem(cli_mod._COMMANDS, "point", boom)
        code, _, err = run_cli(
            "point", "--channel", "bsc:delta=0.1", "--n", "2",
            "--logqM", "1", "--bound", "thm4",
        )
        assert code == 3 and "invariant" in err

    def test_console_script_subprocess(self, tmp_path):
        res = subprocess.run(
            [sys.executable, "-m", "auxbounds.cli", "point", "--channel",
             "qec:q=2,delta=0.5", "--n", "2", "--logqM", "1", "--bound", "meta"],
            capture_output=True, text=True,
        )
        assert res.returncode == 0
        assert float(res.stdout.strip()) == pytest.approx(0.125, rel=1e-12)
