"""Command-line front end.

Subcommands: point (one bound value), curve (rate-vs-blocklength CSV),
vlsf (stop-feedback CSV), oracle (exact small-code error), validate
(seeded Monte-Carlo check of the achievability closed forms).

Exit codes: 0 success, 2 argument or domain error, 3 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import achievability, oracle
from .channels import BSC, QEC, ChannelSpec, CodePoint
from .converse import BOUND_ID, structural, wolfowitz
from .errors import InvariantError
from .solver import (
    ALL_BOUNDS,
    DEFAULT_A,
    DEFAULT_RATE_TOL,
    CurveRequest,
    bound_epsilon_fn,
    curve_csv,
    run_curve,
    run_vlsf_curve,
)


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _channel(text: str) -> ChannelSpec:
    return ChannelSpec.parse(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="auxbounds",
        description="Finite-blocklength converse/achievability bounds and decoding oracles.",
    )
    parser.add_argument(
        "--seed", type=int, default=0,
        help="seed for all randomness (Monte-Carlo validation); default 0",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="evaluate one bound at one (n, logqM)")
    p.add_argument("--channel", type=_channel, required=True,
                   help="'qec:q=Q,delta=D' or 'bsc:delta=D'")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--logqM", type=float, required=True)
    p.add_argument("--bound", required=True, choices=ALL_BOUNDS)
    p.add_argument("--A", type=float, default=DEFAULT_A,
                   help=f"strong-converse constant for thm3/thm5 (default {DEFAULT_A})")
    p.add_argument("--terms", type=Path, default=None,
                   help="write per-state diagnostics CSV (converse bounds only)")

    p = sub.add_parser("curve", help="rate-vs-blocklength sweep to CSV")
    p.add_argument("--channel", type=_channel, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--nmin", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--nstep", type=int, default=10)
    p.add_argument("--bounds", required=True,
                   help=f"comma-separated ids from {','.join(ALL_BOUNDS)}")
    p.add_argument("--A", type=float, default=DEFAULT_A)
    p.add_argument("--tol", type=float, default=DEFAULT_RATE_TOL,
                   help="bisection tolerance on logqM")
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("vlsf", help="stop-feedback blocklength bound sweep to CSV")
    p.add_argument("--n", type=int, required=True, help="packet size in symbols")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--kmin", type=float, required=True)
    p.add_argument("--kmax", type=float, required=True)
    p.add_argument("--kstep", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("oracle", help="exact error probability of a small code")
    p.add_argument("--family", required=True,
                   help="rep | rs | hamming74 | full | file:PATH")
    p.add_argument("--channel", type=_channel, required=True)
    p.add_argument("--n", type=int, default=None, help="blocklength (rep/rs/full)")
    p.add_argument("--k", type=int, default=None, help="dimension (rs)")
    p.add_argument("--compare", default=None, choices=ALL_BOUNDS,
                   help="also print this bound at the code's (n, logqM)")
    p.add_argument("--A", type=float, default=DEFAULT_A)

    p = sub.add_parser(
        "validate",
        help="check an achievability closed form against its Monte-Carlo expectation",
    )
    p.add_argument("--channel", type=_channel, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--logqM", type=float, required=True)
    p.add_argument("--samples", type=int, default=10**6)

    return parser


def _write_terms_csv(path: Path, ch: ChannelSpec, n: int, logqM: float, strat) -> None:
    from .channels import state_pmf, unsupported_states
    from .converse import per_state_error_lb

    lines = ["s,pmf,per_state_lb,term"]
    for s in reversed(unsupported_states(ch, CodePoint(n, logqM))):
        pmf = state_pmf(ch, n, s).to_linear()
        lb = per_state_error_lb(ch, n, s, logqM, strat)
        lines.append(f"{s},{_fmt(pmf)},{_fmt(lb)},{_fmt(pmf * lb)}")
    path.write_text("\n".join(lines) + "\n")


def _cmd_point(args) -> int:
    fn = bound_epsilon_fn(args.channel, args.bound, args.A)
    value = fn(args.n, args.logqM)
    if args.terms is not None:
        if args.bound not in BOUND_ID.values():
            raise ValueError("--terms is only available for the converse bounds")
        strat = wolfowitz(args.A) if args.bound in ("thm3", "thm5") else structural()
        _write_terms_csv(args.terms, args.channel, args.n, args.logqM, strat)
    print(_fmt(value))
    return 0


def _cmd_curve(args) -> int:
    bounds = tuple(b.strip() for b in args.bounds.split(",") if b.strip())
    n_grid = tuple(range(args.nmin, args.nmax + 1, args.nstep))
    req = CurveRequest(args.channel, args.eps, n_grid, bounds, args.A, args.tol)
    args.out.write_text(curve_csv(run_curve(req), req))
    print(f"wrote {args.out}")
    return 0


def _cmd_vlsf(args) -> int:
    if args.kstep <= 0:
        raise ValueError(f"kstep must be > 0, got {args.kstep}")
    k_grid = []
    k = args.kmin
    while k <= args.kmax + 1e-12:
        k_grid.append(k)
        k += args.kstep
    args.out.write_text(run_vlsf_curve(k_grid, args.n, args.delta, args.q, args.tol))
    print(f"wrote {args.out}")
    return 0


def _build_code(args) -> tuple[str, oracle.Codebook]:
    fam = args.family
    q = args.channel.q
    if fam.startswith("file:"):
        return fam, oracle.load_codebook(fam[5:], q)
    if fam == "rep":
        if args.n is None:
            raise ValueError("family rep needs --n")
        return fam, oracle.repetition_code(q, args.n)
    if fam == "rs":
        if args.n is None or args.k is None:
            raise ValueError("family rs needs --n and --k")
        return fam, oracle.rs_code(q, args.n, args.k)
    if fam == "hamming74":
        if q != 2:
            raise ValueError("family hamming74 needs a binary channel")
        return fam, oracle.hamming74_code()
    if fam == "full":
        if args.n is None:
            raise ValueError("family full needs --n")
        return fam, oracle.full_space_code(q, args.n)
    raise ValueError(f"unknown family {args.family!r}")


def _cmd_oracle(args) -> int:
    fam, code = _build_code(args)
    ch = args.channel
    if ch.kind == BSC:
        err = oracle.exact_eps_bsc(code, ch.delta)
    else:
        err = oracle.exact_eps_qec(code, ch.delta)
    print(f"family={fam} q={code.q} n={code.n} M={code.M} logqM={_fmt(code.logqM)}")
    print(f"exact_eps {_fmt(err.epsilon)}")
    if args.compare is not None:
        fn = bound_epsilon_fn(ch, args.compare, args.A)
        print(f"{args.compare} {_fmt(fn(code.n, code.logqM))}")
    return 0


def _cmd_validate(args) -> int:
    ch = args.channel
    M = float(ch.q) ** args.logqM
    if ch.kind == QEC:
        if ch.q != 2:
            raise ValueError("validate needs a binary erasure or binary symmetric channel")
        closed = achievability.dt_bound_bec(args.n, M, ch.delta)
        mc = achievability.mc_dt_bound_bec(args.n, M, ch.delta, args.samples, args.seed)
        name = "dt"
    else:
        closed = achievability.rcu_bound_bsc(args.n, M, ch.delta)
        mc = achievability.mc_rcu_bound_bsc(args.n, M, ch.delta, args.samples, args.seed)
        name = "rcu"
    gap = abs(closed - mc.mean)
    limit = 3.0 * mc.std_err
    status = "ok" if gap <= limit else "MISMATCH"
    print(
        f"{name} closed={_fmt(closed)} mc={_fmt(mc.mean)} "
        f"std_err={_fmt(mc.std_err)} |gap|={_fmt(gap)} 3se={_fmt(limit)} {status}"
    )
    if status != "ok":
        raise InvariantError(
            f"{name} closed form disagrees with its Monte-Carlo expectation "
            f"beyond 3 standard errors (gap={gap}, 3se={limit})"
        )
    return 0


_COMMANDS = {
    "point": _cmd_point,
    "curve": _cmd_curve,
    "vlsf": _cmd_vlsf,
    "oracle": _cmd_oracle,
    "validate": _cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
