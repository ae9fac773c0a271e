#!/usr/bin/env python3
"""Compare the numba and numpy kernel backends on the hot paths.

Each workload runs in a subprocess with AUXBOUNDS_BACKEND forced, so both
backends are measured on the same machine state.  Reported times exclude
JIT compilation (one warm-up call before timing).

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "binom_row_n1e5": """
from auxbounds.numerics import log_binomial_row
log_binomial_row(10)
log_binomial_row.cache_clear()
t0 = time.perf_counter()
log_binomial_row(100_000)
out = time.perf_counter() - t0
""",
    "logsumexp_1e6": """
import numpy as np
from auxbounds._kernels import logsumexp
a = np.linspace(-700.0, 0.0, 1_000_000)
logsumexp(a[:10])
t0 = time.perf_counter()
for _ in range(20):
    logsumexp(a)
out = (time.perf_counter() - t0) / 20
""",
    "erasure_curve_n500": """
from auxbounds.channels import ChannelSpec
from auxbounds.solver import bound_epsilon_fn, invert_rate
ch = ChannelSpec.qec(2, 0.5)
fn = bound_epsilon_fn(ch, "thm2")
invert_rate(lambda x: fn(50, x), 50, 1e-3)
t0 = time.perf_counter()
for n in range(50, 501, 50):
    invert_rate(lambda x, n=n: fn(n, x), n, 1e-3)
out = time.perf_counter() - t0
""",
    "oracle_qec_n14_M256": """
import numpy as np
from auxbounds.oracle import Codebook, exact_eps_qec
rng = np.random.default_rng(0)
words = rng.integers(0, 2, size=(256, 14))
while np.unique(words, axis=0).shape[0] < 256:
    words = rng.integers(0, 2, size=(256, 14))
code = Codebook(2, 14, words)
exact_eps_qec(Codebook(2, 4, np.array([[0,0,0,0],[1,1,1,1]])), 0.5)
t0 = time.perf_counter()
exact_eps_qec(code, 0.3)
out = time.perf_counter() - t0
""",
    "oracle_bsc_n16_M512": """
import numpy as np
from auxbounds.oracle import Codebook, exact_eps_bsc
rng = np.random.default_rng(1)
words = rng.integers(0, 2, size=(512, 16))
while np.unique(words, axis=0).shape[0] < 512:
    words = rng.integers(0, 2, size=(512, 16))
code = Codebook(2, 16, words)
exact_eps_bsc(Codebook(2, 4, np.array([[0,0,0,0],[1,1,1,1]])), 0.1)
t0 = time.perf_counter()
exact_eps_bsc(code, 0.05)
out = time.perf_counter() - t0
""",
    "vlsf_k200_sweep": """
from auxbounds.vlsf import VlsfPoint, vlsf_blocklength_lb
vlsf_blocklength_lb(VlsfPoint(2, 1.0, 0.5))
t0 = time.perf_counter()
for k in range(1, 201):
    vlsf_blocklength_lb(VlsfPoint(2, float(k), 0.5), 1e-12)
out = time.perf_counter() - t0
""",
}

_RUNNER = """
import time
{body}
print(out)
"""


def run_workload(name, backend, repeat):
    env = dict(os.environ, AUXBOUNDS_BACKEND=backend)
    best = float("inf")
    for _ in range(repeat):
        res = subprocess.run(
            [sys.executable, "-c", _RUNNER.format(body=WORKLOADS[name])],
            capture_output=True, text=True, env=env,
        )
        if res.returncode != 0:
            raise RuntimeError(f"{name} [{backend}] failed:\n{res.stderr}")
        best = min(best, float(res.stdout.strip()))
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    args = parser.parse_args()

    rows = []
    for name in WORKLOADS:
        t_numba = run_workload(name, "numba", args.repeat)
        t_numpy = run_workload(name, "numpy", args.repeat)
        rows.append((name, t_numba, t_numpy))

    if args.json:
        print(json.dumps({n: {"numba": a, "numpy": b} for n, a, b in rows}, indent=2))
        return
    print(f"{'workload':<26} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for name, a, b in rows:
        print(f"{name:<26} {a * 1e3:>8.2f}ms {b * 1e3:>8.2f}ms {b / a:>7.1f}x")


if __name__ == "__main__":
    main()
