"""Compiled kernels against the pure-Python fallback on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from fqsums import _kernels_py as fallback
from fqsums.field import make_field

try:
    from fqsums import _kernels as compiled
except ImportError:
    compiled = None


def _cases():
    f13 = make_field(13)
    f16 = make_field(2, 4)
    f729 = make_field(3, 6)
    t13 = (f13.exp_table, f13.log_table, f13.zech_table)
    t16 = (f16.exp_table, f16.log_table, f16.zech_table)
    t729 = (f729.exp_table, f729.log_table, f729.zech_table)
    a729 = np.arange(1, 729, dtype=np.int64)
    return [
        ("eval_codes q=729 deg 40", "eval_codes",
         t729 + (list(range(0, 41, 3)), [1 + (i % 700) for i in range(0, 41, 3)])),
        ("binomial_hist q=729, 728 a", "binomial_hist",
         t729 + (f729.trace_table, 3, 100, 7, 1, a729)),
        ("oracle_sweep q=13 deg 3", "oracle_sweep", t13 + (f13.trace_table, 13, 3)),
        ("roundtrip_sweep q=16 deg 4", "roundtrip_sweep", t16 + (2, 4, False)),
    ]


def _time(fn, args, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def _same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if compiled is None:
        print("compiled extension not built; only the fallback is available")
        return
    print(f"{'case':32} {'compiled':>11} {'python':>11} {'speedup':>8}  agree")
    for label, name, fargs in _cases():
        tc, rc = _time(getattr(compiled, name), fargs, args.repeat)
        tp, rp = _time(getattr(fallback, name), fargs, args.repeat)
        print(f"{label:32} {tc * 1e3:9.2f}ms {tp * 1e3:9.2f}ms {tp / tc:7.1f}x  {_same(rc, rp)}")


if __name__ == "__main__":
    main()
