"""Compare the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Also times a full learning run under each backend (subprocess, so the
``TLSEP_PURE_PYTHON`` switch takes effect at import).
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from tlsep import _pykernels
from tlsep.kernels import INF, encode_bound

try:
    from tlsep import _kernels
except ImportError:
    _kernels = None


def random_dbm(rng, n):
    m = [[INF if rng.random() < 0.3 else encode_bound(rng.randint(0, 6), rng.random() < 0.5)
          for _ in range(n)] for _ in range(n)]
    for i in range(n):
        m[i][i] = encode_bound(0, False)
    return m


def random_table(rng, n, k):
    delta = [[rng.randrange(n) for _ in range(k)] for _ in range(n)]
    labels = [rng.choice((0, 1, 2, 2)) for _ in range(n)]
    return delta, labels


def time_kernel(fn, inputs, repeat):
    def run():
        for args in inputs:
            fn(*args)
    return min(timeit.repeat(run, number=1, repeat=repeat))


def time_closure(fn, dbms, repeat):
    # closure works in place, so each run gets fresh copies
    def run():
        for m in dbms:
            fn([row[:] for row in m])
    return min(timeit.repeat(run, number=1, repeat=repeat))


LEARN = "from tlsep import DeraTeacher, tlsep; from tlsep.io import bundled_models, load_dera; " \
        "tlsep(DeraTeacher(load_dera(bundled_models()['{}'])))"


def time_learn(model, pure, repeat):
    env = {**os.environ, "TLSEP_PURE_PYTHON": "1" if pure else "0"}
    code = f"import timeit; print(min(timeit.repeat({LEARN.format(model)!r}, number=1, repeat={repeat})))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels is None:
        sys.exit("compiled kernels are not built; reinstall with Cython available")
    rng = random.Random(0)
    rows = []
    for n in (8, 16, 32):
        dbms = [random_dbm(rng, n) for _ in range(50)]
        py = time_closure(_pykernels.close_dbm, dbms, args.repeat)
        cy = time_closure(_kernels.close_dbm, dbms, args.repeat)
        rows.append((f"close_dbm n={n} (x50)", py, cy))
    for n in (20, 60, 150):
        tables = [random_table(rng, n, 2) for _ in range(20)]
        py = time_kernel(_pykernels.incompatible_pairs, tables, args.repeat)
        cy = time_kernel(_kernels.incompatible_pairs, tables, args.repeat)
        rows.append((f"incompatible_pairs n={n} (x20)", py, cy))
    for model in ("fig2", "ex3"):
        py = time_learn(model, True, max(1, args.repeat // 2))
        cy = time_learn(model, False, max(1, args.repeat // 2))
        rows.append((f"learn {model}", py, cy))
    width = max(len(r[0]) for r in rows)
    print(f"{'kernel'.ljust(width)}  {'python(s)':>10}  {'cython(s)':>10}  speedup")
    for name, py, cy in rows:
        print(f"{name.ljust(width)}  {py:10.4f}  {cy:10.4f}  {py / cy:6.1f}x")


if __name__ == "__main__":
    main()
