"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--n 7] [--repeat 3] [--pipeline]

Kernel timings exclude JIT compilation (one warm-up call first).  With
``--pipeline`` the full ``projtab enumerate`` command is also timed in a
subprocess under each backend.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from projtab import _kernels as K


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def kernel_rows(n, repeat):
    if K.numba is None:
        sys.exit("numba is not installed; nothing to compare")
    words = K.generate_words_numpy(n)
    kept = words[K.parity_mask_numpy(words) & K.prime_mask_numpy(words)]
    cases = [
        ("generate_words", lambda: K._generate_words_nb(n), lambda: K.generate_words_numpy(n)),
        ("parity_mask", lambda: K._parity_mask_nb(words), lambda: K.parity_mask_numpy(words)),
        ("prime_mask", lambda: K._prime_mask_nb(words), lambda: K.prime_mask_numpy(words)),
        ("realizable_roles", lambda: K._realizable_roles_nb(kept), lambda: K.realizable_roles_numpy(kept)),
    ]
    rows = []
    for name, nb, npy in cases:
        nb()  # compile
        t_nb, a = best_of(nb, repeat)
        t_np, b = best_of(npy, repeat)
        if name == "generate_words":
            same = sorted(map(bytes, a)) == sorted(map(bytes, b))
        else:
            same = np.array_equal(a, b)
        rows.append((name, len(words) if name != "realizable_roles" else len(kept), t_nb, t_np, same))
    return rows


def pipeline(n):
    out = {}
    for backend, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, PROJTAB_DISABLE_NUMBA=flag)
        cmd = [sys.executable, "-m", "projtab", "enumerate", "-n", str(n)]
        subprocess.run(cmd, env=env, capture_output=True, check=True)  # warm cache
        t = time.perf_counter()
        res = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
        out[backend] = (time.perf_counter() - t, res.stdout)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--pipeline", action="store_true")
    args = ap.parse_args()

    print(f"n = {args.n}, best of {args.repeat}")
    print(f"{'kernel':<18} {'rows':>9} {'numba s':>9} {'numpy s':>9} {'speedup':>8}  equal")
    for name, rows, t_nb, t_np, same in kernel_rows(args.n, args.repeat):
        print(f"{name:<18} {rows:>9} {t_nb:>9.4f} {t_np:>9.4f} {t_np / t_nb:>7.1f}x  {same}")
    if args.pipeline:
        res = pipeline(args.n)
        same = res["numba"][1] == res["numpy"][1]
        print(f"enumerate -n {args.n}: numba {res['numba'][0]:.2f}s, numpy {res['numpy'][0]:.2f}s, identical output {same}")


if __name__ == "__main__":
    main()
