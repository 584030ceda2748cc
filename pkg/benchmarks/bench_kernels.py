"""Compare the compiled and pure-Python truncated-product kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one line per workload with the best time for each backend and the
speedup.  The end-to-end rows rerun the theta pipeline in a subprocess with
``FGLTHETA_PURE_PYTHON`` set or unset, so they measure the backend choice as
a user would see it.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from fgltheta import _kernels_py

try:
    from fgltheta import _kernels as _compiled
except ImportError:
    _compiled = None


def kernel_workloads(rng):
    bits = 64
    a = [rng.getrandbits(bits) for _ in range(256)]
    b = [rng.getrandbits(bits) for _ in range(256)]
    size = _kernels_py.tri_size(24)
    p = [rng.getrandbits(bits) for _ in range(size)]
    q = [rng.getrandbits(bits) for _ in range(size)]
    return [
        ("mul_trunc_mod order=256 bits=64", "mul_trunc_mod", (a, b, 256, bits)),
        ("bivar_mul_trunc_mod order=24 bits=64", "bivar_mul_trunc_mod", (p, q, 24, bits)),
    ]


def best(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def pipeline_time(pure, N, K, repeat):
    env = dict(os.environ)
    env.pop("FGLTHETA_PURE_PYTHON", None)
    if pure:
        env["FGLTHETA_PURE_PYTHON"] = "1"
    code = (
        "import timeit; from fgltheta.theta import theta_pipeline; "
        f"print(min(timeit.repeat(lambda: theta_pipeline({N}, {K}), number=1, repeat={repeat})))"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled extension not built; nothing to compare")
        return 1
    rng = random.Random(0)
    print(f"{'workload':45s} {'compiled':>10s} {'python':>10s} {'speedup':>8s}")
    for label, name, fargs in kernel_workloads(rng):
        tc = best(getattr(_compiled, name), fargs, args.repeat)
        tp = best(getattr(_kernels_py, name), fargs, args.repeat)
        assert getattr(_compiled, name)(*fargs) == getattr(_kernels_py, name)(*fargs)
        print(f"{label:45s} {tc * 1e3:8.2f}ms {tp * 1e3:8.2f}ms {tp / tc:7.1f}x")
    for N, K in ((64, 64), (64, 128)):
        tc = pipeline_time(False, N, K, args.repeat)
        tp = pipeline_time(True, N, K, args.repeat)
        print(f"{f'theta_pipeline N={N} K={K}':45s} {tc * 1e3:8.2f}ms {tp * 1e3:8.2f}ms {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
