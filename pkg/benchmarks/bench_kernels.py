"""Compare the numba kernels with the pure-numpy fallback.

The backend is fixed at import time by CPEXT_BACKEND, so each backend runs in
its own subprocess.  Usage::

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def _workload(repeat):
    import numpy as np

    from cpext import _accel
    from cpext.catalog import get_group
    from cpext.cohomology import relation_model
    from cpext.exterior import exterior_presentation
    from cpext.kernels import howell_reduce
    from cpext.todd_coxeter import enumerate_cosets

    rng = np.random.default_rng(0)
    mats = [rng.integers(0, 64, (120, 80)) for _ in range(4)]
    D8 = get_group("D8")
    pres = exterior_presentation(D8, "wedge")
    howell_reduce(mats[0][:4, :4], 64)  # compile outside the timed region
    enumerate_cosets(1, [[0, 0]])

    def timed(fn):
        best = float("inf")
        for _ in range(repeat):
            t = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t)
        return best

    out = {"backend": _accel.backend_name()}
    out["howell 120x80 mod 64 (x4)"] = timed(lambda: [howell_reduce(A, 64) for A in mats])
    out["coset enumeration D8 wedge"] = timed(lambda: enumerate_cosets(pres.ngens, pres.relators))

    def model():
        from cpext import cohomology

        cohomology._MODEL_CACHE.clear()
        relation_model(get_group("Phi16"), 64).hom_b0

    out["relation model Phi16 mod 64"] = timed(model)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.worker:
        print(json.dumps(_workload(args.repeat)))
        return
    results = {}
    for backend in ("numba", "numpy"):
        env = dict(os.environ, CPEXT_BACKEND=backend)
        proc = subprocess.run([sys.executable, __file__, "--worker", "--repeat", str(args.repeat)],
                              env=env, capture_output=True, text=True, check=True)
        results[backend] = json.loads(proc.stdout.strip().splitlines()[-1])
    keys = [k for k in results["numba"] if k != "backend"]
    print(f"{'workload':<32} {'numba [s]':>10} {'numpy [s]':>10} {'speedup':>8}")
    for k in keys:
        a, b = results["numba"][k], results["numpy"][k]
        print(f"{k:<32} {a:>10.4f} {b:>10.4f} {b / a:>8.1f}")


if __name__ == "__main__":
    main()
