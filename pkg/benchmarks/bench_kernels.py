"""Compare the compiled and pure-Python lattice point counters.

    python3 benchmarks/bench_kernels.py [--cases N] [--seed S]
"""

import argparse
import random
import time

from cstar import _pykernels
from cstar.toric_core import enumerate_surfaces, rays_from_b

try:
    from cstar import _ckernels
except ImportError:
    _ckernels = None


def make_cases(n, seed):
    rng = random.Random(seed)
    fans = [rays_from_b(b) for k in (4, 5, 6, 7, 8) for b in enumerate_surfaces(k, -4, 4)]
    cases = []
    for _ in range(n):
        X = rng.choice(fans)
        px = [r[0] for r in X.rays]
        py = [r[1] for r in X.rays]
        a = [rng.randint(-3, 12) for _ in X.rays]
        cases.append((px, py, a))
    return cases


def run(fn, cases):
    t = time.perf_counter()
    out = [fn(*c) for c in cases]
    return time.perf_counter() - t, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cases = make_cases(args.cases, args.seed)
    tp, outp = run(_pykernels.count_sections, cases)
    print("python  %8.3f s  (%d cases)" % (tp, len(cases)))
    if _ckernels is None:
        print("cython  not built")
        return
    tc, outc = run(_ckernels.count_sections, cases)
    assert outc == outp, "backends disagree"
    print("cython  %8.3f s  speedup x%.1f" % (tc, tp / tc if tc else float("inf")))


if __name__ == "__main__":
    main()
