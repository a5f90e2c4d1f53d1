"""Compare the pure-Python and compiled kernels.

Times rref, inertia and dot_rows on seeded random integer matrices and one full
twisted-connected-sum Wall computation (176-dimensional) per backend.

  python3 benchmarks/bench_kernels.py [--size 40] [--repeat 3] [--skip-tcs]
"""

import argparse
import random
import time

import g2inv.exactalg as exactalg
from g2inv._backend import available_backends
from g2inv.lattices import k3_form
from g2inv.wall import TcsLatticeData, tcs_sigma


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def workloads(size, seed):
    rng = random.Random(seed)
    rows = [[rng.randint(-50, 50) for _ in range(size)] for _ in range(size - 2)]
    sym = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            sym[i][j] = sym[j][i] = rng.randint(-50, 50)
    return rows, sym


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-tcs", action="store_true")
    args = ap.parse_args()

    rows, sym = workloads(args.size, args.seed)
    tcs = TcsLatticeData.build(k3_form())
    backends = available_backends()
    results = {}
    for name, mod in sorted(backends.items()):
        exactalg.kernels = mod
        r = {
            "rref": best_of(lambda: mod.rref(rows, args.size), args.repeat),
            "inertia": best_of(lambda: mod.inertia(sym), args.repeat),
            "dot_rows": best_of(lambda: mod.dot_rows(rows, rows), args.repeat),
        }
        if not args.skip_tcs:
            r["tcs_sigma"] = best_of(lambda: tcs_sigma(tcs), 1)
        results[name] = r
    outputs = {name: (mod.rref(rows, args.size), mod.inertia(sym)) for name, mod in backends.items()}
    agree = len({repr(v) for v in outputs.values()}) == 1

    names = sorted(results)
    print(f"{'kernel':<12}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for task in results[names[0]]:
        line = f"{task:<12}" + "".join(f"{results[n][task]:>11.4f}s" for n in names)
        if "cython" in results and "python" in results:
            line += f"{results['python'][task] / results['cython'][task]:>11.2f}x"
        print(line)
    print(f"outputs identical across backends: {agree}")
    if len(names) == 1:
        print("compiled kernels not built; only the Python backend was timed")


if __name__ == "__main__":
    main()
