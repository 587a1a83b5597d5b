"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

from kurepa import _kernels_py, core, special

try:
    from kurepa import _kernels as _compiled
except ImportError:
    _compiled = None

Z = 0.37 + 1.9j


def workloads(kern):
    return {
        "gamma_lanczos x1000": lambda: [kern.gamma_lanczos(Z + 0.001 * i) for i in range(1000)],
        "k1_partial_sum(200)": lambda: kern.k1_partial_sum(Z, 1.0, 200),
        "kurepa_gk15 x100": lambda: [kern.kurepa_gk15(Z, 1.01, 3.0, 0.01) for _ in range(100)],
        "kurepa_tanh_sinh x20": lambda: [kern.kurepa_tanh_sinh(Z, 0.99, 1 / 64, False) for _ in range(20)],
        "K(z) via integral x20": lambda: [core.kurepa_integral(Z + 0.01 * i) for i in range(20)],
        "K1(z) series x200": lambda: [core.k1_series(Z - 0.01 * i) for i in range(200)],
    }


def use(kern):
    core.kernels = kern
    special.kernels = kern


def best_time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = [("python", _kernels_py)]
    if _compiled is not None:
        backends.insert(0, ("cython", _compiled))
    else:
        print("compiled kernels not built; timing the fallback only")

    rows = {}
    for name, kern in backends:
        use(kern)
        for label, fn in workloads(kern).items():
            rows.setdefault(label, {})[name] = best_time(fn, args.repeat)

    header = f"{'workload':<24}" + "".join(f"{n:>12}" for n, _ in backends)
    if _compiled is not None:
        header += f"{'speedup':>10}"
    print(header)
    for label, t in rows.items():
        line = f"{label:<24}" + "".join(f"{t[n] * 1e3:>10.3f}ms" for n, _ in backends)
        if _compiled is not None:
            line += f"{t['python'] / t['cython']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
