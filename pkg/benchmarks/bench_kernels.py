"""Compare the compiled matching kernels against the pure-Python fallback.

Run as ``python3 benchmarks/bench_kernels.py``. Both backends are imported
directly, so the timings are unaffected by which one the package selected
at import time.
"""

import random
import timeit

from qfse.rouge import _speedups_py as python_backend
from qfse.rouge import kernels

try:
    from qfse.rouge import _speedups as compiled_backend
except ImportError:
    compiled_backend = None

SIZES = {
    "sentence (30 tokens)": 30,
    "response (120 tokens)": 120,
    "summary (600 tokens)": 600,
}


def _tokens(rng, length, vocab=400):
    return [rng.randint(0, vocab - 1) for _ in range(length)]


def _time(func, repeat=5, number=20):
    return min(timeit.repeat(func, repeat=repeat, number=number)) / number


def _row(label, py_s, c_s):
    if c_s is None:
        print(f"{label:<44} {py_s * 1e6:>10.1f}          --       --")
        return
    print(
        f"{label:<44} {py_s * 1e6:>10.1f} {c_s * 1e6:>11.1f} "
        f"{py_s / c_s:>7.1f}x"
    )


def main():
    rng = random.Random(0)
    print(f"active package backend: {kernels.BACKEND}")
    if compiled_backend is None:
        print("compiled backend unavailable; timing pure Python only")
    print(f"{'case':<44} {'python us':>10} {'compiled us':>11} {'speedup':>8}")
    for name, length in SIZES.items():
        a = _tokens(rng, length)
        b = _tokens(rng, length)
        cases = [
            ("lcs_length", lambda k: lambda: k.lcs_length(a, b)),
            ("ngram_overlap n=1", lambda k: lambda: k.ngram_overlap(a, b, 1)),
            ("ngram_overlap n=2", lambda k: lambda: k.ngram_overlap(a, b, 2)),
            ("skip_overlap gap=4", lambda k: lambda: k.skip_overlap(a, b, 4)),
        ]
        for case, make in cases:
            py_s = _time(make(python_backend))
            c_s = None
            if compiled_backend is not None:
                c_s = _time(make(compiled_backend))
                got = make(compiled_backend)()
                want = make(python_backend)()
                if got != want:
                    raise AssertionError(f"backend mismatch in {case}")
            _row(f"{case}, {name}", py_s, c_s)


if __name__ == "__main__":
    main()
