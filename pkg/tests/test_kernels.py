import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfse.rouge import _speedups_py as pyk
from qfse.rouge import kernels

from .oracles import naive_clipped, naive_lcs, naive_ngrams, naive_skip_pairs

IDS = st.lists(st.integers(min_value=0, max_value=9), min_size=0, max_size=40)

try:
    from qfse.rouge import _speedups as ck
except ImportError:  # pragma: no cover - compiled backend is optional
    ck = None

BACKENDS = [pytest.param(pyk, id="python")]
if ck is not None:
    BACKENDS.append(pytest.param(ck, id="compiled"))


@pytest.mark.parametrize("backend", BACKENDS)
class TestAgainstNaive:
    def test_lcs_random(self, backend):
        rng = random.Random(0)
        for _ in range(150):
            a = [rng.randint(0, 6) for _ in range(rng.randint(0, 25))]
            b = [rng.randint(0, 6) for _ in range(rng.randint(0, 25))]
            assert backend.lcs_length(a, b) == naive_lcs(a, b)

    def test_ngram_overlap_random(self, backend):
        rng = random.Random(1)
        for _ in range(150):
            a = [rng.randint(0, 6) for _ in range(rng.randint(0, 25))]
            b = [rng.randint(0, 6) for _ in range(rng.randint(0, 25))]
            for n in (1, 2, 3):
                match, ta, tb = backend.ngram_overlap(a, b, n)
                ga, gb = naive_ngrams(a, n), naive_ngrams(b, n)
                assert match == naive_clipped(ga, gb)
                assert ta == len(ga) and tb == len(gb)

    def test_skip_overlap_random(self, backend):
        rng = random.Random(2)
        for _ in range(150):
            a = [rng.randint(0, 6) for _ in range(rng.randint(0, 25))]
            b = [rng.randint(0, 6) for _ in range(rng.randint(0, 25))]
            for gap in (0, 1, 4):
                match, ta, tb = backend.skip_overlap(a, b, gap)
                ga = naive_skip_pairs(a, gap)
                gb = naive_skip_pairs(b, gap)
                assert match == naive_clipped(ga, gb)
                assert ta == len(ga) and tb == len(gb)


@pytest.mark.skipif(ck is None, reason="compiled extension not built")
class TestBackendParity:
    @given(a=IDS, b=IDS)
    @settings(max_examples=100, deadline=None)
    def test_lcs_parity(self, a, b):
        assert ck.lcs_length(a, b) == pyk.lcs_length(a, b)

    @given(a=IDS, b=IDS, n=st.integers(min_value=1, max_value=4))
    @settings(max_examples=100, deadline=None)
    def test_ngram_parity(self, a, b, n):
        assert ck.ngram_overlap(a, b, n) == pyk.ngram_overlap(a, b, n)

    @given(a=IDS, b=IDS, gap=st.integers(min_value=0, max_value=6))
    @settings(max_examples=100, deadline=None)
    def test_skip_parity(self, a, b, gap):
        assert ck.skip_overlap(a, b, gap) == pyk.skip_overlap(a, b, gap)


class TestSelection:
    def test_active_backend_exports(self):
        assert kernels.BACKEND in ("compiled", "python")
        assert callable(kernels.lcs_length)
        assert callable(kernels.ngram_overlap)
        assert callable(kernels.skip_overlap)

    def test_env_var_forces_python_backend(self):
        code = (
            "from qfse.rouge import kernels; print(kernels.BACKEND)"
        )
        out = subprocess.run(
            [sys.executable, "-c", code],
            capture_output=True,
            text=True,
            env={"QFSE_PURE_PYTHON": "1", "PATH": "/usr/bin:/bin"},
        )
        assert out.returncode == 0, out.stderr
        assert out.stdout.strip() == "python"

    def test_scores_identical_across_backends(self):
        # Full-stack determinism: rouge_text through the forced fallback
        # matches the in-process backend bit for bit.
        code = (
            "from qfse.rouge import rouge_text, RSU;"
            "s = rouge_text('a b c a d', ['b a c d a b'], RSU);"
            "print(repr((s.precision, s.recall, s.f1)))"
        )
        forced = subprocess.run(
            [sys.executable, "-c", code],
            capture_output=True,
            text=True,
            env={"QFSE_PURE_PYTHON": "1", "PATH": "/usr/bin:/bin"},
        )
        assert forced.returncode == 0, forced.stderr
        from qfse.rouge import RSU, rouge_text

        s = rouge_text("a b c a d", ["b a c d a b"], RSU)
        assert forced.stdout.strip() == repr((s.precision, s.recall, s.f1))
