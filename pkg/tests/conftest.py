import numpy as np
import pytest

from qfse.engine import SYSTEM_S1, SYSTEM_S2
from qfse.simharness import build_lsug, build_oracle, run_simulation
from qfse.synthbench import make_benchmark
from qfse.textproc import EmbeddingStore, build_corpus

TINY_DOCS = [
    (
        "d1",
        "El Nino brings heavy rain to Peru. The weather pattern changes "
        "ocean temperature. Fishermen lost their catch last winter.",
    ),
    (
        "d2",
        "El Nino brings heavy rain to Peru. Scientists track the warm "
        "current near the equator. The forecast predicts drought in "
        "Australia.",
    ),
]
TINY_REFS = [
    "El Nino brings heavy rain and drought to Peru.",
    "Ocean temperature changes alter the weather pattern.",
]
TINY_SCUS = [
    "El Nino brings heavy rain to Peru",
    "The forecast predicts drought in Australia",
    "Scientists track the warm current",
]


@pytest.fixture()
def tiny_corpus():
    return build_corpus("tiny", TINY_DOCS, TINY_REFS, scus=TINY_SCUS)


@pytest.fixture()
def tiny_store(tiny_corpus):
    """Deterministic random unit vectors for every token in the corpus."""
    tokens = sorted(
        {t for s in tiny_corpus.sentences() for t in s.tokens}
        | {t for r in tiny_corpus.references for t in r.tokens}
    )
    rng = np.random.default_rng(42)
    vectors = {}
    for tok in tokens:
        vec = rng.normal(size=8)
        vectors[tok] = vec / np.linalg.norm(vec)
    return EmbeddingStore(vectors, 8)


@pytest.fixture(scope="session")
def bench():
    return make_benchmark(seed=0)


@pytest.fixture(scope="session")
def bench_logs(bench):
    """All (system, script) simulations over the synthetic benchmark."""
    logs = {}
    for config in (SYSTEM_S1, SYSTEM_S2):
        for corpus in bench.corpora:
            scripts = {
                "sug": build_lsug(corpus, config),
                "oracle": build_oracle(corpus, seed=0),
            }
            for label, script in scripts.items():
                logs[(config.system_id, label, corpus.topic_id)] = run_simulation(
                    corpus, config, script, bench.store
                )
    return logs


@pytest.fixture(scope="session")
def bench_refs(bench):
    return {
        c.topic_id: [r.text for r in c.references] for c in bench.corpora
    }
