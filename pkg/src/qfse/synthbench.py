"""Deterministic synthetic corpora for end-to-end checks and benchmarks.

Each synthetic topic plants a fixed set of "fact" sentences that make up the
reference summaries and content-unit list, then pads documents with filler
sentences built from a small pool of high-frequency word pairs. Suggested
queries therefore chase filler while content-unit queries recover reference
material, which separates the simulated lower and upper bounds. A larger
generator provides a 25-document corpus with 300-dim embeddings for latency
measurements.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .textproc import EmbeddingStore, TopicCorpus, build_corpus

TOPIC_COUNT = 5
DOCS_PER_TOPIC = 10
FACTS_PER_TOPIC = 24
FACT_WORDS = 6
FACT_SLOTS_PER_DOC = 5
FILLER_SLOTS_PER_DOC = 7
FILLER_PAIRS = 12
JUNK_WORDS = 40
REFERENCE_COUNT = 4
FACTS_PER_REFERENCE = 10
EMBED_DIM = 24
FACT_WORD_JITTER = 0.08


def _fact_words(topic: int, fact: int) -> list[str]:
    return [f"t{topic}f{fact}w{k}" for k in range(FACT_WORDS)]


def _fact_sentence(topic: int, fact: int) -> str:
    return "The " + " ".join(_fact_words(topic, fact)) + "."


def _pair_words(topic: int, pair: int) -> tuple[str, str]:
    return f"t{topic}noisea{pair}", f"t{topic}noiseb{pair}"


def _filler_sentence(topic: int, doc: int, slot: int, rng: np.random.Generator) -> str:
    first = (doc * FILLER_SLOTS_PER_DOC + slot) % FILLER_PAIRS
    second = (first + 5) % FILLER_PAIRS
    a1, b1 = _pair_words(topic, first)
    a2, b2 = _pair_words(topic, second)
    j1, j2 = (
        f"t{topic}junk{int(j)}" for j in rng.integers(0, JUNK_WORDS, size=2)
    )
    return f"The {a1} {b1} {j1} {j2} {a2} {b2}."


def _topic_documents(topic: int, rng: np.random.Generator) -> list[tuple[str, str]]:
    docs: list[tuple[str, str]] = []
    for d in range(DOCS_PER_TOPIC):
        sentences: list[str] = []
        for s in range(FACT_SLOTS_PER_DOC + FILLER_SLOTS_PER_DOC):
            if s % 2 == 1 and s // 2 < FACT_SLOTS_PER_DOC:
                fact = (d * FACT_SLOTS_PER_DOC + s // 2) % FACTS_PER_TOPIC
                sentences.append(_fact_sentence(topic, fact))
            else:
                slot = s // 2 if s % 2 == 0 else s - FACT_SLOTS_PER_DOC
                sentences.append(_filler_sentence(topic, d, slot % 7, rng))
        docs.append((f"d{d:02d}", " ".join(sentences)))
    return docs


def _topic_references(topic: int, rng: np.random.Generator) -> tuple[list[str], list[str]]:
    """References sample facts; the content units are their sorted union."""
    references: list[str] = []
    used: set[int] = set()
    for _ in range(REFERENCE_COUNT):
        picked = sorted(
            rng.choice(FACTS_PER_TOPIC, size=FACTS_PER_REFERENCE, replace=False)
        )
        used.update(int(f) for f in picked)
        references.append(" ".join(_fact_sentence(topic, int(f)) for f in picked))
    scus = [_fact_sentence(topic, f) for f in sorted(used)]
    return references, scus


def _benchmark_vocab(topic: int) -> list[str]:
    vocab: list[str] = []
    for fact in range(FACTS_PER_TOPIC):
        vocab.extend(_fact_words(topic, fact))
    for pair in range(FILLER_PAIRS):
        vocab.extend(_pair_words(topic, pair))
    vocab.extend(f"t{topic}junk{j}" for j in range(JUNK_WORDS))
    return vocab


def _unit(vec: np.ndarray) -> np.ndarray:
    return vec / np.linalg.norm(vec)


def _benchmark_store(seed: int) -> EmbeddingStore:
    """Fact words cluster tightly around one direction per fact; everything
    else is isotropic noise, so cosine similarity finds planted content."""
    rng = np.random.default_rng(seed + 1)
    vectors: dict[str, np.ndarray] = {}
    for topic in range(TOPIC_COUNT):
        for fact in range(FACTS_PER_TOPIC):
            direction = _unit(rng.normal(size=EMBED_DIM))
            for word in _fact_words(topic, fact):
                jitter = FACT_WORD_JITTER * rng.normal(size=EMBED_DIM)
                vectors[word] = _unit(direction + jitter)
        for word in _benchmark_vocab(topic):
            if word not in vectors:
                vectors[word] = _unit(rng.normal(size=EMBED_DIM))
    return EmbeddingStore(vectors, EMBED_DIM)


@dataclass(frozen=True)
class SyntheticBenchmark:
    corpora: tuple[TopicCorpus, ...]
    store: EmbeddingStore
    seed: int


def make_benchmark(seed: int = 0, topics: int = TOPIC_COUNT) -> SyntheticBenchmark:
    corpora: list[TopicCorpus] = []
    for topic in range(topics):
        rng = np.random.default_rng(seed * 1000 + topic)
        docs = _topic_documents(topic, rng)
        references, scus = _topic_references(topic, rng)
        corpora.append(
            build_corpus(f"synth{topic}", docs, references, scus=scus)
        )
    return SyntheticBenchmark(tuple(corpora), _benchmark_store(seed), seed)


def write_benchmark(bench: SyntheticBenchmark, out_dir: str | Path) -> Path:
    """Materialize the benchmark as a corpus tree the CLI can consume.

    Layout: <out>/topics/<id>/{docs/*.txt, refs/*.txt, scus.json} plus a
    shared embeddings file and a ready-to-use service config.
    """
    out = Path(out_dir)
    topics_dir = out / "topics"
    for corpus in bench.corpora:
        tdir = topics_dir / corpus.topic_id
        (tdir / "docs").mkdir(parents=True, exist_ok=True)
        (tdir / "refs").mkdir(parents=True, exist_ok=True)
        for doc in corpus.documents:
            (tdir / "docs" / f"{doc.doc_id}.txt").write_text(
                doc.raw_text + "\n", encoding="utf-8"
            )
        for i, ref in enumerate(corpus.references):
            (tdir / "refs" / f"ref{i}.txt").write_text(
                ref.text + "\n", encoding="utf-8"
            )
        (tdir / "scus.json").write_text(
            json.dumps(list(corpus.scus or ()), indent=2) + "\n", encoding="utf-8"
        )
    bench.store.save(out / "embeddings.txt")
    config = {
        "corpus_root": "topics",
        "embeddings": "embeddings.txt",
        "log_dir": "logs",
        "min_explore_seconds": 150,
        "systems": {"S1": "S1", "S2": "S2"},
    }
    (out / "service.json").write_text(
        json.dumps(config, indent=2) + "\n", encoding="utf-8"
    )
    return out


LATENCY_DOCS = 25
LATENCY_SENTENCES_PER_DOC = 24
LATENCY_VOCAB = 1500
LATENCY_DIM = 300
LATENCY_SENTENCE_WORDS = 9


def make_latency_corpus(
    seed: int = 0,
    docs: int = LATENCY_DOCS,
    sentences_per_doc: int = LATENCY_SENTENCES_PER_DOC,
    dim: int = LATENCY_DIM,
) -> tuple[TopicCorpus, EmbeddingStore]:
    """A corpus sized like a large news cluster (~600 sentences) with full
    300-dim embeddings, for timing session start and query responses."""
    rng = np.random.default_rng(seed)
    vocab = [f"word{v:04d}" for v in range(LATENCY_VOCAB)]
    vectors = {w: _unit(rng.normal(size=dim)) for w in vocab}
    store = EmbeddingStore(vectors, dim)
    doc_list: list[tuple[str, str]] = []
    for d in range(docs):
        sentences = []
        for _ in range(sentences_per_doc):
            words = rng.choice(LATENCY_VOCAB, size=LATENCY_SENTENCE_WORDS)
            sentences.append(
                "The " + " ".join(vocab[int(w)] for w in words) + "."
            )
        doc_list.append((f"d{d:02d}", " ".join(sentences)))
    references = []
    for _ in range(2):
        words = rng.choice(LATENCY_VOCAB, size=80)
        references.append(" ".join(vocab[int(w)] for w in words))
    corpus = build_corpus("latency", doc_list, references)
    return corpus, store
