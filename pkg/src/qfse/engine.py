"""Live session state machine for query-focused summary expansion.

A session owns the set of already-shown sentences and answers queries with
unused sentences only, via either embedding-cosine ranking with an MMR
diversity gate (SEM) or a combined embedding/lexical-overlap product score
(LEX). Suggested queries come from frequent n-grams (FREQ) or TextRank
phrases (TR).
"""

from __future__ import annotations

import time
import uuid
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import rouge as rougekit
from .errors import ArgumentError, StateError
from .summcore import (
    DEFAULT_MIN_WORDS,
    InitialSummary,
    cosine,
    initial_summary_cl,
    initial_summary_tr,
    textrank_phrases,
)
from .textproc import (
    EmbeddingStore,
    Sentence,
    TopicCorpus,
    embed_tokens,
    sentence_embedding,
    stopwords,
    tokenize,
)

Key = tuple[str, int]

QUERY_TYPES = ("free_text", "highlight", "suggested", "repeat")
SUGGESTION_COUNT = 10


@dataclass(frozen=True)
class SystemConfig:
    """Selects the component triple (initial summarizer, responder, suggester)."""

    system_id: str
    initial: Literal["CL", "TR"]
    responder: Literal["SEM", "LEX"]
    suggester: Literal["FREQ", "TR"]
    response_sentences: int = 2
    min_initial_words: int = DEFAULT_MIN_WORDS
    mmr_dissim: float = 0.05
    seed: int = 0

    def __post_init__(self) -> None:
        if self.response_sentences < 1:
            raise ArgumentError("response_sentences must be >= 1")
        if not 0.0 <= self.mmr_dissim <= 1.0:
            raise ArgumentError("mmr_dissim must be in [0, 1]")
        if self.initial not in ("CL", "TR"):
            raise ArgumentError(f"unknown initial summarizer {self.initial!r}")
        if self.responder not in ("SEM", "LEX"):
            raise ArgumentError(f"unknown responder {self.responder!r}")
        if self.suggester not in ("FREQ", "TR"):
            raise ArgumentError(f"unknown suggester {self.suggester!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "SystemConfig":
        return cls(**data)

    def to_dict(self) -> dict:
        return {
            "system_id": self.system_id,
            "initial": self.initial,
            "responder": self.responder,
            "suggester": self.suggester,
            "response_sentences": self.response_sentences,
            "min_initial_words": self.min_initial_words,
            "mmr_dissim": self.mmr_dissim,
            "seed": self.seed,
        }


SYSTEM_S1 = SystemConfig("S1", initial="CL", responder="SEM", suggester="FREQ")
SYSTEM_S2 = SystemConfig("S2", initial="TR", responder="LEX", suggester="TR")


@dataclass
class Interaction:
    query_text: str
    query_type: str
    response_sentences: list[Sentence]
    response_word_count: int
    rating: int | None = None
    latency_ms: int = 0
    timestamp_ms: int = 0
    exhausted: bool = False
    degenerate_query: bool = False

    @property
    def response_text(self) -> str:
        return " ".join(s.text for s in self.response_sentences)


@dataclass
class SessionState:
    session_id: str
    config: SystemConfig
    topic_id: str
    initial: InitialSummary
    used: set[Key]
    suggestions: list[str]
    interactions: list[Interaction] = field(default_factory=list)
    created_at: float = 0.0
    last_active: float = 0.0
    # Shared read-only data the responders need.
    corpus: TopicCorpus = None  # type: ignore[assignment]
    store: EmbeddingStore = None  # type: ignore[assignment]
    embeddings: dict[Key, np.ndarray] = field(default_factory=dict)


def start_session(
    corpus: TopicCorpus,
    config: SystemConfig,
    store: EmbeddingStore,
    session_id: str | None = None,
) -> SessionState:
    """Build the initial summary, precompute suggestions, open the session."""
    if not corpus.sentences():
        raise ArgumentError("corpus has no sentences")
    if config.initial == "CL":
        initial = initial_summary_cl(
            corpus,
            store,
            min_words=config.min_initial_words,
            seed=config.seed,
        )
    else:
        initial = initial_summary_tr(
            corpus, min_words=config.min_initial_words, store=store
        )
    if config.suggester == "FREQ":
        suggestions = suggest_freq(corpus, SUGGESTION_COUNT)
    else:
        suggestions = suggest_tr(corpus, SUGGESTION_COUNT)
    embeddings = {
        s.key: sentence_embedding(s, store)[0] for s in corpus.sentences()
    }
    now = time.time()
    return SessionState(
        session_id=session_id or uuid.uuid4().hex,
        config=config,
        topic_id=corpus.topic_id,
        initial=initial,
        used=set(initial.sentence_keys),
        suggestions=suggestions,
        created_at=now,
        last_active=now,
        corpus=corpus,
        store=store,
        embeddings=embeddings,
    )


def _unused_sentences(state: SessionState) -> list[Sentence]:
    return [s for s in state.corpus.sentences() if s.key not in state.used]


def respond_sem(state: SessionState, query: str) -> tuple[list[Sentence], bool, bool]:
    """Cosine ranking with a greedy within-response MMR dissimilarity gate.

    Returns (sentences, exhausted, degenerate_query).
    """
    if not query.strip():
        raise ArgumentError("query must be nonempty")
    unused = _unused_sentences(state)
    if not unused:
        return [], True, False
    qvec, degenerate = embed_tokens(tokenize(query), state.store)
    ranked = sorted(
        unused,
        key=lambda s: (-cosine(qvec, state.embeddings[s.key]), s.key),
    )
    accepted: list[Sentence] = []
    for cand in ranked:
        if len(accepted) >= state.config.response_sentences:
            break
        cand_vec = state.embeddings[cand.key]
        dissim_ok = all(
            1.0 - cosine(cand_vec, state.embeddings[a.key]) > state.config.mmr_dissim
            for a in accepted
        )
        if dissim_ok:
            accepted.append(cand)
    state.used.update(s.key for s in accepted)
    return accepted, False, degenerate


def lex_similarity(
    query_tokens: list[str],
    query_vec: np.ndarray,
    sentence: Sentence,
    sentence_vec: np.ndarray,
) -> float:
    """(cos+1) * (R1p+1) * (R2p+1) * (RLp+1) with the query as candidate."""
    sent_tokens = list(sentence.tokens)
    factors = cosine(query_vec, sentence_vec) + 1.0
    for variant in (rougekit.R1, rougekit.R2, rougekit.RL):
        score = rougekit.rouge(query_tokens, [sent_tokens], variant, stem=False)
        factors *= score.precision + 1.0
    return factors


def respond_lex(state: SessionState, query: str) -> tuple[list[Sentence], bool, bool]:
    """Rank unused sentences by the combined embedding/lexical product score."""
    if not query.strip():
        raise ArgumentError("query must be nonempty")
    unused = _unused_sentences(state)
    if not unused:
        return [], True, False
    qtokens = tokenize(query)
    qvec, degenerate = embed_tokens(qtokens, state.store)
    scored = sorted(
        unused,
        key=lambda s: (
            -lex_similarity(qtokens, qvec, s, state.embeddings[s.key]),
            s.key,
        ),
    )
    accepted = scored[: state.config.response_sentences]
    state.used.update(s.key for s in accepted)
    return accepted, False, degenerate


def respond(state: SessionState, query: str, query_type: str) -> Interaction:
    """Dispatch a query, append and return the resulting interaction.

    Highlight and suggested queries behave like free text; repeat reissues
    the previous query (new sentences arise because the used set grew).
    """
    if query_type not in QUERY_TYPES:
        raise ArgumentError(f"unknown query_type {query_type!r}")
    if query_type == "repeat":
        if not state.interactions:
            raise StateError("repeat requires a previous interaction")
        query = state.interactions[-1].query_text
    if not query or not query.strip():
        raise ArgumentError("query must be nonempty")

    start = time.perf_counter()
    if state.config.responder == "SEM":
        sentences, exhausted, degenerate = respond_sem(state, query)
    else:
        sentences, exhausted, degenerate = respond_lex(state, query)
    latency_ms = int((time.perf_counter() - start) * 1000)

    interaction = Interaction(
        query_text=query,
        query_type=query_type,
        response_sentences=sentences,
        response_word_count=sum(s.word_count for s in sentences),
        latency_ms=latency_ms,
        timestamp_ms=int(time.time() * 1000),
        exhausted=exhausted,
        degenerate_query=degenerate,
    )
    state.interactions.append(interaction)
    state.last_active = time.time()
    return interaction


def levenshtein(a: str, b: str) -> int:
    """Edit distance; used to drop near-duplicate suggested queries."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(
                min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb))
            )
        prev = cur
    return prev[-1]


def suggest_freq(corpus: TopicCorpus, top_n: int = SUGGESTION_COUNT) -> list[str]:
    """Most frequent stopword-free bigrams/trigrams.

    Ties rank trigrams above bigrams (a trigram is preferred over a
    contained equally-frequent bigram); candidates within Levenshtein
    distance < 2 of an already-emitted phrase are skipped.
    """
    stops = stopwords()
    counts: dict[str, int] = {}
    arity: dict[str, int] = {}
    for sent in corpus.sentences():
        seq = [t for t in sent.tokens if t not in stops]
        for n in (2, 3):
            for i in range(len(seq) - n + 1):
                phrase = " ".join(seq[i : i + n])
                counts[phrase] = counts.get(phrase, 0) + 1
                arity[phrase] = n
    ranked = sorted(counts, key=lambda p: (-counts[p], -arity[p], p))
    chosen: list[str] = []
    for phrase in ranked:
        if len(chosen) >= top_n:
            break
        if any(levenshtein(phrase, done) < 2 for done in chosen):
            continue
        chosen.append(phrase)
    return chosen


def suggest_tr(corpus: TopicCorpus, top_n: int = SUGGESTION_COUNT) -> list[str]:
    """Top TextRank phrases."""
    return textrank_phrases(corpus, top_n)
