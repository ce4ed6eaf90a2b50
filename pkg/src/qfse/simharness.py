"""Scripted sessions that bracket human exploration quality.

The lower-bound script replays the system's own suggested queries; the
upper-bound script replays a seeded sample of content units drawn from the
reference summaries. Both produce ordinary session logs with synthetic
timestamps so repeated runs are byte-identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .engine import (
    SUGGESTION_COUNT,
    SystemConfig,
    respond,
    start_session,
    suggest_freq,
    suggest_tr,
)
from .errors import ArgumentError
from .evalkit import InteractionRecord, RatingRecord, SessionRecord
from .textproc import EmbeddingStore, TopicCorpus

SOURCE_SIMULATED = "simulated"
LABEL_SUG = "sug"
LABEL_ORACLE = "oracle"


@dataclass(frozen=True)
class QueryScript:
    """An ordered list of queries to replay, plus how they should be typed."""

    label: str
    queries: tuple[str, ...]
    seed: int = 0
    short: bool = False

    def __post_init__(self) -> None:
        if not self.queries:
            raise ArgumentError("query script must contain at least one query")

    @property
    def query_type(self) -> str:
        return "suggested" if self.label == LABEL_SUG else "free_text"


def build_lsug(corpus: TopicCorpus, config: SystemConfig) -> QueryScript:
    """Lower bound: the system's own top suggestions, in rank order."""
    if config.suggester == "FREQ":
        queries = suggest_freq(corpus, SUGGESTION_COUNT)
    else:
        queries = suggest_tr(corpus, SUGGESTION_COUNT)
    if not queries:
        raise ArgumentError(f"no suggested queries available for {corpus.topic_id}")
    return QueryScript(label=LABEL_SUG, queries=tuple(queries), seed=0)


def build_oracle(corpus: TopicCorpus, seed: int = 0) -> QueryScript:
    """Upper bound: a seeded uniform sample (without replacement) of up to
    ten reference content units; fewer than ten marks the script short."""
    scus = list(corpus.scus or ())
    if not scus:
        raise ArgumentError(f"topic {corpus.topic_id} has no content units")
    take = min(SUGGESTION_COUNT, len(scus))
    sample = random.Random(seed).sample(scus, take)
    return QueryScript(
        label=LABEL_ORACLE,
        queries=tuple(sample),
        seed=seed,
        short=take < SUGGESTION_COUNT,
    )


def run_simulation(
    corpus: TopicCorpus,
    config: SystemConfig,
    script: QueryScript,
    store: EmbeddingStore,
    user_id: str | None = None,
) -> SessionRecord:
    """Replay the script against a fresh session and log it.

    Timestamps are synthetic (interaction i at i*1000 ms) and latency is
    zeroed so identical inputs give identical log bytes.
    """
    state = start_session(corpus, config, store)
    interactions: list[InteractionRecord] = []
    for i, query in enumerate(script.queries, start=1):
        result = respond(state, query, script.query_type)
        interactions.append(
            InteractionRecord(
                query_text=result.query_text,
                query_type=result.query_type,
                response_text=result.response_text,
                response_word_count=result.response_word_count,
                rating=None,
                timestamp_ms=i * 1000,
                latency_ms=0,
            )
        )
    return SessionRecord(
        system_id=config.system_id,
        topic_id=corpus.topic_id,
        user_id=user_id or f"sim_{script.label}",
        source=SOURCE_SIMULATED,
        initial_text=state.initial.text,
        interactions=interactions,
        ratings=RatingRecord(),
    )
