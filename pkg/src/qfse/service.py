"""HTTP session backend for interactive summary expansion.

Serves the JSON API the browser client consumes: session creation with the
initial summary and suggested queries, query answering, star ratings, the
end-of-session questionnaire behind a minimum-exploration-time gate, and
session-log retrieval. Corpora and embeddings load once at startup and are
shared read-only; each session's state is guarded by its own lock.
"""

from __future__ import annotations

import json
import math
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .engine import (
    SYSTEM_S1,
    SYSTEM_S2,
    SessionState,
    SystemConfig,
    respond,
    start_session,
)
from .errors import ArgumentError, IngestError, StateError
from .evalkit import (
    RATING_MAX,
    RATING_MIN,
    InteractionRecord,
    RatingRecord,
    SessionRecord,
)
from .textproc import EmbeddingStore, TopicCorpus, load_embeddings, load_topic

R1_PROMPT = "How useful is this for the journalist's generic overview of the topic?"
R2_PROMPT = (
    "How much useful info does this add to the journalist's overview "
    "(regardless of how well it matched your query)?"
)
R3_PROMPT = (
    "During the interactive stage, how well did the responses respond to "
    "your queries?"
)
R4_PREAMBLE = "As a system for exploring information on a topic,"
R4A_PROMPT = (
    "its capabilities meet the need to efficiently collect useful "
    "information for a journalistic overview."
)
R4B_PROMPT = "it is easy to use."
BANNER = (
    "Produce an informative summary draft text which a journalist could "
    "use to best produce an overview of the topic."
)

PRESET_SYSTEMS = {"S1": SYSTEM_S1, "S2": SYSTEM_S2}


@dataclass(frozen=True)
class ServiceConfig:
    corpus_root: Path
    embedding_path: Path
    log_dir: Path
    systems: dict[str, SystemConfig]
    host: str = "127.0.0.1"
    port: int = 8000
    min_explore_seconds: int = 150
    session_idle_timeout: float = 3600.0
    static_dir: Path | None = None

    def __post_init__(self) -> None:
        if not self.systems:
            raise ArgumentError("service config needs at least one system")
        if self.min_explore_seconds < 0:
            raise ArgumentError("min_explore_seconds must be >= 0")
        if self.session_idle_timeout <= 0:
            raise ArgumentError("session_idle_timeout must be positive")


def _parse_system(system_id: str, value: object) -> SystemConfig:
    if isinstance(value, str):
        preset = PRESET_SYSTEMS.get(value.upper())
        if preset is None:
            raise ArgumentError(f"unknown preset system {value!r}")
        if preset.system_id != system_id:
            return SystemConfig(**{**preset.to_dict(), "system_id": system_id})
        return preset
    if isinstance(value, dict):
        data = dict(value)
        data.setdefault("system_id", system_id)
        return SystemConfig.from_dict(data)
    raise ArgumentError(f"system {system_id!r} must be a preset name or object")


def load_service_config(path: str | Path) -> ServiceConfig:
    """Parse a JSON config file; relative paths resolve against its folder."""
    cfg_path = Path(path)
    try:
        data = json.loads(cfg_path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ArgumentError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ArgumentError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ArgumentError("config must be a JSON object")
    base = cfg_path.parent

    def resolve(key: str, default: str | None = None) -> Path:
        raw = data.get(key, default)
        if raw is None:
            raise ArgumentError(f"config missing required path {key!r}")
        p = Path(raw)
        return p if p.is_absolute() else base / p

    systems_raw = data.get("systems") or {"S1": "S1", "S2": "S2"}
    systems = {
        sid: _parse_system(sid, value) for sid, value in systems_raw.items()
    }
    static_raw = data.get("static_dir")
    return ServiceConfig(
        corpus_root=resolve("corpus_root"),
        embedding_path=resolve("embeddings"),
        log_dir=resolve("log_dir", "logs"),
        systems=systems,
        host=data.get("host", "127.0.0.1"),
        port=int(data.get("port", 8000)),
        min_explore_seconds=int(data.get("min_explore_seconds", 150)),
        session_idle_timeout=float(data.get("session_idle_timeout", 3600.0)),
        static_dir=(
            (Path(static_raw) if Path(static_raw).is_absolute() else base / static_raw)
            if static_raw
            else None
        ),
    )


def load_topics(corpus_root: str | Path) -> dict[str, TopicCorpus]:
    root = Path(corpus_root)
    if not root.is_dir():
        raise IngestError(f"corpus root is not a directory: {root}")
    corpora: dict[str, TopicCorpus] = {}
    entries = sorted(root.iterdir())
    for entry in entries:
        if entry.is_dir() or entry.suffix == ".json":
            corpus = load_topic(entry)
            corpora[corpus.topic_id] = corpus
    if not corpora:
        raise IngestError(f"no topics found under {root}")
    return corpora


@dataclass
class _LiveSession:
    state: SessionState
    user_id: str
    started_mono: float
    last_mono: float
    lock: threading.Lock = field(default_factory=threading.Lock)
    finished: bool = False
    expired: bool = False
    r1: int | None = None
    r3: int | None = None
    r4a: int | None = None
    r4b: int | None = None
    log_path: str | None = None


class ServiceRuntime:
    """Shared server state: config, loaded corpora/embeddings, sessions."""

    def __init__(
        self,
        config: ServiceConfig,
        topics: dict[str, TopicCorpus] | None = None,
        store: EmbeddingStore | None = None,
    ) -> None:
        self.config = config
        self.topics = topics if topics is not None else load_topics(config.corpus_root)
        self.store = (
            store if store is not None else load_embeddings(config.embedding_path)
        )
        self.sessions: dict[str, _LiveSession] = {}
        self.active_triples: dict[tuple[str, str, str], str] = {}
        self.registry_lock = threading.Lock()

    def session_record(self, live: _LiveSession) -> SessionRecord:
        state = live.state
        interactions = [
            InteractionRecord(
                query_text=i.query_text,
                query_type=i.query_type,
                response_text=i.response_text,
                response_word_count=i.response_word_count,
                rating=i.rating,
                timestamp_ms=i.timestamp_ms,
                latency_ms=i.latency_ms,
            )
            for i in state.interactions
        ]
        return SessionRecord(
            system_id=state.config.system_id,
            topic_id=state.topic_id,
            user_id=live.user_id,
            source="human",
            initial_text=state.initial.text,
            interactions=interactions,
            ratings=RatingRecord(
                r1=live.r1,
                r2=[i.rating for i in state.interactions],
                r3=live.r3,
                r4a=live.r4a,
                r4b=live.r4b,
            ),
        )


class CreateSessionBody(BaseModel):
    system_id: str
    topic_id: str
    user_id: str


class QueryBody(BaseModel):
    query_text: str = ""
    query_type: Literal["free_text", "highlight", "suggested", "repeat"]


class RatingBody(BaseModel):
    target: Literal["initial", "response"]
    score: int
    response_index: int | None = None


class FinishBody(BaseModel):
    r3: int | None = None
    r4a: int | None = None
    r4b: int | None = None


def _check_score(score: int | None) -> None:
    if score is not None and not RATING_MIN <= score <= RATING_MAX:
        raise HTTPException(
            status_code=422,
            detail=f"score must be in [{RATING_MIN}, {RATING_MAX}]",
        )


def create_app(runtime: ServiceRuntime) -> FastAPI:
    app = FastAPI(title="qfse session service")
    config = runtime.config

    def get_session(session_id: str) -> _LiveSession:
        live = runtime.sessions.get(session_id)
        if live is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return live

    def get_live_session(session_id: str) -> _LiveSession:
        live = get_session(session_id)
        if live.finished or live.expired:
            raise HTTPException(status_code=410, detail="session is closed")
        if time.monotonic() - live.last_mono > config.session_idle_timeout:
            _close(live, expired=True)
            raise HTTPException(status_code=410, detail="session expired")
        return live

    def _close(live: _LiveSession, expired: bool = False) -> None:
        if expired:
            live.expired = True
        else:
            live.finished = True
        triple = (live.user_id, live.state.topic_id, live.state.config.system_id)
        with runtime.registry_lock:
            if runtime.active_triples.get(triple) == live.state.session_id:
                del runtime.active_triples[triple]

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/topics")
    def topics() -> dict:
        return {"topics": sorted(runtime.topics)}

    @app.get("/config")
    def ui_config() -> dict:
        return {
            "banner": BANNER,
            "min_explore_seconds": config.min_explore_seconds,
            "prompts": {
                "r1": R1_PROMPT,
                "r2": R2_PROMPT,
                "r3": R3_PROMPT,
                "r4_preamble": R4_PREAMBLE,
                "r4a": R4A_PROMPT,
                "r4b": R4B_PROMPT,
            },
            "systems": sorted(config.systems),
        }

    @app.post("/sessions")
    def create_session(body: CreateSessionBody) -> dict:
        system = config.systems.get(body.system_id)
        if system is None:
            raise HTTPException(status_code=404, detail="unknown system")
        corpus = runtime.topics.get(body.topic_id)
        if corpus is None:
            raise HTTPException(status_code=404, detail="unknown topic")
        triple = (body.user_id, body.topic_id, body.system_id)
        with runtime.registry_lock:
            existing_id = runtime.active_triples.get(triple)
            if existing_id is not None:
                existing = runtime.sessions.get(existing_id)
                if (
                    existing is not None
                    and not existing.finished
                    and not existing.expired
                    and time.monotonic() - existing.last_mono
                    <= config.session_idle_timeout
                ):
                    raise HTTPException(
                        status_code=409,
                        detail="an active session already exists for this "
                        "user, topic, and system",
                    )
        try:
            state = start_session(corpus, system, runtime.store)
        except ArgumentError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        now = time.monotonic()
        live = _LiveSession(
            state=state, user_id=body.user_id, started_mono=now, last_mono=now
        )
        with runtime.registry_lock:
            runtime.sessions[state.session_id] = live
            runtime.active_triples[triple] = state.session_id
        return {
            "session_id": state.session_id,
            "system_id": body.system_id,
            "topic_id": body.topic_id,
            "initial_text": state.initial.text,
            "initial_word_count": state.initial.word_count,
            "r1_prompt": R1_PROMPT,
            "suggestions": state.suggestions,
            "min_explore_seconds": config.min_explore_seconds,
        }

    @app.post("/sessions/{session_id}/query")
    def query(session_id: str, body: QueryBody) -> dict:
        live = get_live_session(session_id)
        with live.lock:
            try:
                interaction = respond(live.state, body.query_text, body.query_type)
            except (ArgumentError, StateError) as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from exc
            live.last_mono = time.monotonic()
            return {
                "interaction_index": len(live.state.interactions) - 1,
                "query_text": interaction.query_text,
                "response_text": interaction.response_text,
                "response_word_count": interaction.response_word_count,
                "sentences": [
                    {"doc_id": s.doc_id, "index": s.index, "text": s.text}
                    for s in interaction.response_sentences
                ],
                "exhausted": interaction.exhausted,
                "latency_ms": interaction.latency_ms,
                "r2_prompt": R2_PROMPT,
            }

    @app.post("/sessions/{session_id}/rating")
    def rate(session_id: str, body: RatingBody) -> dict:
        live = get_live_session(session_id)
        _check_score(body.score)
        with live.lock:
            if body.target == "initial":
                live.r1 = body.score
            else:
                interactions = live.state.interactions
                index = (
                    body.response_index
                    if body.response_index is not None
                    else len(interactions) - 1
                )
                if not 0 <= index < len(interactions):
                    raise HTTPException(
                        status_code=404, detail="no response at that index"
                    )
                interactions[index].rating = body.score
            live.last_mono = time.monotonic()
        return {"ok": True}

    @app.post("/sessions/{session_id}/finish")
    def finish(session_id: str, body: FinishBody) -> dict:
        live = get_live_session(session_id)
        for score in (body.r3, body.r4a, body.r4b):
            _check_score(score)
        with live.lock:
            elapsed = time.monotonic() - live.started_mono
            if elapsed < config.min_explore_seconds:
                remaining = math.ceil(config.min_explore_seconds - elapsed)
                return {
                    "accepted": False,
                    "rejected": "min_time_not_met",
                    "remaining_seconds": remaining,
                }
            live.r3, live.r4a, live.r4b = body.r3, body.r4a, body.r4b
            record = runtime.session_record(live)
            config.log_dir.mkdir(parents=True, exist_ok=True)
            log_path = config.log_dir / f"{session_id}.json"
            log_path.write_text(record.to_json(), encoding="utf-8")
            live.log_path = str(log_path)
            _close(live)
        return {"accepted": True, "log_path": str(log_path)}

    @app.get("/sessions/{session_id}/log")
    def session_log(session_id: str) -> dict:
        live = get_session(session_id)
        with live.lock:
            return runtime.session_record(live).to_dict()

    if config.static_dir is not None and Path(config.static_dir).is_dir():
        app.mount(
            "/", StaticFiles(directory=str(config.static_dir), html=True), name="ui"
        )
    return app


def create_app_from_config(path: str | Path) -> FastAPI:
    return create_app(ServiceRuntime(load_service_config(path)))
