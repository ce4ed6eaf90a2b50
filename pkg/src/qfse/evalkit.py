"""Session-log evaluation: recall-by-length curves and their summaries.

A session log is replayed into cumulative summary snapshots; each snapshot
is scored against the reference summaries, which yields a monotone-length
curve. Curves are summarized by trapezoid AUC over a shared length range,
score-at-length, length-at-score, and macro (topic-then-overall) averages
with percentile-bootstrap confidence intervals. Questionnaire ratings are
aggregated the same macro way, including the two-item usability composite.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import rouge as rougekit
from .errors import ArgumentError, FormatError

RATING_MIN = 1
RATING_MAX = 5
DEFAULT_CURVE_STEP = 10.0
DEFAULT_BOOTSTRAP_ITERS = 10000
DEFAULT_BOOTSTRAP_LEVEL = 0.95


@dataclass
class InteractionRecord:
    query_text: str
    query_type: str
    response_text: str
    response_word_count: int
    rating: int | None = None
    timestamp_ms: int = 0
    latency_ms: int = 0

    def to_dict(self) -> dict:
        return {
            "query_text": self.query_text,
            "query_type": self.query_type,
            "response_text": self.response_text,
            "response_word_count": self.response_word_count,
            "rating": self.rating,
            "timestamp_ms": self.timestamp_ms,
            "latency_ms": self.latency_ms,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "InteractionRecord":
        return cls(
            query_text=data["query_text"],
            query_type=data["query_type"],
            response_text=data["response_text"],
            response_word_count=data["response_word_count"],
            rating=data.get("rating"),
            timestamp_ms=data.get("timestamp_ms", 0),
            latency_ms=data.get("latency_ms", 0),
        )


@dataclass
class RatingRecord:
    """Questionnaire scores: initial quality, per-response list, overall
    quality, and the two usability items."""

    r1: int | None = None
    r2: list[int | None] = field(default_factory=list)
    r3: int | None = None
    r4a: int | None = None
    r4b: int | None = None

    def to_dict(self) -> dict:
        return {
            "r1": self.r1,
            "r2": list(self.r2),
            "r3": self.r3,
            "r4a": self.r4a,
            "r4b": self.r4b,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RatingRecord":
        return cls(
            r1=data.get("r1"),
            r2=list(data.get("r2") or []),
            r3=data.get("r3"),
            r4a=data.get("r4a"),
            r4b=data.get("r4b"),
        )


@dataclass
class SessionRecord:
    system_id: str
    topic_id: str
    user_id: str
    source: str
    initial_text: str
    interactions: list[InteractionRecord] = field(default_factory=list)
    ratings: RatingRecord = field(default_factory=RatingRecord)

    def to_dict(self) -> dict:
        return {
            "system_id": self.system_id,
            "topic_id": self.topic_id,
            "user_id": self.user_id,
            "source": self.source,
            "initial_text": self.initial_text,
            "interactions": [i.to_dict() for i in self.interactions],
            "ratings": self.ratings.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SessionRecord":
        try:
            return cls(
                system_id=data["system_id"],
                topic_id=data["topic_id"],
                user_id=data["user_id"],
                source=data["source"],
                initial_text=data["initial_text"],
                interactions=[
                    InteractionRecord.from_dict(i)
                    for i in data.get("interactions", [])
                ],
                ratings=RatingRecord.from_dict(data.get("ratings") or {}),
            )
        except KeyError as exc:
            raise FormatError(f"session log missing field {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SessionRecord":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"session log is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise FormatError("session log must be a JSON object")
        return cls.from_dict(data)


def save_session_log(record: SessionRecord, path: str | Path) -> None:
    Path(path).write_text(record.to_json(), encoding="utf-8")


def load_session_log(path: str | Path) -> SessionRecord:
    return SessionRecord.from_json(Path(path).read_text(encoding="utf-8"))


def load_session_logs(directory: str | Path) -> list[SessionRecord]:
    """All *.json logs in a directory, sorted by filename."""
    root = Path(directory)
    if not root.is_dir():
        raise ArgumentError(f"not a directory: {root}")
    return [load_session_log(p) for p in sorted(root.glob("*.json"))]


def word_count_text(text: str) -> int:
    return len(text.split())


def snapshots(record: SessionRecord) -> list[tuple[int, str]]:
    """Cumulative (word_count, text) per prefix: initial, then +response_i.

    Lengths are additive, so x strictly increases only when the response is
    nonempty; empty responses repeat the previous length.
    """
    text = record.initial_text
    length = word_count_text(text)
    out = [(length, text)]
    for inter in record.interactions:
        if inter.response_text:
            text = text + " " + inter.response_text if text else inter.response_text
        length += word_count_text(inter.response_text)
        out.append((length, text))
    return out


@dataclass(frozen=True)
class RecallCurve:
    """Piecewise-linear score-by-length curve; x strictly increasing."""

    points: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise ArgumentError("curve needs at least one point")
        xs = [p[0] for p in self.points]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ArgumentError("curve lengths must be strictly increasing")

    @property
    def xs(self) -> list[float]:
        return [p[0] for p in self.points]

    @property
    def ys(self) -> list[float]:
        return [p[1] for p in self.points]


def recall_curve(
    record: SessionRecord,
    references: Sequence[str],
    variant: rougekit.RougeVariant = rougekit.R1,
    mode: str = "recall",
    stem: bool = True,
) -> RecallCurve:
    """Score every snapshot against the references.

    Snapshots that do not grow the summary (empty responses) collapse onto
    one point, keeping lengths strictly increasing.
    """
    if mode not in ("recall", "f1"):
        raise ArgumentError(f"unknown curve mode {mode!r}")
    if not references:
        raise ArgumentError("at least one reference is required")
    points: list[tuple[float, float]] = []
    for length, text in snapshots(record):
        score = rougekit.rouge_text(text, list(references), variant, stem=stem)
        y = score.recall if mode == "recall" else score.f1
        if points and points[-1][0] == float(length):
            points[-1] = (float(length), y)
        else:
            points.append((float(length), y))
    return RecallCurve(tuple(points))


def interpolate(curve: RecallCurve, x: float) -> float:
    """Linear between knots, clamped to the end values outside the range."""
    pts = curve.points
    if x <= pts[0][0]:
        return pts[0][1]
    if x >= pts[-1][0]:
        return pts[-1][1]
    xs = curve.xs
    hi = bisect_right(xs, x)
    x0, y0 = pts[hi - 1]
    x1, y1 = pts[hi]
    if x == x0:
        return y0
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def auc(curve: RecallCurve, lo: float, hi: float) -> float:
    """Trapezoid area of the clamped piecewise-linear curve over [lo, hi]."""
    if lo >= hi:
        raise ArgumentError("auc bounds must satisfy lo < hi")
    knots = [lo] + [x for x in curve.xs if lo < x < hi] + [hi]
    total = 0.0
    for a, b in zip(knots, knots[1:]):
        total += (interpolate(curve, a) + interpolate(curve, b)) * (b - a) / 2.0
    return total


def score_at_length(curve: RecallCurve, length: float) -> float:
    return interpolate(curve, length)


def length_at_score(curve: RecallCurve, target: float) -> float | None:
    """Smallest length whose interpolated score reaches target, else None."""
    pts = curve.points
    if pts[0][1] >= target:
        return pts[0][0]
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if y1 >= target > y0:
            if y1 == y0:
                return x1
            return x0 + (target - y0) * (x1 - x0) / (y1 - y0)
    return None


def average_curve(
    curves: Sequence[RecallCurve],
    lo: float | None = None,
    hi: float | None = None,
    step: float = DEFAULT_CURVE_STEP,
) -> RecallCurve:
    """Pointwise mean over a shared grid.

    Default bounds are the intersection of the curves' length ranges, so no
    curve is extrapolated beyond where its session actually ended.
    """
    if not curves:
        raise ArgumentError("average_curve needs at least one curve")
    if step <= 0:
        raise ArgumentError("step must be positive")
    if lo is None:
        lo = max(c.points[0][0] for c in curves)
    if hi is None:
        hi = min(c.points[-1][0] for c in curves)
    if lo > hi:
        raise ArgumentError("curve length ranges do not intersect")
    grid: list[float] = []
    x = lo
    while x < hi or math.isclose(x, hi):
        grid.append(x)
        x += step
    if not math.isclose(grid[-1], hi):
        grid.append(hi)
    points = tuple(
        (g, float(np.mean([interpolate(c, g) for c in curves]))) for g in grid
    )
    return RecallCurve(points)


def aggregate(values: Iterable[tuple[str, float]]) -> float:
    """Macro mean: average within each topic, then across topics."""
    by_topic: dict[str, list[float]] = {}
    for topic, value in values:
        by_topic.setdefault(topic, []).append(value)
    if not by_topic:
        raise ArgumentError("aggregate needs at least one value")
    topic_means = [float(np.mean(vals)) for vals in by_topic.values()]
    return float(np.mean(topic_means))


def umux_lite(a: float, b: float) -> float:
    """Two-item usability composite on the 0..100 scale:
    0.65 * ((a + b - 2) * (100 / 8)) + 22.9."""
    for v in (a, b):
        if not RATING_MIN <= v <= RATING_MAX:
            raise ArgumentError("usability items must be in [1, 5]")
    return 0.65 * ((a + b - 2) * (100.0 / 8.0)) + 22.9


@dataclass(frozen=True)
class RatingSummary:
    mean: float | None
    std: float | None
    n: int
    missing: int


def _macro_mean(pairs: list[tuple[str, float]]) -> float | None:
    if not pairs:
        return None
    return aggregate(pairs)


def aggregate_ratings(records: Sequence[SessionRecord]) -> dict[str, RatingSummary]:
    """Per-metric macro mean, plain std over sessions, and missing counts.

    The per-response metric uses each session's mean response rating; the
    usability composite needs both items present.
    """

    def session_value(rec: SessionRecord, metric: str) -> float | None:
        r = rec.ratings
        if metric == "r1":
            return None if r.r1 is None else float(r.r1)
        if metric == "r2":
            vals = [v for v in r.r2 if v is not None]
            return float(np.mean(vals)) if vals else None
        if metric == "r3":
            return None if r.r3 is None else float(r.r3)
        if metric == "r4a":
            return None if r.r4a is None else float(r.r4a)
        if metric == "r4b":
            return None if r.r4b is None else float(r.r4b)
        if metric == "umux_lite":
            if r.r4a is None or r.r4b is None:
                return None
            return umux_lite(r.r4a, r.r4b)
        raise ArgumentError(f"unknown metric {metric!r}")

    out: dict[str, RatingSummary] = {}
    for metric in ("r1", "r2", "r3", "r4a", "r4b", "umux_lite"):
        pairs: list[tuple[str, float]] = []
        missing = 0
        for rec in records:
            value = session_value(rec, metric)
            if value is None:
                missing += 1
            else:
                pairs.append((rec.topic_id, value))
        vals = [v for _, v in pairs]
        out[metric] = RatingSummary(
            mean=_macro_mean(pairs),
            std=float(np.std(vals)) if vals else None,
            n=len(vals),
            missing=missing,
        )
    return out


def pearson_r(xs: Sequence[float], ys: Sequence[float]) -> float | None:
    """Sample correlation; None when either side has zero variance."""
    if len(xs) != len(ys):
        raise ArgumentError("paired samples must have equal length")
    if len(xs) < 2:
        raise ArgumentError("correlation needs at least two pairs")
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    xd = x - x.mean()
    yd = y - y.mean()
    denom = math.sqrt(float(xd @ xd)) * math.sqrt(float(yd @ yd))
    if denom == 0.0:
        return None
    return float(xd @ yd) / denom


def response_rating_gain_pairs(
    record: SessionRecord,
    references: Sequence[str],
    variant: rougekit.RougeVariant = rougekit.R1,
    stem: bool = True,
) -> list[tuple[float, float]]:
    """(rating, relative recall increase) per rated interaction.

    The gain for interaction i is (y_i - y_{i-1}) / y_{i-1} on the snapshot
    recall sequence; pairs with no rating or a zero prior recall are skipped.
    """
    ys: list[float] = []
    for _, text in snapshots(record):
        score = rougekit.rouge_text(text, list(references), variant, stem=stem)
        ys.append(score.recall)
    pairs: list[tuple[float, float]] = []
    for i, inter in enumerate(record.interactions, start=1):
        if inter.rating is None or ys[i - 1] == 0.0:
            continue
        pairs.append((float(inter.rating), (ys[i] - ys[i - 1]) / ys[i - 1]))
    return pairs


def bootstrap_ci(
    values: Sequence[float],
    level: float = DEFAULT_BOOTSTRAP_LEVEL,
    iters: int = DEFAULT_BOOTSTRAP_ITERS,
    seed: int = 0,
) -> tuple[float, float]:
    """Percentile bootstrap interval for the mean; seeded and reproducible."""
    if not values:
        raise ArgumentError("bootstrap needs at least one value")
    if not 0.0 < level < 1.0:
        raise ArgumentError("level must be in (0, 1)")
    if iters < 1:
        raise ArgumentError("iters must be >= 1")
    data = np.asarray(values, dtype=np.float64)
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, len(data), size=(iters, len(data)))
    means = data[idx].mean(axis=1)
    alpha = (1.0 - level) / 2.0
    lo, hi = np.quantile(means, [alpha, 1.0 - alpha])
    return float(lo), float(hi)


@dataclass(frozen=True)
class SessionStatsReport:
    sessions: int
    mean_interactions: float
    mean_explore_seconds: float
    query_type_pct: dict[str, float]
    mean_delta_auc_pct: float | None
    delta_auc_sessions: int


def session_stats(
    records: Sequence[SessionRecord],
    session_aucs: Sequence[float | None],
    lower_bound_auc: Mapping[tuple[str, str], float],
) -> SessionStatsReport:
    """Usage statistics table: counts, explore time, query-type mix, and the
    mean AUC gain over the matching (system, topic) simulated lower bound.

    Query-type shares are computed per session, then averaged over sessions
    that issued at least one query.
    """
    if len(records) != len(session_aucs):
        raise ArgumentError("records and session_aucs must align")
    if not records:
        raise ArgumentError("session_stats needs at least one record")
    n_interactions = [len(r.interactions) for r in records]
    explore: list[float] = []
    for rec in records:
        if rec.interactions:
            span = rec.interactions[-1].timestamp_ms - rec.interactions[0].timestamp_ms
            explore.append(span / 1000.0)
        else:
            explore.append(0.0)
    type_shares: dict[str, list[float]] = {t: [] for t in
                                           ("free_text", "highlight", "suggested", "repeat")}
    for rec in records:
        if not rec.interactions:
            continue
        total = len(rec.interactions)
        for qtype in type_shares:
            count = sum(1 for i in rec.interactions if i.query_type == qtype)
            type_shares[qtype].append(100.0 * count / total)
    deltas: list[float] = []
    for rec, value in zip(records, session_aucs):
        bound = lower_bound_auc.get((rec.system_id, rec.topic_id))
        if value is None or bound is None or bound == 0.0:
            continue
        deltas.append(100.0 * (value - bound) / bound)
    return SessionStatsReport(
        sessions=len(records),
        mean_interactions=float(np.mean(n_interactions)),
        mean_explore_seconds=float(np.mean(explore)),
        query_type_pct={
            t: (float(np.mean(v)) if v else 0.0) for t, v in type_shares.items()
        },
        mean_delta_auc_pct=float(np.mean(deltas)) if deltas else None,
        delta_auc_sessions=len(deltas),
    )


@dataclass(frozen=True)
class ExperimentSpec:
    """Evaluation-run settings: coverage floor, AUC bounds, report targets."""

    systems: int
    topics: int
    min_sessions: int = 1
    auc_lo: float | None = None
    auc_hi: float | None = None
    sal_lengths: tuple[float, ...] = (150.0, 250.0, 350.0)
    las_targets: tuple[tuple[str, float], ...] = ()
    curve_step: float = DEFAULT_CURVE_STEP
    bootstrap_iters: int = DEFAULT_BOOTSTRAP_ITERS
    bootstrap_level: float = DEFAULT_BOOTSTRAP_LEVEL
    seed: int = 0

    def __post_init__(self) -> None:
        if self.systems < 1 or self.topics < 1:
            raise ArgumentError("systems and topics must be >= 1")
        if self.min_sessions < 1:
            raise ArgumentError("min_sessions must be >= 1")
        if self.auc_lo is not None and self.auc_hi is not None:
            if self.auc_lo >= self.auc_hi:
                raise ArgumentError("auc bounds must satisfy lo < hi")
        if self.curve_step <= 0:
            raise ArgumentError("curve_step must be positive")

    def coverage_gaps(
        self, records: Sequence[SessionRecord]
    ) -> list[tuple[tuple[str, str], int]]:
        """(system, topic) cells observed fewer than min_sessions times."""
        counts: dict[tuple[str, str], int] = {}
        for rec in records:
            counts[(rec.system_id, rec.topic_id)] = (
                counts.get((rec.system_id, rec.topic_id), 0) + 1
            )
        return sorted(
            (cell, n) for cell, n in counts.items() if n < self.min_sessions
        )
