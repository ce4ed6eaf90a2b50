"""Self-contained ROUGE scorer: R1, R2, RL and RSU (skip-bigram + unigram).

Single candidate against one or more references; multi-reference scores are
the arithmetic mean of the per-reference precision/recall/F1 triples.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ArgumentError
from ..textproc import tokenize
from . import kernels
from .porter import stem as porter_stem

KINDS = ("R1", "R2", "RL", "RSU")


@dataclass(frozen=True)
class RougeVariant:
    kind: str
    su_skip_distance: int = 4
    include_unigrams_in_su: bool = True

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ArgumentError(f"unknown ROUGE kind {self.kind!r}")
        if self.su_skip_distance < 1:
            raise ArgumentError("su_skip_distance must be >= 1")

    @classmethod
    def parse(cls, name: str) -> "RougeVariant":
        """Accepts forms like 'r1', 'R2', 'rouge-l', 'rsu', 'su4'."""
        key = name.lower().replace("rouge-", "").replace("rouge", "").strip("-_ ")
        aliases = {"1": "R1", "2": "R2", "l": "RL", "su": "RSU", "su4": "RSU",
                   "r1": "R1", "r2": "R2", "rl": "RL", "rsu": "RSU"}
        if key not in aliases:
            raise ArgumentError(f"unknown ROUGE variant {name!r}")
        return cls(aliases[key])


R1 = RougeVariant("R1")
R2 = RougeVariant("R2")
RL = RougeVariant("RL")
RSU = RougeVariant("RSU")


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, match: int, total_cand: int, total_ref: int) -> "RougeScore":
        p = match / total_cand if total_cand else 0.0
        r = match / total_ref if total_ref else 0.0
        f = 2 * p * r / (p + r) if p + r > 0 else 0.0
        return cls(p, r, f)


def _ids(tokens: list[str], vocab: dict[str, int]) -> list[int]:
    return [vocab.setdefault(t, len(vocab)) for t in tokens]


def _score_pair(cand: list[int], ref: list[int], variant: RougeVariant) -> RougeScore:
    if variant.kind == "R1":
        return RougeScore.from_counts(*kernels.ngram_overlap(cand, ref, 1))
    if variant.kind == "R2":
        return RougeScore.from_counts(*kernels.ngram_overlap(cand, ref, 2))
    if variant.kind == "RL":
        lcs = kernels.lcs_length(cand, ref)
        return RougeScore.from_counts(lcs, len(cand), len(ref))
    match, tc, tr = kernels.skip_overlap(cand, ref, variant.su_skip_distance)
    if variant.include_unigrams_in_su:
        m1, t1c, t1r = kernels.ngram_overlap(cand, ref, 1)
        match, tc, tr = match + m1, tc + t1c, tr + t1r
    return RougeScore.from_counts(match, tc, tr)


def rouge(
    candidate: list[str],
    references: list[list[str]],
    variant: RougeVariant,
    stem: bool = True,
) -> RougeScore:
    """Score a tokenized candidate against tokenized references.

    Porter stemming is applied to both sides when ``stem`` is set. An empty
    candidate scores zero everywhere; empty references are an error.
    """
    if not references:
        raise ArgumentError("references must be nonempty")
    if stem:
        candidate = [porter_stem(t) for t in candidate]
        references = [[porter_stem(t) for t in ref] for ref in references]
    vocab: dict[str, int] = {}
    cand_ids = _ids(candidate, vocab)
    scores = [
        _score_pair(cand_ids, _ids(ref, vocab), variant) for ref in references
    ]
    k = len(scores)
    return RougeScore(
        sum(s.precision for s in scores) / k,
        sum(s.recall for s in scores) / k,
        sum(s.f1 for s in scores) / k,
    )


def rouge_text(
    candidate: str,
    references: list[str],
    variant: RougeVariant,
    stem: bool = True,
) -> RougeScore:
    """Tokenize (stopwords retained) and score raw strings."""
    return rouge(
        tokenize(candidate), [tokenize(r) for r in references], variant, stem=stem
    )
