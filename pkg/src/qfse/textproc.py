"""Corpus ingestion and basic text processing.

Covers sentence segmentation, tokenization, the pinned stopword list, corpus
word frequencies, and loading/saving of plain-text word embedding files.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ArgumentError, FormatError, IngestError

# Punctuation stripped from token edges. Internal hyphens/apostrophes survive.
_EDGE_PUNCT = "!\"#$%&'()*+,./:;<=>?@[\\]^_`{|}~“”‘’«»—–…¿¡"

# Words that commonly precede a non-terminal period. Checked with internal
# dots removed, so "e.g." and "U.S." match "eg" and "us".
_ABBREVIATIONS = {
    "mr", "mrs", "ms", "dr", "prof", "rev", "hon", "st", "mt", "ft",
    "gen", "sen", "rep", "gov", "lt", "col", "sgt", "capt", "maj", "adm",
    "jr", "sr", "etc", "vs", "eg", "ie", "cf", "al", "inc", "corp", "co",
    "ltd", "dept", "univ", "est", "approx", "fig", "no", "vol", "pp",
    "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct",
    "nov", "dec", "mon", "tue", "wed", "thu", "fri", "sat", "sun",
    "us", "uk", "un", "dc", "phd", "am", "pm",
}

# Terminal punctuation run, optional closing quotes/brackets, then whitespace.
_BOUNDARY = re.compile(r"([.!?]+[\"'”’)\]]*)(\s+)")
_WORD_BEFORE = re.compile(r"([A-Za-z][A-Za-z.]*)$")
_SENTENCE_START = re.compile(r"[\"'“‘(\[]?[A-Z0-9]")


@lru_cache(maxsize=1)
def stopwords() -> frozenset[str]:
    """The pinned ~180-word English stopword list shipped with the package."""
    text = resources.files("qfse.data").joinpath("stopwords.txt").read_text("utf-8")
    words = [ln.strip() for ln in text.splitlines()]
    return frozenset(w for w in words if w and not w.startswith("#"))


def split_sentences(raw: str) -> list[str]:
    """Rule-based sentence segmentation.

    Splits on terminal punctuation followed by whitespace and an
    uppercase/digit/quote start, guarding a fixed abbreviation list. The
    concatenated output equals the input modulo whitespace.
    """
    if not raw or not raw.strip():
        return []
    sentences: list[str] = []
    start = 0
    for m in _BOUNDARY.finditer(raw):
        punct_start, seg_end = m.start(1), m.end(1)
        rest = raw[m.end() :]
        if not _SENTENCE_START.match(rest.lstrip()) and rest.strip():
            continue
        if raw[punct_start] == ".":
            before = _WORD_BEFORE.search(raw[start:punct_start])
            if before is not None:
                word = before.group(1).replace(".", "").lower()
                if word in _ABBREVIATIONS:
                    continue
        piece = raw[start:seg_end].strip()
        if piece:
            sentences.append(piece)
        start = seg_end
    tail = raw[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def tokenize(text: str, drop_stopwords: bool = False) -> list[str]:
    """Lowercase word tokens with edge punctuation stripped.

    Possessive "'s" is removed. With ``drop_stopwords``, tokens from the
    shipped stopword list are dropped.
    """
    stops = stopwords() if drop_stopwords else None
    tokens: list[str] = []
    for raw in text.lower().split():
        tok = raw.strip(_EDGE_PUNCT)
        if tok.endswith("'s") or tok.endswith("’s"):
            tok = tok[:-2].strip(_EDGE_PUNCT)
        if not tok:
            continue
        if stops is not None and tok in stops:
            continue
        tokens.append(tok)
    return tokens


@dataclass(frozen=True)
class Sentence:
    """One source sentence, keyed by (doc_id, index)."""

    doc_id: str
    index: int
    text: str
    tokens: tuple[str, ...]
    word_count: int

    @property
    def key(self) -> tuple[str, int]:
        return (self.doc_id, self.index)


@dataclass
class Document:
    doc_id: str
    raw_text: str
    sentences: list[Sentence]


@dataclass
class ReferenceSummary:
    ref_id: str
    text: str
    tokens: list[str]


@dataclass
class TopicCorpus:
    """A multi-document topic with reference summaries and optional SCUs."""

    topic_id: str
    documents: list[Document]
    references: list[ReferenceSummary]
    scus: list[str] | None = None
    _by_key: dict[tuple[str, int], Sentence] = field(
        default_factory=dict, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if not self.topic_id:
            raise ArgumentError("topic_id must be nonempty")
        if not self.documents:
            raise ArgumentError(f"topic {self.topic_id!r} has no documents")
        if self.scus is not None:
            self.scus = tuple(self.scus)  # type: ignore[assignment]
        self._by_key = {s.key: s for doc in self.documents for s in doc.sentences}

    @property
    def eval_usable(self) -> bool:
        """False when no reference summaries exist; evaluation ops reject then."""
        return bool(self.references)

    def sentences(self) -> list[Sentence]:
        """All sentences, ordered by (doc_id, index)."""
        return [s for doc in self.documents for s in doc.sentences]

    def sentence(self, key: tuple[str, int]) -> Sentence:
        return self._by_key[key]


def _make_document(doc_id: str, raw_text: str) -> Document:
    sentences = []
    index = 0
    for text in split_sentences(raw_text):
        tokens = tuple(tokenize(text))
        if not tokens:
            continue
        sentences.append(
            Sentence(doc_id, index, text, tokens, word_count=len(text.split()))
        )
        index += 1
    return Document(doc_id, raw_text, sentences)


def build_corpus(
    topic_id: str,
    docs: list[tuple[str, str]],
    references: list[str],
    scus: list[str] | None = None,
) -> TopicCorpus:
    """Assemble a TopicCorpus from raw (doc_id, text) pairs.

    Documents are ordered by doc_id so sentence keys are deterministic.
    """
    documents = [_make_document(doc_id, text) for doc_id, text in sorted(docs)]
    refs = [
        ReferenceSummary(f"ref{i}", text, tokenize(text))
        for i, text in enumerate(references)
    ]
    return TopicCorpus(topic_id, documents, refs, scus)


def load_topic(path: str | Path, format: str = "auto") -> TopicCorpus:
    """Load a topic corpus from a plain directory layout or a JSON file.

    Plain-dir layout: ``docs/*.txt``, ``refs/*.txt``, optional ``scus.json``.
    JSON schema: ``{"topic_id", "documents": [{"doc_id", "text"}],
    "references": [...], "scus": [...]}``.
    """
    path = Path(path)
    if format == "auto":
        format = "plain-dir" if path.is_dir() else "json"
    if format == "plain-dir":
        return _load_plain_dir(path)
    if format == "json":
        return _load_json(path)
    raise ArgumentError(f"unknown corpus format {format!r}")


def _load_plain_dir(root: Path) -> TopicCorpus:
    docs_dir = root / "docs"
    if not docs_dir.is_dir():
        raise IngestError(f"missing docs directory: {docs_dir}")
    doc_files = sorted(docs_dir.glob("*.txt"))
    if not doc_files:
        raise IngestError(f"no .txt documents under {docs_dir}")
    docs = [(p.stem, p.read_text("utf-8")) for p in doc_files]
    refs = [p.read_text("utf-8") for p in sorted((root / "refs").glob("*.txt"))]
    scus = None
    scus_path = root / "scus.json"
    if scus_path.exists():
        scus = json.loads(scus_path.read_text("utf-8"))
    return build_corpus(root.name, docs, refs, scus)


def _load_json(path: Path) -> TopicCorpus:
    if not path.exists():
        raise IngestError(f"no such corpus file: {path}")
    data = json.loads(path.read_text("utf-8"))
    docs = [(d["doc_id"], d["text"]) for d in data["documents"]]
    return build_corpus(
        data["topic_id"], docs, data.get("references", []), data.get("scus")
    )


class EmbeddingStore:
    """Static word embeddings: token -> fixed-dimension vector.

    Lookup lowercases the token. Vectors are float64 numpy arrays.
    """

    def __init__(self, vectors: dict[str, np.ndarray], dim: int):
        self.dim = dim
        self._vectors = vectors

    def __len__(self) -> int:
        return len(self._vectors)

    def __contains__(self, token: str) -> bool:
        return token.lower() in self._vectors

    def get(self, token: str) -> np.ndarray | None:
        return self._vectors.get(token.lower())

    def save(self, path: str | Path) -> None:
        """Write the text format ``token v1 ... vD`` one entry per line."""
        with open(path, "w", encoding="utf-8") as f:
            for token, vec in self._vectors.items():
                # repr(float) round-trips bit-exactly through float().
                f.write(
                    token + " " + " ".join(repr(float(v)) for v in vec) + "\n"
                )


def load_embeddings(path: str | Path) -> EmbeddingStore:
    """Load a text embedding file; dimension is inferred from the first line."""
    vectors: dict[str, np.ndarray] = {}
    dim: int | None = None
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split(" ")
            if len(parts) < 2:
                raise FormatError("embedding line has no values", line=lineno)
            token = parts[0].lower()
            try:
                values = np.array([float(v) for v in parts[1:]], dtype=np.float64)
            except ValueError:
                raise FormatError("non-numeric embedding value", line=lineno)
            if dim is None:
                dim = len(values)
            elif len(values) != dim:
                raise FormatError(
                    f"expected {dim} values, got {len(values)}", line=lineno
                )
            vectors[token] = values
    if dim is None:
        raise FormatError("embedding file is empty")
    return EmbeddingStore(vectors, dim)


def embed_tokens(tokens: list[str] | tuple[str, ...], store: EmbeddingStore) -> tuple[np.ndarray, bool]:
    """Mean vector over in-vocabulary tokens.

    Returns (vector, all_oov). OOV tokens are skipped; with no in-vocabulary
    token the zero vector is returned and the flag is set.
    """
    hits = [store.get(t) for t in tokens]
    hits = [v for v in hits if v is not None]
    if not hits:
        return np.zeros(store.dim), True
    return np.mean(hits, axis=0), False


def sentence_embedding(sentence: Sentence, store: EmbeddingStore) -> tuple[np.ndarray, bool]:
    """Mean embedding of a sentence's tokens; see embed_tokens for OOV policy."""
    return embed_tokens(sentence.tokens, store)


def word_frequency(corpus: TopicCorpus, drop_stopwords: bool = False) -> dict[str, int]:
    """Token counts over all document sentences of the corpus."""
    stops = stopwords() if drop_stopwords else frozenset()
    counts: dict[str, int] = {}
    for sent in corpus.sentences():
        for tok in sent.tokens:
            if tok in stops:
                continue
            counts[tok] = counts.get(tok, 0) + 1
    return counts
