"""Numeric and graph kernels behind the summarizers.

PCA projection, seeded k-means, TextRank over sentences and words, and the
two initial-summary builders (cluster-representative and TextRank order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError
from .textproc import (
    EmbeddingStore,
    Sentence,
    TopicCorpus,
    sentence_embedding,
    stopwords,
    word_frequency,
)

Key = tuple[str, int]

DEFAULT_PCA_DIM = 20
DEFAULT_KMEANS_K = 30
DEFAULT_DEDUP_COSINE = 0.95
DEFAULT_MIN_WORDS = 75
DAMPING = 0.85
PAGERANK_TOL = 1e-6
PAGERANK_MAX_ITERS = 100


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity; zero when either vector has zero norm."""
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def pca_reduce(vectors: list[np.ndarray] | np.ndarray, target_dim: int) -> list[np.ndarray]:
    """Mean-centered projection onto the top principal components.

    Output width is min(target_dim, input dim); directions beyond the data
    rank contribute zero columns. Component signs are fixed by making the
    largest-magnitude loading positive.
    """
    X = np.asarray(vectors, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ArgumentError("pca_reduce needs a nonempty 2-D array of vectors")
    n, d = X.shape
    width = min(target_dim, d)
    Xc = X - X.mean(axis=0)
    _, svals, Vt = np.linalg.svd(Xc, full_matrices=False)
    avail = min(width, Vt.shape[0])
    comps = Vt[:avail].copy()
    # Components with a vanishing singular value are an arbitrary basis of the
    # null space; zero them so degenerate dims project to exactly 0.
    scale = svals[0] if svals.size and svals[0] > 0 else 1.0
    for i in range(avail):
        if svals[i] <= 1e-12 * scale:
            comps[i] = 0.0
            continue
        j = int(np.argmax(np.abs(comps[i])))
        if comps[i, j] < 0:
            comps[i] = -comps[i]
    proj = Xc @ comps.T
    if avail < width:
        proj = np.hstack([proj, np.zeros((n, width - avail))])
    return [proj[i] for i in range(n)]


@dataclass
class ClusterModel:
    k: int
    assignments: dict[Key | int, int]
    centroids: list[np.ndarray]
    cluster_order: list[int]
    wcss_history: list[float] = field(default_factory=list, compare=False)


def _kmeans_pp_init(distinct: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    centers = [distinct[int(rng.integers(len(distinct)))]]
    d2 = ((distinct - centers[0]) ** 2).sum(axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total <= 0:
            break
        probs = d2 / total
        idx = int(rng.choice(len(distinct), p=probs))
        centers.append(distinct[idx])
        d2 = np.minimum(d2, ((distinct - centers[-1]) ** 2).sum(axis=1))
    return np.array(centers)


def kmeans(
    vectors: list[np.ndarray] | np.ndarray,
    k: int,
    seed: int = 0,
    max_iters: int = 100,
    keys: list[Key] | None = None,
) -> ClusterModel:
    """Seeded k-means++ plus Lloyd iterations to an assignment fixpoint.

    The effective k is min(k, number of distinct vectors). Deterministic for
    a fixed seed.
    """
    X = np.asarray(vectors, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ArgumentError("kmeans needs a nonempty 2-D array of vectors")
    if k < 1:
        raise ArgumentError("k must be >= 1")
    n = X.shape[0]
    if keys is None:
        keys = list(range(n))  # type: ignore[assignment]
    distinct = np.unique(X, axis=0)
    k_eff = min(k, len(distinct))
    rng = np.random.default_rng(seed)
    centers = _kmeans_pp_init(distinct, k_eff, rng)
    k_eff = len(centers)

    labels = np.full(n, -1, dtype=np.int64)
    wcss_history: list[float] = []
    for _ in range(max_iters):
        d2 = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_labels = d2.argmin(axis=1)
        wcss_history.append(float(d2[np.arange(n), new_labels].sum()))
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(k_eff):
            members = X[labels == c]
            if len(members):
                centers[c] = members.mean(axis=0)
            else:
                # Re-seat an empty cluster on the point farthest from its center.
                far = int(d2[np.arange(n), labels].argmax())
                centers[c] = X[far]

    sizes = np.bincount(labels, minlength=k_eff)
    order = sorted(range(k_eff), key=lambda c: (-int(sizes[c]), c))
    return ClusterModel(
        k=k_eff,
        assignments={keys[i]: int(labels[i]) for i in range(n)},
        centroids=[centers[c] for c in range(k_eff)],
        cluster_order=order,
        wcss_history=wcss_history,
    )


@dataclass
class RankedSentences:
    items: list[tuple[Key, float]]

    def keys(self) -> list[Key]:
        return [k for k, _ in self.items]


def _pagerank(weights: np.ndarray, damping: float, tol: float, max_iters: int) -> np.ndarray:
    """Weighted PageRank; nodes without edges keep the (1-d)/N residual."""
    n = weights.shape[0]
    out = weights.sum(axis=1)
    norm = np.divide(weights, out[:, None], out=np.zeros_like(weights), where=out[:, None] > 0)
    scores = np.full(n, 1.0 / n)
    residual = (1.0 - damping) / n
    for _ in range(max_iters):
        updated = residual + damping * (norm.T @ scores)
        if float(np.abs(updated - scores).max()) < tol:
            scores = updated
            break
        scores = updated
    return scores


def textrank_sentences(
    corpus: TopicCorpus,
    damping: float = DAMPING,
    tol: float = PAGERANK_TOL,
    max_iters: int = PAGERANK_MAX_ITERS,
) -> RankedSentences:
    """Rank sentences by PageRank over the token-overlap similarity graph.

    Edge weight between two sentences is the shared-token count divided by
    the sum of the log token-lengths.
    """
    sents = corpus.sentences()
    if not sents:
        raise ArgumentError("corpus has no sentences")
    n = len(sents)
    token_sets = [set(s.tokens) for s in sents]
    lengths = [len(s.tokens) for s in sents]
    weights = np.zeros((n, n))
    for i in range(n):
        log_i = math.log(lengths[i]) if lengths[i] > 0 else 0.0
        for j in range(i + 1, n):
            overlap = len(token_sets[i] & token_sets[j])
            if not overlap:
                continue
            denom = log_i + (math.log(lengths[j]) if lengths[j] > 0 else 0.0)
            if denom <= 0:
                continue
            weights[i, j] = weights[j, i] = overlap / denom
    scores = _pagerank(weights, damping, tol, max_iters)
    ranked = sorted(
        ((sents[i].key, float(scores[i])) for i in range(n)),
        key=lambda kv: (-kv[1], kv[0]),
    )
    return RankedSentences(ranked)


def textrank_phrases(corpus: TopicCorpus, top_n: int = 10) -> list[str]:
    """Top keyword phrases from PageRank over a word co-occurrence graph.

    Graph: stopword-filtered tokens co-occurring within a window of 3.
    The top third of words by score are keywords; adjacent keywords in the
    original token stream merge into phrases ranked by summed word scores.
    """
    stops = stopwords()
    sequences = []
    for sent in corpus.sentences():
        sequences.append([t for t in sent.tokens if t not in stops])
    vocab: dict[str, int] = {}
    for seq in sequences:
        for tok in seq:
            vocab.setdefault(tok, len(vocab))
    if not vocab:
        return []
    n = len(vocab)
    weights = np.zeros((n, n))
    for seq in sequences:
        for i in range(len(seq)):
            for j in range(i + 1, min(i + 3, len(seq))):
                a, b = vocab[seq[i]], vocab[seq[j]]
                if a == b:
                    continue
                weights[a, b] += 1.0
                weights[b, a] += 1.0
    scores = _pagerank(weights, DAMPING, PAGERANK_TOL, PAGERANK_MAX_ITERS)
    word_score = {w: float(scores[i]) for w, i in vocab.items()}
    top_count = max(1, math.ceil(n / 3))
    keywords = set(
        sorted(word_score, key=lambda w: (-word_score[w], w))[:top_count]
    )

    phrase_scores: dict[str, float] = {}
    for sent in corpus.sentences():
        run: list[str] = []
        for tok in list(sent.tokens) + [""]:
            if tok in keywords:
                run.append(tok)
                continue
            if run:
                phrase = " ".join(run)
                phrase_scores[phrase] = sum(word_score[w] for w in run)
                run = []
    ranked = sorted(phrase_scores, key=lambda p: (-phrase_scores[p], p))
    return ranked[:top_n]


@dataclass
class InitialSummary:
    sentence_keys: list[Key]
    text: str
    word_count: int
    exhausted: bool = False


def _embeddings_by_key(
    corpus: TopicCorpus, store: EmbeddingStore, pca_dim: int
) -> tuple[dict[Key, np.ndarray], list[Key]]:
    """PCA-reduced sentence embeddings; all-OOV sentences map to zero vectors."""
    sents = corpus.sentences()
    embeddable: list[Sentence] = []
    vectors = []
    for s in sents:
        vec, all_oov = sentence_embedding(s, store)
        if not all_oov:
            embeddable.append(s)
            vectors.append(vec)
    if not embeddable:
        raise ArgumentError("corpus has no embeddable sentence")
    reduced = pca_reduce(vectors, pca_dim)
    width = len(reduced[0])
    by_key = {s.key: np.zeros(width) for s in sents}
    for s, vec in zip(embeddable, reduced):
        by_key[s.key] = vec
    return by_key, [s.key for s in embeddable]


def _mean_token_frequency(sent: Sentence, freq: dict[str, int], stops: frozenset[str]) -> float:
    counts = [freq.get(t, 0) for t in sent.tokens if t not in stops]
    if not counts:
        return 0.0
    return sum(counts) / len(counts)


def _collect(
    corpus: TopicCorpus,
    candidates: list[list[Key]],
    reduced: dict[Key, np.ndarray],
    min_words: int,
    dedup: float,
) -> InitialSummary:
    """Shared greedy selector: walk candidate tiers, skip near-duplicates,
    stop at the word budget."""
    selected: list[Sentence] = []
    word_count = 0
    rank = 0
    exhausted = False
    while word_count < min_words:
        tier_had_candidates = False
        for members in candidates:
            if word_count >= min_words:
                break
            if rank >= len(members):
                continue
            tier_had_candidates = True
            cand = corpus.sentence(members[rank])
            vec = reduced[cand.key]
            if any(cosine(vec, reduced[s.key]) >= dedup for s in selected):
                continue
            selected.append(cand)
            word_count += cand.word_count
        if word_count >= min_words:
            break
        rank += 1
        if not tier_had_candidates:
            exhausted = True
            break
    text = " ".join(s.text for s in selected)
    return InitialSummary(
        [s.key for s in selected], text, word_count, exhausted=exhausted
    )


def initial_summary_cl(
    corpus: TopicCorpus,
    store: EmbeddingStore,
    min_words: int = DEFAULT_MIN_WORDS,
    pca_dim: int = DEFAULT_PCA_DIM,
    k: int = DEFAULT_KMEANS_K,
    dedup: float = DEFAULT_DEDUP_COSINE,
    seed: int = 0,
) -> InitialSummary:
    """Cluster-representative initial summary.

    Embed -> PCA -> k-means; clusters visited largest-first; a cluster's
    representative is its sentence with the highest mean corpus frequency
    over non-stopword tokens. Representatives too close (cosine >= dedup in
    the reduced space) to prior picks are skipped.
    """
    reduced, embeddable_keys = _embeddings_by_key(corpus, store, pca_dim)
    model = kmeans(
        [reduced[key] for key in embeddable_keys],
        min(k, len(embeddable_keys)),
        seed=seed,
        keys=embeddable_keys,
    )
    freq = word_frequency(corpus, drop_stopwords=True)
    stops = stopwords()

    members_by_cluster: dict[int, list[Key]] = {c: [] for c in range(model.k)}
    for key in embeddable_keys:
        members_by_cluster[model.assignments[key]].append(key)
    candidates = []
    for cid in model.cluster_order:
        ranked = sorted(
            members_by_cluster[cid],
            key=lambda key: (
                -_mean_token_frequency(corpus.sentence(key), freq, stops),
                key,
            ),
        )
        candidates.append(ranked)
    return _collect(corpus, candidates, reduced, min_words, dedup)


def initial_summary_tr(
    corpus: TopicCorpus,
    min_words: int = DEFAULT_MIN_WORDS,
    store: EmbeddingStore | None = None,
    pca_dim: int = DEFAULT_PCA_DIM,
    dedup: float = DEFAULT_DEDUP_COSINE,
) -> InitialSummary:
    """TextRank-order initial summary with the same near-duplicate skip.

    The dedup cosine uses the PCA-reduced embedding space when a store is
    given; without one, duplicates are only skipped on exact token equality.
    """
    ranked = textrank_sentences(corpus)
    if store is not None:
        reduced, _ = _embeddings_by_key(corpus, store, pca_dim)
    else:
        reduced = _token_indicator_vectors(corpus)
    candidates = [[key] for key in ranked.keys()]
    return _collect(corpus, candidates, reduced, min_words, dedup)


def _token_indicator_vectors(corpus: TopicCorpus) -> dict[Key, np.ndarray]:
    vocab: dict[str, int] = {}
    for s in corpus.sentences():
        for t in s.tokens:
            vocab.setdefault(t, len(vocab))
    out = {}
    for s in corpus.sentences():
        vec = np.zeros(max(len(vocab), 1))
        for t in s.tokens:
            vec[vocab[t]] += 1.0
        out[s.key] = vec
    return out
