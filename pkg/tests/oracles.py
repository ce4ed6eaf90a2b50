"""Independent reference implementations used as test oracles.

Everything here is deliberately naive (full DP tables, explicit
enumeration, dense matrix iteration, numpy interpolation) so that it shares
no code path with the library implementations it checks.
"""

from __future__ import annotations

import numpy as np

from qfse.rouge import RougeVariant
from qfse.rouge.porter import stem as porter_stem


def naive_lcs(a: list, b: list) -> int:
    rows = len(a) + 1
    cols = len(b) + 1
    table = [[0] * cols for _ in range(rows)]
    for i in range(1, rows):
        for j in range(1, cols):
            if a[i - 1] == b[j - 1]:
                table[i][j] = table[i - 1][j - 1] + 1
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
    return table[-1][-1]


def naive_ngrams(seq: list, n: int) -> list[tuple]:
    return [tuple(seq[i : i + n]) for i in range(len(seq) - n + 1)]


def naive_clipped(cand_grams: list[tuple], ref_grams: list[tuple]) -> int:
    return sum(
        min(cand_grams.count(g), ref_grams.count(g)) for g in set(cand_grams)
    )


def naive_skip_pairs(seq: list, max_gap: int) -> list[tuple]:
    pairs = []
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if j - i - 1 <= max_gap:
                pairs.append((seq[i], seq[j]))
    return pairs


def _prf(match: int, total_cand: int, total_ref: int) -> tuple[float, float, float]:
    p = match / total_cand if total_cand else 0.0
    r = match / total_ref if total_ref else 0.0
    f = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return p, r, f


def naive_rouge(
    candidate: list[str],
    references: list[list[str]],
    variant: RougeVariant,
    stem: bool = True,
) -> tuple[float, float, float]:
    cand = [porter_stem(t) for t in candidate] if stem else list(candidate)
    triples = []
    for reference in references:
        ref = [porter_stem(t) for t in reference] if stem else list(reference)
        if variant.kind == "R1":
            cg, rg = naive_ngrams(cand, 1), naive_ngrams(ref, 1)
            triples.append(_prf(naive_clipped(cg, rg), len(cg), len(rg)))
        elif variant.kind == "R2":
            cg, rg = naive_ngrams(cand, 2), naive_ngrams(ref, 2)
            triples.append(_prf(naive_clipped(cg, rg), len(cg), len(rg)))
        elif variant.kind == "RL":
            lcs = naive_lcs(cand, ref)
            triples.append(_prf(lcs, len(cand), len(ref)))
        else:
            cg = naive_skip_pairs(cand, variant.su_skip_distance)
            rg = naive_skip_pairs(ref, variant.su_skip_distance)
            match = naive_clipped(cg, rg)
            total_c, total_r = len(cg), len(rg)
            if variant.include_unigrams_in_su:
                cu, ru = naive_ngrams(cand, 1), naive_ngrams(ref, 1)
                match += naive_clipped(cu, ru)
                total_c += len(cu)
                total_r += len(ru)
            triples.append(_prf(match, total_c, total_r))
    n = len(triples)
    return (
        sum(t[0] for t in triples) / n,
        sum(t[1] for t in triples) / n,
        sum(t[2] for t in triples) / n,
    )


def riemann_auc(
    points: list[tuple[float, float]], lo: float, hi: float, n: int = 10000
) -> float:
    """Trapezoid sum over an n-point grid refined with the interior knots,
    using numpy's clamped interpolation."""
    xs = np.array([p[0] for p in points], dtype=np.float64)
    ys = np.array([p[1] for p in points], dtype=np.float64)
    grid = np.linspace(lo, hi, n)
    interior = xs[(xs > lo) & (xs < hi)]
    grid = np.unique(np.concatenate([grid, interior]))
    values = np.interp(grid, xs, ys)
    return float(np.trapezoid(values, grid))


def pagerank_oracle(
    weights: np.ndarray, damping: float = 0.85, tol: float = 1e-6,
    max_iters: int = 100,
) -> np.ndarray:
    """Dense matrix power iteration with the same residual convention as
    the library (no dangling-mass redistribution)."""
    n = weights.shape[0]
    out = weights.sum(axis=1)
    transition = np.zeros_like(weights, dtype=np.float64)
    nonzero = out > 0
    transition[nonzero] = weights[nonzero] / out[nonzero, None]
    scores = np.full(n, 1.0 / n)
    for _ in range(max_iters):
        updated = (1.0 - damping) / n + damping * (transition.T @ scores)
        if np.abs(updated - scores).sum() < tol:
            return updated
        scores = updated
    return scores
