"""Pure-Python matching kernels; fallback when the C extension is absent.

All functions operate on sequences of non-negative integer token ids.
Semantics must stay identical to ``_speedups.pyx``.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence


def lcs_length(a: Sequence[int], b: Sequence[int]) -> int:
    """Length of the longest common subsequence (two-row DP)."""
    n, m = len(a), len(b)
    if n == 0 or m == 0:
        return 0
    if m > n:
        a, b, n, m = b, a, m, n
    prev = [0] * (m + 1)
    cur = [0] * (m + 1)
    for i in range(n):
        x = a[i]
        for j in range(m):
            if x == b[j]:
                cur[j + 1] = prev[j] + 1
            else:
                left = cur[j]
                up = prev[j + 1]
                cur[j + 1] = left if left >= up else up
        prev, cur = cur, prev
    return prev[m]


def ngram_overlap(a: Sequence[int], b: Sequence[int], n: int) -> tuple[int, int, int]:
    """Clipped n-gram match count plus per-side totals."""
    ca = Counter(tuple(a[i : i + n]) for i in range(len(a) - n + 1))
    cb = Counter(tuple(b[i : i + n]) for i in range(len(b) - n + 1))
    match = sum(min(cnt, cb[g]) for g, cnt in ca.items() if g in cb)
    return match, max(len(a) - n + 1, 0), max(len(b) - n + 1, 0)


def _skip_pairs(seq: Sequence[int], max_gap: int) -> Counter:
    pairs: Counter = Counter()
    n = len(seq)
    for i in range(n):
        upper = min(i + max_gap + 2, n)
        for j in range(i + 1, upper):
            pairs[(seq[i], seq[j])] += 1
    return pairs


def skip_overlap(a: Sequence[int], b: Sequence[int], max_gap: int) -> tuple[int, int, int]:
    """Clipped skip-bigram matches with at most ``max_gap`` words in between."""
    ca = _skip_pairs(a, max_gap)
    cb = _skip_pairs(b, max_gap)
    match = sum(min(cnt, cb[g]) for g, cnt in ca.items() if g in cb)
    return match, sum(ca.values()), sum(cb.values())
