"""Exact Levenshtein distances over characters and token sequences.

Uses Myers' bit-parallel algorithm with Python big ints as bit vectors, so
whole-file character distances stay tractable without C extensions.
"""

from __future__ import annotations

from collections.abc import Hashable, Sequence


def _trim_common(a: Sequence, b: Sequence) -> tuple[Sequence, Sequence]:
    lo = 0
    n = min(len(a), len(b))
    while lo < n and a[lo] == b[lo]:
        lo += 1
    hi = 0
    while hi < n - lo and a[len(a) - 1 - hi] == b[len(b) - 1 - hi]:
        hi += 1
    return a[lo : len(a) - hi], b[lo : len(b) - hi]


def levenshtein(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    """Unit-cost edit distance between two sequences (strings included)."""
    a, b = _trim_common(a, b)
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    # Myers 1999, column-wise over pattern b.
    m = len(b)
    masks: dict[Hashable, int] = {}
    for i, item in enumerate(b):
        masks[item] = masks.get(item, 0) | (1 << i)
    vp = (1 << m) - 1
    vn = 0
    score = m
    high_bit = 1 << (m - 1)
    for item in a:
        eq = masks.get(item, 0)
        xv = eq | vn
        d0 = (((eq & vp) + vp) ^ vp) | xv
        hp = vn | ~(d0 | vp)
        hn = d0 & vp
        if hp & high_bit:
            score += 1
        elif hn & high_bit:
            score -= 1
        hp = (hp << 1) | 1
        hn = hn << 1
        vp = hn | ~(d0 | hp)
        vn = d0 & hp
    return score


def similarity(a: Sequence[Hashable], b: Sequence[Hashable]) -> float:
    """Normalized edit similarity in [0, 1]; empty-vs-empty counts as 1."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest
