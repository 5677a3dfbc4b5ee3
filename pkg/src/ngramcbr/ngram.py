"""Gram profiles and the gram-overlap similarity score.

Works on plain strings (letter grams) and on sequences of symbols such as
phoneme lists (grams are then tuples of symbols). All arithmetic is exact;
values are :class:`fractions.Fraction` and only get rounded for display.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Sequence, Union

from .lexicons import fold

Gram = Hashable
Text = Union[str, Sequence[str]]

HUNDRED = Fraction(100)


@dataclass(frozen=True)
class GramProfile:
    k: int
    counts: dict[Gram, int]
    source_length: int

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class SimilarityScore:
    score: Fraction
    percentile: Fraction
    k: int


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"gram length must be a positive integer, got {k!r}")


def _normalize(s: Text):
    if isinstance(s, str):
        return fold(s)
    return tuple(s)


def gram_profile(s: Text, k: int) -> GramProfile:
    """Count every contiguous length-``k`` slice of ``s``.

    >>> sorted(gram_profile("sysem", 2).counts.items())
    [('EM', 1), ('SE', 1), ('SY', 1), ('YS', 1)]
    """
    _check_k(k)
    seq = _normalize(s)
    counts = Counter(seq[i : i + k] for i in range(len(seq) - k + 1))
    return GramProfile(k, dict(counts), len(seq))


def ngram_score(a: Text, b: Text, k: int) -> Fraction:
    """100 * (shared grams, min count each) / (all grams, max count each).

    With no repeated grams the denominator is simply the number of distinct
    grams in either input. Two inputs too short to yield any gram score 100
    when equal, else 0.
    """
    pa, pb = gram_profile(a, k), gram_profile(b, k)
    if not pa.counts and not pb.counts:
        return HUNDRED if _normalize(a) == _normalize(b) else Fraction(0)
    shared = sum(min(n, pb.counts[g]) for g, n in pa.counts.items() if g in pb.counts)
    union = sum(
        max(pa.counts.get(g, 0), pb.counts.get(g, 0))
        for g in pa.counts.keys() | pb.counts.keys()
    )
    return HUNDRED * shared / union


def percentile(score, len_a: int, len_b: int) -> Fraction:
    """Score divided by the mean length, rescaled to 100 and capped there."""
    if len_a < 1 or len_b < 1:
        raise ValueError("lengths must be at least 1")
    score = Fraction(score)
    if not 0 <= score <= 100:
        raise ValueError(f"score out of range: {score}")
    return min(HUNDRED, score * 20 / (len_a + len_b))


def best_k_similarity(a: Text, b: Text, k_min: int, k_max: int) -> SimilarityScore:
    """Evaluate every gram length in range and keep the best percentile.

    The upper bound is clipped to the longer input (but never below
    ``k_min``); ties go to the smaller ``k``.
    """
    _check_k(k_min)
    _check_k(k_max)
    if k_min > k_max:
        raise ValueError(f"empty gram range [{k_min}, {k_max}]")
    len_a, len_b = len(_normalize(a)), len(_normalize(b))
    upper = max(k_min, min(k_max, max(len_a, len_b)))
    best = None
    for k in range(k_min, upper + 1):
        score = ngram_score(a, b, k)
        pct = percentile(score, max(len_a, 1), max(len_b, 1))
        if best is None or pct > best.percentile:
            best = SimilarityScore(score, pct, k)
    return best


def round_half_up(value) -> int:
    """Integer presentation of an exact score: 1000/11 -> 91, 5/2 -> 3."""
    value = Fraction(value)
    return (value + Fraction(1, 2)).__floor__()
