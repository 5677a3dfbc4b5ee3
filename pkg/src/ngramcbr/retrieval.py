"""Score canonical query tokens against indexed cases and rank them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .casebase import CaseIndex
from .errors import NoContentError
from .lexicons import LexiconBundle
from .ngram import HUNDRED, best_k_similarity
from .pipeline import PipelineConfig, PreprocessedText, preprocess


@dataclass(frozen=True)
class TokenMatch:
    query_token: str
    best_case_token: str | None
    similarity: Fraction


@dataclass(frozen=True)
class RetrievalResult:
    case_id: str
    case_score: Fraction
    subset_match: bool
    per_token: tuple[TokenMatch, ...]
    solution: str = ""


@dataclass(frozen=True)
class Retrieval:
    """Ranked results together with the preprocessed query that produced them."""

    query: PreprocessedText
    results: tuple[RetrievalResult, ...]


def token_similarity(q: str, c: str, config: PipelineConfig | None = None) -> Fraction:
    if q == c:
        return HUNDRED
    config = config or PipelineConfig()
    return best_k_similarity(q, c, config.k_min, config.k_max).percentile


def score_case(
    query_tokens: Sequence[str],
    case_tokens: Sequence[str],
    config: PipelineConfig | None = None,
    case_id: str = "",
) -> RetrievalResult:
    """Mean over query tokens of the best similarity to any case token.

    Every query token present in the case scores 100, so a query whose
    tokens are a subset of the case's always scores exactly 100.
    """
    if not query_tokens:
        raise ValueError("query has no tokens")
    config = config or PipelineConfig()
    case_set = set(case_tokens)
    matches = []
    for q in query_tokens:
        best_token, best = None, Fraction(0)
        for c in case_tokens:
            sim = token_similarity(q, c, config)
            if best_token is None or sim > best:
                best_token, best = c, sim
            if best == HUNDRED:
                break
        matches.append(TokenMatch(q, best_token, best))
    score = sum((m.similarity for m in matches), Fraction(0)) / len(matches)
    subset = all(q in case_set for q in query_tokens)
    return RetrievalResult(case_id, score, subset, tuple(matches))


def rank(results) -> list[RetrievalResult]:
    return sorted(results, key=lambda r: (-r.case_score, r.case_id))


def retrieve(
    query: str,
    index: CaseIndex,
    bundle: LexiconBundle,
    config: PipelineConfig | None = None,
) -> Retrieval:
    """Preprocess ``query``, score every case and keep those at or above threshold.

    Raises :class:`NoContentError` if the filters leave no query tokens, and
    :class:`StaleIndexError` if the index was built from other lexicons or
    settings.
    """
    config = config or PipelineConfig()
    index.check_current(bundle, config)
    processed = preprocess(query, bundle, config)
    if not processed.canonical_tokens:
        raise NoContentError(f"no content words left in query {query!r}")
    scored = []
    for entry in index.entries:
        result = score_case(
            processed.canonical_tokens, entry.canonical_tokens, config, entry.case.id
        )
        if result.case_score >= config.retrieval_threshold:
            scored.append(
                RetrievalResult(
                    result.case_id,
                    result.case_score,
                    result.subset_match,
                    result.per_token,
                    entry.case.solution,
                )
            )
    return Retrieval(processed, tuple(rank(scored)))
