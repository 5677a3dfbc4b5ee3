"""Phoneme/morpheme decomposition and four-factor spelling correction.

An out-of-vocabulary word is compared with every vocabulary word on four
factors, each on a 0-100 scale:

* lexicon  - gram similarity of the letters
* phonetic - gram similarity of the phoneme sequences
* context  - overlap of the candidate's pragmatic keywords with the roots of
  the other words in the same input
* domain   - overlap of the candidate's pragmatic keywords with the domain
  keyword list

The weighted mean of the four picks the replacement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .lexicons import LexiconBundle, PhonemeRules, fold, identity_phoneme
from .ngram import HUNDRED, best_k_similarity


@dataclass(frozen=True)
class PhonemeSequence:
    symbols: tuple[str, ...]
    graphemes: tuple[str, ...]

    def __len__(self):
        return len(self.symbols)


@dataclass(frozen=True)
class MorphemeDecomposition:
    root: str
    affixes: tuple[str, ...] = ()


@dataclass(frozen=True)
class FactorWeights:
    phonetic: Fraction = Fraction(1)
    lexicon: Fraction = Fraction(1)
    context: Fraction = Fraction(1)
    domain: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("phonetic", "lexicon", "context", "domain"):
            value = Fraction(getattr(self, name))
            if value < 0:
                raise ValueError(f"weight {name} must be non-negative")
            object.__setattr__(self, name, value)
        if self.total <= 0:
            raise ValueError("at least one factor weight must be positive")

    @property
    def total(self) -> Fraction:
        return self.phonetic + self.lexicon + self.context + self.domain

    def scaled(self, factor) -> "FactorWeights":
        factor = Fraction(factor)
        return FactorWeights(
            self.phonetic * factor,
            self.lexicon * factor,
            self.context * factor,
            self.domain * factor,
        )


@dataclass(frozen=True)
class CorrectionConfig:
    candidate_floor: Fraction = Fraction(40)
    accept_threshold: Fraction = Fraction(60)
    weights: FactorWeights = field(default_factory=FactorWeights)
    k_min: int = 2
    k_max: int = 3

    def __post_init__(self):
        for name in ("candidate_floor", "accept_threshold"):
            value = Fraction(getattr(self, name))
            if not 0 <= value <= 100:
                raise ValueError(f"{name} must lie in [0, 100]")
            object.__setattr__(self, name, value)
        if not 1 <= self.k_min <= self.k_max:
            raise ValueError(f"invalid gram range [{self.k_min}, {self.k_max}]")


@dataclass(frozen=True)
class CandidateEvaluation:
    candidate: str
    f_phonetic: Fraction
    f_lexicon: Fraction
    f_context: Fraction
    f_domain: Fraction
    combined: Fraction


@dataclass(frozen=True)
class CorrectionResult:
    replacement: str
    evaluations: tuple[CandidateEvaluation, ...] = ()


def phoneme_sequence(word: str, rules: PhonemeRules) -> PhonemeSequence:
    """Greedy longest-match, left to right.

    Characters no rule covers (digits, non-ASCII) map to themselves.
    """
    word = fold(word)
    table = rules.rules
    symbols, graphemes = [], []
    i = 0
    while i < len(word):
        for size in range(min(rules.longest, len(word) - i), 0, -1):
            chunk = word[i : i + size]
            if chunk in table:
                symbols.append(table[chunk])
                break
        else:
            chunk = word[i]
            symbols.append(identity_phoneme(chunk))
        graphemes.append(chunk)
        i += len(chunk)
    return PhonemeSequence(tuple(symbols), tuple(graphemes))


def morphemes(word: str, bundle: LexiconBundle) -> MorphemeDecomposition:
    """Split off the longest vocabulary root that prefixes ``word``."""
    word = fold(word)
    for end in range(len(word), 0, -1):
        if word[:end] in bundle.vocabulary:
            rest = word[end:]
            return MorphemeDecomposition(word[:end], (rest,) if rest else ())
    return MorphemeDecomposition(word)


def overlap_coefficient(a: frozenset, b: Iterable[str]) -> Fraction:
    b = frozenset(b)
    if not a or not b:
        return Fraction(0)
    return HUNDRED * len(a & b) / min(len(a), len(b))


def _weighted(weights: FactorWeights, phonetic, lexicon, context, domain) -> Fraction:
    return (
        weights.phonetic * phonetic
        + weights.lexicon * lexicon
        + weights.context * context
        + weights.domain * domain
    ) / weights.total


def evaluate_candidate(
    word: str,
    candidate: str,
    context_roots: Iterable[str],
    bundle: LexiconBundle,
    weights: FactorWeights,
    k_range: tuple[int, int],
) -> CandidateEvaluation:
    if candidate not in bundle.vocabulary:
        raise ValueError(f"{candidate} is not a vocabulary word")
    k_min, k_max = k_range
    f_lexicon = best_k_similarity(word, candidate, k_min, k_max).percentile
    f_phonetic = best_k_similarity(
        phoneme_sequence(word, bundle.phonemes).symbols,
        phoneme_sequence(candidate, bundle.phonemes).symbols,
        k_min,
        k_max,
    ).percentile
    keywords = bundle.pragmatic.of(candidate)
    f_context = overlap_coefficient(keywords, context_roots)
    f_domain = overlap_coefficient(keywords, bundle.domain.keywords)
    return CandidateEvaluation(
        candidate,
        f_phonetic=f_phonetic,
        f_lexicon=f_lexicon,
        f_context=f_context,
        f_domain=f_domain,
        combined=_weighted(weights, f_phonetic, f_lexicon, f_context, f_domain),
    )


def _rank_key(ev: CandidateEvaluation):
    return (-ev.combined, -ev.f_lexicon, ev.candidate)


def correct_word(
    word: str,
    context_roots: Iterable[str],
    bundle: LexiconBundle,
    weights: FactorWeights | None = None,
    config: CorrectionConfig | None = None,
) -> CorrectionResult:
    """Replace an unknown word by the best-scoring vocabulary word.

    Vocabulary words come back untouched. Candidates below
    ``config.candidate_floor`` on the lexicon factor are not evaluated; the
    winner is only substituted when its combined score reaches
    ``config.accept_threshold``. ``evaluations`` lists every evaluated
    candidate, best first.
    """
    config = config or CorrectionConfig()
    weights = weights or config.weights
    word = fold(word)
    if word in bundle.vocabulary:
        return CorrectionResult(word)

    context_roots = frozenset(context_roots)
    k_range = (config.k_min, config.k_max)
    evaluations = []
    for candidate in sorted(bundle.vocabulary):
        lexical = best_k_similarity(word, candidate, *k_range).percentile
        if lexical < config.candidate_floor:
            continue
        evaluations.append(
            evaluate_candidate(word, candidate, context_roots, bundle, weights, k_range)
        )
    evaluations.sort(key=_rank_key)
    if evaluations and evaluations[0].combined >= config.accept_threshold:
        return CorrectionResult(evaluations[0].candidate, tuple(evaluations))
    return CorrectionResult(word, tuple(evaluations))
