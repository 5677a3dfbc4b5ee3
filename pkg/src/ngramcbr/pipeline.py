"""Five-stage canonicalization of free text.

Stages run in this order, each recorded per token in a :class:`TokenTrace`:

1. etymology   - surface word replaced by its lexicon root
2. stage 1     - function words dropped
3. correction  - unknown words replaced by the best vocabulary candidate
4. synonyms    - roots replaced by their synonym set's canonical keyword
5. stage 2     - noise words dropped

Exception-list words skip every stage and are kept verbatim.
"""

from __future__ import annotations

import enum
import hashlib
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .analysis import CorrectionConfig, FactorWeights, correct_word
from .lexicons import (
    LexiconBundle,
    Stage,
    TokenClass,
    canonical_synonym,
    classify_token,
    fold,
    root_of,
)

_TOKEN = re.compile(r"[^\W_]+")


class TokenStatus(str, enum.Enum):
    KEPT = "kept"
    FILTERED = "filtered"
    EXCEPTION = "exception"


_STATUS = {
    TokenClass.CONTENT: TokenStatus.KEPT,
    TokenClass.FILTERED: TokenStatus.FILTERED,
    TokenClass.EXCEPTION: TokenStatus.EXCEPTION,
}


@dataclass(frozen=True)
class PipelineConfig:
    k_min: int = 2
    k_max: int = 3
    weights: FactorWeights = field(default_factory=FactorWeights)
    candidate_floor: Fraction = Fraction(40)
    accept_threshold: Fraction = Fraction(60)
    retrieval_threshold: Fraction = Fraction(70)
    correction_enabled: bool = True

    def __post_init__(self):
        if not 1 <= self.k_min <= self.k_max:
            raise ValueError(f"invalid gram range [{self.k_min}, {self.k_max}]")
        threshold = Fraction(self.retrieval_threshold)
        if not 0 <= threshold <= 100:
            raise ValueError("retrieval_threshold must lie in [0, 100]")
        object.__setattr__(self, "retrieval_threshold", threshold)
        # validates floor / accept threshold
        object.__setattr__(self, "_correction", CorrectionConfig(
            candidate_floor=self.candidate_floor,
            accept_threshold=self.accept_threshold,
            weights=self.weights,
            k_min=self.k_min,
            k_max=self.k_max,
        ))
        object.__setattr__(self, "candidate_floor", self._correction.candidate_floor)
        object.__setattr__(self, "accept_threshold", self._correction.accept_threshold)

    @property
    def correction(self) -> CorrectionConfig:
        return self._correction

    def as_pairs(self) -> list[tuple[str, str]]:
        """Flat ``key=value`` view, the same keys a config file accepts."""
        w = self.weights
        return [
            ("k_min", str(self.k_min)),
            ("k_max", str(self.k_max)),
            ("w_phonetic", str(w.phonetic)),
            ("w_lexicon", str(w.lexicon)),
            ("w_context", str(w.context)),
            ("w_domain", str(w.domain)),
            ("candidate_floor", str(self.candidate_floor)),
            ("accept_threshold", str(self.accept_threshold)),
            ("retrieval_threshold", str(self.retrieval_threshold)),
            ("correction", "on" if self.correction_enabled else "off"),
        ]

    @classmethod
    def from_pairs(cls, pairs: dict[str, str], base: Optional["PipelineConfig"] = None):
        """Build a config from string values; unknown keys raise ``KeyError``."""
        base = base or cls()
        known = dict(base.as_pairs())
        unknown = set(pairs) - set(known)
        if unknown:
            raise KeyError(f"unknown config key(s): {', '.join(sorted(unknown))}")
        merged = {**known, **pairs}
        switch = merged["correction"].strip().lower()
        if switch not in ("on", "off", "true", "false", "1", "0", "yes", "no"):
            raise ValueError(f"correction must be on or off, got {switch!r}")
        return cls(
            k_min=int(merged["k_min"]),
            k_max=int(merged["k_max"]),
            weights=FactorWeights(
                phonetic=Fraction(merged["w_phonetic"]),
                lexicon=Fraction(merged["w_lexicon"]),
                context=Fraction(merged["w_context"]),
                domain=Fraction(merged["w_domain"]),
            ),
            candidate_floor=Fraction(merged["candidate_floor"]),
            accept_threshold=Fraction(merged["accept_threshold"]),
            retrieval_threshold=Fraction(merged["retrieval_threshold"]),
            correction_enabled=switch in ("on", "true", "1", "yes"),
        )

    def fingerprint(self) -> str:
        """Hash of the settings that shape canonical tokens and scores.

        The retrieval threshold is left out: it only gates results, so
        changing it must not invalidate an index.
        """
        text = "\n".join(
            f"{k}={v}" for k, v in self.as_pairs() if k != "retrieval_threshold"
        )
        return hashlib.sha256(text.encode()).hexdigest()


@dataclass(frozen=True)
class TokenTrace:
    surface: str
    after_etymology: str
    stage1: TokenStatus
    after_correction: Optional[str] = None
    after_synonym: Optional[str] = None
    stage2: Optional[TokenStatus] = None

    @property
    def survives(self) -> bool:
        return self.stage2 is not None and self.stage2 is not TokenStatus.FILTERED


@dataclass(frozen=True)
class PreprocessedText:
    canonical_tokens: tuple[str, ...]
    traces: tuple[TokenTrace, ...]

    def after_etymology(self) -> list[str]:
        return [t.after_etymology for t in self.traces]

    def after_stage1(self) -> list[str]:
        return [t.after_etymology for t in self.traces if t.after_correction is not None]

    def after_correction(self) -> list[str]:
        return [t.after_correction for t in self.traces if t.after_correction is not None]

    def after_synonym(self) -> list[str]:
        return [t.after_synonym for t in self.traces if t.after_synonym is not None]


def tokenize(text: str) -> list[str]:
    """Split on whitespace/punctuation and upper-case; order and repeats kept."""
    return [fold(tok) for tok in _TOKEN.findall(text)]


def preprocess(
    text: str, bundle: LexiconBundle, config: PipelineConfig | None = None
) -> PreprocessedText:
    config = config or PipelineConfig()
    surfaces = tokenize(text)

    # etymology + stage 1
    first = []
    for surface in surfaces:
        if surface in bundle.exceptions.words:
            first.append((surface, surface, TokenStatus.EXCEPTION))
            continue
        root = root_of(surface, bundle)
        first.append((surface, root, _STATUS[classify_token(root, Stage.STAGE1, bundle)]))

    content_positions = [i for i, (_, _, st) in enumerate(first) if st is TokenStatus.KEPT]

    traces = []
    for i, (surface, root, status) in enumerate(first):
        if status is TokenStatus.FILTERED:
            traces.append(TokenTrace(surface, root, status))
            continue
        if status is TokenStatus.EXCEPTION:
            traces.append(
                TokenTrace(surface, root, status, root, root, TokenStatus.EXCEPTION)
            )
            continue
        corrected = root
        if config.correction_enabled:
            context = {first[j][1] for j in content_positions if j != i}
            corrected = correct_word(
                root, context, bundle, config.weights, config.correction
            ).replacement
        synonym = canonical_synonym(corrected, bundle)
        stage2 = _STATUS[classify_token(synonym, Stage.STAGE2, bundle)]
        traces.append(TokenTrace(surface, root, status, corrected, synonym, stage2))

    canonical = tuple(t.after_synonym for t in traces if t.survives)
    return PreprocessedText(canonical, tuple(traces))

