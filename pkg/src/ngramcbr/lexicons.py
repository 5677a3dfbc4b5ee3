"""Knowledge-engineer tables: loading, validation, serialization and lookups.

A lexicon directory holds up to seven tab-separated UTF-8 files::

    etymology.tsv       SURFACE<TAB>ROOT
    synonyms.tsv        CANONICAL<TAB>MEMBER1,MEMBER2,...
    function_words.txt  one word per line (removed before correction)
    noise_words.txt     one word per line (removed at the final stage)
    exceptions.txt      one word per line (never filtered or corrected)
    domain.txt          one word per line
    pragmatic.tsv       ROOT<TAB>KW1,KW2,...
    phonemes.tsv        GRAPHEME<TAB>/p/

Only ``etymology.tsv`` is required. ``#`` lines and blank lines are skipped.
All words are folded to upper case (ASCII letters only).
"""

from __future__ import annotations

import enum
import hashlib
import string
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ParseError, ValidationError

_UPPER = str.maketrans(string.ascii_lowercase, string.ascii_uppercase)

ETYMOLOGY_FILE = "etymology.tsv"
SYNONYMS_FILE = "synonyms.tsv"
FUNCTION_WORDS_FILE = "function_words.txt"
NOISE_WORDS_FILE = "noise_words.txt"
EXCEPTIONS_FILE = "exceptions.txt"
DOMAIN_FILE = "domain.txt"
PRAGMATIC_FILE = "pragmatic.tsv"
PHONEMES_FILE = "phonemes.tsv"


def fold(word: str) -> str:
    """Upper-case ASCII letters; everything else passes through unchanged."""
    return word.translate(_UPPER)


def identity_phoneme(char: str) -> str:
    return f"/{char.lower()}/"


@dataclass(frozen=True)
class EtymologyLexicon:
    entries: dict[str, str] = field(default_factory=dict)

    def root_of(self, word: str) -> str:
        return self.entries.get(word, word)


@dataclass(frozen=True)
class SynonymSet:
    canonical: str
    members: frozenset[str]


@dataclass(frozen=True)
class SynonymTable:
    sets: tuple[SynonymSet, ...] = ()
    _canonical: dict[str, str] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        object.__setattr__(
            self, "sets", tuple(sorted(self.sets, key=lambda syn: syn.canonical))
        )
        lookup: dict[str, str] = {}
        for syn in self.sets:
            if syn.canonical not in syn.members:
                raise ValidationError(
                    f"synonym set {syn.canonical}: canonical word is not a member"
                )
            for member in syn.members:
                if member in lookup:
                    raise ValidationError(
                        f"{member} belongs to synonym sets {lookup[member]} "
                        f"and {syn.canonical}"
                    )
                lookup[member] = syn.canonical
        object.__setattr__(self, "_canonical", lookup)

    def canonical_of(self, root: str) -> str:
        return self._canonical.get(root, root)

    @property
    def members(self) -> frozenset[str]:
        return frozenset(self._canonical)


@dataclass(frozen=True)
class StopLists:
    function_words: frozenset[str] = frozenset()
    noise_words: frozenset[str] = frozenset()


@dataclass(frozen=True)
class ExceptionList:
    words: frozenset[str] = frozenset()


@dataclass(frozen=True)
class PragmaticKnowledge:
    keywords: dict[str, frozenset[str]] = field(default_factory=dict)

    def of(self, root: str) -> frozenset[str]:
        return self.keywords.get(root, frozenset())


@dataclass(frozen=True)
class DomainProfile:
    keywords: frozenset[str] = frozenset()


@dataclass(frozen=True)
class PhonemeRules:
    """Grapheme to phoneme table, applied longest match first.

    Every ASCII letter gets an identity rule (``A`` -> ``/a/``) unless the
    table already provides one, so ``rules`` is total over A-Z.
    """

    rules: dict[str, str] = field(default_factory=dict)
    longest: int = field(default=1, init=False, compare=False)

    def __post_init__(self):
        rules = dict(self.rules)
        for letter in string.ascii_uppercase:
            rules.setdefault(letter, identity_phoneme(letter))
        object.__setattr__(self, "rules", rules)
        object.__setattr__(self, "longest", max(map(len, rules)))


class TokenClass(str, enum.Enum):
    EXCEPTION = "exception"
    FILTERED = "filtered"
    CONTENT = "content"


class Stage(str, enum.Enum):
    STAGE1 = "stage1"
    STAGE2 = "stage2"


@dataclass(frozen=True)
class LexiconBundle:
    etymology: EtymologyLexicon = field(default_factory=EtymologyLexicon)
    synonyms: SynonymTable = field(default_factory=SynonymTable)
    stops: StopLists = field(default_factory=StopLists)
    exceptions: ExceptionList = field(default_factory=ExceptionList)
    pragmatic: PragmaticKnowledge = field(default_factory=PragmaticKnowledge)
    domain: DomainProfile = field(default_factory=DomainProfile)
    phonemes: PhonemeRules = field(default_factory=PhonemeRules)
    vocabulary: frozenset[str] = field(init=False)

    def __post_init__(self):
        _validate(self)
        vocabulary = (
            set(self.etymology.entries.values())
            | self.synonyms.members
            | set(self.pragmatic.keywords)
        )
        object.__setattr__(self, "vocabulary", frozenset(vocabulary))

    def fingerprint(self) -> str:
        digest = hashlib.sha256()
        for name, text in sorted(serialize_bundle(self).items()):
            digest.update(name.encode())
            digest.update(b"\0")
            digest.update(text.encode("utf-8"))
            digest.update(b"\0")
        return digest.hexdigest()


def _validate(bundle: LexiconBundle) -> None:
    entries = bundle.etymology.entries
    for surface, root in entries.items():
        if not root:
            raise ValidationError(f"etymology: {surface} maps to an empty root")
        if root in entries and entries[root] != root:
            raise ValidationError(
                f"etymology: chain {surface} -> {root} -> {entries[root]} "
                "is deeper than one step"
            )
    exceptions = bundle.exceptions.words
    for name, words in (
        ("function_words", bundle.stops.function_words),
        ("noise_words", bundle.stops.noise_words),
    ):
        clash = words & exceptions
        if clash:
            raise ValidationError(
                f"{name}: {', '.join(sorted(clash))} also on the exception list"
            )
    for root, keywords in bundle.pragmatic.keywords.items():
        if not keywords:
            raise ValidationError(f"pragmatic: {root} has no keywords")


def root_of(word: str, bundle: LexiconBundle) -> str:
    return bundle.etymology.root_of(word)


def canonical_synonym(root: str, bundle: LexiconBundle) -> str:
    return bundle.synonyms.canonical_of(root)


def classify_token(word: str, stage: Stage | str, bundle: LexiconBundle) -> TokenClass:
    """Exception-list words win at both stages; otherwise check that stage's list."""
    stage = Stage(stage)
    if word in bundle.exceptions.words:
        return TokenClass.EXCEPTION
    stops = (
        bundle.stops.function_words
        if stage is Stage.STAGE1
        else bundle.stops.noise_words
    )
    return TokenClass.FILTERED if word in stops else TokenClass.CONTENT


# -- file format -------------------------------------------------------------


def _records(path: Path, nfields: int) -> Iterator[tuple[int, list[str]]]:
    if not path.exists():
        return
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = [fold(f.strip()) for f in line.split("\t")]
            if len(fields) != nfields or not all(fields):
                raise ParseError(
                    path, lineno, f"expected {nfields} non-empty tab-separated field(s)"
                )
            yield lineno, fields


def _word_list(path: Path, lineno: int, text: str) -> frozenset[str]:
    words = [fold(w.strip()) for w in text.split(",")]
    if not all(words):
        raise ParseError(path, lineno, "empty entry in comma-separated list")
    return frozenset(words)


def _read_words(path: Path) -> frozenset[str]:
    return frozenset(fields[0] for _, fields in _records(path, 1))


def load_lexicon_bundle(directory) -> LexiconBundle:
    directory = Path(directory)
    etymology_path = directory / ETYMOLOGY_FILE
    if not etymology_path.is_file():
        raise ValidationError(f"{etymology_path}: required file is missing")

    entries: dict[str, str] = {}
    for lineno, (surface, root) in _records(etymology_path, 2):
        if entries.get(surface, root) != root:
            raise ValidationError(
                f"{etymology_path}:{lineno}: {surface} already maps to {entries[surface]}"
            )
        entries[surface] = root

    synonym_path = directory / SYNONYMS_FILE
    sets = []
    for lineno, (canonical, members) in _records(synonym_path, 2):
        sets.append(
            SynonymSet(canonical, _word_list(synonym_path, lineno, members) | {canonical})
        )

    pragmatic_path = directory / PRAGMATIC_FILE
    pragmatic: dict[str, frozenset[str]] = {}
    for lineno, (root, keywords) in _records(pragmatic_path, 2):
        pragmatic[root] = pragmatic.get(root, frozenset()) | _word_list(
            pragmatic_path, lineno, keywords
        )

    phonemes: dict[str, str] = {}
    for _, (grapheme, symbol) in _records(directory / PHONEMES_FILE, 2):
        phonemes[grapheme] = symbol.lower()

    return LexiconBundle(
        etymology=EtymologyLexicon(entries),
        synonyms=SynonymTable(tuple(sets)),
        stops=StopLists(
            function_words=_read_words(directory / FUNCTION_WORDS_FILE),
            noise_words=_read_words(directory / NOISE_WORDS_FILE),
        ),
        exceptions=ExceptionList(_read_words(directory / EXCEPTIONS_FILE)),
        pragmatic=PragmaticKnowledge(pragmatic),
        domain=DomainProfile(_read_words(directory / DOMAIN_FILE)),
        phonemes=PhonemeRules(phonemes),
    )


def _lines(rows: Iterable[str]) -> str:
    return "".join(f"{row}\n" for row in rows)


def serialize_bundle(bundle: LexiconBundle) -> dict[str, str]:
    """Render every table to its file text; sorted, so output is canonical."""
    return {
        ETYMOLOGY_FILE: _lines(
            f"{s}\t{r}" for s, r in sorted(bundle.etymology.entries.items())
        ),
        SYNONYMS_FILE: _lines(
            f"{syn.canonical}\t{','.join(sorted(syn.members))}"
            for syn in bundle.synonyms.sets
        ),
        FUNCTION_WORDS_FILE: _lines(sorted(bundle.stops.function_words)),
        NOISE_WORDS_FILE: _lines(sorted(bundle.stops.noise_words)),
        EXCEPTIONS_FILE: _lines(sorted(bundle.exceptions.words)),
        DOMAIN_FILE: _lines(sorted(bundle.domain.keywords)),
        PRAGMATIC_FILE: _lines(
            f"{root}\t{','.join(sorted(kws))}"
            for root, kws in sorted(bundle.pragmatic.keywords.items())
        ),
        PHONEMES_FILE: _lines(
            f"{g}\t{p}" for g, p in sorted(bundle.phonemes.rules.items())
        ),
    }


def save_lexicon_bundle(bundle: LexiconBundle, directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, text in serialize_bundle(bundle).items():
        (directory / name).write_text(text, encoding="utf-8")


def shipped_lexicon_dir(name: str = "walkthrough") -> Path:
    """Directory of one of the lexicon bundles bundled with the package."""
    return Path(__file__).parent / "data" / name
