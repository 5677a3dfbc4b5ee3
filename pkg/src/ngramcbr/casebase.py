"""Case base parsing and the persisted, fingerprinted case index.

Case base file: one ``ID<TAB>PROBLEM<TAB>SOLUTION`` record per line, with
``\\t``, ``\\n`` and ``\\\\`` escapes inside fields and ``#`` comment lines.

Index file::

    NGRAMCBR-INDEX v1
    bundle<TAB><sha256 of the lexicon bundle>
    config<TAB><sha256 of the pipeline config>
    cases<TAB><count>
    <ID><TAB><PROBLEM><TAB><SOLUTION><TAB><TOKEN TOKEN ...>
    ...
    end
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import IndexFormatError, ParseError, StaleIndexError, ValidationError
from .lexicons import LexiconBundle
from .pipeline import PipelineConfig, preprocess

INDEX_MAGIC = "NGRAMCBR-INDEX v1"

_ESCAPES = {"t": "\t", "n": "\n", "\\": "\\"}


def escape_field(text: str) -> str:
    return text.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def unescape_field(text: str) -> str:
    out = []
    chars = iter(text)
    for ch in chars:
        if ch != "\\":
            out.append(ch)
            continue
        nxt = next(chars, None)
        if nxt not in _ESCAPES:
            raise ValueError(f"bad escape sequence \\{nxt or ''}")
        out.append(_ESCAPES[nxt])
    return "".join(out)


@dataclass(frozen=True)
class Case:
    id: str
    problem: str
    solution: str


@dataclass(frozen=True)
class IndexEntry:
    case: Case
    canonical_tokens: tuple[str, ...]


@dataclass(frozen=True)
class CaseIndex:
    entries: tuple[IndexEntry, ...]
    bundle_fingerprint: str
    config_fingerprint: str

    def __len__(self):
        return len(self.entries)

    def check_current(self, bundle: LexiconBundle, config: PipelineConfig) -> None:
        if self.bundle_fingerprint != bundle.fingerprint():
            raise StaleIndexError("lexicon bundle")
        if self.config_fingerprint != config.fingerprint():
            raise StaleIndexError("pipeline configuration")


def parse_casebase(path) -> list[Case]:
    path = Path(path)
    cases: list[Case] = []
    seen: dict[str, int] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise ParseError(path, lineno, "expected ID<TAB>PROBLEM<TAB>SOLUTION")
            try:
                case_id, problem, solution = (unescape_field(f) for f in fields)
            except ValueError as exc:
                raise ParseError(path, lineno, str(exc)) from None
            case_id = case_id.strip()
            if not case_id or not problem.strip():
                raise ParseError(path, lineno, "case id and problem must be non-empty")
            if case_id in seen:
                raise ValidationError(
                    f"{path}:{lineno}: duplicate case id {case_id} "
                    f"(first seen on line {seen[case_id]})"
                )
            seen[case_id] = lineno
            cases.append(Case(case_id, problem, solution))
    return cases


def build_index(cases, bundle: LexiconBundle, config: PipelineConfig) -> CaseIndex:
    entries = tuple(
        IndexEntry(case, preprocess(case.problem, bundle, config).canonical_tokens)
        for case in cases
    )
    return CaseIndex(entries, bundle.fingerprint(), config.fingerprint())


def dump_index(index: CaseIndex) -> str:
    lines = [
        INDEX_MAGIC,
        f"bundle\t{index.bundle_fingerprint}",
        f"config\t{index.config_fingerprint}",
        f"cases\t{len(index.entries)}",
    ]
    for entry in index.entries:
        case = entry.case
        lines.append(
            "\t".join(
                [
                    escape_field(case.id),
                    escape_field(case.problem),
                    escape_field(case.solution),
                    " ".join(entry.canonical_tokens),
                ]
            )
        )
    lines.append("end")
    return "\n".join(lines) + "\n"


def save_index(index: CaseIndex, path) -> None:
    Path(path).write_text(dump_index(index), encoding="utf-8")


def _header(lines: list[str], i: int, key: str) -> str:
    if i >= len(lines):
        raise IndexFormatError(f"truncated index: missing {key!r} header")
    name, _, value = lines[i].partition("\t")
    if name != key or not value:
        raise IndexFormatError(f"line {i + 1}: expected {key!r} header")
    return value


def parse_index(text: str) -> CaseIndex:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != INDEX_MAGIC:
        raise IndexFormatError(f"not an index file (expected {INDEX_MAGIC!r} header)")
    bundle_fp = _header(lines, 1, "bundle")
    config_fp = _header(lines, 2, "config")
    try:
        count = int(_header(lines, 3, "cases"))
    except ValueError:
        raise IndexFormatError("line 4: case count is not an integer") from None
    body = lines[4:]
    if len(body) != count + 1 or body[-1] != "end":
        raise IndexFormatError(
            f"truncated or corrupt index: expected {count} records and an end marker"
        )
    entries = []
    for offset, line in enumerate(body[:-1], 5):
        fields = line.split("\t")
        if len(fields) != 4:
            raise IndexFormatError(f"line {offset}: expected 4 tab-separated fields")
        try:
            case = Case(*(unescape_field(f) for f in fields[:3]))
        except ValueError as exc:
            raise IndexFormatError(f"line {offset}: {exc}") from None
        entries.append(IndexEntry(case, tuple(fields[3].split())))
    return CaseIndex(tuple(entries), bundle_fp, config_fp)


def load_index(
    path,
    bundle: LexiconBundle,
    config: PipelineConfig,
    verify: bool = False,
) -> CaseIndex:
    """Read an index and refuse it if built from other lexicons or settings.

    With ``verify=True`` every entry is also re-preprocessed and compared.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise IndexFormatError(f"{path}: not UTF-8 text ({exc.reason})") from None
    index = parse_index(text)
    index.check_current(bundle, config)
    if verify:
        for entry in index.entries:
            fresh = preprocess(entry.case.problem, bundle, config).canonical_tokens
            if fresh != entry.canonical_tokens:
                raise StaleIndexError(f"canonical form for case {entry.case.id}")
    return index
