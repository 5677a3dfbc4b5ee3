"""Command line interface.

Exit codes: 0 results printed, 1 nothing to report (empty result set, no
content words, or no acceptable correction), 2 usage error, 3 data error
(parse, validation, stale or corrupt index).
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from .analysis import correct_word
from .casebase import build_index, escape_field, load_index, parse_casebase, save_index
from .errors import DataError, NoContentError
from .lexicons import Stage, TokenClass, classify_token, load_lexicon_bundle, root_of
from .ngram import best_k_similarity, round_half_up
from .pipeline import PipelineConfig, PreprocessedText, preprocess, tokenize
from .retrieval import retrieve

LEXICONS_ENV = "NGRAMCBR_LEXICONS"

EXIT_OK, EXIT_EMPTY, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3

# flag dest -> config file key
_CONFIG_FLAGS = {
    "k_min": "k_min",
    "k_max": "k_max",
    "w_phonetic": "w_phonetic",
    "w_lexicon": "w_lexicon",
    "w_context": "w_context",
    "w_domain": "w_domain",
    "candidate_floor": "candidate_floor",
    "accept_threshold": "accept_threshold",
    "threshold": "retrieval_threshold",
    "correction": "correction",
}


class UsageError(Exception):
    pass


def read_config_file(path) -> dict[str, str]:
    pairs = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"{path}:{lineno}: expected key=value")
        pairs[key.strip()] = value.strip()
    return pairs


def effective_config(args) -> PipelineConfig:
    """Built-in defaults, overridden by the config file, overridden by flags."""
    pairs = read_config_file(args.config) if args.config else {}
    for dest, key in _CONFIG_FLAGS.items():
        value = getattr(args, dest, None)
        if value is not None:
            pairs[key] = str(value)
    try:
        return PipelineConfig.from_pairs(pairs)
    except (KeyError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad configuration: {exc}") from None


def _fmt(value: Fraction) -> str:
    return str(round_half_up(value))


def _lexicon_dir(args) -> str:
    directory = args.lexicons or os.environ.get(LEXICONS_ENV)
    if not directory:
        raise UsageError(f"--lexicons is required (or set {LEXICONS_ENV})")
    return directory


def format_trace(processed: PreprocessedText) -> list[str]:
    lines = ["SURFACE\tETYMOLOGY\tSTAGE1\tCORRECTION\tSYNONYM\tSTAGE2"]
    for t in processed.traces:
        cells = [
            t.surface,
            t.after_etymology,
            t.stage1.value,
            t.after_correction or "-",
            t.after_synonym or "-",
            t.stage2.value if t.stage2 else "-",
        ]
        lines.append("\t".join(cells))
    lines.append("STAGE\tTOKENS")
    for name, tokens in (
        ("etymology", processed.after_etymology()),
        ("filter", processed.after_stage1()),
        ("correction", processed.after_correction()),
        ("synonym", processed.after_synonym()),
        ("noise", list(processed.canonical_tokens)),
    ):
        lines.append(f"{name}\t{' '.join(tokens)}")
    return lines


def cmd_index(args, config, out) -> int:
    bundle = load_lexicon_bundle(_lexicon_dir(args))
    cases = parse_casebase(args.casebase)
    index = build_index(cases, bundle, config)
    save_index(index, args.out)
    print(f"indexed\t{len(index)}\t{args.out}", file=out)
    return EXIT_OK


def cmd_query(args, config, out) -> int:
    bundle = load_lexicon_bundle(_lexicon_dir(args))
    index = load_index(args.index, bundle, config)
    try:
        retrieval = retrieve(args.text, index, bundle, config)
    except NoContentError as exc:
        print(f"ngramcbr: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    for rank, result in enumerate(retrieval.results, 1):
        row = [str(rank), result.case_id, _fmt(result.case_score), escape_field(result.solution)]
        print("\t".join(row), file=out)
    if args.explain:
        print(file=out)
        for line in format_trace(retrieval.query):
            print(line, file=out)
    if not retrieval.results:
        print(
            f"ngramcbr: no case reaches threshold {_fmt(config.retrieval_threshold)}",
            file=sys.stderr,
        )
        return EXIT_EMPTY
    return EXIT_OK


def cmd_correct(args, config, out) -> int:
    bundle = load_lexicon_bundle(_lexicon_dir(args))
    context = set()
    for tok in tokenize(args.context or ""):
        root = root_of(tok, bundle)
        if classify_token(root, Stage.STAGE1, bundle) is not TokenClass.FILTERED:
            context.add(root)
    words = tokenize(args.word)
    if len(words) != 1:
        raise UsageError("correct takes exactly one word")
    word = words[0]
    result = correct_word(word, context, bundle, config.weights, config.correction)
    print(result.replacement, file=out)
    print("CANDIDATE\tLEXICON\tPHONETIC\tCONTEXT\tDOMAIN\tCOMBINED", file=out)
    for ev in result.evaluations:
        cells = [ev.f_lexicon, ev.f_phonetic, ev.f_context, ev.f_domain, ev.combined]
        print("\t".join([ev.candidate, *map(_fmt, cells)]), file=out)
    unchanged_unknown = result.replacement == word and word not in bundle.vocabulary
    return EXIT_EMPTY if unchanged_unknown else EXIT_OK


def cmd_score(args, config, out) -> int:
    if args.k is not None:
        if args.k_min is not None or args.k_max is not None:
            raise UsageError("--k cannot be combined with --kmin/--kmax")
        k_min = k_max = args.k
    else:
        k_min, k_max = config.k_min, config.k_max
    try:
        sim = best_k_similarity(args.word1, args.word2, k_min, k_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"{_fmt(sim.score)}\t{_fmt(sim.percentile)}", file=out)
    return EXIT_OK


def cmd_preprocess(args, config, out) -> int:
    bundle = load_lexicon_bundle(_lexicon_dir(args))
    processed = preprocess(args.text, bundle, config)
    print("\t".join(processed.canonical_tokens), file=out)
    for line in format_trace(processed):
        print(line, file=out)
    return EXIT_OK if processed.canonical_tokens else EXIT_EMPTY


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value configuration file")
    common.add_argument(
        "--show-config", action="store_true", help="print the effective configuration to stderr"
    )
    common.add_argument("--kmin", dest="k_min", type=_positive_int)
    common.add_argument("--kmax", dest="k_max", type=_positive_int)
    common.add_argument("--w-phonetic", type=_fraction)
    common.add_argument("--w-lexicon", type=_fraction)
    common.add_argument("--w-context", type=_fraction)
    common.add_argument("--w-domain", type=_fraction)
    common.add_argument("--candidate-floor", type=_fraction)
    common.add_argument("--accept-threshold", type=_fraction)
    common.add_argument("--threshold", type=_fraction, help="retrieval threshold, 0-100")
    common.add_argument("--correction", choices=("on", "off"))

    lexicons = argparse.ArgumentParser(add_help=False)
    lexicons.add_argument(
        "--lexicons", metavar="DIR", help=f"lexicon directory (default: ${LEXICONS_ENV})"
    )

    parser = argparse.ArgumentParser(
        prog="ngramcbr", description="N-gram case-based retrieval over a lexicon-driven pipeline"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", parents=[common, lexicons], help="preprocess a case base into an index")
    p.add_argument("--casebase", required=True, metavar="FILE")
    p.add_argument("--out", required=True, metavar="INDEX")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("query", parents=[common, lexicons], help="rank indexed cases for a problem text")
    p.add_argument("--index", required=True, metavar="INDEX")
    p.add_argument("--explain", action="store_true", help="append the per-stage token trace")
    p.add_argument("text")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("correct", parents=[common, lexicons], help="spell-correct one word")
    p.add_argument("--context", metavar="TEXT")
    p.add_argument("word")
    p.set_defaults(func=cmd_correct)

    p = sub.add_parser("score", parents=[common], help="gram score and percentile of two words")
    p.add_argument("--k", type=_positive_int)
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("preprocess", parents=[common, lexicons], help="show canonical tokens and trace")
    p.add_argument("text")
    p.set_defaults(func=cmd_preprocess)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = effective_config(args)
        if args.show_config:
            for key, value in config.as_pairs():
                print(f"{key}={value}", file=sys.stderr)
        return args.func(args, config, out)
    except UsageError as exc:
        print(f"ngramcbr: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"ngramcbr: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"ngramcbr: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
