import pytest
from hypothesis import given, strategies as st

from ngramcbr.errors import ParseError, ValidationError
from ngramcbr.lexicons import (
    EtymologyLexicon,
    LexiconBundle,
    PragmaticKnowledge,
    Stage,
    SynonymSet,
    SynonymTable,
    TokenClass,
    canonical_synonym,
    classify_token,
    fold,
    load_lexicon_bundle,
    root_of,
    save_lexicon_bundle,
)


def write(directory, **files):
    for name, text in files.items():
        (directory / name.replace("_tsv", ".tsv").replace("_txt", ".txt")).write_text(
            text, encoding="utf-8"
        )
    return directory


class TestLoading:
    def test_single_etymology_line(self, tmp_path):
        bundle = load_lexicon_bundle(write(tmp_path, etymology_tsv="HANGING\tHANG\n"))
        assert root_of("HANGING", bundle) == "HANG"

    def test_empty_etymology_only(self, tmp_path):
        bundle = load_lexicon_bundle(write(tmp_path, etymology_tsv=""))
        assert bundle.vocabulary == frozenset()
        assert bundle.etymology.entries == {}
        assert bundle.synonyms.sets == ()
        assert bundle.stops.function_words == frozenset()

    def test_missing_etymology_file(self, tmp_path):
        with pytest.raises(ValidationError, match="etymology.tsv"):
            load_lexicon_bundle(tmp_path)

    def test_chain_of_depth_two_rejected(self, tmp_path):
        write(tmp_path, etymology_tsv="A\tB\nB\tC\n")
        with pytest.raises(ValidationError, match="chain"):
            load_lexicon_bundle(tmp_path)

    def test_root_mapping_to_itself_is_allowed(self, tmp_path):
        bundle = load_lexicon_bundle(write(tmp_path, etymology_tsv="A\tB\nB\tB\n"))
        assert root_of("A", bundle) == "B"

    def test_malformed_line_names_file_and_line(self, tmp_path):
        write(tmp_path, etymology_tsv="# c\nHANGING\tHANG\nDOING\n")
        with pytest.raises(ParseError) as info:
            load_lexicon_bundle(tmp_path)
        assert info.value.line == 3
        assert "etymology.tsv" in str(info.value)

    def test_empty_root_field_rejected(self, tmp_path):
        write(tmp_path, etymology_tsv="DOING\t\n")
        with pytest.raises(ParseError):
            load_lexicon_bundle(tmp_path)

    def test_duplicate_synonym_membership(self, tmp_path):
        write(tmp_path, etymology_tsv="", synonyms_tsv="CRASH\tHANG\nFREEZE\tHANG\n")
        with pytest.raises(ValidationError, match="HANG"):
            load_lexicon_bundle(tmp_path)

    def test_stop_list_overlapping_exceptions(self, tmp_path):
        write(tmp_path, etymology_tsv="", function_words_txt="ACME\n", exceptions_txt="acme\n")
        with pytest.raises(ValidationError, match="exception"):
            load_lexicon_bundle(tmp_path)

    def test_comments_blank_lines_and_case_folding(self, tmp_path):
        write(
            tmp_path,
            etymology_tsv="# header\n\nhanging\thang\n",
            pragmatic_tsv="system\tComputer, machine\n",
        )
        bundle = load_lexicon_bundle(tmp_path)
        assert bundle.etymology.entries == {"HANGING": "HANG"}
        assert bundle.pragmatic.of("SYSTEM") == {"COMPUTER", "MACHINE"}

    def test_canonical_added_to_its_own_set(self, tmp_path):
        bundle = load_lexicon_bundle(write(tmp_path, etymology_tsv="", synonyms_tsv="S\tP,Q,R\n"))
        (syn,) = bundle.synonyms.sets
        assert syn.members == {"P", "Q", "R", "S"}

    def test_missing_letters_get_identity_phonemes(self, tmp_path):
        bundle = load_lexicon_bundle(write(tmp_path, etymology_tsv="", phonemes_tsv="PH\t/f/\n"))
        rules = bundle.phonemes.rules
        assert rules["PH"] == "/f/"
        assert rules["S"] == "/s/"
        assert all(letter in rules for letter in "ABCDEFGHIJKLMNOPQRSTUVWXYZ")

    def test_non_ascii_passes_through_fold(self):
        assert fold("café") == "CAFé"


class TestLookups:
    @pytest.mark.parametrize(
        "word, root", [("INSTALLATION", "INSTALL"), ("DOING", "DO"), ("XYZZY", "XYZZY")]
    )
    def test_root_of(self, walkthrough_bundle, word, root):
        assert root_of(word, walkthrough_bundle) == root

    @pytest.mark.parametrize(
        "root, canonical",
        [("SYSTEM", "SOFTWARE"), ("HANG", "CRASH"), ("INSTALL", "RUN"), ("SOFTWARE", "SOFTWARE")],
    )
    def test_canonical_synonym(self, walkthrough_bundle, root, canonical):
        assert canonical_synonym(root, walkthrough_bundle) == canonical

    def test_classify(self, walkthrough_bundle, tmp_path):
        assert classify_token("THE", Stage.STAGE1, walkthrough_bundle) is TokenClass.FILTERED
        assert classify_token("DO", Stage.STAGE1, walkthrough_bundle) is TokenClass.CONTENT
        assert classify_token("DO", "stage2", walkthrough_bundle) is TokenClass.FILTERED
        assert classify_token("SYSTEM", "stage2", walkthrough_bundle) is TokenClass.CONTENT

        write(tmp_path, etymology_tsv="", exceptions_txt="ACMEPRODUCT\n")
        bundle = load_lexicon_bundle(tmp_path)
        assert classify_token("ACMEPRODUCT", "stage1", bundle) is TokenClass.EXCEPTION

    def test_walkthrough_stop_lists_cover_worked_example(self, walkthrough_bundle):
        assert {"THE", "WHEN", "I", "A"} <= walkthrough_bundle.stops.function_words
        assert {"DO", "WHEN", "I", "A"} <= walkthrough_bundle.stops.noise_words
        assert "DO" not in walkthrough_bundle.stops.function_words


class TestBundleInvariants:
    @pytest.mark.parametrize("name", ["walkthrough_bundle", "support_bundle"])
    def test_vocabulary_is_the_union(self, request, name):
        bundle = request.getfixturevalue(name)
        expected = (
            set(bundle.etymology.entries.values())
            | {m for s in bundle.synonyms.sets for m in s.members}
            | set(bundle.pragmatic.keywords)
        )
        assert bundle.vocabulary == expected

    @pytest.mark.parametrize("name", ["walkthrough_bundle", "support_bundle"])
    def test_round_trip(self, request, name, tmp_path):
        bundle = request.getfixturevalue(name)
        save_lexicon_bundle(bundle, tmp_path)
        again = load_lexicon_bundle(tmp_path)
        assert again == bundle
        assert again.fingerprint() == bundle.fingerprint()

    def test_fingerprint_tracks_content(self, walkthrough_bundle, walkthrough_dir, tmp_path):
        save_lexicon_bundle(walkthrough_bundle, tmp_path)
        with (tmp_path / "noise_words.txt").open("a") as fh:
            fh.write("PROCESS\n")
        assert load_lexicon_bundle(tmp_path).fingerprint() != walkthrough_bundle.fingerprint()

    def test_canonical_outside_its_set_rejected(self):
        with pytest.raises(ValidationError):
            SynonymTable((SynonymSet("S", frozenset({"P"})),))

    def test_empty_pragmatic_set_rejected(self):
        with pytest.raises(ValidationError):
            LexiconBundle(pragmatic=PragmaticKnowledge({"X": frozenset()}))

    @given(st.text(alphabet="ABCDEFGHIJKLMNOPQRSTUVWXYZ", min_size=1, max_size=14))
    def test_root_of_idempotent(self, word):
        bundle = LexiconBundle(
            etymology=EtymologyLexicon(
                {"HANGING": "HANG", "HANG": "HANG", "DOING": "DO", "A": "B"}
            )
        )
        once = root_of(word, bundle)
        assert root_of(once, bundle) == once

    def test_root_and_synonym_idempotent_on_shipped(self, walkthrough_bundle, support_bundle):
        for bundle in (walkthrough_bundle, support_bundle):
            words = set(bundle.etymology.entries) | bundle.vocabulary
            for w in words:
                r = root_of(w, bundle)
                assert root_of(r, bundle) == r
                c = canonical_synonym(r, bundle)
                assert canonical_synonym(c, bundle) == c

    def test_exceptions_never_filtered(self, support_bundle):
        for word in support_bundle.exceptions.words:
            for stage in Stage:
                assert classify_token(word, stage, support_bundle) is TokenClass.EXCEPTION
