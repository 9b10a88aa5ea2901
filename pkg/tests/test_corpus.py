import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from punctnet.corpus import (
    CHAPTER_SENTINEL,
    CleaningConfig,
    SourceSpan,
    Token,
    TokenKind,
    aggregate_fullstops,
    clean_text,
    corpus_from_surfaces,
    merge_corpora,
    read_text_file,
    read_tokens,
    tokenize,
    write_tokens,
)


def surfaces(corpus):
    return [t.surface for t in corpus.tokens]


class TestCleanText:
    def test_abbreviation_dot_removed(self, english_cfg):
        assert clean_text("Mrs. Dalloway said.", english_cfg) == "Mrs Dalloway said."

    def test_empty(self, english_cfg):
        assert clean_text("", english_cfg) == ""

    def test_strip_list(self):
        cfg = CleaningConfig(strip_chars='"()')
        assert clean_text('"Hello," (he said).', cfg) == "Hello, he said."

    def test_dashes_become_spaces(self, english_cfg):
        assert clean_text("so — well -- done", english_cfg) == "so   well   done"

    def test_keep_dashes_flag(self):
        cfg = CleaningConfig(strip_dashes=False)
        assert "--" in clean_text("well -- done", cfg)

    def test_chapter_heading_becomes_sentinel(self, english_cfg):
        cleaned = clean_text("CHAPTER IV\n\nIt began.", english_cfg)
        assert cleaned.split("\n")[0] == CHAPTER_SENTINEL

    def test_spaced_ellipsis_normalized(self, english_cfg):
        assert clean_text("well . . . gone", english_cfg) == "well ... gone"

    def test_contraction_apostrophe_survives_quote_stripping(self, english_cfg):
        cleaned = clean_text("don’t ‘quote’", english_cfg)
        assert cleaned == "don't quote"

    def test_bad_abbreviation_rejected(self):
        with pytest.raises(ValueError):
            CleaningConfig(abbreviations=("Mrs",))
        with pytest.raises(ValueError):
            CleaningConfig(abbreviations=("Mr.", "Mr."))


class TestTokenize:
    def test_mark_classes(self):
        corpus = tokenize("Did she? Yes... go.")
        assert surfaces(corpus) == ["did", "she", "#qu", "yes", "#ell", "go", "#dot"]

    def test_single_word(self):
        assert surfaces(tokenize("a")) == ["a"]

    def test_comma_semicolon_colon(self):
        corpus = tokenize("One, two; three: four.")
        assert surfaces(corpus) == ["one", "#com", "two", "#scol", "three", "#col", "four", "#dot"]

    def test_ender_runs_collapse_by_first_mark(self):
        assert surfaces(tokenize("What?! Stop!! Go?...")) == [
            "what", "#qu", "stop", "#ex", "go", "#qu",
        ]

    def test_ellipsis_forms(self):
        assert surfaces(tokenize("so… and....")) == ["so", "#ell", "and", "#ell"]

    def test_chapter_sentinel_line(self):
        corpus = tokenize("one.\n" + CHAPTER_SENTINEL + "\ntwo.")
        assert surfaces(corpus) == ["one", "#dot", "#chap", "two", "#dot"]
        assert corpus.tokens[2].kind is TokenKind.CHAPTER

    def test_unknown_symbols_dropped_and_counted(self):
        corpus = tokenize("cost 5 % more +")
        assert surfaces(corpus) == ["cost", "5", "more"]
        assert corpus.dropped == {"%": 1, "+": 1}

    def test_word_internal_hyphen_apostrophe(self):
        assert surfaces(tokenize("Don't re-enter.")) == ["don't", "re-enter", "#dot"]

    def test_numerals_kept(self):
        assert surfaces(tokenize("in 1840 came")) == ["in", "1840", "came"]

    def test_word_surfaces_contain_no_mark_characters(self, english_cfg):
        cleaned = clean_text("He said: “well, now” — twice!", english_cfg)
        for tok in tokenize(cleaned).tokens:
            if tok.kind is TokenKind.WORD:
                assert tok.surface
                assert not set(tok.surface) & set(".?!,:;…#")

    def test_sources_cover_token_range(self):
        corpus = tokenize("a b c.", title="t")
        assert corpus.sources == [SourceSpan("t", 0, 4)]


class TestAggregateFullstops:
    def test_replaces_all_enders(self):
        corpus = corpus_from_surfaces(["a", "#dot", "b", "#qu"])
        assert surfaces(aggregate_fullstops(corpus)) == ["a", "#fs", "b", "#fs"]

    def test_no_enders_unchanged(self):
        corpus = corpus_from_surfaces(["a", "#com"])
        assert surfaces(aggregate_fullstops(corpus)) == ["a", "#com"]

    def test_composed_with_tokenize(self):
        assert surfaces(aggregate_fullstops(tokenize("Go! Stop."))) == ["go", "#fs", "stop", "#fs"]

    @given(st.lists(st.sampled_from(["a", "b", "#dot", "#qu", "#ex", "#ell", "#com"]), max_size=60))
    @settings(max_examples=60, deadline=None)
    def test_idempotent_and_conserving(self, items):
        corpus = corpus_from_surfaces(items)
        once = aggregate_fullstops(corpus)
        assert surfaces(aggregate_fullstops(once)) == surfaces(once)
        assert len(once) == len(corpus)
        enders = sum(1 for s in items if s in ("#dot", "#qu", "#ex", "#ell"))
        assert sum(1 for t in once.tokens if t.surface == "#fs") == enders


class TestMergeCorpora:
    def test_concatenation_offsets(self):
        a = corpus_from_surfaces(["x"] * 10, language="en", title="a")
        b = corpus_from_surfaces(["y"] * 5, language="en", title="b")
        merged = merge_corpora([a, b])
        assert len(merged) == 15
        assert merged.sources == [SourceSpan("a", 0, 10), SourceSpan("b", 10, 15)]

    def test_empty_list_error(self):
        with pytest.raises(ValueError):
            merge_corpora([])

    def test_mixed_language_error(self):
        a = corpus_from_surfaces(["x"], language="en")
        b = corpus_from_surfaces(["y"], language="pl")
        with pytest.raises(ValueError):
            merge_corpora([a, b])

    def test_source_slice_roundtrip(self):
        a = corpus_from_surfaces(["x", "y"], language="en", title="a")
        b = corpus_from_surfaces(["z"], language="en", title="b")
        merged = merge_corpora([a, b])
        assert surfaces(merged.source_slice(1)) == ["z"]
        with pytest.raises(IndexError):
            merged.source_slice(2)


class TestRoundTripAndSerialization:
    def test_word_order_matches_cleaned_text(self, english_cfg):
        import re

        raw = 'CHAPTER I\n\n"Did Mrs. May go?" he said... Then: all of us, at once!'
        cleaned = clean_text(raw, english_cfg)
        words = [t.surface for t in tokenize(cleaned).tokens if t.kind is TokenKind.WORD]
        expected = [
            w.lower()
            for line in cleaned.split("\n")
            if line.strip() != CHAPTER_SENTINEL
            for w in re.findall(r"[^\W\d_][\w'-]*|\d+", line)
        ]
        assert words == expected

    def test_tokenize_deterministic(self, english_cfg):
        raw = "One day. Another, day; again."
        a = tokenize(clean_text(raw, english_cfg))
        b = tokenize(clean_text(raw, english_cfg))
        assert a.tokens == b.tokens

    def test_token_file_roundtrip(self, tmp_path):
        corpus = tokenize("One, two. Go!", title="t", language="en")
        path = tmp_path / "t.tokens"
        write_tokens(corpus, path)
        back = read_tokens(path)
        assert back.tokens == corpus.tokens
        assert back.language == "en"
        assert back.sources == corpus.sources
        write_tokens(back, tmp_path / "t2.tokens")
        assert (tmp_path / "t.tokens").read_bytes() == (tmp_path / "t2.tokens").read_bytes()

    def test_sidecar_counts(self, tmp_path):
        corpus = tokenize("One, two. Go!")
        write_tokens(corpus, tmp_path / "t.tokens")
        meta = json.loads((tmp_path / "t.tokens.meta.json").read_text())
        assert meta["token_count"] == 6
        assert meta["kind_counts"]["comma"] == 1

    def test_unknown_mark_surface_rejected(self, tmp_path):
        path = tmp_path / "bad.tokens"
        path.write_text("a\n#nope\n", encoding="utf-8")
        with pytest.raises(ValueError, match="#nope"):
            read_tokens(path)

    def test_decode_error_reports_offset(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_bytes(b"fine until \xff\xfe here")
        with pytest.raises(ValueError, match="byte 11"):
            read_text_file(path)


def test_token_is_word_helper():
    assert Token("a", TokenKind.WORD).is_word
    assert not Token("#dot", TokenKind.DOT).is_word
