import hypothesis.strategies as st
import pytest
from hypothesis import given

from summer.tokens import (
    CharCategory,
    classify_char,
    find_matches,
    tokenize,
)


def texts(token_texts):
    return [t.text for t in token_texts.tokens]


class TestClassifyChar:
    @pytest.mark.parametrize(
        "ch,cat",
        [
            ("5", CharCategory.DIGIT),
            ("_", CharCategory.SYMBOL),
            ("\t", CharCategory.WHITESPACE),
            ("a", CharCategory.LETTER),
            ("Z", CharCategory.LETTER),
            ("+", CharCategory.SYMBOL),
            (" ", CharCategory.WHITESPACE),
            ("\n", CharCategory.WHITESPACE),
            ("\r", CharCategory.WHITESPACE),
            ("é", CharCategory.LETTER),
            ("٣", CharCategory.DIGIT),  # Arabic-Indic decimal digit
        ],
    )
    def test_categories(self, ch, cat):
        assert classify_char(ch) is cat

    @given(st.characters())
    def test_total_function(self, ch):
        assert classify_char(ch) in CharCategory


class TestTokenize:
    def test_mixed_number_literal(self):
        assert texts(tokenize("n=0xFF_0f")) == ["n", "=", "0", "xFF", "_", "0", "f"]

    def test_empty(self):
        assert tokenize("").tokens == ()

    def test_symbols_stand_alone(self):
        assert texts(tokenize("i++")) == ["i", "+", "+"]

    def test_whitespace_run(self):
        assert texts(tokenize("  \tfoo")) == ["  \t", "foo"]

    @given(st.text(max_size=200))
    def test_partition(self, s):
        assert "".join(texts(tokenize(s))) == s

    @given(st.text(max_size=200))
    def test_maximality_and_symbol_singletons(self, s):
        toks = tokenize(s).tokens
        for tok in toks:
            assert tok.text
            assert all(classify_char(c) is tok.category for c in tok.text)
            if tok.category is CharCategory.SYMBOL:
                assert len(tok.text) == 1
        for a, b in zip(toks, toks[1:]):
            if a.category is not CharCategory.SYMBOL:
                assert a.category is not b.category

    @given(st.text(max_size=200))
    def test_offsets_contiguous(self, s):
        pos = 0
        for tok in tokenize(s).tokens:
            assert tok.offset == pos
            pos = tok.end
        assert pos == len(s)

    @given(st.text(max_size=120))
    def test_idempotence(self, s):
        once = texts(tokenize(s))
        again = texts(tokenize("".join(once)))
        assert once == again


def brute_force_matches(source: str, needle: str) -> list[int]:
    """Independent oracle: check every offset against the boundary set."""
    bounds = {0, len(source)}
    for tok in tokenize(source).tokens:
        bounds.add(tok.offset)
        bounds.add(tok.end)
    out = []
    i = 0
    while i <= len(source) - len(needle):
        if (
            source.startswith(needle, i)
            and i in bounds
            and (i + len(needle)) in bounds
        ):
            out.append(i)
            i += len(needle)
        else:
            i += 1
    return out


class TestFindMatches:
    def test_word_boundary_rejects_interior(self):
        ts = tokenize("public class Republican")
        assert find_matches(ts, "public") == [0]

    def test_single_symbol(self):
        assert find_matches(tokenize("i+=1"), "+") == [1]

    def test_no_interior_boundary(self):
        assert find_matches(tokenize("aaaa"), "aa") == brute_force_matches("aaaa", "aa") == []

    def test_empty_needle_rejected(self):
        with pytest.raises(ValueError):
            find_matches(tokenize("x"), "")

    @given(st.text(max_size=80), st.text(min_size=1, max_size=6))
    def test_matches_agree_with_oracle(self, source, needle):
        assert find_matches(tokenize(source), needle) == brute_force_matches(
            source, needle
        )

    @given(st.text(max_size=80), st.text(min_size=1, max_size=6))
    def test_boundary_soundness(self, source, needle):
        ts = tokenize(source)
        for start in find_matches(ts, needle):
            assert ts.is_boundary(start)
            assert ts.is_boundary(start + len(needle))
