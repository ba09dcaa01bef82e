"""Character classification, tokenization, and token-boundary substring search.

Every piece of text the engine touches (file contents, file names) is split
into tokens of four character categories. A token is a maximal run of
same-category characters, except that each symbol character is its own token.
All pattern matching downstream is required to start and end on token
boundaries of the text being searched.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, auto
from functools import lru_cache


class CharCategory(Enum):
    DIGIT = auto()
    LETTER = auto()
    WHITESPACE = auto()
    SYMBOL = auto()


def classify_char(ch: str) -> CharCategory:
    """Classify a single character into one of the four categories.

    Whitespace and letters follow the Unicode definitions; digits are decimal
    digits (Nd). Everything else, including underscore, is a symbol.
    """
    if ch.isspace():
        return CharCategory.WHITESPACE
    if ch.isdecimal():
        return CharCategory.DIGIT
    if ch.isalpha():
        return CharCategory.LETTER
    return CharCategory.SYMBOL


@dataclass(frozen=True, slots=True)
class Token:
    """One token: its text, category, and offset into the source string."""

    text: str
    category: CharCategory
    offset: int

    @property
    def end(self) -> int:
        return self.offset + len(self.text)


@dataclass(frozen=True, slots=True, eq=False)
class TokenString:
    """A tokenized string together with its token-boundary set."""

    source: str
    tokens: tuple[Token, ...]
    boundaries: frozenset[int] = field(repr=False)

    def is_boundary(self, offset: int) -> bool:
        return offset in self.boundaries


def tokenize(s: str) -> TokenString:
    """Partition a string into maximal same-category runs; symbols stand alone.

    The concatenation of the token texts always equals the input.
    """
    tokens: list[Token] = []
    bounds = {0, len(s)}
    i = 0
    n = len(s)
    while i < n:
        cat = classify_char(s[i])
        if cat is CharCategory.SYMBOL:
            j = i + 1
        else:
            j = i + 1
            while j < n and classify_char(s[j]) is cat:
                j += 1
        tokens.append(Token(s[i:j], cat, i))
        bounds.add(i)
        bounds.add(j)
        i = j
    return TokenString(s, tuple(tokens), frozenset(bounds))


# Tokenization is referentially transparent and runs on the same bucket
# sources thousands of times during rule scoring; cache by source string.
@lru_cache(maxsize=512)
def tokenize_cached(s: str) -> TokenString:
    return tokenize(s)


def find_matches(haystack: TokenString, needle: str) -> list[int]:
    """All boundary-aligned occurrences of ``needle``, leftmost and non-overlapping.

    An occurrence qualifies only if both its start and its end offsets are
    token boundaries of the haystack. After a qualifying match ending at
    offset e, the scan resumes at e; a rejected occurrence is skipped by one
    character.
    """
    if not needle:
        raise ValueError("needle must be nonempty")
    bounds = haystack.boundaries
    src = haystack.source
    out: list[int] = []
    pos = 0
    nlen = len(needle)
    while True:
        i = src.find(needle, pos)
        if i < 0:
            return out
        if i in bounds and (i + nlen) in bounds:
            out.append(i)
            pos = i + nlen
        else:
            pos = i + 1
