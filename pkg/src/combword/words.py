"""Words over explicit alphabets, their distinct subwords, and letter bijections.

The canonical ordering of subwords used everywhere downstream is
(length, first-occurrence start index), with the empty subword at index 0.
That key depends only on where subwords occur, never on which letters they
contain, which is what keeps every derived structure invariant under a
one-to-one relabeling of the alphabet.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

EPSILON = ""


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of distinct single-character symbols."""

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise ValueError("alphabet must be non-empty")
        for ch in self.letters:
            if not isinstance(ch, str) or len(ch) != 1:
                raise ValueError(f"alphabet symbol {ch!r} is not a single character")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("alphabet contains duplicate symbols")

    @classmethod
    def of(cls, symbols: str) -> "Alphabet":
        return cls(tuple(symbols))

    @cached_property
    def _members(self) -> frozenset[str]:
        return frozenset(self.letters)

    @cached_property
    def positions(self) -> dict[str, int]:
        return {ch: i for i, ch in enumerate(self.letters)}

    def __contains__(self, ch: str) -> bool:
        return ch in self._members

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)


@dataclass(frozen=True)
class Word:
    """A non-empty sequence of letters drawn from a fixed alphabet."""

    text: str
    alphabet: Alphabet

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("empty word")
        for i, ch in enumerate(self.text):
            if ch not in self.alphabet:
                raise ValueError(f"symbol {ch!r} at position {i} is not in the alphabet")

    def __len__(self) -> int:
        return len(self.text)

    def __str__(self) -> str:
        return self.text

    @property
    def distinct_letters(self) -> frozenset[str]:
        return frozenset(self.text)


def as_text(word: "Word | str") -> str:
    """Accept either a Word or a plain string and return the raw text."""
    return word.text if isinstance(word, Word) else word


@dataclass(frozen=True)
class Bijection:
    """An injective letter map, stored as sorted (source, target) pairs."""

    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        sources = [s for s, _ in self.pairs]
        targets = [t for _, t in self.pairs]
        if len(set(sources)) != len(sources):
            raise ValueError("bijection maps a source letter twice")
        if len(set(targets)) != len(targets):
            raise ValueError("bijection is not injective")

    @classmethod
    def from_mapping(cls, mapping: dict[str, str]) -> "Bijection":
        return cls(tuple(sorted(mapping.items())))

    @cached_property
    def forward(self) -> dict[str, str]:
        return dict(self.pairs)

    def inverse(self) -> "Bijection":
        return Bijection(tuple(sorted((t, s) for s, t in self.pairs)))

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class SubwordEntry:
    """One distinct subword: its content, length, and first-occurrence start."""

    content: str
    length: int
    start: int


@dataclass(frozen=True)
class SubwordTable:
    """All distinct contiguous subwords of a word, canonically ordered.

    Entry 0 is the empty subword; entries 1..D-1 are sorted ascending by
    (length, first-occurrence start), a key that is unique per entry.
    """

    word: Word
    entries: tuple[SubwordEntry, ...]

    @cached_property
    def _index(self) -> dict[str, int]:
        return {e.content: i for i, e in enumerate(self.entries)}

    def index_of(self, content: str) -> int:
        try:
            return self._index[content]
        except KeyError:
            raise ValueError(f"{content!r} is not a subword of {self.word.text!r}") from None

    def __contains__(self, content: str) -> bool:
        return content in self._index

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> SubwordEntry:
        return self.entries[i]


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Validate text against an alphabet and wrap it as a Word."""
    if not text:
        raise ValueError("empty word")
    return Word(text, alphabet)


def word_over_own_letters(text: str) -> Word:
    """Wrap text as a Word whose alphabet is its own distinct letters, sorted."""
    if not text:
        raise ValueError("empty word")
    return Word(text, Alphabet(tuple(sorted(set(text)))))


def max_table_size(n: int) -> int:
    """Upper bound on the number of table entries for a word of length n."""
    if n < 1:
        raise ValueError(f"word length must be >= 1, got {n}")
    return n * (n + 1) // 2 + 1


def distinct_subwords(word: Word | str) -> SubwordTable:
    """Enumerate every distinct contiguous subword, canonically ordered.

    Enumeration is the plain O(n^2) substring sweep into a dict; words here
    are short and this keeps first-occurrence bookkeeping obvious.
    """
    w = word if isinstance(word, Word) else word_over_own_letters(word)
    text = w.text
    n = len(text)
    firsts: dict[str, int] = {}
    for length in range(1, n + 1):
        for start in range(n - length + 1):
            firsts.setdefault(text[start : start + length], start)
    ordered = sorted(firsts.items(), key=lambda kv: (len(kv[0]), kv[1]))
    entries = [SubwordEntry(EPSILON, 0, 0)]
    entries.extend(SubwordEntry(s, len(s), i) for s, i in ordered)
    return SubwordTable(w, tuple(entries))


def apply_bijection(word: Word, phi: Bijection) -> Word:
    """Relabel a word letterwise through an injective map."""
    fwd = phi.forward
    out = []
    for ch in word.text:
        if ch not in fwd:
            raise ValueError(f"letter {ch!r} is not mapped by the bijection")
        out.append(fwd[ch])
    mapped = "".join(out)
    if all(ch in word.alphabet for ch in mapped):
        return Word(mapped, word.alphabet)
    return word_over_own_letters(mapped)


def is_palindrome(word: Word | str) -> bool:
    text = as_text(word)
    return text == text[::-1]
