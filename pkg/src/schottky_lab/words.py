"""Reduced words in the alphabet {1, ..., 2N} of a rank-N free group.

Letter a and its mirror (a + N mod 2N) are formal inverses; a word is reduced
when no letter is followed by its mirror.  Enumeration is lexicographic and
streaming, so callers can consume word sets of length ell without ever
materializing them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


def mirror_letter(a: int, n_gens: int) -> int:
    """Formal inverse of letter a in {1..2N}."""
    two_n = 2 * n_gens
    return (a + n_gens - 1) % two_n + 1


@dataclass(frozen=True)
class Word:
    """Reduced word; the empty tuple is the group identity."""

    letters: tuple[int, ...]
    n_gens: int

    def __post_init__(self):
        if self.n_gens < 2:
            raise ValueError("need rank >= 2")
        two_n = 2 * self.n_gens
        for a in self.letters:
            if not 1 <= a <= two_n:
                raise ValueError(f"letter {a} outside 1..{two_n}")
        for x, y in zip(self.letters, self.letters[1:]):
            if y == mirror_letter(x, self.n_gens):
                raise ValueError(f"word {self.letters} is not reduced")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    @property
    def start(self) -> int:
        """First letter."""
        if not self.letters:
            raise ValueError("empty word has no first letter")
        return self.letters[0]

    @property
    def end(self) -> int:
        """Last letter."""
        if not self.letters:
            raise ValueError("empty word has no last letter")
        return self.letters[-1]

    def backspace(self) -> "Word":
        """Drop the last letter."""
        return Word(self.letters[:-1], self.n_gens)

    def inverse(self) -> "Word":
        inv = tuple(mirror_letter(a, self.n_gens) for a in reversed(self.letters))
        return Word(inv, self.n_gens)

    def concat_reduced(self, other: "Word") -> "Word":
        """Concatenation, valid only when no cancellation occurs at the seam."""
        if self.letters and other.letters:
            if other.letters[0] == mirror_letter(self.letters[-1], self.n_gens):
                raise ValueError("concatenation cancels at the seam")
        return Word(self.letters + other.letters, self.n_gens)

    def splits(self) -> Iterator[tuple["Word", "Word"]]:
        """All (w1, w2) with w = w1 w2, both nonempty (reduced by construction)."""
        for k in range(1, len(self.letters)):
            yield (
                Word(self.letters[:k], self.n_gens),
                Word(self.letters[k:], self.n_gens),
            )


def _word_trusted(letters: tuple[int, ...], n_gens: int) -> Word:
    """Construct without re-validating; for enumeration-internal use only."""
    w = object.__new__(Word)
    object.__setattr__(w, "letters", letters)
    object.__setattr__(w, "n_gens", n_gens)
    return w


def words_of_length(n_gens: int, length: int) -> Iterator[Word]:
    """Stream all reduced words of exactly the given length, lexicographically.

    Iterative depth-first enumeration; validity is guaranteed by
    construction, so the per-word reducedness check is skipped (word sets
    grow like (2N-1)^length and the check would dominate the walk).
    """
    if n_gens < 2:
        raise ValueError("need rank >= 2")
    if length < 0:
        raise ValueError("length must be >= 0")
    if length == 0:
        yield Word((), n_gens)
        return
    two_n = 2 * n_gens
    rev = range(two_n, 0, -1)
    stack = [(a,) for a in rev]
    while stack:
        tup = stack.pop()
        if len(tup) == length:
            yield _word_trusted(tup, n_gens)
            continue
        banned = mirror_letter(tup[-1], n_gens)
        for a in rev:
            if a != banned:
                stack.append(tup + (a,))


def words_up_to(n_gens: int, max_length: int) -> Iterator[Word]:
    """All reduced words of length 0..max_length, by length then lexicographic."""
    for ell in range(max_length + 1):
        yield from words_of_length(n_gens, ell)


def count_words(n_gens: int, length: int) -> int:
    """|Gamma_ell| = 2N (2N-1)^(ell-1) for ell >= 1, and 1 for ell = 0."""
    if length == 0:
        return 1
    return 2 * n_gens * (2 * n_gens - 1) ** (length - 1)


def reduced_product(w1: Word, w2: Word) -> Word:
    """Group product with free reduction at the seam."""
    if w1.n_gens != w2.n_gens:
        raise ValueError("rank mismatch")
    n = w1.n_gens
    left = list(w1.letters)
    for a in w2.letters:
        if left and left[-1] == mirror_letter(a, n):
            left.pop()
        else:
            left.append(a)
    return Word(tuple(left), n)
