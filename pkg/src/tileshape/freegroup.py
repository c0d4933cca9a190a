"""Free groups on a finite alphabet and their endomorphisms."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError
from .intlat import IntMatrix

Syllable = tuple[int, int]

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise DomainError("an alphabet needs at least one letter")
        if len(set(self.letters)) != len(self.letters):
            raise DomainError(f"duplicate letters in {self.letters}")
        for name in self.letters:
            if not _IDENT.match(name):
                raise DomainError(f"bad letter name {name!r}")

    @classmethod
    def of(cls, letters: str | Iterable[str]) -> Alphabet:
        """``Alphabet.of("abc")`` or ``Alphabet.of(["x0", "x1"])``."""
        return cls(tuple(letters))

    def __len__(self):
        return len(self.letters)

    def index(self, name: str) -> int:
        try:
            return self.letters.index(name)
        except ValueError:
            raise DomainError(f"letter {name!r} not in alphabet {self.letters}") from None

    @property
    def compact(self) -> bool:
        """Single lowercase characters only, so uppercase can mean inverse."""
        return all(len(x) == 1 and x.islower() for x in self.letters)

    def parse(self, text: str) -> Word:
        """Parse a word: compact ``"abA"`` when the alphabet allows it,
        otherwise whitespace-separated tokens with ``'`` marking inverses."""
        text = text.strip()
        if text in ("", "1"):
            return Word(())
        raw = []
        if self.compact and " " not in text and "'" not in text:
            for ch in text:
                raw.append((self.index(ch.lower()), -1 if ch.isupper() else 1))
        else:
            for tok in text.split():
                if tok.endswith("'"):
                    raw.append((self.index(tok[:-1]), -1))
                else:
                    raw.append((self.index(tok), 1))
        return reduce(raw, self)

    def format(self, w: Word) -> str:
        if not w.syllables:
            return "1"
        if self.compact:
            return "".join(
                self.letters[i] if s > 0 else self.letters[i].upper() for i, s in w.syllables
            )
        return " ".join(self.letters[i] + ("" if s > 0 else "'") for i, s in w.syllables)

    def generator(self, i: int) -> Word:
        return Word(((i, 1),))


@dataclass(frozen=True)
class Word:
    """A freely reduced word, stored as (letter index, +1/-1) syllables."""

    syllables: tuple[Syllable, ...] = ()

    def __len__(self):
        return len(self.syllables)

    def __mul__(self, other: Word) -> Word:
        return reduce(self.syllables + other.syllables)

    def inverse(self) -> Word:
        return Word(tuple((i, -s) for i, s in reversed(self.syllables)))

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    @property
    def is_positive(self) -> bool:
        return all(s > 0 for _, s in self.syllables)

    def letters(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.syllables)


def reduce(raw: Iterable[Syllable], alphabet: Alphabet | None = None) -> Word:
    """Freely reduce a syllable sequence (stack-based, single pass)."""
    out: list[Syllable] = []
    n = len(alphabet) if alphabet is not None else None
    for i, s in raw:
        if s not in (1, -1):
            raise DomainError(f"syllable sign must be +1 or -1, got {s}")
        if n is not None and not 0 <= i < n:
            raise DomainError(f"letter index {i} outside alphabet of size {n}")
        if out and out[-1][0] == i and out[-1][1] == -s:
            out.pop()
        else:
            out.append((i, s))
    return Word(tuple(out))


@dataclass(frozen=True)
class FreeEndo:
    alphabet: Alphabet
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != len(self.alphabet):
            raise DomainError(
                f"{len(self.images)} images for an alphabet of {len(self.alphabet)} letters"
            )
        n = len(self.alphabet)
        for w in self.images:
            if any(not 0 <= i < n for i, _ in w.syllables):
                raise DomainError("image uses a letter outside the alphabet")
            if reduce(w.syllables) != w:
                raise DomainError("images must be freely reduced")

    @classmethod
    def from_strings(cls, alphabet: Alphabet | str | Sequence[str], images: Sequence[str]) -> FreeEndo:
        """``FreeEndo.from_strings("ab", ["ab", "a"])`` is the Fibonacci map."""
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet.of(alphabet)
        return cls(alphabet, tuple(alphabet.parse(t) for t in images))

    @classmethod
    def identity(cls, alphabet: Alphabet) -> FreeEndo:
        return cls(alphabet, tuple(alphabet.generator(i) for i in range(len(alphabet))))

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def describe(self) -> dict[str, str]:
        return {x: self.alphabet.format(w) for x, w in zip(self.alphabet.letters, self.images)}


def apply(e: FreeEndo, w: Word) -> Word:
    n = len(e.alphabet)
    inverses: dict[int, tuple[Syllable, ...]] = {}
    raw: list[Syllable] = []
    for i, s in w.syllables:
        if not 0 <= i < n:
            raise DomainError(f"letter index {i} outside alphabet of size {n}")
        if s > 0:
            raw.extend(e.images[i].syllables)
        else:
            if i not in inverses:
                inverses[i] = e.images[i].inverse().syllables
            raw.extend(inverses[i])
    return reduce(raw)


def compose(outer: FreeEndo, inner: FreeEndo) -> FreeEndo:
    """The endomorphism ``x -> outer(inner(x))``."""
    if outer.alphabet != inner.alphabet:
        raise DomainError("cannot compose endomorphisms over different alphabets")
    return FreeEndo(outer.alphabet, tuple(apply(outer, w) for w in inner.images))


def iterate(e: FreeEndo, n: int) -> FreeEndo:
    if n < 0:
        raise DomainError("iteration count must be non-negative")
    result = FreeEndo.identity(e.alphabet)
    for _ in range(n):
        result = compose(e, result)
    return result


def exponent_vector(w: Word, rank: int) -> list[int]:
    v = [0] * rank
    for i, s in w.syllables:
        v[i] += s
    return v


def abelianization(e: FreeEndo) -> IntMatrix:
    """Row i holds the signed letter counts of the image of letter i.

    Under this convention ab(compose(s, t)) == ab(t) @ ab(s).
    """
    r = len(e.alphabet)
    return IntMatrix.from_rows([exponent_vector(w, r) for w in e.images], r)
