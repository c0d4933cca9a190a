"""Combinatorics of one-dimensional substitutions.

Only combinatorial data is used: tile lengths never matter for the
topological questions asked here. Aperiodicity of the subshift is assumed,
not checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError, PreconditionError
from .freegroup import Alphabet, FreeEndo, Word, abelianization
from .intlat import IntMatrix, is_primitive_matrix


@dataclass(frozen=True)
class Substitution:
    alphabet: Alphabet
    rules: tuple[Word, ...]

    def __post_init__(self):
        if len(self.alphabet) < 2:
            raise DomainError("a substitution needs an alphabet of at least two letters")
        if len(self.rules) != len(self.alphabet):
            raise DomainError("one rule per letter is required")
        for x, w in zip(self.alphabet.letters, self.rules):
            if w.is_identity:
                raise DomainError(f"image of {x} is empty")
            if not w.is_positive:
                raise DomainError(f"image of {x} uses an inverse letter")
            if any(not 0 <= i < len(self.alphabet) for i in w.letters()):
                raise DomainError(f"image of {x} uses an unknown letter")

    @classmethod
    def from_strings(cls, alphabet: Alphabet | str, images) -> Substitution:
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet.of(alphabet)
        return cls(alphabet, tuple(alphabet.parse(t) for t in images))

    @property
    def size(self) -> int:
        return len(self.alphabet)

    def image(self, letters: tuple[int, ...]) -> tuple[int, ...]:
        out: list[int] = []
        for i in letters:
            out.extend(self.rules[i].letters())
        return tuple(out)

    def power_images(self, n: int) -> list[tuple[int, ...]]:
        words = [(i,) for i in range(self.size)]
        for _ in range(n):
            words = [self.image(w) for w in words]
        return words

    def first_letter_map(self) -> tuple[int, ...]:
        return tuple(w.syllables[0][0] for w in self.rules)

    def last_letter_map(self) -> tuple[int, ...]:
        return tuple(w.syllables[-1][0] for w in self.rules)

    def describe(self) -> dict[str, str]:
        return rose_endo(self).describe()


def rose_endo(s: Substitution) -> FreeEndo:
    return FreeEndo(s.alphabet, s.rules)


def incidence_matrix(s: Substitution) -> IntMatrix:
    """Row i counts the letters of the image of letter i."""
    return abelianization(rose_endo(s))


def is_primitive(s: Substitution) -> bool:
    return is_primitive_matrix(incidence_matrix(s))


def _require_primitive(s: Substitution):
    if not is_primitive(s):
        raise PreconditionError(
            "substitution is not primitive (some letter never occurs in some iterate image)"
        )


def _factors(word: tuple[int, ...], k: int) -> set[tuple[int, ...]]:
    return {word[i:i + k] for i in range(len(word) - k + 1)}


def legal_words(s: Substitution, k: int) -> frozenset[tuple[int, ...]]:
    """All length-k factors of the iterates s^n(a), as letter-index tuples.

    Seeds with the factors of every s^i(a) up to the first level where all
    images have length >= k, then closes under w -> factors of s(w).
    """
    _require_primitive(s)
    if k < 1:
        raise DomainError("word length must be positive")
    legal: set[tuple[int, ...]] = set()
    words = [(i,) for i in range(s.size)]
    while True:
        for w in words:
            legal |= _factors(w, k)
        if all(len(w) >= k for w in words):
            break
        words = [s.image(w) for w in words]
    frontier = set(legal)
    while frontier:
        fresh = set()
        for w in frontier:
            fresh |= _factors(s.image(w), k)
        frontier = fresh - legal
        legal |= frontier
    return frozenset(legal)


def _iterate_map(f: tuple[int, ...], n: int) -> tuple[int, ...]:
    out = tuple(range(len(f)))
    for _ in range(n):
        out = tuple(f[i] for i in out)
    return out


def is_proper_power(s: Substitution, cap: int) -> int | None:
    """Smallest n <= cap with all s^n images sharing first and last letters."""
    if cap < 1:
        raise DomainError("cap must be at least 1")
    first, last = s.first_letter_map(), s.last_letter_map()
    f, l = first, last
    for n in range(1, cap + 1):
        if len(set(f)) == 1 and len(set(l)) == 1:
            return n
        f = tuple(first[i] for i in f)
        l = tuple(last[i] for i in l)
    return None


class BorderStatus(str, Enum):
    FORCES = "Forces"
    UNKNOWN = "UnknownUpTo"


class BorderRoute(str, Enum):
    PROPER_POWER = "ProperPower"
    NEIGHBOR_DETERMINATION = "NeighborDetermination"


@dataclass(frozen=True)
class BorderReport:
    status: BorderStatus
    level: int  # forcing level, or the cap searched when unknown
    route: BorderRoute | None
    extension_sets: tuple[frozenset[tuple[int, int]], ...] = field(repr=False)

    @property
    def forced(self) -> bool:
        return self.status is BorderStatus.FORCES

    def to_dict(self, alphabet: Alphabet) -> dict:
        names = alphabet.letters
        return {
            "status": self.status.value,
            "level": self.level,
            "route": self.route.value if self.route else None,
            "extension_sets": {
                names[a]: sorted(names[l] + names[r] for l, r in ext)
                for a, ext in enumerate(self.extension_sets)
            },
        }


def neighbor_sets(
    s: Substitution, n: int, triples: frozenset[tuple[int, ...]] | None = None
) -> tuple[frozenset[tuple[int, int]], ...]:
    """For each letter a, the pairs (last tile of s^n(l), first tile of s^n(r)) over legal l a r."""
    if triples is None:
        triples = legal_words(s, 3)
    f = _iterate_map(s.first_letter_map(), n)
    l = _iterate_map(s.last_letter_map(), n)
    sets: list[set[tuple[int, int]]] = [set() for _ in range(s.size)]
    for left, mid, right in triples:
        sets[mid].add((l[left], f[right]))
    return tuple(frozenset(x) for x in sets)


def forces_border(s: Substitution, cap: int = 8, cap_proper: int | None = None) -> BorderReport:
    """Capped semi-decision of border forcing.

    Tries a proper power up to ``cap_proper`` (defaults to ``cap``), then
    neighbour determination at levels 1..cap. Failing both gives
    UnknownUpTo(cap), which does not mean the border is not forced.
    """
    _require_primitive(s)
    if cap < 1:
        raise DomainError("cap must be at least 1")
    triples = legal_words(s, 3)
    proper = is_proper_power(s, cap if cap_proper is None else cap_proper)
    if proper is not None:
        return BorderReport(
            BorderStatus.FORCES, proper, BorderRoute.PROPER_POWER, neighbor_sets(s, proper, triples)
        )
    sets = ()
    for n in range(1, cap + 1):
        sets = neighbor_sets(s, n, triples)
        if all(len(x) == 1 for x in sets):
            return BorderReport(BorderStatus.FORCES, n, BorderRoute.NEIGHBOR_DETERMINATION, sets)
    return BorderReport(BorderStatus.UNKNOWN, cap, None, sets)


@dataclass(frozen=True)
class GluingGraph:
    """Bipartite endpoint graph: out(a) joined to in(b) for each legal word ab.

    Nodes are ``("out", a)`` and ``("in", a)``.
    """

    size: int
    edges: frozenset[tuple[int, int]]
    connected: bool

    def to_dict(self, alphabet: Alphabet) -> dict:
        names = alphabet.letters
        return {
            "edges": sorted(names[a] + names[b] for a, b in self.edges),
            "connected": self.connected,
        }


def gluing_graph(s: Substitution) -> GluingGraph:
    _require_primitive(s)
    pairs = frozenset((w[0], w[1]) for w in legal_words(s, 2))
    nbrs: dict[tuple[str, int], set[tuple[str, int]]] = {}
    for a in range(s.size):
        nbrs[("out", a)] = set()
        nbrs[("in", a)] = set()
    for a, b in pairs:
        nbrs[("out", a)].add(("in", b))
        nbrs[("in", b)].add(("out", a))
    start = ("out", 0)
    seen = {start}
    stack = [start]
    while stack:
        for t in nbrs[stack.pop()]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return GluingGraph(s.size, pairs, len(seen) == 2 * s.size)
