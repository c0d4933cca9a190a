"""Stallings core graphs of finitely generated subgroups of a free group.

A ``CoreGraph`` is always stored folded, trimmed and canonically
relabelled (basepoint 0, other vertices numbered in breadth-first order),
so two graphs describe the same subgroup exactly when they compare equal.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DomainError, MembershipError
from .freegroup import Alphabet, Word, reduce

Edge = tuple[int, int, int]  # (source, target, letter)


def _step_order(key: tuple[int, int]) -> tuple[int, int]:
    # (label, sign) exploration order: letter index first, forward before backward
    return key[0], -key[1]


@dataclass(frozen=True)
class CoreGraph:
    vertices: int
    basepoint: int
    edges: tuple[Edge, ...]

    @cached_property
    def adjacency(self) -> list[dict[tuple[int, int], int]]:
        """``adjacency[v][(letter, sign)]`` is the vertex reached by reading that syllable."""
        adj: list[dict[tuple[int, int], int]] = [{} for _ in range(self.vertices)]
        for u, v, x in self.edges:
            adj[u][(x, 1)] = v
            adj[v][(x, -1)] = u
        return adj

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], basepoint: int) -> CoreGraph:
        """Trim and canonically relabel an already folded edge set."""
        edges = set(edges)
        out, inc = set(), set()
        for u, _, x in edges:
            if (u, x) in out:
                raise DomainError("edge set is not folded")
            out.add((u, x))
        for _, v, x in edges:
            if (v, x) in inc:
                raise DomainError("edge set is not folded")
            inc.add((v, x))
        return _canonical(_trim(edges, basepoint), basepoint)

    def __str__(self):
        return f"CoreGraph(vertices={self.vertices}, rank={rank(self)}, edges={list(self.edges)})"


def _trim(edges: set[Edge], base: int) -> set[Edge]:
    incident: dict[int, set[Edge]] = {}
    for e in edges:
        incident.setdefault(e[0], set()).add(e)
        incident.setdefault(e[1], set()).add(e)

    def degree(v):
        return sum(2 if e[0] == e[1] else 1 for e in incident.get(v, ()))

    queue = deque(v for v in incident if v != base and degree(v) <= 1)
    while queue:
        v = queue.popleft()
        if v not in incident or degree(v) > 1:
            continue
        for e in incident.pop(v):
            edges.discard(e)
            other = e[1] if e[0] == v else e[0]
            if other in incident:
                incident[other].discard(e)
                if other != base and degree(other) <= 1:
                    queue.append(other)
    return edges


def _canonical(edges: set[Edge], base: int) -> CoreGraph:
    adj: dict[int, dict[tuple[int, int], int]] = {base: {}}
    for u, v, x in edges:
        adj.setdefault(u, {})[(x, 1)] = v
        adj.setdefault(v, {})[(x, -1)] = u
    label = {base: 0}
    order = [base]
    for v in order:
        for key in sorted(adj[v], key=_step_order):
            t = adj[v][key]
            if t not in label:
                label[t] = len(order)
                order.append(t)
    if len(label) != len(adj):
        raise DomainError("core graph is not connected")
    relabelled = tuple(sorted((label[u], label[v], x) for u, v, x in edges))
    return CoreGraph(len(order), 0, relabelled)


class _Folder:
    """Incremental folding with union-find; each merge re-inserts the
    absorbed vertex's edges, which may trigger further merges."""

    def __init__(self, rng: random.Random | None = None):
        self.parent: list[int] = []
        self.adj: list[dict[tuple[int, int], int]] = []
        self.pending: list[Edge] = []
        self.rng = rng

    def vertex(self) -> int:
        self.parent.append(len(self.parent))
        self.adj.append({})
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def _merge(self, a: int, b: int):
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        if len(self.adj[a]) < len(self.adj[b]):
            a, b = b, a
        self.parent[b] = a
        for (x, s), t in self.adj[b].items():
            self.pending.append((a, t, x) if s > 0 else (t, a, x))
        self.adj[b] = {}

    def _pop(self) -> Edge:
        if self.rng is None:
            return self.pending.pop()
        k = self.rng.randrange(len(self.pending))
        self.pending[k], self.pending[-1] = self.pending[-1], self.pending[k]
        return self.pending.pop()

    def fold(self):
        while self.pending:
            u, v, x = self._pop()
            u, v = self.find(u), self.find(v)
            w = self.adj[u].get((x, 1))
            if w is not None and self.find(w) != v:
                self._merge(w, v)
                self.pending.append((u, v, x))
                continue
            z = self.adj[v].get((x, -1))
            if z is not None and self.find(z) != u:
                self._merge(z, u)
                self.pending.append((u, v, x))
                continue
            self.adj[u][(x, 1)] = v
            self.adj[v][(x, -1)] = u

    def edges(self) -> set[Edge]:
        found = set()
        for u in range(len(self.parent)):
            if self.find(u) != u:
                continue
            for (x, s), t in self.adj[u].items():
                if s > 0:
                    found.add((u, self.find(t), x))
        return found


def from_generators(
    alphabet: Alphabet, gens: Iterable[Word], *, rng: random.Random | None = None
) -> CoreGraph:
    """Folded core graph of the subgroup generated by ``gens``.

    ``rng`` randomises generator order and fold order; the result does not
    depend on it.
    """
    n = len(alphabet)
    gens = [g for g in gens if not g.is_identity]
    if rng is not None:
        gens = gens[:]
        rng.shuffle(gens)
    folder = _Folder(rng)
    base = folder.vertex()
    for g in gens:
        if any(not 0 <= i < n for i, _ in g.syllables):
            raise DomainError("generator uses a letter outside the alphabet")
        here = base
        for k, (x, s) in enumerate(g.syllables):
            there = base if k == len(g) - 1 else folder.vertex()
            folder.pending.append((here, there, x) if s > 0 else (there, here, x))
            here = there
    if rng is not None:
        rng.shuffle(folder.pending)
    folder.fold()
    return _canonical(_trim(folder.edges(), folder.find(base)), folder.find(base))


def rose(alphabet: Alphabet) -> CoreGraph:
    return from_generators(alphabet, [alphabet.generator(i) for i in range(len(alphabet))])


def rank(g: CoreGraph) -> int:
    return len(g.edges) - g.vertices + 1


def _trace(g: CoreGraph, w: Word) -> int | None:
    v = g.basepoint
    adj = g.adjacency
    for key in w.syllables:
        v = adj[v].get(key)
        if v is None:
            return None
    return v


def contains(g: CoreGraph, w: Word) -> bool:
    return _trace(g, w) == g.basepoint


def is_full(g: CoreGraph, alphabet: Alphabet) -> bool:
    return all(contains(g, alphabet.generator(i)) for i in range(len(alphabet)))


def graphs_equal(a: CoreGraph, b: CoreGraph) -> bool:
    # both are canonical by construction
    return a == b


@dataclass(frozen=True)
class SubgroupBasis:
    """Free basis read off a breadth-first spanning tree.

    Basis letter ``k`` of ``alphabet`` stands for ``basis_words[k]``, the loop
    through the k-th non-tree edge in discovery order.
    """

    graph: CoreGraph
    tree_edges: tuple[Edge, ...]
    nontree_edges: tuple[Edge, ...]
    basis_words: tuple[Word, ...]
    alphabet: Alphabet | None = field(default=None)

    @cached_property
    def _edge_index(self) -> dict[Edge, int]:
        return {e: k for k, e in enumerate(self.nontree_edges)}

    @property
    def rank(self) -> int:
        return len(self.basis_words)


def basis_alphabet(size: int, prefix: str = "x") -> Alphabet | None:
    if size == 0:
        return None
    return Alphabet(tuple(f"{prefix}{k}" for k in range(size)))


def spanning_basis(g: CoreGraph) -> SubgroupBasis:
    adj = g.adjacency
    base = g.basepoint
    parent: dict[int, tuple[int, int, int] | None] = {base: None}
    order = [base]
    tree: list[Edge] = []
    tree_set: set[Edge] = set()
    nontree: list[Edge] = []
    seen: set[Edge] = set()
    for v in order:
        for key in sorted(adj[v], key=_step_order):
            x, s = key
            t = adj[v][key]
            e = (v, t, x) if s > 0 else (t, v, x)
            if t not in parent:
                parent[t] = (v, x, s)
                tree.append(e)
                tree_set.add(e)
                order.append(t)
            elif e not in tree_set and e not in seen:
                seen.add(e)
                nontree.append(e)

    def path_to(v: int) -> list[tuple[int, int]]:
        steps = []
        while parent[v] is not None:
            prev, x, s = parent[v]
            steps.append((x, s))
            v = prev
        steps.reverse()
        return steps

    words = []
    for u, v, x in nontree:
        back = Word(tuple(path_to(v))).inverse().syllables
        words.append(reduce(path_to(u) + [(x, 1)] + list(back)))
    return SubgroupBasis(g, tuple(tree), tuple(nontree), tuple(words), basis_alphabet(len(words)))


def rewrite_in_basis(b: SubgroupBasis, w: Word) -> Word:
    """Express ``w`` as a word in the basis letters of ``b``."""
    adj = b.graph.adjacency
    index = b._edge_index
    v = b.graph.basepoint
    out = []
    for x, s in w.syllables:
        t = adj[v].get((x, s))
        if t is None:
            raise MembershipError("word leaves the core graph: not in the subgroup")
        e = (v, t, x) if s > 0 else (t, v, x)
        k = index.get(e)
        if k is not None:
            out.append((k, s))
        v = t
    if v != b.graph.basepoint:
        raise MembershipError("word does not close up at the basepoint: not in the subgroup")
    return reduce(out)


def expand(b: SubgroupBasis, w: Word) -> Word:
    """Inverse of ``rewrite_in_basis``: substitute basis words back in."""
    raw = []
    for k, s in w.syllables:
        word = b.basis_words[k]
        raw.extend(word.syllables if s > 0 else word.inverse().syllables)
    return reduce(raw)


def subgroup_equal(alphabet: Alphabet, a: Sequence[Word], b: Sequence[Word]) -> bool:
    return graphs_equal(from_generators(alphabet, a), from_generators(alphabet, b))
