"""Image towers of free group endomorphisms and the lim^1 decision.

For an endomorphism s of F^r the tower ... -> F^r -> F^r is Mittag-Leffler
exactly when the images Im s^n are eventually constant. The ranks of the
images can drop at most r times; at the first repeated rank N the map s is
injective on Im s^N (Hopfian property), so a single subgroup comparison of
Im s^(N+1) with Im s^N settles the question for good.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from . import reasons
from .errors import ConsistencyError, DomainError, MembershipError
from .freegroup import Alphabet, FreeEndo, abelianization, apply
from .intlat import IntMatrix, Lattice, determinant, lattice_image, restricted_action
from .reasons import Reason
from .stallings import (
    CoreGraph,
    SubgroupBasis,
    from_generators,
    graphs_equal,
    is_full,
    rank,
    rewrite_in_basis,
    rose,
    spanning_basis,
)


class Verdict(str, Enum):
    TRIVIAL = "Trivial"
    NONTRIVIAL = "Nontrivial"


@dataclass(frozen=True)
class TowerReport:
    alphabet: Alphabet
    ranks: tuple[int, ...]
    plateau_index: int
    stabilized_basis: SubgroupBasis
    induced_endo: FreeEndo | None
    ml: bool
    lim1_trivial: bool
    justification: tuple[Reason, ...]
    graphs: tuple[CoreGraph, ...] = field(repr=False, compare=False, default=())

    @property
    def plateau_rank(self) -> int:
        return self.ranks[self.plateau_index]

    def to_dict(self) -> dict:
        return {
            "ranks": list(self.ranks),
            "plateau_index": self.plateau_index,
            "plateau_rank": self.plateau_rank,
            "stabilized_basis": [
                self.alphabet.format(w) for w in self.stabilized_basis.basis_words
            ],
            "induced_endo": self.induced_endo.describe() if self.induced_endo else None,
            "ml": self.ml,
            "lim1_trivial": self.lim1_trivial,
        }


def next_image(e: FreeEndo, g: CoreGraph) -> CoreGraph:
    """Core graph of s(H) given the core graph of H."""
    basis = spanning_basis(g)
    return from_generators(e.alphabet, [apply(e, w) for w in basis.basis_words])


def image_graphs(e: FreeEndo, steps: int) -> list[CoreGraph]:
    """[G_0, ..., G_steps] with G_n the core graph of Im s^n."""
    graphs = [rose(e.alphabet)]
    for _ in range(steps):
        graphs.append(next_image(e, graphs[-1]))
    return graphs


def induced_restriction(e: FreeEndo, b: SubgroupBasis) -> FreeEndo:
    """s restricted to the subgroup of ``b``, written over its basis letters."""
    if b.alphabet is None:
        raise DomainError("the trivial subgroup has no basis letters")
    images = []
    for w in b.basis_words:
        try:
            images.append(rewrite_in_basis(b, apply(e, w)))
        except MembershipError as exc:
            raise ConsistencyError("endomorphism does not preserve the subgroup") from exc
    return FreeEndo(b.alphabet, tuple(images))


def image_tower(e: FreeEndo) -> TowerReport:
    graphs = [rose(e.alphabet)]
    while True:
        graphs.append(next_image(e, graphs[-1]))
        if rank(graphs[-1]) == rank(graphs[-2]):
            break
    n = len(graphs) - 2
    ml = graphs_equal(graphs[n + 1], graphs[n])
    basis = spanning_basis(graphs[n])
    induced = induced_restriction(e, basis) if basis.rank else None
    if ml:
        chain = (reasons.HOPFIAN_PLATEAU, reasons.RESTRICTION_EQUIVALENT, reasons.ML_IMPLIES_LIM1)
    else:
        chain = (reasons.HOPFIAN_PLATEAU, reasons.LIM1_IMPLIES_ML)
    return TowerReport(
        alphabet=e.alphabet,
        ranks=tuple(rank(g) for g in graphs),
        plateau_index=n,
        stabilized_basis=basis,
        induced_endo=induced,
        ml=ml,
        lim1_trivial=ml,
        justification=chain,
        graphs=tuple(graphs),
    )


def is_automorphism(e: FreeEndo) -> bool:
    """Surjectivity test on the folded image graph; surjective means bijective."""
    return is_full(from_generators(e.alphabet, e.images), e.alphabet)


@dataclass(frozen=True)
class AbelianTowerReport:
    lattice_ranks: tuple[int, ...]
    plateau_index: int
    restricted_determinant: int
    ml: bool
    plateau_lattice: Lattice = field(repr=False)
    restricted_matrix: IntMatrix = field(repr=False)

    @property
    def plateau_rank(self) -> int:
        return self.lattice_ranks[self.plateau_index]

    def to_dict(self) -> dict:
        return {
            "lattice_ranks": list(self.lattice_ranks),
            "plateau_index": self.plateau_index,
            "restricted_determinant": self.restricted_determinant,
            "ml": self.ml,
        }


def abelian_tower(m: IntMatrix) -> AbelianTowerReport:
    """Chain Z^r, Z^r m, Z^r m^2, ... up to its first rank repeat."""
    if not m.is_square:
        raise DomainError("abelian tower needs a square matrix")
    lattices = [Lattice.full(m.rows)]
    while True:
        lattices.append(lattice_image(m, lattices[-1]))
        if lattices[-1].rank == lattices[-2].rank:
            break
    n = len(lattices) - 2
    plateau = lattices[n]
    action = restricted_action(m, plateau)
    det = determinant(action)
    return AbelianTowerReport(
        lattice_ranks=tuple(l.rank for l in lattices),
        plateau_index=n,
        restricted_determinant=det,
        ml=plateau.rank == 0 or abs(det) == 1,
        plateau_lattice=plateau,
        restricted_matrix=action,
    )


@dataclass(frozen=True)
class Lim1Result:
    verdict: Verdict
    justification: tuple[Reason, ...]
    abelian: AbelianTowerReport
    tower: TowerReport | None

    @property
    def shortcut(self) -> bool:
        """True when the abelianised tower alone decided the verdict."""
        return self.tower is None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "decided_by": "abelian shortcut" if self.shortcut else "free tower",
            "abelian_tower": self.abelian.to_dict(),
            "tower": self.tower.to_dict() if self.tower else None,
        }


def lim1_verdict(e: FreeEndo) -> Lim1Result:
    ab = abelian_tower(abelianization(e))
    if not ab.ml:
        chain = (reasons.UNIMODULAR_PLATEAU, reasons.ABELIAN_NECESSARY)
        return Lim1Result(Verdict.NONTRIVIAL, chain, ab, None)
    tower = image_tower(e)
    verdict = Verdict.TRIVIAL if tower.ml else Verdict.NONTRIVIAL
    return Lim1Result(verdict, tower.justification, ab, tower)
