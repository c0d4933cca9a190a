"""Assembled verdicts: the L-invariant, stability, surface embedding
obstructions, H^1 presentations and the higher-dimensional cohomology checks."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb

from . import reasons
from .errors import OutOfHypothesisError
from .freegroup import FreeEndo, abelianization
from .intlat import IntMatrix, characteristic_polynomial
from .prostab import Lim1Result, Verdict, abelian_tower, lim1_verdict
from .reasons import Reason
from .substitution import (
    BorderReport,
    BorderRoute,
    GluingGraph,
    Substitution,
    _require_primitive,
    forces_border,
    gluing_graph,
    incidence_matrix,
    rose_endo,
)


class LVerdict(str, Enum):
    TRIVIAL = "Trivial"
    NONTRIVIAL = "Nontrivial"
    INCONCLUSIVE = "Inconclusive"


class Stability(str, Enum):
    YES = "Yes"
    NO = "No"
    INCONCLUSIVE = "Inconclusive"


class SurfaceEmbedding(str, Enum):
    OBSTRUCTED = "Obstructed"
    NO_OBSTRUCTION_FOUND = "NoObstructionFound"


class H1Validity(str, Enum):
    EXACT = "Exact"
    ROSE_MODEL_ONLY = "RoseModelOnly"


@dataclass(frozen=True)
class ShapeModel:
    wedge_rank: int
    torus_punctures: int

    def to_dict(self) -> dict:
        return {"wedge_rank": self.wedge_rank, "torus_punctures": self.torus_punctures}


@dataclass(frozen=True)
class H1Presentation:
    generators_rank: int
    matrix: IntMatrix
    eventual_rank: int
    restricted_determinant: int
    characteristic_polynomial: tuple[int, ...]
    validity: H1Validity

    @property
    def descriptor(self) -> str:
        """Isomorphism type of the direct limit where it is easy to name."""
        k, d = self.eventual_rank, abs(self.restricted_determinant)
        if k == 0:
            return "0"
        if d == 1:
            return "Z" if k == 1 else f"Z^{k}"
        if k == 1:
            return f"Z[1/{d}]"
        return f"direct limit of Z^{k} under a map of determinant {self.restricted_determinant}"

    def invariants(self) -> tuple:
        """Everything except validity, for comparing two presentations."""
        return (
            self.generators_rank,
            self.matrix,
            self.eventual_rank,
            self.restricted_determinant,
            self.characteristic_polynomial,
        )

    def to_dict(self) -> dict:
        return {
            "generators_rank": self.generators_rank,
            "matrix": self.matrix.to_lists(),
            "eventual_rank": self.eventual_rank,
            "restricted_determinant": self.restricted_determinant,
            "characteristic_polynomial": list(self.characteristic_polynomial),
            "descriptor": self.descriptor,
            "validity": self.validity.value,
        }


def h1_presentation(source: Substitution | FreeEndo, *, border: BorderReport | None = None) -> H1Presentation:
    """H^1 of the rose limit: the direct limit of Z^r under the transposed
    abelianisation.

    For a substitution the presentation is exact only when the border is
    forced; for a bare endomorphism the rose limit is the space itself.
    """
    if isinstance(source, Substitution):
        _require_primitive(source)
        if border is None:
            border = forces_border(source)
        validity = H1Validity.EXACT if border.forced else H1Validity.ROSE_MODEL_ONLY
        m = incidence_matrix(source)
    else:
        validity = H1Validity.EXACT
        m = abelianization(source)
    bonding = m.transpose()
    tower = abelian_tower(bonding)
    return H1Presentation(
        generators_rank=bonding.rows,
        matrix=bonding,
        eventual_rank=tower.plateau_rank,
        restricted_determinant=tower.restricted_determinant,
        characteristic_polynomial=characteristic_polynomial(bonding),
        validity=validity,
    )


@dataclass(frozen=True)
class EndoReport:
    endo: FreeEndo
    rose: Lim1Result
    stable: Stability
    shape_model: ShapeModel | None
    justification: tuple[Reason, ...]

    def verdicts(self) -> dict:
        return {
            "rules": self.endo.describe(),
            "lim1": self.rose.verdict.value,
            "stable": self.stable.value,
            "shape_model": self.shape_model.to_dict() if self.shape_model else None,
            "rose_tower": self.rose.to_dict(),
        }


def analyze_endo(e: FreeEndo) -> EndoReport:
    rose = lim1_verdict(e)
    if rose.verdict is Verdict.TRIVIAL:
        m = rose.tower.plateau_rank
        shape = ShapeModel(m, m - 1)
        chain = rose.justification + (reasons.STABLE_IFF_LIM1, reasons.WEDGE_SHAPE)
        return EndoReport(e, rose, Stability.YES, shape, chain)
    chain = rose.justification + (reasons.STABLE_IFF_LIM1,)
    return EndoReport(e, rose, Stability.NO, None, chain)


@dataclass(frozen=True)
class TilingSpaceReport:
    substitution: Substitution
    primitive: bool
    rose_lim1: Lim1Result
    border: BorderReport
    gluing: GluingGraph
    l_verdict: LVerdict
    notes: tuple[str, ...]
    stable: Stability
    shape_model: ShapeModel | None
    surface_embedding: SurfaceEmbedding
    h1: H1Presentation
    justification: tuple[Reason, ...]

    @property
    def gluing_connected(self) -> bool:
        return self.gluing.connected

    def verdicts(self) -> dict:
        alphabet = self.substitution.alphabet
        return {
            "rules": self.substitution.describe(),
            "primitive": self.primitive,
            "rose_lim1": self.rose_lim1.verdict.value,
            "border": self.border.to_dict(alphabet),
            "gluing_connected": self.gluing.connected,
            "l_verdict": self.l_verdict.value,
            "l_notes": list(self.notes),
            "stable": self.stable.value,
            "shape_model": self.shape_model.to_dict() if self.shape_model else None,
            "surface_embedding": self.surface_embedding.value,
            "h1": self.h1.to_dict(),
            "rose_tower": self.rose_lim1.to_dict(),
            "gluing_graph": self.gluing.to_dict(alphabet),
        }


def analyze_substitution(s: Substitution, cap_border: int = 8, cap_proper: int = 8) -> TilingSpaceReport:
    _require_primitive(s)
    rose = lim1_verdict(rose_endo(s))
    border = forces_border(s, cap_border, cap_proper)
    gluing = gluing_graph(s)
    chain = list(rose.justification)
    notes = ["aperiodicity of the subshift is assumed, not checked"]

    if border.forced:
        chain.append(
            reasons.PROPER_FORCES_BORDER
            if border.route is BorderRoute.PROPER_POWER
            else reasons.NEIGHBOUR_DETERMINATION
        )
        chain.append(reasons.BORDER_FORCING_MODEL)
        l_verdict = LVerdict(rose.verdict.value)
    elif rose.verdict is Verdict.NONTRIVIAL and gluing.connected:
        chain.append(reasons.GLUING_LIFT)
        l_verdict = LVerdict.NONTRIVIAL
    else:
        l_verdict = LVerdict.INCONCLUSIVE
        if rose.verdict is Verdict.TRIVIAL:
            notes.append("rose tower is ML (rose lim^1 trivial)")
        else:
            notes.append("rose tower is not ML (rose lim^1 nontrivial)")
        notes.append(f"border forcing not certified up to level {border.level}")
        if not gluing.connected:
            notes.append("gluing subcomplex is not path connected")

    if l_verdict is LVerdict.TRIVIAL:
        stable = Stability.YES
        m = rose.tower.plateau_rank
        shape = ShapeModel(m, m - 1)
        chain += [reasons.STABLE_IFF_LIM1, reasons.WEDGE_SHAPE, reasons.NECESSARY_NOT_SUFFICIENT]
        embedding = SurfaceEmbedding.NO_OBSTRUCTION_FOUND
    elif l_verdict is LVerdict.NONTRIVIAL:
        stable = Stability.NO
        shape = None
        chain += [reasons.STABLE_IFF_LIM1, reasons.SURFACE_OBSTRUCTION]
        embedding = SurfaceEmbedding.OBSTRUCTED
    else:
        stable = Stability.INCONCLUSIVE
        shape = None
        embedding = SurfaceEmbedding.NO_OBSTRUCTION_FOUND

    h1 = h1_presentation(s, border=border)
    chain.append(reasons.COHOMOLOGY_DIRECT_LIMIT)
    return TilingSpaceReport(
        substitution=s,
        primitive=True,
        rose_lim1=rose,
        border=border,
        gluing=gluing,
        l_verdict=l_verdict,
        notes=tuple(notes),
        stable=stable,
        shape_model=shape,
        surface_embedding=embedding,
        h1=h1,
        justification=tuple(chain),
    )


@dataclass(frozen=True)
class TorusCohomology:
    d: int
    k: int
    ranks: tuple[int, ...]

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** p * r for p, r in enumerate(self.ranks))

    def to_dict(self) -> dict:
        return {"d": self.d, "k": self.k, "ranks": list(self.ranks)}


def torus_minus_points(d: int, k: int) -> TorusCohomology:
    """Cohomology ranks of the (d+1)-torus with k points removed, degrees 0..d+1."""
    if d < 2:
        raise OutOfHypothesisError(
            f"d={d}: the torus-minus-points formula needs ambient dimension d+1 >= 3; "
            "use the one-dimensional (substitution / endomorphism) analysis for d=1"
        )
    if k < 1:
        raise OutOfHypothesisError(f"k={k}: at least one point must be removed")
    ranks = [comb(d + 1, p) for p in range(d)] + [d + k, 0]
    return TorusCohomology(d, k, tuple(ranks))


def attractor_h1_bound(d: int) -> int:
    """Largest rank of H^1 a codimension-one attractor of dimension d can have."""
    if d < 2:
        raise OutOfHypothesisError(f"d={d}: the H^1 cap needs ambient dimension d+1 >= 3")
    return d + 1


def h1_rank_admissible(rank: int, d: int) -> bool:
    return rank <= attractor_h1_bound(d)


@dataclass(frozen=True)
class ProjectionCheck:
    d: int
    n: int
    h1_lower_bound: int
    attractor_h1_cap: int
    obstructed: bool

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "h1_lower_bound": self.h1_lower_bound,
            "attractor_h1_cap": self.attractor_h1_cap,
            "obstructed": self.obstructed,
        }


PROJECTION_REASONS = (reasons.PROJECTION_H1_FLOOR, reasons.TORUS_MINUS_POINTS, reasons.ATTRACTOR_H1_CAP)


def projection_check(d: int, n: int) -> ProjectionCheck:
    if d < 2:
        raise OutOfHypothesisError(f"d={d}: the projection obstruction needs external dimension d > 1")
    if n < 1:
        raise OutOfHypothesisError(f"n={n}: internal dimension must be at least 1")
    floor, cap = n + d, attractor_h1_bound(d)
    return ProjectionCheck(d, n, floor, cap, floor > cap)
