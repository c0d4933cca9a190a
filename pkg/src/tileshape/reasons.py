"""Named facts that reports cite as their justification chain.

Each entry is (label, statement). Statements are short mathematical
summaries of the result relied on, so a report can be audited step by step.
"""

Reason = tuple[str, str]

ML_IMPLIES_LIM1 = (
    "ml-implies-trivial-lim1",
    "An inverse sequence of groups satisfying the Mittag-Leffler condition has trivial lim^1.",
)
LIM1_IMPLIES_ML = (
    "trivial-lim1-implies-ml",
    "For an inverse sequence of countable groups, trivial lim^1 implies the Mittag-Leffler "
    "condition; finitely generated free groups are countable.",
)
HOPFIAN_PLATEAU = (
    "hopfian-plateau",
    "Free groups of finite rank are Hopfian: once two consecutive images Im s^N, Im s^(N+1) "
    "have equal rank, s restricted to Im s^N is injective, so the images are either equal "
    "from N on or strictly decreasing forever.",
)
RESTRICTION_EQUIVALENT = (
    "restriction-pro-equivalent",
    "The tower of s on F^r is pro-equivalent to the tower of s restricted to the eventual "
    "image Im s^N, so both have trivial lim^1 or neither does.",
)
ABELIAN_NECESSARY = (
    "abelian-ml-necessary",
    "If the free group tower is Mittag-Leffler then so is its abelianisation; a non-ML "
    "abelianised tower therefore forces nontrivial lim^1 of the free group tower.",
)
UNIMODULAR_PLATEAU = (
    "unimodular-plateau",
    "On the eventual image lattice the map is injective; its images stabilise iff the "
    "restricted determinant is +-1, otherwise each step has index |det| > 1.",
)
HOPFIAN_SURJECTIVE = (
    "hopfian-surjective",
    "A surjective endomorphism of a finite-rank free group is an automorphism.",
)
STABLE_IFF_LIM1 = (
    "stable-iff-lim1",
    "The inverse limit of a wedge of circles under one based self-map is stable exactly when "
    "lim^1 of its fundamental group tower is trivial.",
)
WEDGE_SHAPE = (
    "wedge-shape",
    "When the tower is Mittag-Leffler with eventual image of rank m, the limit is shape "
    "equivalent to a wedge of m circles, which is homotopy equivalent to a 2-torus with "
    "m-1 points removed.",
)
BORDER_FORCING_MODEL = (
    "border-forcing-model",
    "A primitive substitution that forces the border has tiling space equal to the inverse "
    "limit of the rose under the substitution map, so L equals lim^1 of the rose tower.",
)
PROPER_FORCES_BORDER = (
    "proper-forces-border",
    "If some power of the substitution is proper (all images share a first letter and a "
    "last letter) then the substitution forces the border.",
)
NEIGHBOUR_DETERMINATION = (
    "neighbour-determination",
    "If at some level n every letter's level-n supertile has a unique pair of neighbouring "
    "tiles across all legal contexts, the substitution forces the border.",
)
GLUING_LIFT = (
    "gluing-lift",
    "If the gluing subcomplex is path connected, the collapse to the rose is surjective on "
    "pi_1 and nontrivial rose lim^1 forces nontrivial L.",
)
SURFACE_OBSTRUCTION = (
    "surface-obstruction",
    "A continuum that is the inverse limit of finite polyhedra with nontrivial lim^1 of the "
    "pi_1 tower is not movable and cannot be embedded in a closed surface.",
)
NECESSARY_NOT_SUFFICIENT = (
    "necessary-not-sufficient",
    "Trivial L is necessary for realisation as a surface attractor but does not guarantee an "
    "embedding.",
)
COHOMOLOGY_DIRECT_LIMIT = (
    "cohomology-direct-limit",
    "Cech cohomology of an inverse limit is the direct limit of the cohomology of the "
    "factors; H^1 of the rose is Z^r with bonding map the transposed incidence matrix.",
)
TORUS_MINUS_POINTS = (
    "torus-minus-points",
    "A codimension-one attractor in a manifold of dimension d+1 >= 3 has the cohomology of "
    "the (d+1)-torus with k points removed: binomial(d+1, p) below degree d, d+k in "
    "degree d, zero above.",
)
ATTRACTOR_H1_CAP = (
    "attractor-h1-cap",
    "Rationally, H^1 of such an attractor has dimension at most d+1; in the non-orientable "
    "case the transfer of the double cover injects the free part, so the same cap applies.",
)
PROJECTION_H1_FLOOR = (
    "projection-h1-floor",
    "H^1 of a canonical projection tiling space with external dimension d, internal "
    "dimension n and finitely generated cohomology has rank at least n+d.",
)
