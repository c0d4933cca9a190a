"""One test group per acceptance criterion; the terminal summary prints a
PASS/FAIL line per criterion (see conftest)."""

import json
import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import (
    ALPHABETS,
    endos,
    generator_sets,
    int_matrices,
    unimodular,
    words,
)
from tileshape import cli
from tileshape.freegroup import Alphabet, FreeEndo, Word, abelianization, apply, compose, iterate, reduce
from tileshape.intlat import IntMatrix, smith_normal_form
from tileshape.prostab import abelian_tower, image_graphs, image_tower, is_automorphism, lim1_verdict
from tileshape.stallings import (
    contains,
    expand,
    from_generators,
    is_full,
    rank,
    rewrite_in_basis,
    spanning_basis,
)
from tileshape.substitution import Substitution, gluing_graph, incidence_matrix, is_primitive, rose_endo
from tileshape.verdicts import (
    LVerdict,
    Stability,
    SurfaceEmbedding,
    analyze_endo,
    analyze_substitution,
    h1_presentation,
    projection_check,
    torus_minus_points,
)

PROPERTY = settings(max_examples=200)

FIB = Substitution.from_strings("ab", ["ab", "a"])
FIB_CUBED = Substitution.from_strings("ab", ["abaab", "aba"])
ABC = Substitution.from_strings("abc", ["abc", "abc", "a"])
EX_NONUNIMODULAR = Substitution.from_strings("ab", ["ababa", "baaab"])
# letters 1, 2, 3 renamed a, b, c
EX_NOT_ONTO = Substitution.from_strings("abc", ["aaca", "abca", "bcb"])
EX_SAME_COHOMOLOGY = Substitution.from_strings("ab", ["ababa", "baa"])


# --- criterion 1: golden verdicts --------------------------------------------


@pytest.mark.criterion("1a")
def test_fibonacci():
    e = rose_endo(FIB)
    assert is_primitive(FIB)
    assert is_automorphism(e)
    tower = image_tower(e)
    assert tower.ml and tower.ranks == (2, 2)
    assert lim1_verdict(e).verdict.value == "Trivial"
    report = analyze_endo(e)
    assert report.stable is Stability.YES
    assert report.shape_model.wedge_rank == 2
    assert report.shape_model.torus_punctures == 1


@pytest.mark.criterion("1b")
def test_abc_tower_and_induced_map():
    e = rose_endo(ABC)
    tower = image_tower(e)
    assert tower.ranks == (3, 2, 2)
    assert tower.ml
    basis = tower.stabilized_basis
    ab = ABC.alphabet
    assert [ab.format(w) for w in basis.basis_words] == ["a", "bc"]
    # the textbook basis alpha = a, beta = abc spans the same subgroup
    assert from_generators(ab, basis.basis_words) == from_generators(ab, [ab.parse("a"), ab.parse("abc")])

    # induced map, transported along x0 -> alpha, x1 -> alpha^-1 beta
    induced = tower.induced_endo
    greek = Alphabet(("alpha", "beta"))
    target = FreeEndo.from_strings(greek, ["beta", "beta beta alpha"])
    theta = FreeEndo(greek, (greek.parse("alpha"), greek.parse("alpha' beta")))
    for k in range(2):
        x = Word(((k, 1),))
        assert apply(theta, apply(induced, x)) == apply(target, apply(theta, x))
    report = analyze_endo(e)
    assert report.stable is Stability.YES
    assert (report.shape_model.wedge_rank, report.shape_model.torus_punctures) == (2, 1)


@pytest.mark.criterion("1c")
def test_nonunimodular_example():
    e = rose_endo(EX_NONUNIMODULAR)
    assert abelianization(e).to_lists() == [[3, 2], [3, 2]]
    assert smith_normal_form(abelianization(e)).invariants == (1, 0)
    assert not image_tower(e).ml
    assert lim1_verdict(e).verdict.value == "Nontrivial"


@pytest.mark.criterion("1d")
def test_not_onto_example():
    e = rose_endo(EX_NOT_ONTO)
    image = from_generators(e.alphabet, e.images)
    assert rank(image) == 3
    assert not is_full(image, e.alphabet)
    assert gluing_graph(EX_NOT_ONTO).connected
    report = analyze_substitution(EX_NOT_ONTO)
    assert report.l_verdict is LVerdict.NONTRIVIAL
    assert report.surface_embedding is SurfaceEmbedding.OBSTRUCTED


@pytest.mark.criterion("1e")
def test_same_cohomology_different_l():
    ab = incidence_matrix(EX_SAME_COHOMOLOGY)
    assert ab.to_lists() == [[3, 2], [2, 1]]
    assert ab == incidence_matrix(FIB_CUBED)
    assert not is_automorphism(rose_endo(EX_SAME_COHOMOLOGY))
    report = analyze_substitution(EX_SAME_COHOMOLOGY)
    cubed = analyze_substitution(FIB_CUBED)
    assert report.l_verdict is LVerdict.NONTRIVIAL
    assert report.h1.invariants() == cubed.h1.invariants()
    assert report.l_verdict != cubed.l_verdict


# --- criterion 2: solenoid ---------------------------------------------------


@pytest.mark.criterion("2")
def test_doubling_solenoid():
    e = FreeEndo.from_strings("a", ["aa"])
    assert analyze_endo(e).stable is Stability.NO
    h1 = h1_presentation(e)
    assert h1.eventual_rank == 1
    assert h1.restricted_determinant == 2
    assert h1.descriptor == "Z[1/2]"


# --- criterion 3: torus minus points -----------------------------------------


def _binomial(n, k):
    # Pascal's triangle, independent of math.comb used by the library
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row[k]


@pytest.mark.criterion("3")
@pytest.mark.parametrize("d", range(2, 7))
@pytest.mark.parametrize("k", range(1, 6))
def test_torus_minus_points(d, k):
    t = torus_minus_points(d, k)
    expected = [_binomial(d + 1, p) for p in range(d)] + [d + k, 0]
    assert list(t.ranks) == expected
    assert t.euler_characteristic == (-1) ** d * k


# --- criterion 4: projection obstruction -------------------------------------


@pytest.mark.criterion("4")
@pytest.mark.parametrize("d", range(2, 11))
@pytest.mark.parametrize("n", range(1, 6))
def test_projection_obstruction(d, n):
    assert projection_check(d, n).obstructed == (n > 1)


@pytest.mark.criterion("4")
def test_planar_projection_two_internal_dimensions():
    p = projection_check(2, 2)
    assert p.obstructed
    assert (p.h1_lower_bound, p.attractor_h1_cap) == (4, 3)


# --- criterion 5: property suites --------------------------------------------


@pytest.mark.criterion("5")
@PROPERTY
@given(generator_sets(n=3, max_gens=4, max_len=5), st.integers(0, 2**32))
def test_folding_confluence(gens, seed):
    ab = ALPHABETS[3]
    g = from_generators(ab, gens)
    shuffled = from_generators(ab, gens, rng=random.Random(seed))
    reversed_ = from_generators(ab, list(reversed(gens)))
    assert g == shuffled == reversed_


def _ball(gens, radius):
    """Every reduced product of at most ``radius`` generators or inverses."""
    letters = list(gens) + [g.inverse() for g in gens]
    found = {Word(())}
    for length in range(1, radius + 1):
        for combo in product(letters, repeat=length):
            w = Word(())
            for x in combo:
                w = w * x
            found.add(w)
    return found


def _bouquet_contains(gens, w):
    """Membership without folding: search the unfolded bouquet of generator
    loops for a closed path whose label freely reduces to ``w``.

    Such a label is z0 x1 z1 ... xn zn with every z_i reducing to the
    identity, so it is enough to know which vertex pairs are joined by an
    identity-reducing path (a Dyck-style closure) and then read w letter by
    letter, closing under those pairs between letters.
    """
    darts = []
    vertices = 1
    for g in gens:
        here = 0
        for k, (x, sign) in enumerate(g.syllables):
            there = 0 if k == len(g) - 1 else vertices
            if there:
                vertices += 1
            darts.append((here, there, (x, sign)))
            darts.append((there, here, (x, -sign)))
            here = there
    null = {(v, v) for v in range(vertices)}
    changed = True
    while changed:
        changed = False
        for u, u2, (x, s) in darts:
            for v2, v, (y, t) in darts:
                if y == x and t == -s and (u2, v2) in null and (u, v) not in null:
                    null.add((u, v))
                    changed = True
        for a, b in list(null):
            for c, d in list(null):
                if b == c and (a, d) not in null:
                    null.add((a, d))
                    changed = True

    def close(states):
        return {v for u, v in null if u in states}

    states = close({0})
    for key in w.syllables:
        states = close({v for u, v, lab in darts if u in states and lab == key})
    return 0 in states


@pytest.mark.criterion("5")
@PROPERTY
@given(generator_sets(n=2, max_gens=2, max_len=3), st.lists(words(2, 6), max_size=4))
def test_membership_against_enumeration(gens, probes):
    ab = ALPHABETS[2]
    g = from_generators(ab, gens)
    ball = _ball(gens, 3)
    for w in ball:
        assert contains(g, w)
    for w in probes:
        inside = contains(g, w)
        if w in ball:
            assert inside
        assert inside == _bouquet_contains(gens, w)


@pytest.mark.criterion("5")
@PROPERTY
@given(generator_sets(n=3, max_gens=3, max_len=4), st.lists(st.tuples(st.integers(0, 9), st.sampled_from((1, -1))), max_size=6))
def test_rewrite_round_trip(gens, raw):
    ab = ALPHABETS[3]
    basis = spanning_basis(from_generators(ab, gens))
    # a random element of the subgroup as a product of the original generators
    w = Word(())
    for i, s in raw:
        g = gens[i % len(gens)]
        w = w * (g if s > 0 else g.inverse())
    u = rewrite_in_basis(basis, w)
    assert expand(basis, u) == w


@pytest.mark.criterion("5")
@PROPERTY
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(endos(letters=n), endos(letters=n))))
def test_abelianization_reverses_products(pair):
    s, t = pair
    assert abelianization(compose(s, t)) == abelianization(t) @ abelianization(s)


@pytest.mark.criterion("5")
@PROPERTY
@given(
    st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
        lambda rc: st.tuples(int_matrices(*rc), unimodular(rc[0]), unimodular(rc[1]))
    )
)
def test_snf_unimodular_invariance(args):
    m, p, q = args
    assert smith_normal_form(p @ m @ q) == smith_normal_form(m)


@pytest.mark.criterion("5")
@PROPERTY
@given(endos(max_letters=3, max_len=3))
def test_tower_monotone_then_constant(e):
    tower = image_tower(e)
    ranks = tower.ranks
    n = tower.plateau_index
    assert all(a > b for a, b in zip(ranks[: n + 1], ranks[1 : n + 1]))
    assert ranks[n] == ranks[n + 1]
    later = image_graphs(e, n + 3)
    assert all(rank(g) == ranks[n] for g in later[n:])
    if tower.ml:
        assert all(g == later[n] for g in later[n:])


@pytest.mark.criterion("5")
@PROPERTY
@given(endos(max_letters=3, max_len=3))
def test_abelian_shortcut_consistency(e):
    if not abelian_tower(abelianization(e)).ml:
        assert not image_tower(e).ml
        assert lim1_verdict(e).verdict.value == "Nontrivial"


def _direct_images(e, n):
    """Core graphs of <e^n(letters)> and <e^(n+1)(letters)>, no tower reuse."""
    power = iterate(e, n)
    return (
        from_generators(e.alphabet, power.images),
        from_generators(e.alphabet, compose(e, power).images),
    )


@pytest.mark.criterion("5")
@PROPERTY
@given(endos(max_letters=3, max_len=3))
def test_ml_against_depth_six_images(e):
    # ranks drop at most r <= 3 times, so the images at depth 5 and 6
    # coincide exactly when the tower is Mittag-Leffler
    g5, g6 = _direct_images(e, 5)
    assert image_tower(e).ml == (g5 == g6)


# --- criterion 6: CLI contract -----------------------------------------------

GRAMMAR_CASES = [
    ("sub", "a -> a b\nb -> a\n", 0),
    ("sub", "# Fibonacci\n\na->ab   # compact\nb->a\n", 0),
    ("sub", "x1 -> x1 x2\nx2 -> x1\n", 0),
    ("endo", "a->aB\nb->a\n", 0),
    ("endo", "a -> b b'\nb -> a\n", 0),
    ("endo", "a -> a a\n", 0),
    ("cohomology", "a -> a b\nb -> a\n", 0),
    ("cohomology", "a -> b b'\nb -> a\n", 0),
    ("sub", "a -> a c\nb -> a\n", 2),
    ("sub", "a = a b\nb -> a\n", 2),
    ("sub", "a -> a b\na -> b\nb -> a\n", 2),
    ("sub", "1 -> 1 2\n2 -> 1\n", 2),
    ("endo", "a -> a b''\nb -> a\n", 2),
    ("endo", "a -> a-b\nb -> a\n", 2),
    ("sub", "x1 -> x1x2\nx2 -> x1\n", 2),
    ("sub", "a -> b b'\nb -> a\n", 3),
    ("sub", "a->aB\nb->a\n", 3),
    ("sub", "a ->\nb -> a\n", 3),
    ("endo", "a ->\nb -> a\n", 3),
    ("sub", "a -> a a\n", 3),
    ("sub", "a -> a\nb -> b\n", 3),
    ("sub", "# nothing\n", 3),
]


@pytest.mark.criterion("6")
@pytest.mark.parametrize("command,text,code", GRAMMAR_CASES)
def test_grammar_exit_codes(tmp_path, capsys, command, text, code):
    path = tmp_path / "input.rules"
    path.write_text(text)
    assert cli.run([command, str(path)]) == code
    err = capsys.readouterr().err
    assert bool(err) == (code != 0)


@pytest.mark.criterion("6")
@pytest.mark.parametrize(
    "argv,code",
    [
        (["torus", "--d", "2", "--k", "1"], 0),
        (["torus", "--d", "1", "--k", "1"], 3),
        (["torus", "--d", "3", "--k", "0"], 3),
        (["projection", "--d", "2", "--n", "2"], 0),
        (["projection", "--d", "1", "--n", "2"], 3),
        (["projection", "--d", "2"], 2),
        (["torus", "--d", "two", "--k", "1"], 2),
        (["frobnicate"], 2),
    ],
)
def test_parameter_exit_codes(capsys, argv, code):
    assert cli.run(argv) == code


GOLDEN = {
    "fib": ("sub", "a -> a b\nb -> a\n"),
    "abc": ("sub", "a -> a b c\nb -> a b c\nc -> a\n"),
    "nonunimodular": ("sub", "a -> a b a b a\nb -> b a a a b\n"),
    "not_onto": ("sub", "a -> a a c a\nb -> a b c a\nc -> b c b\n"),
    "same_cohomology": ("sub", "a -> a b a b a\nb -> b a a\n"),
    "fib_cubed": ("sub", "a -> abaab\nb -> aba\n"),
    "fib_endo": ("endo", "a -> a b\nb -> a\n"),
    "abc_endo": ("endo", "a -> a b c\nb -> a b c\nc -> a\n"),
    "doubling": ("endo", "a -> a a\n"),
    "doubling_h1": ("cohomology", "a -> a a\n"),
    "fib_h1": ("cohomology", "a -> a b\nb -> a\n"),
}


@pytest.mark.criterion("6")
@pytest.mark.parametrize("name", sorted(GOLDEN) + ["torus", "projection"])
def test_json_round_trip(tmp_path, capsys, name):
    if name == "torus":
        argv = ["--json", "torus", "--d", "2", "--k", "1"]
    elif name == "projection":
        argv = ["projection", "--d", "2", "--n", "2", "--json"]
    else:
        command, text = GOLDEN[name]
        path = tmp_path / f"{name}.rules"
        path.write_text(text)
        argv = [command, str(path), "--json"]
    assert cli.run(argv) == 0
    out = capsys.readouterr().out
    data = json.loads(out)
    assert set(data) == {"tool_version", "input", "verdicts", "justifications"}
    env = cli.ReportEnvelope.from_json(out)
    assert json.loads(env.to_json()) == data
    assert cli.ReportEnvelope.from_json(env.to_json()) == env
    assert all(set(j) == {"label", "statement"} for j in data["justifications"])
