import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import ALPHABETS, endos, words
from tileshape.errors import DomainError
from tileshape.freegroup import (
    Alphabet,
    FreeEndo,
    Word,
    abelianization,
    apply,
    compose,
    exponent_vector,
    iterate,
    reduce,
)

FEW = settings(max_examples=25)
AB = Alphabet.of("ab")


def test_parse_and_format():
    w = AB.parse("abBA")
    assert w.is_identity
    assert AB.format(w) == "1"
    assert AB.format(AB.parse("aBa")) == "aBa"
    long = Alphabet(("x0", "x1"))
    w = long.parse("x0 x1' x0")
    assert w.syllables == ((0, 1), (1, -1), (0, 1))
    assert long.format(w) == "x0 x1' x0"
    assert long.parse("1").is_identity


def test_alphabet_errors():
    with pytest.raises(DomainError):
        Alphabet(("a", "a"))
    with pytest.raises(DomainError):
        Alphabet(("1",))
    with pytest.raises(DomainError):
        AB.parse("c")


def test_reduce_cancels_adjacent_pairs():
    assert reduce([(0, 1), (1, 1), (1, -1), (0, -1)]).is_identity
    assert reduce([(0, 1), (0, 1)]).syllables == ((0, 1), (0, 1))
    with pytest.raises(DomainError):
        reduce([(0, 2)])
    with pytest.raises(DomainError):
        reduce([(3, 1)], AB)


@FEW
@given(words(3, 8), words(3, 8), words(3, 8))
def test_group_laws(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert (u * u.inverse()).is_identity
    assert u * Word(()) == u
    assert reduce(u.syllables) == u


@FEW
@given(words(3, 8))
def test_format_parse_round_trip(w):
    ab = ALPHABETS[3]
    assert ab.parse(ab.format(w)) == w


@FEW
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(endos(letters=n), words(n), words(n))))
def test_apply_is_a_homomorphism(args):
    e, u, v = args
    assert apply(e, u * v) == apply(e, u) * apply(e, v)
    assert apply(e, u.inverse()) == apply(e, u).inverse()


@FEW
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(endos(letters=n), endos(letters=n), words(n))))
def test_compose_applies_inner_first(args):
    s, t, w = args
    assert apply(compose(s, t), w) == apply(s, apply(t, w))


@FEW
@given(endos(max_len=2), st.integers(0, 3), st.integers(0, 3))
def test_iterate_adds_exponents(e, m, n):
    assert compose(iterate(e, m), iterate(e, n)) == iterate(e, m + n)


def test_fibonacci_abelianization():
    fib = FreeEndo.from_strings("ab", ["ab", "a"])
    assert abelianization(fib).to_lists() == [[1, 1], [1, 0]]
    assert abelianization(iterate(fib, 3)).to_lists() == [[3, 2], [2, 1]]
    assert exponent_vector(AB.parse("aBBa"), 2) == [2, -2]
    assert fib.describe() == {"a": "ab", "b": "a"}


def test_endo_validation():
    with pytest.raises(DomainError):
        FreeEndo(AB, (AB.parse("a"),))
    with pytest.raises(DomainError):
        FreeEndo(AB, (Word(((0, 1), (0, -1))), AB.parse("b")))
    with pytest.raises(DomainError):
        compose(FreeEndo.identity(AB), FreeEndo.identity(Alphabet.of("abc")))
    with pytest.raises(DomainError):
        iterate(FreeEndo.identity(AB), -1)
