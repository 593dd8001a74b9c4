import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerapery.compositions import (
    Composition,
    FormalSum,
    SignedComposition,
    augment,
    compositions_of,
    enumerate_sign_vectors,
    hoffman_dual,
    parse_composition,
    parse_signed_composition,
    quasi_shuffle,
    slice_composition,
    weight_tilde,
)
from eulerapery.finite_sums import finite_zeta


def test_composition_invariants():
    c = Composition((2, 1, 3))
    assert c.weight == 6 and c.depth == 3 and c.is_admissible
    assert not Composition((1, 2)).is_admissible
    for bad in [(), (0,), (2, -1), (1.5,)]:
        with pytest.raises(ValueError):
            Composition(bad)


@pytest.mark.parametrize("m, dual", [((1, 1, 2, 1), (3, 2)), ((1, 2, 1, 1), (2, 3)), ((3,), (1, 1, 1))])
def test_hoffman_dual_examples(m, dual):
    assert hoffman_dual(m) == dual


def test_hoffman_dual_involution_exhaustive():
    seen = 0
    for w in range(1, 13):
        for m in compositions_of(w):
            d = hoffman_dual(m)
            assert d.weight == w
            assert hoffman_dual(d) == m
            seen += 1
    assert seen == 2**12 - 1


def test_hoffman_dual_matches_cut_set_definition():
    # partial sums of m and of its dual partition {1, ..., |m| - 1}
    for w in range(1, 9):
        for m in compositions_of(w):
            d = hoffman_dual(m)
            a = set(itertools.accumulate(m[:-1]))
            b = set(itertools.accumulate(d[:-1]))
            assert a.isdisjoint(b) and a | b == set(range(1, w))


def test_slices():
    assert slice_composition((2, 3, 5), 1, 2, "forward") == (2, 3)
    assert slice_composition((2, 3, 5), 2, 3, "reverse") == (5, 3)
    assert slice_composition((2, 3, 5), 3, 2, "forward") is None


@given(st.lists(st.integers(1, 5), min_size=2, max_size=6), st.data())
def test_slice_concatenation(m, data):
    j = data.draw(st.integers(1, len(m) - 1))
    assert tuple(slice_composition(m, 1, j)) + tuple(slice_composition(m, j + 1, len(m))) == tuple(m)


def test_augment():
    assert augment((2, 3), "plus") == (2, 4)
    assert augment((2, 3), "minus") == (2, 2)
    with pytest.raises(ValueError):
        augment((2, 1), "minus")


def test_quasi_shuffle_examples():
    assert quasi_shuffle((1,), (2,)) == FormalSum({(1, 2): 1, (2, 1): 1, (3,): 1})
    assert quasi_shuffle(None, (4,)) == FormalSum({(4,): 1})
    assert quasi_shuffle((1,), (1,)) == FormalSum({(1, 1): 2, (2,): 1})


def test_quasi_shuffle_square_of_one_by_enumeration():
    # H_n^2 by brute force over index pairs, n <= 10
    for n in range(1, 11):
        direct = sum(Fraction(1, a * b) for a in range(1, n + 1) for b in range(1, n + 1))
        assert quasi_shuffle((1,), (1,)).evaluate(lambda k: finite_zeta(n, k)) == direct


small = st.lists(st.integers(1, 3), min_size=1, max_size=3).filter(lambda m: sum(m) <= 4)


@settings(max_examples=40, deadline=None)
@given(small, small, st.integers(1, 30))
def test_stuffle_exact(a, b, n):
    prod = quasi_shuffle(a, b)
    assert all(isinstance(c, int) for c, _ in prod.terms)
    assert finite_zeta(n, a) * finite_zeta(n, b) == prod.evaluate(lambda k: finite_zeta(n, k))


def test_formal_sum_normalisation():
    s = FormalSum.from_pairs([(1, (2,)), (-1, (2,)), (3, (1, 1))])
    assert s.as_dict() == {(1, 1): 3}
    assert len(FormalSum({(2,): 0})) == 0


def test_weight_tilde():
    assert weight_tilde((2, 3), 2) == 3
    assert weight_tilde((1, 1, 1), 3) == 0
    assert weight_tilde((4,), 1) == 3


def test_sign_vectors():
    assert enumerate_sign_vectors(0) == [()]
    assert enumerate_sign_vectors(1) == [(1,), (-1,)]
    assert enumerate_sign_vectors(2) == [(1, 1), (1, -1), (-1, 1), (-1, -1)]


def test_signed_composition():
    s = parse_signed_composition("-2,3,1:i")
    assert s.parts == (2, 3, 1)
    assert s.roots() == (-1, 1, 1j)
    assert s.level == 4
    assert not SignedComposition((1, 2), (0, 0)).is_convergent
    assert SignedComposition((1, 2), (1, 0)).is_convergent
    with pytest.raises(ValueError):
        SignedComposition((1, 2), (0,))


def test_parse_composition():
    assert parse_composition("2, 1,3") == (2, 1, 3)
    for bad in ["", "2,,1", "a", "0"]:
        with pytest.raises(ValueError):
            parse_composition(bad)
