import itertools
from fractions import Fraction

import mpmath
import pytest

from eulerapery.finite_sums import (
    central_binomial_direct,
    central_binomial_ratio,
    finite_t,
    finite_zeta,
    harmonic,
    odd_harmonic,
)


def brute(n, k, strict, odd=False, x=None):
    """Direct nested loops over index chains."""
    total = Fraction(0)
    r = len(k)
    for idx in itertools.product(range(1, n + 1), repeat=r):
        pairs = zip(idx, idx[1:])
        if strict and not all(a > b for a, b in pairs):
            continue
        if not strict and not all(a >= b for a, b in pairs):
            continue
        term = Fraction(1)
        for i, kj in zip(idx, k):
            term /= (2 * i - 1 if odd else i) ** kj
        if x is not None:
            term *= Fraction(x) ** (2 * idx[-1] - 1 if odd else idx[-1])
        total += term
    return total


def test_examples():
    assert finite_zeta(1, (5,)) == 1
    assert finite_zeta(2, (1, 1), strict=False) == Fraction(7, 4)
    assert finite_zeta(3, (), strict=False, x=Fraction(1, 2)) == Fraction(1, 8)
    assert finite_t(1, (3,)) == 1
    assert finite_t(2, (1,), strict=False) == Fraction(4, 3)
    assert finite_t(1, (2,), strict=False, x=0.7) == pytest.approx(0.7, abs=1e-15)


def test_central_binomial():
    assert central_binomial_ratio(1) == Fraction(1, 2)
    assert central_binomial_ratio(2) == Fraction(3, 8)
    assert central_binomial_ratio(10) == central_binomial_direct(10)


def test_odd_harmonic():
    assert [odd_harmonic(n) for n in (1, 2, 3)] == [1, Fraction(4, 3), Fraction(23, 15)]


@pytest.mark.parametrize("strict", [True, False])
@pytest.mark.parametrize("odd", [True, False])
def test_dp_matches_brute_force(strict, odd):
    fn = finite_t if odd else finite_zeta
    for depth in (1, 2, 3):
        for k in itertools.product((1, 2, 3), repeat=depth):
            for n in (1, 2, 5, 12):
                assert fn(n, k, strict=strict) == brute(n, k, strict, odd)
    for k in [(2,), (1, 2), (2, 1, 1)]:
        assert fn(7, k, strict=False, x=Fraction(2, 5)) == brute(7, k, False, odd, Fraction(2, 5))


def test_degenerate_strict_sums():
    assert finite_zeta(2, (1, 1, 1)) == 0
    assert finite_zeta(3, (1, 1, 1)) == Fraction(1, 6)
    assert finite_t(1, (2, 2)) == 0


def test_monotone_and_parametric_consistency():
    for k in [(1,), (2, 1), (1, 1, 2)]:
        vals = [finite_zeta(n, k, strict=False) for n in range(1, 15)]
        assert vals == sorted(vals)
        assert finite_zeta(9, k, strict=False, x=1) == finite_zeta(9, k, strict=False)
        assert finite_t(9, k, strict=False, x=1) == finite_t(9, k, strict=False)


def test_float_inputs_give_mpmath():
    v = finite_zeta(4, (1,), strict=False, x=0.5)
    assert isinstance(v, mpmath.mpf)
    assert v == pytest.approx(float(brute(4, (1,), False, x=Fraction(1, 2))), rel=1e-15)


def test_harmonic():
    assert harmonic(4) == Fraction(25, 12)
    assert harmonic(3, 2) == Fraction(49, 36)


def test_errors():
    with pytest.raises(ValueError):
        finite_zeta(0, (1,))
    with pytest.raises(ValueError):
        finite_zeta(3, (1,), strict=True, x=Fraction(1, 2))
