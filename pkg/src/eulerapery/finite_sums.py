"""Finite nested harmonic sums, evaluated exactly where possible.

All sums run over ``n >= n_1 (>|>=) n_2 ... (>|>=) n_r >= 1``.  The
``zeta`` variant uses denominators ``n_j``, the ``t`` variant uses
``2 n_j - 1``.  The parametric (``x``) forms put ``x**n_r`` (resp.
``x**(2 n_r - 1)``) on the innermost index and are only defined for star
sums.

Integer, ``Fraction`` and ``None`` inputs give ``Fraction`` results; a float
or mpmath ``x`` switches the evaluation to mpmath at the current precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

import mpmath

__all__ = [
    "FiniteSumSpec",
    "finite_zeta",
    "finite_t",
    "central_binomial_ratio",
    "odd_harmonic",
    "harmonic",
    "nested_sum",
]


@dataclass(frozen=True)
class FiniteSumSpec:
    k: tuple
    strict: bool = False
    variant: str = "zeta"
    x: object = None

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(self.k))
        if any(not isinstance(p, int) or p < 1 for p in self.k):
            raise ValueError(f"bad composition {self.k!r}")
        if self.variant not in ("zeta", "t"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.x is not None:
            if self.strict:
                raise ValueError("parametric sums are star sums")
            if not 0 <= self.x <= 1:
                raise ValueError("x must lie in [0, 1]")

    def __call__(self, n: int):
        return nested_sum(n, self.k, strict=self.strict, odd=self.variant == "t", x=self.x)


def _exact(x) -> bool:
    return x is None or isinstance(x, (int, Fraction))


def nested_sum(n: int, k: Sequence[int], strict: bool = False, odd: bool = False, x=None):
    """Inner-to-outer DP over ``n' = 1..n`` in ``O(n * depth)`` operations."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    k = tuple(k)
    r = len(k)
    if _exact(x):
        one, xv = Fraction(1), None if x is None else Fraction(x)
    else:
        one, xv = mpmath.mpf(1), mpmath.mpf(x)
    if r == 0:
        if xv is None:
            return one
        return xv ** (2 * n - 1) if odd else xv**n
    # s[j] = partial sum over the chain n_{j+1}..n_r; s[r] is the empty chain
    s = [0 * one] * r + [one]
    order = range(r) if strict else range(r - 1, -1, -1)
    for m in range(1, n + 1):
        d = 2 * m - 1 if odd else m
        for j in order:
            inner = s[j + 1]
            if j == r - 1 and xv is not None:
                inner = inner * xv**d
            s[j] = s[j] + inner / d ** k[j]
    return s[0]


def finite_zeta(n: int, k: Sequence[int], strict: bool = True, x=None):
    """``zeta_n(k)`` when ``strict`` else ``zeta*_n(k)``; ``x`` gives ``zeta*_n(k; x)``."""
    if x is not None and strict:
        raise ValueError("the parametric sum is a star sum")
    if isinstance(k, FiniteSumSpec):
        return k(n)
    return nested_sum(n, k, strict=strict, x=x)


def finite_t(n: int, k: Sequence[int], strict: bool = True, x=None):
    """``t_n(k)`` when ``strict`` else ``t*_n(k)``; ``x`` gives ``t*_n(k; x)``."""
    if x is not None and strict:
        raise ValueError("the parametric sum is a star sum")
    return nested_sum(n, k, strict=strict, odd=True, x=x)


def harmonic(n: int, order: int = 1) -> Fraction:
    return nested_sum(n, (order,), strict=True)


def odd_harmonic(n: int) -> Fraction:
    """``1 + 1/3 + ... + 1/(2n-1)``."""
    return nested_sum(n, (1,), strict=True, odd=True)


def central_binomial_ratio(n: int) -> Fraction:
    """``binom(2n, n) / 4**n`` through ``a_n = a_{n-1} (2n-1)/(2n)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = Fraction(1)
    for m in range(1, n + 1):
        a = a * (2 * m - 1) / (2 * m)
    return a


def central_binomial_direct(n: int) -> Fraction:
    return Fraction(comb(2 * n, n), 4**n)
