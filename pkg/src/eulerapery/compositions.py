"""Compositions, signed compositions and their exact combinatorics.

A composition is a nonempty tuple of positive integers.  The empty
composition shows up only as the identity of the quasi-shuffle product and
as the result of empty slices; those places use ``None`` (or ``()`` where a
plain index tuple is expected).
"""

from __future__ import annotations

import cmath
import itertools
import math
from collections import Counter
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

__all__ = [
    "Composition",
    "SignedComposition",
    "FormalSum",
    "hoffman_dual",
    "slice_composition",
    "augment",
    "quasi_shuffle",
    "weight_tilde",
    "enumerate_sign_vectors",
    "compositions_of",
    "parse_composition",
    "parse_signed_composition",
]


class Composition(tuple):
    """Immutable nonempty tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(parts)
        if not parts:
            raise ValueError("a composition needs at least one part")
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, int) or p < 1:
                raise ValueError(f"composition parts must be positive integers, got {p!r}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def depth(self) -> int:
        return len(self)

    @property
    def is_admissible(self) -> bool:
        return self[0] >= 2

    def __repr__(self) -> str:
        return f"Composition({','.join(map(str, self))})"

    def __str__(self) -> str:
        return ",".join(map(str, self))


def _as_tuple(m) -> tuple:
    return () if m is None else tuple(m)


def hoffman_dual(m: Sequence[int]) -> Composition:
    """Swap commas and plus signs in the all-ones expansion of ``m``.

    >>> hoffman_dual((1, 1, 2, 1))
    Composition(3,2)
    """
    m = Composition(m)
    w = m.weight
    # bit b (1 <= b < w) is set when a comma follows the b-th one
    commas = set(itertools.accumulate(m[:-1]))
    parts, run = [], 1
    for b in range(1, w):
        if b in commas:
            run += 1
        else:
            parts.append(run)
            run = 1
    parts.append(run)
    return Composition(parts)


def slice_composition(m: Sequence[int], i: int, j: int, direction: str = "forward") -> Optional[Composition]:
    """Return ``(m_i, ..., m_j)`` (forward) or ``(m_j, ..., m_i)`` (reverse).

    Indices are 1-based.  ``i > j`` gives the empty composition (``None``).
    """
    m = tuple(m)
    p = len(m)
    if direction not in ("forward", "reverse"):
        raise ValueError(f"unknown direction {direction!r}")
    if i > j:
        if not (1 <= i <= p + 1 and 0 <= j <= p):
            raise IndexError(f"slice ({i}, {j}) out of range for depth {p}")
        return None
    if not (1 <= i <= p and 1 <= j <= p):
        raise IndexError(f"slice ({i}, {j}) out of range for depth {p}")
    part = m[i - 1 : j]
    return Composition(part if direction == "forward" else part[::-1])


def forward(m: Sequence[int], j: int) -> tuple:
    """Prefix ``(m_1, ..., m_j)`` as a plain tuple (empty for ``j = 0``)."""
    return tuple(m[:j])


def backward(m: Sequence[int], j: int) -> tuple:
    """Reversed suffix ``(m_p, ..., m_j)`` as a plain tuple (empty for ``j > p``)."""
    return tuple(reversed(m[j - 1 :]))


def augment(m: Sequence[int], mode: str) -> Composition:
    """Add (``plus``) or remove (``minus``) one unit on the last part."""
    m = Composition(m)
    if mode == "plus":
        return Composition(m[:-1] + (m[-1] + 1,))
    if mode == "minus":
        if m[-1] <= 1:
            raise ValueError("augment(minus) needs a last part greater than 1")
        return Composition(m[:-1] + (m[-1] - 1,))
    raise ValueError(f"unknown mode {mode!r}")


def weight_tilde(m: Sequence[int], j: int) -> int:
    """``m_1 + ... + m_j - j``."""
    if not 1 <= j <= len(m):
        raise IndexError(f"index {j} out of range for depth {len(m)}")
    return sum(m[:j]) - j


def enumerate_sign_vectors(length: int) -> list:
    """All vectors in ``{+1, -1}^length``, lexicographic with +1 first."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    return list(itertools.product((1, -1), repeat=length))


def compositions_of(weight: int) -> Iterator[Composition]:
    """Every composition of ``weight``, in bit-string order."""
    if weight < 1:
        return
    for bits in range(2 ** (weight - 1)):
        parts, run = [], 1
        for b in range(weight - 1):
            if bits >> b & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield Composition(parts)


class FormalSum:
    """Integer linear combination of compositions (``()`` is the empty one)."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        c = Counter()
        for key, coef in (terms or {}).items():
            c[_as_tuple(key)] += coef
        self._terms = {k: v for k, v in c.items() if v != 0}

    @classmethod
    def from_pairs(cls, pairs) -> "FormalSum":
        c = Counter()
        for coef, comp in pairs:
            c[_as_tuple(comp)] += coef
        return cls(c)

    @property
    def terms(self) -> list:
        """``(coefficient, composition-or-None)`` pairs in a canonical order."""
        return [
            (coef, Composition(k) if k else None)
            for k, coef in sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
        ]

    def as_dict(self) -> dict:
        return dict(self._terms)

    def __eq__(self, other):
        if isinstance(other, FormalSum):
            return self._terms == other._terms
        return NotImplemented

    def __add__(self, other: "FormalSum") -> "FormalSum":
        c = Counter(self._terms)
        c.update(other._terms)
        return FormalSum(c)

    def __len__(self):
        return len(self._terms)

    def __repr__(self):
        if not self._terms:
            return "FormalSum(0)"
        bits = []
        for coef, comp in self.terms:
            label = f"({comp})" if comp is not None else "()"
            bits.append(label if coef == 1 else f"{coef}*{label}")
        return "FormalSum(" + " + ".join(bits) + ")"

    def evaluate(self, fn) -> object:
        """Sum ``coef * fn(composition_tuple)`` over the terms."""
        return sum((coef * fn(k) for k, coef in self._terms.items()), 0)


def _stuffle(a: tuple, b: tuple) -> Counter:
    if not a:
        return Counter({b: 1})
    if not b:
        return Counter({a: 1})
    out = Counter()
    head_a, rest_a = a[0], a[1:]
    head_b, rest_b = b[0], b[1:]
    for w, c in _stuffle(rest_a, b).items():
        out[(head_a,) + w] += c
    for w, c in _stuffle(a, rest_b).items():
        out[(head_b,) + w] += c
    for w, c in _stuffle(rest_a, rest_b).items():
        out[(head_a + head_b,) + w] += c
    return out


def quasi_shuffle(a: Optional[Sequence[int]], b: Optional[Sequence[int]]) -> FormalSum:
    """Stuffle product of strict harmonic sums.

    ``zeta_n(a) * zeta_n(b) == sum(c * zeta_n(w))`` for every ``n``.
    """
    return FormalSum(_stuffle(_as_tuple(a), _as_tuple(b)))


class SignedComposition:
    """A composition together with roots of unity of a fixed level.

    ``colors[j]`` is an exponent ``e`` modulo ``level`` and stands for
    ``exp(2*pi*i*e/level)``.
    """

    __slots__ = ("parts", "colors", "level")

    def __init__(self, parts: Sequence[int], colors: Sequence[int], level: int = 2):
        if level < 1:
            raise ValueError("level must be positive")
        self.parts = Composition(parts)
        self.level = level
        self.colors = tuple(int(e) % level for e in colors)
        if len(self.colors) != self.parts.depth:
            raise ValueError("need exactly one color per part")

    def __eq__(self, other):
        if not isinstance(other, SignedComposition):
            return NotImplemented
        return (self.parts, self.roots_as_fractions()) == (other.parts, other.roots_as_fractions())

    def __hash__(self):
        return hash((self.parts, self.roots_as_fractions()))

    def roots_as_fractions(self) -> tuple:
        return tuple(Fraction(e, self.level) for e in self.colors)

    def roots(self) -> tuple:
        """The colors as exact Python numbers for levels 1, 2, 4, else as complex floats."""
        return tuple(root_value(f) for f in self.roots_as_fractions())

    @property
    def is_convergent(self) -> bool:
        return not (self.parts[0] == 1 and self.colors[0] == 0)

    def __repr__(self):
        return f"SignedComposition({self})"

    def __str__(self):
        bits = []
        for k, f in zip(self.parts, self.roots_as_fractions()):
            if f == 0:
                bits.append(str(k))
            elif f == Fraction(1, 2):
                bits.append(f"-{k}")
            elif f == Fraction(1, 4):
                bits.append(f"{k}:i")
            elif f == Fraction(3, 4):
                bits.append(f"{k}:-i")
            else:
                bits.append(f"{k}:{f.numerator}/{f.denominator}")
        return ",".join(bits)


def root_value(f: Fraction):
    """``exp(2*pi*i*f)``; exact for multiples of 1/4."""
    f = Fraction(f) % 1
    exact = {Fraction(0): 1, Fraction(1, 2): -1, Fraction(1, 4): 1j, Fraction(3, 4): -1j}
    if f in exact:
        return exact[f]
    return cmath.exp(2j * cmath.pi * float(f))


def parse_composition(text: str) -> Composition:
    """Parse ``"2,1,3"``."""
    try:
        return Composition(int(tok) for tok in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise ValueError(f"bad composition {text!r}: {exc}") from None


_SUFFIXES = {"1": Fraction(0), "-1": Fraction(1, 2), "i": Fraction(1, 4), "-i": Fraction(3, 4)}


def parse_signed_composition(text: str) -> SignedComposition:
    """Parse ``"-2,3,-1,4"`` (bars as minus signs) or ``"2:i,1:-1"``."""
    parts, roots = [], []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            raise ValueError(f"bad signed composition {text!r}")
        if ":" in tok:
            k, suffix = tok.split(":", 1)
            if suffix not in _SUFFIXES:
                raise ValueError(f"unknown color suffix {suffix!r}")
            root = _SUFFIXES[suffix]
        elif tok.startswith("-"):
            k, root = tok[1:], Fraction(1, 2)
        else:
            k, root = tok, Fraction(0)
        parts.append(int(k))
        roots.append(root)
    level = 1
    for r in roots:
        level = level * r.denominator // math.gcd(level, r.denominator)
    return SignedComposition(parts, [int(r * level) for r in roots], level)
