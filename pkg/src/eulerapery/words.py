"""One-forms, words of one-forms and their exact linear algebra.

A word ``(a_1, ..., a_p)`` stands for the iterated integral

    int_{lower < t_1 < ... < t_p < upper} a_1(t_1) ... a_p(t_p)

so the first atom sits at the smallest variable.  Pure atoms are
``x_xi = dt / (xi - t)`` for ``xi`` in ``{1, -1, i, -i}`` and ``x_0 = dt/t``.
Everything else is either a fixed linear combination of pure atoms
(``w0``, ``w1``, ``y``, ``z`` and the two poset forms) or a kernel that only
the quadrature engine understands.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import mpmath

__all__ = [
    "GaussianRational",
    "FormAtom",
    "Word",
    "FormExpr",
    "X0",
    "X1",
    "XM1",
    "XI",
    "XMI",
    "W0",
    "W1",
    "Y",
    "Z",
    "X2",
    "XM2",
    "CB_PLAIN",
    "CB_SQUARED",
    "CB_REFLECTED",
    "LOG1P_OVER_T",
    "x_atom",
    "power",
    "trunc_geom",
    "expand",
    "pullback",
    "word_to_series",
    "series_eval",
    "parse_word",
    "SUBSTITUTIONS",
]


class GaussianRational:
    """``a + b i`` with rational ``a`` and ``b``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im
        elif isinstance(re, complex):
            re, im = Fraction(re.real), Fraction(re.imag)
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, v) -> "GaussianRational":
        return v if isinstance(v, GaussianRational) else cls(v)

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_mpc(self):
        return mpmath.mpc(mpmath.mpf(self.re.numerator) / self.re.denominator, mpmath.mpf(self.im.numerator) / self.im.denominator)

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}i)"


@dataclass(frozen=True)
class FormAtom:
    """A one-form; ``param`` is ``xi`` for ``x``, ``c`` for ``pow``, ``n`` for ``geom``."""

    kind: str
    param: object = None

    def __str__(self):
        if self.kind == "x":
            return _X_NAMES[self.param]
        if self.kind == "pow":
            return f"t^{_num(self.param - 1)}"
        if self.kind == "geom":
            return f"g{self.param}"
        return _KIND_NAMES[self.kind]

    @property
    def is_pure(self) -> bool:
        return self.kind == "x"

    @property
    def is_kernel(self) -> bool:
        return self.kind in _KERNELS


def _num(v):
    return str(int(v)) if float(v).is_integer() else str(v)


_X_NAMES = {0: "x0", 1: "x1", -1: "x-1", 1j: "xi", -1j: "x-i"}
_KIND_NAMES = {
    "w0": "w0",
    "w1": "w1",
    "y": "y",
    "z": "z",
    "x2": "x2",
    "xm2": "x-2",
    "cb_plain": "cb1",
    "cb_squared": "cb2",
    "cb_reflected": "cbr",
    "log1p_over_t": "L",
}
_KERNELS = {"cb_plain", "cb_squared", "cb_reflected", "log1p_over_t", "pow", "geom"}


def x_atom(xi) -> FormAtom:
    """``x_xi``; ``xi`` is 0 or a fourth root of unity."""
    c = complex(xi)
    for key in _X_NAMES:
        if c == key:
            return FormAtom("x", key if key in (0, 1, -1) else complex(key))
    raise ValueError(f"x_xi needs xi in {{0, +-1, +-i}}, got {xi!r}")


X0, X1, XM1, XI, XMI = (x_atom(v) for v in (0, 1, -1, 1j, -1j))
W0 = FormAtom("w0")
W1 = FormAtom("w1")
Y = FormAtom("y")
Z = FormAtom("z")
X2 = FormAtom("x2")
XM2 = FormAtom("xm2")
CB_PLAIN = FormAtom("cb_plain")
CB_SQUARED = FormAtom("cb_squared")
CB_REFLECTED = FormAtom("cb_reflected")
LOG1P_OVER_T = FormAtom("log1p_over_t")


def power(c) -> FormAtom:
    """``t^(c-1) dt`` for real ``c >= 1``."""
    if c < 1:
        raise ValueError("power(c) needs c >= 1")
    return FormAtom("pow", c)


def trunc_geom(n: int) -> FormAtom:
    """``(1 - (1-t)^n)/t dt = sum_{j<n} (1-t)^j dt``."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("trunc_geom needs a positive integer")
    return FormAtom("geom", n)


class Word(tuple):
    """Tuple of :class:`FormAtom`, first atom at the smallest variable."""

    __slots__ = ()

    def __new__(cls, atoms: Iterable[FormAtom] = ()):
        atoms = tuple(atoms)
        for a in atoms:
            if not isinstance(a, FormAtom):
                raise TypeError(f"not a FormAtom: {a!r}")
        return super().__new__(cls, atoms)

    def __str__(self):
        return " ".join(map(str, self)) if self else "1"

    def __repr__(self):
        return f"Word({self})"


class FormExpr:
    """Linear combination of words with Gaussian-rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc = defaultdict(GaussianRational)
        if isinstance(terms, dict):
            terms = terms.items()
        for key, coef in terms or ():
            acc[Word(key)] = acc[Word(key)] + GaussianRational.coerce(coef)
        self._terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def word(cls, atoms, coef=1) -> "FormExpr":
        return cls([(Word(atoms), coef)])

    @property
    def terms(self):
        return sorted(((c, w) for w, c in self._terms.items()), key=lambda cw: (len(cw[1]), str(cw[1])))

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, FormExpr):
            return self._terms == other._terms
        return NotImplemented

    def __add__(self, other: "FormExpr") -> "FormExpr":
        return FormExpr(list(self._terms.items()) + list(other._terms.items()))

    def __sub__(self, other: "FormExpr") -> "FormExpr":
        return self + other.scale(-1)

    def scale(self, c) -> "FormExpr":
        c = GaussianRational.coerce(c)
        return FormExpr([(w, c * v) for w, v in self._terms.items()])

    def concat(self, other: "FormExpr") -> "FormExpr":
        """Word-wise concatenation ``self`` then ``other``."""
        out = []
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                out.append((Word(w1 + w2), c1 * c2))
        return FormExpr(out)

    @property
    def atoms(self) -> set:
        return {a for w in self._terms for a in w}

    def __repr__(self):
        if not self._terms:
            return "FormExpr(0)"
        return "FormExpr(" + " + ".join(f"{c}*[{w}]" for c, w in self.terms) + ")"


def _lin(*pairs) -> FormExpr:
    return FormExpr([(Word((a,)), c) for c, a in pairs])


_HALF = Fraction(1, 2)
_EXPANSIONS = {
    W0: _lin((_HALF, X1), (-_HALF, XM1)),
    W1: _lin((_HALF, X1), (_HALF, XM1)),
    Y: _lin((1, XMI), (1, XI), (-1, XM1), (-1, X1)),
    Z: _lin((-1, X0), (-1, XMI), (-1, XI)),
    XM2: _lin((1, X1), (1, XM1)),
    X2: _lin((1, X1), (-1, XM1)),
}


def atom_expansion(a: FormAtom) -> FormExpr:
    if a.is_pure:
        return FormExpr.word((a,))
    if a in _EXPANSIONS:
        return _EXPANSIONS[a]
    raise ValueError(f"kernel atom {a} has no expansion into pure forms")


def expand(e) -> FormExpr:
    """Rewrite every composite atom as a combination of pure ``x_xi`` atoms."""
    e = _as_expr(e)
    out = FormExpr()
    for w, c in e.items():
        acc = FormExpr.word(())
        for a in w:
            acc = acc.concat(atom_expansion(a))
        out = out + acc.scale(c)
    return out


def _as_expr(e) -> FormExpr:
    if isinstance(e, FormExpr):
        return e
    if isinstance(e, FormAtom):
        return FormExpr.word((e,))
    return FormExpr.word(Word(e))


# Pullback tables: formal image of each atom, including the factor from dt.
_SUB_ONE_MINUS = {
    X0: _lin((-1, X1)),
    X1: _lin((-1, X0)),
    CB_PLAIN: _lin((-1, CB_REFLECTED)),
    CB_REFLECTED: _lin((-1, CB_PLAIN)),
}
_SUB_SQUARE = {
    X0: _lin((2, X0)),
    X1: _lin((1, X1), (1, XM1)),
    XM1: _lin((1, XI), (1, XMI)),
    CB_REFLECTED: _lin((-2, XM1)),
}
_SUB_CAYLEY = {
    X0: _lin((1, Y)),
    W0: _lin((-1, X0)),
    W1: _lin((1, Z)),
    X1: _lin((-2, X0), (-1, XI), (-1, XMI)),
    XM1: _lin((-1, XI), (-1, XMI)),
    CB_SQUARED: _lin((-1, XI), (-1, XMI), (2, XM1)),
}


def _sqrt_map(t):
    return mpmath.sqrt(t)


def _cayley_inverse(t):
    t = mpmath.mpf(t)
    return mpmath.sqrt((1 - t) / (1 + t))


# name -> (table, reverses orientation, inverse map on endpoints)
SUBSTITUTIONS = {
    "one_minus": (_SUB_ONE_MINUS, True, lambda t: 1 - mpmath.mpf(t)),
    "square": (_SUB_SQUARE, False, _sqrt_map),
    "cayley": (_SUB_CAYLEY, True, _cayley_inverse),
}
_SUB_ALIASES = {
    "t->1-t": "one_minus",
    "t->t^2": "square",
    "t->(1-t^2)/(1+t^2)": "cayley",
}


def _pow_square(a: FormAtom):
    # t^(c-1) dt -> 2 u^(2c-1) du
    return _lin((2, power(2 * a.param)))


def pullback(e, sub: str, lower=0, upper=1):
    """Change variables ``t = phi(u)`` in every word.

    Returns ``(expr, new_lower, new_upper)`` with ``new_lower < new_upper``.
    """
    sub = _SUB_ALIASES.get(sub, sub)
    if sub not in SUBSTITUTIONS:
        raise ValueError(f"unknown substitution {sub!r}")
    table, reverses, inverse = SUBSTITUTIONS[sub]
    e = _as_expr(e)
    out = FormExpr()
    for w, c in e.items():
        acc = FormExpr.word(())
        for a in w:
            if a in table:
                img = table[a]
            elif sub == "square" and a.kind == "pow":
                img = _pow_square(a)
            else:
                raise ValueError(f"no pullback of {a} under {sub}")
            acc = acc.concat(img)
        if reverses:
            acc = FormExpr([(Word(reversed(v)), k * (-1) ** len(v)) for v, k in acc.items()])
        out = out + acc.scale(c)
    lo, hi = inverse(lower), inverse(upper)
    if reverses:
        lo, hi = hi, lo
    return out, lo, hi


def _li_data(w: Word, z):
    """Parse ``x_{xi_r} x0^{k_r-1} ... x_{xi_1} x0^{k_1-1}`` into ``(k, args)``."""
    if not w:
        raise ValueError("empty word")
    if any(not a.is_pure for a in w):
        raise ValueError("word_to_series needs a pure word; call expand first")
    if w[0] == X0:
        raise ValueError("divergent: x0 at the smallest variable")
    blocks = []
    for a in w:
        if a == X0:
            blocks[-1][1] += 1
        else:
            blocks.append([a.param, 1])
    blocks.reverse()  # now xi_1 first
    ks = tuple(b[1] for b in blocks)
    xis = [complex(b[0]) for b in blocks]
    args = [_root_quotient(z, xis[0])]
    for j in range(1, len(xis)):
        args.append(_root_quotient(xis[j - 1], xis[j]))
    return ks, tuple(args)


def _root_quotient(num, xi):
    # xi is a fourth root of unity, so 1/xi is its conjugate
    q = complex(xi).conjugate()
    if isinstance(num, complex):
        v = num * q
        return complex(round(v.real), round(v.imag))
    if q == 1:
        return num
    if q == -1:
        return -num
    return mpmath.mpc(0, q.imag) * num


def word_to_series(w, z=1, cfg=None):
    """Evaluate ``int_0^z`` of a pure word through the multiple polylogarithm."""
    from .series import multiple_polylog

    w = Word(w)
    zv = z if isinstance(z, Fraction) else mpmath.mpf(z)
    if not 0 < zv <= 1:
        raise ValueError("z must lie in (0, 1]")
    if zv == 1:
        zv = 1
    ks, args = _li_data(w, zv)
    return multiple_polylog(ks, args, cfg)


def series_eval(e, z=1, cfg=None):
    """Series-route value of ``int_0^z`` of a word combination."""
    from .results import EvalResult, combine

    e = expand(e)
    pairs = []
    for w, c in e.items():
        if not w:
            pairs.append((c.to_mpc(), EvalResult.exact(1, source="1")))
        else:
            pairs.append((c.to_mpc(), word_to_series(w, z, cfg)))
    if not pairs:
        return EvalResult.exact(0, source="0")
    return combine(pairs)


_TEXT_ATOMS = {
    "x0": X0,
    "x1": X1,
    "x-1": XM1,
    "xi": XI,
    "x-i": XMI,
    "w0": W0,
    "w1": W1,
    "y": Y,
    "z": Z,
    "x2": X2,
    "x-2": XM2,
    "cb1": CB_PLAIN,
    "cb2": CB_SQUARED,
    "cbr": CB_REFLECTED,
    "L": LOG1P_OVER_T,
}


def parse_word(text: str) -> Word:
    """Parse whitespace-separated atoms, leftmost at the smallest variable.

    Besides the named atoms, ``t^e`` is ``t^e dt`` and ``gN`` is
    ``trunc_geom(N)``.
    """
    atoms = []
    for tok in text.split():
        if tok in _TEXT_ATOMS:
            atoms.append(_TEXT_ATOMS[tok])
        elif tok.startswith("t^"):
            atoms.append(power(int(tok[2:]) + 1))
        elif tok.startswith("g") and tok[1:].isdigit():
            atoms.append(trunc_geom(int(tok[1:])))
        else:
            raise ValueError(f"unknown atom {tok!r}")
    if not atoms:
        raise ValueError("empty word")
    return Word(atoms)
