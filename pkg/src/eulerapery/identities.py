"""Named identity checks between independently computed quantities.

Every registry entry builds a left side and a right side from different
primitives.  Typically one is an Euler-Apery type series and the other a
combination of multiple polylogarithms, word integrals or poset integrals.
``verify`` reports the residual.  Before comparing, it asserts that the two
sides share no accelerated series object.
"""

from __future__ import annotations

import fnmatch
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import mpmath

from .compositions import backward, enumerate_sign_vectors, forward, hoffman_dual
from .finite_sums import finite_t, finite_zeta
from .posets import poset_integral, thm36_diagram
from .quadrature import quadrature_eval
from .results import DEFAULT_CONFIG, EvalResult, SeriesConfig, combine, product
from .series import (
    central_binomial_series,
    euler_apery_sum,
    multiple_polylog,
    t_polylog,
    t_value,
)
from .words import CB_SQUARED, W0, W1, X0, X1, XI, XM1, XMI, Y, Z, FormExpr, Word, power, series_eval, trunc_geom

__all__ = [
    "IdentityCheck",
    "CheckReport",
    "REGISTRY",
    "verify",
    "run_suite",
    "structural_reductions",
    "parse_params",
    "MAX_DEPTH",
    "MAX_WEIGHT",
]

MAX_DEPTH = 3
MAX_WEIGHT = 6

# primitive labels whose value comes from an accelerated or truncated infinite series
_ACCELERATED = ("Li[", "ti[", "t*[", "zeta*[", "cb[", "EA[", "quad[")


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    params: dict = field(default_factory=dict)
    tolerance: Optional[float] = None


@dataclass
class CheckReport:
    name: str
    params: dict
    lhs: Optional[EvalResult]
    rhs: Optional[EvalResult]
    residual: float
    passed: bool
    seconds: float
    tolerance: float
    diagnostics: str = ""

    def to_json(self, digits: int = 30) -> dict:
        def side(r):
            if r is None:
                return None
            return {
                "value_re": mpmath.nstr(r.value.real, digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf),
                "value_im": mpmath.nstr(r.value.imag, digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf),
                "err": repr(r.err_estimate),
            }

        out = {
            "name": self.name,
            "params": format_params(self.params),
            "lhs": side(self.lhs),
            "rhs": side(self.rhs),
            "residual": repr(self.residual),
            "tolerance": repr(self.tolerance),
            "pass": self.passed,
            "seconds": round(self.seconds, 6),
        }
        if self.diagnostics:
            out["diagnostics"] = self.diagnostics
        return out


# ---------------------------------------------------------------- parameters

def _composition(v) -> tuple:
    if isinstance(v, str):
        v = [int(s) for s in v.replace("(", "").replace(")", "").split(",") if s.strip()]
    elif isinstance(v, int):
        v = (v,)
    v = tuple(int(s) for s in v)
    if not v or any(s < 1 for s in v):
        raise ValueError(f"not a composition: {v!r}")
    if len(v) > MAX_DEPTH:
        raise ValueError(f"depth {len(v)} above the supported {MAX_DEPTH}")
    if sum(v) > MAX_WEIGHT:
        raise ValueError(f"weight {sum(v)} above the supported {MAX_WEIGHT}")
    return v


def _real(v) -> Fraction:
    if isinstance(v, Fraction):
        x = v
    elif isinstance(v, (int, str)):
        x = Fraction(v)
    else:
        x = Fraction(str(v))
    if not 0 <= x <= 1:
        raise ValueError(f"x = {x} outside [0, 1]")
    return x


def _int(lo: int, hi: int) -> Callable:
    def conv(v):
        if isinstance(v, bool) or (not isinstance(v, (int, str))):
            raise ValueError(f"expected an integer, got {v!r}")
        n = int(v)
        if not lo <= n <= hi:
            raise ValueError(f"{n} outside [{lo}, {hi}]")
        return n

    return conv


def _cb_real(v) -> Fraction:
    x = Fraction(v) if isinstance(v, (int, str, Fraction)) else Fraction(str(v))
    if not -1 <= x < 1:
        raise ValueError(f"x = {x} outside [-1, 1)")
    return x


def format_params(params: dict) -> dict:
    out = {}
    for key in sorted(params):
        v = params[key]
        out[key] = ",".join(map(str, v)) if isinstance(v, tuple) else str(v)
    return out


# ------------------------------------------------------------- primitives

def _mp(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _exact(value, source) -> EvalResult:
    if isinstance(value, Fraction):
        value = _mp(value)
    return EvalResult.exact(value, source=source)


def _li(k, x, cfg) -> EvalResult:
    """``Li_k(x, 1, ..., 1)``; the empty index gives 1."""
    k = tuple(k)
    if not k:
        return EvalResult.exact(1, source="Li()")
    if x == 0:
        return EvalResult.exact(0, source="0")
    return multiple_polylog(k, (x,) + (1,) * (len(k) - 1), cfg)


def _ti(k, x, cfg) -> EvalResult:
    k = tuple(k)
    if not k:
        return EvalResult.exact(1, source="ti()")
    if x == 0:
        return EvalResult.exact(0, source="0")
    return t_polylog(k, x, cfg)


def _ea(k1, tail, cfg, x=None) -> EvalResult:
    if x is None:
        return euler_apery_sum("zeta_star", k1, tail, cfg=cfg)
    return euler_apery_sum("zeta_star_parametric", k1, tail, x, cfg)


def _zs(n, k, x=None) -> Fraction:
    if not k:
        return Fraction(1)
    return finite_zeta(n, k, strict=False, x=x)


def _ts(n, k, x=None) -> Fraction:
    if not k:
        return Fraction(1)
    return finite_t(n, k, strict=False, x=x)


def _dual(m) -> tuple:
    return tuple(hoffman_dual(m))


def _plus_reversed(m) -> tuple:
    """``(m_p, ..., m_2, m_1 + 1)``."""
    r = list(reversed(m))
    r[-1] += 1
    return tuple(r)


def _log2() -> EvalResult:
    return EvalResult.exact(mpmath.log(2), source="const:log2")


def _chained_args(first, sigma, last=None) -> tuple:
    """``(sigma_1 first, sigma_1 sigma_2, ..., sigma_{L-1} sigma_L[, last sigma_L])``."""
    args = [sigma[0] * first] + [sigma[i] * sigma[i + 1] for i in range(len(sigma) - 1)]
    if last is not None:
        args.append(last * sigma[-1])
    return tuple(args)


def _sum(results) -> EvalResult:
    results = list(results)
    if not results:
        return EvalResult.exact(0, source="0")
    return combine((1, r) for r in results)


# ------------------------------------------------------------------ builders

def _lemma_fii1(p, cfg):
    n, m, x = p["n"], p["m"], p["x"]
    word = [power(n)]
    for q in m:
        word += [X1] + [X0] * (q - 1)
    lhs = quadrature_eval(Word(word), 0, float(x), cfg=cfg).scaled(n)
    terms = [((-1) ** len(m), _exact(_zs(n, m, x), "finite"))]
    for j in range(1, len(m) + 1):
        terms.append((-((-1) ** j) * _mp(_zs(n, forward(m, j - 1))), _li(backward(m, j), x, cfg)))
    return lhs, combine(terms)


def _lemma_fiit1(p, cfg):
    n, m, x = p["n"], p["m"], p["x"]
    word = [power(2 * n), W0] + [X0] * (m[0] - 1)
    for q in m[1:]:
        word += [W1] + [X0] * (q - 1)
    lhs = quadrature_eval(Word(word), 0, float(x), cfg=cfg).scaled(2 * n)
    terms = [((-1) ** len(m), _exact(_ts(n, m, x), "finite"))]
    for j in range(1, len(m) + 1):
        terms.append((-((-1) ** j) * _mp(_ts(n, forward(m, j - 1))), _ti(backward(m, j), x, cfg)))
    return lhs, combine(terms)


def _dual_tail_terms(n, m, x, cfg):
    """``zeta*_n(m^v; x) - sum_j (-1)^(p-j) zeta*_n(m_j^v) Li_{<-m_{j+1}}(1-x)``."""
    pp = len(m)
    terms = [(1, _exact(_zs(n, _dual(m), x), "finite"))]
    for j in range(1, pp + 1):
        c = -((-1) ** (pp - j)) * _mp(_zs(n, _dual(forward(m, j))))
        terms.append((c, _li(backward(m, j + 1), 1 - x, cfg)))
    return combine(terms)


def _imp2(p, cfg):
    n, m, x = p["n"], p["m"], p["x"]
    word = []
    for q in range(len(m), 1, -1):
        word += [X1] * (m[q - 1] - 1) + [X0]
    word += [X1] * m[0] + [power(n)]
    rhs = quadrature_eval(Word(word), float(x), 1, cfg=cfg).scaled(n * (-1) ** len(m))
    return _dual_tail_terms(n, m, x, cfg), rhs


def _d1(p, cfg):
    n, m, x = p["n"], p["m"], p["x"]
    word = [trunc_geom(n)] + [X0] * (m[0] - 1)
    for q in m[1:]:
        word += [X1] + [X0] * (q - 1)
    rhs = quadrature_eval(Word(word), 0, float(1 - x), cfg=cfg).scaled((-1) ** len(m))
    return _dual_tail_terms(n, m, x, cfg), rhs


def _thm_eatmzv1(p, cfg):
    k, m = p["k"], p["m"]
    if m[-1] < 2:
        raise ValueError("needs m_p >= 2")
    pp = len(m)
    terms = [(-((-1) ** pp), _ea(k, m, cfg))]
    for j in range(1, pp + 1):
        zeta = _li(backward(m, j), 1, cfg)
        terms.append(((-1) ** j, product(zeta, _ea(k, forward(m, j - 1), cfg))))
    lhs = combine(terms)
    d = _dual((k + 1,) + m[:-1] + (m[-1] - 1,))
    # one sign per argument after the first, so the sum has 2^(depth - 1) terms
    acc = _sum(multiple_polylog(d, (-1,) + (_chained_args(1, s) if s else ()), cfg)
               for s in enumerate_sign_vectors(len(d) - 1))
    return lhs, acc.scaled(2 ** (pp + 1))


def _thm_eatmtv1(p, cfg):
    k, m = p["k"], p["m"]
    if m[-1] < 2:
        raise ValueError("needs m_p >= 2")
    pp = len(m)
    terms = []
    for j in range(1, pp + 2):
        tv = t_value(backward(m, j), cfg)
        ea = euler_apery_sum("t_star", k, forward(m, j - 1), cfg=cfg)
        terms.append(((-1) ** (j - 1), product(tv, ea)))
    lhs = combine(terms)
    word = [Y] * (m[-1] - 1)
    for q in range(pp - 1, 0, -1):
        word += [Z] + [Y] * (m[q - 1] - 1)
    word += [X0] + [Y] * (k - 1)
    tail = FormExpr([(Word((XI,)), 1), (Word((XMI,)), 1), (Word((XM1,)), -2)])
    expr = FormExpr.word(word).concat(tail)
    rhs = series_eval(expr, 1, cfg).scaled(2**k * (-1) ** (sum(m) + k))
    return lhs, rhs


def _thm26_common(k, m, x, cfg):
    """Terms of the parametric theorem shared by the general and ``k = 0`` forms."""
    pp = len(m)
    terms = []
    for j in range(1, pp + 1):
        li = _li(backward(m, j + 1), 1 - x, cfg)
        terms.append(((-1) ** (pp - j), product(li, _ea(k + 2, _dual(forward(m, j)), cfg))))
    return terms


def _sign_sum_26(k, m, x, cfg):
    """``sum_sigma Li_{(<-m)_+, 1_{k+1}}(sigma_1 sqrt(1-x), sigma_1 sigma_2, ..., -sigma_{p+k})``."""
    idx = _plus_reversed(m) + (1,) * (k + 1)
    root = mpmath.sqrt(_mp(1 - x))
    return _sum(multiple_polylog(idx, _chained_args(root, s, -1), cfg)
                for s in enumerate_sign_vectors(len(m) + k))


def _thm_eatmzv2(p, cfg):
    k, m, x = p["k"], p["m"], p["x"]
    pp = len(m)
    lhs = _ea(k + 2, _dual(m), cfg, x)
    plus = _plus_reversed(m)
    terms = _thm26_common(k, m, x, cfg)
    terms.append(((-1) ** (pp + k), product(_log2().scaled(2), _li(plus + (1,) * k, 1 - x, cfg))))
    for j in range(1, k + 1):
        cb = central_binomial_series(j + 1, 1, cfg=cfg)
        terms.append(((-1) ** (pp + k - j), product(_li(plus + (1,) * (k - j), 1 - x, cfg), cb)))
    terms.append(((-1) ** (pp + k) * 2 ** (sum(m) + 2 - pp), _sign_sum_26(k, m, x, cfg)))
    return lhs, combine(terms)


def _cor_cbp3(p, cfg):
    m, x = p["m"], p["x"]
    pp = len(m)
    lhs = _ea(2, _dual(m), cfg, x)
    root = mpmath.sqrt(_mp(1 - x))
    terms = [((-1) ** pp, product(_log2().scaled(2), _li(m[:0:-1] + (m[0] + 1,), 1 - x, cfg)))]
    for j in range(1, pp + 1):
        li = _li(backward(m, j + 1), 1 - x, cfg)
        terms.append(((-1) ** (pp - j), product(li, _ea(2, _dual(forward(m, j)), cfg))))
    idx = m[:0:-1] + (m[0] + 1, 1)
    acc = _sum(multiple_polylog(idx, _chained_args(root, s, -1), cfg) for s in enumerate_sign_vectors(pp))
    terms.append(((-1) ** pp * 2 ** (sum(m) + 2 - pp), acc))
    return lhs, combine(terms)


def _example_mvee(p, cfg):
    m, x = p["m"], p["x"]
    lhs = _ea(2, (1,) * m, cfg, x)
    root = mpmath.sqrt(_mp(1 - x))
    idx = (m + 1, 1)
    rhs = combine([
        (1, _ea(2, (1,) * m, cfg)),
        (-2, product(_log2(), _li((m + 1,), 1 - x, cfg))),
        (-(2 ** (m + 1)), multiple_polylog(idx, (root, -1), cfg)),
        (-(2 ** (m + 1)), multiple_polylog(idx, (-root, 1), cfg)),
    ])
    return lhs, rhs


def _example_mvee_x0(p, cfg):
    m = p["m"]
    lhs = _ea(2, (1,) * m, cfg)
    rhs = combine([
        (2, product(_log2(), multiple_polylog((m + 1,), (1,), cfg))),
        (2 ** (m + 1), multiple_polylog((m + 1, 1), (1, -1), cfg)),
        (2 ** (m + 1), multiple_polylog((m + 1, 1), (-1, 1), cfg)),
    ])
    return lhs, rhs


def _cor_d2(p, cfg):
    m, x = p["m"], p["x"]
    pp = len(m)
    lhs = _ea(1, _dual(m), cfg, x)
    terms = []
    for j in range(1, pp + 1):
        li = _li(backward(m, j + 1), 1 - x, cfg)
        head = _dual(forward(m, j))
        terms.append(((-1) ** (pp - j), product(li, _ea(1, head, cfg))))
    root = mpmath.sqrt(_mp(1 - x))
    idx = _plus_reversed(m)
    if pp == 1:
        acc = multiple_polylog(idx, (-root,), cfg)
    else:
        acc = _sum(multiple_polylog(idx, _chained_args(root, s, -1), cfg) for s in enumerate_sign_vectors(pp - 1))
    terms.append((-((-1) ** pp) * 2 ** (sum(m) + 2 - pp), acc))
    return lhs, combine(terms)


def _closing_1m(p, cfg):
    m = p["m"]
    lhs = _ea(1, (1,) * m, cfg)
    rhs = multiple_polylog((m + 1,), (-1,), cfg).scaled(-(2 ** (m + 1)))
    return lhs, rhs


def _closing_1m_param(p, cfg):
    m, x = p["m"], p["x"]
    lhs = _ea(1, (1,) * m, cfg, x)
    root = mpmath.sqrt(_mp(1 - x))
    rhs = combine([
        (-(2 ** (m + 1)), multiple_polylog((m + 1,), (-1,), cfg)),
        (2 ** (m + 1), _li((m + 1,), -root, cfg)),
    ])
    return lhs, rhs


def _thm36_constants(m):
    pp = len(m)
    return (-1) ** pp * 2 ** (sum(m) + 2 - pp), (-1) ** pp * 2 * mpmath.log(2)


def _thm36_rhs(k, m, x, cfg):
    c1, c2 = _thm36_constants(m)
    root = mpmath.sqrt(_mp(1 - x))
    terms = []
    for i in range(k + 1):
        j = k - i
        terms.append(((-1) ** i * c1, poset_integral(thm36_diagram(m, i, j, "c1"), float(root), cfg)))
        terms.append(((-1) ** i * c2, poset_integral(thm36_diagram(m, i, j, "c2"), float(1 - x), cfg)))
    return combine(terms)


def _thm_gmzsbv(p, cfg):
    k, m, x = p["k"], p["m"], p["x"]
    if x == 0:
        raise ValueError("the poset form needs x > 0")
    pp = len(m)
    terms = [(1, _ea(k + 2, _dual(m), cfg, x))]
    for c, r in _thm26_common(k, m, x, cfg):
        terms.append((-c, r))
    plus = _plus_reversed(m)
    for i in range(1, k + 1):
        cb = central_binomial_series(k - i + 2, 1, cfg=cfg)
        terms.append(((-1) ** (pp + i), product(cb, _li(plus + (1,) * (i - 1), 1 - x, cfg))))
    return combine(terms), _thm36_rhs(k, m, x, cfg)


def _stuffle_example(p, cfg):
    n = p["n"]
    lhs = finite_zeta(n, (1,)) * finite_zeta(n, (2,))
    rhs = finite_zeta(n, (1, 2)) + finite_zeta(n, (2, 1)) + finite_zeta(n, (3,))
    return lhs, rhs


def _cb1(p, cfg):
    x = p["x"]
    lhs = central_binomial_series(1, x, cfg=cfg)
    closed = 2 * mpmath.log(2 / (1 + mpmath.sqrt(1 - _mp(x))))
    return lhs, EvalResult.exact(closed, source="closed:cb1")


# --------------------------------------------------------------- the registry

@dataclass(frozen=True)
class _Entry:
    name: str
    summary: str
    schema: dict
    builder: Callable
    grid: Callable
    tolerance: float
    exact: bool = False
    check: Optional[Callable] = None


def _comps(max_weight, max_depth=MAX_DEPTH, max_part=None):
    out = []
    for w in range(1, max_weight + 1):
        for bits in range(2 ** (w - 1)):
            parts, run = [], 1
            for b in range(w - 1):
                if bits >> b & 1:
                    parts.append(run)
                    run = 1
                else:
                    run += 1
            parts.append(run)
            if len(parts) <= max_depth and (max_part is None or max(parts) <= max_part):
                out.append(tuple(parts))
    return out


_X_GRID = (Fraction(3, 10), Fraction(7, 10))


def _lemma_grid(seed):
    return [{"n": n, "m": m, "x": x}
            for m in _comps(4, 2, 2) for n in range(1, 11) for x in _X_GRID]


def _imp_grid(seed):
    return [{"n": n, "m": m, "x": x} for m in _comps(4) for n in range(1, 9) for x in _X_GRID]


def _cb1_grid(seed):
    rng = random.Random(seed)
    return [{"x": Fraction(round(rng.uniform(-1, 0.99), 12)).limit_denominator(10**12)} for _ in range(20)]


_HALF = Fraction(1, 2)
_M, _N, _K, _X, _MI = "composition", "n", "k", "x", "m-integer"

_SCHEMAS = {
    _M: _composition,
    _N: _int(1, 60),
    _K: _int(0, 4),
    _X: _real,
    _MI: _int(1, 5),
}


def _schema(**kinds):
    return kinds


REGISTRY = {e.name: e for e in [
    _Entry("lemma_fii1", "weighted word integral over [0, x] vs truncated star sums and polylogarithms",
           _schema(n=_N, m=_M, x=_X), _lemma_fii1, _lemma_grid, 1e-9),
    _Entry("lemma_fiit1", "odd-denominator analogue with the forms dt/(1-t^2) and t dt/(1-t^2)",
           _schema(n=_N, m=_M, x=_X), _lemma_fiit1, _lemma_grid, 1e-9),
    _Entry("imp2", "dual star sums minus polylogarithm corrections vs a word integral over [x, 1]",
           _schema(n=_N, m=_M, x=_X), _imp2, _imp_grid, 1e-9),
    _Entry("d1", "the k = -1 form with kernel (1 - (1-t)^n)/t over [0, 1-x], m_1 = 1 included",
           _schema(n=_N, m=_M, x=_X), _d1, _imp_grid, 1e-9),
    _Entry("thm_eatmzv1", "Euler-Apery star combination vs signed alternating polylogarithms",
           _schema(k=_K, m=_M), _thm_eatmzv1,
           lambda s: [{"k": 1, "m": (2,)}, {"k": 2, "m": (2,)}, {"k": 1, "m": (1, 2)},
                      {"k": 1, "m": (3,)}, {"k": 2, "m": (1, 2)}], 1e-7),
    _Entry("thm_eatmtv1", "odd-denominator combination vs a level-four word integral",
           _schema(k=_K, m=_M), _thm_eatmtv1,
           lambda s: [{"k": 1, "m": (2,)}, {"k": 2, "m": (2,)}, {"k": 1, "m": (3,)}, {"k": 1, "m": (1, 2)}],
           1e-6),
    _Entry("thm_eatmzv2", "parametric sum with weight n^(k+2) vs polylogarithms at sqrt(1-x)",
           _schema(k=_K, m=_M, x=_X), _thm_eatmzv2,
           lambda s: [{"k": k, "m": m, "x": x} for k in (0, 1) for m in ((2,), (3,)) for x in (Fraction(0), _HALF)]
           + [{"k": 1, "m": (1, 2), "x": _HALF}, {"k": 2, "m": (2,), "x": _HALF}], 1e-7),
    _Entry("cor_cbp3", "the k = 0 parametric sum in its explicit form",
           _schema(m=_M, x=_X), _cor_cbp3,
           lambda s: [{"m": m, "x": x} for m in ((2,), (3,), (1, 2)) for x in (Fraction(0), _HALF)], 1e-7),
    _Entry("example_mvee", "depth-one specialisation of the k = 0 parametric sum",
           _schema(m=_MI, x=_X), _example_mvee,
           lambda s: [{"m": m, "x": x} for m in (1, 2, 3) for x in (Fraction(1, 4), _HALF)], 1e-8),
    _Entry("example_mvee_x0", "depth-one specialisation at x = 0 in alternating double zeta values",
           _schema(m=_MI), _example_mvee_x0, lambda s: [{"m": m} for m in (1, 2, 3)], 1e-8),
    _Entry("cor_d2", "parametric sum with weight 1/n vs polylogarithms at sqrt(1-x)",
           _schema(m=_M, x=_X), _cor_d2,
           lambda s: [{"m": m, "x": x} for m in ((1,), (2,), (3,), (1, 2)) for x in (Fraction(0), _HALF)], 1e-7),
    _Entry("closing_1m", "sum of zeta*_n(1,...,1) a_n / n vs an alternating zeta value",
           _schema(m=_MI), _closing_1m, lambda s: [{"m": m} for m in (1, 2, 3, 4)], 1e-8),
    _Entry("closing_1m_param", "parametric version of closing_1m",
           _schema(m=_MI, x=_X), _closing_1m_param,
           lambda s: [{"m": m, "x": x} for m in (1, 2, 3) for x in (Fraction(1, 4), _HALF)], 1e-8),
    _Entry("thm_gmzsbv", "parametric sum vs integrals over two labelled posets",
           _schema(k=_K, m=_M, x=_X), _thm_gmzsbv,
           lambda s: [{"k": 0, "m": (2,), "x": _HALF}, {"k": 1, "m": (2,), "x": _HALF},
                      {"k": 0, "m": (1, 2), "x": _HALF}, {"k": 0, "m": (3,), "x": Fraction(1, 5)}], 1e-7),
    _Entry("stuffle_example", "H_n H_n^(2) as truncated double and single zeta values",
           _schema(n=_N), _stuffle_example, lambda s: [{"n": n} for n in range(1, 11)], 0.0, exact=True),
    _Entry("cb1", "generating function of binom(2n,n)/(n 4^n) in closed form",
           {"x": _cb_real}, _cb1, _cb1_grid, 1e-12),
]}


def parse_params(name: str, params: dict) -> dict:
    """Validate and normalise parameters against the entry's schema."""
    entry = _entry(name)
    params = dict(params)
    declared_p = params.pop("p", None)
    out = {}
    for key, kind in entry.schema.items():
        if key not in params:
            raise ValueError(f"{name} needs parameter {key!r}")
        conv = _SCHEMAS[kind] if isinstance(kind, str) else kind
        try:
            out[key] = conv(params.pop(key))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"{name}: bad {key}: {exc}") from None
    if params:
        raise ValueError(f"{name} does not take {sorted(params)}")
    if declared_p is not None and ("m" not in out or int(declared_p) != len(out["m"])):
        raise ValueError("p must equal the depth of m")
    return out


def _entry(name: str) -> _Entry:
    if name not in REGISTRY:
        raise KeyError(f"unknown identity {name!r}; valid names: {', '.join(REGISTRY)}")
    return REGISTRY[name]


def _independent(lhs: EvalResult, rhs: EvalResult) -> bool:
    def accelerated(r):
        return {s for s in r.sources if s.startswith(_ACCELERATED)}

    return not (accelerated(lhs) & accelerated(rhs))


def verify(check, params: Optional[dict] = None, tol: Optional[float] = None,
           cfg: Optional[SeriesConfig] = None) -> CheckReport:
    """Run one registry entry; ``check`` is an ``IdentityCheck`` or a name."""
    if isinstance(check, IdentityCheck):
        name, params, tol = check.name, dict(check.params), check.tolerance if tol is None else tol
    else:
        name, params = check, dict(params or {})
    entry = _entry(name)
    params = parse_params(name, params)
    tol = entry.tolerance if tol is None else float(tol)
    cfg = cfg or DEFAULT_CONFIG
    start = time.perf_counter()
    with mpmath.workdps(cfg.working_precision + 10):
        lhs, rhs = entry.builder(params, cfg)
        if entry.exact:
            residual = abs(lhs - rhs)
            lhs, rhs = _exact(lhs, "finite"), _exact(rhs, "finite")
            residual = float(residual)
        else:
            if not _independent(lhs, rhs):
                raise AssertionError(f"{name}: both sides share an accelerated series")
            residual = float(abs(lhs.value - rhs.value))
    seconds = time.perf_counter() - start
    notes = []
    for side, r in (("lhs", lhs), ("rhs", rhs)):
        if not r.converged:
            notes.append(f"{side} not converged (err {r.err_estimate:.3g}, engine {r.engine})")
    passed = residual <= tol and not notes
    if residual > tol:
        notes.append(f"residual {residual:.3g} above tolerance {tol:.3g}")
    return CheckReport(name, params, lhs, rhs, residual, passed, seconds, tol, "; ".join(notes))


def _failed_report(name, params, tol, exc, seconds=0.0) -> CheckReport:
    return CheckReport(name, params, None, None, math.inf, False, seconds, tol, f"error: {exc}")


def run_suite(filter: Optional[str] = None, cfg: Optional[SeriesConfig] = None, tol: Optional[float] = None,
              seed: int = 0) -> list:
    """Every entry matching the glob ``filter`` over its default grid, sorted by name."""
    reports = []
    for name in sorted(REGISTRY):
        if filter is not None and not fnmatch.fnmatchcase(name, filter):
            continue
        entry = REGISTRY[name]
        for params in entry.grid(seed):
            try:
                reports.append(verify(name, params, tol, cfg))
            except (ValueError, ArithmeticError) as exc:
                reports.append(_failed_report(name, params, tol if tol is not None else entry.tolerance, exc))
    return reports


def structural_reductions(cfg: Optional[SeriesConfig] = None, tol: float = 1e-10) -> list:
    """The ``k = 0`` reductions of the two general theorems to their corollary.

    * the right side of ``thm_eatmzv2`` at ``k = 0`` against that of ``cor_cbp3``;
    * the poset right side of ``thm_gmzsbv`` at ``k = 0`` against the
      ``2 log 2`` and sign-sum terms of ``cor_cbp3``.
    """
    cfg = cfg or DEFAULT_CONFIG
    out = []
    cases = [((2,), Fraction(0)), ((2,), _HALF), ((3,), Fraction(0)), ((3,), _HALF), ((1, 2), _HALF)]
    with mpmath.workdps(cfg.working_precision + 10):
        for m, x in cases:
            params = {"k": 0, "m": m, "x": x}
            start = time.perf_counter()
            _, general = _thm_eatmzv2(params, cfg)
            _, special = _cor_cbp3({"m": m, "x": x}, cfg)
            residual = float(abs(general.value - special.value))
            ok = residual <= tol and general.converged and special.converged
            out.append(CheckReport("reduction:thm_eatmzv2->cor_cbp3", params, general, special, residual, ok,
                                   time.perf_counter() - start, tol))
            if x == 0:
                continue
            start = time.perf_counter()
            poset_side = _thm36_rhs(0, m, x, cfg)
            pp = len(m)
            root = mpmath.sqrt(_mp(1 - x))
            idx = m[:0:-1] + (m[0] + 1, 1)
            signs = _sum(multiple_polylog(idx, _chained_args(root, s, -1), cfg) for s in enumerate_sign_vectors(pp))
            corollary = combine([
                ((-1) ** pp, product(_log2().scaled(2), _li(m[:0:-1] + (m[0] + 1,), 1 - x, cfg))),
                ((-1) ** pp * 2 ** (sum(m) + 2 - pp), signs),
            ])
            residual = float(abs(poset_side.value - corollary.value))
            ok = residual <= tol and poset_side.converged and corollary.converged
            out.append(CheckReport("reduction:thm_gmzsbv->cor_cbp3", params, poset_side, corollary, residual, ok,
                                   time.perf_counter() - start, tol))
    return out
