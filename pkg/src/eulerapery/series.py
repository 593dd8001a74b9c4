"""Floating evaluation of nested harmonic-type series.

Every series handled here has the shape

    sum_{n_1 (>|>=) n_2 ... } w(n_1) prod_j x_j^{f(n_j)} / d(n_j)^{k_j}

with ``d(n) = n`` or ``2n - 1``, ``f(n) = n`` or ``2n - 1`` and an optional
central binomial weight ``w(n) = binom(2n, n) / 4^n`` on the outermost index.
One pass over ``n`` keeps the inner sums in a dynamic-programming state held
as fixed-point integers, so the cost is ``O(N * depth)``.

Two regimes:

* ``|x_1| < 1``: terms decay geometrically; sum until a rigorous tail bound
  drops below the working precision.
* ``|x_1| = 1``: partial sums are recorded on a geometric grid of multiples
  of the period of the roots of unity involved and extrapolated with
  :func:`eulerapery.accel.extrapolate`, or with the method named in the
  config.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence

import mpmath

from .accel import euler_average, extrapolate, levin_u
from .compositions import Composition, SignedComposition
from .results import DEFAULT_CONFIG, EvalResult, SeriesConfig

__all__ = [
    "multiple_polylog",
    "mzv",
    "mzsv",
    "colored_mzv",
    "t_polylog",
    "t_value",
    "t_star_value",
    "central_binomial_series",
    "euler_apery_sum",
    "EA_FAMILIES",
    "MAX_DEPTH",
]

MAX_DEPTH = 8
EA_FAMILIES = ("zeta_star", "t_star", "zeta_star_parametric")

# exact quarter turns, as exponents of i
_ROOT_EXPONENTS = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}


class _Level(NamedTuple):
    k: int
    odd: bool
    # None (factor 1), ("root", e) for i**e, or ("value", mpc) with 0 < |x| < 1
    arg: object = None


def _classify(x):
    """Normalise one series argument; returns ``None``, a root tag, a value tag or ``"zero"``."""
    if isinstance(x, Fraction):
        x = mpmath.mpf(x.numerator) / x.denominator
    v = mpmath.mpc(x)
    key = (v.real, v.imag)
    for (re, im), e in _ROOT_EXPONENTS.items():
        if key == (re, im):
            return None if e == 0 else ("root", e)
    if v == 0:
        return "zero"
    mod = abs(v)
    if mod > 1:
        raise ValueError(f"argument {x!r} lies outside the closed unit disk")
    if mod == 1:
        raise ValueError(f"unit-modulus argument {x!r} must be a fourth root of unity")
    return ("value", v)


def _modulus(arg) -> mpmath.mpf:
    if arg is None or arg[0] == "root":
        return mpmath.mpf(1)
    return abs(arg[1])


def _step_exponent(level: _Level) -> int:
    if level.arg is None or level.arg[0] != "root":
        return 0
    e = level.arg[1]
    return (2 * e if level.odd else e) % 4


def _period(levels) -> int:
    period = 1
    for lv in levels:
        e = _step_exponent(lv)
        order = 4 // math.gcd(e, 4) if e else 1
        period = period * order // math.gcd(period, order)
    return period


def _is_complex(levels) -> bool:
    for lv in levels:
        if lv.arg is None:
            continue
        if lv.arg[0] == "root" and lv.arg[1] % 2 == 1:
            return True
        if lv.arg[0] == "value" and lv.arg[1].imag != 0:
            return True
    return False


class _NestedSum:
    """Resumable fixed-point evaluation of the partial sums ``S_N``."""

    def __init__(self, levels: Sequence[_Level], star: bool, central: bool, bits: int):
        self.levels = tuple(levels)
        self.P = bits
        one = 1 << bits
        r = len(levels)
        self.re = [0] * r + [one]
        self.im = [0] * (r + 1)
        self.n = 0
        self.a = one
        self.central = central
        self.order = list(range(r - 1, -1, -1)) if star else list(range(r))
        self.mode = []
        self.e0 = []
        self.estep = []
        self.xfix = []
        self.xstep = []
        self.pw = [None] * r
        for lv in levels:
            mult = 2 if lv.odd else 1
            if lv.arg is None:
                self.mode.append(0)
                self.e0.append(0)
                self.estep.append(0)
                self.xfix.append(None)
                self.xstep.append(None)
            elif lv.arg[0] == "root":
                e = lv.arg[1]
                self.mode.append(1)
                self.e0.append((-e if lv.odd else 0) % 4)
                self.estep.append((mult * e) % 4)
                self.xfix.append(None)
                self.xstep.append(None)
            else:
                v = lv.arg[1]
                s = v**mult
                self.mode.append(2)
                self.e0.append(0)
                self.estep.append(0)
                self.xfix.append(_fix(v, bits))
                self.xstep.append(_fix(s, bits))

    def value(self):
        scale = mpmath.ldexp(1, -self.P)
        return mpmath.mpc(mpmath.mpf(self.re[0]) * scale, mpmath.mpf(self.im[0]) * scale)

    def advance(self, stop: int, checkpoints=()):
        """Sum up to ``n = stop``; return ``[(n, S_n)]`` for checkpoints in range."""
        P = self.P
        s_re, s_im = self.re, self.im
        order, mode, e0, estep = self.order, self.mode, self.e0, self.estep
        odd = [lv.odd for lv in self.levels]
        ks = [lv.k for lv in self.levels]
        pw, xfix, xstep = self.pw, self.xfix, self.xstep
        central = self.central
        a = self.a
        pending = sorted(c for c in checkpoints if self.n < c <= stop)
        idx = 0
        out = []
        for n in range(self.n + 1, stop + 1):
            if central:
                a = a * (2 * n - 1) // (2 * n)
            for j in order:
                re = s_re[j + 1]
                im = s_im[j + 1]
                m = mode[j]
                if m == 1:
                    ph = (e0[j] + estep[j] * n) & 3
                    if ph == 1:
                        re, im = -im, re
                    elif ph == 2:
                        re, im = -re, -im
                    elif ph == 3:
                        re, im = im, -re
                elif m == 2:
                    if n == 1:
                        pr, pi = xfix[j]
                    else:
                        qr, qi = pw[j]
                        sr, si = xstep[j]
                        pr = (qr * sr - qi * si) >> P
                        pi = (qr * si + qi * sr) >> P
                    pw[j] = (pr, pi)
                    re, im = (re * pr - im * pi) >> P, (re * pi + im * pr) >> P
                if central and j == 0:
                    re = (a * re) >> P
                    im = (a * im) >> P
                d = (2 * n - 1 if odd[j] else n) ** ks[j]
                s_re[j] += re // d
                if im:
                    s_im[j] += im // d
            if idx < len(pending) and n == pending[idx]:
                idx += 1
                out.append((n, self.value()))
        self.n = max(self.n, stop)
        self.a = a
        return out


def _fix(v, bits):
    v = mpmath.mpc(v)
    return (int(mpmath.nint(mpmath.ldexp(v.real, bits))), int(mpmath.nint(mpmath.ldexp(v.imag, bits))))


def _geometric_bound(rho, r: int, N: int):
    """Bound on ``sum_{n > N} rho^n n^(r-1)``."""
    N1 = N + 1
    q = rho * (1 + mpmath.mpf(1) / N1) ** (r - 1)
    if q >= 1:
        return mpmath.inf
    return 2 * rho**N1 * mpmath.mpf(N1) ** (r - 1) / (1 - q)


def _transient_ratio(levels):
    """Largest modulus below 1 of a product of consecutive arguments, or 0."""
    mods = [_modulus(lv.arg) ** (2 if lv.odd else 1) for lv in levels]
    best = mpmath.mpf(0)
    for i in range(len(mods)):
        p = mpmath.mpf(1)
        for j in range(i, len(mods)):
            p *= mods[j]
            if p < 1:
                best = max(best, p)
    return best


def _checkpoints(period: int, limit: int, per_octave: int = 8):
    pts = set()
    t = 0
    while True:
        c = period * math.ceil(2 ** (t / per_octave) * 16 / period)
        if c > limit:
            break
        pts.add(c)
        t += 1
    return sorted(pts)


def _result(value, err, terms, cfg, label):
    converged = math.isfinite(err) and err <= cfg.target_tol
    return EvalResult(value, err, terms, "series", converged, frozenset({label}))


@lru_cache(maxsize=8192)
def _evaluate(levels: tuple, star: bool, central: bool, cfg: SeriesConfig, label: str) -> EvalResult:
    dps = cfg.working_precision
    bits = int((dps + 30) * 3.33) + 16
    with mpmath.workdps(dps + 30):
        if any(lv.arg == "zero" for lv in levels):
            return EvalResult.exact(0, source=label)
        outer = levels[0]
        rho = _modulus(outer.arg) ** (2 if outer.odd else 1)
        if rho < 1:
            value, err, terms = _sum_geometric(levels, star, central, cfg, bits, rho)
        else:
            value, err, terms = _sum_unit(levels, star, central, cfg, bits)
    return _result(+value, err, terms, cfg, label)


def _sum_geometric(levels, star, central, cfg, bits, rho):
    r = len(levels)
    eps = mpmath.mpf(10) ** (-(cfg.working_precision + 5))
    target = _first_below(lambda N: _geometric_bound(rho, r, N), eps, cfg.max_terms)
    if target is None:
        loose = mpmath.mpf(cfg.target_tol) * mpmath.mpf("1e-4")
        target = _first_below(lambda N: _geometric_bound(rho, r, N), loose, cfg.max_terms)
    if target is None:
        target = cfg.max_terms
    kern = _NestedSum(levels, star, central, bits)
    kern.advance(target)
    err = _geometric_bound(rho, r, target)
    return kern.value(), float(err), target


def _first_below(bound, eps, limit):
    """Smallest power-of-two-ish ``N <= limit`` with ``bound(N) < eps``."""
    N = 8
    while N <= limit:
        if bound(N) < eps:
            lo, hi = N // 2, N
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if bound(mid) < eps:
                    hi = mid
                else:
                    lo = mid
            return hi
        N *= 2
    return limit if bound(limit) < eps else None


def _sum_unit(levels, star, central, cfg, bits):
    dps = cfg.working_precision
    period = _period(levels)
    outer = levels[0]
    constant_outer = _step_exponent(outer) == 0
    s0 = mpmath.mpf(outer.k) - (1 if constant_outer else 0) + (mpmath.mpf(1) / 2 if central else 0)
    degree = len(levels) - 1
    tau = _transient_ratio(levels)
    n_min = 0
    if tau > 0:
        n_min = int(mpmath.ceil(-(dps + 10) * mpmath.log(10) / mpmath.log(tau)))
    kern = _NestedSum(levels, star, central, bits)
    method = cfg.acceleration
    limit = cfg.max_terms - cfg.max_terms % period
    if limit < period:
        limit = period

    if method == "none":
        half = max(period, (limit // 2) - (limit // 2) % period)
        pts = kern.advance(limit, [half, limit])
        values = dict(pts)
        v = kern.value()
        return v, float(abs(v - values.get(half, v))) if half != limit else math.inf, limit

    # Both transforms are tuned for alternating outer terms; a rerun on half the
    # data guards the error estimate on sequences they do not fit.
    if method == "levin_u":
        # conditionally convergent level-4 sums go in blocks of one period
        step = period if period == 4 and outer.k == 1 else 1
        blocks = min(limit // step, 40)
        stop = blocks * step
        pts = kern.advance(stop, [step * b for b in range(1, blocks + 1)])
        sums = [v for _, v in pts]
        if len(sums) < 6:
            return kern.value(), math.inf, stop
        est = levin_u(sums)
        diffs = [abs(est[i] - est[i - 1]) for i in range(1, len(est))]
        best = min(range(len(diffs)), key=lambda i: diffs[i]) + 1
        half = levin_u(sums[: len(sums) // 2])[-1]
        return est[best], max(float(max(diffs[best - 1], abs(est[best] - half))), 10.0 ** -dps), stop

    if method == "euler":
        stop = min(limit, 8192)
        lo = max(1, stop - 63)
        mid = max(1, stop // 2)
        pts = dict(kern.advance(stop, sorted(set(range(lo, stop + 1)) | set(range(max(1, mid - 63), mid + 1)))))
        est = euler_average([pts[n] for n in range(lo, stop + 1)])
        half = euler_average([pts[n] for n in range(max(1, mid - 63), mid + 1)])
        return est[-1], max(float(max(abs(est[-1] - est[-2]), abs(est[-1] - half[-1]))), 10.0 ** -dps), stop

    grid = _checkpoints(period, limit)
    N = min(limit, max(4096, 8 * n_min))
    collected = []
    value, err = None, math.inf
    while True:
        collected += kern.advance(N, grid)
        lo = max(N / 16, n_min)
        window = [(n, v) for n, v in collected if n >= lo]
        if len(window) >= 4:
            ns = [n for n, _ in window]
            sums = [v for _, v in window]
            max_order = max(1, (len(ns) - 2) // (degree + 1))
            value, err, _ = extrapolate(ns, sums, s0, degree, 1, max_order, tol=cfg.target_tol)
        elif collected:
            value = collected[-1][1]
        else:
            value = kern.value()
        if err <= cfg.target_tol * 1e-3 or N >= limit:
            return value, err, N
        N = min(limit, 2 * N)


def _check_composition(k, allow_empty=False):
    k = tuple(k)
    if not k:
        if allow_empty:
            return k
        raise ValueError("empty composition")
    Composition(k)
    if len(k) > MAX_DEPTH:
        raise ValueError(f"depth {len(k)} exceeds the supported maximum {MAX_DEPTH}")
    return k


def _fmt_arg(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    v = mpmath.mpc(x)
    if v.imag == 0:
        return mpmath.nstr(v.real, 25)
    return mpmath.nstr(v, 25)


def _config(cfg):
    return DEFAULT_CONFIG if cfg is None else cfg


def multiple_polylog(k: Sequence[int], args: Sequence, cfg: Optional[SeriesConfig] = None) -> EvalResult:
    """``Li_k(x_1, ..., x_r) = sum_{n_1 > ... > n_r > 0} prod x_j^{n_j} / n_j^{k_j}``.

    Each ``|x_j| <= 1``; arguments of modulus one must be fourth roots of unity.
    """
    k = _check_composition(k)
    args = tuple(args)
    if len(args) != len(k):
        raise ValueError("need one argument per part")
    tags = tuple(_classify(x) for x in args)
    if k[0] == 1 and tags[0] is None:
        raise ValueError("divergent: k_1 = 1 with x_1 = 1")
    levels = tuple(_Level(kj, False, t) for kj, t in zip(k, tags))
    label = f"Li[{','.join(map(str, k))}]({';'.join(_fmt_arg(x) for x in args)})"
    return _evaluate(levels, False, False, _config(cfg), label)


def mzv(k: Sequence[int], signs: Optional[Sequence[int]] = None, cfg: Optional[SeriesConfig] = None) -> EvalResult:
    """Multiple zeta value, or an alternating one when ``signs`` are given."""
    k = tuple(k)
    if not k:
        return EvalResult.exact(1, source="zeta()")
    signs = (1,) * len(k) if signs is None else tuple(signs)
    if any(s not in (1, -1) for s in signs):
        raise ValueError("signs must be +1 or -1")
    return multiple_polylog(k, signs, cfg)


def colored_mzv(spec: SignedComposition, cfg: Optional[SeriesConfig] = None) -> EvalResult:
    """Colored MZV of level 1, 2 or 4."""
    if 4 % spec.level:
        raise ValueError("only levels 1, 2 and 4 are supported")
    return multiple_polylog(tuple(spec.parts), spec.roots(), cfg)


def mzsv(k: Sequence[int], cfg: Optional[SeriesConfig] = None) -> EvalResult:
    """Multiple zeta star value through the star recursion."""
    k = _check_composition(k, allow_empty=True)
    if not k:
        return EvalResult.exact(1, source="zeta*()")
    if k[0] < 2:
        raise ValueError("star values need k_1 >= 2")
    levels = tuple(_Level(kj, False, None) for kj in k)
    return _evaluate(levels, True, False, _config(cfg), f"zeta*[{','.join(map(str, k))}]")


def t_polylog(k: Sequence[int], x, cfg: Optional[SeriesConfig] = None) -> EvalResult:
    """``ti_k(x) = sum x^(2 n_1 - 1) / prod (2 n_j - 1)^{k_j}`` over strict chains, ``x`` real."""
    k = _check_composition(k)
    if isinstance(x, Fraction):
        x = mpmath.mpf(x.numerator) / x.denominator
    if mpmath.im(mpmath.mpc(x)) != 0:
        raise ValueError("x must be real with |x| <= 1")
    xv = mpmath.mpf(mpmath.re(x))
    if abs(xv) > 1:
        raise ValueError("x must be real with |x| <= 1")
    if k[0] == 1 and abs(xv) == 1:
        raise ValueError("divergent: k_1 = 1 with |x| = 1")
    tag = _classify(x)
    levels = (_Level(k[0], True, tag),) + tuple(_Level(kj, True, None) for kj in k[1:])
    label = f"ti[{','.join(map(str, k))}]({_fmt_arg(x)})"
    return _evaluate(levels, False, False, _config(cfg), label)


def t_value(k: Sequence[int], cfg: Optional[SeriesConfig] = None) -> EvalResult:
    k = tuple(k)
    if not k:
        return EvalResult.exact(1, source="t()")
    if k[0] < 2:
        raise ValueError("t-values need k_1 >= 2")
    return t_polylog(k, 1, cfg)


def t_star_value(k: Sequence[int], cfg: Optional[SeriesConfig] = None) -> EvalResult:
    k = _check_composition(k, allow_empty=True)
    if not k:
        return EvalResult.exact(1, source="t*()")
    if k[0] < 2:
        raise ValueError("t-star values need k_1 >= 2")
    levels = tuple(_Level(kj, True, None) for kj in k)
    return _evaluate(levels, True, False, _config(cfg), f"t*[{','.join(map(str, k))}]")


def central_binomial_series(k: int, x, form: str = "plain", cfg: Optional[SeriesConfig] = None) -> EvalResult:
    """``sum_{n>=1} binom(2n,n)/4^n * x^n / n^k``; ``form="squared"`` uses ``x^(2n)``."""
    if not isinstance(k, int) or k < 0:
        raise ValueError("k must be a nonnegative integer")
    if form not in ("plain", "squared"):
        raise ValueError(f"unknown form {form!r}")
    with mpmath.workdps(_config(cfg).working_precision + 30):
        xv = mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpf(x)
        if abs(xv) > 1:
            raise ValueError("x must satisfy |x| <= 1")
        if k == 0 and abs(xv) == 1:
            raise ValueError("divergent: k = 0 on the unit circle")
        arg = xv if form == "plain" else xv * xv
        tag = _classify(arg)
    label = f"cb[{form},{k}]({_fmt_arg(x)})"
    return _evaluate((_Level(k, False, tag),), False, True, _config(cfg), label)


def euler_apery_sum(
    family: str,
    k1: int,
    tail: Sequence[int] = (),
    x=None,
    cfg: Optional[SeriesConfig] = None,
) -> EvalResult:
    """``sum_n a_n / n^k1 * inner_n(tail)`` with ``a_n = binom(2n,n)/4^n``.

    ``inner_n`` is ``zeta*_n`` (``zeta_star``), ``t*_n`` (``t_star``) or
    ``zeta*_n(tail; x)`` (``zeta_star_parametric``, ``x`` in ``[0, 1]``).
    """
    if family not in EA_FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if not isinstance(k1, int) or k1 < 1:
        raise ValueError("k1 must be a positive integer")
    tail = tuple(tail or ())
    if tail:
        _check_composition(tail)
        if len(tail) >= MAX_DEPTH:
            raise ValueError("tail too deep")
    odd = family == "t_star"
    levels = [_Level(k1, False, None)] + [_Level(t, odd, None) for t in tail]
    label = f"EA[{family}]({k1};{','.join(map(str, tail))}"
    if family == "zeta_star_parametric":
        if x is None:
            raise ValueError("the parametric family needs x")
        xv = mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpf(x)
        if not 0 <= xv <= 1:
            raise ValueError("x must lie in [0, 1]")
        levels[-1] = levels[-1]._replace(arg=_classify(x))
        label += f";x={_fmt_arg(x)}"
    elif x is not None:
        raise ValueError(f"family {family!r} takes no x")
    return _evaluate(tuple(levels), True, True, _config(cfg), label + ")")
