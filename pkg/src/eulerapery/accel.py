"""Convergence acceleration for sequences of partial sums.

:func:`extrapolate` is the workhorse of the series engine.  It fits

    S_N = S + sum_{j < J} sum_{i <= d} c_ij N^-(s0 + j*step) (log N)^i

to the trailing checkpoints of a partial-sum sequence, which is the shape of
the remainder of every nested harmonic-type series once the checkpoints are
placed on multiples of the period of the oscillating factors.
:func:`accelerate` is the small general-purpose front end working on a plain
list ``S_1, S_2, ...``.
"""

from __future__ import annotations

import math
from typing import Sequence

import mpmath

__all__ = ["extrapolate", "accelerate", "levin_u", "euler_average", "METHODS"]

METHODS = ("none", "richardson", "levin_u", "euler")


def _first_component(rows, rhs):
    """First unknown of the square system ``rows @ u = rhs`` (partial pivoting).

    ``rhs`` holds one or more right-hand sides per row; all are solved at once.
    """
    m = len(rows)
    a = [list(r) + list(b) for r, b in zip(rows, rhs)]
    nr = len(rhs[0])
    for col in range(m):
        piv = max(range(col, m), key=lambda i: abs(a[i][col]))
        if a[piv][col] == 0:
            raise ZeroDivisionError("singular fit")
        a[col], a[piv] = a[piv], a[col]
        pivot_row = a[col]
        inv = 1 / pivot_row[col]
        for i in range(col + 1, m):
            row = a[i]
            f = row[col] * inv
            if f:
                for j in range(col + 1, m + nr):
                    row[j] -= f * pivot_row[j]
    sol = [[None] * nr for _ in range(m)]
    for i in range(m - 1, -1, -1):
        row = a[i]
        for k in range(nr):
            acc = row[m + k]
            for j in range(i + 1, m):
                acc -= row[j] * sol[j][k]
            sol[i][k] = acc / row[i]
    return sol[0]


def _solve_fit(ns, sums, s0, step, order, degree):
    cols = [(j, i) for j in range(order) for i in range(degree + 1)]
    m = len(cols) + 1
    ns, sums = ns[-m:], sums[-m:]
    rows = []
    for n in ns:
        n = mpmath.mpf(n)
        logn = mpmath.log(n)
        rows.append([mpmath.mpf(1)] + [n ** (-(s0 + j * step)) * logn**i for j, i in cols])
    cplx = any(mpmath.im(v) != 0 for v in sums)
    if cplx:
        rhs = [[mpmath.re(v), mpmath.im(v)] for v in sums]
        re, im = _first_component(rows, rhs)
        return mpmath.mpc(re, im)
    re, = _first_component(rows, [[mpmath.re(v)] for v in sums])
    return re


def extrapolate(ns: Sequence[int], sums: Sequence, s0, degree: int = 0, step=1, max_order: int = 8, tol=None):
    """Generalized Richardson extrapolation on checkpoints ``ns``.

    Returns ``(estimate, err, order)``.  The error is the spread between the
    best order and its predecessor, widened by the shift obtained when the
    newest checkpoint is dropped.
    """
    ns = list(ns)
    sums = list(sums)
    if len(ns) < 3:
        raise ValueError("need at least three checkpoints")
    estimates = []
    for order in range(1, max_order + 1):
        if order * (degree + 1) + 2 > len(ns):
            break
        try:
            estimates.append(_solve_fit(ns, sums, s0, step, order, degree))
        except ZeroDivisionError:
            break
        if (
            tol is not None
            and len(estimates) >= 3
            and abs(estimates[-1] - estimates[-2]) < tol * 1e-6
            and abs(estimates[-2] - estimates[-3]) < tol * 1e-3
        ):
            break
    if len(estimates) < 2:
        return sums[-1], math.inf, 0
    diffs = [abs(estimates[i] - estimates[i - 1]) for i in range(1, len(estimates))]
    best = min(range(len(diffs)), key=lambda i: diffs[i]) + 1
    value = estimates[best]
    err = diffs[best - 1]
    shifted = _solve_fit(ns[:-1], sums[:-1], s0, step, best + 1, degree)
    err = max(err, abs(shifted - value))
    return value, float(err), best + 1


def levin_u(sums: Sequence, beta=1):
    """Levin u-transforms ``L_k`` (k = 1..M-1) of a partial-sum list."""
    s = [mpmath.mpmathify(v) for v in sums]
    terms = [s[0]] + [s[i] - s[i - 1] for i in range(1, len(s))]
    out = []
    for k in range(1, len(s)):
        num = den = mpmath.mpf(0)
        for j in range(k + 1):
            a = terms[j]
            if a == 0:
                continue
            omega = (beta + j) * a
            c = (-1) ** j * mpmath.binomial(k, j) * (mpmath.mpf(beta + j) / (beta + k)) ** (k - 1)
            num += c * s[j] / omega
            den += c / omega
        if den == 0:
            out.append(s[k])
        else:
            out.append(num / den)
    return out


def euler_average(sums: Sequence):
    """Repeated neighbour averaging; returns the successive top-level values."""
    level = [mpmath.mpmathify(v) for v in sums]
    tops = [level[-1]]
    while len(level) > 1:
        level = [(level[i] + level[i + 1]) / 2 for i in range(len(level) - 1)]
        tops.append(level[-1])
    return tops


def _diverging(sums) -> bool:
    terms = [abs(sums[0])] + [abs(sums[i] - sums[i - 1]) for i in range(1, len(sums))]
    q = max(1, len(terms) // 4)
    head = sum(terms[:q]) / q
    tail = sum(terms[-q:]) / q
    return head > 0 and tail >= head


def accelerate(partial_sums: Sequence, method: str = "levin_u"):
    """Estimate the limit of ``S_1, S_2, ...``; returns ``(value, err)``.

    A sequence whose terms do not shrink is reported with an infinite error.
    """
    if len(partial_sums) < 4:
        raise ValueError("need at least four partial sums")
    if method not in METHODS:
        raise ValueError(f"unknown acceleration {method!r}")
    with mpmath.workdps(max(mpmath.mp.dps, 30)):
        sums = [mpmath.mpmathify(v) for v in partial_sums]
        if method == "none":
            value, err = sums[-1], abs(sums[-1] - sums[-2])
        elif method == "levin_u":
            est = levin_u(sums)
            value, err = est[-1], abs(est[-1] - est[-2])
        elif method == "euler":
            est = euler_average(sums)
            value, err = est[-1], abs(est[-1] - est[-2])
        else:
            ns = list(range(1, len(sums) + 1))
            value, err, _ = extrapolate(ns, sums, 1, degree=0, max_order=len(ns) // 2)
        err = float(err)
        if _diverging(sums):
            err = math.inf
        return value, err
