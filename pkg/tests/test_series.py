import itertools
import random
from fractions import Fraction

import mpmath
import pytest

from eulerapery.accel import accelerate, extrapolate
from eulerapery.compositions import SignedComposition
from eulerapery.quadrature import quadrature_eval
from eulerapery.results import DEFAULT_CONFIG, EvalResult, SeriesConfig, combine, product
from eulerapery.series import (
    central_binomial_series,
    colored_mzv,
    euler_apery_sum,
    multiple_polylog,
    mzsv,
    mzv,
    t_polylog,
    t_star_value,
    t_value,
)
from eulerapery.words import X0, Word, x_atom


def close(r, target, tol=1e-12):
    assert r.converged
    assert abs(r.value - target) <= tol, (r.value, target)


def test_polylog_examples():
    close(multiple_polylog((2,), (1,)), mpmath.zeta(2))
    close(multiple_polylog((1,), (Fraction(1, 2),)), mpmath.log(2), 1e-30)
    close(multiple_polylog((2,), (-1,)), -mpmath.pi**2 / 12)
    close(mzv((3,), (-1,)), -3 * mpmath.zeta(3) / 4)
    close(mzv((2, 1)), mpmath.zeta(3))
    close(mzv((5, 1)), 3 * mpmath.zeta(6) / 4 - mpmath.zeta(3) ** 2 / 2)
    close(mzv((1, 1), (-1, -1)), (mpmath.log(2) ** 2 - mpmath.zeta(2)) / 2)
    close(multiple_polylog((2,), (1j,)), mpmath.polylog(2, 1j))
    close(multiple_polylog((3, 1), (Fraction(1, 3), 1)),
          mpmath.nsum(lambda n: mpmath.mpf(1) / 3**n / n**3 * mpmath.harmonic(n - 1), [1, mpmath.inf]), 1e-25)


def test_t_values():
    close(t_value((2,)), mpmath.pi**2 / 8)
    close(t_polylog((1,), Fraction(1, 2)), mpmath.log(3) / 2, 1e-30)
    assert t_polylog((3,), 0).value == 0
    close(t_star_value((2,)), mpmath.pi**2 / 8)
    assert t_star_value(()).value == 1
    assert t_value(()).value == 1


def test_t_star_against_quadrature():
    # t*(2,1) = t(2,1) + t(3); t(2,1) through odd-index filtering of level-2 values
    def li_word(k, z):
        xi = [1 / complex(z[0])]
        for zj in z[1:]:
            xi.append(xi[-1] / complex(zj))
        atoms = []
        for kj, x in reversed(list(zip(k, xi))):
            atoms += [x_atom(complex(x).real if complex(x).imag == 0 else complex(x))] + [X0] * (kj - 1)
        return Word(atoms)

    total = 0
    for s1, s2 in itertools.product((1, -1), repeat=2):
        c = (1 if s1 == 1 else -1) * (1 if s2 == 1 else -1)
        total += c * quadrature_eval(li_word((2, 1), (s1, s2)), 0, 1).value
    t21 = total / 4
    ts = t_star_value((2, 1))
    close(ts, t21 + t_value((3,)).value, 1e-8)


def test_depth_one_star_equals_strict():
    for k in range(2, 7):
        close(mzsv((k,)), mzv((k,)).value, 1e-10)
        close(t_star_value((k,)), t_value((k,)).value, 1e-10)


def _coarsenings(k):
    """Compositions obtained by merging adjacent parts (the star expansion)."""
    r = len(k)
    for cuts in itertools.product((False, True), repeat=r - 1):
        out = [k[0]]
        for merge, part in zip(cuts, k[1:]):
            if merge:
                out[-1] += part
            else:
                out.append(part)
        yield tuple(out)


def test_star_dp_matches_inclusion_exclusion():
    for w in range(2, 7):
        for depth in range(1, 4):
            for k in itertools.product(range(1, w + 1), repeat=depth):
                if sum(k) != w or k[0] < 2:
                    continue
                expected = combine((1, mzv(c)) for c in _coarsenings(k))
                close(mzsv(k), expected.value, 1e-10)


def test_central_binomial_examples():
    close(central_binomial_series(1, Fraction(3, 4)), 2 * mpmath.log(mpmath.mpf(4) / 3), 1e-30)
    close(central_binomial_series(1, 1), 2 * mpmath.log(2), 1e-12)
    assert central_binomial_series(1, 0).value == 0
    close(central_binomial_series(0, Fraction(1, 2)), 1 / mpmath.sqrt(mpmath.mpf(1) / 2) - 1, 1e-30)


def test_central_binomial_closed_form_gate():
    rng = random.Random(7)
    for _ in range(20):
        x = rng.uniform(-1, 0.99)
        r = central_binomial_series(1, x)
        close(r, 2 * mpmath.log(2 / (1 + mpmath.sqrt(1 - mpmath.mpf(x)))), 1e-12)


def test_euler_apery_examples():
    close(euler_apery_sum("zeta_star", 1, (1,)), mpmath.pi**2 / 3, 1e-10)
    assert euler_apery_sum("zeta_star_parametric", 2, (1, 2), 0).value == 0
    lhs = euler_apery_sum("zeta_star", 2, (1,))
    rhs = combine([
        (2 * mpmath.log(2), mzv((2,))),
        (4, multiple_polylog((2, 1), (1, -1))),
        (4, multiple_polylog((2, 1), (-1, 1))),
    ])
    close(lhs, rhs.value, 1e-10)
    # with an empty tail the series is the central binomial series at 1
    close(euler_apery_sum("zeta_star", 2, ()), central_binomial_series(2, 1).value, 1e-12)
    close(euler_apery_sum("zeta_star_parametric", 2, (1,), 1), euler_apery_sum("zeta_star", 2, (1,)).value, 1e-12)


def test_errors():
    with pytest.raises(ValueError):
        multiple_polylog((1,), (1,))
    with pytest.raises(ValueError):
        multiple_polylog((2,), (Fraction(3, 2),))
    with pytest.raises(ValueError):
        multiple_polylog((2,), (mpmath.expj(1),))
    with pytest.raises(ValueError):
        t_polylog((1,), -1)
    with pytest.raises(ValueError):
        mzsv((1, 2))
    with pytest.raises(ValueError):
        euler_apery_sum("zeta_star_parametric", 2, (1,))
    with pytest.raises(ValueError):
        euler_apery_sum("bogus", 2, (1,))
    with pytest.raises(ValueError):
        central_binomial_series(0, 1)


def test_config_validation():
    with pytest.raises(ValueError):
        SeriesConfig(max_terms=5)
    with pytest.raises(ValueError):
        SeriesConfig(target_tol=0)
    with pytest.raises(ValueError):
        SeriesConfig(working_precision=10)
    with pytest.raises(ValueError):
        SeriesConfig(acceleration="magic")


def test_converged_implies_error_within_target():
    cfg = DEFAULT_CONFIG
    for r in [mzv((2, 1, 1)), mzv((1, 2), (-1, 1)), euler_apery_sum("t_star", 1, (2,)), t_value((2, 1))]:
        assert r.converged and r.err_estimate <= cfg.target_tol


def test_not_converged_with_tiny_budget():
    cfg = SeriesConfig(max_terms=100, target_tol=1e-30)
    r = euler_apery_sum("zeta_star", 1, (1, 1), cfg=cfg)
    assert not r.converged


ERROR_HONESTY_CASES = [
    ("mzv", lambda cfg: mzv((3, 1), cfg=cfg)),
    ("alt", lambda cfg: mzv((1, 2), (-1, -1), cfg=cfg)),
    ("level4", lambda cfg: multiple_polylog((1, 1), (1j, -1), cfg)),
    ("t", lambda cfg: t_value((2, 1), cfg)),
    ("ea", lambda cfg: euler_apery_sum("zeta_star", 1, (1, 2), cfg=cfg)),
    ("ea_t", lambda cfg: euler_apery_sum("t_star", 2, (1,), cfg=cfg)),
    ("cb", lambda cfg: central_binomial_series(2, 1, cfg=cfg)),
]


@pytest.mark.parametrize("name, fn", ERROR_HONESTY_CASES)
def test_error_honesty(name, fn):
    base = fn(DEFAULT_CONFIG)
    fine = fn(DEFAULT_CONFIG.replace(working_precision=80, max_terms=4 * DEFAULT_CONFIG.max_terms))
    assert base.converged
    assert abs(base.value - fine.value) <= 10 * base.err_estimate + 1e-35


@pytest.mark.parametrize("method", ["richardson", "levin_u", "euler", "none"])
def test_acceleration_methods_alternating(method):
    cfg = DEFAULT_CONFIG.replace(acceleration=method, target_tol=1e-4 if method == "none" else 1e-10)
    r = mzv((2, 1), (-1, 1), cfg=cfg)
    target = mpmath.zeta(3) / 8
    assert r.converged
    assert abs(r.value - target) <= 10 * r.err_estimate + 1e-30


@pytest.mark.parametrize("method", ["richardson", "levin_u", "euler", "none"])
def test_acceleration_error_is_honest_on_positive_terms(method):
    # log(N)/N tails: only Richardson is built for them, the others must say so
    cfg = DEFAULT_CONFIG.replace(acceleration=method)
    r = mzv((2, 1), cfg=cfg)
    assert abs(r.value - mpmath.zeta(3)) <= 10 * r.err_estimate + 1e-30
    if method == "richardson":
        assert r.converged


def test_cross_engine_colored_values():
    rng = random.Random(11)
    roots = {2: [1, -1], 4: [1, -1, 1j, -1j]}
    done = 0
    while done < 20:
        level = rng.choice((2, 4))
        depth = rng.randint(1, 3)
        k = [rng.randint(1, 3) for _ in range(depth)]
        if sum(k) > 5:
            continue
        z = [rng.choice(roots[level]) for _ in range(depth)]
        if k[0] == 1 and z[0] == 1:
            continue
        spec = SignedComposition(k, [{1: 0, -1: level // 2, 1j: level // 4, -1j: 3 * level // 4}[v] for v in z], level)
        series = colored_mzv(spec)
        xi = [1 / complex(z[0])]
        for zj in z[1:]:
            xi.append(xi[-1] / complex(zj))
        atoms = []
        for kj, x in reversed(list(zip(k, xi))):
            atoms += [x_atom(x.real if x.imag == 0 else x)] + [X0] * (kj - 1)
        quad = quadrature_eval(Word(atoms), 0, 1)
        assert abs(series.value - quad.value) <= 1e-8, (k, z)
        done += 1


def test_accelerate_examples():
    sums = list(itertools.accumulate((-1) ** (n + 1) / mpmath.mpf(n) for n in range(1, 21)))
    value, err = accelerate(sums, "levin_u")
    assert abs(value - mpmath.log(2)) < 1e-10
    geo = list(itertools.accumulate(mpmath.mpf(1) / 2**n for n in range(1, 30)))
    value, err = accelerate(geo, "levin_u")
    assert abs(value - 1) < 1e-15
    value, err = accelerate([mpmath.mpf(n) for n in range(1, 30)], "levin_u")
    assert err > 1


def test_extrapolate_power_law():
    ns = [2**j * 10 for j in range(8)]
    target = mpmath.mpf(2)
    sums = [target - mpmath.mpf(1) / n + mpmath.mpf(3) / n**2 for n in ns]
    value, err, order = extrapolate(ns, sums, s0=1)
    assert abs(value - target) < 1e-20


def test_result_arithmetic():
    a = EvalResult(1.5, 1e-10, 10, "series", True, {"a"})
    b = EvalResult(2, 1e-9, 20, "quadrature", True, {"b"})
    s = a + b
    assert s.value == 3.5 and s.err_estimate == pytest.approx(1.1e-9) and s.sources == {"a", "b"}
    assert s.engine == "quadrature+series" and s.terms_used == 20
    p = product(a, b)
    assert p.value == 3 and p.err_estimate == pytest.approx(1.5e-9 + 2e-10 + 1e-19)
    assert (-a).value == -1.5 and (2 * a).err_estimate == 2e-10
    with pytest.raises(ValueError):
        EvalResult(1, -1, 0, "series", True)
