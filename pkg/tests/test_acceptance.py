"""Acceptance criteria, one test each, printing one PASS/FAIL line per criterion.

Run directly (``python3 tests/test_acceptance.py``) or through pytest.
"""

import itertools
import random
import sys
import time
from fractions import Fraction

import mpmath
import pytest

from eulerapery.compositions import compositions_of, hoffman_dual, quasi_shuffle
from eulerapery.finite_sums import finite_zeta
from eulerapery.identities import run_suite, structural_reductions, verify
from eulerapery.posets import FivePoset, adjoin, count_linear_extensions, is_admissible, linearize, poset_integral
from eulerapery.quadrature import quadrature_eval
from eulerapery.results import SeriesConfig
from eulerapery.series import _evaluate
from eulerapery.words import X0, X1, XI, XM1, XMI, Word, word_to_series

CFG = SeriesConfig(working_precision=40)
_T0 = time.perf_counter()


_CAPTURE = []


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    _CAPTURE.append(capsys)
    yield
    _CAPTURE.pop()


def report(number, title, ok, detail):
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    with _CAPTURE[-1].disabled():
        print("\n" + line, flush=True)
    return ok


def checks(reports, tol):
    worst = max(r.residual for r in reports)
    ok = all(r.passed and r.residual <= tol for r in reports)
    return ok, worst


def test_criterion_01_closing_family():
    times, reps = [], []
    for m in (1, 2, 3, 4):
        _evaluate.cache_clear()
        start = time.perf_counter()
        reps.append(verify("closing_1m", {"m": m}, tol=1e-8, cfg=CFG))
        times.append(time.perf_counter() - start)
    ok, worst = checks(reps, 1e-8)
    ok = ok and max(times) <= 60
    assert report(1, "sum zeta*_n(1_m) a_n/n = -2^(m+1) zeta(bar(m+1)), m=1..4", ok,
                  f"max residual {worst:.2e} (tol 1e-08), slowest m {max(times):.2f} s (limit 60 s)")


def test_criterion_02_example_at_zero():
    reps = [verify("example_mvee_x0", {"m": m}, tol=1e-8, cfg=CFG) for m in (1, 2, 3)]
    ok, worst = checks(reps, 1e-8)
    assert report(2, "x = 0 example, m=1..3", ok, f"max residual {worst:.2e} (tol 1e-08)")


def test_criterion_03_cb1():
    _evaluate.cache_clear()
    start = time.perf_counter()
    reps = run_suite("cb1", CFG, tol=1e-12, seed=0)
    elapsed = time.perf_counter() - start
    ok, worst = checks(reps, 1e-12)
    ok = ok and len(reps) == 20 and elapsed < 1
    assert report(3, "central binomial generating function at 20 random x", ok,
                  f"max residual {worst:.2e} (tol 1e-12), {elapsed:.3f} s (limit 1 s)")


def test_criterion_04_lemma_grids():
    start = time.perf_counter()
    reps = run_suite("lemma_*", CFG, tol=1e-9)
    elapsed = time.perf_counter() - start
    ok, worst = checks(reps, 1e-9)
    ok = ok and len(reps) == 240 and elapsed < 300
    assert report(4, "truncated-sum lemmas, n<=10, p<=2, parts<=2, x in {0.3, 0.7}", ok,
                  f"{len(reps)} checks, max residual {worst:.2e} (tol 1e-09), {elapsed:.1f} s")


def test_criterion_05_duality_grids():
    reps = run_suite("imp2", CFG, tol=1e-9) + run_suite("d1", CFG, tol=1e-9)
    ok, worst = checks(reps, 1e-9)
    ok = ok and len(reps) == 448
    assert report(5, "duality identity and its k=-1 form, weight<=4, n<=8", ok,
                  f"{len(reps)} checks, max residual {worst:.2e} (tol 1e-09)")


def test_criterion_06_thm_eatmzv1():
    reps = [verify("thm_eatmzv1", {"k": k, "m": m}, tol=1e-7, cfg=CFG) for k, m in [(1, (2,)), (2, (2,)), (1, (1, 2))]]
    ok, worst = checks(reps, 1e-7)
    assert report(6, "recurrence vs 2^(p+1) signed polylogarithms", ok, f"max residual {worst:.2e} (tol 1e-07)")


def test_criterion_07_thm_eatmtv1():
    rep = verify("thm_eatmtv1", {"k": 1, "m": (2,)}, tol=1e-6, cfg=CFG)
    ok, worst = checks([rep], 1e-6)
    assert report(7, "odd-denominator combination vs level-4 word", ok, f"residual {worst:.2e} (tol 1e-06)")


def test_criterion_08_parametric_family():
    reps = []
    for m in ((2,), (3,)):
        for x in (Fraction(0), Fraction(1, 2)):
            for k in (0, 1):
                reps.append(verify("thm_eatmzv2", {"k": k, "m": m, "x": x}, tol=1e-7, cfg=CFG))
            reps.append(verify("cor_cbp3", {"m": m, "x": x}, tol=1e-7, cfg=CFG))
            reps.append(verify("cor_d2", {"m": m, "x": x}, tol=1e-7, cfg=CFG))
    ok, worst = checks(reps, 1e-7)
    red = [r for r in structural_reductions(CFG, tol=1e-10) if len(r.params["m"]) == 1]
    ok_red, worst_red = checks(red, 1e-10)
    assert report(8, "parametric sums p=1 and the two k=0 reductions", ok and ok_red,
                  f"{len(reps)} checks max residual {worst:.2e} (tol 1e-07); "
                  f"{len(red)} reductions max {worst_red:.2e} (tol 1e-10)")


def test_criterion_09_poset_form():
    rep = verify("thm_gmzsbv", {"k": 0, "m": (2,), "x": Fraction(1, 2)}, tol=1e-7, cfg=CFG)
    ok, worst = checks([rep], 1e-7)
    assert report(9, "parametric sum vs poset integrals, p=1, m=(2), k=0, x=0.5", ok,
                  f"residual {worst:.2e} (tol 1e-07)")


def _random_poset(rng, size):
    nodes = [f"v{i}" for i in range(size)]
    order = nodes[:]
    rng.shuffle(order)
    covers = [(order[i], order[j]) for i in range(size) for j in range(i + 1, size) if rng.random() < 0.3]
    return FivePoset(nodes, covers, {v: rng.choice((-2, -1, 0, 1, 2)) for v in nodes})


def test_criterion_10_property_suites():
    notes = []
    ok = True
    # Hoffman involution, exhaustive to weight 12
    n_dual = 0
    for w in range(1, 13):
        for m in compositions_of(w):
            ok &= hoffman_dual(hoffman_dual(m)) == m
            n_dual += 1
    notes.append(f"dual involution {n_dual} compositions")
    # stuffle, random pairs, all n <= 30
    rng = random.Random(0)
    small = [tuple(m) for w in range(1, 5) for m in compositions_of(w)]
    for _ in range(25):
        a, b = rng.choice(small), rng.choice(small)
        prod = quasi_shuffle(a, b)
        for n in range(1, 31):
            ok &= finite_zeta(n, a) * finite_zeta(n, b) == prod.evaluate(lambda k: finite_zeta(n, k))
    notes.append("stuffle 25 pairs x 30 n")
    # shuffle additivity on 25 random admissible 6-node posets
    done, worst = 0, 0.0
    while done < 25:
        X = _random_poset(rng, 6)
        pairs = [(a, b) for a in X.nodes for b in X.nodes if a != b and not X.comparable(a, b)]
        if not is_admissible(X) or not pairs:
            continue
        a, b = rng.choice(pairs)
        Xab, Xba = adjoin(X, a, b), adjoin(X, b, a)
        ok &= linearize(X) == linearize(Xab) + linearize(Xba)
        diff = abs(poset_integral(X, 0.6).value - poset_integral(Xab, 0.6).value - poset_integral(Xba, 0.6).value)
        worst = max(worst, float(diff))
        done += 1
    ok &= worst <= 1e-10
    notes.append(f"poset additivity 25 posets max {worst:.1e}")
    # linear extensions vs permutation filter, up to 7 nodes
    for size in range(1, 8):
        for _ in range(5):
            X = _random_poset(rng, size)
            brute = sum(all(p.index(a) < p.index(b) for a, b in X.covers) for p in itertools.permutations(X.nodes))
            ok &= count_linear_extensions(X) == brute
    notes.append("extension counts 35 posets")
    # cross-engine agreement on 200 admissible words of weight <= 5
    pure = (X0, X1, XM1, XI, XMI)
    words = [Word(w) for n in range(1, 6) for w in itertools.product(pure, repeat=n) if w[0] != X0 and w[-1] != X1]
    worst = 0.0
    for w in random.Random(1).sample(words, 200):
        worst = max(worst, float(abs(word_to_series(w, 1, CFG).value - quadrature_eval(w, 0, 1).value)))
    ok &= worst <= 1e-8
    notes.append(f"cross-engine 200 words max {worst:.1e}")
    total = time.perf_counter() - _T0
    ok &= total <= 1800
    notes.append(f"acceptance run so far {total:.0f} s")
    assert report(10, "property suites", bool(ok), "; ".join(notes))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
