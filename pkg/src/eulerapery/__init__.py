"""Euler-Apery type series, multiple zeta values and their integral representations.

The package evaluates multiple harmonic (star) sums, multiple zeta, t- and
polylogarithm values, Euler-Apery type series with central binomial weights,
iterated integrals of words and of labelled posets, and checks identities
that relate these objects.
"""

from .compositions import (
    Composition,
    FormalSum,
    SignedComposition,
    hoffman_dual,
    parse_composition,
    parse_signed_composition,
    quasi_shuffle,
)
from .finite_sums import finite_t, finite_zeta
from .identities import REGISTRY, CheckReport, IdentityCheck, run_suite, verify
from .posets import FivePoset, is_admissible, linearize, load_poset, poset_integral
from .quadrature import quadrature_eval
from .results import DEFAULT_CONFIG, EvalResult, SeriesConfig
from .series import (
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
from .words import FormExpr, Word, parse_word, pullback, series_eval, word_to_series

__version__ = "0.1.0"
