"""Configuration and result records shared by the numerical engines."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import mpmath

from .accel import METHODS

__all__ = ["SeriesConfig", "EvalResult", "combine", "product", "DEFAULT_CONFIG"]


@dataclass(frozen=True)
class SeriesConfig:
    max_terms: int = 200_000
    target_tol: float = 1e-10
    acceleration: str = "richardson"
    working_precision: int = 40

    def __post_init__(self):
        if self.max_terms < 10:
            raise ValueError("max_terms must be at least 10")
        if not self.target_tol > 0:
            raise ValueError("target_tol must be positive")
        if self.working_precision < 17:
            raise ValueError("working_precision must be at least 17 digits")
        if self.acceleration not in METHODS:
            raise ValueError(f"unknown acceleration {self.acceleration!r}")

    def replace(self, **changes) -> "SeriesConfig":
        return dataclasses.replace(self, **changes)


DEFAULT_CONFIG = SeriesConfig()


@dataclass(frozen=True)
class EvalResult:
    """A numerical value with an error estimate.

    ``sources`` names the primitive evaluations the value was built from.  Two
    results computed along independent routes have disjoint sources.
    """

    value: mpmath.mpc
    err_estimate: float
    terms_used: int
    engine: str
    converged: bool
    sources: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "value", mpmath.mpc(self.value))
        object.__setattr__(self, "err_estimate", float(self.err_estimate))
        object.__setattr__(self, "sources", frozenset(self.sources))
        if not self.err_estimate >= 0:
            raise ValueError("err_estimate must be nonnegative")

    @classmethod
    def exact(cls, value, engine: str = "series", source: str = "exact") -> "EvalResult":
        return cls(value, 0.0, 0, engine, True, frozenset({source}))

    @property
    def real(self):
        return self.value.real

    def scaled(self, c) -> "EvalResult":
        c = mpmath.mpmathify(c)
        return dataclasses.replace(self, value=self.value * c, err_estimate=float(abs(c)) * self.err_estimate)

    def __add__(self, other: "EvalResult") -> "EvalResult":
        return combine([(1, self), (1, other)])

    def __sub__(self, other: "EvalResult") -> "EvalResult":
        return combine([(1, self), (-1, other)])

    def __neg__(self) -> "EvalResult":
        return self.scaled(-1)

    def __mul__(self, c) -> "EvalResult":
        return self.scaled(c)

    __rmul__ = __mul__


def combine(pairs) -> EvalResult:
    """Linear combination ``sum(c * r)`` of results with summed error bounds."""
    pairs = list(pairs)
    value = mpmath.mpc(0)
    err = 0.0
    terms = 0
    engines = set()
    converged = True
    sources = set()
    for c, r in pairs:
        c = mpmath.mpmathify(c)
        value += c * r.value
        err += float(abs(c)) * r.err_estimate
        terms = max(terms, r.terms_used)
        engines.update(r.engine.split("+"))
        converged = converged and r.converged
        sources |= r.sources
    if not math.isfinite(err):
        converged = False
    engine = "+".join(sorted(engines)) if engines else "series"
    return EvalResult(value, err, terms, engine, converged, frozenset(sources))


def product(a: EvalResult, b: EvalResult) -> EvalResult:
    """``a * b`` with first-order error propagation."""
    value = a.value * b.value
    err = float(abs(a.value)) * b.err_estimate + float(abs(b.value)) * a.err_estimate + a.err_estimate * b.err_estimate
    engines = set(a.engine.split("+")) | set(b.engine.split("+"))
    return EvalResult(
        value,
        err,
        max(a.terms_used, b.terms_used),
        "+".join(sorted(engines)),
        a.converged and b.converged and math.isfinite(err),
        a.sources | b.sources,
    )
