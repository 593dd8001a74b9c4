"""Finite posets labelled by one-forms, and their iterated integrals.

Orientation: going up in the poset means going to a larger integration
variable.  A minimal element therefore sits next to 0 and a maximal one next
to ``z``, and a chain read bottom to top is a word read left to right.
Labels select the form ``x_0`` (0), ``x_1`` (1), ``x_{-1}`` (-1),
``x_1 + x_{-1}`` (-2) or ``x_1 - x_{-1}`` (2).
"""

from __future__ import annotations

import json
from collections import Counter
from typing import Iterable, Mapping, Optional, Sequence

from .quadrature import quadrature_eval
from .results import DEFAULT_CONFIG, EvalResult
from .words import X0, X1, X2, XM1, XM2, FormExpr, Word, series_eval

__all__ = [
    "FivePoset",
    "is_admissible",
    "adjoin",
    "linearize",
    "linear_extensions",
    "count_linear_extensions",
    "poset_integral",
    "load_poset",
    "chain_poset",
    "thm36_diagram",
    "NODE_LIMIT",
]

NODE_LIMIT = 20
LABEL_ATOMS = {0: X0, 1: X1, -1: XM1, -2: XM2, 2: X2}


class FivePoset:
    """Nodes, cover relations ``(lower, upper)`` and a label per node."""

    __slots__ = ("nodes", "covers", "labels", "_index", "_below")

    def __init__(self, nodes: Iterable, covers: Iterable[Sequence], labels: Mapping):
        self.nodes = tuple(nodes)
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("duplicate node names")
        self._index = {v: i for i, v in enumerate(self.nodes)}
        self.covers = tuple((a, b) for a, b in covers)
        for a, b in self.covers:
            if a not in self._index or b not in self._index:
                raise ValueError(f"cover ({a!r}, {b!r}) mentions an unknown node")
            if a == b:
                raise ValueError("a node cannot cover itself")
        self.labels = {}
        for v in self.nodes:
            if v not in labels:
                raise ValueError(f"node {v!r} has no label")
            lab = labels[v]
            if lab not in LABEL_ATOMS:
                raise ValueError(f"label {lab!r} not in {{-2,-1,0,1,2}}")
            self.labels[v] = int(lab)
        self._below = self._closure()

    def _closure(self):
        n = len(self.nodes)
        up = [[] for _ in range(n)]
        indeg = [0] * n
        for a, b in self.covers:
            up[self._index[a]].append(self._index[b])
            indeg[self._index[b]] += 1
        order = [i for i in range(n) if indeg[i] == 0]
        seen = 0
        while seen < len(order):
            i = order[seen]
            seen += 1
            for j in up[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    order.append(j)
        if len(order) != n:
            raise ValueError("cover relations contain a cycle")
        # below[i]: bitmask of nodes strictly below node i
        below = [0] * n
        for i in order:
            for j in up[i]:
                below[j] |= below[i] | (1 << i)
        return below

    def __len__(self):
        return len(self.nodes)

    def less(self, a, b) -> bool:
        return bool(self._below[self._index[b]] >> self._index[a] & 1)

    def comparable(self, a, b) -> bool:
        return a == b or self.less(a, b) or self.less(b, a)

    def minimal(self) -> list:
        return [v for v in self.nodes if self._below[self._index[v]] == 0]

    def maximal(self) -> list:
        return [v for v in self.nodes if not any(self.less(v, w) for w in self.nodes)]

    def to_json(self) -> dict:
        return {"nodes": list(self.nodes), "covers": [list(c) for c in self.covers], "labels": dict(self.labels)}

    def __repr__(self):
        return f"FivePoset({len(self.nodes)} nodes, {len(self.covers)} covers)"


def is_admissible(X: FivePoset) -> bool:
    """No ``x_0`` at a minimal element and nothing containing ``x_1`` at a maximal one."""
    if any(X.labels[v] == 0 for v in X.minimal()):
        return False
    return not any(X.labels[v] in (1, 2, -2) for v in X.maximal())


def adjoin(X: FivePoset, a, b) -> FivePoset:
    """The poset obtained by adding the relation ``a < b``."""
    if X.comparable(a, b):
        raise ValueError(f"{a!r} and {b!r} are already comparable")
    return FivePoset(X.nodes, X.covers + ((a, b),), X.labels)


def _extension_counts(X: FivePoset, limit: int) -> Counter:
    n = len(X)
    if n > limit:
        raise ValueError(f"poset has {n} nodes, above the limit {limit}")
    below = X._below
    labels = [X.labels[v] for v in X.nodes]
    memo = {}

    def rest(placed: int) -> Counter:
        # label sequences of all ways to finish, given the set already placed
        if placed == (1 << n) - 1:
            return Counter({(): 1})
        if placed in memo:
            return memo[placed]
        out = Counter()
        for i in range(n):
            if not placed >> i & 1 and below[i] & ~placed == 0:
                for tail, c in rest(placed | 1 << i).items():
                    out[(labels[i],) + tail] += c
        memo[placed] = out
        return out

    return rest(0)


def linearize(X: FivePoset, node_limit: int = NODE_LIMIT) -> FormExpr:
    """Sum of the words of all linear extensions, smallest variable first."""
    counts = _extension_counts(X, node_limit)
    return FormExpr([(Word(LABEL_ATOMS[l] for l in labs), c) for labs, c in counts.items()])


def count_linear_extensions(X: FivePoset, node_limit: int = NODE_LIMIT) -> int:
    return sum(_extension_counts(X, node_limit).values())


def linear_extensions(X: FivePoset):
    """Yield every linear extension as a tuple of nodes, bottom first."""
    n = len(X)
    below = X._below

    def rec(placed, prefix):
        if len(prefix) == n:
            yield tuple(X.nodes[i] for i in prefix)
            return
        for i in range(n):
            if not placed >> i & 1 and below[i] & ~placed == 0:
                yield from rec(placed | 1 << i, prefix + [i])

    yield from rec(0, [])


def poset_integral(X: FivePoset, z=1, cfg=None, engine: Optional[str] = None) -> EvalResult:
    """``I_z(X)``: the series route at ``z = 1``, quadrature otherwise."""
    cfg = cfg or DEFAULT_CONFIG
    if len(X) == 0:
        return EvalResult.exact(1, source="I(empty)")
    z = float(z)
    if not 0 < z <= 1:
        raise ValueError("z must lie in (0, 1]")
    if z == 1 and not is_admissible(X):
        raise ValueError("inadmissible poset at z = 1")
    if any(X.labels[v] == 0 for v in X.minimal()):
        raise ValueError("a minimal element labelled 0 makes the integral diverge at 0")
    engine = engine or ("series" if z == 1 else "quadrature")
    expr = linearize(X)
    if engine == "series":
        return series_eval(expr, z, cfg)
    if engine == "quadrature":
        return quadrature_eval(expr, 0, z, cfg=cfg)
    raise ValueError(f"unknown engine {engine!r}")


def load_poset(source) -> FivePoset:
    """Build a poset from a JSON file path, JSON text or an already parsed dict."""
    if isinstance(source, Mapping):
        data = source
    else:
        text = str(source)
        if text.lstrip().startswith("{"):
            data = json.loads(text)
        else:
            with open(text) as fh:
                data = json.load(fh)
    try:
        nodes = [str(v) for v in data["nodes"]]
        covers = [(str(a), str(b)) for a, b in data["covers"]]
        labels = {str(k): int(v) for k, v in data["labels"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed poset description: {exc}") from None
    return FivePoset(nodes, covers, labels)


class _Builder:
    def __init__(self, prefix=""):
        self.prefix = prefix
        self.nodes, self.covers, self.labels = [], [], {}

    def node(self, label, below=None):
        name = f"{self.prefix}{len(self.nodes)}"
        self.nodes.append(name)
        self.labels[name] = label
        if below is not None:
            self.covers.append((below, name))
        return name

    def chain(self, labels, below=None):
        """Append a chain on top of ``below``; return its (bottom, top)."""
        bottom = top = None
        for lab in labels:
            top = self.node(lab, top if top is not None else below)
            bottom = bottom or top
        return bottom, top

    def build(self):
        return FivePoset(self.nodes, self.covers, self.labels)


def _chain_labels(k: Sequence[int], sigma: Sequence[int]) -> list:
    """Bottom-to-top labels of the chain of ``(k, sigma)``: block ``r`` first."""
    if len(k) != len(sigma):
        raise ValueError("k and sigma must have the same length")
    labels = []
    for kj, sj in reversed(list(zip(k, sigma))):
        labels += [sj] + [0] * (kj - 1)
    return labels


def chain_poset(k: Sequence[int], sigma: Sequence[int]) -> FivePoset:
    """Totally ordered poset whose integral is ``Li_k(sigma_1 z, sigma_1 sigma_2, ...)``."""
    b = _Builder("c")
    b.chain(_chain_labels(k, sigma))
    return b.build()


def thm36_diagram(m: Sequence[int], i: int, j: int, kind: str) -> FivePoset:
    """The two diagrams of the poset form of the parametric sum.

    Top: the chain of ``(reversed(m), (s,)*p)`` with its bottom element
    relabelled 0.  Under that bottom element hang two branches: a chain of
    ``i`` elements labelled ``s``, and one element labelled ``s`` sitting on a
    chain of ``j`` elements labelled ``s``.  ``kind="c1"`` uses ``s = -2`` and
    adds one element labelled -1 under the latter; ``kind="c2"`` uses
    ``s = 1``.
    """
    if kind not in ("c1", "c2"):
        raise ValueError("kind must be 'c1' or 'c2'")
    if i < 0 or j < 0:
        raise ValueError("i and j must be nonnegative")
    s = -2 if kind == "c1" else 1
    m = tuple(m)
    b = _Builder("d")
    _, left_top = b.chain([s] * j)
    joint = b.node(s, left_top)
    if kind == "c1":
        b.covers.append((b.node(-1), joint))
    _, right_top = b.chain([s] * i)
    top_labels = _chain_labels(tuple(reversed(m)), (s,) * len(m))
    top_labels[0] = 0
    bottom, _ = b.chain(top_labels, joint)
    if right_top is not None:
        b.covers.append((right_top, bottom))
    return b.build()
