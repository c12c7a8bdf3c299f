"""Fibonacci cobweb poset and its reduced incidence algebra.

Level ``n >= 1`` of the poset holds ``F_n`` vertices and every vertex of a
level lies below every vertex of each higher level.  A function on intervals
that depends only on the rank pair ``(k, n)`` is a
:class:`ReducedIncidenceFunction`; multiplying two of them sums over every
vertex on the levels k..n, which collapses to the weighted sum

    (a * b)(k, n) = sum_{k <= l <= n} F_l a(k, l) b(l, n).

The unit of that product is ``delta(k, n) / F_k``.  The inverse ``g`` of the
fibonomial function asked for here is normalized so that ``g * f`` is the
plain Kronecker delta; it differs from the algebra inverse by the factor F_k.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .inversion import VerificationReport, invert_triangle
from .kernel import format_rational
from .sequences import fibonacci
from .triangles import Triangle, fibonomial, fibonomial_triangle


class SingularFunctionError(ArithmeticError):
    pass


@dataclass(frozen=True, order=True)
class CobwebVertex:
    level: int
    index: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("cobweb levels start at 1")
        if not 1 <= self.index <= fibonacci(self.level):
            raise ValueError(f"index {self.index} outside level {self.level} (size {fibonacci(self.level)})")


@dataclass(frozen=True, order=True)
class SegmentType:
    k: int
    n: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ValueError(f"segment type needs 1 <= k <= n, got ({self.k}, {self.n})")


def vertices(max_level: int) -> list[CobwebVertex]:
    return [CobwebVertex(n, j) for n in range(1, max_level + 1) for j in range(1, fibonacci(n) + 1)]


def precedes(x: CobwebVertex, y: CobwebVertex) -> bool:
    return x == y or x.level < y.level


def interval(x: CobwebVertex, y: CobwebVertex) -> list[CobwebVertex]:
    """All z with x <= z <= y."""
    if not precedes(x, y):
        return []
    return [z for z in vertices(y.level) if precedes(x, z) and precedes(z, y)]


class ReducedIncidenceFunction:
    """Rational values on segment types ``(k, n)``, ``1 <= k <= n <= max_rank``."""

    __slots__ = ("max_rank", "_values")

    def __init__(self, max_rank: int, values: dict):
        if max_rank < 1:
            raise ValueError("max_rank must be >= 1")
        table = {}
        for k in range(1, max_rank + 1):
            for n in range(k, max_rank + 1):
                try:
                    table[(k, n)] = Fraction(values[(k, n)])
                except KeyError:
                    raise ValueError(f"missing value for segment type ({k}, {n})") from None
        self.max_rank = max_rank
        self._values = table

    @classmethod
    def from_callable(cls, max_rank: int, fn) -> "ReducedIncidenceFunction":
        return cls(max_rank, {(k, n): fn(k, n) for k in range(1, max_rank + 1) for n in range(k, max_rank + 1)})

    def __call__(self, k: int, n: int) -> Fraction:
        if k > n:
            return Fraction(0)
        return self._values[(k, n)]

    def __getitem__(self, kn) -> Fraction:
        return self(*kn)

    def at(self, x: CobwebVertex, y: CobwebVertex) -> Fraction:
        """Value on the interval [x, y]; only the ranks matter."""
        if not precedes(x, y):
            return Fraction(0)
        return self(x.level, y.level)

    def items(self):
        return sorted(self._values.items())

    def __eq__(self, other):
        if not isinstance(other, ReducedIncidenceFunction):
            return NotImplemented
        return self.max_rank == other.max_rank and self._values == other._values

    def __repr__(self):
        return f"ReducedIncidenceFunction(max_rank={self.max_rank})"

    def to_dict(self) -> dict:
        return {
            "maxRank": self.max_rank,
            "values": [{"k": k, "n": n, "value": format_rational(v)} for (k, n), v in self.items()],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "ReducedIncidenceFunction":
        values = {(int(e["k"]), int(e["n"])): Fraction(e["value"]) for e in data["values"]}
        return cls(int(data["maxRank"]), values)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "n", "value"])
        for (k, n), v in self.items():
            w.writerow([k, n, format_rational(v)])
        return buf.getvalue()


def fibonomial_function(N: int) -> ReducedIncidenceFunction:
    """f(k, n) = (n k)_F."""
    return ReducedIncidenceFunction.from_callable(N, lambda k, n: fibonomial(n, k))


def weighted_identity(N: int) -> ReducedIncidenceFunction:
    return ReducedIncidenceFunction.from_callable(N, lambda k, n: Fraction(1, fibonacci(k)) if k == n else 0)


def convolve(a: ReducedIncidenceFunction, b: ReducedIncidenceFunction) -> ReducedIncidenceFunction:
    if a.max_rank != b.max_rank:
        raise ValueError("convolution needs equal maximum ranks")
    N = a.max_rank
    values = {}
    for k in range(1, N + 1):
        for n in range(k, N + 1):
            values[(k, n)] = sum(fibonacci(l) * a(k, l) * b(l, n) for l in range(k, n + 1))
    return ReducedIncidenceFunction(N, values)


def level_band(x: CobwebVertex, y: CobwebVertex) -> list[CobwebVertex]:
    """All z with r(x) <= r(z) <= r(y), whole levels at both ends included."""
    if not precedes(x, y):
        return []
    return [z for z in vertices(y.level) if z.level >= x.level]


def convolve_by_vertices(a: ReducedIncidenceFunction, b: ReducedIncidenceFunction, x, y) -> Fraction:
    """Unreduced product at one pair, summing over every vertex of each level between x and y.

    Level l contributes F_l identical terms, which is the weighting of
    :func:`convolve`.  (The order interval [x, y] itself holds a single vertex
    at each end level; the weighted product counts the whole level.)
    """
    return sum(
        (a(x.level, z.level) * b(z.level, y.level) for z in level_band(x, y)),
        Fraction(0),
    )


def weighted_inverse(f: ReducedIncidenceFunction) -> ReducedIncidenceFunction:
    """The g solving sum_{k<=l<=n} F_l g(k,l) f(l,n) = delta(n,k), by forward substitution.

    g(k,k) = 1 / (F_k f(k,k)) and, for n > k,
    g(k,n) = -(1 / (F_n f(n,n))) sum_{k <= l < n} F_l g(k,l) f(l,n).

    Note ``convolve(g, f)`` is the Kronecker delta, not the unit
    ``delta / F_k`` of the weighted product; :func:`algebra_inverse` gives the
    two-sided inverse, which is g(k,n) / F_k.
    """
    N = f.max_rank
    for n in range(1, N + 1):
        if f(n, n) == 0:
            raise SingularFunctionError(f"f({n},{n}) = 0")
    g = {}
    # columns k are independent of each other
    for k in range(1, N + 1):
        g[(k, k)] = 1 / (fibonacci(k) * f(k, k))
        for n in range(k + 1, N + 1):
            s = sum(fibonacci(l) * g[(k, l)] * f(l, n) for l in range(k, n))
            g[(k, n)] = -s / (fibonacci(n) * f(n, n))
    return ReducedIncidenceFunction(N, g)


def algebra_inverse(f: ReducedIncidenceFunction) -> ReducedIncidenceFunction:
    """Two-sided inverse of f for the weighted product: h * f = f * h = weighted_identity."""
    g = weighted_inverse(f)
    return ReducedIncidenceFunction(f.max_rank, {kn: v / fibonacci(kn[0]) for kn, v in g.items()})


def kronecker(N: int) -> ReducedIncidenceFunction:
    return ReducedIncidenceFunction.from_callable(N, lambda k, n: 1 if k == n else 0)


def _mismatches(a: ReducedIncidenceFunction, b: ReducedIncidenceFunction) -> list:
    return [(k, n, v) for (k, n), v in a.items() if v != b(k, n)]


def eq4_report(N: int) -> VerificationReport:
    """sum_{k<=l<=n} F_l (n l)_F g(k,l) = delta(n,k) for the fibonomial f.

    Checked twice: as the literal sum and as ``convolve(g, f)``.  The details
    record how ``convolve(f, g)`` and the two-sided inverse behave.
    """
    rep = VerificationReport("eq4", N)
    f = fibonomial_function(N)
    g = weighted_inverse(f)
    delta = kronecker(N)
    for k in range(1, N + 1):
        for n in range(k, N + 1):
            s = sum(fibonacci(l) * fibonomial(n, l) * g(k, l) for l in range(k, n + 1))
            if s != (1 if n == k else 0):
                rep.fail(n, k, s, "displayed sum")
    for k, n, v in _mismatches(convolve(g, f), delta):
        rep.fail(n, k, v, "convolve(g,f)")

    unit = weighted_identity(N)
    h = algebra_inverse(f)
    rep.details["convolve(f,g) cells differing from delta"] = len(_mismatches(convolve(f, g), delta))
    rep.details["algebra inverse two-sided"] = not _mismatches(convolve(h, f), unit) and not _mismatches(
        convolve(f, h), unit
    )
    return rep.finish()


def two_sided_report(N: int) -> VerificationReport:
    """convolve(g, f) and convolve(f, g) against the weighted unit delta / F_k.

    With g from :func:`weighted_inverse` this fails wherever F_k != 1 on the
    diagonal and wherever the weights do not commute off it; it is kept to
    document that g is a one-sided, Kronecker-normalized inverse.
    """
    rep = VerificationReport("eq4-two-sided", N)
    f = fibonomial_function(N)
    g = weighted_inverse(f)
    unit = weighted_identity(N)
    for name, prod in (("convolve(g,f)", convolve(g, f)), ("convolve(f,g)", convolve(f, g))):
        for k, n, v in _mismatches(prod, unit):
            rep.fail(n, k, v, name)
    return rep.finish()


def bridge_check(N: int, B: Triangle | None = None) -> VerificationReport:
    """F_l g(k, l) = B(l, k) for 1 <= k <= l <= N, B the plain fibonomial inverse."""
    rep = VerificationReport("bridge", N)
    if B is None:
        B = invert_triangle(fibonomial_triangle(N))
    g = weighted_inverse(fibonomial_function(N))
    for k in range(1, N + 1):
        for l in range(k, N + 1):
            lhs = fibonacci(l) * g(k, l)
            if lhs != B[l, k]:
                rep.fail(l, k, lhs)
    return rep.finish()


def poset_axioms_hold(max_level: int) -> bool:
    """Brute-force reflexivity, antisymmetry and transitivity of ``precedes``."""
    V = vertices(max_level)
    for x in V:
        if not precedes(x, x):
            return False
    for x, y in product(V, V):
        if precedes(x, y) and precedes(y, x) and x != y:
            return False
    for x, y in product(V, V):
        if not precedes(x, y):
            continue
        for z in V:
            if precedes(y, z) and not precedes(x, z):
                return False
    return True
