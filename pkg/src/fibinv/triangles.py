"""Lower-triangular coefficient arrays and the generators for each family."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .kernel import QPoly, NonDivisibleError, exact_divide, get_domain
from .sequences import (
    binomial,
    factorial,
    fib_factorial,
    fibonacci,
    q_factorial,
)


class InconsistentTriangleError(RuntimeError):
    """Two independent constructions of the same triangle disagree."""


@dataclass(frozen=True)
class Triangle:
    """Immutable ragged lower-triangular array.

    Row ``n`` runs over ``offset <= n <= max_row`` and holds the entries
    ``T(n, offset) .. T(n, n)``.  ``rows[i]`` is row ``offset + i``.
    """

    family: str
    domain: str
    offset: int
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        get_domain(self.domain)
        if self.offset < 0:
            raise ValueError("offset must be >= 0")
        for i, row in enumerate(self.rows):
            if len(row) != i + 1:
                raise ValueError(
                    f"row {self.offset + i} of {self.family} has {len(row)} entries, expected {i + 1}"
                )

    @property
    def max_row(self) -> int:
        return self.offset + len(self.rows) - 1

    @property
    def size(self) -> int:
        return len(self.rows)

    def indices(self):
        """All stored ``(n, k)`` positions in row-major order."""
        for n in range(self.offset, self.max_row + 1):
            for k in range(self.offset, n + 1):
                yield n, k

    def row(self, n: int) -> tuple:
        return self.rows[n - self.offset]

    def __getitem__(self, nk):
        n, k = nk
        if not (self.offset <= k <= n <= self.max_row):
            if self.offset <= n <= self.max_row and self.offset <= k <= self.max_row:
                return get_domain(self.domain).zero
            raise IndexError(f"({n}, {k}) outside {self.family} triangle")
        return self.rows[n - self.offset][k - self.offset]

    def diagonal(self) -> list:
        return [row[-1] for row in self.rows]

    def map(self, fn: Callable, domain: str | None = None, family: str | None = None) -> "Triangle":
        return Triangle(
            family or self.family,
            domain or self.domain,
            self.offset,
            tuple(tuple(fn(x) for x in row) for row in self.rows),
        )

    def as_rational(self) -> "Triangle":
        if self.domain == "qpoly":
            raise TypeError("q-polynomial triangles have no rational form")
        return self.map(Fraction, domain="rational")

    def truncate(self, max_row: int) -> "Triangle":
        return Triangle(self.family, self.domain, self.offset, self.rows[: max_row - self.offset + 1])

    def same_entries(self, other: "Triangle") -> bool:
        return self.offset == other.offset and self.rows == other.rows

    # serialization

    def to_dict(self) -> dict:
        enc = get_domain(self.domain).encode
        return {
            "family": self.family,
            "domain": self.domain,
            "offset": self.offset,
            "rows": [[enc(x) for x in row] for row in self.rows],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "Triangle":
        try:
            dom = get_domain(data["domain"])
            rows = [[dom.decode(x) for x in row] for row in data["rows"]]
            return cls(str(data["family"]), dom.name, int(data.get("offset", 0)), rows)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed triangle document: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "Triangle":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        width = self.size
        for row in self.rows:
            cells = [entry_text(x) for x in row]
            writer.writerow(cells + [""] * (width - len(cells)))
        return buf.getvalue()

    def to_latex(self) -> str:
        width = self.size
        lines = [r"\begin{array}{" + "r" * width + "}"]
        for row in self.rows:
            cells = [entry_latex(x) for x in row] + [""] * (width - len(row))
            lines.append(" & ".join(cells) + r" \\")
        lines.append(r"\end{array}")
        return "\n".join(lines) + "\n"


def entry_text(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def entry_latex(x) -> str:
    if isinstance(x, Fraction) and x.denominator != 1:
        sign = "-" if x < 0 else ""
        return f"{sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"
    if isinstance(x, QPoly):
        return str(x).replace("*", "")
    return entry_text(x)


def identity_triangle(N: int, domain: str = "integer", offset: int = 0) -> Triangle:
    dom = get_domain(domain)
    rows = [[dom.one if k == n else dom.zero for k in range(offset, n + 1)] for n in range(offset, N + 1)]
    return Triangle("identity", domain, offset, rows)


def binomial_triangle(N: int) -> Triangle:
    """Pascal's triangle C(n, k) for 0 <= k <= n <= N."""
    _check_rows(N)
    rows = [[1]]
    for n in range(1, N + 1):
        prev = rows[-1]
        rows.append([1] + [prev[k - 1] + prev[k] for k in range(1, n)] + [1])
    return Triangle("binomial", "integer", 0, rows)


def stirling2_triangle(N: int) -> Triangle:
    """Stirling numbers of the second kind, S(n,k) = k S(n-1,k) + S(n-1,k-1)."""
    _check_rows(N)
    rows = [[1]]
    for n in range(1, N + 1):
        prev = rows[-1] + [0]
        rows.append([(k * prev[k] if k < n else 0) + (prev[k - 1] if k else 0) for k in range(n + 1)])
    return Triangle("stirling2", "integer", 0, rows)


def stirling1_unsigned_triangle(N: int) -> Triangle:
    """Unsigned Stirling numbers of the first kind: coefficients of the rising factorial."""
    _check_rows(N)
    rows = [[1]]
    for n in range(1, N + 1):
        prev = rows[-1] + [0]
        rows.append([(prev[k - 1] if k else 0) + (n - 1) * prev[k] for k in range(n + 1)])
    return Triangle("stirling1", "integer", 0, rows)


def stirling1_signed_triangle(N: int) -> Triangle:
    """(-1)^(n-k) c(n,k): coefficients of the falling factorial."""
    c = stirling1_unsigned_triangle(N)
    rows = [[(-1) ** (n - k) * c[n, k] for k in range(n + 1)] for n in range(N + 1)]
    return Triangle("stirling1_signed", "integer", 0, rows)


def gaussian_triangle(N: int) -> Triangle:
    """Gaussian binomials (n k)_q as exact q-factorial ratios."""
    _check_rows(N)
    rows = []
    for n in range(N + 1):
        row = []
        for k in range(n + 1):
            try:
                row.append(exact_divide(q_factorial(n), q_factorial(k) * q_factorial(n - k)))
            except NonDivisibleError as exc:  # pragma: no cover - would refute polynomiality
                raise InconsistentTriangleError(f"Gaussian ({n},{k}) not a polynomial") from exc
        rows.append(row)
    return Triangle("gaussian", "qpoly", 0, rows)


def catalan_closed_form(n: int, k: int) -> int:
    """C(2n, n-k) * k / n for n, k > 0, with the division asserted exact."""
    try:
        return exact_divide(binomial(2 * n, n - k) * k, n)
    except NonDivisibleError as exc:
        raise InconsistentTriangleError(f"closed form not integral at ({n},{k})") from exc


def catalan_triangle(N: int) -> Triangle:
    """Ballot-type triangle C_{n,k}, stored for 1 <= k <= n <= N.

    Built from the three-term recurrence with zero boundaries and checked
    entry by entry against the closed form.
    """
    _check_rows(N)
    # full recurrence table with explicit zero boundaries; C_{0,0} = 1
    table = {(0, 0): 1}

    def get(n, k):
        if k <= 0 and n > 0 or k > n:
            return 0
        return table.get((n, k), 0)

    for n in range(N):
        for k in range(1, n + 2):
            table[(n + 1, k)] = get(n, k - 1) + 2 * get(n, k) + get(n, k + 1)

    rows = []
    for n in range(1, N + 1):
        row = []
        for k in range(1, n + 1):
            val = table[(n, k)]
            closed = catalan_closed_form(n, k)
            if val != closed:
                raise InconsistentTriangleError(
                    f"Catalan ({n},{k}): recurrence {val} != closed form {closed}"
                )
            row.append(val)
        rows.append(row)
    return Triangle("catalan", "integer", 1, rows)


def charlier_matrix(N: int) -> Triangle:
    """Monomial coefficients of the Charlier polynomials with a = -1.

    P_n(x) = (1/n!) sum_k C(n,k) x^(falling k); each falling factorial is
    expanded with signed Stirling numbers of the first kind.
    """
    s1 = stirling1_signed_triangle(N)
    rows = []
    for n in range(N + 1):
        coeffs = [0] * (n + 1)
        for k in range(n + 1):
            b = binomial(n, k)
            for j in range(k + 1):
                coeffs[j] += b * s1[k, j]
        rows.append([Fraction(c, factorial(n)) for c in coeffs])
    return Triangle("charlier", "rational", 0, rows)


def fibonomial(n: int, k: int) -> int:
    """(n k)_F = n_F! / (k_F! (n-k)_F!), with integrality asserted."""
    try:
        return exact_divide(fib_factorial(n), fib_factorial(k) * fib_factorial(n - k))
    except NonDivisibleError as exc:  # pragma: no cover - would refute integrality
        raise InconsistentTriangleError(f"fibonomial ({n},{k}) is not an integer") from exc


def fibonomial_triangle(N: int) -> Triangle:
    _check_rows(N)
    rows = [[fibonomial(n, k) for k in range(n + 1)] for n in range(N + 1)]
    return Triangle("fibonomial", "integer", 0, rows)


def fibonomial_pascal(n: int, k: int, prev: Triangle) -> int:
    """Pascal-type step (n k)_F = F_{k+1}(n-1 k)_F + F_{n-k-1}(n-1 k-1)_F."""
    return fibonacci(k + 1) * prev[n - 1, k] + fibonacci(n - k - 1) * prev[n - 1, k - 1]


def _check_rows(N: int) -> None:
    if not isinstance(N, int) or N < 0:
        raise ValueError(f"row count must be a non-negative integer, got {N!r}")


@dataclass(frozen=True)
class FamilySpec:
    name: str
    domain: str
    offset: int
    generator: Callable[[int], Triangle]
    description: str


FAMILIES: dict[str, FamilySpec] = {
    f.name: f
    for f in (
        FamilySpec("binomial", "integer", 0, binomial_triangle, "Pascal recurrence"),
        FamilySpec("stirling2", "integer", 0, stirling2_triangle, "S(n,k) = k S(n-1,k) + S(n-1,k-1)"),
        FamilySpec("stirling1", "integer", 0, stirling1_unsigned_triangle, "rising-factorial coefficients"),
        FamilySpec("gaussian", "qpoly", 0, gaussian_triangle, "q-factorial ratio"),
        FamilySpec("catalan", "integer", 1, catalan_triangle, "three-term recurrence, closed-form checked"),
        FamilySpec("charlier", "rational", 0, charlier_matrix, "Charlier (a = -1) monomial coefficients"),
        FamilySpec("fibonomial", "integer", 0, fibonomial_triangle, "F-factorial ratio"),
    )
}


def generate(family: str, N: int) -> Triangle:
    try:
        spec = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    return spec.generator(N)
