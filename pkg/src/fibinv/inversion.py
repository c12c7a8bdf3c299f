"""Exact inversion of lower-triangular arrays and the inverse-pair identities.

Every inverse is computed by one forward-substitution routine,
:func:`invert_triangle`.  Closed forms appear only in the ``verify_*``
functions, where they are the claims being checked.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .kernel import QPoly, NonDivisibleError, get_domain
from .sequences import binomial, factorial
from .triangles import (
    Triangle,
    binomial_triangle,
    catalan_triangle,
    charlier_matrix,
    entry_text,
    gaussian_triangle,
    stirling1_signed_triangle,
    stirling1_unsigned_triangle,
    stirling2_triangle,
)


class SingularTriangleError(ArithmeticError):
    """A diagonal entry is zero, so no inverse exists."""


def _inverse_name(family: str) -> str:
    if family.startswith("inverse(") and family.endswith(")"):
        return family[len("inverse("):-1]
    return f"inverse({family})"


def _forward_substitute(T: Triangle) -> list:
    dom = get_domain(T.domain)
    rows = T.rows
    B: list = []
    for i, row in enumerate(rows):
        d = row[i]
        if d == dom.zero:
            raise SingularTriangleError(f"zero diagonal entry at row {T.offset + i}")
        out = [None] * (i + 1)
        out[i] = dom.exact_divide(dom.one, d)
        for k in range(i - 1, -1, -1):
            s = dom.zero
            for l in range(k, i):
                t = row[l]
                if t:
                    s = s + t * B[l][k]
            out[k] = dom.exact_divide(-s, d)
        B.append(out)
    return B


def invert_triangle(T: Triangle, check: bool = True) -> Triangle:
    """Inverse of ``T`` under the triangular matrix product.

    Integer triangles whose diagonal does not divide exactly are promoted to
    the rational domain.  With ``check`` the result is multiplied back on
    both sides and compared with the identity.
    """
    try:
        rows = _forward_substitute(T)
        source = T
    except NonDivisibleError:
        if T.domain != "integer":
            raise
        source = T.as_rational()
        rows = _forward_substitute(source)
    B = Triangle(_inverse_name(T.family), source.domain, T.offset, rows)
    if check:
        if not is_identity(triangle_product(source, B)) or not is_identity(triangle_product(B, source)):
            raise ArithmeticError(f"inverse of {T.family} failed the two-sided identity check")
    return B


def triangle_product(A: Triangle, B: Triangle) -> Triangle:
    """Naive exact product, (AB)(n,k) = sum_{k<=l<=n} A(n,l) B(l,k)."""
    if A.offset != B.offset or A.size != B.size:
        raise ValueError("triangles must share offset and row range")
    domain = A.domain if A.domain == B.domain else _join(A.domain, B.domain)
    zero = get_domain(domain).zero
    rows = []
    for i in range(A.size):
        Ai = A.rows[i]
        row = []
        for k in range(i + 1):
            s = zero
            for l in range(k, i + 1):
                a = Ai[l]
                if a:
                    s = s + a * B.rows[l][k]
            row.append(s)
        rows.append(row)
    return Triangle("product", domain, A.offset, rows)


def _join(a: str, b: str) -> str:
    if "qpoly" in (a, b):
        if "rational" in (a, b):
            raise TypeError("cannot mix q-polynomial and rational triangles")
        return "qpoly"
    return "rational"


def is_identity(T: Triangle) -> bool:
    for i, row in enumerate(T.rows):
        for k, x in enumerate(row):
            if x != (1 if k == i else 0):
                return False
    return True


# verification reports


@dataclass
class Counterexample:
    n: int
    l: int
    value: str
    check: str = ""

    def to_dict(self) -> dict:
        d = {"n": self.n, "l": self.l, "value": self.value}
        if self.check:
            d["check"] = self.check
        return d


@dataclass
class VerificationReport:
    """Outcome of one identity sweep.  ``passed`` iff no counterexamples."""

    identity: str
    max_row: int
    counterexamples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def fail(self, n: int, l: int, value, check: str = "") -> None:
        text = value if isinstance(value, str) else entry_text(value)
        self.counterexamples.append(Counterexample(n, l, text, check))

    def finish(self) -> "VerificationReport":
        self.counterexamples.sort(key=lambda c: (c.n, c.l, c.check))
        return self

    def to_dict(self) -> dict:
        d = {
            "identity": self.identity,
            "maxRow": self.max_row,
            "pass": self.passed,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
        }
        if self.details:
            d["details"] = self.details
        return d

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def summary(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.counterexamples)} counterexamples)"
        return f"{self.identity} (rows <= {self.max_row}): {status}"


def _delta(a, b) -> int:
    return 1 if a == b else 0


def verify_eq1(N: int) -> VerificationReport:
    """sum_k C(n,k) C(k,l) (-1)^(k-l) = delta(n,l), plus the inverse entries."""
    rep = VerificationReport("eq1", N)
    T = binomial_triangle(N)
    for n in range(N + 1):
        for l in range(n + 1):
            s = sum(T[n, k] * T[k, l] * (-1) ** (k - l) for k in range(l, n + 1))
            if s != _delta(n, l):
                rep.fail(n, l, s, "sum")
    B = invert_triangle(T)
    for n, k in T.indices():
        if B[n, k] != (-1) ** (n - k) * T[n, k]:
            rep.fail(n, k, B[n, k], "inverse")
    return rep.finish()


def verify_eq2(N: int) -> VerificationReport:
    """Stirling orthogonality in the displayed (-1)^(n-k) and the (-1)^(k-l) forms."""
    rep = VerificationReport("eq2", N)
    S = stirling2_triangle(N)
    c = stirling1_unsigned_triangle(N)
    for n in range(N + 1):
        for l in range(n + 1):
            terms = [(k, S[n, k] * c[k, l]) for k in range(l, n + 1)]
            displayed = sum(t * (-1) ** (n - k) for k, t in terms)
            swapped = sum(t * (-1) ** (k - l) for k, t in terms)
            if displayed != _delta(n, l):
                rep.fail(n, l, displayed, "(-1)^(n-k)")
            if swapped != _delta(n, l):
                rep.fail(n, l, swapped, "(-1)^(k-l)")
    return rep.finish()


# polynomials in x over the rationals, ascending coefficient lists


def _xmul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out



def falling_factorial_poly(n: int) -> list:
    """Monomial coefficients of x(x-1)...(x-n+1), expanded by direct products."""
    p = [Fraction(1)]
    for i in range(n):
        p = _xmul(p, [Fraction(-i), Fraction(1)])
    return p


def rising_factorial_poly(n: int) -> list:
    p = [Fraction(1)]
    for i in range(n):
        p = _xmul(p, [Fraction(i), Fraction(1)])
    return p


def verify_ex3(N: int) -> VerificationReport:
    """x^n = sum_k S(n,k)(-1)^(n-k) x^(rising k) and x^(falling n) = sum_k c(n,k)(-1)^(n-k) x^k."""
    rep = VerificationReport("ex3", N)
    S = stirling2_triangle(N)
    c = stirling1_unsigned_triangle(N)
    for n in range(N + 1):
        monomial = [Fraction(0)] * n + [Fraction(1)]
        rising_coeffs = [S[n, k] * (-1) ** (n - k) for k in range(n + 1)]
        rhs1 = convert_basis(BasisPolynomial("rising", rising_coeffs), "monomial").coeffs
        if rhs1 != tuple(monomial):
            rep.fail(n, n, _poly_text(rhs1), "x^n")

        rhs2 = [Fraction(c[n, k] * (-1) ** (n - k)) for k in range(n + 1)]
        lhs2 = falling_factorial_poly(n)
        if rhs2 != lhs2:
            rep.fail(n, n, _poly_text(rhs2), "x^(falling n)")
        # and back: the right-hand side, read in the falling basis, is e_n
        back = convert_basis(BasisPolynomial("monomial", rhs2), "falling").coeffs
        if back != tuple(monomial):
            rep.fail(n, n, _poly_text(back), "falling round trip")
    return rep.finish()


def gaussian_inverse_closed_form(n: int, k: int, G: Triangle) -> QPoly:
    """(-1)^(n-k) q^C(n-k,2) (n k)_q."""
    d = n - k
    return QPoly.monomial(d * (d - 1) // 2, (-1) ** d) * G[n, k]


def verify_ex4(N: int) -> VerificationReport:
    rep = VerificationReport("ex4", N)
    G = gaussian_triangle(N)
    B = invert_triangle(G)
    for n, k in G.indices():
        if B[n, k] != gaussian_inverse_closed_form(n, k, G):
            rep.fail(n, k, B[n, k])
    return rep.finish()


def catalan_extended(C: Triangle) -> Triangle:
    """Catalan triangle with row 0 and the zero column k = 0 made explicit."""
    rows = [[1]] + [[0] + list(C.row(n)) for n in range(1, C.max_row + 1)]
    return Triangle("catalan_extended", "integer", 0, rows)


def verify_ex5(N: int) -> VerificationReport:
    """Auxiliary binomial identity with upper row 2n, and the Catalan-triangle inverse."""
    if N < 1:
        raise ValueError("verify_ex5 needs N >= 1")
    rep = VerificationReport("ex5", N)
    for n in range(1, N + 1):
        for l in range(2 * n + 1):
            s = sum(binomial(2 * n, k) * binomial(k, l) * (-1) ** (k - l) for k in range(l, 2 * n + 1))
            if s != _delta(2 * n, l):
                rep.fail(n, l, s, "auxiliary")

    C = catalan_triangle(N)
    B = invert_triangle(C, check=False)
    for name, P in (("C*C^-1", triangle_product(C, B)), ("C^-1*C", triangle_product(B, C))):
        for n, k in P.indices():
            if P[n, k] != _delta(n, k):
                rep.fail(n, k, P[n, k], name)

    E = invert_triangle(catalan_extended(C))
    if E[0, 0] != 1:
        rep.fail(0, 0, E[0, 0], "boundary C^-1(0,0)")
    for n in range(1, N + 1):
        if E[n, 0] != 0:
            rep.fail(n, 0, E[n, 0], "boundary C^-1(k,0)")
        for k in range(1, n + 1):
            if E[n, k] != B[n, k]:
                rep.fail(n, k, E[n, k], "extended agrees")
    rep.details["inverse"] = [[entry_text(x) for x in row] for row in B.rows[: min(N, 8)]]
    return rep.finish()


def charlier_poly(n: int) -> list:
    """Monomial coefficients of P_n(x) from its defining falling-factorial sum."""
    total = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        b = binomial(n, k)
        for j, c in enumerate(falling_factorial_poly(k)):
            total[j] += b * c
    return [t / factorial(n) for t in total]


def verify_ex6(N: int) -> VerificationReport:
    """x^n = sum_k C(n,k) P_k(x) with C the inverse of the Charlier matrix."""
    rep = VerificationReport("ex6", N)
    A = charlier_matrix(N)
    C = invert_triangle(A)
    polys = [charlier_poly(k) for k in range(N + 1)]
    for n in range(N + 1):
        acc = [Fraction(0)] * (n + 1)
        for k in range(n + 1):
            for j, v in enumerate(polys[k]):
                acc[j] += C[n, k] * v
        if acc != [Fraction(0)] * n + [Fraction(1)]:
            rep.fail(n, n, _poly_text(acc), "reconstruction")
        if [A[n, j] for j in range(n + 1)] != polys[n]:
            rep.fail(n, n, _poly_text(polys[n]), "charlier expansion")
    shown = min(N, 6)
    rep.details["connection"] = [[entry_text(x) for x in C.row(n)] for n in range(shown + 1)]
    rep.details["inverse_connection"] = [[entry_text(x) for x in A.row(n)] for n in range(shown + 1)]
    return rep.finish()


def _poly_text(coeffs) -> str:
    return "[" + ", ".join(entry_text(Fraction(c)) for c in coeffs) + "]"


# basis conversion

BASES = ("monomial", "falling", "rising", "charlier")


@dataclass(frozen=True)
class BasisPolynomial:
    """Polynomial given by its coefficients against one of the bases in ``BASES``."""

    basis: str
    coeffs: tuple

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@lru_cache(maxsize=None)
def _to_monomial(basis: str, N: int) -> Triangle:
    """Row k holds the monomial coefficients of the k-th basis polynomial."""
    if basis == "falling":
        return stirling1_signed_triangle(N)
    if basis == "rising":
        return stirling1_unsigned_triangle(N)
    if basis == "charlier":
        return charlier_matrix(N)
    raise ValueError(basis)


@lru_cache(maxsize=None)
def _from_monomial(basis: str, N: int) -> Triangle:
    """Row n holds the coefficients of x^n against the basis."""
    if basis == "falling":
        return stirling2_triangle(N)
    if basis == "rising":
        S = stirling2_triangle(N)
        rows = [[S[n, k] * (-1) ** (n - k) for k in range(n + 1)] for n in range(N + 1)]
        return Triangle("stirling2_signed", "integer", 0, rows)
    if basis == "charlier":
        return invert_triangle(charlier_matrix(N))
    raise ValueError(basis)


def _apply(coeffs: tuple, M: Triangle) -> tuple:
    out = [Fraction(0)] * len(coeffs)
    for n, a in enumerate(coeffs):
        if a:
            for j in range(n + 1):
                out[j] += a * M[n, j]
    return tuple(out)


def convert_basis(p: BasisPolynomial, target: str) -> BasisPolynomial:
    """Re-express ``p`` against ``target``; the coefficient length is preserved."""
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if p.basis == target or not p.coeffs:
        return BasisPolynomial(target, p.coeffs)
    N = p.degree
    coeffs = p.coeffs
    if p.basis != "monomial":
        coeffs = _apply(coeffs, _to_monomial(p.basis, N))
    if target != "monomial":
        coeffs = _apply(coeffs, _from_monomial(target, N))
    return BasisPolynomial(target, coeffs)


def q_degeneration(T: Triangle) -> Triangle:
    """Evaluate every entry of a q-polynomial triangle at q = 1."""
    return T.map(lambda p: int(p(1)), domain="integer", family=f"{T.family}|q=1")


__all__ = [
    "BasisPolynomial",
    "Counterexample",
    "SingularTriangleError",
    "VerificationReport",
    "convert_basis",
    "invert_triangle",
    "is_identity",
    "q_degeneration",
    "triangle_product",
    "verify_eq1",
    "verify_eq2",
    "verify_ex3",
    "verify_ex4",
    "verify_ex5",
    "verify_ex6",
]
