"""Independent reference computations used to freeze expected values.

None of these go through fibinv's forward substitution or generators.
"""

from fractions import Fraction
from itertools import permutations

import sympy


def gauss_jordan_inverse(M):
    """Dense square inverse over Fractions with partial pivoting on nonzero entries."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return [row[n:] for row in A]


def dense(rows, size=None):
    """Ragged lower-triangular rows -> full square list of lists."""
    size = size or len(rows)
    return [list(r) + [0] * (size - len(r)) for r in rows]


def lower_rows(M):
    return [tuple(M[i][: i + 1]) for i in range(len(M))]


def fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fibonomial_by_products(n, k):
    num = 1
    for i in range(1, n + 1):
        num *= fib(i)
    den = 1
    for i in range(1, k + 1):
        den *= fib(i)
    for i in range(1, n - k + 1):
        den *= fib(i)
    assert num % den == 0
    return num // den


def weighted_inverse_by_solve(N):
    """Solve sum_l F_l (n l)_F g(k,l) = delta(n,k) for each k as a dense linear system."""
    g = {}
    for k in range(1, N + 1):
        ls = list(range(k, N + 1))
        M = [[fib(l) * fibonomial_by_products(n, l) if l <= n else 0 for l in ls] for n in ls]
        inv = gauss_jordan_inverse(M)
        # right-hand side e_k: solution is column 0 of the inverse
        for i, l in enumerate(ls):
            g[(k, l)] = inv[i][0]
    return g


def set_partitions_count(n, k):
    """S(n,k) by enumerating restricted growth strings."""
    if n == 0:
        return int(k == 0)
    count = 0

    def rec(i, blocks):
        nonlocal count
        if i == n:
            count += blocks == k
            return
        for b in range(blocks + 1):
            if b < k:
                rec(i + 1, max(blocks, b + 1))

    rec(0, 0)
    return count


def permutations_with_cycles(n, k):
    """c(n,k) by counting permutations of n points with k cycles."""
    total = 0
    for p in permutations(range(n)):
        seen, cycles = set(), 0
        for i in range(n):
            if i not in seen:
                cycles += 1
                j = i
                while j not in seen:
                    seen.add(j)
                    j = p[j]
        total += cycles == k
    return total


q = sympy.Symbol("q")
x = sympy.Symbol("x")


def gaussian_sympy(n, k):
    def qfact(m):
        return sympy.prod([sum(q**i for i in range(j)) for j in range(1, m + 1)]) if m else sympy.Integer(1)

    expr = sympy.cancel(qfact(n) / (qfact(k) * qfact(n - k)))
    return [int(c) for c in reversed(sympy.Poly(expr, q).all_coeffs())]


def charlier_sympy(n):
    ff = lambda m: sympy.ff(x, m)  # noqa: E731
    P = sympy.expand(sum(sympy.binomial(n, k) * ff(k) for k in range(n + 1)) / sympy.factorial(n))
    return [Fraction(int(c.p), int(c.q)) for c in reversed(sympy.Poly(P, x).all_coeffs())]
