from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fibinv.cobweb import (
    CobwebVertex,
    ReducedIncidenceFunction,
    SegmentType,
    SingularFunctionError,
    algebra_inverse,
    bridge_check,
    convolve,
    convolve_by_vertices,
    eq4_report,
    fibonomial_function,
    kronecker,
    poset_axioms_hold,
    precedes,
    two_sided_report,
    vertices,
    weighted_identity,
    weighted_inverse,
)
from fibinv.sequences import fibonacci

from oracles import weighted_inverse_by_solve

V = CobwebVertex


def test_precedes():
    assert precedes(V(2, 1), V(3, 2))
    v = V(4, 3)
    assert precedes(v, v)
    assert not precedes(V(3, 1), V(3, 2))
    assert not precedes(V(3, 1), V(2, 1))


def test_vertex_validation():
    with pytest.raises(ValueError):
        V(0, 1)
    with pytest.raises(ValueError):
        V(3, 3)  # level 3 has F_3 = 2 vertices
    with pytest.raises(ValueError):
        SegmentType(3, 2)
    assert len(vertices(6)) == sum(fibonacci(n) for n in range(1, 7))


def test_poset_axioms_brute_force():
    assert poset_axioms_hold(6)


def test_fibonomial_function():
    f = fibonomial_function(6)
    assert f(1, 4) == 3
    assert f(2, 5) == 15
    assert all(f(k, k) == 1 for k in range(1, 7))
    assert f(4, 2) == 0


def test_weighted_inverse_matches_dense_solve():
    N = 12
    g = weighted_inverse(fibonomial_function(N))
    expected = weighted_inverse_by_solve(N)
    assert dict(g.items()) == expected


@pytest.mark.parametrize(
    "kn, value",
    [
        ((3, 3), Fraction(1, 2)),
        ((4, 4), Fraction(1, 3)),
        ((1, 2), -1), ((1, 3), 0), ((1, 4), 1), ((1, 5), -1),
        ((2, 3), -1), ((2, 4), 0), ((2, 5), 3), ((3, 4), -1),
    ],
)
def test_weighted_inverse_spot_values(kn, value):
    assert weighted_inverse(fibonomial_function(6))[kn] == value


def test_weighted_identity_is_the_unit():
    N = 7
    f = fibonomial_function(N)
    e = weighted_identity(N)
    assert convolve(e, f) == f
    assert convolve(f, e) == f


def test_single_rank_convolution():
    a = ReducedIncidenceFunction(1, {(1, 1): 3})
    b = ReducedIncidenceFunction(1, {(1, 1): Fraction(2, 5)})
    assert convolve(a, b)(1, 1) == fibonacci(1) * 3 * Fraction(2, 5)


def test_eq4_instance():
    f = fibonomial_function(5)
    g = weighted_inverse(f)
    assert convolve(g, f)(1, 3) == 0
    assert convolve(g, f) == kronecker(5)


def test_eq4_report_and_bridge():
    rep = eq4_report(20)
    assert rep.passed
    assert rep.details["algebra inverse two-sided"] is True
    assert bridge_check(20).passed


def test_g_is_one_sided():
    # g * f is the Kronecker delta; f * g is not, and neither is the weighted unit
    rep = two_sided_report(5)
    assert not rep.passed
    checks = {c.check for c in rep.counterexamples}
    assert checks == {"convolve(g,f)", "convolve(f,g)"}


def test_algebra_inverse_two_sided():
    N = 10
    f = fibonomial_function(N)
    h = algebra_inverse(f)
    e = weighted_identity(N)
    assert convolve(h, f) == e and convolve(f, h) == e
    g = weighted_inverse(f)
    assert all(g(k, n) == fibonacci(k) * h(k, n) for (k, n), _ in g.items())


def test_singular_function():
    f = ReducedIncidenceFunction(2, {(1, 1): 1, (1, 2): 1, (2, 2): 0})
    with pytest.raises(SingularFunctionError):
        weighted_inverse(f)


def test_serialization():
    g = weighted_inverse(fibonomial_function(4))
    doc = g.to_dict()
    assert doc["maxRank"] == 4
    assert {"k": 3, "n": 3, "value": "1/2"} in doc["values"]
    assert ReducedIncidenceFunction.from_dict(doc) == g
    lines = g.to_csv().splitlines()
    assert lines[0] == "k,n,value"
    assert "4,4,1/3" in lines


values = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


@st.composite
def reduced_functions(draw, N):
    return ReducedIncidenceFunction(
        N, {(k, n): draw(values) for k in range(1, N + 1) for n in range(k, N + 1)}
    )


@given(st.data())
def test_reduced_convolution_matches_vertex_sum(data):
    N = data.draw(st.integers(1, 8))
    a = data.draw(reduced_functions(N))
    b = data.draw(reduced_functions(N))
    c = convolve(a, b)
    lo = data.draw(st.integers(1, N))
    hi = data.draw(st.integers(lo, N))
    x = V(lo, data.draw(st.integers(1, fibonacci(lo))))
    y = V(hi, data.draw(st.integers(1, fibonacci(hi))))
    if x.level == y.level and x != y:
        return
    assert convolve_by_vertices(a, b, x, y) == c(lo, hi)
