from concurrent.futures import ThreadPoolExecutor

import pytest

from fibinv.kernel import QPoly, qpoly_eval
from fibinv.sequences import (
    CACHE,
    SequenceCache,
    fib_factorial,
    fibonacci,
    q_factorial,
    q_integer,
)


def test_fibonacci_values():
    assert [fibonacci(n) for n in (0, 1, 10)] == [0, 1, 55]


def test_fibonacci_recurrence_and_cassini():
    for n in range(2, 257):
        assert fibonacci(n) == fibonacci(n - 1) + fibonacci(n - 2)
    for n in range(1, 101):
        assert fibonacci(n - 1) * fibonacci(n + 1) - fibonacci(n) ** 2 == (-1) ** n


@pytest.mark.parametrize("n, expected", [(0, 1), (5, 30), (6, 240)])
def test_fib_factorial(n, expected):
    assert fib_factorial(n) == expected


def test_fib_factorial_ratio():
    for n in range(1, 80):
        assert fib_factorial(n) // fib_factorial(n - 1) == fibonacci(n)
        assert fib_factorial(n) % fib_factorial(n - 1) == 0


def test_q_integer():
    assert q_integer(0) == QPoly()
    assert q_integer(1) == QPoly([1])
    assert q_integer(3) == QPoly([1, 1, 1])
    for n in range(101):
        assert qpoly_eval(q_integer(n), 1) == n


def test_q_factorial():
    assert q_factorial(0) == QPoly([1])
    assert q_factorial(2) == QPoly([1, 1])
    assert q_factorial(3) == QPoly([1, 2, 2, 1])


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        fibonacci(-1)


def test_cache_is_consistent_under_concurrency():
    cache = SequenceCache()
    cache.register("fib", [0, 1], lambda p: p[-1] + p[-2])
    with ThreadPoolExecutor(8) as pool:
        got = list(pool.map(lambda n: cache.get("fib", n), range(300, 0, -1)))
    assert got == [fibonacci(n) for n in range(300, 0, -1)]
    before = CACHE.prefix("fibonacci", 20)
    fibonacci(400)
    assert CACHE.prefix("fibonacci", 20) == before
