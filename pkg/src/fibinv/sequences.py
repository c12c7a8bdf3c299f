"""Memoized scalar sequences: Fibonacci numbers, factorials and their q/F analogs."""

from __future__ import annotations

import threading

from .kernel import QPoly


class SequenceCache:
    """Monotone per-process prefix cache.

    Each named sequence is a list extended in place by a step function
    ``step(prefix) -> next value``.  Existing entries are never rewritten;
    extension happens under a reentrant lock (steps may consult other
    sequences) so concurrent readers see a pure function.
    """

    def __init__(self):
        self._lock = threading.RLock()
        self._prefixes: dict[str, list] = {}
        self._steps: dict[str, tuple] = {}

    def register(self, name: str, initial: list, step) -> None:
        with self._lock:
            self._prefixes[name] = list(initial)
            self._steps[name] = step

    def get(self, name: str, n: int):
        if n < 0:
            raise ValueError(f"{name}: index must be >= 0, got {n}")
        prefix = self._prefixes[name]
        if n < len(prefix):
            return prefix[n]
        with self._lock:
            step = self._steps[name]
            while len(prefix) <= n:
                prefix.append(step(prefix))
            return prefix[n]

    def prefix(self, name: str, n: int) -> list:
        """Copy of entries ``0..n`` inclusive."""
        self.get(name, n)
        return self._prefixes[name][: n + 1]


CACHE = SequenceCache()
CACHE.register("fibonacci", [0, 1], lambda p: p[-1] + p[-2])
CACHE.register("factorial", [1], lambda p: p[-1] * len(p))
CACHE.register("fib_factorial", [1], lambda p: p[-1] * CACHE.get("fibonacci", len(p)))
CACHE.register("q_integer", [QPoly()], lambda p: QPoly([1] * len(p)))
CACHE.register("q_factorial", [QPoly([1])], lambda p: p[-1] * CACHE.get("q_integer", len(p)))


def fibonacci(n: int) -> int:
    """F_n with F_0 = 0, F_1 = 1."""
    return CACHE.get("fibonacci", n)


def factorial(n: int) -> int:
    return CACHE.get("factorial", n)


def fib_factorial(n: int) -> int:
    """F_1 * F_2 * ... * F_n, with the empty product 1 at n = 0."""
    return CACHE.get("fib_factorial", n)


def q_integer(n: int) -> QPoly:
    """1 + q + ... + q^(n-1); the zero polynomial at n = 0."""
    return CACHE.get("q_integer", n)


def q_factorial(n: int) -> QPoly:
    return CACHE.get("q_factorial", n)


def binomial(n: int, k: int) -> int:
    """Ordinary binomial coefficient, 0 outside 0 <= k <= n."""
    if k < 0 or k > n or n < 0:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))
