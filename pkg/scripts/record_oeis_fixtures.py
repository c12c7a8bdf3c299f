#!/usr/bin/env python3
"""Populate the OEIS fixture directory used by the offline tests.

By default every query is fetched live through OeisClient (rate limited,
cached into the fixture directory).  ``--synthesize`` instead writes
responses in the OEIS ``fmt=json`` list layout for a handful of classical
sequences whose terms are computed here, for machines without network.
"""

import argparse
import json
from math import comb
from pathlib import Path

from fibinv.oeis import OeisClient, cache_key, query_text
from fibinv.sequences import fibonacci

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "oeis"

KNOWN = {
    45: ("Fibonacci numbers: F(n) = F(n-1) + F(n-2) with F(0) = 0 and F(1) = 1.",
         [fibonacci(n) for n in range(40)]),
    12: ("The simplest sequence of positive numbers: the all 1's sequence.", [1] * 40),
    27: ("The positive integers.", list(range(1, 41))),
    217: ("Triangular numbers: a(n) = binomial(n+1,2) = n*(n+1)/2 = 0 + 1 + 2 + ... + n.",
          [comb(n + 1, 2) for n in range(40)]),
    292: ("Tetrahedral (or triangular pyramidal) numbers: a(n) = C(n+3,3) = n*(n+1)*(n+2)/6.",
          [comb(n + 2, 3) for n in range(40)]),
}

QUERIES = {
    (1, 1, 2, 3, 5, 8): [45],
    (1, 1, 2, 3, 5, 8, 13, 21, 34, 55): [45],
    (1,) * 10: [12],
    tuple(range(1, 11)): [27],
    tuple(comb(n + 1, 2) for n in range(1, 11)): [217],
    tuple(comb(n + 2, 3) for n in range(1, 11)): [292],
}


def synthesize(target: Path) -> None:
    target.mkdir(parents=True, exist_ok=True)
    for terms, numbers in QUERIES.items():
        body = [
            {"number": num, "data": ",".join(map(str, KNOWN[num][1])), "name": KNOWN[num][0], "offset": "0,1"}
            for num in numbers
        ]
        path = target / cache_key(query_text(terms))
        path.write_text(json.dumps(body, indent=1) + "\n", encoding="utf-8")
        print(f"wrote {path.name}")


def record(target: Path) -> None:
    client = OeisClient(cache_dir=target, offline=False)
    for terms in QUERIES:
        res = client.lookup(terms)
        print(res.query, [m.identifier for m in res.matches], "cached" if res.cache_hit else "fetched")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dir", type=Path, default=FIXTURES)
    ap.add_argument("--synthesize", action="store_true")
    args = ap.parse_args()
    (synthesize if args.synthesize else record)(args.dir)
