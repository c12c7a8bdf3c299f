import json
import shutil
from fractions import Fraction

import pytest
import requests

from fibinv.discovery import (
    DiscoveryOptions,
    InsufficientDataError,
    diagonal_sequences,
    discovery_report,
    fit_linear_recurrence,
    normalize_by,
)
from fibinv.inversion import invert_triangle
from fibinv.kernel import QPoly
from fibinv.oeis import (
    OeisClient,
    OeisNetworkError,
    OeisParseError,
    cache_key,
    parse_response,
)
from fibinv.triangles import fibonomial_triangle, gaussian_triangle


class FakeResponse:
    def __init__(self, text, status=200):
        self.text = text
        self.status_code = status

    def raise_for_status(self):
        if self.status_code >= 400:
            raise requests.HTTPError(f"status {self.status_code}")


class FakeSession:
    def __init__(self, text=None, exc=None):
        self.text, self.exc, self.calls = text, exc, []

    def get(self, url, params=None, timeout=None):
        self.calls.append(params)
        if self.exc:
            raise self.exc
        return FakeResponse(self.text)


def test_normalize_gaussian_by_itself():
    G = gaussian_triangle(7)
    norm = normalize_by(invert_triangle(G), G)
    assert not norm.undefined
    for (n, k), q in norm.quotients.items():
        d = n - k
        assert q == QPoly.monomial(d * (d - 1) // 2, (-1) ** d)


def test_normalize_by_self_is_ones():
    T = fibonomial_triangle(6)
    assert set(normalize_by(T, T).quotients.values()) == {1}


def test_normalize_fibonomial_inverse():
    T = fibonomial_triangle(5)
    norm = normalize_by(invert_triangle(T), T)
    assert norm.quotient(4, 1) == 1
    assert norm.quotient(5, 0) == -6
    assert norm.quotient(3, 1) == 0
    for (n, k), q in norm.quotients.items():
        assert q * T[n, k] == invert_triangle(T)[n, k]


def test_diagonals_of_fibonomial_inverse():
    seqs = diagonal_sequences(invert_triangle(fibonomial_triangle(5)), 2)
    assert seqs[0].entries == [1] * 6
    assert seqs[1].entries == [-1, -1, -2, -3, -5]
    assert seqs[2].entries == [0, 0, 0, 0]


@pytest.mark.parametrize(
    "seq, order, coeffs",
    [
        ([1, 1, 2, 3, 5, 8, 13], 2, (1, 1)),
        ([7] * 6, 1, (1,)),
        ([1, 2, 4, 8, 16], 1, (2,)),
        ([Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16)], 1, (Fraction(1, 2),)),
    ],
)
def test_fit_linear_recurrence(seq, order, coeffs):
    fit = fit_linear_recurrence(seq, 3)
    assert fit.order == order
    assert fit.coeffs == coeffs
    for i in range(fit.first, fit.last + 1):
        assert seq[i] == sum(c * seq[i - j] for j, c in enumerate(fit.coeffs, 1))


def test_fit_insufficient_versus_no_fit():
    with pytest.raises(InsufficientDataError):
        fit_linear_recurrence([1, 2], 2)
    with pytest.raises(InsufficientDataError):
        fit_linear_recurrence([1, 2, 4, 9, 20], 4)
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41]
    assert fit_linear_recurrence(primes, 3) is None


def test_parse_response_filters_non_matching():
    body = json.dumps([
        {"number": 45, "data": "0,1,1,2,3,5,8,13", "name": "Fibonacci numbers"},
        {"number": 999999, "data": "1,1,2,3,5,9", "name": "decoy"},
    ])
    matches = parse_response(body, "1,1,2,3,5,8", "t", False)
    assert [m.identifier for m in matches] == ["A000045"]
    assert matches[0].matched_prefix == 6
    wrapped = json.dumps({"results": [{"number": 45, "data": "0,1,1,2,3,5,8"}]})
    assert parse_response(wrapped, "1,1,2,3,5,8", "t", True)[0].cache_hit
    assert parse_response("null", "1,2,3,4", "t", False) == []
    with pytest.raises(OeisParseError):
        parse_response("<html>", "1,2,3,4", "t", False)


def test_lookup_from_fixture(oeis_fixtures):
    client = OeisClient(cache_dir=oeis_fixtures, offline=True)
    res = client.lookup([1, 1, 2, 3, 5, 8])
    assert res.cache_hit
    assert "A000045" in [m.identifier for m in res.matches]


def test_lookup_offline_empty_cache(tmp_path):
    res = OeisClient(cache_dir=tmp_path, offline=True).lookup([1, 2, 3, 4, 5])
    assert res.matches == [] and res.cache_miss


def test_lookup_degenerate_skipped(tmp_path):
    session = FakeSession("[]")
    res = OeisClient(cache_dir=tmp_path, session=session).lookup([0, 0, 0, 0])
    assert res.skipped.startswith("degenerate")
    assert session.calls == []


def test_lookup_fetches_and_caches(tmp_path):
    body = json.dumps([{"number": 27, "data": "1,2,3,4,5,6,7", "name": "The positive integers."}])
    session = FakeSession(body)
    client = OeisClient(cache_dir=tmp_path, session=session, min_interval=0)
    res = client.lookup([1, 2, 3, 4, 5])
    assert [m.identifier for m in res.matches] == ["A000027"]
    assert session.calls == [{"q": "1,2,3,4,5", "fmt": "json"}]
    assert (tmp_path / cache_key("1,2,3,4,5")).read_text() == body
    again = client.lookup([1, 2, 3, 4, 5])
    assert again.cache_hit and len(session.calls) == 1


def test_lookup_network_error(tmp_path):
    session = FakeSession(exc=requests.ConnectionError("down"))
    with pytest.raises(OeisNetworkError):
        OeisClient(cache_dir=tmp_path, session=session, min_interval=0).lookup([1, 2, 3, 4])


def test_rate_limit_spacing(tmp_path, monkeypatch):
    import fibinv.oeis as oeis

    slept = []
    monkeypatch.setattr(oeis.time, "sleep", lambda s: slept.append(s))
    client = OeisClient(cache_dir=tmp_path, session=FakeSession("[]"), min_interval=1.0)
    client.lookup([1, 2, 3, 4])
    client.lookup([1, 2, 3, 5])
    assert slept and slept[-1] > 0.5


def test_report_sanity_anchors(oeis_fixtures):
    opts = DiscoveryOptions(offline=True, cache_dir=str(oeis_fixtures))
    assert discovery_report("binomial", 10, opts).laws["signLaw"] == "(-1)^d"
    g = discovery_report("gaussian", 8, opts)
    assert g.laws["signLaw"] == "(-1)^d" and g.laws["qExponentLaw"] == "C(d,2)"


def test_report_fibonomial(oeis_fixtures):
    rep = discovery_report("fibonomial", 12, DiscoveryOptions(offline=True, cache_dir=str(oeis_fixtures)))
    assert rep.laws["signLaw"] is None
    assert {"n": 5, "k": 0, "value": "-6", "quotient": "-6"} in rep.violations
    d2 = rep.patterns[2]
    assert d2["kind"] == "zero" and d2["zeroThroughRow"] == 12
    d1 = rep.diagonals[1]
    assert d1["recurrence"]["order"] == 2 and d1["recurrence"]["coefficients"] == ["1", "1"]
    assert "A000045" in [m["identifier"] for m in d1["oeis"]["matches"]]
    assert rep.bridge["pass"]
    assert all("proven" not in s for s in rep.statements)


def test_report_network_error_is_a_warning(tmp_path):
    client = OeisClient(cache_dir=tmp_path, session=FakeSession(exc=requests.Timeout("slow")), min_interval=0)
    rep = discovery_report("binomial", 6, DiscoveryOptions(), client=client)
    assert rep.network_error and rep.warnings


def test_report_deterministic_with_warm_cache(tmp_path, oeis_fixtures):
    cache = tmp_path / "cache"
    shutil.copytree(oeis_fixtures, cache)
    opts = DiscoveryOptions(offline=True, cache_dir=str(cache))
    a = discovery_report("fibonomial", 10, opts).to_json(timestamps=False)
    b = discovery_report("fibonomial", 10, opts).to_json(timestamps=False)
    assert a == b
