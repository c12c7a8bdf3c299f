"""Conjecture mining on inverse triangles.

The pipeline inverts a family, divides the inverse entrywise by a reference
triangle (the family itself by default), looks for a per-diagonal law of the
form ``sign * q^e``, pulls out the diagonals ``B(k+d, k)``, fits exact linear
recurrences to them and optionally asks OEIS about them.  Nothing it prints is
a theorem: every statement is qualified by the range of rows it was checked on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .cobweb import bridge_check, fibonomial_function, weighted_inverse
from .inversion import invert_triangle
from .kernel import NonDivisibleError, QPoly, exact_divide
from .oeis import OeisClient, OeisError, OeisNetworkError
from .sequences import fibonacci
from .triangles import Triangle, entry_text, generate


class InsufficientDataError(ValueError):
    """Too few terms to test any recurrence order that was asked for."""


@dataclass
class NormalizationResult:
    quotients: dict
    undefined: list = field(default_factory=list)

    def quotient(self, n: int, k: int):
        return self.quotients.get((n, k))


@dataclass
class DiagonalSequence:
    source: str
    offset: int
    start: int
    entries: list


@dataclass
class RecurrenceFit:
    """s(i) = sum_j coeffs[j-1] * s(i-j) for every i in [first, last]."""

    order: int
    coeffs: tuple
    first: int
    last: int

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "coefficients": [entry_text(Fraction(c)) for c in self.coeffs],
            "verifiedRange": [self.first, self.last],
        }


def normalize_by(B: Triangle, reference: Triangle) -> NormalizationResult:
    if B.offset != reference.offset or B.size != reference.size:
        raise ValueError("normalization needs matching index ranges")
    quotients, undefined = {}, []
    for n, k in B.indices():
        b, r = B[n, k], reference[n, k]
        if r == 0:
            undefined.append((n, k, "reference is zero"))
            continue
        if isinstance(b, Fraction) and not isinstance(r, QPoly):
            r = Fraction(r)
        try:
            quotients[(n, k)] = exact_divide(b, r)
        except NonDivisibleError:
            undefined.append((n, k, "not exact"))
    return NormalizationResult(quotients, undefined)


def diagonal_sequences(B: Triangle, max_offset: int) -> list[DiagonalSequence]:
    if max_offset > B.max_row - B.offset:
        raise ValueError(f"offset {max_offset} exceeds the triangle's depth")
    out = []
    for d in range(max_offset + 1):
        ks = range(B.offset, B.max_row - d + 1)
        out.append(DiagonalSequence(B.family, d, B.offset, [B[k + d, k] for k in ks]))
    return out


def _solve_exact(rows: list, rhs: list):
    """A particular solution of rows @ x = rhs over the rationals, or None if inconsistent."""
    m = len(rows[0]) if rows else 0
    A = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in A[r:]):
        return None
    x = [Fraction(0)] * m
    for i, c in enumerate(pivots):
        x[c] = A[i][-1]
    return x


def fit_linear_recurrence(s, max_order: int) -> RecurrenceFit | None:
    """Smallest constant-coefficient recurrence of order <= max_order reproducing ``s``.

    Order m is only tried when ``len(s) >= 2m + 1``.  Returns None when every
    order up to ``max_order`` was testable and none fits; raises
    :class:`InsufficientDataError` when the data ran out first.
    """
    s = [Fraction(v) for v in s]
    if s and all(v == 0 for v in s):
        return RecurrenceFit(0, (), 0, len(s) - 1)
    testable = min(max_order, (len(s) - 1) // 2)
    if testable < 1:
        raise InsufficientDataError(f"{len(s)} terms cannot support any recurrence order >= 1")
    for m in range(1, testable + 1):
        rows = [[s[i - j] for j in range(1, m + 1)] for i in range(m, len(s))]
        coeffs = _solve_exact(rows, s[m:])
        if coeffs is None:
            continue
        assert all(s[i] == sum(c * s[i - j] for j, c in enumerate(coeffs, 1)) for i in range(m, len(s)))
        return RecurrenceFit(m, tuple(coeffs), m, len(s) - 1)
    if testable < max_order:
        raise InsufficientDataError(
            f"no recurrence of order <= {testable}; {len(s)} terms cannot test orders up to {max_order}"
        )
    return None


def signed_monomial(x):
    """(sign, exponent) when x is +-1 or +-q^e, else None."""
    if isinstance(x, QPoly):
        nz = [(i, c) for i, c in enumerate(x.coeffs) if c]
        if len(nz) == 1 and abs(nz[0][1]) == 1:
            return nz[0][1], nz[0][0]
        return None
    if x in (1, -1):
        return int(x), 0
    return None


EXPONENT_LAWS = {
    "0": lambda d: 0,
    "d": lambda d: d,
    "C(d,2)": lambda d: d * (d - 1) // 2,
    "C(d+1,2)": lambda d: d * (d + 1) // 2,
}


def diagonal_patterns(norm: NormalizationResult, B: Triangle) -> list[dict]:
    """Per-offset description of the quotients Q(k+d, k)."""
    out = []
    for d in range(B.size):
        cells = [(k + d, k) for k in range(B.offset, B.max_row - d + 1)]
        qs = [norm.quotient(n, k) for n, k in cells]
        entry = {"d": d, "rows": [cells[0][0], cells[-1][0]]}
        zero_through = None
        for (n, _), q in zip(cells, qs):
            if q is None or q != 0:
                break
            zero_through = n
        entry["zeroThroughRow"] = zero_through
        if any(q is None for q in qs):
            entry["kind"] = "undefined"
        elif all(q == 0 for q in qs):
            entry["kind"] = "zero"
        elif all(q == qs[0] for q in qs):
            entry["kind"] = "constant"
            entry["value"] = entry_text(qs[0])
            mono = signed_monomial(qs[0])
            if mono is not None:
                entry["sign"], entry["qExponent"] = mono
        else:
            entry["kind"] = "varies"
            entry["values"] = [entry_text(q) if q is not None else None for q in qs]
        out.append(entry)
    return out


def detect_laws(patterns: list[dict], is_q: bool) -> dict:
    laws = {"signLaw": None, "qExponentLaw": None, "quotientByOffset": None}
    if all(p["kind"] in ("zero", "constant") for p in patterns):
        laws["quotientByOffset"] = [p.get("value", "0") for p in patterns]
    monos = [p for p in patterns if "sign" in p]
    if len(monos) == len(patterns):
        if all(p["sign"] == (-1) ** p["d"] for p in monos):
            laws["signLaw"] = "(-1)^d"
        elif all(p["sign"] == 1 for p in monos):
            laws["signLaw"] = "+1"
        if is_q:
            for name, law in EXPONENT_LAWS.items():
                if all(p["qExponent"] == law(p["d"]) for p in monos):
                    laws["qExponentLaw"] = name
                    break
    return laws


@dataclass
class DiscoveryOptions:
    max_offset: int = 6
    max_order: int = 4
    reference: str | None = None
    oeis: bool = True
    offline: bool = False
    cache_dir: str | None = None
    oeis_terms: int = 10
    oeis_max_offset: int = 3


@dataclass
class DiscoveryReport:
    family: str
    max_row: int
    reference: str
    inverse: Triangle
    patterns: list
    laws: dict
    violations: list
    undefined: list
    diagonals: list
    statements: list
    bridge: dict | None = None
    warnings: list = field(default_factory=list)
    network_error: bool = False

    def to_dict(self, timestamps: bool = True) -> dict:
        diags = []
        for d in self.diagonals:
            d = dict(d)
            if d.get("oeis") is not None and not timestamps:
                d["oeis"] = {**d["oeis"], "matches": [
                    {k: v for k, v in m.items() if k != "retrieved_at"} for m in d["oeis"]["matches"]
                ]}
            diags.append(d)
        return {
            "family": self.family,
            "maxRow": self.max_row,
            "reference": self.reference,
            "inverse": self.inverse.to_dict(),
            "patterns": self.patterns,
            "laws": self.laws,
            "violations": self.violations,
            "undefined": self.undefined,
            "diagonals": diags,
            "bridge": self.bridge,
            "statements": self.statements,
            "warnings": self.warnings,
        }

    def to_json(self, timestamps: bool = True) -> str:
        return json.dumps(self.to_dict(timestamps), indent=2)

    def to_markdown(self, max_rows: int = 10) -> str:
        lines = [f"# Inverse of the {self.family} triangle, rows <= {self.max_row}", ""]
        lines.append(f"Normalized by: `{self.reference}`")
        lines.append("")
        lines.append("## Findings")
        lines.append("")
        lines += [f"- {s}" for s in self.statements] or ["- none"]
        lines.append("")
        lines.append(f"## Inverse (first {min(max_rows, self.inverse.size)} rows)")
        lines.append("")
        for row in self.inverse.rows[:max_rows]:
            lines.append("    " + "  ".join(entry_text(x) for x in row))
        lines.append("")
        lines.append("## Quotient pattern per diagonal offset d")
        lines.append("")
        lines.append("| d | kind | value | zero through row |")
        lines.append("|---|------|-------|------------------|")
        for p in self.patterns:
            lines.append(f"| {p['d']} | {p['kind']} | {p.get('value', '')} | {p['zeroThroughRow'] if p['zeroThroughRow'] is not None else ''} |")
        lines.append("")
        if self.violations:
            lines.append(f"## Entries breaking a sign-times-reference law ({len(self.violations)})")
            lines.append("")
            for v in self.violations[:20]:
                lines.append(f"- B({v['n']},{v['k']}) = {v['value']}, quotient {v['quotient']}")
            if len(self.violations) > 20:
                lines.append(f"- ... {len(self.violations) - 20} more")
            lines.append("")
        lines.append("## Diagonal sequences")
        lines.append("")
        for d in self.diagonals:
            head = ", ".join(d["entries"][:12])
            lines.append(f"- d={d['offset']}: {head}{', ...' if len(d['entries']) > 12 else ''}")
            fit = d["recurrence"]
            if isinstance(fit, dict):
                cs = ", ".join(fit["coefficients"])
                lines.append(f"  - recurrence of order {fit['order']} ({cs}), holds on indices {fit['verifiedRange'][0]}..{fit['verifiedRange'][1]}")
            else:
                lines.append(f"  - recurrence: {fit}")
            oeis = d.get("oeis")
            if oeis:
                if oeis["skipped"]:
                    lines.append(f"  - OEIS: skipped ({oeis['skipped']})")
                elif oeis["cache_miss"]:
                    lines.append("  - OEIS: not in cache (offline)")
                else:
                    ids = ", ".join(m["identifier"] for m in oeis["matches"]) or "no match"
                    lines.append(f"  - OEIS ({'negated ' if d.get('oeisNegated') else ''}{oeis['query']}): {ids}")
        lines.append("")
        if self.bridge is not None:
            lines.append("## Weighted inverse g and the matrix inverse")
            lines.append("")
            lines.append(f"F_l g(k,l) = B(l,k) for 1 <= k <= l <= {self.max_row}: {'holds' if self.bridge['pass'] else 'FAILS'}")
            lines.append("")
        if self.warnings:
            lines.append("## Warnings")
            lines.append("")
            lines += [f"- {w}" for w in self.warnings]
            lines.append("")
        return "\n".join(lines)


def _rational_entries(seq: DiagonalSequence):
    if any(isinstance(x, QPoly) for x in seq.entries):
        return None
    return [Fraction(x) for x in seq.entries]


def discovery_report(family: str, N: int, options: DiscoveryOptions | None = None,
                     client: OeisClient | None = None) -> DiscoveryReport:
    opts = options or DiscoveryOptions()
    T = generate(family, N)
    B = invert_triangle(T)
    ref_name = opts.reference or family
    R = T if ref_name == family else generate(ref_name, N)
    if R.offset != T.offset:
        raise ValueError(f"reference {ref_name} has a different index range from {family}")
    norm = normalize_by(B, R)
    patterns = diagonal_patterns(norm, B)
    is_q = T.domain == "qpoly"
    laws = detect_laws(patterns, is_q)

    violations = []
    for (n, k), q in sorted(norm.quotients.items()):
        if signed_monomial(q) is None:
            violations.append({"n": n, "k": k, "value": entry_text(B[n, k]), "quotient": entry_text(q)})
    undefined = [{"n": n, "k": k, "reason": why} for n, k, why in norm.undefined]

    statements = []
    checked = f"holds for all checked n <= {N}"
    if laws["signLaw"]:
        law = f"B(n,k) = {laws['signLaw'].replace('d', '(n-k)')}"
        if laws["qExponentLaw"]:
            law += f" q^{laws['qExponentLaw'].replace('d', 'n-k')}"
        statements.append(f"{law} * R(n,k) with R = {ref_name}: {checked}")
    else:
        statements.append(
            f"no law B(n,k) = sign * R(n,k) with R = {ref_name}: {len(violations)} entries have a quotient "
            f"that is not a signed unit monomial"
        )
        first = next((v for v in violations if v["quotient"] != "0"), None)
        if first is not None:
            n, k = first["n"], first["k"]
            statements.append(f"first nonzero offender: B({n},{k}) = {first['value']} against R({n},{k}) = {entry_text(R[n, k])}")
    if laws["quotientByOffset"] and not laws["signLaw"]:
        cs = ", ".join(laws["quotientByOffset"][:12])
        statements.append(
            f"B(n,k) / R(n,k) depends only on d = n-k, B(n,k) = c(n-k) R(n,k) with c = {cs}"
            f"{', ...' if len(laws['quotientByOffset']) > 12 else ''}: {checked}"
        )
    for p in patterns:
        if p["d"] > 0 and p["zeroThroughRow"] is not None:
            scope = f"every checked row <= {N}" if p["kind"] == "zero" else f"rows through {p['zeroThroughRow']} only"
            statements.append(f"diagonal d={p['d']} of the inverse is zero on {scope}")

    warnings: list = []
    network_error = False
    oeis_client = None
    if opts.oeis:
        oeis_client = client or OeisClient(cache_dir=opts.cache_dir, offline=opts.offline)

    diagonals = []
    max_offset = min(opts.max_offset, B.max_row - B.offset)
    for seq in diagonal_sequences(B, max_offset):
        entry = {
            "offset": seq.offset,
            "start": seq.start,
            "entries": [entry_text(x) for x in seq.entries],
        }
        values = _rational_entries(seq)
        if values is None:
            entry["recurrence"] = "not attempted (q-polynomial entries)"
        else:
            try:
                fit = fit_linear_recurrence(values, opts.max_order)
                entry["recurrence"] = fit.to_dict() if fit else f"no fit of order <= {opts.max_order}"
                if fit and fit.order > 0:
                    statements.append(
                        f"diagonal d={seq.offset} satisfies s(i) = "
                        + " + ".join(f"({entry_text(c)})*s(i-{j})" for j, c in enumerate(fit.coeffs, 1))
                        + f" on all {len(values)} computed terms"
                    )
            except InsufficientDataError as exc:
                entry["recurrence"] = f"insufficient data: {exc}"
        entry["oeis"] = None
        if oeis_client is not None and seq.offset <= opts.oeis_max_offset:
            terms = values[: opts.oeis_terms] if values is not None else seq.entries[: opts.oeis_terms]
            negated = values is not None and any(terms) and all(t <= 0 for t in terms)
            if negated:
                terms = [-t for t in terms]
            try:
                result = oeis_client.lookup(terms)
                entry["oeis"] = result.to_dict()
                entry["oeisNegated"] = negated
            except OeisNetworkError as exc:
                network_error = True
                warnings.append(f"OEIS lookup for d={seq.offset} failed: {exc}")
            except OeisError as exc:
                warnings.append(f"OEIS lookup for d={seq.offset} failed: {exc}")
        diagonals.append(entry)

    bridge = None
    if family == "fibonomial" and N >= 1:
        rep = bridge_check(N, B)
        g = weighted_inverse(fibonomial_function(N))
        shown = min(N, 6)
        bridge = {
            "pass": rep.passed,
            "counterexamples": len(rep.counterexamples),
            "table": [
                {"k": k, "l": l, "F_l*g(k,l)": entry_text(fibonacci(l) * g(k, l)), "B(l,k)": entry_text(B[l, k])}
                for k in range(1, shown + 1) for l in range(k, shown + 1)
            ],
        }
        if rep.passed:
            statements.append(f"F_l g(k,l) = B(l,k) for 1 <= k <= l: {checked}")

    return DiscoveryReport(
        family=family,
        max_row=N,
        reference=ref_name,
        inverse=B,
        patterns=patterns,
        laws=laws,
        violations=violations,
        undefined=undefined,
        diagonals=diagonals,
        statements=statements,
        bridge=bridge,
        warnings=warnings,
        network_error=network_error,
    )
