"""
Independent brute-force reimplementations used for differential testing, plus
a runnable self-check corpus.

Everything here favors transparency over speed: channels by subset
enumeration, complete stream families by exact-cover backtracking over
residue classes, symmetric-function products by raw monomial expansion.
Guards keep the exponential searches at desk scale.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .affine import AffinePerm, PartialPerm, _ceil_div
from .matrixball import Stream, channels, phi
from .repring import VirtualChar, check_gl_weight, tensor_gl
from .tabloids import equal_part_runs, rev_lambda


@dataclass(frozen=True)
class OracleReport:
    case: str
    expected: str
    actual: str
    passed: bool

    def line(self) -> str:
        status = "ok" if self.passed else "MISMATCH"
        return f"{status:8s} {self.case}: expected {self.expected}, got {self.actual}"

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "expected": self.expected,
            "actual": self.actual,
            "passed": self.passed,
        }


# --- channels by enumeration ---------------------------------------------------


def _is_chain(win, n: int, positions: Sequence[int]) -> bool:
    ps = sorted(positions)
    return all(
        0 < win[b - 1] - win[a - 1] < n for a, b in itertools.combinations(ps, 2)
    )


def brute_channels(w: PartialPerm) -> tuple[Stream, ...]:
    """All maximum-density substreams, found by raw subset enumeration."""
    if w.n > 8:
        raise ValueError(f"brute channel search is guarded to n <= 8, got {w.n}")
    dom = w.domain()
    if not dom:
        raise ValueError("empty permutation has no channels")
    best: list[tuple[int, ...]] = []
    for k in range(len(dom), 0, -1):
        for sub in itertools.combinations(dom, k):
            if _is_chain(w.window, w.n, sub):
                best.append(sub)
        if best:
            break
    streams = [Stream(w.n, tuple((x, w.window[x - 1]) for x in sub)) for sub in best]
    return tuple(sorted(streams, key=lambda s: s.pairs))


# --- complete stream families ----------------------------------------------------


def brute_complete_stream_families(w: PartialPerm) -> list[tuple[tuple[int, ...], ...]]:
    """
    All partitions of the ball set into disjoint streams whose densities
    realize the cell shape of w; each family lists the streams' window
    position sets, ordered by the shape's rows.
    """
    if w.n > 10:
        raise ValueError(f"stream-family search is guarded to n <= 10, got {w.n}")
    if isinstance(w, AffinePerm):
        lam = phi(w).shape()
    else:
        from .matrixball import _phi_win

        lam = tuple(len(r) for r in _phi_win(w.window, w.n)[0])
    dom = w.domain()
    families: list[tuple[tuple[int, ...], ...]] = []

    def rec(remaining: tuple[int, ...], row: int, acc: tuple[tuple[int, ...], ...]):
        if row == len(lam):
            if not remaining:
                families.append(acc)
            return
        size = lam[row]
        for sub in itertools.combinations(remaining, size):
            # canonical order of equal-density streams: increasing minima
            if row > 0 and lam[row - 1] == size and sub[0] < acc[-1][0]:
                continue
            if _is_chain(w.window, w.n, sub):
                rest = tuple(x for x in remaining if x not in sub)
                rec(rest, row + 1, acc + (sub,))

    rec(dom, 0, ())
    return families


def stream_altitude(w: PartialPerm, positions: Sequence[int]) -> int:
    return sum(_ceil_div(w.window[x - 1], w.n) - 1 for x in positions)


def epsilon_from_families(w: PartialPerm) -> tuple[int, ...]:
    """
    The weight read off a complete stream family: altitudes sorted descending
    inside every run of equal densities.  Checks that every family yields the
    same answer.
    """
    families = brute_complete_stream_families(w)
    if not families:
        raise ValueError("no complete stream family exists")
    lam = tuple(len(s) for s in families[0])
    answers = set()
    for fam in families:
        alts = [stream_altitude(w, s) for s in fam]
        for a, b in equal_part_runs(lam):
            alts[a:b] = sorted(alts[a:b], reverse=True)
        answers.add(tuple(alts))
    if len(answers) != 1:
        raise ValueError(f"family-dependent weight: {sorted(answers)}")
    return answers.pop()


# --- symmetric function products --------------------------------------------------


def _ssyt_monomials(shape: tuple[int, ...], m: int) -> dict[tuple[int, ...], int]:
    """Monomial expansion of the Schur polynomial in m variables: sum over
    semistandard tableaux of the shape with entries in 1..m."""
    shape = tuple(p for p in shape if p)
    if not shape:
        return {(0,) * m: 1}
    if len(shape) > m:
        return {}
    cells = [(r, c) for r in range(len(shape)) for c in range(shape[r])]
    out: dict[tuple[int, ...], int] = {}
    filling: dict[tuple[int, int], int] = {}

    def rec(idx: int):
        if idx == len(cells):
            weight = [0] * m
            for v in filling.values():
                weight[v - 1] += 1
            key = tuple(weight)
            out[key] = out.get(key, 0) + 1
            return
        r, c = cells[idx]
        lo = filling.get((r, c - 1), 1)
        above = filling.get((r - 1, c))
        lo = max(lo, above + 1 if above is not None else 1)
        for v in range(lo, m + 1):
            filling[(r, c)] = v
            rec(idx + 1)
            del filling[(r, c)]

    rec(0)
    return out


def _poly_mul(p: dict, q: dict, m: int) -> dict:
    out: dict[tuple[int, ...], int] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            key = tuple(a + b for a, b in zip(e1, e2))
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def brute_schur_product(mu: Sequence[int], nu: Sequence[int], m: int) -> VirtualChar:
    """
    Multiply two Laurent-Schur polynomials by explicit monomial expansion and
    re-expand in the Schur basis by lex-leading-term elimination.
    """
    if m > 3:
        raise ValueError(f"brute Schur products are guarded to m <= 3, got {m}")
    mu = check_gl_weight(mu, m)
    nu = check_gl_weight(nu, m)
    c1 = max(0, -mu[-1])
    c2 = max(0, -nu[-1])
    poly = _poly_mul(
        _ssyt_monomials(tuple(x + c1 for x in mu), m),
        _ssyt_monomials(tuple(x + c2 for x in nu), m),
        m,
    )
    out: VirtualChar = {}
    while poly:
        lead = max(poly)
        if any(a < b for a, b in zip(lead, lead[1:])):
            raise ValueError(f"lex-leading exponent {lead} is not dominant")
        coeff = poly[lead]
        out[tuple(x - c1 - c2 for x in lead)] = coeff
        for key, c in _ssyt_monomials(lead, m).items():
            k = poly.get(key, 0) - coeff * c
            if k:
                poly[key] = k
            else:
                poly.pop(key, None)
    return out


# --- self-check corpus -------------------------------------------------------------


def _random_affine_perm(rng: random.Random, n: int, spread: int = 2) -> AffinePerm:
    vals = list(range(1, n + 1))
    rng.shuffle(vals)
    return AffinePerm(n, tuple(v + n * rng.randint(-spread, spread) for v in vals))


def _report(case: str, expected, actual) -> OracleReport:
    return OracleReport(case, str(expected), str(actual), expected == actual)


def self_check(seed: int = 20240601, samples: int = 60) -> list[OracleReport]:
    """
    Differential corpus: the fast channel search against subset enumeration,
    forward/backward round trips, the diagonal-cell weight against
    stream-family altitudes, and tensor products against raw polynomial
    arithmetic.
    """
    from .matrixball import psi_triple
    from .tabloids import anticanonical_tabloid, enumerate_tabloids
    from .matrixball import psi

    rng = random.Random(seed)
    reports: list[OracleReport] = []

    for i in range(samples):
        n = rng.randint(2, 8)
        w = _random_affine_perm(rng, n)
        fast = tuple(s.pairs for s in channels(w))
        slow = tuple(s.pairs for s in brute_channels(w))
        reports.append(_report(f"channels[{i}] n={n}", slow, fast))

    for i in range(samples):
        n = rng.randint(2, 8)
        w = _random_affine_perm(rng, n)
        t = phi(w)
        reports.append(_report(f"roundtrip[{i}] n={n}", w.window, psi_triple(t).window))

    count = 0
    for n in range(2, 8):
        from .affine import partitions

        for lam in partitions(n):
            anti = anticanonical_tabloid(lam)
            for _ in range(3):
                rho = _random_dominant_diag(rng, lam)
                w = psi(anti, anti, rho)
                expected = rev_lambda(lam, rho)
                actual = epsilon_from_families(w)
                reports.append(_report(f"epsilon[{count}] lam={lam}", expected, actual))
                count += 1

    for i in range(samples):
        m = rng.randint(1, 3)
        mu = tuple(sorted((rng.randint(-3, 3) for _ in range(m)), reverse=True))
        nu = tuple(sorted((rng.randint(-3, 3) for _ in range(m)), reverse=True))
        fast = tensor_gl(mu, nu)
        slow = brute_schur_product(mu, nu, m)
        reports.append(_report(f"schur[{i}] m={m}", sorted(slow.items()), sorted(fast.items())))

    return reports


def _random_dominant_diag(rng: random.Random, lam: tuple[int, ...]) -> tuple[int, ...]:
    """A random altitude vector dominant for a diagonal tabloid pair: weakly
    increasing on every equal-part run."""
    rho = []
    for a, b in equal_part_runs(lam):
        block = sorted(rng.randint(-2, 2) for _ in range(b - a))
        rho.extend(block)
    return tuple(rho)
