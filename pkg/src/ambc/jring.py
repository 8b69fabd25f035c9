"""
The asymptotic Hecke algebra of the extended affine symmetric group as a
based ring on basis symbols t_w, multiplied through its matrix-algebra
presentation: the block of a two-sided cell is a matrix algebra over the
representation ring of the attached product of general linear groups, with
rows and columns indexed by the P- and Q-tabloids and entries read off by
the forward map.

Concretely, t_u * t_v vanishes unless the shapes agree and Q(u) = P(v);
otherwise the normalized weights tensor-multiply in the representation ring
and each summand is carried back through the backward map.
"""
from __future__ import annotations

import json
import re
from typing import Sequence

from .affine import AffinePerm, parse_window, format_window
from .matrixball import phi, psi
from .repring import FWeight, fweight_from_rows
from .tabloids import (
    Tabloid,
    enumerate_tabloids,
    offset_constants,
    rev_lambda,
)

JElement = dict  # AffinePerm -> nonzero integer coefficient


def t_basis(w: AffinePerm) -> JElement:
    return {w: 1}


def upsilon(w: AffinePerm) -> tuple[Tabloid, Tabloid, FWeight]:
    """
    The matrix-algebra coordinates of t_w: the row label P(w), the column
    label Q(w), and the representation-ring entry, i.e. the block reversal of
    the altitude vector after subtracting the offset constants.
    """
    t = phi(w)
    lam = t.shape()
    s = offset_constants(t.p, t.q)
    rho = tuple(r - c for r, c in zip(t.rho, s))
    return t.p, t.q, fweight_from_rows(lam, rev_lambda(lam, rho))


def t_multiply(u: AffinePerm, v: AffinePerm) -> JElement:
    """
    The product t_u * t_v expanded in the t-basis.

    Zero across distinct two-sided cells and whenever Q(u) != P(v); otherwise
    the entries tensor-multiply and each output weight is carried back
    through the backward map.
    """
    if u.n != v.n:
        raise ValueError(f"period mismatch: {u.n} != {v.n}")
    tu, tv = phi(u), phi(v)
    lam = tu.shape()
    if lam != tv.shape() or tu.q != tv.p:
        return {}
    s_uv = offset_constants(tu.p, tu.q)
    s_vw = offset_constants(tv.p, tv.q)
    wu = fweight_from_rows(lam, rev_lambda(lam, tuple(r - c for r, c in zip(tu.rho, s_uv))))
    wv = fweight_from_rows(lam, rev_lambda(lam, tuple(r - c for r, c in zip(tv.rho, s_vw))))
    from .repring import tensor_f

    s_out = offset_constants(tu.p, tv.q)
    out: JElement = {}
    for weight, mult in tensor_f(wu, wv).items():
        rho = rev_lambda(lam, weight.flatten())
        w_out = psi(tu.p, tv.q, tuple(a + b for a, b in zip(s_out, rho)))
        out[w_out] = out.get(w_out, 0) + mult
    return out


def j_multiply(a: JElement, b: JElement) -> JElement:
    """Bilinear extension of t_multiply; zero coefficients are dropped."""
    periods = {w.n for w in a} | {w.n for w in b}
    if len(periods) > 1:
        raise ValueError(f"period mismatch: {sorted(periods)}")
    out: JElement = {}
    for u, cu in a.items():
        for v, cv in b.items():
            for w, c in t_multiply(u, v).items():
                out[w] = out.get(w, 0) + cu * cv * c
    return {w: c for w, c in out.items() if c}


def unit(lam: Sequence[int], n: int) -> JElement:
    """
    The unit of the cell block of shape lam: the sum of t_w over the
    distinguished involutions of the cell.
    """
    zero = (0,) * len(tuple(lam))
    return {psi(t, t, zero): 1 for t in enumerate_tabloids(lam, n)}


def pgl_member(w: AffinePerm) -> bool:
    """True iff the altitude vector of w sums to zero, i.e. w lies in the
    non-extended affine symmetric group."""
    return sum(phi(w).rho) == 0


def sl_reduce(a: JElement) -> JElement:
    """
    Rewrite each basis symbol to the canonical representative of its class
    modulo the central shift omega^n (which adds the shape to the altitude
    vector); the representative has altitude sum in [0, n).
    """
    out: JElement = {}
    for w, c in a.items():
        t = phi(w)
        lam = t.shape()
        k = sum(t.rho) // w.n
        rep = psi(t.p, t.q, tuple(r - k * p for r, p in zip(t.rho, lam))) if k else w
        out[rep] = out.get(rep, 0) + c
    return {w: c for w, c in out.items() if c}


# --- text formats ---------------------------------------------------------------


def format_jelement(a: JElement) -> str:
    """Deterministic formal sum, e.g. "1*[2,1,3] + -1*[1,3,2]"; zero is "0"."""
    if not a:
        return "0"
    terms = sorted(a.items(), key=lambda item: item[0].window)
    return " + ".join(f"{c}*{format_window(w)}" for w, c in terms)


def jelement_to_json(a: JElement) -> str:
    terms = sorted(a.items(), key=lambda item: item[0].window)
    return json.dumps(
        [{"coef": c, "window": list(w.window)} for w, c in terms], separators=(",", ":")
    )


_TERM_RE = re.compile(r"^\s*(-?\d+)\s*\*\s*(\[[^\]]*\])\s*$")


def parse_jelement(text: str) -> JElement:
    """Parse the formal-sum format back into a coefficient map."""
    text = text.strip()
    if text == "0":
        return {}
    out: JElement = {}
    for part in text.split(" + "):
        m = _TERM_RE.match(part)
        if not m:
            raise ValueError(f"bad term {part!r}")
        w = parse_window(m.group(2))
        if not isinstance(w, AffinePerm):
            raise ValueError(f"holes not allowed in basis windows: {part!r}")
        c = int(m.group(1))
        out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}
