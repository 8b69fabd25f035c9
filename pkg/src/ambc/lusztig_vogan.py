"""
The Lusztig-Vogan bijection, computed through the matrix-ball construction.

Forward direction: a dominant GL_n weight mu is identified with the affine
permutation [n*mu_1 + 1, ..., n*mu_n + n]; its minimal double-coset
representative lands in the diagonal intersection of the canonical left cell
with its inverse, where the forward map reads off the shape and (after block
reversal) a dominant weight of the attached product group.  Backward: feed
the weight through the backward map at the canonical tabloid and collect the
window's block diagonals.

The integer tableaux built here (balanced columns, with the first-row
entries topped up by a minimal-square water filling) give the dominant
weights matched to the one-row generator weights; they are exercised by the
test suite as an independent cross-check of both directions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .affine import (
    AffinePerm,
    InvariantError,
    check_partition,
    conjugate_partition,
    from_dominant_weight,
    min_double_coset_rep,
    window_diagonals,
)
from .matrixball import phi, psi
from .repring import FWeight, check_gl_weight, fweight_from_rows, zero_fweight
from .tabloids import canonical_tabloid, equal_part_runs, rev_lambda


@dataclass(frozen=True)
class LVPair:
    """A nilpotent-orbit shape together with a dominant weight of the
    attached product group."""

    shape: tuple[int, ...]
    weight: FWeight

    def __post_init__(self):
        object.__setattr__(self, "shape", check_partition(self.shape))
        if self.weight.shape != self.shape:
            raise ValueError(f"weight shape {self.weight.shape} != {self.shape}")


def theta1(mu: Sequence[int]) -> LVPair:
    """
    The bijection from dominant GL_n weights to pairs (shape, weight).

    >>> theta1((0, 0, 0)) == LVPair((3,), FWeight((3,), ((0,),)))
    True
    """
    mu = check_gl_weight(mu)
    w = min_double_coset_rep(from_dominant_weight(mu))
    t = phi(w)
    lam = t.shape()
    can = canonical_tabloid(lam)
    if t.p != can or t.q != can:
        raise InvariantError(
            f"double-coset representative escaped the canonical cell: {t.p.rows} vs {can.rows}"
        )
    return LVPair(lam, fweight_from_rows(lam, rev_lambda(lam, t.rho)))


def theta1_inverse(lam: Sequence[int], weight: FWeight) -> tuple[int, ...]:
    """
    The inverse bijection: the dominant GL_n weight whose class meets the
    backward image of the canonical tabloid pair at the given weight.

    >>> theta1_inverse((3,), FWeight((3,), ((2,),)))
    (1, 1, 0)
    """
    lam = check_partition(lam)
    if weight.shape != lam:
        raise ValueError(f"weight shape {weight.shape} != {lam}")
    can = canonical_tabloid(lam)
    w = psi(can, can, rev_lambda(lam, weight.flatten()))
    return window_diagonals(w)


def lv_window(lam: Sequence[int], weight: FWeight) -> AffinePerm:
    """The canonical-cell window representing (lam, weight)."""
    lam = check_partition(lam)
    can = canonical_tabloid(lam)
    return psi(can, can, rev_lambda(lam, weight.flatten()))


def w_tableau_zero(lam: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """
    The balanced tableau of shape lam: column j holds the centered ladder
    (h-1, h-3, ..., 1-h) for h the column height, read top to bottom.

    >>> w_tableau_zero((3, 3, 2, 2, 1))
    ((4, 3, 1), (2, 1, -1), (0, -1), (-2, -3), (-4,))
    """
    lam = check_partition(lam)
    conj = conjugate_partition(lam)
    return tuple(
        tuple(conj[j] - 1 - 2 * i for j in range(lam[i])) for i in range(len(lam))
    )


def _water_fill(a: Sequence[int], s: int) -> tuple[int, ...]:
    """Raise entries of the weakly decreasing vector a by s unit steps, each
    step incrementing the smallest entry that keeps the vector weakly
    decreasing; this minimizes the sum of squares at fixed sum."""
    b = list(a)
    for _ in range(s):
        eligible = [i for i in range(len(b)) if i == 0 or b[i] < b[i - 1]]
        i = min(eligible, key=lambda i: b[i])
        b[i] += 1
    return tuple(b)


def w_tableau(lam: Sequence[int], r: int, s: int) -> tuple[tuple[int, ...], ...]:
    """
    The balanced tableau with its first r first-row entries replaced by the
    minimal-square top-up of total weight s.

    >>> w_tableau((3, 3, 2, 2, 1), 2, 5)[0]
    (6, 6, 1)
    """
    lam = check_partition(lam)
    if r not in lam:
        raise ValueError(f"{r} is not a part of {lam}")
    if s < 0:
        raise ValueError(f"negative weight {s}")
    base = w_tableau_zero(lam)
    first = _water_fill(base[0][:r], s) + base[0][r:]
    return (first,) + base[1:]


def mu_lambda_zero(lam: Sequence[int]) -> tuple[int, ...]:
    """The dominant weight collecting the balanced tableau's entries."""
    return tuple(sorted((x for row in w_tableau_zero(lam) for x in row), reverse=True))


def mu_lambda(lam: Sequence[int], r: int, s: int) -> tuple[int, ...]:
    """
    The dominant weight collecting the entries of the topped-up tableau.

    >>> mu_lambda((3, 3, 1), 3, 2)
    (2, 2, 2, 0, -1, -1, -2)
    """
    return tuple(sorted((x for row in w_tableau(lam, r, s) for x in row), reverse=True))


def rho_lambda(lam: Sequence[int], r: int, s: int) -> FWeight:
    """The generator weight: (s, 0, ..., 0) on the factor of part size r,
    zero elsewhere."""
    lam = check_partition(lam)
    if r not in lam:
        raise ValueError(f"{r} is not a part of {lam}")
    blocks = []
    for a, b in equal_part_runs(lam):
        if lam[a] == r:
            blocks.append((s,) + (0,) * (b - a - 1))
        else:
            blocks.append((0,) * (b - a))
    return FWeight(lam, tuple(blocks))


def zero_pair(lam: Sequence[int]) -> LVPair:
    return LVPair(tuple(lam), zero_fweight(lam))


# --- text format -----------------------------------------------------------------


def format_lv_pair(p: LVPair) -> str:
    return json.dumps(
        {"shape": list(p.shape), "weight_blocks": [list(b) for b in p.weight.blocks]},
        separators=(",", ":"),
    )


def parse_lv_pair(text: str) -> LVPair:
    """Parse the JSON form {"shape": [...], "weight_blocks": [[...], ...]}."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"bad pair text: {e}") from None
    if not isinstance(data, dict) or set(data) != {"shape", "weight_blocks"}:
        raise ValueError('pair must be an object with keys "shape" and "weight_blocks"')
    shape = tuple(data["shape"])
    return LVPair(shape, FWeight(shape, tuple(tuple(b) for b in data["weight_blocks"])))
