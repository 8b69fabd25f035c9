"""
The representation ring side: tensor products of rational GL_m irreducibles
with possibly negative highest weights, assembled block-wise into the ring
attached to a partition (one GL factor per equal-part multiplicity).

Products are computed by the Littlewood-Richardson rule: both weights are
shifted by determinant powers until they are partitions, skew tableaux with
the lattice-word property are counted, and the shift is undone.  The Weyl
dimension formula is included as a verification oracle.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .affine import check_partition
from .tabloids import RowVector, equal_part_runs

GLWeight = tuple[int, ...]
VirtualChar = dict  # weight -> nonzero integer multiplicity


def check_gl_weight(mu: Sequence[int], m: Optional[int] = None) -> GLWeight:
    """Validate a weakly decreasing integer vector."""
    mu = tuple(mu)
    if not mu:
        raise ValueError("empty weight")
    if any(not isinstance(x, int) for x in mu):
        raise ValueError(f"weight entries must be integers: {mu}")
    if any(a < b for a, b in zip(mu, mu[1:])):
        raise ValueError(f"weight is not weakly decreasing: {mu}")
    if m is not None and len(mu) != m:
        raise ValueError(f"weight length {len(mu)} != {m}")
    return mu


@dataclass(frozen=True)
class FWeight:
    """
    A dominant weight of the product group attached to ``shape``: one
    weakly decreasing block per equal-part run of the shape, listed in row
    order (largest parts first).

    >>> FWeight((3, 3, 1), ((1, -2), (3,))).flatten()
    (1, -2, 3)
    """

    shape: tuple[int, ...]
    blocks: tuple[GLWeight, ...]

    def __post_init__(self):
        shape = check_partition(self.shape)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))
        runs = equal_part_runs(shape)
        if len(self.blocks) != len(runs):
            raise ValueError(f"expected {len(runs)} blocks for shape {shape}, got {self.blocks}")
        for (a, b), block in zip(runs, self.blocks):
            check_gl_weight(block, b - a)

    def flatten(self) -> RowVector:
        """The row vector aligned with the rows of the shape."""
        return tuple(x for block in self.blocks for x in block)

    def block_of_part(self, part: int) -> GLWeight:
        for (a, _), block in zip(equal_part_runs(self.shape), self.blocks):
            if self.shape[a] == part:
                return block
        raise ValueError(f"{part} is not a part of {self.shape}")


def fweight_from_rows(lam: Sequence[int], vec: Sequence[int]) -> FWeight:
    """Cut a row vector (weakly decreasing on each equal-part run) into blocks."""
    lam = check_partition(lam)
    vec = tuple(vec)
    if len(vec) != len(lam):
        raise ValueError(f"vector length {len(vec)} != rows {len(lam)}")
    return FWeight(lam, tuple(vec[a:b] for a, b in equal_part_runs(lam)))


def zero_fweight(lam: Sequence[int]) -> FWeight:
    lam = check_partition(lam)
    return FWeight(lam, tuple((0,) * (b - a) for a, b in equal_part_runs(lam)))


def is_determinantal(lam: Sequence[int], rho: Sequence[int]) -> bool:
    """True iff rho is constant on every equal-part run of lam."""
    lam = check_partition(lam)
    rho = tuple(rho)
    if len(rho) != len(lam):
        raise ValueError(f"length mismatch: {lam} vs {rho}")
    return all(len(set(rho[a:b])) == 1 for a, b in equal_part_runs(lam))


# --- Littlewood-Richardson ----------------------------------------------------


@lru_cache(maxsize=100000)
def _lr_tableau_count(kappa: tuple[int, ...], mu: tuple[int, ...], nu: tuple[int, ...]) -> int:
    """Number of Littlewood-Richardson skew tableaux of shape kappa/mu and
    content nu (semistandard, reverse reading word a lattice word)."""
    rows = len(kappa)
    mu = mu + (0,) * (rows - len(mu))
    cells = [(r, c) for r in range(rows) for c in range(kappa[r] - 1, mu[r] - 1, -1)]
    remaining = list(nu)
    filling: dict[tuple[int, int], int] = {}

    def place(idx: int) -> int:
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        right = filling.get((r, c + 1))
        above = filling.get((r - 1, c)) if r > 0 and c >= mu[r - 1] else None
        total = 0
        for v in range(1, len(nu) + 1):
            if remaining[v - 1] == 0:
                continue
            if right is not None and v > right:
                continue
            if above is not None and v <= above:
                continue
            # lattice condition on the reverse reading word: every prefix has
            # at least as many (v-1)s as vs
            if v > 1 and (nu[v - 2] - remaining[v - 2]) < (nu[v - 1] - remaining[v - 1]) + 1:
                continue
            remaining[v - 1] -= 1
            filling[(r, c)] = v
            total += place(idx + 1)
            del filling[(r, c)]
            remaining[v - 1] += 1
        return total

    return place(0)


def _lr_product(mu: tuple[int, ...], nu: tuple[int, ...], max_rows: int) -> dict[tuple[int, ...], int]:
    """Expand s_mu * s_nu over partitions with at most max_rows rows."""
    mu = tuple(p for p in mu if p)
    nu = tuple(p for p in nu if p)
    if not nu:
        return {mu: 1}
    if not mu:
        return {nu: 1} if len(nu) <= max_rows else {}
    total = sum(mu) + sum(nu)

    out: dict[tuple[int, ...], int] = {}

    def kappas(row: int, prev: int, used: int):
        if used > total:
            return
        if row == max_rows:
            if used == total:
                yield ()
            return
        base = mu[row] if row < len(mu) else 0
        hi = min(prev, base + nu[0] if row == 0 else prev)
        lo = base
        for part in range(lo, hi + 1):
            if used + part > total:
                break
            for rest in kappas(row + 1, part, used + part):
                yield (part,) + rest

    for kappa in kappas(0, total, 0):
        kappa = tuple(p for p in kappa if p)
        if len(kappa) < len(mu) or sum(kappa) != total:
            continue
        coeff = _lr_tableau_count(kappa, mu, nu)
        if coeff:
            out[kappa] = coeff
    return out


def tensor_gl(mu: Sequence[int], nu: Sequence[int]) -> VirtualChar:
    """
    Decompose the tensor product of the GL_m irreducibles with highest
    weights mu and nu (entries may be negative).  Returns a map from
    dominant weights to multiplicities.

    >>> sorted(tensor_gl((2, 1, 0), (2, 0, 0)))
    [(2, 2, 1), (3, 1, 1), (3, 2, 0), (4, 1, 0)]
    """
    mu = check_gl_weight(mu)
    nu = check_gl_weight(nu, len(mu))
    m = len(mu)
    c1 = max(0, -mu[-1])
    c2 = max(0, -nu[-1])
    mu_p = tuple(x + c1 for x in mu)
    nu_p = tuple(x + c2 for x in nu)
    raw = _lr_product(mu_p, nu_p, m)
    shift = c1 + c2
    return {
        tuple(x - shift for x in (kappa + (0,) * (m - len(kappa)))): coeff
        for kappa, coeff in raw.items()
    }


def tensor_f(r1: FWeight, r2: FWeight) -> VirtualChar:
    """
    Block-wise tensor product in the ring attached to a shape: decompose each
    GL factor separately and combine multiplicatively.
    """
    if r1.shape != r2.shape:
        raise ValueError(f"shape mismatch: {r1.shape} vs {r2.shape}")
    combos: list[tuple[tuple[GLWeight, ...], int]] = [((), 1)]
    for b1, b2 in zip(r1.blocks, r2.blocks):
        factor = tensor_gl(b1, b2)
        combos = [
            (blocks + (w,), c * mult) for blocks, c in combos for w, mult in factor.items()
        ]
    out: VirtualChar = {}
    for blocks, c in combos:
        key = FWeight(r1.shape, blocks)
        out[key] = out.get(key, 0) + c
    return out


def dim_gl(mu: Sequence[int]) -> int:
    """
    Dimension of the GL irreducible with highest weight mu, by the Weyl
    formula prod_{i<j} (mu_i - mu_j + j - i) / (j - i).

    >>> dim_gl((2, 1, 0))
    8
    """
    mu = check_gl_weight(mu)
    m = len(mu)
    num = den = 1
    for i in range(m):
        for j in range(i + 1, m):
            num *= mu[i] - mu[j] + j - i
            den *= j - i
    assert num % den == 0
    return num // den


def dim_f(fw: FWeight) -> int:
    """Product of the factor dimensions."""
    return math.prod(dim_gl(b) for b in fw.blocks)


# --- text formats ---------------------------------------------------------------


def format_gl_weight(mu: Sequence[int]) -> str:
    return ",".join(str(x) for x in mu)


def parse_gl_weight(text: str) -> GLWeight:
    """Parse a comma list like "2,1,0" into a dominant weight."""
    try:
        mu = tuple(int(p) for p in text.replace("−", "-").split(","))
    except ValueError:
        raise ValueError(f"bad weight {text!r}") from None
    return check_gl_weight(mu)


def format_fweight(fw: FWeight) -> str:
    return json.dumps(
        {"shape": list(fw.shape), "blocks": [list(b) for b in fw.blocks]},
        separators=(",", ":"),
    )


def parse_fweight(text: str) -> FWeight:
    """Parse the JSON form {"shape": [...], "blocks": [[...], ...]}."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"bad weight text: {e}") from None
    if not isinstance(data, dict) or set(data) != {"shape", "blocks"}:
        raise ValueError('weight must be an object with keys "shape" and "blocks"')
    return FWeight(tuple(data["shape"]), tuple(tuple(b) for b in data["blocks"]))
