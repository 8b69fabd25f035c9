"""
Row-standard Young tabloids and their statistics.

A tabloid of shape lambda (a partition of n) fills the diagram with the
residues 1..n, each exactly once; rows are sets, kept sorted ascending.  On
top of the raw data this module implements the combinatorial statistics the
matrix-ball construction needs:

* the tau-invariant (the descent set a tabloid imposes),
* local charges and symmetrized offset constants s_{P,Q},
* the block reversal rev_lambda and the dominance test that cuts out the
  image of the forward construction,
* the residue shift T -> omega(T) and the conditional swap T -> T* (the
  tabloid side of Knuth moves), with their indicator vectors delta and iota.

Offset constants follow the recurrence s_i - s_{i-1} = lch_{i-1}(P) -
lch_{i-1}(Q) on equal-part runs, with s_i = 0 whenever row i starts a new
run; the worked nine-residue golden test pins this convention.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .affine import check_partition, conjugate_partition, residue

RowVector = tuple[int, ...]
Rows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Tabloid:
    """
    A row-standard Young tabloid: rows of residues 1..n, each row sorted
    ascending, row lengths weakly decreasing.

    >>> Tabloid(3, ((1, 3), (2,))).shape()
    (2, 1)
    """

    n: int
    rows: Rows

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        lengths = tuple(len(r) for r in self.rows)
        check_partition(lengths, self.n)
        seen = sorted(x for row in self.rows for x in row)
        if seen != list(range(1, self.n + 1)):
            raise ValueError(f"rows must contain each residue 1..{self.n} once: {self.rows}")
        if any(a >= b for row in self.rows for a, b in zip(row, row[1:])):
            raise ValueError(f"rows must be strictly increasing: {self.rows}")

    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def row_of(self, i: int) -> int:
        """1-based index of the row containing residue i."""
        return _row_index(self.rows)[i]


@lru_cache(maxsize=200000)
def _row_index(rows: Rows) -> dict[int, int]:
    return {x: t for t, row in enumerate(rows, start=1) for x in row}


def tau(t: Tabloid) -> frozenset[int]:
    """
    The tau-invariant: residues i whose row lies strictly above the row of
    i+1 (indices cyclic, so n is compared against 1).  Rows are numbered from
    the top, and "above" means a smaller row index; this calibration makes
    tau of the reverse-row superstandard tabloid land inside {n}.
    """
    return frozenset(tau_rows(t.rows, t.n))


@lru_cache(maxsize=200000)
def tau_rows(rows: Rows, n: int) -> tuple[int, ...]:
    idx = _row_index(rows)
    return tuple(i for i in range(1, n + 1) if idx[i] < idx[i % n + 1])


def local_charge(t: Tabloid, i: int) -> int:
    """
    The local charge in row i: the least right-shift d of row i making
    (row i, row i+1) a standard skew pair.

    >>> local_charge(Tabloid(8, ((3, 5, 7, 8), (1, 2, 4, 6))), 1)
    2
    """
    if not 1 <= i <= len(t.rows) - 1:
        raise ValueError(f"row index {i} out of range for shape {t.shape()}")
    return _lch_pair(t.rows[i - 1], t.rows[i])


@lru_cache(maxsize=200000)
def _lch_pair(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    # smallest d >= 0 with a[l-d] < b[l] for all l in [d+1, len(b)], 1-based
    t = len(b)
    for d in range(t + 1):
        if all(a[l - d - 1] < b[l - 1] for l in range(d + 1, t + 1)):
            return d
    raise AssertionError("unreachable: d = len(b) is vacuously valid")


def offset_constants(p: Tabloid, q: Tabloid) -> RowVector:
    """
    The symmetrized offset constants s_{P,Q}: zero at the start of each
    equal-part run, and accumulating local-charge differences inside a run.

    >>> p = Tabloid(9, ((2, 4, 6), (3, 7, 8), (1, 5, 9)))
    >>> q = Tabloid(9, ((3, 5, 7), (1, 2, 8), (4, 6, 9)))
    >>> offset_constants(p, q)
    (0, -2, -1)
    """
    if p.shape() != q.shape():
        raise ValueError(f"shape mismatch: {p.shape()} vs {q.shape()}")
    return offset_rows(p.rows, q.rows)


def offset_rows(prows: Rows, qrows: Rows) -> RowVector:
    lam = tuple(len(r) for r in prows)
    out = [0] * len(lam)
    for i in range(1, len(lam)):
        if lam[i - 1] == lam[i]:
            out[i] = out[i - 1] + _lch_pair(prows[i - 1], prows[i]) - _lch_pair(qrows[i - 1], qrows[i])
    return tuple(out)


def equal_part_runs(lam: Sequence[int]) -> list[tuple[int, int]]:
    """Half-open index ranges [start, stop) of maximal equal-part runs."""
    runs = []
    start = 0
    for i in range(1, len(lam) + 1):
        if i == len(lam) or lam[i] != lam[start]:
            runs.append((start, i))
            start = i
    return runs


def rev_lambda(lam: Sequence[int], rho: Sequence[int]) -> RowVector:
    """
    Reverse rho within each maximal run of equal parts of lam.

    >>> rev_lambda((2, 2, 1, 1, 1), (3, 1, 5, 2, 4))
    (1, 3, 4, 2, 5)
    """
    lam = tuple(lam)
    rho = tuple(rho)
    if len(lam) != len(rho):
        raise ValueError(f"length mismatch: {lam} vs {rho}")
    out = list(rho)
    for a, b in equal_part_runs(lam):
        out[a:b] = reversed(out[a:b])
    return tuple(out)


def is_dominant_wrt(rho: Sequence[int], p: Tabloid, q: Tabloid) -> bool:
    """
    True iff rho - s_{P,Q} is weakly increasing inside every equal-part run,
    i.e. the triple (P, Q, rho) lies in the image of the forward map.
    """
    if p.shape() != q.shape():
        raise ValueError(f"shape mismatch: {p.shape()} vs {q.shape()}")
    rho = tuple(rho)
    if len(rho) != len(p.rows):
        raise ValueError(f"rho length {len(rho)} != number of rows {len(p.rows)}")
    s = offset_constants(p, q)
    diff = [r - c for r, c in zip(rho, s)]
    return all(
        diff[i] <= diff[i + 1] for a, b in equal_part_runs(p.shape()) for i in range(a, b - 1)
    )


def canonical_tabloid(lam: Sequence[int], n: Optional[int] = None) -> Tabloid:
    """
    The reverse-row superstandard tabloid: rows are filled bottom-up with
    consecutive integers starting at 1.

    >>> canonical_tabloid((4, 3, 1)).rows
    ((5, 6, 7, 8), (2, 3, 4), (1,))
    """
    lam = check_partition(lam, n)
    rows: list[tuple[int, ...]] = []
    start = 1
    for part in reversed(lam):
        rows.append(tuple(range(start, start + part)))
        start += part
    return Tabloid(sum(lam), tuple(reversed(rows)))


def anticanonical_tabloid(lam: Sequence[int], n: Optional[int] = None) -> Tabloid:
    """
    The column superstandard tabloid: columns are filled left to right, each
    top to bottom.

    >>> anticanonical_tabloid((4, 3, 1)).rows
    ((1, 4, 6, 8), (2, 5, 7), (3,))
    """
    lam = check_partition(lam, n)
    conj = conjugate_partition(lam)
    offsets = [0]
    for c in conj:
        offsets.append(offsets[-1] + c)
    rows = tuple(
        tuple(offsets[j] + i + 1 for j in range(lam[i])) for i in range(len(lam))
    )
    return Tabloid(sum(lam), rows)


def omega_tabloid(t: Tabloid) -> Tabloid:
    """Shift every residue by one (n wraps to 1), keeping rows sorted."""
    return Tabloid(t.n, tuple(tuple(sorted(x % t.n + 1 for x in row)) for row in t.rows))


def omega_rows(rows: Rows, n: int) -> Rows:
    return tuple(tuple(sorted(x % n + 1 for x in row)) for row in rows)


_STAR_CACHE: dict = {}


def star_tabloid(t: Tabloid, i: int) -> Optional[Tabloid]:
    """
    The tabloid side of the Knuth move at residue i: the swap of residues i
    and i+1 (cyclically), defined exactly when every Knuth-admissible window
    swap at positions (i, i+1) inside the left cell labeled by t lands in the
    left cell labeled by the swapped tabloid.  Returns None when undefined
    (in particular whenever i and i+1 share a row, or n < 3).

    Decided by probing the cell along the diagonal: the words psi(t, t, rho)
    over small dominant altitude vectors realize every admissibility pattern;
    results are cached per (tabloid, residue).
    """
    n = t.n
    if n < 3:
        return None
    i = residue(i, n)
    hit = _probe_cached(n, t.rows, i)
    if hit is None or _probe_cached(n, hit, i) != t.rows:
        return None
    return Tabloid(n, hit)


def _probe_cached(n: int, rows: Rows, i: int) -> Optional[Rows]:
    key = (n, rows, i)
    if key not in _STAR_CACHE:
        _STAR_CACHE[key] = _star_probe(Tabloid(n, rows), i)
    return _STAR_CACHE[key]


def _star_probe(t: Tabloid, i: int) -> Optional[Rows]:
    from .cells import star_right  # deferred: cells builds on this module
    from .matrixball import _phi_win, _psi_rows

    n = t.n
    j = i % n + 1
    idx = _row_index(t.rows)
    if idx[i] == idx[j]:
        return None
    swapped = tuple(
        tuple(sorted(j if x == i else i if x == j else x for x in row)) for row in t.rows
    )
    from .affine import AffinePerm

    images = set()
    for rho in _probe_altitudes(t.shape()):
        w = AffinePerm(n, _psi_rows(t.rows, t.rows, rho, n))
        ws = star_right(w, i)
        if ws is None:
            continue
        images.add(_phi_win(ws.window, n)[1])
        if len(images) > 1:
            return None
    return swapped if images == {swapped} else None


def _probe_altitudes(lam: tuple[int, ...]) -> list[tuple[int, ...]]:
    out = []
    for rho in itertools.product((-1, 0, 1), repeat=len(lam)):
        if all(
            rho[k] <= rho[k + 1] for a, b in equal_part_runs(lam) for k in range(a, b - 1)
        ):
            out.append(rho)
    return out


def iota_vec(t: Tabloid, i: int) -> RowVector:
    """The indicator of the row containing residue i."""
    r = t.row_of(residue(i, t.n))
    return tuple(1 if j == r else 0 for j in range(1, len(t.rows) + 1))


def delta_vec(t: Tabloid, i: int) -> RowVector:
    """
    Zero if the row of residue i continues an equal-part run from above;
    otherwise the indicator of that row's whole equal-part run.
    """
    lam = t.shape()
    r = t.row_of(residue(i, t.n))
    if r >= 2 and lam[r - 2] == lam[r - 1]:
        return tuple(0 for _ in lam)
    return tuple(1 if part == lam[r - 1] else 0 for part in lam)


def enumerate_tabloids(lam: Sequence[int], n: Optional[int] = None) -> Iterator[Tabloid]:
    """
    All row-standard tabloids of shape lam, in a fixed lexicographic order.
    The count is the multinomial n! / (lam_1! lam_2! ...).

    >>> sum(1 for _ in enumerate_tabloids((2, 1)))
    3
    """
    lam = check_partition(lam, n)
    total = sum(lam)

    def rec(remaining: tuple[int, ...], parts: tuple[int, ...]) -> Iterator[Rows]:
        if not parts:
            yield ()
            return
        for row in itertools.combinations(remaining, parts[0]):
            rest = tuple(x for x in remaining if x not in row)
            for tail in rec(rest, parts[1:]):
                yield (row,) + tail

    for rows in rec(tuple(range(1, total + 1)), lam):
        yield Tabloid(total, rows)


def count_tabloids(lam: Sequence[int]) -> int:
    """n! / (lam_1! lam_2! ...)."""
    lam = check_partition(lam)
    out = 1
    seen = 0
    for part in lam:
        seen += part
        out *= math.comb(seen, part)
    return out


# --- text formats ------------------------------------------------------------


def format_tabloid(t: Tabloid) -> str:
    """Nested-bracket rows, e.g. "[[2,4,6],[3,7,8],[1,5,9]]"."""
    return json.dumps([list(r) for r in t.rows], separators=(",", ":"))


def parse_tabloid(text: str, n: Optional[int] = None) -> Tabloid:
    """
    Parse nested-bracket rows back into a tabloid.

    >>> parse_tabloid("[[2,4,6],[3,7,8],[1,5,9]]").shape()
    (3, 3, 3)
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"bad tabloid text {text!r}: {e}") from None
    return tabloid_from_lists(data, n)


def tabloid_from_lists(data, n: Optional[int] = None) -> Tabloid:
    if not isinstance(data, list) or not all(
        isinstance(row, list) and all(isinstance(x, int) for x in row) for row in data
    ):
        raise ValueError(f"tabloid must be a list of integer rows: {data!r}")
    size = sum(len(row) for row in data)
    if n is not None and size != n:
        raise ValueError(f"tabloid holds {size} residues, expected {n}")
    return Tabloid(size, tuple(tuple(sorted(row)) for row in data))


def format_shape(lam: Sequence[int]) -> str:
    return ",".join(str(p) for p in lam)


def parse_shape(text: str) -> tuple[int, ...]:
    """Parse a comma list like "4,3,1" into a partition."""
    try:
        lam = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValueError(f"bad shape {text!r}") from None
    return check_partition(lam)
