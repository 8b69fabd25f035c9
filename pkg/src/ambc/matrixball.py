"""
The affine matrix-ball construction: streams, channels, numberings, zigzags,
and the forward and backward maps between affine permutations and triples
(P, Q, rho).

Geometry conventions (matrix coordinates): a ball (x, y) sits in row x
(growing southward) and column y (growing eastward).  (x1,y1) is strictly
northwest of (x2,y2) when x1 < x2 and y1 < y2.  A *stream* is a periodic
chain of balls in the northwest order; its *density* is the number of balls
per period and its *altitude* is the sum of ceil(y/n) - 1 over one period of
window representatives.  A *channel* of a partial permutation is a
maximum-density substream; among these the *southwest channel* is the unique
one every other channel dominates from the northeast.

The forward step numbers the balls by longest reverse paths out of the
southwest channel, groups equal labels into zigzags, and replaces each
zigzag by its outer corner-posts, emitting one stream ball per zigzag.  The
backward step inverts this against a prescribed compatible stream.  Iterating
gives the forward map ``phi`` (permutation to dominant triple) and the
backward map ``psi`` (triple to permutation).

Anchoring conventions (the results below are anchor-independent, but the
intermediate numberings are not): a channel or stream ball with the smallest
window x gets label 1, and the backward decrement loop scans candidate balls
in increasing window x.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .affine import AffinePerm, InvariantError, PartialPerm, _ceil_div
from .tabloids import Rows, Tabloid, is_dominant_wrt

Win = tuple  # window tuple with int or None entries

_CHANNEL_ENUM_CAP = 500_000
_BK_ITERATION_CAP = 1_000_000


# --- streams -----------------------------------------------------------------


@dataclass(frozen=True)
class Stream:
    """
    A periodic chain of balls, stored as its window representatives
    ((x1,y1),...,(xd,yd)) with 1 <= x1 < ... < xd <= n.

    >>> Stream(3, ((1, 2), (3, 4))).altitude()
    1
    """

    n: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        if not self.pairs:
            raise ValueError("a stream has at least one ball per period")
        xs = [x for x, _ in self.pairs]
        ys = [y for _, y in self.pairs]
        if not all(1 <= x <= self.n for x in xs) or sorted(set(xs)) != xs:
            raise ValueError(f"stream window positions must be distinct in 1..{self.n}: {xs}")
        if any(a >= b for a, b in zip(ys, ys[1:])) or ys[-1] - ys[0] >= self.n:
            raise ValueError(f"stream windows must form a chain: {self.pairs}")
        if len(set(y % self.n for y in ys)) != len(ys):
            raise ValueError(f"stream values clash modulo {self.n}: {ys}")

    def domain(self) -> tuple[int, ...]:
        return tuple(x for x, _ in self.pairs)

    def codomain(self) -> tuple[int, ...]:
        return tuple(sorted((y - 1) % self.n + 1 for _, y in self.pairs))

    def density(self) -> int:
        return len(self.pairs)

    def altitude(self) -> int:
        return sum(_ceil_div(y, self.n) - 1 for _, y in self.pairs)

    def as_partial(self) -> PartialPerm:
        win: list[Optional[int]] = [None] * self.n
        for x, y in self.pairs:
            win[x - 1] = y
        return PartialPerm(self.n, tuple(win))


def make_stream(domain: Sequence[int], codomain: Sequence[int], altitude: int, n: int) -> Stream:
    """
    The unique stream mapping the residue classes of ``domain`` onto those of
    ``codomain`` with the given altitude.

    >>> make_stream((1, 2, 3), (1, 2, 3), 2, 3).pairs
    ((1, 3), (2, 4), (3, 5))
    """
    a = tuple(sorted(domain))
    b = tuple(sorted(codomain))
    if not a or len(a) != len(b):
        raise ValueError(f"domain and codomain must be nonempty and equal-sized: {a} vs {b}")
    if not all(1 <= x <= n for x in a + b):
        raise ValueError(f"residues must lie in 1..{n}: {a}, {b}")
    if len(set(a)) != len(a) or len(set(b)) != len(b):
        raise ValueError(f"residues must be distinct: {a}, {b}")
    d = len(a)
    pairs = []
    for i in range(d):
        q, r = divmod(i + altitude, d)
        pairs.append((a[i], b[r] + n * q))
    return Stream(n, tuple(pairs))


def _win_of_pairs(pairs, n: int) -> Win:
    win: list[Optional[int]] = [None] * n
    for x, y in pairs:
        q = (x - 1) // n
        xx, yy = x - q * n, y - q * n
        if win[xx - 1] is not None:
            raise InvariantError(f"window position {xx} produced twice: {pairs}")
        win[xx - 1] = yy
    return tuple(win)


# --- channels ----------------------------------------------------------------


def _max_density(win: Win, n: int) -> int:
    """Maximum density of a substream: the longest increasing run of window
    balls whose total rise stays below n."""
    dom = [i + 1 for i, v in enumerate(win) if v is not None]
    best = 0
    for a in dom:
        cap = win[a - 1] + n
        # longest increasing subsequence starting at a, values below cap
        length = {a: 1}
        for b in dom:
            if b <= a or win[b - 1] >= cap or win[b - 1] <= win[a - 1]:
                continue
            length[b] = 1 + max(
                (length[c] for c in length if c < b and win[c - 1] < win[b - 1]), default=0
            )
        best = max(best, max(length.values()))
    return best


def _anchored_chains(win: Win, n: int, anchor: int, target: int):
    """All maximal chains of the given length whose window part starts at
    ``anchor``; chain condition: positions and values increase, and the last
    value stays below win[anchor-1] + n."""
    cap = win[anchor - 1] + n
    dom = [i + 1 for i, v in enumerate(win) if v is not None]
    succs: dict[int, list[int]] = {}
    nodes = [b for b in dom if b == anchor or (b > anchor and win[anchor - 1] < win[b - 1] < cap)]
    for b in nodes:
        succs[b] = [c for c in nodes if c > b and win[c - 1] > win[b - 1]]
    # longest chain from each node, for pruning
    longest: dict[int, int] = {}
    for b in reversed(nodes):
        longest[b] = 1 + max((longest[c] for c in succs[b]), default=0)
    if longest.get(anchor, 0) != target:
        return
    stack = [(anchor, (anchor,))]
    while stack:
        b, chain = stack.pop()
        if len(chain) == target:
            yield chain
            continue
        for c in succs[b]:
            if longest[c] == target - len(chain):
                stack.append((c, chain + (c,)))


def _all_channels(win: Win, n: int) -> list[tuple[int, ...]]:
    """All maximum-density substreams, each as its tuple of window positions."""
    if all(v is None for v in win):
        raise ValueError("empty permutation has no channels")
    d = _max_density(win, n)
    out = []
    for anchor in (i + 1 for i, v in enumerate(win) if v is not None):
        for chain in _anchored_chains(win, n, anchor, d):
            out.append(chain)
            if len(out) > _CHANNEL_ENUM_CAP:
                raise InvariantError("channel enumeration exploded; input too adversarial")
    return out


def _dominates_from_ne(win: Win, n: int, c_positions, other) -> bool:
    # every ball of c has a ball of other weakly to its northeast
    for x in c_positions:
        wx = win[x - 1]
        if not any(
            _ceil_div(wx - win[c - 1], n) <= (x - c) // n for c in other
        ):
            return False
    return True


def _southwest_channel(win: Win, n: int) -> tuple[int, ...]:
    chans = _all_channels(win, n)
    if len(chans) == 1:
        return chans[0]
    sw = [c for c in chans if all(_dominates_from_ne(win, n, c, o) for o in chans if o != c)]
    if len(sw) != 1:
        raise InvariantError(f"expected a unique southwest channel, found {len(sw)}")
    return sw[0]


# --- numberings ---------------------------------------------------------------


@dataclass(frozen=True)
class Numbering:
    """
    A periodic integer labeling of the balls of a partial permutation:
    the ball over window position x carries ``labels[x]``, and translating a
    ball by (n, n) adds ``step``.
    """

    n: int
    step: int
    labels: tuple[tuple[int, int], ...]  # (window position, label), ascending

    def label(self, ball: tuple[int, int]) -> int:
        x, _ = ball
        q, r = divmod(x - 1, self.n)
        table = dict(self.labels)
        if r + 1 not in table:
            raise ValueError(f"no ball over position {r + 1}")
        return table[r + 1] + q * self.step


def _channel_labels(win: Win, n: int, channel: tuple[int, ...]) -> dict[int, int]:
    """Longest-path numbering out of the channel's proper numbering (the
    channel ball with the smallest window x is anchored at 1)."""
    dom = [i + 1 for i, v in enumerate(win) if v is not None]
    d = len(channel)
    base = {x: i + 1 for i, x in enumerate(sorted(channel))}
    labels = {x: base.get(x, None) for x in dom}
    # seed non-channel balls from any channel ball strictly northwest of them
    for x in dom:
        if labels[x] is None:
            wx = win[x - 1]
            seed = None
            for c in sorted(channel):
                k = min((x - c - 1) // n, (wx - win[c - 1] - 1) // n)
                v = base[c] + k * d + 1
                seed = v if seed is None else max(seed, v)
            labels[x] = seed
    # relax longest paths; translates of j strictly northwest of x give
    # labels[j] + k*d + 1 with the largest admissible k
    for _ in range(len(dom) + 2):
        changed = False
        for x in dom:
            wx = win[x - 1]
            for j in dom:
                k = min((x - j - 1) // n, (wx - win[j - 1] - 1) // n)
                cand = labels[j] + k * d + 1
                if cand > labels[x]:
                    labels[x] = cand
                    changed = True
        if not changed:
            break
    else:
        raise InvariantError("channel numbering failed to stabilize")
    for x in channel:
        if labels[x] != base[x]:
            raise InvariantError("channel numbering moved a channel ball")
    return labels


def channel_numbering(w: PartialPerm, channel: Stream) -> Numbering:
    """The numbering of the balls of w induced by a channel of w."""
    chan = channel.domain()
    if set(chan) - set(w.domain()) or any(w.window[x - 1] != y for x, y in channel.pairs):
        raise ValueError("the given stream is not a substream of w")
    if channel.density() != _max_density(w.window, w.n):
        raise ValueError("the given stream is not a channel (density not maximal)")
    labels = _channel_labels(w.window, w.n, chan)
    return Numbering(w.n, channel.density(), tuple(sorted(labels.items())))


def channels(w: PartialPerm) -> tuple[Stream, ...]:
    """All maximum-density substreams of w."""
    out = []
    for chain in _all_channels(w.window, w.n):
        out.append(Stream(w.n, tuple((x, w.window[x - 1]) for x in sorted(chain))))
    return tuple(sorted(out, key=lambda s: s.pairs))


def southwest_channel(w: PartialPerm) -> Stream:
    """The unique channel all other channels dominate from the northeast."""
    chain = _southwest_channel(w.window, w.n)
    return Stream(w.n, tuple((x, w.window[x - 1]) for x in sorted(chain)))


# --- forward step -------------------------------------------------------------


def _forward_zigzags(win: Win, n: int):
    """Zigzags of the forward step: a list of ball lists, one per label class,
    each sorted by x descending (values then ascend)."""
    channel = _southwest_channel(win, n)
    d = len(channel)
    labels = _channel_labels(win, n, channel)
    zigzags = []
    for m in range(d):
        balls = []
        for x, g in labels.items():
            k, rem = divmod(m - g, d)
            if rem:
                continue
            balls.append((x + k * n, win[x - 1] + k * n))
        balls.sort(reverse=True)
        if balls and any(balls[i][1] >= balls[i + 1][1] for i in range(len(balls) - 1)):
            raise InvariantError(f"zigzag balls out of order: {balls}")
        if balls:
            zigzags.append(balls)
    return zigzags


def _forward_win(win: Win, n: int) -> tuple[Win, tuple[tuple[int, int], ...]]:
    new_pairs = []
    stream_pairs = []
    for balls in _forward_zigzags(win, n):
        xs = [x for x, _ in balls]
        ys = [y for _, y in balls]
        new_pairs.extend((xs[i], ys[i + 1]) for i in range(len(balls) - 1))
        stream_pairs.append((xs[-1], ys[0]))
    return _win_of_pairs(new_pairs, n), tuple(sorted(_normalize_pairs(stream_pairs, n)))


def _normalize_pairs(pairs, n: int):
    out = []
    for x, y in pairs:
        q = (x - 1) // n
        out.append((x - q * n, y - q * n))
    return out


def forward_step(w: PartialPerm) -> tuple[PartialPerm, Stream]:
    """
    One forward step: replace every zigzag by its outer corner-posts and
    collect one stream ball per zigzag.  The stream's density equals the
    channel density of w.
    """
    if not w.domain():
        raise ValueError("forward step of an empty permutation")
    new_win, spairs = _forward_win(w.window, w.n)
    return PartialPerm(w.n, new_win), Stream(w.n, spairs)


@dataclass(frozen=True)
class DomTriple:
    """The image (P, Q, rho) of an affine permutation under the forward map."""

    p: Tabloid
    q: Tabloid
    rho: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(self.rho))
        if self.p.shape() != self.q.shape():
            raise ValueError(f"shape mismatch: {self.p.shape()} vs {self.q.shape()}")
        if len(self.rho) != len(self.p.rows):
            raise ValueError(f"rho length {len(self.rho)} != rows {len(self.p.rows)}")

    def shape(self) -> tuple[int, ...]:
        return self.p.shape()


def _phi_win(win: Win, n: int) -> tuple[Rows, Rows, tuple[int, ...]]:
    p_rows: list[tuple[int, ...]] = []
    q_rows: list[tuple[int, ...]] = []
    rho: list[int] = []
    cur = win
    for _ in range(n + 1):
        if all(v is None for v in cur):
            return tuple(p_rows), tuple(q_rows), tuple(rho)
        cur, spairs = _forward_win(cur, n)
        # P records the value side of each stream, Q the position side; the
        # descent law L(w) = tau(P(w)) and the worked examples pin this.
        p_rows.append(tuple(sorted((y - 1) % n + 1 for _, y in spairs)))
        q_rows.append(tuple(x for x, _ in spairs))
        rho.append(sum(_ceil_div(y, n) - 1 for _, y in spairs))
    raise InvariantError("forward iteration did not terminate within n steps")


def phi(w: AffinePerm) -> DomTriple:
    """
    The forward map w -> (P, Q, rho): iterate forward steps, reading off the
    stream domains (rows of P), codomains (rows of Q) and altitudes (rho).

    >>> phi(AffinePerm(3, (1, 2, 3))).rho
    (0,)
    """
    p_rows, q_rows, rho = _phi_win(w.window, w.n)
    triple = DomTriple(Tabloid(w.n, p_rows), Tabloid(w.n, q_rows), rho)
    if not is_dominant_wrt(rho, triple.p, triple.q):
        raise InvariantError(f"forward map left the dominant image: {triple}")
    return triple


# --- backward step ------------------------------------------------------------


def _bk_initial(win: Win, n: int, spairs) -> dict[int, int]:
    d = len(spairs)
    labels = {}
    for i, v in enumerate(win):
        if v is None:
            continue
        x = i + 1
        best = None
        for j, (sx, sy) in enumerate(spairs, start=1):
            k = min((x - sx - 1) // n, (v - sy - 1) // n)
            cand = j + k * d
            best = cand if best is None else max(best, cand)
        labels[x] = best
    return labels


def _settle_lists(xs: list, vs: list, lab: list, n: int, d: int) -> None:
    """Decrement loop on parallel position/value/label lists (in place) until
    the numbering is monotone along strict northwest order; candidates are
    scanned in increasing window x."""
    m = len(xs)
    for _ in range(_BK_ITERATION_CAP):
        pick = -1
        for t in range(m):
            x = xs[t]
            v = vs[t]
            lt = lab[t]
            # (i) some ball strictly southeast has a label <= ours
            viol = False
            for u in range(m):
                k1 = (x - xs[u]) // n + 1
                k2 = (v - vs[u]) // n + 1
                if lab[u] + (k1 if k1 > k2 else k2) * d <= lt:
                    viol = True
                    break
            if not viol:
                continue
            # (ii) every ball strictly northwest has a strictly smaller label
            ok = True
            for u in range(m):
                k1 = -((xs[u] - x) // n) - 1
                k2 = -((vs[u] - v) // n) - 1
                if lab[u] + (k1 if k1 < k2 else k2) * d >= lt:
                    ok = False
                    break
            if ok:
                pick = t
                break
        if pick < 0:
            return
        lab[pick] -= 1
    raise InvariantError("backward numbering failed to stabilize")


def _bk_settle(win: Win, n: int, d: int, labels: dict[int, int]) -> dict[int, int]:
    xs = sorted(labels)
    vs = [win[x - 1] for x in xs]
    lab = [labels[x] for x in xs]
    _settle_lists(xs, vs, lab, n, d)
    return dict(zip(xs, lab))


def backward_numbering(w: PartialPerm, s: Stream) -> Numbering:
    """
    The stabilized backward numbering of the balls of w against a compatible
    stream (the stream ball with the smallest window x is anchored at 1).
    """
    _check_compatible(w, s)
    labels = _bk_initial(w.window, w.n, s.pairs)
    labels = _bk_settle(w.window, w.n, s.density(), labels)
    return Numbering(w.n, s.density(), tuple(sorted(labels.items())))


def _check_compatible(w: PartialPerm, s: Stream) -> None:
    if w.n != s.n:
        raise ValueError(f"period mismatch: {w.n} != {s.n}")
    if set(w.domain()) & set(s.domain()):
        raise ValueError("stream and permutation domains overlap")
    if set(w.codomain_residues()) & set(s.codomain()):
        raise ValueError("stream and permutation values overlap modulo n")
    if w.domain() and s.density() < _max_density(w.window, w.n):
        raise ValueError("stream density below a substream of w: not compatible")


def _bk_win(win: Win, n: int, spairs) -> Win:
    d = len(spairs)
    xs: list[int] = []
    vs: list[int] = []
    for i, v in enumerate(win):
        if v is not None:
            xs.append(i + 1)
            vs.append(v)
    if not xs:
        return _win_of_pairs(spairs, n)
    m = len(xs)
    lab = [0] * m
    for t in range(m):
        x = xs[t]
        v = vs[t]
        best = None
        for j in range(d):
            sx, sy = spairs[j]
            k1 = (x - sx - 1) // n
            k2 = (v - sy - 1) // n
            cand = j + 1 + (k1 if k1 < k2 else k2) * d
            if best is None or cand > best:
                best = cand
        lab[t] = best
    _settle_lists(xs, vs, lab, n, d)
    out: list = [None] * n
    for j in range(d):
        sx, sy = spairs[j]
        target = j + 1
        balls = []
        for t in range(m):
            k, rem = divmod(target - lab[t], d)
            if not rem:
                balls.append((xs[t] + k * n, vs[t] + k * n))
        if not balls:
            _place(out, n, sx, sy)
            continue
        balls.sort(reverse=True)
        ys = [y for _, y in balls]
        if any(a >= b for a, b in zip(ys, ys[1:])):
            raise InvariantError(f"backward zigzag balls out of order: {balls}")
        _place(out, n, balls[0][0], sy)
        for t in range(len(balls) - 1):
            _place(out, n, balls[t + 1][0], ys[t])
        _place(out, n, sx, ys[-1])
    return tuple(out)


def _place(out: list, n: int, x: int, y: int) -> None:
    q = (x - 1) // n
    r = x - q * n - 1
    if out[r] is not None:
        raise InvariantError(f"window position {r + 1} produced twice")
    out[r] = y - q * n


def backward_step(w: PartialPerm, s: Stream) -> PartialPerm:
    """
    One backward step against a compatible stream: rebuild the zigzags whose
    outer corner-posts are the balls of w and whose back corner-posts are the
    stream balls, and return their inner corner-posts.
    """
    _check_compatible(w, s)
    return PartialPerm(w.n, _bk_win(w.window, w.n, s.pairs))


# Shared memo of backward-map prefixes.  Entries are immutable and the fill
# is idempotent, so plain GIL-atomic dict operations are safe for concurrent
# readers with racing writers (a duplicate fill writes an equal value).
_PSI_CACHE: dict = {}
_PSI_CACHE_CAP = 1 << 21


def psi_cache_clear() -> None:
    """Drop memoized backward-map prefixes (they grow during bulk sweeps)."""
    _PSI_CACHE.clear()
    _stream_pairs_for.cache_clear()


@lru_cache(maxsize=300000)
def _stream_pairs_for(domain: tuple, codomain: tuple, altitude: int, n: int):
    d = len(domain)
    pairs = []
    for i in range(d):
        q, r = divmod(i + altitude, d)
        pairs.append((domain[i], codomain[r] + n * q))
    return tuple(pairs)


def _psi_suffix(items: tuple, n: int) -> Win:
    """Backward steps over ``items``, a bottom-up tuple of (q_row, p_row,
    altitude) row data; prefixes are shared across calls via a cache."""
    if not items:
        return (None,) * n
    key = (n, items)
    hit = _PSI_CACHE.get(key)
    if hit is not None:
        return hit
    q_row, p_row, alt = items[-1]
    win = _bk_win(_psi_suffix(items[:-1], n), n, _stream_pairs_for(q_row, p_row, alt, n))
    if len(_PSI_CACHE) < _PSI_CACHE_CAP:
        _PSI_CACHE[key] = win
    return win


def _psi_rows(p_rows: Rows, q_rows: Rows, rho: Sequence[int], n: int) -> Win:
    sizes = tuple(len(r) for r in p_rows)
    if sizes != tuple(len(r) for r in q_rows) or len(rho) != len(sizes):
        raise ValueError("triple components must share one shape")
    if any(a < b for a, b in zip(sizes, sizes[1:])) or (sizes and sizes[-1] < 1):
        raise ValueError(f"row sizes must be weakly decreasing: {sizes}")
    items = tuple(
        (tuple(q_row), tuple(p_row), alt)
        for q_row, p_row, alt in zip(reversed(q_rows), reversed(p_rows), reversed(tuple(rho)))
    )
    return _psi_suffix(items, n)


def psi(p: Tabloid, q: Tabloid, rho: Sequence[int]) -> AffinePerm:
    """
    The backward map (P, Q, rho) -> w: feed the streams prescribed by the
    rows and altitudes through backward steps, innermost row first.

    >>> from .tabloids import canonical_tabloid
    >>> t = canonical_tabloid((3,))
    >>> psi(t, t, (1,)).window
    (2, 3, 4)
    """
    if p.n != q.n or p.shape() != q.shape():
        raise ValueError("P and Q must be tabloids of one shape")
    win = _psi_rows(p.rows, q.rows, tuple(rho), p.n)
    if any(v is None for v in win):
        raise InvariantError("backward map produced holes from a full tabloid pair")
    return AffinePerm(p.n, win)


def psi_triple(t: DomTriple) -> AffinePerm:
    return psi(t.p, t.q, t.rho)


# --- triple text format -------------------------------------------------------


def format_triple(t: DomTriple) -> str:
    import json

    return json.dumps(
        {"p": [list(r) for r in t.p.rows], "q": [list(r) for r in t.q.rows], "rho": list(t.rho)},
        separators=(",", ":"),
    )


def parse_triple(text: str, n: Optional[int] = None) -> DomTriple:
    """Parse the JSON triple format {"p": rows, "q": rows, "rho": [ints]}."""
    import json

    from .tabloids import tabloid_from_lists

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"bad triple text: {e}") from None
    if not isinstance(data, dict) or set(data) != {"p", "q", "rho"}:
        raise ValueError('triple must be an object with keys "p", "q", "rho"')
    if not isinstance(data["rho"], list) or not all(isinstance(x, int) for x in data["rho"]):
        raise ValueError('"rho" must be a list of integers')
    return DomTriple(
        tabloid_from_lists(data["p"], n), tabloid_from_lists(data["q"], n), tuple(data["rho"])
    )
