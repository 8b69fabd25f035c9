import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ambc.affine import AffinePerm, PartialPerm, format_window, inverse, parse_window, partitions
from ambc.matrixball import (
    DomTriple,
    Stream,
    _bk_win,
    _forward_win,
    _forward_zigzags,
    _phi_win,
    _psi_rows,
    _settle_lists,
    backward_numbering,
    backward_step,
    channel_numbering,
    channels,
    format_triple,
    forward_step,
    make_stream,
    parse_triple,
    phi,
    psi,
    psi_triple,
    southwest_channel,
)
from ambc.tabloids import (
    Tabloid,
    canonical_tabloid,
    enumerate_tabloids,
    offset_constants,
    rev_lambda,
)

from conftest import dominant_diffs


class TestStreams:
    def test_validation(self):
        with pytest.raises(ValueError):
            Stream(3, ())
        with pytest.raises(ValueError):
            Stream(3, ((1, 2), (2, 1)))  # values not increasing
        with pytest.raises(ValueError):
            Stream(3, ((1, 1), (2, 5)))  # rise of n within one period

    def test_make_stream_shift(self):
        for n, s in [(5, 0), (5, 3), (4, -2), (3, 7)]:
            st_ = make_stream(range(1, n + 1), range(1, n + 1), s, n)
            assert st_.pairs == tuple((i, i + s) for i in range(1, n + 1))

    @settings(max_examples=80, deadline=None)
    @given(st.data())
    def test_altitude_roundtrip(self, data):
        n = data.draw(st.integers(1, 8))
        d = data.draw(st.integers(1, n))
        a = tuple(sorted(data.draw(st.sets(st.integers(1, n), min_size=d, max_size=d))))
        b = tuple(sorted(data.draw(st.sets(st.integers(1, n), min_size=d, max_size=d))))
        alt = data.draw(st.integers(-7, 7))
        s = make_stream(a, b, alt, n)
        assert s.altitude() == alt
        assert s.domain() == a
        assert s.codomain() == b
        assert s.density() == d

    def test_make_stream_errors(self):
        with pytest.raises(ValueError):
            make_stream((), (), 0, 3)
        with pytest.raises(ValueError):
            make_stream((1,), (1, 2), 0, 3)


class TestChannels:
    def test_identity_single_channel(self):
        w = AffinePerm(5, (1, 2, 3, 4, 5))
        ch = channels(w)
        assert len(ch) == 1 and ch[0].density() == 5
        assert southwest_channel(w) == ch[0]

    def test_longest_element_channels(self):
        n = 5
        w = AffinePerm(n, tuple(range(n, 0, -1)))
        ch = channels(w)
        assert len(ch) == n and all(c.density() == 1 for c in ch)
        # the southwest channel passes through the ball (n, 1)
        assert southwest_channel(w).pairs == ((n, 1),)

    def test_golden_density(self, golden9):
        w = AffinePerm(9, golden9["w"])
        assert southwest_channel(w).density() == 3

    def test_golden_southwest(self, golden9):
        w = AffinePerm(9, golden9["w"])
        assert southwest_channel(w).pairs == ((4, 2), (6, 4), (9, 6))

    def test_empty_input(self):
        with pytest.raises(ValueError):
            channels(PartialPerm(3, (None, None, None)))

    def test_density_equals_first_part(self):
        from ambc.oracles import _random_affine_perm

        rng = random.Random(14)
        for _ in range(40):
            w = _random_affine_perm(rng, rng.randint(1, 8))
            assert southwest_channel(w).density() == phi(w).shape()[0]


class TestChannelNumbering:
    def test_identity_labels(self):
        w = AffinePerm(4, (1, 2, 3, 4))
        num = channel_numbering(w, southwest_channel(w))
        assert dict(num.labels) == {1: 1, 2: 2, 3: 3, 4: 4}
        assert num.label((6, 6)) == 2 + num.step

    def test_longest_element_shares_one_label(self):
        n = 5
        w = AffinePerm(n, tuple(range(n, 0, -1)))
        # no reverse path of positive length joins distinct window balls
        balls = w.balls()
        for b1, b2 in itertools.permutations(balls, 2):
            assert not (b1[0] < b2[0] and b1[1] < b2[1])
        num = channel_numbering(w, southwest_channel(w))
        labels = {lab for _, lab in num.labels}
        assert len(labels) == 1

    def test_rejects_non_channel(self):
        w = AffinePerm(3, (1, 2, 3))
        with pytest.raises(ValueError):
            channel_numbering(w, make_stream((1,), (1,), 0, 3))


class TestForwardStep:
    def test_n16_golden(self):
        w = parse_window("[11,5,4,3,2,-9,13,10,9,8,1,15,12,22,14,16]")
        out, stream = forward_step(w)
        assert format_window(out) == "[_,11,5,4,3,-8,_,13,10,9,2,_,15,_,22,_]"
        assert stream.density() == 5

    def test_identity(self):
        w = AffinePerm(4, (1, 2, 3, 4))
        out, stream = forward_step(w)
        assert out.domain() == ()
        assert stream.pairs == tuple((i, i) for i in range(1, 5))
        assert stream.altitude() == 0

    def test_terminates_in_row_count_steps(self, golden9):
        w = AffinePerm(9, golden9["w"])
        cur: PartialPerm = w
        steps = 0
        while cur.domain():
            cur, _ = forward_step(cur)
            steps += 1
        assert steps == len(golden9["p"].rows)

    def test_empty_input(self):
        with pytest.raises(ValueError):
            forward_step(PartialPerm(2, (None, None)))


class TestPhi:
    def test_golden(self, golden9):
        t = phi(AffinePerm(9, golden9["w"]))
        assert (t.p, t.q, t.rho) == (golden9["p"], golden9["q"], golden9["rho"])

    def test_identity(self):
        t = phi(AffinePerm(4, (1, 2, 3, 4)))
        assert t.p.rows == ((1, 2, 3, 4),) and t.q.rows == ((1, 2, 3, 4),) and t.rho == (0,)

    def test_shifted_golden(self, golden9):
        t = phi(parse_window("[-1,3,10,-5,14,-3,18,7,2]"))
        assert (t.p, t.q, t.rho) == (golden9["p"], golden9["q"], (0, -1, 1))

    def test_descent_law(self, golden9):
        from ambc.affine import descents
        from ambc.tabloids import tau

        w = AffinePerm(9, golden9["w"])
        left, right = descents(w)
        assert left == tau(golden9["p"]) and right == tau(golden9["q"])


class TestBackwardNumbering:
    def test_printed_example_n11(self):
        # stream over residues 8..11 with altitude 0 against the partial word;
        # labels are anchor-relative so compare differences
        w = PartialPerm(11, _psi_rows(((5, 6, 7), (2, 3, 4), (1,)),
                                      ((5, 6, 7), (2, 3, 4), (1,)), (0, 2, 0), 11))
        s = make_stream(range(8, 12), range(8, 12), 0, 11)
        num = backward_numbering(w, s)
        balls = {
            "A1": (7, 25), "A2": (6, 24), "A3": (5, 23), "B1": (4, 4),
            "C3": (13, 5), "C2": (14, 6), "C1": (23, 7),
        }
        expected = {"A1": -1, "A2": -2, "A3": -3, "B1": -4, "C1": -1, "C2": -2, "C3": -3}
        base = num.label(balls["A1"]) - expected["A1"]
        for name, ball in balls.items():
            assert num.label(ball) == expected[name] + base, name

    def test_printed_example_n15(self):
        w = PartialPerm(15, _psi_rows(((7, 8, 9, 10), (3, 4, 5, 6), (1, 2)),
                                      ((7, 8, 9, 10), (3, 4, 5, 6), (1, 2)), (0, 3, 0), 15))
        s = make_stream(range(11, 16), range(11, 16), 0, 15)
        num = backward_numbering(w, s)
        balls_a = {1: (10, 46), 2: (9, 34), 3: (8, 33), 4: (7, 32)}
        balls_c = {1: (32, 10), 2: (31, 9), 3: (19, 8), 4: (18, 7)}
        base = num.label(balls_a[1]) + 1
        for i in range(1, 5):
            assert num.label(balls_a[i]) == -i + base
            assert num.label(balls_c[i]) == -i + base
        assert num.label((6, 6)) == -5 + base
        assert num.label((5, 5)) == -6 + base

    def test_monotone_after_settle(self):
        rng = random.Random(12)
        for _ in range(30):
            n = rng.randint(2, 7)
            lam = rng.choice(list(partitions(n)))
            if len(lam) < 2:
                continue
            rows = list(enumerate_tabloids(lam))
            t = rng.choice(rows)
            rho = tuple(sorted(rng.randint(-2, 2) for _ in lam))
            w = psi(t, t, rho)
            partial, stream = forward_step(w)
            if not partial.domain():
                continue
            num = backward_numbering(partial, stream)
            labels = dict(num.labels)
            for (x1, l1), (x2, l2) in itertools.permutations(num.labels, 2):
                y1 = partial.window[x1 - 1]
                y2 = partial.window[x2 - 1]
                for k in range(-2, 3):
                    if x1 < x2 + k * n and y1 < y2 + k * n:
                        assert l1 < l2 + k * num.step

    def test_order_independence(self):
        # settling in a different candidate order reaches the same numbering
        rng = random.Random(3)
        for _ in range(40):
            n = rng.randint(2, 6)
            lam = rng.choice([l for l in partitions(n) if len(l) >= 2])
            t = rng.choice(list(enumerate_tabloids(lam)))
            rho = tuple(sorted(rng.randint(-2, 2) for _ in lam))
            w = psi(t, t, rho)
            partial, stream = forward_step(w)
            if not partial.domain():
                continue
            num = backward_numbering(partial, stream)

            xs = [x for x, _ in num.labels]
            vs = [partial.window[x - 1] for x in xs]
            d = stream.density()
            from ambc.matrixball import _bk_initial

            init = _bk_initial(partial.window, n, stream.pairs)
            # reversed scan order
            xs_r = list(reversed(xs))
            vs_r = list(reversed(vs))
            lab_r = [init[x] for x in xs_r]
            _settle_lists(xs_r, vs_r, lab_r, n, d)
            assert dict(zip(xs_r, lab_r)) == dict(num.labels)

    def test_incompatible_stream(self):
        w = PartialPerm(4, (1, None, None, None))
        with pytest.raises(ValueError):
            backward_numbering(w, make_stream((1,), (2,), 0, 4))  # domain overlap
        with pytest.raises(ValueError):
            backward_numbering(w, make_stream((2,), (1,), 0, 4))  # value overlap


class TestBackwardStep:
    def test_from_empty(self):
        s = make_stream(range(1, 5), range(1, 5), 3, 4)
        out = backward_step(PartialPerm(4, (None,) * 4), s)
        assert out.window == (4, 5, 6, 7)

    def test_forward_inverts(self, golden9):
        w = AffinePerm(9, golden9["w"])
        partial, stream = forward_step(w)
        assert backward_step(partial, stream) == PartialPerm(9, w.window)

    def test_zigzag_corner_post_rule(self):
        # inner posts of a zigzag with back (a0,b0) and outer (a1,b1)..(ar,br)
        # are (a0,b1), (a1,b2), ..., (a_{r-1},b_r), (a_r,b0)
        back = (0, 0)
        outer = [(10, 46), (20, 20), (32, 10)]
        win = [None] * 46
        n = 46  # wide period so nothing wraps
        for x, y in outer:
            win[x - 1] = y
        out = _bk_win(tuple(win), n, (back,))
        produced = {(i + 1, v) for i, v in enumerate(out) if v is not None}
        a = [back[0]] + [x for x, _ in sorted(outer)]
        b = [back[1]] + sorted((y for _, y in outer), reverse=True)
        expected = {(a[i], b[i + 1]) for i in range(len(outer))} | {(a[-1], b[0])}
        normalized = set()
        for x, y in expected:
            q = (x - 1) // n
            normalized.add((x - q * n, y - q * n))
        assert produced == normalized


class TestPsi:
    def test_golden(self, golden9):
        w = psi(golden9["p"], golden9["q"], golden9["rho"])
        assert w.window == golden9["w"]

    def test_distinguished_golden(self):
        t = Tabloid(9, ((2, 4, 6, 9), (3, 7, 8), (1, 5)))
        assert format_window(psi(t, t, (0, 0, 0))) == "[-3,5,3,7,2,10,4,8,9]"

    def test_canonical_golden(self):
        t = canonical_tabloid((2, 2, 1, 1, 1))
        assert format_window(psi(t, t, (0, 0, -1, 0, 1))) == "[-28,-8,-2,4,10,16,36]"

    def test_partial_words(self):
        rows = ((5, 6, 7), (2, 3, 4), (1,))
        win = _psi_rows(rows, rows, (0, 2, 0), 11)
        assert format_window(PartialPerm(11, win)) == "[-15,-6,-5,4,23,24,25,_,_,_,_]"
        rows = ((7, 8, 9, 10), (3, 4, 5, 6), (1, 2))
        win = _psi_rows(rows, rows, (0, 3, 0), 15)
        assert format_window(PartialPerm(15, win)) == "[-21,-20,-8,-7,5,6,32,33,34,46,_,_,_,_,_]"

    def test_bad_triple(self):
        with pytest.raises(ValueError):
            _psi_rows(((1, 2),), ((1,), (2,)), (0, 0), 2)
        with pytest.raises(ValueError):
            _psi_rows(((1,), (2, 3)), ((1,), (2, 3)), (0, 0), 3)


class TestRoundTrips:
    def test_exhaustive_small(self):
        # forward after backward is the identity on dominant triples, n <= 4
        for n in range(1, 5):
            for lam in partitions(n):
                tabs = list(enumerate_tabloids(lam))
                for p in tabs:
                    for q in tabs:
                        s = offset_constants(p, q)
                        for diff in dominant_diffs(lam, -1, 1):
                            rho = tuple(d + c for d, c in zip(diff, s))
                            w = psi(p, q, rho)
                            t = phi(w)
                            assert (t.p, t.q, t.rho) == (p, q, rho)

    def test_sampled_larger(self):
        rng = random.Random(0)
        from ambc.oracles import _random_affine_perm

        for _ in range(120):
            n = rng.randint(1, 9)
            w = _random_affine_perm(rng, n)
            assert psi_triple(phi(w)) == w

    def test_inverse_law(self):
        rng = random.Random(8)
        from conftest import random_cell_element

        for _ in range(60):
            n = rng.randint(2, 6)
            lam = rng.choice(list(partitions(n)))
            w, p, q = random_cell_element(rng, lam)
            t = phi(w)
            ti = phi(inverse(w))
            s_pq = offset_constants(p, q)
            s_qp = offset_constants(q, p)
            norm = tuple(r - c for r, c in zip(t.rho, s_pq))
            expected = tuple(c - r for r, c in zip(rev_lambda(lam, norm), s_qp))
            assert (ti.p, ti.q, ti.rho) == (q, p, expected)

    def test_nonextended_iff_zero_altitude_sum(self):
        from ambc.affine import is_nonextended
        from ambc.oracles import _random_affine_perm

        rng = random.Random(5)
        for _ in range(80):
            w = _random_affine_perm(rng, rng.randint(1, 8))
            assert is_nonextended(w) == (sum(phi(w).rho) == 0)


class TestTripleFormat:
    def test_roundtrip(self, golden9):
        t = DomTriple(golden9["p"], golden9["q"], golden9["rho"])
        text = format_triple(t)
        assert parse_triple(text) == t
        assert format_triple(parse_triple(text)) == text

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            parse_triple("{}")
        with pytest.raises(ValueError):
            parse_triple('{"p": [[1]], "q": [[1]], "rho": [0], "x": 1}')
        with pytest.raises(ValueError):
            parse_triple('{"p": [[1,2]], "q": [[1],[2]], "rho": [0]}')
