import itertools
import random

import pytest

from ambc.affine import (
    AffinePerm,
    compose,
    conjugate_by_shift,
    descents_right,
    finite_permutations,
    identity,
    inverse,
    longest_parabolic,
    parse_window,
    partitions,
    shift,
)
from ambc.cells import (
    CellLabel,
    cell_label,
    cell_shape,
    distinguished_involutions,
    is_distinguished,
    left_cell,
    right_cell,
    star_left,
    star_right,
    xi_epsilon,
)
from ambc.matrixball import phi, psi
from ambc.tabloids import (
    Tabloid,
    anticanonical_tabloid,
    canonical_tabloid,
    count_tabloids,
    enumerate_tabloids,
    star_tabloid,
)

from conftest import dominant_diffs, random_cell_element


class TestCellShape:
    def test_identity(self):
        assert cell_shape(identity(6)) == (6,)

    def test_parabolic_longest(self):
        for lam, n in [((2, 2, 1), 5), ((3, 1), 4), ((4, 3, 1), 8)]:
            assert cell_shape(longest_parabolic(lam, n)) == lam

    def test_min_coset_example(self):
        assert cell_shape(parse_window("[-9,-8,-7,9,10,11,36]")) == (3, 3, 1)

    def test_left_right_labels(self, golden9):
        w = AffinePerm(9, golden9["w"])
        assert left_cell(w) == golden9["q"]
        assert right_cell(w) == golden9["p"]
        lab = cell_label(w, "left")
        assert lab == CellLabel("left", (3, 3, 3), golden9["q"])
        assert cell_label(w, "two_sided") == CellLabel("two_sided", (3, 3, 3))

    def test_celllabel_validation(self):
        with pytest.raises(ValueError):
            CellLabel("up", (2, 1))
        with pytest.raises(ValueError):
            CellLabel("two_sided", (2, 1), canonical_tabloid((2, 1)))
        with pytest.raises(ValueError):
            CellLabel("left", (3,), canonical_tabloid((2, 1)))


class TestStarOperations:
    def test_golden(self):
        w = parse_window("[-1,3,10,-5,14,-3,18,7,2]")
        ws = star_right(w, 9)
        assert ws == parse_window("[-7,3,10,-5,14,-3,18,7,8]")
        assert star_right(ws, 9) == w
        t = phi(ws)
        assert t.p.rows == ((2, 4, 6), (3, 7, 8), (1, 5, 9))
        assert t.q == star_tabloid(phi(w).q, 9)
        assert t.rho == (0, 0, 0)

    def test_identity_undefined(self):
        for i in range(1, 6):
            assert star_right(identity(5), i) is None
            assert star_left(identity(5), i) is None

    def test_small_period_undefined(self):
        assert star_right(shift(2), 1) is None

    def test_involution_where_defined(self):
        rng = random.Random(6)
        for _ in range(50):
            n = rng.randint(3, 7)
            lam = rng.choice(list(partitions(n)))
            w, _, _ = random_cell_element(rng, lam)
            for i in range(1, n + 1):
                ws = star_right(w, i)
                if ws is not None:
                    assert star_right(ws, i) == w
                sw = star_left(w, i)
                if sw is not None:
                    assert star_left(sw, i) == w

    def test_left_right_inverse_symmetry(self):
        rng = random.Random(7)
        for _ in range(30):
            n = rng.randint(3, 6)
            lam = rng.choice(list(partitions(n)))
            w, _, _ = random_cell_element(rng, lam)
            for i in range(1, n + 1):
                sw = star_left(w, i)
                ws = star_right(inverse(w), i)
                assert (sw is None) == (ws is None)
                if sw is not None:
                    assert sw == inverse(ws)


class TestDistinguished:
    def test_golden(self):
        assert is_distinguished(parse_window("[-3,5,3,7,2,10,4,8,9]"))

    def test_shift_not_distinguished(self):
        assert not is_distinguished(shift(5))

    def test_finite_involutions(self):
        # inside the finite symmetric group, distinguished = involution
        for n in (2, 3, 4):
            for w in finite_permutations(n):
                assert is_distinguished(w) == (inverse(w) == w)

    def test_enumeration_counts_and_involutivity(self):
        for n in range(1, 6):
            for lam in partitions(n):
                invs = distinguished_involutions(lam, n)
                assert len(invs) == count_tabloids(lam)
                assert len(set(invs)) == len(invs)
                for w in invs:
                    assert inverse(w) == w
                    assert is_distinguished(w)

    def test_single_column_contains_longest(self):
        n = 4
        invs = distinguished_involutions((1,) * n, n)
        assert AffinePerm(n, tuple(range(n, 0, -1))) in invs

    def test_single_row_is_identity(self):
        assert distinguished_involutions((5,), 5) == [identity(5)]

    def test_closure_under_star_and_shift(self):
        # conjugating a distinguished involution by the shift, or applying a
        # two-sided star at one residue, stays distinguished
        rng = random.Random(9)
        for n in (3, 4, 5, 6):
            for lam in partitions(n):
                tabs = list(enumerate_tabloids(lam))
                sample = tabs if len(tabs) <= 8 else rng.sample(tabs, 8)
                for t in sample:
                    w = psi(t, t, (0,) * len(lam))
                    assert is_distinguished(conjugate_by_shift(w))
                    for i in range(1, n + 1):
                        ws = star_right(w, i)
                        if ws is None:
                            continue
                        both = star_left(ws, i)
                        if both is not None:
                            assert is_distinguished(both)


class TestCanonicalCellFacts:
    def test_right_descents_inside_n(self):
        # members of the canonical left cell keep right descents inside {n}
        rng = random.Random(10)
        for n in (3, 4, 5):
            for lam in partitions(n):
                can = canonical_tabloid(lam)
                tabs = list(enumerate_tabloids(lam))
                for _ in range(6):
                    w, _, _ = random_cell_element(rng, lam, tabs, None, can)
                    assert descents_right(w) <= {n}

    def test_left_cell_partition(self):
        # sharing a left cell label is sharing the Q-tabloid
        rng = random.Random(11)
        lam = (2, 1)
        tabs = list(enumerate_tabloids(lam))
        cells = {}
        for _ in range(30):
            w, _, q = random_cell_element(rng, lam, tabs)
            cells.setdefault(q, set()).add(w)
        for q, elems in cells.items():
            for w in elems:
                assert left_cell(w) == q


class TestXiEpsilon:
    def test_longest_parabolic_zero(self):
        for lam, n in [((2, 2, 1), 5), ((3, 3), 6), ((4, 1), 5)]:
            assert xi_epsilon(longest_parabolic(lam, n)) == (0,) * len(lam)

    def test_shift_powers(self):
        for n, d in [(4, 3), (5, -2), (3, 0)]:
            assert xi_epsilon(shift(n, d)) == (d,)

    def test_rejects_off_diagonal(self, golden9):
        with pytest.raises(ValueError):
            xi_epsilon(AffinePerm(9, golden9["w"]))

    def test_matches_stream_families(self):
        from ambc.oracles import epsilon_from_families
        from ambc.tabloids import rev_lambda

        rng = random.Random(13)
        for n in (3, 4, 5, 6):
            for lam in partitions(n):
                anti = anticanonical_tabloid(lam)
                for diff in rng.sample(dominant_diffs(lam), min(4, len(dominant_diffs(lam)))):
                    w = psi(anti, anti, diff)
                    assert xi_epsilon(w) == rev_lambda(lam, diff)
                    assert epsilon_from_families(w) == xi_epsilon(w)
