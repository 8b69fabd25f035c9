import itertools
import random

import pytest

from ambc.affine import partitions
from ambc.tabloids import Tabloid, enumerate_tabloids, equal_part_runs, offset_constants


# The worked nine-residue example used as a golden fixture throughout.
@pytest.fixture(scope="session")
def golden9():
    return {
        "w": (3, 7, 14, 2, 18, 4, 19, 8, 6),
        "p": Tabloid(9, ((2, 4, 6), (3, 7, 8), (1, 5, 9))),
        "q": Tabloid(9, ((3, 5, 7), (1, 2, 8), (4, 6, 9))),
        "rho": (2, 0, 2),
        "s_pq": (0, -2, -1),
    }


def dominant_diffs(lam, lo=-2, hi=2):
    """Normalized altitude vectors: weakly increasing on equal-part runs."""
    out = []
    for diff in itertools.product(range(lo, hi + 1), repeat=len(lam)):
        if all(diff[k] <= diff[k + 1] for a, b in equal_part_runs(lam) for k in range(a, b - 1)):
            out.append(diff)
    return out


def random_cell_element(rng: random.Random, lam, tabs=None, p=None, q=None, spread=2):
    """A random element with prescribed cell data, via the backward map."""
    from ambc.matrixball import psi

    tabs = tabs if tabs is not None else list(enumerate_tabloids(lam))
    p = p if p is not None else rng.choice(tabs)
    q = q if q is not None else rng.choice(tabs)
    s = offset_constants(p, q)
    diff = []
    for a, b in equal_part_runs(lam):
        diff.extend(sorted(rng.randint(-spread, spread) for _ in range(b - a)))
    return psi(p, q, tuple(d + c for d, c in zip(diff, s))), p, q


def small_partitions(max_n):
    return [(n, lam) for n in range(1, max_n + 1) for lam in partitions(n)]
