"""Shared structures and independent brute-force helpers for the suite."""

import itertools
import random
from fractions import Fraction

import pytest

from cutplan import CutsetMatrix

# The five-component asymmetric demo used throughout the docs: C1..C4 carry
# redundancy, C5 is a single point of failure.
ASYMMETRIC_NAMES = ("C1", "C2", "C3", "C4", "C5")
ASYMMETRIC_SETS = ((0, 1), (1, 2), (0, 2, 3), (4,))


def names(m):
    return tuple("C%d" % (j + 1) for j in range(m))


def asymmetric_matrix():
    return CutsetMatrix.from_index_sets(ASYMMETRIC_NAMES, ASYMMETRIC_SETS)


def two_of_three_matrix():
    return CutsetMatrix.from_index_sets(names(3), [(0, 1), (0, 2), (1, 2)])


def series_matrix(m):
    return CutsetMatrix.from_index_sets(names(m), [(j,) for j in range(m)])


def voting_matrix(k_required, n):
    """System needing k of n components: cutsets are all (n-k+1)-subsets."""
    size = n - k_required + 1
    return CutsetMatrix.from_index_sets(
        names(n), itertools.combinations(range(n), size)
    )


def zero_column_matrix():
    """Three components, C3 in no cutset."""
    return CutsetMatrix.from_index_sets(names(3), [(0,), (1,)])


def random_coherent_matrix(rng: random.Random, max_m=5, max_draws=6):
    """Random minimal cutset family; coherent by construction."""
    while True:
        m = rng.randint(2, max_m)
        draws = rng.randint(1, max_draws)
        family = set()
        for _ in range(draws):
            size = rng.randint(1, m)
            family.add(frozenset(rng.sample(range(m), size)))
        minimal = {s for s in family if not any(o < s for o in family)}
        if minimal:
            ordered = sorted(tuple(sorted(s)) for s in minimal)
            return CutsetMatrix.from_index_sets(names(m), ordered)


def corpus():
    """Fixed spread of structures exercised by the property suites."""
    structures = [
        ("two_of_three", two_of_three_matrix()),
        ("asymmetric_five", asymmetric_matrix()),
        ("single_component", series_matrix(1)),
        ("series_three", series_matrix(3)),
        ("series_four", series_matrix(4)),
        ("parallel_pair", CutsetMatrix.from_index_sets(names(2), [(0, 1)])),
        ("vote_2_of_4", voting_matrix(2, 4)),
        ("vote_3_of_5", voting_matrix(3, 5)),
        ("zero_column", zero_column_matrix()),
    ]
    rng = random.Random(20240911)
    for i in range(6):
        structures.append(("random_%d" % i, random_coherent_matrix(rng)))
    return structures


@pytest.fixture(scope="session")
def corpus_structures():
    return corpus()


# ---------------------------------------------------------------------------
# Independent oracles (no shared code with the package internals they check).


def slow_n_zero(fractions):
    """Increment a candidate total until every scaled fraction is integer."""
    fractions = [Fraction(f) for f in fractions]
    k = 1
    while True:
        if all((k * f.numerator) % f.denominator == 0 for f in fractions):
            return k
        k += 1


def brute_force_minimal_hitting_sets(families, m):
    """All inclusion-minimal hitting sets by scanning every subset of 2^m."""
    hitting = [
        frozenset(s)
        for r in range(m + 1)
        for s in itertools.combinations(range(m), r)
        if all(set(s) & set(fam) for fam in families)
    ]
    return sorted(
        tuple(sorted(h))
        for h in hitting
        if not any(o < h for o in hitting)
    )


def plan_minimum(rows, allocation):
    """Direct evaluation of the minimum cutset test total."""
    return min(sum(v * n for v, n in zip(row, allocation)) for row in rows)
