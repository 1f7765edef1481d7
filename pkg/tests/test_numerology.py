import random
from collections import Counter
from functools import reduce
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from moonshine import numerology as N
from moonshine.report import Status

NAMES = ["A1", "E6", "E7", "E8", "F4", "G2"]


def brute_force(value, dims=N.MONSTER_DIMS):
    d0, d1, d2 = dims
    out = []
    for c in range(value // d2 + 1):
        for b in range((value - c * d2) // d1 + 1):
            rest = value - c * d2 - b * d1
            if rest % d0 == 0:
                out.append((rest // d0, b, c))
    return sorted(out)


@pytest.mark.parametrize("name", NAMES)
def test_marks_are_primitive_kernel_vectors(name):
    d = N.diagram(name)
    marks = N.affine_marks(d)
    assert all(m > 0 for m in marks)
    assert reduce(gcd, marks) == 1
    for row in d.cartan:
        assert sum(a * m for a, m in zip(row, marks)) == 0


def test_mark_values():
    assert N.affine_marks(N.diagram("A1")) == (1, 1)
    assert Counter(N.affine_marks(N.diagram("E8"))) == Counter([1, 2, 2, 3, 3, 4, 4, 5, 6])
    assert Counter(N.affine_marks(N.diagram("F4"))) == Counter([1, 2, 2, 3, 4])
    assert N.affine_marks(N.diagram("E7")) == (1, 2, 3, 4, 3, 2, 1, 2)
    assert Counter(N.affine_marks(N.diagram("G2"))) == Counter([1, 2, 3])


def test_non_affine_rejected():
    with pytest.raises(ValueError):
        N.AffineDiagram("A2-finite", ((2, -1), (-1, 2)), ("a", "b"))
    with pytest.raises(ValueError):
        N.AffineDiagram("bad", ((2, 1), (-1, 2)), ("a", "b"))
    with pytest.raises(ValueError):
        N.diagram("H4")


def test_monster_order():
    assert N.monster_order_check().status is Status.VERIFIED
    assert len(N.MONSTER_ORDER_DIGITS.replace(",", "")) == 54
    factors = dict(N.MONSTER_ORDER_FACTORS)
    del factors[71]
    assert N.monster_order_check(factors).status is Status.FAILED


def test_ogg_primes():
    assert N.ogg_primes_check().status is Status.VERIFIED
    assert set(N.OGG_PRIMES) == set(N.MONSTER_ORDER_FACTORS)


def test_mckay_examples():
    assert (1, 1, 0) in N.mckay_decomposition(196884)
    assert (1, 1, 1) in N.mckay_decomposition(21493760)
    assert N.mckay_decomposition(1) == [(1, 0, 0)]
    assert len(N.mckay_decomposition(21493760)) == 112
    with pytest.raises(ValueError):
        N.mckay_decomposition(5, [])
    with pytest.raises(ValueError):
        N.mckay_decomposition(5, [3, 1])
    assert N.mckay_check().status is Status.VERIFIED


@pytest.mark.parametrize("value", [0, 1, 196883, 196884, 21296876, 21493760, 42790635])
def test_mckay_matches_brute_force(value):
    assert N.mckay_decomposition(value) == brute_force(value)


def test_mckay_matches_brute_force_random_large():
    rng = random.Random(163)
    for value in [rng.randrange(10**8) for _ in range(3)] + [10**8]:
        assert N.mckay_decomposition(value) == brute_force(value)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 3000), st.lists(st.integers(1, 60), min_size=3, max_size=3, unique=True))
def test_mckay_small_dims(value, dims):
    dims = sorted(dims)
    assert N.mckay_decomposition(value, dims) == brute_force(value, dims)


@pytest.mark.parametrize("label", ["monster", "baby", "fi24"])
def test_involution_products(label):
    assert N.involution_product_check(label).status is Status.VERIFIED


def test_binary_dims():
    for name, order in (("E6", 24), ("E7", 48), ("E8", 120)):
        r = N.binary_group_dims_check(name)
        assert r.status is Status.VERIFIED
        assert sum(m * m for m in N.affine_marks(N.diagram(name))) == order
    assert Counter(N.affine_marks(N.diagram("E6"))) == Counter([1, 1, 1, 2, 2, 2, 3])
    assert Counter(N.affine_marks(N.diagram("E7"))) == Counter([1, 1, 2, 2, 2, 3, 3, 4])


@pytest.mark.parametrize("cover", ["fold-e7", "fold-e6"])
def test_folds(cover):
    assert N.fold_check(cover).status is Status.VERIFIED


def test_fold_marks():
    e7, e6 = N.diagram("E7"), N.diagram("E6")
    assert N.fold_marks(e7, [[0, 6], [1, 5], [2, 4], [3], [7]]) == (1, 2, 3, 4, 2)
    assert N.fold_marks(e6, [[2, 4, 6], [1, 3, 5], [0]]) == (1, 2, 3)
    singletons = [[i] for i in range(8)]
    assert N.fold_marks(e7, singletons) == N.affine_marks(e7)
    with pytest.raises(ValueError, match="mixes"):
        N.fold_marks(e7, [[0, 1], [2, 3, 4, 5, 6, 7]])


def test_bad_fold_partition_fails():
    r = N.fold_check("fold-e7", [[0, 1], [6, 5], [2, 4], [3], [7]])
    assert r.status is Status.FAILED
    assert r.first_mismatch is not None


def test_registry():
    assert set(N.NUMEROLOGY_CHECKS) == {
        "monster-order", "ogg-primes", "mckay", "dynkin-monster", "dynkin-baby",
        "dynkin-fi24", "binary-dims", "fold-e7", "fold-e6",
    }
    for fn in N.NUMEROLOGY_CHECKS.values():
        assert fn().status is Status.VERIFIED
