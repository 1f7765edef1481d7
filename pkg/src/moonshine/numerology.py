"""Discrete claims about the monster: its order, Ogg's primes, McKay's decompositions
and the affine Dynkin marks behind the 2A-involution products.

Diagram data (Cartan matrices, node names, folding partitions) is read from
``data/diagrams.json``.  Marks are always recomputed from the kernel of the
Cartan matrix.
"""

from __future__ import annotations

import json
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from importlib import resources
from math import gcd, prod

from .report import Stopwatch, VerificationReport, compare_pairs, merge

__all__ = [
    "AffineDiagram",
    "MonsterData",
    "affine_marks",
    "binary_group_dims_check",
    "diagram",
    "fold_check",
    "involution_product_check",
    "kernel_basis",
    "mckay_decomposition",
    "mckay_check",
    "monster_order_check",
    "ogg_primes_check",
]

MONSTER_ORDER_DIGITS = "8080,17424,79451,28758,86459,90496,17107,57005,75436,80000,00000"
MONSTER_ORDER_FACTORS = {2: 46, 3: 20, 5: 9, 7: 6, 11: 2, 13: 3, 17: 1, 19: 1, 23: 1, 29: 1, 31: 1, 41: 1, 47: 1, 59: 1, 71: 1}
OGG_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 47, 59, 71)
MONSTER_DIMS = (1, 196883, 21296876)

# orders of products of two 2A involutions, as printed
INVOLUTION_ORDERS = {
    "monster": ("E8", (1, 2, 3, 4, 5, 6, 2, 3, 4)),
    "baby": ("F4", (2, 4, 3, 2, 1)),
    "fi24": ("G2", (2, 3, 1)),
}

# printed binary polyhedral dimension lists with group orders; E8 reuses the monster list
BINARY_GROUP_DIMS = {
    "E6": ("binary tetrahedral", (1, 1, 1, 2, 2, 2, 3), 24),
    "E7": ("binary octahedral", (1, 1, 2, 2, 3, 3, 4, 2), 48),
    "E8": ("binary icosahedral", (1, 2, 3, 4, 5, 6, 2, 3, 4), 120),
}


@dataclass(frozen=True)
class MonsterData:
    order_prime_powers: dict[int, int] = field(default_factory=lambda: dict(MONSTER_ORDER_FACTORS))
    order_digits: str = MONSTER_ORDER_DIGITS
    irrep_dims: tuple[int, ...] = MONSTER_DIMS

    def __post_init__(self) -> None:
        if tuple(self.irrep_dims[:3]) != MONSTER_DIMS:
            raise ValueError("irreducible dimensions must start 1, 196883, 21296876")


@dataclass(frozen=True)
class AffineDiagram:
    name: str
    cartan: tuple[tuple[int, ...], ...]
    node_names: tuple[str, ...]
    folding_pairs: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self) -> None:
        A = self.cartan
        n = len(A)
        if any(len(row) != n for row in A) or len(self.node_names) != n:
            raise ValueError(f"{self.name}: Cartan matrix must be square with one name per node")
        for i in range(n):
            if A[i][i] != 2:
                raise ValueError(f"{self.name}: diagonal entry ({i},{i}) is {A[i][i]}, not 2")
            for j in range(n):
                if i != j and (A[i][j] > 0 or (A[i][j] == 0) != (A[j][i] == 0)):
                    raise ValueError(f"{self.name}: entries ({i},{j}), ({j},{i}) violate the generalized Cartan pattern")
        rank = len(kernel_basis(A))
        if rank != 1:
            raise ValueError(f"{self.name}: kernel has rank {rank}, an affine diagram has rank 1")


def kernel_basis(matrix: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Basis of the rational right kernel by exact Gauss-Jordan elimination."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    n_cols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][col]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def affine_marks(d: AffineDiagram) -> tuple[int, ...]:
    """The primitive positive integer vector spanning ker(cartan)."""
    basis = kernel_basis(d.cartan)
    if len(basis) != 1:
        raise ValueError(f"{d.name}: kernel has rank {len(basis)}, an affine diagram has rank 1")
    (v,) = basis
    denom = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in v), 1)
    ints = [int(x * denom) for x in v]
    g = reduce(gcd, ints)
    ints = [x // g for x in ints]
    if all(x < 0 for x in ints):
        ints = [-x for x in ints]
    if not all(x > 0 for x in ints):
        raise ValueError(f"{d.name}: kernel vector {ints} is not positive")
    return tuple(ints)


@lru_cache(maxsize=None)
def _diagram_data() -> dict:
    return json.loads(resources.files("moonshine").joinpath("data/diagrams.json").read_text())


def diagram(name: str) -> AffineDiagram:
    data = _diagram_data()["diagrams"]
    if name not in data:
        raise ValueError(f"unknown diagram {name!r}; known: {', '.join(sorted(data))}")
    entry = data[name]
    return AffineDiagram(name, tuple(tuple(r) for r in entry["cartan"]), tuple(entry["node_names"]))


def _multiset_pairs(computed: Sequence[int], printed: Sequence[int]):
    a, b = Counter(computed), Counter(printed)
    for value in sorted(set(a) | set(b)):
        yield value, a[value], b[value]


def monster_order_check(factors: dict[int, int] | None = None) -> VerificationReport:
    watch = Stopwatch()
    factors = MONSTER_ORDER_FACTORS if factors is None else factors
    product = prod(p**e for p, e in factors.items())
    printed = int(MONSTER_ORDER_DIGITS.replace(",", ""))
    pairs = [(0, product, printed), (1, len(str(product)), len(str(printed)))]
    return compare_pairs("monster-order", "prime-power product vs printed digits", pairs, watch)


def _small_prime_divisors(n: int, bound: int = 1000) -> tuple[list[int], int]:
    """Primes below ``bound`` dividing n, and the cofactor left after removing them."""
    out = []
    for p in range(2, bound):
        if n == 1:
            break
        if n % p == 0 and all(p % d for d in range(2, int(p**0.5) + 1)):
            out.append(p)
            while n % p == 0:
                n //= p
    return out, n


def ogg_primes_check() -> VerificationReport:
    """Prime divisors of the printed monster order against Ogg's list."""
    watch = Stopwatch()
    order = int(MONSTER_ORDER_DIGITS.replace(",", ""))
    primes, cofactor = _small_prime_divisors(order)
    found = set(primes)
    pairs = [((p,), p in found, p in OGG_PRIMES) for p in sorted(found | set(OGG_PRIMES))]
    pairs.append(((0,), cofactor, 1))
    return compare_pairs("ogg-primes", "prime divisors of |M|", pairs, watch)


def mckay_decomposition(value: int, dims: Sequence[int] = MONSTER_DIMS) -> list[tuple[int, ...]]:
    """Every tuple a >= 0 with sum a_i dims_i = value, in lexicographic order."""
    dims = list(dims)
    if not dims:
        raise ValueError("dims must be nonempty")
    if any(d <= 0 for d in dims) or dims != sorted(dims):
        raise ValueError("dims must be positive and ascending")
    if value < 0:
        return []
    out: list[tuple[int, ...]] = []
    k = len(dims)
    coeffs = [0] * k

    def search(i: int, remaining: int) -> None:
        if i == 0:
            if remaining % dims[0] == 0:
                coeffs[0] = remaining // dims[0]
                out.append(tuple(coeffs))
            return
        for a in range(remaining // dims[i] + 1):
            coeffs[i] = a
            search(i - 1, remaining - a * dims[i])
        coeffs[i] = 0

    search(k - 1, value)
    out.sort()
    return out


def mckay_check() -> VerificationReport:
    """1 = 1, 196884 = 196883 + 1, 21493760 = 21296876 + 196883 + 1."""
    watch = Stopwatch()
    pairs = []
    for value, expected in ((1, (1, 0, 0)), (196884, (1, 1, 0)), (21493760, (1, 1, 1))):
        pairs.append(((value,), expected in mckay_decomposition(value), True))
    pairs.append(((1, 0), mckay_decomposition(1), [(1, 0, 0)]))
    return compare_pairs("mckay", "dims 1, 196883, 21296876", pairs, watch)


def involution_product_check(group_label: str) -> VerificationReport:
    """Printed class orders against the affine marks, compared as multisets."""
    if group_label not in INVOLUTION_ORDERS:
        raise ValueError(f"unknown group {group_label!r}; known: {', '.join(INVOLUTION_ORDERS)}")
    watch = Stopwatch()
    name, printed = INVOLUTION_ORDERS[group_label]
    marks = affine_marks(diagram(name))
    return compare_pairs(f"dynkin-{group_label}", f"affine {name} marks", _multiset_pairs(marks, printed), watch)


def binary_group_dims_check(name: str) -> VerificationReport:
    """Affine marks against the printed binary polyhedral dimensions, with sum d^2 = |G|."""
    if name not in BINARY_GROUP_DIMS:
        raise ValueError(f"unknown diagram {name!r}; known: {', '.join(BINARY_GROUP_DIMS)}")
    watch = Stopwatch()
    group, dims, order = BINARY_GROUP_DIMS[name]
    marks = affine_marks(diagram(name))
    pairs = [((v,), a, b) for v, a, b in _multiset_pairs(marks, dims)]
    # at = (-1,) and (-2,): sum of squared dimensions, then of squared marks
    pairs.append(((-1,), sum(d * d for d in dims), order))
    pairs.append(((-2,), sum(m * m for m in marks), order))
    return compare_pairs(f"binary-dims-{name}", f"affine {name} vs {group} group", pairs, watch)


def binary_dims_check() -> VerificationReport:
    return merge([binary_group_dims_check(n) for n in BINARY_GROUP_DIMS], "binary-dims", "E6, E7, E8")


def fold(source: AffineDiagram, groups: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Folded matrix: entry (I, J) sums cartan[i][j] over j in J for a representative i of I."""
    return tuple(tuple(sum(source.cartan[g[0]][j] for j in h) for h in groups) for g in groups)


def fold_check(cover: str, groups: Sequence[Sequence[int]] | None = None) -> VerificationReport:
    """Group the source marks by the folding partition and compare with the target.

    Checks that each group has equal marks, that the group values are the
    target marks node by node, and that the folded Cartan matrix is the target's.
    """
    folds = _diagram_data()["folds"]
    if cover not in folds:
        raise ValueError(f"unknown fold {cover!r}; known: {', '.join(folds)}")
    watch = Stopwatch()
    record = folds[cover]
    source = diagram(record["source"])
    target = diagram(record["target"])
    groups = record["groups"] if groups is None else groups
    marks = affine_marks(source)
    pairs = []
    for gi, g in enumerate(groups):
        for i in g[1:]:
            pairs.append(((gi, i), marks[i], marks[g[0]]))
    grouped = tuple(marks[g[0]] for g in groups)
    target_marks = affine_marks(target)
    pairs.append(((-1, len(grouped)), len(grouped), len(target_marks)))
    for k, (a, b) in enumerate(zip(grouped, target_marks)):
        pairs.append(((-1, k), a, b))
    if len(groups) == len(target.cartan):
        folded = fold(source, groups)
        for i in range(len(groups)):
            for j in range(len(groups)):
                pairs.append(((-2, i, j), folded[i][j], target.cartan[i][j]))
    window = f"affine {record['source']} -> affine {record['target']}"
    return compare_pairs(cover, window, pairs, watch)


def fold_marks(source: AffineDiagram, groups: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Representative mark of each group; raises if a group mixes marks."""
    marks = affine_marks(source)
    out = []
    for g in groups:
        values = {marks[i] for i in g}
        if len(values) != 1:
            raise ValueError(f"group {list(g)} mixes marks {sorted(values)}")
        out.append(marks[g[0]])
    return tuple(out)


NUMEROLOGY_CHECKS = {
    "monster-order": monster_order_check,
    "ogg-primes": ogg_primes_check,
    "mckay": mckay_check,
    "dynkin-monster": lambda: involution_product_check("monster"),
    "dynkin-baby": lambda: involution_product_check("baby"),
    "dynkin-fi24": lambda: involution_product_check("fi24"),
    "binary-dims": binary_dims_check,
    "fold-e7": lambda: fold_check("fold-e7"),
    "fold-e6": lambda: fold_check("fold-e6"),
}
