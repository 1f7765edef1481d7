"""Named identity checks and the default full run."""

from __future__ import annotations

from collections.abc import Callable

from . import modular
from .cm163 import exp_digits_check, factorization_check, residual_check
from .denominator import TripleProductWindow, triple_product_lhs, verify_triple_product
from .hauptmodul import mckay_thompson
from .numerology import NUMEROLOGY_CHECKS
from .replication import KnzWindow, extract_exponents, knz_product, verify_c4_relation, verify_knz
from .report import Stopwatch, VerificationReport, compare_pairs, merge
from .series import LaurentSeries, mul

J_PRINTED = {-1: 1, 0: 744, 1: 196884, 2: 21493760, 3: 864299970, 4: 20245856256}
E4_PRINTED = {0: 1, 1: 240, 2: 2160}
DELTA_PRINTED = {1: 1, 2: -24, 3: 252}
T2B_PRINTED = {-1: 1, 0: 0, 1: 276, 2: -2048}
T2A_PRINTED = {-1: 1, 0: 0, 1: 4372, 2: 96256}


def pentagonal_euler(order: int) -> list[int]:
    """prod (1 - q^n) below q^order from sum_k (-1)^k q^(k(3k-1)/2)."""
    out = [0] * order
    k = 0
    while True:
        hit = False
        for j in ({k, -k} if k else {0}):
            e = j * (3 * j - 1) // 2
            if e < order:
                out[e] += -1 if j % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return out


def _naive_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i in range(n):
        for j in range(n - i):
            out[i + j] += a[i] * b[j]
    return out


def check_head(identity: str, series: LaurentSeries, printed: dict[int, int]) -> VerificationReport:
    watch = Stopwatch()
    pairs = [(e, series.coefficient_at(e), v) for e, v in sorted(printed.items())]
    window = f"q^{min(printed)}..q^{max(printed)}"
    return compare_pairs(identity, window, pairs, watch)


def j_head() -> VerificationReport:
    return check_head("j-head", modular.j_series(5), J_PRINTED)


def e4_head() -> VerificationReport:
    return check_head("e4-head", modular.eisenstein_e4(3), E4_PRINTED)


def delta_head() -> VerificationReport:
    return check_head("delta-head", modular.delta_series(4), DELTA_PRINTED)


def euler_pentagonal(order: int = 200) -> VerificationReport:
    watch = Stopwatch()
    series = modular.eta_power(1, order).product_part
    oracle = pentagonal_euler(order)
    pairs = [(k, series.coefficient_at(k), oracle[k]) for k in range(order)]
    return compare_pairs("euler-pentagonal", f"q^0..q^{order - 1}", pairs, watch)


def delta_oracle(order: int = 50) -> VerificationReport:
    """Delta against q times the 24th power of the pentagonal series."""
    watch = Stopwatch()
    delta = modular.delta_series(order)
    base = pentagonal_euler(order - 1)
    power = [1] + [0] * (order - 2)
    for _ in range(24):
        power = _naive_mul(power, base, order - 1)
    pairs = [(k, delta.coefficient_at(k), power[k - 1] if k >= 1 else 0) for k in range(order)]
    return compare_pairs("delta-oracle", f"q^0..q^{order - 1}", pairs, watch)


def j_definition(order: int = 200) -> VerificationReport:
    """j * Delta = E4^3 on the common window."""
    watch = Stopwatch()
    j = modular.j_series(order)
    lhs = mul(j, modular.delta_series(order + 1))
    e4 = modular.eisenstein_e4(order)
    rhs = mul(mul(e4, e4), e4)
    top = min(lhs.order, rhs.order)
    pairs = [(k, lhs.coefficient_at(k), rhs.coefficient_at(k)) for k in range(0, top)]
    return compare_pairs("j-definition", f"q^0..q^{top - 1}", pairs, watch)


def eta_additivity(order: int = 100, span: int = 5) -> VerificationReport:
    """eta^a eta^b = eta^(a+b) for -span <= a, b <= span."""
    watch = Stopwatch()
    parts = {m: modular.eta_power(m, order).product_part for m in range(-2 * span, 2 * span + 1)}

    def pairs():
        for a in range(-span, span + 1):
            for b in range(-span, span + 1):
                prod_ = mul(parts[a], parts[b])
                for k in range(order):
                    yield (a, b, k), prod_.coefficient_at(k), parts[a + b].coefficient_at(k)

    return compare_pairs("eta-additivity", f"|a|,|b| <= {span}, q^0..q^{order - 1}", pairs(), watch)


def hauptmodul_heads() -> VerificationReport:
    watch = Stopwatch()
    t2b = mckay_thompson("2B", 3).expansion
    t2a = mckay_thompson("2A", 3).expansion
    t1a = mckay_thompson("1A", 2).expansion
    pairs = [((2, e), t2b.coefficient_at(e), v) for e, v in T2B_PRINTED.items()]
    pairs += [((1, e), t2a.coefficient_at(e), v) for e, v in T2A_PRINTED.items()]
    pairs += [((0, 1), t1a.coefficient_at(1), 196884), ((0, 0), t1a.coefficient_at(0), 0)]
    pairs += [((-1, e), t2a.coefficient_at(e) - t2b.coefficient_at(e), v) for e, v in ((1, 4096), (2, 98304))]
    return compare_pairs("hauptmodul", "T_1A, T_2A, T_2B heads", pairs, watch)


def knz_extraction(p_order: int = 6, q_order: int = 6) -> VerificationReport:
    """Exponents read back from the product side are c(mn) and depend only on mn."""
    watch = Stopwatch()
    window = KnzWindow(p_order, q_order)
    wide = KnzWindow(p_order, q_order + p_order)
    table = extract_exponents(knz_product(wide), window)
    c = modular.j_minus_744(p_order * q_order + 1)
    pairs = [
        ((m, n), table.exponent((m, n)), c.coefficient_at(m * n) if m * n >= -1 else 0)
        for m in range(1, p_order)
        for n in range(-1, q_order)
    ]
    return compare_pairs("knz-extraction", f"1<=m<{p_order}, -1<=n<{q_order}", pairs, watch)


def triple_z1(order: int = 50) -> VerificationReport:
    """z = 1 in the product side equals prod (1 - q^2n)(1 - q^(2n-1))^2."""
    watch = Stopwatch()
    window = TripleProductWindow(order, max(1, int(order**0.5) + 1))
    lhs = triple_product_lhs(window)
    summed = [sum(lhs.coefficient_at(z, k) for z in range(-window.z_range, window.z_range + 1)) for k in range(order)]
    direct = [1] + [0] * (order - 1)
    for n in range(1, order):
        factors = [2 * n] + ([2 * n - 1, 2 * n - 1] if 2 * n - 1 < order else [])
        for f in factors:
            if f >= order:
                continue
            direct = [direct[k] - (direct[k - f] if k >= f else 0) for k in range(order)]
    pairs = [(k, summed[k], direct[k]) for k in range(order)]
    return compare_pairs("triple-product-z1", f"q^0..q^{order - 1}", pairs, watch)


IDENTITIES: dict[str, Callable[..., VerificationReport]] = {
    "j-head": j_head,
    "e4-head": e4_head,
    "delta-head": delta_head,
    "delta-oracle": delta_oracle,
    "euler-pentagonal": euler_pentagonal,
    "j-definition": j_definition,
    "eta-additivity": eta_additivity,
    "hauptmodul": hauptmodul_heads,
    "knz": lambda p_order=8, q_order=8: verify_knz(KnzWindow(p_order, q_order)),
    "knz-extraction": knz_extraction,
    "c4-relation": verify_c4_relation,
    "triple-product": lambda order=50, z_range=8: verify_triple_product(TripleProductWindow(order, z_range)),
    "triple-product-z1": triple_z1,
}


def default_checks(digits: int = 35) -> list[tuple[str, Callable[[], VerificationReport]]]:
    checks = [(name, fn) for name, fn in IDENTITIES.items()]
    checks += [
        ("cm163-exp", lambda: exp_digits_check(digits)[0]),
        ("cm163-j", lambda: residual_check(digits)[0]),
        ("cm163-factorization", factorization_check),
    ]
    checks += list(NUMEROLOGY_CHECKS.items())
    return checks


def run_suite(digits: int = 35) -> tuple[list[VerificationReport], VerificationReport]:
    reports = [fn() for _, fn in default_checks(digits)]
    return reports, merge(reports, "all")
