"""Truncated Laurent series in one and two variables with exact integer coefficients.

A :class:`LaurentSeries` tracks the coefficients of ``q^valuation`` up to (but
excluding) ``q^order``.  Coefficients below the valuation are zero; coefficients
at or above the order are *unknown*.  Every operation propagates the order
pessimistically so an answer is never claimed beyond what the inputs determine.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from math import comb

__all__ = [
    "BiSeries",
    "ExponentTable",
    "LaurentSeries",
    "add",
    "bi_product_expansion",
    "coefficient_at",
    "int_pow",
    "invert",
    "mul",
    "product_expansion",
]


def _convolve(a: list[int] | tuple[int, ...], b: list[int] | tuple[int, ...], n: int) -> list[int]:
    """First ``n`` coefficients of the Cauchy product of ``a`` and ``b``."""
    out = [0] * n
    if len(a) > len(b):
        a, b = b, a
    for i, ai in enumerate(a[:n]):
        if not ai:
            continue
        lim = n - i
        for j, bj in enumerate(b[:lim]):
            if bj:
                out[i + j] += ai * bj
    return out


def signed_binomial(e: int, k: int) -> int:
    """Coefficient of x^k in (1 - x)^e for any integer e."""
    if e >= 0:
        c = comb(e, k)
    else:
        c = comb(-e + k - 1, k) * (-1) ** k
    return -c if k % 2 else c


@dataclass(frozen=True, eq=False)
class LaurentSeries:
    valuation: int
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.coefficients, tuple):
            object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if not self.coefficients:
            raise ValueError("a series must track at least one coefficient (order > valuation)")

    # -- construction -------------------------------------------------------

    @classmethod
    def from_list(cls, coefficients: Iterable[int], valuation: int = 0, order: int | None = None) -> LaurentSeries:
        """Build ``sum c_k q^(valuation+k) + O(q^order)``, zero padding up to ``order``."""
        coeffs = [int(c) for c in coefficients]
        if order is None:
            order = valuation + len(coeffs)
        n = order - valuation
        if n <= 0:
            raise ValueError(f"order {order} must exceed valuation {valuation}")
        coeffs = coeffs[:n] + [0] * (n - len(coeffs))
        return cls(valuation, tuple(coeffs))

    @classmethod
    def from_dict(cls, terms: Mapping[int, int], order: int) -> LaurentSeries:
        low = min([k for k, c in terms.items() if c] + [order - 1])
        coeffs = [0] * (order - low)
        for k, c in terms.items():
            if k < order:
                coeffs[k - low] += int(c)
        return cls(low, tuple(coeffs))

    @classmethod
    def monomial(cls, exponent: int, order: int, coefficient: int = 1) -> LaurentSeries:
        if order <= exponent:
            return cls.zero(order)
        return cls.from_list([coefficient], valuation=exponent, order=order)

    @classmethod
    def one(cls, order: int) -> LaurentSeries:
        return cls.monomial(0, order)

    @classmethod
    def zero(cls, order: int, valuation: int | None = None) -> LaurentSeries:
        v = order - 1 if valuation is None else valuation
        return cls.from_list([], valuation=v, order=order)

    # -- basic accessors ----------------------------------------------------

    @property
    def order(self) -> int:
        return self.valuation + len(self.coefficients)

    def coefficient_at(self, exponent: int) -> int:
        if exponent >= self.order:
            raise ValueError(f"coefficient of q^{exponent} is unknown: series is only known below q^{self.order}")
        if exponent < self.valuation:
            return 0
        return self.coefficients[exponent - self.valuation]

    __getitem__ = coefficient_at

    def leading_exponent(self) -> int | None:
        """Exponent of the first nonzero coefficient, or None for O(q^order)."""
        for k, c in enumerate(self.coefficients):
            if c:
                return self.valuation + k
        return None

    def leading_coefficient(self) -> int:
        lead = self.leading_exponent()
        return 0 if lead is None else self.coefficient_at(lead)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def terms(self) -> Iterator[tuple[int, int]]:
        """Yield ``(exponent, coefficient)`` for the nonzero tracked terms."""
        for k, c in enumerate(self.coefficients):
            if c:
                yield self.valuation + k, c

    def _effective_valuation(self) -> int:
        lead = self.leading_exponent()
        return self.order if lead is None else lead

    # -- structural operations ---------------------------------------------

    def truncate(self, order: int) -> LaurentSeries:
        """Forget everything at and above ``q^order`` (never extends knowledge)."""
        if order > self.order:
            raise ValueError(f"cannot truncate to q^{order}: series is only known below q^{self.order}")
        if order <= self.valuation:
            return LaurentSeries.zero(order)
        return LaurentSeries(self.valuation, self.coefficients[: order - self.valuation])

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by ``q^k``."""
        return LaurentSeries(self.valuation + k, self.coefficients)

    def dilate(self, d: int) -> LaurentSeries:
        """Substitute ``q -> q^d`` (d >= 1)."""
        if d < 1:
            raise ValueError("dilation factor must be positive")
        if d == 1:
            return self
        n = len(self.coefficients)
        coeffs = [0] * (n * d)
        coeffs[::d] = self.coefficients
        return LaurentSeries(self.valuation * d, tuple(coeffs))

    def scale(self, c: int) -> LaurentSeries:
        return LaurentSeries(self.valuation, tuple(c * x for x in self.coefficients))

    def with_coefficient(self, exponent: int, value: int) -> LaurentSeries:
        """Copy with one tracked coefficient replaced (handy for fault injection)."""
        if not self.valuation <= exponent < self.order:
            raise ValueError(f"q^{exponent} is outside the tracked window [{self.valuation}, {self.order})")
        coeffs = list(self.coefficients)
        coeffs[exponent - self.valuation] = int(value)
        return LaurentSeries(self.valuation, tuple(coeffs))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: LaurentSeries | int) -> LaurentSeries:
        if isinstance(other, int):
            other = LaurentSeries.monomial(0, self.order, other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> LaurentSeries:
        return self.scale(-1)

    def __sub__(self, other: LaurentSeries | int) -> LaurentSeries:
        if isinstance(other, int):
            return self + (-other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other: int) -> LaurentSeries:
        return (-self) + other

    def __mul__(self, other: LaurentSeries | int) -> LaurentSeries:
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentSeries:
        return int_pow(self, k)

    def __eq__(self, other: object) -> bool:
        """Equality on the common tracked window.

        Raises ValueError when the windows do not overlap, since nothing can be
        concluded from them.
        """
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        top = min(self.order, other.order)
        low = min(self.valuation, other.valuation)
        if top <= max(self.valuation, other.valuation):
            raise ValueError(
                f"cannot compare series with disjoint windows "
                f"[{self.valuation}, {self.order}) and [{other.valuation}, {other.order})"
            )
        return all(self.coefficient_at(k) == other.coefficient_at(k) for k in range(low, top))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LaurentSeries({self})"

    def __str__(self) -> str:
        parts: list[str] = []
        for e, c in self.terms():
            if e == 0:
                body = str(abs(c))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        tail = "O(1)" if self.order == 0 else ("O(q)" if self.order == 1 else f"O(q^{self.order})")
        parts.append(tail if not parts else "+ " + tail)
        return " ".join(parts)


def add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    order = min(a.order, b.order)
    low = min(a.valuation, b.valuation)
    if order <= low:
        return LaurentSeries.zero(order)
    coeffs = [0] * (order - low)
    for s in (a, b):
        if s.valuation >= order:
            continue
        off = s.valuation - low
        for k, c in enumerate(s.coefficients[: order - s.valuation]):
            coeffs[off + k] += c
    return LaurentSeries(low, tuple(coeffs))


def mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Cauchy product; known exactly up to ``min(a.order + v(b), b.order + v(a))``.

    ``v`` is the exponent of the first nonzero coefficient, which is at least the
    declared valuation, so this bound is never looser than the declared one.
    """
    order = min(a.order + b._effective_valuation(), b.order + a._effective_valuation())
    val = a.valuation + b.valuation
    n = order - val
    if n <= 0:
        return LaurentSeries.zero(order)
    return LaurentSeries(val, tuple(_convolve(a.coefficients, b.coefficients, n)))


def invert(a: LaurentSeries, target_order: int | None = None) -> LaurentSeries:
    """Reciprocal ``b`` with ``a * b = 1 + O(q^target_order)``.

    The leading coefficient must be +1 or -1.  ``target_order`` defaults to the
    best the input supports, ``a.order - v(a)``.
    """
    lead = a.leading_exponent()
    if lead is None:
        raise ValueError(f"cannot invert {a}: no nonzero coefficient is known")
    u = a.coefficient_at(lead)
    if u not in (1, -1):
        raise ValueError(f"cannot invert over the integers: leading coefficient {u} at q^{lead} is not a unit")
    best = a.order - lead
    if target_order is None:
        target_order = best
    if target_order > best:
        raise ValueError(f"target order {target_order} exceeds the precision of the input (at most {best})")
    n = target_order
    if n <= 0:
        raise ValueError("target order must be positive")
    src = a.coefficients[lead - a.valuation :]
    out = [0] * n
    out[0] = u
    for k in range(1, n):
        acc = 0
        for i in range(1, min(k, len(src) - 1) + 1):
            ai = src[i]
            if ai:
                acc += ai * out[k - i]
        out[k] = -acc * u
    return LaurentSeries(-lead, tuple(out))


def int_pow(a: LaurentSeries, k: int) -> LaurentSeries:
    """``a**k`` by repeated squaring; negative ``k`` inverts first."""
    if k < 0:
        return int_pow(invert(a), -k)
    result = LaurentSeries.one(a.order - a._effective_valuation())
    if k == 0:
        return result
    base = a
    first = True
    while k:
        if k & 1:
            result = base if first else mul(result, base)
            first = False
        k >>= 1
        if k:
            base = mul(base, base)
    return result


class ExponentTable(Mapping):
    """Exponents attached to the factors of an infinite product.

    Keys are integers ``n`` (for factors ``(1 - q^n)``) or pairs ``(m, n)``
    (for factors ``(1 - p^m q^n)``).  Zero entries are dropped; a missing key
    means exponent zero, see :meth:`exponent`.
    """

    def __init__(self, entries: Mapping | Iterable | None = None) -> None:
        data = dict(entries or {})
        self._data = {k: int(v) for k, v in data.items() if v}

    def exponent(self, key) -> int:
        return self._data.get(key, 0)

    def __getitem__(self, key) -> int:
        return self._data[key]

    def __iter__(self):
        return iter(sorted(self._data))

    def __len__(self) -> int:
        return len(self._data)

    def __repr__(self) -> str:
        return f"ExponentTable({dict(sorted(self._data.items()))})"


def product_expansion(exponents: Mapping[int, int] | Callable[[int], int], order: int) -> LaurentSeries:
    """``prod_{n>=1} (1 - q^n)^{e(n)} + O(q^order)``.

    Uses the logarithmic-derivative recurrence ``k p_k = sum_{i=1}^k b_i p_{k-i}``
    with ``b_i = -sum_{d|i} d e(d)``; the division by ``k`` is exact.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    if callable(exponents):
        e = [0] + [int(exponents(n)) for n in range(1, order)]
    else:
        get = exponents.exponent if isinstance(exponents, ExponentTable) else (lambda n: exponents.get(n, 0))
        e = [0] + [int(get(n)) for n in range(1, order)]
    b = [0] * order
    for d in range(1, order):
        if e[d]:
            w = d * e[d]
            for i in range(d, order, d):
                b[i] -= w
    p = [0] * order
    p[0] = 1
    for k in range(1, order):
        acc = 0
        for i in range(1, k + 1):
            bi = b[i]
            if bi:
                acc += bi * p[k - i]
        q, r = divmod(acc, k)
        assert r == 0
        p[k] = q
    return LaurentSeries(0, tuple(p))


@dataclass(frozen=True, eq=False)
class BiSeries:
    """Series in an outer variable (p or z) whose coefficients are LaurentSeries in q.

    Row ``k`` holds the coefficient of ``outer^(outer_valuation + k)``.  Rows may
    start at different q-exponents but share one inner order.
    """

    outer_valuation: int
    rows: tuple[LaurentSeries, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.rows, tuple):
            object.__setattr__(self, "rows", tuple(self.rows))
        if not self.rows:
            raise ValueError("a BiSeries needs at least one row")
        orders = {r.order for r in self.rows}
        if len(orders) != 1:
            raise ValueError(f"rows must share one inner order, got {sorted(orders)}")

    @classmethod
    def from_terms(
        cls,
        terms: Mapping[tuple[int, int], int],
        outer_valuation: int,
        outer_order: int,
        inner_order: int,
        inner_valuation: int = 0,
    ) -> BiSeries:
        grid = [[0] * (inner_order - inner_valuation) for _ in range(outer_order - outer_valuation)]
        for (a, b), c in terms.items():
            if not (outer_valuation <= a < outer_order and b < inner_order):
                continue
            if b < inner_valuation:
                raise ValueError(f"term at inner exponent {b} is below the declared start {inner_valuation}")
            grid[a - outer_valuation][b - inner_valuation] += c
        return cls(outer_valuation, tuple(LaurentSeries(inner_valuation, tuple(r)) for r in grid))

    @property
    def outer_order(self) -> int:
        return self.outer_valuation + len(self.rows)

    @property
    def inner_order(self) -> int:
        return self.rows[0].order

    @property
    def inner_valuation(self) -> int:
        return min(r.valuation for r in self.rows)

    def row(self, outer: int) -> LaurentSeries:
        if outer >= self.outer_order:
            raise ValueError(f"outer exponent {outer} is unknown: tracked below {self.outer_order}")
        if outer < self.outer_valuation:
            return LaurentSeries.zero(self.inner_order)
        return self.rows[outer - self.outer_valuation]

    def coefficient_at(self, outer: int, inner: int) -> int:
        return self.row(outer).coefficient_at(inner)

    def terms(self) -> Iterator[tuple[int, int, int]]:
        for k, r in enumerate(self.rows):
            for e, c in r.terms():
                yield self.outer_valuation + k, e, c

    def aligned(self, other: BiSeries) -> Iterator[tuple[tuple[int, int], int, int]]:
        """Pairs of coefficients over the common window, outer-major order."""
        outer_top = min(self.outer_order, other.outer_order)
        outer_low = min(self.outer_valuation, other.outer_valuation)
        inner_top = min(self.inner_order, other.inner_order)
        inner_low = min(self.inner_valuation, other.inner_valuation)
        for a in range(outer_low, outer_top):
            ra, rb = self.row(a), other.row(a)
            for b in range(inner_low, inner_top):
                yield (a, b), ra.coefficient_at(b), rb.coefficient_at(b)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return all(x == y for _, x, y in self.aligned(other))

    __hash__ = None  # type: ignore[assignment]

    def _combine(self, other: BiSeries, sign: int) -> BiSeries:
        low = min(self.outer_valuation, other.outer_valuation)
        top = min(self.outer_order, other.outer_order)
        rows = tuple(add(self.row(a), other.row(a).scale(sign)) for a in range(low, top))
        return BiSeries(low, rows)

    def __add__(self, other: BiSeries) -> BiSeries:
        return self._combine(other, 1)

    def __sub__(self, other: BiSeries) -> BiSeries:
        return self._combine(other, -1)

    def __neg__(self) -> BiSeries:
        return BiSeries(self.outer_valuation, tuple(-r for r in self.rows))

    def __str__(self) -> str:
        lines = [f"[outer^{self.outer_valuation + k}] {r}" for k, r in enumerate(self.rows)]
        return "\n".join(lines)


def coefficient_at(a: LaurentSeries | BiSeries, *exponents: int) -> int:
    if isinstance(a, BiSeries):
        if len(exponents) != 2:
            raise ValueError("a BiSeries coefficient needs (outer, inner) exponents")
        return a.coefficient_at(*exponents)
    if len(exponents) != 1:
        raise ValueError("a LaurentSeries coefficient needs one exponent")
    return a.coefficient_at(exponents[0])


def multiply_factor(rows: list[LaurentSeries], m: int, n: int, e: int) -> list[LaurentSeries]:
    """Multiply the row list of an outer power series by ``(1 - p^m q^n)^e``.

    Rows are outer exponents ``0 .. len(rows)-1``; anything beyond is dropped,
    which is sound because ``m >= 1`` only raises the outer degree.
    """
    if m < 1:
        raise ValueError(f"factor (1 - p^{m} q^{n}) must have a positive outer exponent")
    top = len(rows)
    kmax = (top - 1) // m
    if e > 0:
        kmax = min(kmax, e)
    if kmax <= 0 or e == 0:
        return rows
    coefs = [signed_binomial(e, k) for k in range(kmax + 1)]
    out = list(rows)
    for r in range(top - 1, m - 1, -1):
        acc = rows[r]
        for k in range(1, min(kmax, r // m) + 1):
            src = rows[r - m * k].shift(n * k)
            if src.is_zero() and src.order >= acc.order:
                continue
            acc = add(acc, src.scale(coefs[k]))
        out[r] = acc
    return out


def bi_product_expansion(
    exponents: Mapping[tuple[int, int], int],
    outer_order: int,
    inner_order: int,
    outer_valuation_shift: int = 0,
) -> BiSeries:
    """``p^shift * prod (1 - p^m q^n)^{e(m,n)}`` on outer exponents below ``outer_order``
    and inner exponents below ``inner_order``.

    ``exponents`` must list every factor that can reach the window; keys need
    ``m >= 1`` and any integer ``n``.  Factors with negative ``n`` pull terms down
    in q, so the work is done at a widened inner order and trimmed afterwards.
    """
    shift = outer_valuation_shift
    top = outer_order - shift
    if top <= 0:
        raise ValueError(f"outer order {outer_order} leaves no rows above p^{shift}")
    table = exponents if isinstance(exponents, ExponentTable) else ExponentTable(exponents)
    factors = []
    deficit = 0
    for (m, n), e in table.items():
        if m < 1:
            raise ValueError(f"factor exponent key {(m, n)} needs m >= 1")
        if m >= top:
            continue
        if n < 0:
            uses = (top - 1) // m
            if e > 0:
                uses = min(uses, e)
            deficit += -n * uses
        factors.append((m, n, e))
    work = inner_order + deficit
    if work <= 0:
        raise ValueError("inner order too small for any tracked coefficient")
    rows = [LaurentSeries.one(work)] + [LaurentSeries.zero(work, 0) for _ in range(top - 1)]
    for m, n, e in factors:
        rows = multiply_factor(rows, m, n, e)
    return BiSeries(shift, tuple(r.truncate(inner_order) for r in rows))
