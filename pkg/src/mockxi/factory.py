"""Constructors for the named q-series: Euler products, eta-quotients,
Pochhammer symbols, theta functions, sparse indicator sums and the
third-order mock theta functions xi, omega, nu, f and g_3.

Everything defaults to exact integer coefficients.  Passing a mod-m ring
computes the same expansion directly in Z/mZ, which is much faster at large
orders; all constant terms involved are 1, so no unit issues arise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Optional, Union

from .series import (
    EXACT,
    CoefficientRing,
    TruncatedSeries,
    add,
    divide,
    monomial,
    mul,
    one,
    scale,
    shift,
    substitute,
    zero,
)

__all__ = [
    "EtaQuotient",
    "PochhammerSpec",
    "Weight",
    "ExponentFamily",
    "EXPONENT_KINDS",
    "euler_product",
    "eta_quotient",
    "pochhammer",
    "indicator_series",
    "sparse_series",
    "jacobi_cube",
    "phi",
    "psi",
    "mock_xi_definition",
    "mock_omega",
    "mock_nu",
    "mock_f3",
    "g3",
    "g2",
    "big_f",
    "pxi",
]


# -- eta-quotients ----------------------------------------------------------


@dataclass(frozen=True)
class EtaQuotient:
    """A product ``prod f_k^{e_k}`` with ``f_k = (q^k; q^k)_inf``.

    Accepts a mapping ``{k: e}`` or an iterable of ``(k, e)`` pairs; repeated
    scales are merged and zero exponents dropped.
    """

    factors: tuple = ()

    def __init__(self, factors: Union[Mapping[int, int], Iterable[tuple[int, int]]] = ()):
        items = factors.items() if isinstance(factors, Mapping) else factors
        merged: dict[int, int] = {}
        for k, e in items:
            if int(k) < 1:
                raise ValueError(f"eta scale must be >= 1, got {k}")
            merged[int(k)] = merged.get(int(k), 0) + int(e)
        object.__setattr__(self, "factors", tuple(sorted((k, e) for k, e in merged.items() if e)))

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        return EtaQuotient(self.factors + other.factors)

    def __truediv__(self, other: "EtaQuotient") -> "EtaQuotient":
        return EtaQuotient(self.factors + tuple((k, -e) for k, e in other.factors))

    def __pow__(self, e: int) -> "EtaQuotient":
        return EtaQuotient((k, x * e) for k, x in self.factors)

    def __str__(self):
        def side(fs):
            return "*".join(f"f_{k}" if abs(e) == 1 else f"f_{k}^{abs(e)}" for k, e in fs)

        num = side([(k, e) for k, e in self.factors if e > 0]) or "1"
        den = [(k, e) for k, e in self.factors if e < 0]
        if not den:
            return num
        d = side(den)
        return f"{num}/({d})" if len(den) > 1 else f"{num}/{d}"


def _pentagonal_f1(order: int) -> list[tuple[int, int]]:
    # Euler: f_1 = sum_{j in Z} (-1)^j q^{j(3j-1)/2}
    terms = [(0, 1)]
    j = 1
    while True:
        e1 = j * (3 * j - 1) // 2
        if e1 > order:
            break
        s = -1 if j % 2 else 1
        terms.append((e1, s))
        e2 = j * (3 * j + 1) // 2
        if e2 <= order:
            terms.append((e2, s))
        j += 1
    return sorted(terms)


@lru_cache(maxsize=256)
def euler_product(k: int, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """``f_k = prod_{j>=1} (1 - q^{kj})`` to the given order."""
    if k < 1:
        raise ValueError(f"eta scale must be >= 1, got {k}")
    return sparse_series(((k * e, s) for e, s in _pentagonal_f1(order // k)), order, ring)


def sparse_series(terms: Iterable[tuple[int, int]], order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """Series from ``(exponent, coefficient)`` pairs; repeated exponents add up."""
    data = [0] * (order + 1)
    for e, c in terms:
        if 0 <= e <= order:
            data[e] += c
    return TruncatedSeries(data, ring)


def eta_quotient(eq: Union[EtaQuotient, Mapping[int, int]], order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """Expand an eta-quotient.

    Each ``f_k`` is sparse (pentagonal), so the quotient is built by sparse
    multiplications and sparse divisions, one factor at a time.
    """
    if not isinstance(eq, EtaQuotient):
        eq = EtaQuotient(eq)
    result = one(order, ring)
    for k, e in sorted(eq.factors, key=lambda f: f[1] > 0):
        fk = euler_product(k, order, ring)
        for _ in range(abs(e)):
            result = mul(result, fk) if e > 0 else divide(result, fk)
    return result


# -- Pochhammer symbols -----------------------------------------------------


@dataclass(frozen=True)
class PochhammerSpec:
    """``(sign*q^a; q^b)_length``, i.e. ``prod_{i<length} (1 - sign*q^{a+b*i})``.

    ``length=None`` means the infinite product, which needs ``a >= 1``.
    """

    sign: int
    a: int
    b: int
    length: Optional[int] = None

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.a < 0 or self.b < 1:
            raise ValueError("need a >= 0 and b >= 1")
        if self.length is None and self.a < 1:
            raise ValueError("an infinite Pochhammer product needs a >= 1")
        if self.length is not None and self.length < 0:
            raise ValueError("length must be >= 0")

    def exponents(self, order: int) -> Iterator[int]:
        i = 0
        while self.length is None or i < self.length:
            e = self.a + self.b * i
            if e > order and self.length is None:
                return
            yield e
            i += 1


def _times_binomial(x: TruncatedSeries, e: int, sign: int) -> TruncatedSeries:
    # x * (1 - sign*q^e)
    if e == 0:
        return scale(x, 1 - sign)
    if e > x.order:
        return x
    return add(x, scale(shift(x, e), -sign))


def _over_binomial(x: TruncatedSeries, e: int, sign: int) -> TruncatedSeries:
    # x / (1 - sign*q^e), e >= 1
    if e > x.order:
        return x
    return divide(x, add(one(x.order, x.ring), monomial(-sign, e, x.order, x.ring)))


def pochhammer(spec: PochhammerSpec, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    result = one(order, ring)
    for e in spec.exponents(order):
        result = _times_binomial(result, e, spec.sign)
    return result


# -- sparse indicator sums --------------------------------------------------


EXPONENT_KINDS: dict[str, Callable[[int], int]] = {
    "square": lambda k: k * k,
    "two-square": lambda k: 2 * k * k,
    "three-square": lambda k: 3 * k * k,
    "six-square": lambda k: 6 * k * k,
    "pentagonal": lambda k: k * (3 * k - 1),
    "double-pentagonal": lambda k: 6 * k * (3 * k - 1),
    "pentagonal-half": lambda k: k * (3 * k - 1) // 2,
    "octagonal": lambda k: k * (3 * k - 2),
    "triangular": lambda k: k * (k + 1) // 2,
    "triple-triangular": lambda k: 3 * k * (k + 1) // 2,
}


@dataclass(frozen=True)
class Weight:
    """Coefficient rule ``scale * (-1)^k`` (if alternating) ``* (2k+1)`` (if odd)."""

    scale: int = 1
    alternating: bool = False
    odd: bool = False

    def __call__(self, k: int) -> int:
        w = self.scale
        if self.alternating and k % 2:
            w = -w
        if self.odd:
            w *= 2 * k + 1
        return w


@dataclass(frozen=True)
class ExponentFamily:
    """``sum weight(k) q^{exponent(k)}`` for ``kmin <= k <= kmax``.

    ``kmin=None`` ranges over all integers; exponents hit by two values of k
    (e.g. ``k^2`` and ``(-k)^2``) have their weights merged.
    """

    kind: str
    weight: Weight = field(default_factory=Weight)
    kmin: Optional[int] = 0
    kmax: Optional[int] = None

    def __post_init__(self):
        if self.kind not in EXPONENT_KINDS:
            raise ValueError(f"unknown exponent family {self.kind!r}")

    def terms(self, order: int) -> list[tuple[int, int]]:
        """Merged ``(exponent, weight)`` pairs in increasing exponent order."""
        expo = EXPONENT_KINDS[self.kind]
        out: dict[int, int] = {}

        def walk(start, step):
            k = start
            while self.kmax is None or k <= self.kmax:
                e = expo(k)
                if e > order:
                    # every family is a convex quadratic with vertex in [-1, 0]
                    if (step > 0 and k >= 0) or (step < 0 and k <= -1):
                        return
                else:
                    out[e] = out.get(e, 0) + self.weight(k)
                k += step

        lo = self.kmin
        if lo is None:
            walk(0, 1)
            walk(-1, -1)
        else:
            walk(lo, 1)
        return sorted((e, w) for e, w in out.items() if w)


def indicator_series(fam: Union[ExponentFamily, Iterable[ExponentFamily]], order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """Sparse sum of one family, or of several families added together."""
    fams = [fam] if isinstance(fam, ExponentFamily) else list(fam)
    return sparse_series((t for f in fams for t in f.terms(order)), order, ring)


def jacobi_cube(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """``sum_{n>=0} (-1)^n (2n+1) q^{n(n+1)/2}``, which equals ``f_1^3``."""
    return indicator_series(ExponentFamily("triangular", Weight(1, alternating=True, odd=True)), order, ring)


def phi(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """``phi(q) = sum_{n in Z} q^{n^2}``."""
    return indicator_series(ExponentFamily("square", kmin=None), order, ring)


def psi(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """``psi(q) = sum_{n>=0} q^{n(n+1)/2}``."""
    return indicator_series(ExponentFamily("triangular"), order, ring)


# -- mock theta functions ---------------------------------------------------


def _hypergeometric_sum(order, ring, terms):
    """Sum of ``q^lead * numerator / denominator`` terms.

    ``terms`` yields ``(lead, [(e, sign) numerator binomials],
    [(e, sign) denominator binomials], coefficient)``; each term is built at
    order ``order - lead`` and shifted into place.
    """
    total = zero(order, ring)
    for lead, num, den, coef in terms:
        if lead > order:
            break
        t = one(order - lead, ring)
        for e, s in num:
            t = _times_binomial(t, e, s)
        for e, s in den:
            t = _over_binomial(t, e, s)
        if coef != 1:
            t = scale(t, coef)
        total = add(total, shift(t, lead, order=order))
    return total


def mock_xi_definition(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """``xi(q) = 1 + 2 sum_{n>=1} q^{6n^2-6n+1} / ((q;q^6)_n (q^5;q^6)_n)``.

    Straight from the defining sum; used as the oracle for :func:`pxi`.
    """

    def terms():
        yield 0, [], [], 1
        n = 1
        while True:
            den = [(6 * j + 1, 1) for j in range(n)] + [(6 * j + 5, 1) for j in range(n)]
            yield 6 * n * n - 6 * n + 1, [], den, 2
            n += 1

    return _hypergeometric_sum(order, ring, terms())


def mock_omega(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """``omega(q) = sum_{n>=0} q^{2n(n+1)} / (q;q^2)_{n+1}^2``."""

    def terms():
        n = 0
        while True:
            den = [(2 * j + 1, 1) for j in range(n + 1)] * 2
            yield 2 * n * (n + 1), [], den, 1
            n += 1

    return _hypergeometric_sum(order, ring, terms())


def mock_nu(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """``nu(q) = sum_{n>=0} q^{n(n+1)} / (-q;q^2)_{n+1}``."""

    def terms():
        n = 0
        while True:
            yield n * (n + 1), [], [(2 * j + 1, -1) for j in range(n + 1)], 1
            n += 1

    return _hypergeometric_sum(order, ring, terms())


def mock_f3(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """Third-order ``f(q) = sum_{n>=0} q^{n^2} / (-q;q)_n^2``."""

    def terms():
        n = 0
        while True:
            yield n * n, [], [(j, -1) for j in range(1, n + 1)] * 2, 1
            n += 1

    return _hypergeometric_sum(order, ring, terms())


def g3(alpha: int, beta: int, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """``g_3(q^alpha, q^beta)`` for monomial arguments with ``0 < alpha < beta``.

    With ``Q = q^beta`` and ``a = q^alpha`` term n is
    ``Q^{n(n+1)} / ((a;Q)_{n+1} (Q/a;Q)_{n+1})``.
    """
    return _universal(alpha, beta, order, ring, with_numerator=False)


def g2(alpha: int, beta: int, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """``g_2(q^alpha, q^beta)``: term n is
    ``(-Q;Q)_n Q^{n(n+1)/2} / ((a;Q)_{n+1} (Q/a;Q)_{n+1})``.
    """
    return _universal(alpha, beta, order, ring, with_numerator=True)


def _universal(alpha, beta, order, ring, with_numerator):
    if not 0 < alpha < beta:
        raise ValueError(f"need 0 < alpha < beta, got alpha={alpha}, beta={beta}")

    def terms():
        n = 0
        while True:
            den = [(alpha + beta * j, 1) for j in range(n + 1)]
            den += [(beta - alpha + beta * j, 1) for j in range(n + 1)]
            if with_numerator:
                num = [(beta * j, -1) for j in range(1, n + 1)]
                yield beta * n * (n + 1) // 2, num, den, 1
            else:
                yield beta * n * (n + 1), [], den, 1
            n += 1

    return _hypergeometric_sum(order, ring, terms())


def big_f(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """``F(q) = phi(q) phi(q^2)^2 / f_4^2``."""
    p = phi(order, ring)
    p2 = substitute(p, 2)
    return divide(mul(p, mul(p2, p2)), eta_quotient({4: 2}, order, ring))


def pxi(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """Coefficients ``p_xi(n)`` via ``q^2 omega(q^3) + f_2^4 / (f_1^2 f_6)``."""
    eta = eta_quotient({2: 4, 1: -2, 6: -1}, order, ring)
    if order < 2:
        return eta
    om = mock_omega((order - 2) // 3, ring)
    return add(shift(substitute(om, 3, order=order - 2), 2, order=order), eta)
