"""Truncated formal power series in q over the integers or the integers mod m.

A :class:`TruncatedSeries` stores the coefficients ``c_0 .. c_N`` of a power
series together with the ring they live in.  Exact series keep a tuple of
Python ints (unbounded); mod-m series keep a read-only ``int64`` numpy array
of canonical residues.  All operations are pure and return new series.

Binary operations truncate to the smaller of the two orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Optional, Sequence, Union

import numpy as np

__all__ = [
    "CoefficientRing",
    "EXACT",
    "ZZ",
    "Zmod",
    "TruncatedSeries",
    "RingMismatchError",
    "NonUnitError",
    "add",
    "sub",
    "neg",
    "scale",
    "mul",
    "invert",
    "divide",
    "power",
    "substitute",
    "shift",
    "extract",
    "reduce_mod",
    "first_mismatch",
    "zero",
    "one",
    "constant",
    "monomial",
]

_INT64_LIMIT = 2**63


class RingMismatchError(ValueError):
    pass


class NonUnitError(ArithmeticError):
    """Raised when inverting a series whose constant term is not a unit."""

    def __init__(self, constant, ring):
        self.constant = constant
        self.ring = ring
        super().__init__(f"constant term {constant} is not a unit in {ring}")


@dataclass(frozen=True)
class CoefficientRing:
    """Either the exact integers (``modulus is None``) or Z/mZ."""

    modulus: Optional[int] = None

    def __post_init__(self):
        m = self.modulus
        if m is not None:
            if not isinstance(m, int) or isinstance(m, bool):
                raise TypeError("modulus must be an int")
            if m < 2 or m >= 2**32:
                raise ValueError(f"modulus must satisfy 2 <= m < 2**32, got {m}")

    @property
    def kind(self) -> str:
        return "exact-integer" if self.modulus is None else "mod-m"

    @property
    def is_exact(self) -> bool:
        return self.modulus is None

    def unit_inverse(self, c: int) -> int:
        """Inverse of ``c`` in the ring; raises NonUnitError otherwise."""
        if self.modulus is None:
            if c in (1, -1):
                return c
            raise NonUnitError(c, self)
        try:
            return pow(int(c), -1, self.modulus)
        except ValueError:
            raise NonUnitError(int(c), self) from None

    def __str__(self):
        return "ZZ" if self.modulus is None else f"Z/{self.modulus}Z"


EXACT = ZZ = CoefficientRing()


def Zmod(m: int) -> CoefficientRing:
    return CoefficientRing(m)


Coeffs = Union[tuple, np.ndarray]


class TruncatedSeries:
    """Immutable truncated power series ``sum_{n<=order} c_n q^n``."""

    __slots__ = ("_ring", "_c", "_tuple")

    def __init__(self, coeffs: Iterable[int], ring: CoefficientRing = EXACT):
        self._ring = ring
        m = ring.modulus
        if m is None:
            if isinstance(coeffs, np.ndarray):
                c = tuple(int(x) for x in coeffs.tolist())
            else:
                c = tuple(int(x) for x in coeffs)
        else:
            if isinstance(coeffs, np.ndarray) and coeffs.dtype == np.int64:
                c = np.mod(coeffs, m)
            else:
                c = np.array([int(x) % m for x in coeffs], dtype=np.int64)
            c.flags.writeable = False
        if len(c) == 0:
            raise ValueError("a truncated series needs at least one coefficient")
        self._c = c
        self._tuple = None

    @classmethod
    def _raw(cls, data: Coeffs, ring: CoefficientRing) -> "TruncatedSeries":
        # trusted constructor: data already canonical (tuple or int64 array in [0, m))
        s = cls.__new__(cls)
        s._ring = ring
        if isinstance(data, np.ndarray):
            data.flags.writeable = False
        s._c = data
        s._tuple = None
        return s

    @property
    def ring(self) -> CoefficientRing:
        return self._ring

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple:
        """Coefficients as a tuple of Python ints."""
        if self._tuple is None:
            c = self._c
            self._tuple = c if isinstance(c, tuple) else tuple(c.tolist())
        return self._tuple

    def to_numpy(self) -> np.ndarray:
        if self._ring.is_exact:
            return np.array(self._c, dtype=object)
        return self._c

    def nonzero(self) -> list[tuple[int, int]]:
        """``(index, coefficient)`` pairs with nonzero coefficient."""
        c = self._c
        if isinstance(c, tuple):
            return [(i, x) for i, x in enumerate(c) if x]
        idx = np.flatnonzero(c)
        return list(zip(idx.tolist(), c[idx].tolist()))

    def __len__(self):
        return len(self._c)

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self.coeffs[n]
        if n < 0 or n > self.order:
            raise IndexError(f"index {n} outside 0..{self.order}")
        return int(self._c[n])

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._ring == other._ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self._ring, self.coeffs))

    def __repr__(self):
        return f"TruncatedSeries({_format_terms(self.coeffs, limit=8)}, order={self.order}, ring={self._ring})"

    def __str__(self):
        return _format_terms(self.coeffs) + f" + O(q^{self.order + 1})"

    def truncate(self, order: int) -> "TruncatedSeries":
        if order < 0 or order > self.order:
            raise ValueError(f"cannot truncate order {self.order} series to order {order}")
        return TruncatedSeries._raw(self._c[: order + 1], self._ring)

    def __add__(self, other):
        return add(self, _coerce(other, self))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other, self))

    def __rsub__(self, other):
        return sub(_coerce(other, self), self)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return NotImplemented

    def __truediv__(self, other):
        return divide(self, _coerce(other, self))

    def __rtruediv__(self, other):
        return divide(_coerce(other, self), self)

    def __pow__(self, e):
        return power(self, e)


def _format_terms(coeffs: Sequence[int], limit: Optional[int] = None) -> str:
    parts = []
    for n, c in enumerate(coeffs):
        if not c:
            continue
        if limit is not None and len(parts) >= limit:
            parts.append("...")
            break
        mono = "" if n == 0 else ("q" if n == 1 else f"q^{n}")
        if n == 0:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _coerce(x, like: TruncatedSeries) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    if isinstance(x, int):
        return constant(x, like.order, like.ring)
    raise TypeError(f"cannot combine TruncatedSeries with {type(x).__name__}")


def _check_ring(a: TruncatedSeries, b: TruncatedSeries) -> CoefficientRing:
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")
    return a.ring


def _int64_safe(m: int, terms: int) -> bool:
    return (m - 1) ** 2 * max(terms, 1) + m < _INT64_LIMIT


# -- constructors -----------------------------------------------------------


def zero(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    if ring.is_exact:
        return TruncatedSeries._raw((0,) * (order + 1), ring)
    return TruncatedSeries._raw(np.zeros(order + 1, dtype=np.int64), ring)


def constant(c: int, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    return monomial(c, 0, order, ring)


def one(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    return constant(1, order, ring)


def monomial(c: int, n: int, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """``c * q^n`` truncated at ``order`` (zero when ``n > order``)."""
    if order < 0:
        raise ValueError("order must be >= 0")
    if ring.is_exact:
        data = [0] * (order + 1)
        if n <= order:
            data[n] = c
        return TruncatedSeries._raw(tuple(data), ring)
    data = np.zeros(order + 1, dtype=np.int64)
    if n <= order:
        data[n] = c % ring.modulus
    return TruncatedSeries._raw(data, ring)


# -- additive structure -----------------------------------------------------


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    ring = _check_ring(a, b)
    n = min(a.order, b.order) + 1
    if ring.is_exact:
        return TruncatedSeries._raw(tuple(x + y for x, y in zip(a._c[:n], b._c[:n])), ring)
    return TruncatedSeries._raw((a._c[:n] + b._c[:n]) % ring.modulus, ring)


def neg(a: TruncatedSeries) -> TruncatedSeries:
    if a.ring.is_exact:
        return TruncatedSeries._raw(tuple(-x for x in a._c), a.ring)
    return TruncatedSeries._raw((-a._c) % a.ring.modulus, a.ring)


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return add(a, neg(b))


def scale(a: TruncatedSeries, k: int) -> TruncatedSeries:
    """Multiply every coefficient by the integer ``k``."""
    if a.ring.is_exact:
        return TruncatedSeries._raw(tuple(k * x for x in a._c), a.ring)
    m = a.ring.modulus
    if _int64_safe(m, 1):
        return TruncatedSeries._raw((a._c * (k % m)) % m, a.ring)
    return TruncatedSeries._raw(np.array([(x * k) % m for x in a._c.tolist()], dtype=np.int64), a.ring)


# -- multiplication ---------------------------------------------------------


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at ``min(a.order, b.order)``.

    Exact schoolbook convolution; zero coefficients of the sparser factor are
    skipped, which does not change the result.
    """
    ring = _check_ring(a, b)
    n = min(a.order, b.order)
    a_nz, b_nz = a.nonzero(), b.nonzero()
    if len(b_nz) > len(a_nz):
        a, b, a_nz, b_nz = b, a, b_nz, a_nz
    if ring.is_exact:
        return TruncatedSeries._raw(_mul_exact(a._c, b_nz, n), ring)
    m = ring.modulus
    if len(b_nz) * 16 <= n + 1 and _int64_safe(m, 1):
        return TruncatedSeries._raw(_mul_sparse_mod(a._c, b_nz, n, m), ring)
    return TruncatedSeries._raw(_convolve_mod(a._c[: n + 1], b._c[: n + 1], n, m), ring)


def _mul_exact(a: tuple, b_nz: list, n: int) -> tuple:
    out = [0] * (n + 1)
    for j, bj in b_nz:
        if j > n:
            break
        if bj == 1:
            out[j:] = [x + y for x, y in zip(out[j:], a)]
        elif bj == -1:
            out[j:] = [x - y for x, y in zip(out[j:], a)]
        else:
            out[j:] = [x + bj * y for x, y in zip(out[j:], a)]
    return tuple(out)


def _mul_sparse_mod(a: np.ndarray, b_nz: list, n: int, m: int) -> np.ndarray:
    out = np.zeros(n + 1, dtype=np.int64)
    for j, bj in b_nz:
        if j > n:
            break
        seg = out[j:]
        seg += bj * a[: n + 1 - j]
        seg %= m
    return out


def _convolve_mod(a: np.ndarray, b: np.ndarray, n: int, m: int) -> np.ndarray:
    if _int64_safe(m, n + 1):
        return np.convolve(a, b)[: n + 1] % m
    # split into 16-bit limbs so each partial convolution fits in int64
    a1, a0 = a >> 16, a & 0xFFFF
    b1, b0 = b >> 16, b & 0xFFFF

    def conv(x, y):
        return np.convolve(x, y)[: n + 1] % m

    hi = conv(a1, b1)
    mid = (conv(a1, b0) + conv(a0, b1)) % m
    lo = conv(a0, b0)
    hi = ((hi << 16) % m << 16) % m
    mid = (mid << 16) % m
    return (hi + mid + lo) % m


# -- division ---------------------------------------------------------------


def invert(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse to order ``a.order``.

    Uses ``c'_0 = 1/a_0`` and ``c'_n = -c'_0 * sum_{j=1}^{n} a_j c'_{n-j}``.
    """
    return divide(one(a.order, a.ring), a)


def divide(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """``a / b`` to order ``min(a.order, b.order)``; ``b`` needs a unit constant term."""
    ring = _check_ring(a, b)
    n = min(a.order, b.order)
    u = ring.unit_inverse(b[0])
    b_nz = [(j, c) for j, c in b.nonzero() if 0 < j <= n]
    m = ring.modulus
    # 1 -/+ q^e: strided prefix sums
    if len(b_nz) == 1 and b[0] == 1:
        e, c = b_nz[0]
        if c == (-1 if m is None else m - 1):
            return TruncatedSeries._raw(_div_binomial(a._c[: n + 1], e, +1, m), ring)
        if c == 1:
            return TruncatedSeries._raw(_div_binomial(a._c[: n + 1], e, -1, m), ring)
    if m is None:
        return TruncatedSeries._raw(_div_recurrence_py(list(a._c[: n + 1]), b_nz, u, n, None), ring)
    if not _int64_safe(m, len(b_nz) + 1):
        out = _div_recurrence_py(a._c[: n + 1].tolist(), b_nz, u, n, m)
        return TruncatedSeries._raw(np.array(out, dtype=np.int64), ring)
    return TruncatedSeries._raw(_div_recurrence_np(a._c[: n + 1], b_nz, u, n, m), ring)


def _div_binomial(a: Coeffs, e: int, sign: int, m: Optional[int]) -> Coeffs:
    # divides by (1 - sign*q^e): c_i = a_i + sign*c_{i-e}
    if m is None:
        out = list(a)
        if sign == 1:
            for r in range(min(e, len(out))):
                out[r::e] = accumulate(out[r::e])
        else:
            for r in range(min(e, len(out))):
                out[r::e] = accumulate(out[r::e], lambda acc, x: x - acc)
        return tuple(out)
    n = len(a)
    rows = -(-n // e)
    buf = np.zeros(rows * e, dtype=np.int64)
    buf[:n] = a
    grid = buf.reshape(rows, e)
    if sign == 1:
        grid = np.cumsum(grid, axis=0)
    else:
        alt = np.where(np.arange(rows) % 2 == 0, 1, -1)[:, None]
        grid = np.cumsum(grid * alt, axis=0) * alt
    return grid.reshape(-1)[:n] % m


def _div_recurrence_py(a: list, b_nz: list, u: int, n: int, m: Optional[int]) -> tuple:
    c = [0] * (n + 1)
    for i in range(n + 1):
        s = a[i]
        for j, bj in b_nz:
            if j > i:
                break
            s -= bj * c[i - j]
        s *= u
        c[i] = s if m is None else s % m
    return tuple(c)


def _div_recurrence_np(a: np.ndarray, b_nz: list, u: int, n: int, m: int) -> np.ndarray:
    c = np.zeros(n + 1, dtype=np.int64)
    if not b_nz:
        return (a * u) % m
    idx = np.array([j for j, _ in b_nz], dtype=np.int64)
    vals = np.array([bj for _, bj in b_nz], dtype=np.int64)
    a = a.tolist()
    k = 0
    for i in range(n + 1):
        while k < len(idx) and idx[k] <= i:
            k += 1
        s = a[i] - int(vals[:k] @ c[i - idx[:k]]) if k else a[i]
        c[i] = (s * u) % m
    return c


def power(a: TruncatedSeries, e: int) -> TruncatedSeries:
    """``a**e`` by binary exponentiation; negative ``e`` inverts first."""
    if e < 0:
        return power(invert(a), -e)
    result = one(a.order, a.ring)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


# -- index maps -------------------------------------------------------------


def substitute(a: TruncatedSeries, k: int, sign: int = 1, order: Optional[int] = None) -> TruncatedSeries:
    """Replace q by ``sign * q^k``.

    The result has order ``a.order`` unless ``order`` is given; any order up to
    ``k * a.order + k - 1`` is determined by ``a``.
    """
    if k < 1:
        raise ValueError("substitution power must be >= 1")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if order is None:
        order = a.order
    if order > k * a.order + k - 1:
        raise ValueError(f"order {order} exceeds what q -> q^{k} of an order {a.order} series determines")
    src = a._c[: order // k + 1]
    ring = a.ring
    if ring.is_exact:
        out = [0] * (order + 1)
        out[::k] = src if sign == 1 else [x if i % 2 == 0 else -x for i, x in enumerate(src)]
        return TruncatedSeries._raw(tuple(out), ring)
    out = np.zeros(order + 1, dtype=np.int64)
    if sign == 1:
        out[::k] = src
    else:
        vals = src.copy()
        vals[1::2] = (-vals[1::2]) % ring.modulus
        out[::k] = vals
    return TruncatedSeries._raw(out, ring)


def shift(a: TruncatedSeries, t: int, order: Optional[int] = None) -> TruncatedSeries:
    """Multiply by ``q^t``; keeps ``a.order`` unless ``order`` (<= a.order + t) is given."""
    if t < 0:
        raise ValueError("shift must be >= 0")
    if order is None:
        order = a.order
    if order > a.order + t:
        raise ValueError(f"order {order} exceeds shifted precision {a.order + t}")
    keep = max(order + 1 - t, 0)
    if a.ring.is_exact:
        return TruncatedSeries._raw((0,) * min(t, order + 1) + a._c[:keep], a.ring)
    out = np.zeros(order + 1, dtype=np.int64)
    out[t : t + keep] = a._c[:keep]
    return TruncatedSeries._raw(out, a.ring)


def extract(a: TruncatedSeries, A: int, r: int) -> TruncatedSeries:
    """``sum_n c_{A n + r} q^n`` to order ``floor((a.order - r) / A)``."""
    if A < 1 or not 0 <= r < A:
        raise ValueError(f"need A >= 1 and 0 <= r < A, got A={A}, r={r}")
    if r > a.order:
        raise ValueError(f"offset {r} exceeds order {a.order}")
    data = a._c[r::A]
    return TruncatedSeries._raw(tuple(data) if a.ring.is_exact else data.copy(), a.ring)


def reduce_mod(a: TruncatedSeries, m: int) -> TruncatedSeries:
    """Coefficientwise reduction into Z/mZ.

    Also accepts a mod-M series when ``m`` divides ``M``.
    """
    ring = Zmod(m)
    if a.ring.is_exact:
        return TruncatedSeries._raw(np.array([x % m for x in a._c], dtype=np.int64), ring)
    if a.ring.modulus % m:
        raise RingMismatchError(f"cannot reduce {a.ring} to {ring}")
    return TruncatedSeries._raw(a._c % m, ring)


def first_mismatch(a: TruncatedSeries, b: TruncatedSeries, upto: Optional[int] = None) -> Optional[int]:
    """Least ``n <= upto`` where the coefficients differ, or None."""
    _check_ring(a, b)
    limit = min(a.order, b.order)
    if upto is None:
        upto = limit
    if upto < 0 or upto > limit:
        raise ValueError(f"upto={upto} outside 0..{limit}")
    if a.ring.is_exact:
        for n in range(upto + 1):
            if a._c[n] != b._c[n]:
                return n
        return None
    diff = np.flatnonzero(a._c[: upto + 1] != b._c[: upto + 1])
    return int(diff[0]) if diff.size else None
