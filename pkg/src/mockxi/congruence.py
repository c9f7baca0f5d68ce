"""Legendre symbols, quadratic-residue congruence families, and checking or
searching arithmetic progressions ``c(An+B) = 0 (mod m)`` in an expansion.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .factory import ExponentFamily, indicator_series
from .result import CheckResult
from .series import TruncatedSeries, Zmod, extract, first_mismatch, reduce_mod

__all__ = [
    "InsufficientOrderError",
    "is_prime",
    "legendre",
    "FamilyKind",
    "CongruenceClaim",
    "qr_family",
    "verify_congruence",
    "scan",
    "primitive_filter",
    "MIN_SCAN_COUNT",
]

MIN_SCAN_COUNT = 32


class InsufficientOrderError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p, by Euler's criterion."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


class FamilyKind(enum.Enum):
    """The quadratic-residue congruence families.

    Each value is the linear form of r that must be a nonresidue mod p.
    ``SCALED_3R`` follows the printed rule; ``SCALED_3R_CORRECTED`` gives the
    same progressions 3(pn+r) under the condition that r itself is a
    nonresidue, which is what the mod-4 characterization of p_xi(3n) supports.
    The two agree exactly when 3 is a quadratic residue mod p.
    """

    SCALED_3R = "scaled-3r"
    SCALED_3R_CORRECTED = "scaled-3r-corrected"
    SCALED_3R_PLUS_1 = "scaled-3r-plus-1"
    SCALED_2R_PLUS_1 = "scaled-2r-plus-1"
    PLUSMINUS1_MOD_24 = "plusminus1-mod-24"
    SCALED_12R_PLUS_1 = "scaled-12r-plus-1"


@dataclass(frozen=True, order=True)
class CongruenceClaim:
    """``c(An+B) = 0 (mod m)`` for all n, or, with a characterization,
    ``sum_n c(An+B) q^n = (sum of the families) (mod m)``.
    """

    A: int
    B: int
    m: int
    characterization: Optional[tuple[ExponentFamily, ...]] = None

    def __post_init__(self):
        if self.A < 1 or not 0 <= self.B < self.A:
            raise ValueError(f"need A >= 1 and 0 <= B < A, got A={self.A}, B={self.B}")
        if self.m < 2:
            raise ValueError("modulus must be >= 2")

    def __str__(self):
        rhs = "0" if self.characterization is None else "<family>"
        return f"c({self.A}n+{self.B}) = {rhs} (mod {self.m})"

    def to_dict(self) -> dict:
        return {"A": self.A, "B": self.B, "m": self.m}


_NONRESIDUE_FORM = {
    FamilyKind.SCALED_3R: lambda r: 3 * r,
    FamilyKind.SCALED_3R_CORRECTED: lambda r: r,
    FamilyKind.SCALED_3R_PLUS_1: lambda r: 3 * r + 1,
    FamilyKind.SCALED_2R_PLUS_1: lambda r: 2 * r + 1,
    FamilyKind.PLUSMINUS1_MOD_24: lambda r: r,
    FamilyKind.SCALED_12R_PLUS_1: lambda r: 12 * r + 1,
}


def qr_family(kind, p: int) -> list[CongruenceClaim]:
    """Claims produced by one family at the prime p, sorted by (A, B)."""
    kind = FamilyKind(kind)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if kind is FamilyKind.PLUSMINUS1_MOD_24:
        if p % 24 not in (1, 23):
            raise ValueError(f"{kind.value} needs p = +-1 (mod 24), got {p}")
    elif p <= 3:
        raise ValueError(f"{kind.value} needs p > 3, got {p}")
    form = _NONRESIDUE_FORM[kind]
    claims = []
    for r in range(p):
        if legendre(form(r), p) != -1:
            continue
        if kind in (FamilyKind.SCALED_3R, FamilyKind.SCALED_3R_CORRECTED):
            claims.append(CongruenceClaim(3 * p, 3 * r, 4))
        elif kind is FamilyKind.PLUSMINUS1_MOD_24:
            claims.append(CongruenceClaim(3 * p, 3 * r, 8))
        elif kind is FamilyKind.SCALED_3R_PLUS_1:
            claims.append(CongruenceClaim(3 * p, 3 * r + 1, 4))
        elif kind is FamilyKind.SCALED_2R_PLUS_1:
            claims.append(CongruenceClaim(4 * p, 4 * r + 2, 4))
        else:
            claims.append(CongruenceClaim(12 * p, 12 * r + 1, 8))
            claims.append(CongruenceClaim(48 * p, 48 * r + 4, 8))
    return sorted(claims)


def _residues(coeffs: TruncatedSeries, m: int) -> TruncatedSeries:
    if coeffs.ring.modulus == m:
        return coeffs
    return reduce_mod(coeffs, m)


def verify_congruence(
    coeffs: TruncatedSeries,
    claim: CongruenceClaim,
    count: int,
    *,
    id: str = "",
    paper_ref: str = "",
    kind: Optional[str] = None,
) -> CheckResult:
    """Check the claim for ``0 <= n < count``; on failure report the least n."""
    if count < 0:
        raise ValueError("count must be >= 0")
    if kind is None:
        kind = "congruence" if claim.characterization is None else "characterization"
    ident = id or f"c({claim.A}n+{claim.B}) mod {claim.m}"
    if count == 0:
        return CheckResult(ident, paper_ref, kind, -1, "pass")
    need = claim.A * (count - 1) + claim.B
    if need > coeffs.order:
        raise InsufficientOrderError(f"need coefficients up to index {need}, series has order {coeffs.order}")
    start = time.perf_counter()
    sub = extract(_residues(coeffs, claim.m), claim.A, claim.B).truncate(count - 1)
    if claim.characterization is None:
        nz = np.flatnonzero(sub.to_numpy())
        bad = int(nz[0]) if nz.size else None
    else:
        expected = indicator_series(claim.characterization, count - 1, Zmod(claim.m))
        bad = first_mismatch(sub, expected)
    elapsed = (time.perf_counter() - start) * 1000
    return CheckResult(ident, paper_ref, kind, count - 1, "pass" if bad is None else "fail", bad, elapsed)


def scan(coeffs: TruncatedSeries, m: int, Amax: int, count: int) -> list[CongruenceClaim]:
    """All classes ``(A, B)`` with ``A <= Amax`` whose first ``count`` terms
    vanish mod m, ordered by (A, B).
    """
    if count < MIN_SCAN_COUNT:
        raise ValueError(f"scan needs count >= {MIN_SCAN_COUNT} to report a class, got {count}")
    if Amax < 1:
        raise ValueError("Amax must be >= 1")
    if Amax * count - 1 > coeffs.order:
        raise InsufficientOrderError(f"scan to A={Amax} with {count} terms needs order {Amax * count - 1}, have {coeffs.order}")
    c = _residues(coeffs, m).to_numpy()
    found = []
    for A in range(1, Amax + 1):
        grid = c[: A * count].reshape(count, A)
        for B in np.flatnonzero(~grid.any(axis=0)).tolist():
            found.append(CongruenceClaim(A, B, m))
    return found


def primitive_filter(claims: Iterable[CongruenceClaim]) -> list[CongruenceClaim]:
    """Drop claims implied by another: (A, B) implies (A', B') when A | A'
    and B' = B (mod A), for the same modulus.
    """
    kept: list[CongruenceClaim] = []
    for c in sorted(claims, key=lambda c: (c.A, c.B, c.m)):
        if not any(k.m == c.m and c.A % k.A == 0 and (c.B - k.B) % k.A == 0 for k in kept):
            kept.append(c)
    return kept
