"""Executable catalog of the identities, congruences and characterizations
satisfied by ``p_xi(n)``, each run as a finite-order check.

Identity entries are pairs of qexpr strings compared to a fixed order.
Progression entries (congruences, characterizations, conjectures) take an
index bound N and check every term ``c(An+B)`` with ``An+B <= N``.

A few statements are catalogued twice, as printed and as corrected.  Such
pairs share a ``pair`` key; after running, both results carry an
``adjudication`` naming whichever variant held.
"""

from __future__ import annotations

import datetime as _dt
import json
import os
import time
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Mapping, Optional, Union

from . import __version__
from .congruence import CongruenceClaim, FamilyKind, qr_family, verify_congruence
from .factory import ExponentFamily, Weight, pxi
from .qexpr import BinOp, Expr, Named, Neg, Part, Pow, SeriesCache, evaluate, parse
from .result import CheckResult
from .series import EXACT, TruncatedSeries, Zmod, extract, first_mismatch, reduce_mod

__all__ = [
    "IdentityEntry",
    "ProgressionEntry",
    "CATALOG",
    "DEFAULT_CONFIG",
    "FAMILY_PRIMES",
    "catalog_by_id",
    "run_group",
    "run_oracle",
    "run_preliminaries",
    "run_lemma1",
    "run_lemma2",
    "run_mock_identities",
    "run_dissections",
    "run_characterizations",
    "run_congruences",
    "run_families",
    "run_conjectures",
    "full_report",
    "report_exit_code",
    "report_schema",
    "dumps_report",
    "reproducible",
    "strip_timing",
]

# Residues of p_xi modulo every modulus the suite uses (3, 4, 5, 8, 9)
# are read off a single expansion mod 360.
SHARED_MODULUS = 360


@dataclass(frozen=True)
class IdentityEntry:
    id: str
    paper_ref: str
    group: str
    lhs: str
    rhs: str
    modulus: Optional[int] = None
    pair: Optional[str] = None
    kind: str = "identity"

    @property
    def line(self) -> str:
        s = f"{self.lhs} == {self.rhs}"
        return s if self.modulus is None else f"{s} [mod {self.modulus}]"


@dataclass(frozen=True)
class ProgressionEntry:
    """``c(An+B)`` mod m against zero, a sum of exponent families, or (with
    ``compare``) another progression ``c(A'n+B')``.
    """

    id: str
    paper_ref: str
    group: str
    claim: CongruenceClaim
    kind: str = "congruence"
    compare: Optional[tuple[int, int]] = None
    pair: Optional[str] = None

    def count(self, bound: int) -> int:
        A, B = self.claim.A, self.claim.B
        if self.compare is not None:
            A2, B2 = self.compare
            return min(_count(A, B, bound), _count(A2, B2, bound))
        return _count(A, B, bound)


def _count(A: int, B: int, bound: int) -> int:
    return 0 if bound < B else (bound - B) // A + 1


Entry = Union[IdentityEntry, ProgressionEntry]


def _ident(group, id, ref, lhs, rhs, **kw):
    return IdentityEntry(id=f"{group}.{id}", paper_ref=ref, group=group, lhs=lhs, rhs=rhs, **kw)


def _cong(id, ref, A, B, m, group="congruences", pair=None):
    return ProgressionEntry(f"{group}.{id}", ref, group, CongruenceClaim(A, B, m), pair=pair)


def _char(id, ref, A, B, m, families, kind="characterization", group="characterizations", pair=None):
    return ProgressionEntry(f"{group}.{id}", ref, group, CongruenceClaim(A, B, m, tuple(families)), kind=kind, pair=pair)


ETA_XI = "f_2^4/(f_1^2*f_6)"

_alt = Weight(1, alternating=True)

CATALOG: tuple[Entry, ...] = (
    # ξ against its defining sum
    _ident("oracle", "xi_definition", "xi(q) from its defining q-series equals q^2 omega(q^3) + f_2^4/(f_1^2 f_6)",
           "xidef(q)", "xi(q)"),
    # theta-function facts used throughout
    _ident("preliminaries", "phi_eta", "phi(q) = f_2^5/(f_1^2 f_4^2)", "phi(q)", "f_2^5/(f_1^2*f_4^2)"),
    _ident("preliminaries", "psi_eta", "psi(q) = f_2^2/f_1", "psi(q)", "f_2^2/f_1"),
    _ident("preliminaries", "phi_neg_eta", "phi(-q) = f_1^2/f_2", "phi(-q)", "f_1^2/f_2"),
    _ident("preliminaries", "jacobi_cube", "f_1^3 = sum (-1)^n (2n+1) q^{n(n+1)/2}", "f_1^3", "jacobi(q)"),
    _ident("preliminaries", "phi_2dissection", "phi(q) = phi(q^4) + 2q psi(q^8)", "phi(q)", "phi(q^4) + 2*q*psi(q^8)"),
    _ident("preliminaries", "phi_sq_2dissection", "phi(q)^2 = phi(q^2)^2 + 4q psi(q^4)^2",
           "phi(q)^2", "phi(q^2)^2 + 4*q*psi(q^4)^2"),
    # 2-dissections
    _ident("lemma1", "inv_f1_sq", "2-dissection of 1/f_1^2", "1/f_1^2",
           "f_8^5/(f_2^5*f_16^2) + 2*q*f_4^2*f_16^2/(f_2^5*f_8)"),
    _ident("lemma1", "f1_sq", "2-dissection of f_1^2", "f_1^2", "f_2*f_8^5/(f_4^2*f_16^2) - 2*q*f_2*f_16^2/f_8"),
    _ident("lemma1", "inv_f1_4", "2-dissection of 1/f_1^4", "1/f_1^4", "f_4^14/(f_2^14*f_8^4) + 4*q*f_4^2*f_8^4/f_2^10"),
    _ident("lemma1", "f3_over_f1", "2-dissection of f_3/f_1", "f_3/f_1",
           "f_4*f_6*f_16*f_24^2/(f_2^2*f_8*f_12*f_48) + q*f_6*f_8^2*f_48/(f_2^2*f_16*f_24)"),
    _ident("lemma1", "f3sq_over_f1sq", "2-dissection of f_3^2/f_1^2", "f_3^2/f_1^2",
           "f_4^4*f_6*f_12^2/(f_2^5*f_8*f_24) + 2*q*f_4*f_6^2*f_8*f_24/(f_2^4*f_12)"),
    _ident("lemma1", "f1cube_over_f3", "2-dissection of f_1^3/f_3", "f_1^3/f_3",
           "f_4^3/f_12 - 3*q*f_2^2*f_12^3/(f_4*f_6^2)"),
    _ident("lemma1", "f3_over_f1cube", "2-dissection of f_3/f_1^3", "f_3/f_1^3",
           "f_4^6*f_6^3/(f_2^9*f_12^2) + 3*q*f_4^2*f_6*f_12^2/f_2^7"),
    _ident("lemma1", "inv_f1f3", "2-dissection of 1/(f_1 f_3)", "1/(f_1*f_3)",
           "f_8^2*f_12^5/(f_2^2*f_4*f_6^4*f_24^2) + q*f_4^5*f_24^2/(f_2^4*f_6^2*f_8^2*f_12)"),
    # 3-dissections
    _ident("lemma2", "psi_3dissection", "3-dissection of psi(q)", "psi(q)", "f_6*f_9^2/(f_3*f_18) + q*f_18^2/f_9"),
    _ident("lemma2", "inv_phi_neg_3dissection", "3-dissection of 1/phi(-q)", "1/phi(-q)",
           "f_6^4*f_9^6/(f_3^8*f_18^3) + 2*q*f_6^3*f_9^3/f_3^7 + 4*q^2*f_6^2*f_18^3/f_3^6"),
    # mock theta identities
    _ident("mock", "omega_g3", "omega(q) = g_3(q, q^2)", "omega(q)", "g3(q,q^2)", pair="g3_definition"),
    _ident("mock", "omega_g3.printed_definition",
           "omega(q) = g_3(q, q^2) with g_3 expanded as sum (-q;q)_n q^{n(n+1)/2}/((a;q)_{n+1}(q/a;q)_{n+1})",
           "omega(q)", "g2(q,q^2)", pair="g3_definition"),
    _ident("mock", "xi_g3", "xi(q) = q^2 g_3(q^3, q^6) + f_2^4/(f_1^2 f_6)", "xidef(q)", f"q^2*g3(q^3,q^6) + {ETA_XI}"),
    _ident("mock", "xi_omega", "xi(q) = q^2 omega(q^3) + f_2^4/(f_1^2 f_6)", "xidef(q)", f"q^2*omega(q^3) + {ETA_XI}"),
    _ident("mock", "pxi_generating_function", "sum p_xi(n) q^n = q^2 omega(q^3) + f_2^4/(f_1^2 f_6)",
           "xi(q)", f"q^2*omega(q^3) + {ETA_XI}"),
    _ident("mock", "apsy", "f(q^8) + 2q omega(q) + 2q^3 omega(-q^4) = F(q)",
           "mtf(q^8) + 2*q*omega(q) + 2*q^3*omega(-q^4)", "F(q)"),
    _ident("mock", "F_eta_form", "F(q) = phi(q) phi(q^2)^2/f_4^2 = f_2 f_4^6/(f_1^2 f_8^4)",
           "F(q)", "f_2*f_4^6/(f_1^2*f_8^4)", pair="F_eta_form"),
    _ident("mock", "F_eta_form.printed", "F(q) = f_2 f_6^6/(f_1^2 f_12^4) as printed",
           "F(q)", "f_2*f_6^6/(f_1^2*f_12^4)", pair="F_eta_form"),
    # dissections of ξ
    _ident("dissections", "xi_2n1", "2 sum p_xi(2n+1) q^{n+1} = f_6^6 f_12/(f_3^4 f_24^2) - f(q^12) + 4q f_2^2 f_8^2/(f_1 f_3 f_4)",
           "2*q*part(xi(q),2,1)", "f_6^6*f_12/(f_3^4*f_24^2) - mtf(q^12) + 4*q*f_2^2*f_8^2/(f_1*f_3*f_4)"),
    _ident("dissections", "xi_2n", "sum p_xi(2n) q^n = q f_6^8 f_24^2/(f_3^4 f_12^5) - q^4 omega(-q^6) + f_4^5/(f_1 f_3 f_8^2)",
           "part(xi(q),2,0)", "q*f_6^8*f_24^2/(f_3^4*f_12^5) - q^4*omega(-q^6) + f_4^5/(f_1*f_3*f_8^2)"),
    _ident("dissections", "two_q_xi", "2 sum p_xi(n) q^{n+1} = F(q^3) - f(q^24) - 2q^9 omega(-q^12) + 2q f_2^4/(f_1^2 f_6)",
           "2*q*xi(q)", "F(q^3) - mtf(q^24) - 2*q^9*omega(-q^12) + 2*q*f_2^4/(f_1^2*f_6)"),
    _ident("dissections", "xi_odd_part", "2 sum p_xi(2n+1) q^{2n+2} = f_12^6 f_24/(f_6^4 f_48^2) - f(q^24) + 4q^2 f_4^2 f_16^2/(f_2 f_6 f_8)",
           "q*(xi(q) - xi(-q))", "f_12^6*f_24/(f_6^4*f_48^2) - mtf(q^24) + 4*q^2*f_4^2*f_16^2/(f_2*f_6*f_8)"),
    _ident("dissections", "xi_even_part", "sum p_xi(2n) q^{2n+1} = q^3 f_12^8 f_48^2/(f_6^4 f_24^5) - q^9 omega(-q^12) + q f_8^5/(f_2 f_6 f_16^2)",
           "q*(xi(q) + xi(-q))", "2*q^3*f_12^8*f_48^2/(f_6^4*f_24^5) - 2*q^9*omega(-q^12) + 2*q*f_8^5/(f_2*f_6*f_16^2)"),
    _ident("dissections", "xi_3n", "sum p_xi(3n) q^n = f_2 f_3^4/(f_1^2 f_6^2)", "part(xi(q),3,0)", "f_2*f_3^4/(f_1^2*f_6^2)"),
    _ident("dissections", "xi_3n1", "sum p_xi(3n+1) q^n = 2 f_3 f_6/f_1", "part(xi(q),3,1)", "2*f_3*f_6/f_1"),
    _ident("dissections", "xi_3n2", "sum p_xi(3n+2) q^n = omega(q) + f_6^4/(f_2 f_3^2)", "part(xi(q),3,2)", "omega(q) + f_6^4/(f_2*f_3^2)"),
    _ident("dissections", "xi_3dissection", "3-dissection of xi(q) through the 3-dissection of psi",
           "xi(q)", "q^2*omega(q^3) + f_6*f_9^4/(f_3^2*f_18^2) + 2*q*f_9*f_18/f_3 + q^2*f_18^4/(f_6*f_9^2)"),
    _ident("dissections", "xi_4n", "sum p_xi(4n) q^n = 4q^2 f_12^6/(f_3^2 f_6^3) - q^2 omega(-q^3) + f_2^4 f_6^5/(f_1^2 f_3^4 f_12^2)",
           "part(xi(q),4,0)", "4*q^2*f_12^6/(f_3^2*f_6^3) - q^2*omega(-q^3) + f_2^4*f_6^5/(f_1^2*f_3^4*f_12^2)"),
    _ident("dissections", "xi_4n1", "sum p_xi(4n+1) q^n = 2q f_6^3 f_12^2/f_3^4 + 2 f_4^4 f_6^5/(f_2^2 f_3^4 f_12^2)",
           "part(xi(q),4,1)", "2*q*f_6^3*f_12^2/f_3^4 + 2*f_4^4*f_6^5/(f_2^2*f_3^4*f_12^2)"),
    _ident("dissections", "xi_4n2", "sum p_xi(4n+2) q^n = f_6^9/(f_3^6 f_12^2) + f_2^10 f_12^2/(f_1^4 f_3^2 f_4^4 f_6)",
           "part(xi(q),4,2)", "f_6^9/(f_3^6*f_12^2) + f_2^10*f_12^2/(f_1^4*f_3^2*f_4^4*f_6)"),
    _ident("dissections", "xi_4n3", "2 sum p_xi(4n+3) q^{n+1} = f_6^15/(f_3^8 f_12^6) - f(q^6) + 4q f_2^4 f_12^2/(f_1^2 f_3^2 f_6)",
           "2*q*part(xi(q),4,3)", "f_6^15/(f_3^8*f_12^6) - mtf(q^6) + 4*q*f_2^4*f_12^2/(f_1^2*f_3^2*f_6)"),
    _ident("dissections", "xi_4n2_mod4", "sum p_xi(4n+2) q^n = 2 f_12 (mod 4)", "part(xi(q),4,2)", "2*f_12", modulus=4),
    _ident("dissections", "xi_6n4", "sum p_xi(6n+4) q^n = 2 f_3^2 f_4^2 f_24/(f_1^2 f_8 f_12)",
           "part(xi(q),6,4)", "2*f_3^2*f_4^2*f_24/(f_1^2*f_8*f_12)"),
    _ident("dissections", "xi_6n1", "sum p_xi(6n+1) q^n = 2 f_2 f_3^2 f_8 f_12^2/(f_1^2 f_4 f_6 f_24)",
           "part(xi(q),6,1)", "2*f_2*f_3^2*f_8*f_12^2/(f_1^2*f_4*f_6*f_24)"),
    _ident("dissections", "xi_6n1_2dissection", "2-dissection of sum p_xi(6n+1) q^n, first term 2 f_4^3 f_12^4/(f_2^4 f_24^2)",
           "part(xi(q),6,1)", "2*f_4^3*f_12^4/(f_2^4*f_24^2) + 4*q*f_6*f_8^2*f_12/f_2^3", pair="xi_6n1_2dissection"),
    _ident("dissections", "xi_6n1_2dissection.printed", "2-dissection of sum p_xi(6n+1) q^n as printed, first term 2 f_4^3 f_12^4/(f_1^2 f_2^4 f_24^2)",
           "part(xi(q),6,1)", "2*f_4^3*f_12^4/(f_1^2*f_2^4*f_24^2) + 4*q*f_6*f_8^2*f_12/f_2^3", pair="xi_6n1_2dissection"),
    _ident("dissections", "xi_12n7", "sum p_xi(12n+7) q^n = 4 f_3 f_4^2 f_6/f_1^3", "part(xi(q),12,7)", "4*f_3*f_4^2*f_6/f_1^3"),
    _ident("dissections", "xi_9n6", "sum p_xi(9n+6) q^n = 4 f_6^3/f_1^2", "part(xi(q),9,6)", "4*f_6^3/f_1^2"),
    _ident("dissections", "xi_12n10", "sum p_xi(12n+10) q^n = 4 f_2^3 f_3^2 f_12^2/(f_1^4 f_6^2)",
           "part(xi(q),12,10)", "4*f_2^3*f_3^2*f_12^2/(f_1^4*f_6^2)", pair="xi_12n10"),
    _ident("dissections", "xi_12n10.printed", "sum p_xi(12n+10) q^n = 4 f_2^3 f_3^2 f_12^2/(f_1^4 f_6) as printed",
           "part(xi(q),12,10)", "4*f_2^3*f_3^2*f_12^2/(f_1^4*f_6)", pair="xi_12n10"),
    # characterizations
    _char("xi_3n_mod4", "p_xi(3n) = 1, 2, 0 (mod 4) for n = 0, n a square, otherwise", 3, 0, 4,
          [ExponentFamily("square", kmin=None)]),
    _char("xi_3n_mod8", "p_xi(3n) = 1, 6(-1)^k, 4, 0 (mod 8) for n = 0, k^2, 2k^2/3k^2/6k^2, otherwise", 3, 0, 8,
          [ExponentFamily("square", kmax=0), ExponentFamily("square", Weight(6, alternating=True), kmin=1),
           ExponentFamily("two-square", Weight(4), kmin=1), ExponentFamily("three-square", Weight(4), kmin=1),
           ExponentFamily("six-square", Weight(4), kmin=1)]),
    _char("xi_3n1_mod4", "p_xi(3n+1) = 2 (mod 4) if 3n+1 is a square, else 0", 3, 1, 4,
          [ExponentFamily("octagonal", Weight(2), kmin=None)]),
    _char("xi_4n2_mod4", "p_xi(4n+2) = 2(-1)^k (mod 4) if n = 6k(3k-1), else 0", 4, 2, 4,
          [ExponentFamily("double-pentagonal", Weight(2, alternating=True), kmin=None)], pair="xi_4n2_mod4"),
    _char("xi_4n2_mod4.printed", "p_xi(4n+2) = (-1)^k (mod 4) if n = 6k(3k-1), else 0, as printed", 4, 2, 4,
          [ExponentFamily("double-pentagonal", _alt, kmin=None)], pair="xi_4n2_mod4"),
    ProgressionEntry("characterizations.xi_12n4_vs_3n1_mod8", "p_xi(12n+4) = p_xi(3n+1) (mod 8)", "characterizations",
                     CongruenceClaim(12, 4, 8), kind="characterization", compare=(3, 1)),
    _char("xi_48n4_mod8", "p_xi(48n+4) = 2(-1)^k (mod 8) if n = k(3k-1), else 0", 48, 4, 8,
          [ExponentFamily("pentagonal", Weight(2, alternating=True), kmin=None)]),
    _char("xi_12n1_mod8", "p_xi(12n+1) = 2(-1)^k (mod 8) if n = k(3k-1), else 0", 12, 1, 8,
          [ExponentFamily("pentagonal", Weight(2, alternating=True), kmin=None)]),
    # isolated congruences
    _cong("24n19_mod3", "p_xi(24n+19) = 0 (mod 3)", 24, 19, 3),
    _cong("27n18_mod3", "p_xi(27n+18) = 0 (mod 3)", 27, 18, 3),
    _cong("72n51_mod3", "p_xi(72n+51) = 0 (mod 3)", 72, 51, 3),
    _cong("8n6_mod4", "p_xi(8n+6) = 0 (mod 4)", 8, 6, 4),
    _cong("16n10_mod4", "p_xi(16n+10) = 0 (mod 4)", 16, 10, 4),
    _cong("45n33_mod5", "p_xi(45n+33) = 0 (mod 5)", 45, 33, 5),
    _cong("45n41_mod5.printed", "p_xi(45n+41) = 0 (mod 5) as stated", 45, 41, 5, pair="45n_mod5"),
    _cong("45n42_mod5", "p_xi(45n+42) = 0 (mod 5) as concluded in the proof", 45, 42, 5, pair="45n_mod5"),
    _cong("16n14_mod8", "p_xi(16n+14) = 0 (mod 8)", 16, 14, 8),
    _cong("24n13_mod8", "p_xi(24n+13) = 0 (mod 8)", 24, 13, 8),
    _cong("24n22_mod8", "p_xi(24n+22) = 0 (mod 8)", 24, 22, 8),
    _cong("96n76_mod9", "p_xi(96n+76) = 0 (mod 9)", 96, 76, 9),
    _cong("96n44_mod9", "p_xi(96n+44) = 0 (mod 9)", 96, 44, 9),
    # conjectures: finite-order evidence only
    _char("8n3_mod3", "sum p_xi(8n+3) q^n = 2 sum q^{3n(n+1)/2} (mod 3)", 8, 3, 3,
          [ExponentFamily("triple-triangular", Weight(2))], kind="conjecture", group="conjectures"),
    _char("32n12_mod9", "sum p_xi(32n+12) q^n = 6 sum q^{3n(n+1)/2} (mod 9)", 32, 12, 9,
          [ExponentFamily("triple-triangular", Weight(6))], kind="conjecture", group="conjectures"),
)

# Primes at which each quadratic-residue family is instantiated.
FAMILY_PRIMES: dict[FamilyKind, tuple[int, ...]] = {
    FamilyKind.SCALED_3R: (5, 7, 11),
    FamilyKind.SCALED_3R_CORRECTED: (5, 7, 11),
    FamilyKind.SCALED_3R_PLUS_1: (5, 7, 11),
    FamilyKind.SCALED_2R_PLUS_1: (5, 7, 11, 13),
    FamilyKind.PLUSMINUS1_MOD_24: (23,),
    FamilyKind.SCALED_12R_PLUS_1: (5, 7),
}

_FAMILY_REF = {
    FamilyKind.SCALED_3R: "p_xi(3(pn+r)) = 0 (mod 4) when 3r is a nonresidue mod p, as printed",
    FamilyKind.SCALED_3R_CORRECTED: "p_xi(3(pn+r)) = 0 (mod 4) when r is a nonresidue mod p",
    FamilyKind.SCALED_3R_PLUS_1: "p_xi(3(pn+r)+1) = 0 (mod 4) when 3r+1 is a nonresidue mod p",
    FamilyKind.SCALED_2R_PLUS_1: "p_xi(4(pn+r)+2) = 0 (mod 4) when 2r+1 is a nonresidue mod p",
    FamilyKind.PLUSMINUS1_MOD_24: "p_xi(3(pn+r)) = 0 (mod 8) when p = +-1 (mod 24) and r is a nonresidue mod p",
    FamilyKind.SCALED_12R_PLUS_1: "p_xi(48(pn+r)+4) = p_xi(12(pn+r)+1) = 0 (mod 8) when 12r+1 is a nonresidue mod p",
}


_SCALED_3R_KINDS = (FamilyKind.SCALED_3R, FamilyKind.SCALED_3R_CORRECTED)


def _family_prefix(kind: FamilyKind, p: int) -> str:
    return f"families.{kind.value}.p{p}"


def family_entries(primes: Optional[Mapping] = None) -> list[ProgressionEntry]:
    primes = FAMILY_PRIMES if primes is None else {FamilyKind(k): v for k, v in primes.items()}
    out = []
    for kind, ps in primes.items():
        for p in ps:
            for c in qr_family(kind, p):
                # the printed and corrected 3r rules are adjudicated per prime
                pair = f"scaled-3r.p{p}" if kind in _SCALED_3R_KINDS else None
                out.append(ProgressionEntry(f"{_family_prefix(kind, p)}.{c.A}n{c.B}", _FAMILY_REF[kind], "families", c, pair=pair))
    return out


def catalog_by_id() -> dict[str, Entry]:
    return {e.id: e for e in (*CATALOG, *family_entries())}


# Identity groups take a series order; progression groups take an index
# bound on p_xi.  These defaults meet the acceptance orders.
DEFAULT_CONFIG: dict[str, int] = {
    "oracle": 2000,
    "preliminaries": 1000,
    "lemma1": 1000,
    "lemma2": 1000,
    "mock": 400,
    "dissections": 600,
    "characterizations": 19204,
    "congruences": 19200,
    "families": 33600,
    "conjectures": 12800,
}

GROUPS = tuple(DEFAULT_CONFIG)


# -- running ----------------------------------------------------------------


class _Expansions:
    """Shared ``p_xi`` expansions: exact ones through a qexpr cache, and one
    mod-360 expansion from which all small-modulus residues are read.
    """

    def __init__(self):
        self.cache = SeriesCache()
        self._mod: Optional[TruncatedSeries] = None

    def need_exact(self, order: int) -> None:
        self.cache.get("xi", order, EXACT)

    def need_mod(self, order: int) -> None:
        if self._mod is None or self._mod.order < order:
            self._mod = pxi(order, Zmod(SHARED_MODULUS))
            for m in (3, 4, 5, 8, 9):
                self.cache.seed("xi", reduce_mod(self._mod, m))

    def residues(self, m: int, order: int) -> TruncatedSeries:
        if SHARED_MODULUS % m:
            return pxi(order, Zmod(m))
        self.need_mod(order)
        return reduce_mod(self._mod.truncate(order), m)


def _xi_demand(e: Expr, n: int) -> int:
    """Highest index of ``xi`` needed to evaluate e to order n."""
    if isinstance(e, Named):
        return n // e.k if e.name == "xi" else -1
    if isinstance(e, Part):
        return _xi_demand(e.expr, e.A * n + e.r)
    if isinstance(e, Neg):
        return _xi_demand(e.operand, n)
    if isinstance(e, BinOp):
        return max(_xi_demand(e.left, n), _xi_demand(e.right, n))
    if isinstance(e, Pow):
        return _xi_demand(e.base, n)
    return -1


def _run_identity(entry: IdentityEntry, order: int, ex: _Expansions) -> CheckResult:
    ring = EXACT if entry.modulus is None else Zmod(entry.modulus)
    start = time.perf_counter()
    lhs, rhs = parse(entry.lhs), parse(entry.rhs)
    demand = max(_xi_demand(lhs, order), _xi_demand(rhs, order))
    if demand >= 0:
        if ring.is_exact:
            ex.need_exact(demand)
        else:
            ex.need_mod(demand)
    a = evaluate(lhs, order, ring, ex.cache)
    b = evaluate(rhs, order, ring, ex.cache)
    bad = first_mismatch(a, b)
    elapsed = (time.perf_counter() - start) * 1000
    return CheckResult(entry.id, entry.paper_ref, entry.kind, order, "pass" if bad is None else "fail", bad, elapsed)


def _run_progression(entry: ProgressionEntry, bound: int, ex: _Expansions) -> CheckResult:
    claim = entry.claim
    count = entry.count(bound)
    if count == 0:
        return CheckResult(entry.id, entry.paper_ref, entry.kind, 0, "skipped")
    if entry.compare is None:
        need = claim.A * (count - 1) + claim.B
        res = verify_congruence(ex.residues(claim.m, need), claim, count, id=entry.id,
                                paper_ref=entry.paper_ref, kind=entry.kind)
        return res
    start = time.perf_counter()
    A2, B2 = entry.compare
    need = max(claim.A * (count - 1) + claim.B, A2 * (count - 1) + B2)
    c = ex.residues(claim.m, need)
    a = extract(c, claim.A, claim.B).truncate(count - 1)
    b = extract(c, A2, B2).truncate(count - 1)
    bad = first_mismatch(a, b)
    elapsed = (time.perf_counter() - start) * 1000
    return CheckResult(entry.id, entry.paper_ref, entry.kind, count - 1, "pass" if bad is None else "fail", bad, elapsed)


def _run(entry: Entry, n: int, ex: _Expansions) -> CheckResult:
    if n <= 0:
        return CheckResult(entry.id, entry.paper_ref, entry.kind, 0, "skipped")
    if isinstance(entry, IdentityEntry):
        return _run_identity(entry, n, ex)
    return _run_progression(entry, n, ex)


def _variant(id: str) -> str:
    # family claims are adjudicated as a whole: one variant per (rule, prime)
    return id.rsplit(".", 1)[0] if id.startswith("families.") else id


def _adjudicate(entries: Iterable[Entry], results: list[CheckResult]) -> list[CheckResult]:
    """Within each pair, name the variant that held when the others failed.

    A variant holds when every one of its results passed.
    """
    by_id = {r.id: r for r in results}
    pairs: dict[str, dict[str, list[str]]] = {}
    for e in entries:
        if e.pair and e.id in by_id:
            pairs.setdefault(e.pair, {}).setdefault(_variant(e.id), []).append(e.id)
    verdict = {}
    for variants in pairs.values():
        held = [v for v, ids in variants.items() if all(by_id[i].status == "pass" for i in ids)]
        failed = any(by_id[i].status == "fail" for ids in variants.values() for i in ids)
        if len(held) == 1 and failed:
            for ids in variants.values():
                for i in ids:
                    verdict[i] = held[0]
    return [_with(r, adjudication=verdict.get(r.id)) for r in results]


def _with(r: CheckResult, **kw) -> CheckResult:
    d = r.to_dict()
    d.update(kw)
    return CheckResult(**d)


def run_group(group: str, n: int, ex: Optional[_Expansions] = None, entries: Optional[list[Entry]] = None) -> list[CheckResult]:
    ex = ex or _Expansions()
    if entries is None:
        entries = family_entries() if group == "families" else [e for e in CATALOG if e.group == group]
    if not entries:
        raise KeyError(f"unknown group {group!r}")
    if n > 0:
        # one expansion at the largest order any entry in the group needs
        if any(isinstance(e, ProgressionEntry) for e in entries):
            ex.need_mod(n)
    return _adjudicate(entries, [_run(e, n, ex) for e in entries])


def run_oracle(N: int) -> list[CheckResult]:
    return run_group("oracle", N)


def run_preliminaries(N: int) -> list[CheckResult]:
    return run_group("preliminaries", N)


def run_lemma1(N: int) -> list[CheckResult]:
    return run_group("lemma1", N)


def run_lemma2(N: int) -> list[CheckResult]:
    return run_group("lemma2", N)


def run_mock_identities(N: int) -> list[CheckResult]:
    return run_group("mock", N)


def run_dissections(N: int) -> list[CheckResult]:
    return run_group("dissections", N)


def run_characterizations(N: int) -> list[CheckResult]:
    return run_group("characterizations", N)


def run_congruences(N: int) -> list[CheckResult]:
    return run_group("congruences", N)


def run_families(primes: Optional[Mapping] = None, N: int = DEFAULT_CONFIG["families"]) -> list[CheckResult]:
    return run_group("families", N, entries=family_entries(primes))


def run_conjectures(N: int) -> list[CheckResult]:
    return run_group("conjectures", N)


# -- report -----------------------------------------------------------------


def generated_at() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    now = _dt.datetime.fromtimestamp(int(epoch), _dt.timezone.utc) if epoch else _dt.datetime.now(_dt.timezone.utc)
    return now.replace(microsecond=0).isoformat().replace("+00:00", "Z")


def reproducible() -> bool:
    """True when SOURCE_DATE_EPOCH is set: timings are then reported as 0."""
    return "SOURCE_DATE_EPOCH" in os.environ


def strip_timing(results: list[dict]) -> list[dict]:
    return [{**r, "elapsed": 0.0} for r in results] if reproducible() else results


def full_report(config: Optional[Mapping[str, int]] = None, groups: Optional[Iterable[str]] = None) -> dict:
    """Run every group (or the chosen ones) and assemble the report."""
    cfg = dict(DEFAULT_CONFIG)
    if config:
        unknown = set(config) - set(cfg)
        if unknown:
            raise KeyError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(config)
    chosen = list(GROUPS) if groups is None else list(groups)
    ex = _Expansions()
    progression_bounds = [cfg[g] for g in chosen if g in ("characterizations", "congruences", "families", "conjectures")]
    if progression_bounds and max(progression_bounds) > 0:
        ex.need_mod(max(progression_bounds))
    results: list[CheckResult] = []
    for g in chosen:
        results.extend(run_group(g, cfg[g], ex))
    results.sort(key=lambda r: r.id)
    summary = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "skipped")}
    return {
        "suite_version": __version__,
        "generated_at": generated_at(),
        "config": {g: cfg[g] for g in chosen},
        "results": strip_timing([r.to_dict() for r in results]),
        "summary": summary,
    }


def blocking_failures(report: Mapping) -> list[str]:
    """Ids of failures that count against the exit status: conjectures and
    the refuted side of an adjudicated pair do not.
    """
    return [
        r["id"]
        for r in report["results"]
        if r["status"] == "fail" and r["kind"] != "conjecture" and not _refuted(r)
    ]


def _refuted(r: Mapping) -> bool:
    adj = r.get("adjudication")
    return adj is not None and _variant(r["id"]) != adj


def report_exit_code(report: Mapping) -> int:
    return 1 if blocking_failures(report) else 0


def report_schema() -> dict:
    return json.loads(resources.files("mockxi").joinpath("report.schema.json").read_text(encoding="utf-8"))


def dumps_report(report: Mapping) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"
