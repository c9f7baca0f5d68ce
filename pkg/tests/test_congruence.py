import json
import math

import pytest

from mockxi.congruence import (
    CongruenceClaim,
    FamilyKind,
    InsufficientOrderError,
    legendre,
    primitive_filter,
    qr_family,
    scan,
    verify_congruence,
)
from mockxi.factory import ExponentFamily, Weight, euler_product, pxi
from mockxi.series import Zmod, invert

import oracles

PRIMES = [p for p in range(3, 200) if oracles.is_prime(p)]


@pytest.mark.parametrize("p", PRIMES)
def test_legendre_matches_squares(p):
    for a in range(-p, 2 * p):
        assert legendre(a, p) == oracles.legendre_by_squares(a, p)


@pytest.mark.parametrize("p", [2, 1, 0, 9, 15])
def test_legendre_rejects_non_odd_primes(p):
    with pytest.raises(ValueError):
        legendre(1, p)


def _offsets(kind, p):
    return sorted(c.B for c in qr_family(kind, p))


# Offsets listed in print for each family.
PRINTED = [
    ("scaled-3r", 5, 15, [3, 12]),
    ("scaled-3r", 7, 21, [3, 6, 12]),
    ("scaled-3r", 11, 33, [6, 18, 21, 24, 30]),
    ("scaled-3r-plus-1", 5, 15, [7, 13]),
    ("scaled-3r-plus-1", 7, 21, [10, 13, 19]),
    ("scaled-3r-plus-1", 11, 33, [7, 10, 13, 19, 28]),
    ("scaled-2r-plus-1", 5, 20, [6, 14]),
    ("scaled-2r-plus-1", 7, 28, [6, 10, 26]),
    ("scaled-2r-plus-1", 11, 44, [14, 26, 34, 38, 42]),
    ("scaled-2r-plus-1", 13, 52, [10, 14, 22, 30, 38, 42]),
    ("plusminus1-mod-24", 23, 69, [15, 21, 30, 33, 42, 45, 51, 57, 60, 63, 66]),
]


@pytest.mark.parametrize("kind,p,step,offsets", PRINTED)
def test_printed_offset_lists(kind, p, step, offsets):
    claims = qr_family(kind, p)
    assert {c.A for c in claims} == {step}
    assert _offsets(kind, p) == offsets


def _brute_family(kind, p):
    """Offsets by the definition: loop over r, test nonresidue by squares."""
    nonres = lambda a: oracles.legendre_by_squares(a, p) == -1
    out = set()
    for r in range(p):
        if kind == "scaled-3r" and nonres(3 * r):
            out.add((3 * p, 3 * r, 4))
        if kind == "scaled-3r-corrected" and nonres(r):
            out.add((3 * p, 3 * r, 4))
        if kind == "scaled-3r-plus-1" and nonres(3 * r + 1):
            out.add((3 * p, (3 * r + 1) % (3 * p), 4))
        if kind == "scaled-2r-plus-1" and nonres(2 * r + 1):
            out.add((4 * p, (4 * r + 2) % (4 * p), 4))
        if kind == "plusminus1-mod-24" and nonres(r):
            out.add((3 * p, 3 * r, 8))
        if kind == "scaled-12r-plus-1" and nonres(12 * r + 1):
            out.add((12 * p, 12 * r + 1, 8))
            out.add((48 * p, 48 * r + 4, 8))
    return sorted(out)


@pytest.mark.parametrize("kind", [k.value for k in FamilyKind if k is not FamilyKind.PLUSMINUS1_MOD_24])
@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29])
def test_family_offsets_by_brute_force(kind, p):
    assert [(c.A, c.B, c.m) for c in qr_family(kind, p)] == _brute_family(kind, p)


@pytest.mark.parametrize("p", [23, 47, 71, 73, 97])
def test_plusminus_family_by_brute_force(p):
    assert [(c.A, c.B, c.m) for c in qr_family("plusminus1-mod-24", p)] == _brute_family("plusminus1-mod-24", p)


def test_family_preconditions():
    with pytest.raises(ValueError):
        qr_family("scaled-3r", 3)
    with pytest.raises(ValueError):
        qr_family("scaled-3r", 9)
    with pytest.raises(ValueError):
        qr_family("plusminus1-mod-24", 13)
    with pytest.raises(ValueError):
        qr_family("no-such-family", 5)


def test_printed_and_corrected_3r_rules_agree_when_3_is_a_residue():
    for p in (11, 13, 23, 37):
        assert legendre(3, p) == 1
        assert qr_family("scaled-3r", p) == qr_family("scaled-3r-corrected", p)
    for p in (5, 7, 17, 19):
        assert legendre(3, p) == -1
        assert qr_family("scaled-3r", p) != qr_family("scaled-3r-corrected", p)


def test_claim_validation():
    with pytest.raises(ValueError):
        CongruenceClaim(5, 5, 4)
    with pytest.raises(ValueError):
        CongruenceClaim(0, 0, 4)
    with pytest.raises(ValueError):
        CongruenceClaim(5, 1, 1)


def test_ramanujan_congruences_of_partitions():
    p = invert(euler_product(1, 2000, Zmod(35)))
    for A, B, m in [(5, 4, 5), (7, 5, 7)]:
        assert verify_congruence(p, CongruenceClaim(A, B, m), 200).passed
    res = verify_congruence(p, CongruenceClaim(5, 3, 5), 100)
    assert res.status == "fail" and res.first_failure == 0


def test_verify_congruence_reports_least_failure():
    xi = pxi(400)
    res = verify_congruence(xi, CongruenceClaim(3, 0, 4), 100)
    assert res.status == "fail" and res.first_failure == 0
    res = verify_congruence(xi, CongruenceClaim(8, 6, 4), 50)
    assert res.passed and res.first_failure is None and res.order_checked == 49
    # zero terms: vacuous
    assert verify_congruence(xi, CongruenceClaim(8, 6, 4), 0).passed
    with pytest.raises(InsufficientOrderError):
        verify_congruence(xi, CongruenceClaim(8, 6, 4), 60)


def test_verify_characterization():
    xi = pxi(3000, Zmod(4))
    fam = (ExponentFamily("square", kmin=None),)
    assert verify_congruence(xi, CongruenceClaim(3, 0, 4, fam), 1000).passed
    wrong = (ExponentFamily("square", Weight(3), kmin=None),)
    res = verify_congruence(xi, CongruenceClaim(3, 0, 4, wrong), 1000)
    assert res.status == "fail" and res.first_failure == 0


def test_scan_preconditions():
    xi = pxi(3199, Zmod(4))
    with pytest.raises(ValueError):
        scan(xi, 4, 16, 31)
    with pytest.raises(InsufficientOrderError):
        scan(xi, 4, 16, 201)


def _forced(i):
    """What the mod-4 characterizations of p_xi(3n), p_xi(3n+1) and
    p_xi(4n+2) say about p_xi(i) mod 4: 'zero', 'nonzero' or None."""
    verdicts = []
    if i % 3 == 0:
        n = i // 3
        verdicts.append("nonzero" if n == 0 or math.isqrt(n) ** 2 == n else "zero")
    if i % 3 == 1:
        verdicts.append("nonzero" if math.isqrt(i) ** 2 == i else "zero")
    if i % 4 == 2:
        n = (i - 2) // 4
        hit = any(6 * k * (3 * k - 1) == n for k in range(-60, 61))
        verdicts.append("nonzero" if hit else "zero")
    assert len(set(verdicts)) <= 1
    return verdicts[0] if verdicts else None


def _theorem_bounds(Amax, count=200):
    """(implied, consistent): classes forced to vanish by the theorems, and
    classes in which the theorems force no term to be nonzero."""
    implied, consistent = [], []
    for A in range(1, Amax + 1):
        for B in range(A):
            v = [_forced(A * n + B) for n in range(count)]
            if all(x == "zero" for x in v):
                implied.append((A, B))
            if "nonzero" not in v:
                consistent.append((A, B))
    return implied, consistent


def test_scan_regression_mod4():
    xi = pxi(3199, Zmod(4))
    got = [(c.A, c.B) for c in scan(xi, 4, 16, 200)]
    implied, consistent = _theorem_bounds(16)
    assert set(implied) <= set(got) <= set(consistent)
    for cls in [(8, 6), (16, 10), (16, 14)]:
        assert cls in got
    assert got == sorted(got)
    # the one class found beyond what the three characterizations force
    assert sorted(set(got) - set(implied)) == [(16, 8)]


def test_scan_matches_plain_loop():
    n = 3199
    c = [x % 4 for x in oracles.xi_definition(n)]
    want = [(A, B) for A in range(1, 17) for B in range(A) if all(c[A * k + B] == 0 for k in range(200))]
    assert [(x.A, x.B) for x in scan(pxi(n, Zmod(4)), 4, 16, 200)] == want


def test_scan_output_is_deterministic():
    docs = []
    for _ in range(2):
        xi = pxi(3199, Zmod(4))
        raw = scan(xi, 4, 16, 200)
        docs.append(json.dumps({"raw": [c.to_dict() for c in raw], "primitive": [c.to_dict() for c in primitive_filter(raw)]}))
    assert docs[0] == docs[1]


def test_primitive_filter():
    claims = [CongruenceClaim(8, 6, 4), CongruenceClaim(16, 6, 4), CongruenceClaim(16, 14, 4), CongruenceClaim(16, 10, 4)]
    assert primitive_filter(claims) == [CongruenceClaim(8, 6, 4), CongruenceClaim(16, 10, 4)]
    # different moduli never imply one another
    assert len(primitive_filter([CongruenceClaim(8, 6, 4), CongruenceClaim(16, 6, 8)])) == 2
