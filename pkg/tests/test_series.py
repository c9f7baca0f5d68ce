import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mockxi.series import (
    EXACT,
    NonUnitError,
    RingMismatchError,
    TruncatedSeries,
    Zmod,
    add,
    constant,
    divide,
    extract,
    first_mismatch,
    invert,
    monomial,
    mul,
    one,
    power,
    reduce_mod,
    scale,
    shift,
    sub,
    substitute,
    zero,
)

from oracles import poly_inv, poly_mul

MODULI = [2, 3, 4, 8, 9, 360, 65521, 2**31 - 1, 2**32 - 5]

rings = st.one_of(st.just(EXACT), st.sampled_from(MODULI).map(Zmod))


@st.composite
def series_triple(draw, max_order=24):
    ring = draw(rings)
    n = draw(st.integers(0, max_order))
    if ring.is_exact:
        coef = st.one_of(st.integers(-50, 50), st.integers(-(2**70), 2**70))
    else:
        coef = st.integers(0, ring.modulus - 1)
    make = lambda: TruncatedSeries(draw(st.lists(coef, min_size=n + 1, max_size=n + 1)), ring)
    return make(), make(), make()


@st.composite
def unit_series(draw, ring, n):
    if ring.is_exact:
        c0 = draw(st.sampled_from([1, -1]))
        rest = draw(st.lists(st.integers(-20, 20), min_size=n, max_size=n))
    else:
        m = ring.modulus
        c0 = draw(st.integers(1, m - 1).filter(lambda c: np.gcd(c, m) == 1))
        rest = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    return TruncatedSeries([c0] + rest, ring)


# -- construction and basics ------------------------------------------------


def test_canonical_residues():
    s = TruncatedSeries([-1, 5, 9], Zmod(4))
    assert s.coeffs == (3, 1, 1)
    assert s.order == 2
    with pytest.raises(ValueError):
        s.to_numpy()[0] = 7


def test_empty_series_rejected():
    with pytest.raises(ValueError):
        TruncatedSeries([])


@pytest.mark.parametrize("m", [0, 1, 2**32])
def test_modulus_bounds(m):
    with pytest.raises(ValueError):
        Zmod(m)


def test_binary_ops_take_min_order():
    a = TruncatedSeries(range(1, 8))
    b = TruncatedSeries([1, 1, 1])
    assert (a + b).order == 2
    assert mul(a, b).order == 2
    assert divide(a, b).order == 2


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        add(one(3), one(3, Zmod(5)))
    with pytest.raises(RingMismatchError):
        mul(one(3, Zmod(3)), one(3, Zmod(9)))


def test_non_unit_division():
    with pytest.raises(NonUnitError) as exc:
        invert(TruncatedSeries([2, 1, 0]))
    assert exc.value.constant == 2
    with pytest.raises(NonUnitError):
        invert(TruncatedSeries([3, 1], Zmod(9)))
    # 2 is a unit mod 9
    assert mul(invert(TruncatedSeries([2, 1], Zmod(9))), TruncatedSeries([2, 1], Zmod(9))) == one(1, Zmod(9))


def test_geometric_series():
    n = 30
    s = divide(one(n), TruncatedSeries([1, -1] + [0] * (n - 1)))
    assert s.coeffs == (1,) * (n + 1)


def test_divide_by_binomial_strided():
    n = 50
    for ring in (EXACT, Zmod(7)):
        den = sub(one(n, ring), monomial(1, 7, n, ring))
        num = TruncatedSeries(range(n + 1), ring)
        q = divide(num, den)
        assert mul(q, den) == num


def test_power_negative_and_zero():
    a = TruncatedSeries([1, 2, 3, 4])
    assert power(a, 0) == one(3)
    assert mul(power(a, -2), power(a, 2)) == one(3)
    with pytest.raises(NonUnitError):
        power(TruncatedSeries([0, 1]), -1)


def test_against_plain_lists():
    a = [1, 3, -2, 0, 5, 1, 1, -7]
    b = [1, -1, 4, 2, 0, 0, 3, 1]
    n = len(a) - 1
    assert mul(TruncatedSeries(a), TruncatedSeries(b)).coeffs == tuple(poly_mul(a, b, n))
    assert invert(TruncatedSeries(b)).coeffs == tuple(poly_inv(b, n))


def test_large_modulus_convolution_has_no_overflow():
    m = 2**32 - 5
    rng = np.random.default_rng(7)
    a = rng.integers(0, m, 400).tolist()
    b = rng.integers(0, m, 400).tolist()
    got = mul(TruncatedSeries(a, Zmod(m)), TruncatedSeries(b, Zmod(m)))
    want = [x % m for x in poly_mul(a, b, 399)]
    assert list(got.coeffs) == want


def test_substitute_shift_extract():
    a = TruncatedSeries([1, 2, 3, 4, 5])
    assert substitute(a, 2).coeffs == (1, 0, 2, 0, 3)
    assert substitute(a, 2, sign=-1, order=9).coeffs == (1, 0, -2, 0, 3, 0, -4, 0, 5, 0)
    with pytest.raises(ValueError):
        substitute(a, 2, order=10)
    assert shift(a, 2).coeffs == (0, 0, 1, 2, 3)
    assert shift(a, 2, order=6).coeffs == (0, 0, 1, 2, 3, 4, 5)
    assert extract(a, 2, 1).coeffs == (2, 4)
    with pytest.raises(ValueError):
        extract(TruncatedSeries([1, 2]), 5, 3)


def test_reduce_mod_from_larger_modulus():
    a = TruncatedSeries([359, 10, 181], Zmod(360))
    assert reduce_mod(a, 8).coeffs == (7, 2, 5)
    with pytest.raises(RingMismatchError):
        reduce_mod(a, 7)


def test_first_mismatch():
    a = TruncatedSeries([1, 2, 3, 4])
    b = TruncatedSeries([1, 2, 0, 4, 9])
    assert first_mismatch(a, b) == 2
    assert first_mismatch(a, b, upto=1) is None
    assert first_mismatch(a, a) is None


def test_operators():
    a = TruncatedSeries([1, 1, 0])
    assert (a * a).coeffs == (1, 2, 1)
    assert (1 - a).coeffs == (0, -1, 0)
    assert (a / a) == one(2)
    assert (a**2) == a * a
    assert (2 * a) == scale(a, 2)
    assert hash(a) == hash(TruncatedSeries([1, 1, 0]))
    assert zero(2) + a == a
    assert constant(3, 2) == TruncatedSeries([3, 0, 0])


# -- properties -------------------------------------------------------------


@settings(max_examples=1000, deadline=None)
@given(series_triple())
def test_ring_axioms(abc):
    a, b, c = abc
    n, ring = a.order, a.ring
    assert add(add(a, b), c) == add(a, add(b, c))
    assert add(a, b) == add(b, a)
    assert add(a, zero(n, ring)) == a
    assert sub(a, a) == zero(n, ring)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b) == mul(b, a)
    assert mul(a, one(n, ring)) == a
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


@settings(max_examples=1000, deadline=None)
@given(st.data())
def test_division_inverts_multiplication(data):
    ring = data.draw(rings)
    n = data.draw(st.integers(0, 20))
    b = data.draw(unit_series(ring, n))
    coef = st.integers(-30, 30) if ring.is_exact else st.integers(0, ring.modulus - 1)
    a = TruncatedSeries(data.draw(st.lists(coef, min_size=n + 1, max_size=n + 1)), ring)
    assert mul(divide(a, b), b) == a
    assert divide(mul(a, b), b) == a


@settings(max_examples=1000, deadline=None)
@given(series_triple(max_order=40), st.integers(1, 7))
def test_dissection_reconstruction(abc, A):
    a = abc[0]
    n = a.order
    total = zero(n, a.ring)
    for r in range(min(A, n + 1)):
        part = extract(a, A, r)
        total = add(total, shift(substitute(part, A, order=n - r), r, order=n))
    assert total == a


@settings(max_examples=1000, deadline=None)
@given(series_triple(max_order=16), st.integers(1, 5), st.sampled_from([1, -1]))
def test_substitute_is_a_ring_morphism(abc, k, sign):
    a, b, _ = abc
    sa, sb = substitute(a, k, sign), substitute(b, k, sign)
    assert substitute(add(a, b), k, sign) == add(sa, sb)
    assert substitute(mul(a, b), k, sign) == mul(sa, sb)
    full = k * a.order + k - 1
    assert substitute(mul(a, b), k, sign, order=full) == mul(
        substitute(a, k, sign, order=full), substitute(b, k, sign, order=full)
    )


@settings(max_examples=1000, deadline=None)
@given(st.data())
def test_reduce_mod_is_a_ring_morphism(data):
    n = data.draw(st.integers(0, 20))
    m = data.draw(st.sampled_from([2, 3, 4, 5, 8, 9, 360, 2**32 - 5]))
    coef = st.integers(-(10**12), 10**12)
    a = TruncatedSeries(data.draw(st.lists(coef, min_size=n + 1, max_size=n + 1)))
    b = TruncatedSeries(data.draw(st.lists(coef, min_size=n + 1, max_size=n + 1)))
    assert reduce_mod(add(a, b), m) == add(reduce_mod(a, m), reduce_mod(b, m))
    assert reduce_mod(mul(a, b), m) == mul(reduce_mod(a, m), reduce_mod(b, m))
    u = data.draw(unit_series(EXACT, n))
    assert reduce_mod(divide(a, u), m) == divide(reduce_mod(a, m), reduce_mod(u, m))
