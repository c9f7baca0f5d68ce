"""Slow, obviously-correct reference computations.

Nothing here imports mockxi: these are plain-list polynomial routines used
to cross-check the library.
"""

from __future__ import annotations

import math


def poly_mul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def poly_inv(a, n):
    assert a[0] in (1, -1)
    inv = [0] * (n + 1)
    inv[0] = a[0]
    for k in range(1, n + 1):
        s = sum(a[j] * inv[k - j] for j in range(1, min(k, len(a) - 1) + 1))
        inv[k] = -a[0] * s
    return inv


def binomial_product(factors, n):
    """prod (1 + c q^e) over (c, e) pairs, truncated at q^n."""
    out = [1] + [0] * n
    for c, e in factors:
        if e > n:
            continue
        new = out[:]
        for i in range(n + 1 - e):
            new[i + e] += c * out[i]
        out = new
    return out


def euler(k, n):
    """(q^k; q^k)_inf by multiplying out every factor."""
    return binomial_product([(-1, k * j) for j in range(1, n // k + 1)], n)


def eta_quotient(exps, n):
    num = [1] + [0] * n
    den = [1] + [0] * n
    for k, e in exps.items():
        for _ in range(abs(e)):
            if e > 0:
                num = poly_mul(num, euler(k, n), n)
            else:
                den = poly_mul(den, euler(k, n), n)
    return poly_mul(num, poly_inv(den, n), n)


def partitions_brute(n):
    """Count partitions of n by enumerating them."""

    def count(rem, largest):
        if rem == 0:
            return 1
        return sum(count(rem - part, part) for part in range(min(rem, largest), 0, -1))

    return count(n, n)


def theta_phi(n, sign=1):
    out = [0] * (n + 1)
    k = -math.isqrt(n)
    while k * k <= n:
        out[k * k] += sign ** abs(k)
        k += 1
    return out


def theta_psi(n):
    out = [0] * (n + 1)
    k = 0
    while k * (k + 1) // 2 <= n:
        out[k * (k + 1) // 2] += 1
        k += 1
    return out


def _pochhammer(a_exp, step, length, n, sign=-1):
    return binomial_product([(sign, a_exp + step * j) for j in range(length)], n)


def xi_definition(n):
    """1 + 2 sum q^{6k^2-6k+1} / ((q; q^6)_k (q^5; q^6)_k)."""
    out = [1] + [0] * n
    k = 1
    while 6 * k * k - 6 * k + 1 <= n:
        lead = 6 * k * k - 6 * k + 1
        den = poly_mul(_pochhammer(1, 6, k, n), _pochhammer(5, 6, k, n), n)
        term = poly_inv(den, n)
        for i in range(n + 1 - lead):
            out[i + lead] += 2 * term[i]
        k += 1
    return out


def omega_definition(n):
    """sum q^{2k(k+1)} / (q; q^2)_{k+1}^2."""
    out = [0] * (n + 1)
    k = 0
    while 2 * k * (k + 1) <= n:
        lead = 2 * k * (k + 1)
        den = _pochhammer(1, 2, k + 1, n)
        term = poly_inv(poly_mul(den, den, n), n)
        for i in range(n + 1 - lead):
            out[i + lead] += term[i]
        k += 1
    return out


def f3_definition(n):
    """Third-order f(q) = sum q^{k^2} / (-q; q)_k^2."""
    out = [0] * (n + 1)
    k = 0
    while k * k <= n:
        den = _pochhammer(1, 1, k, n, sign=1)
        term = poly_inv(poly_mul(den, den, n), n)
        for i in range(n + 1 - k * k):
            out[i + k * k] += term[i]
        k += 1
    return out


def is_prime(p):
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def legendre_by_squares(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if a in {x * x % p for x in range(1, p)} else -1
