"""Expanding eta quotients and the mock theta function xi.

Run: python3 demos/01_expansions.py
"""

# %%
from mockxi.factory import euler_product, eta_quotient, mock_omega, mock_xi_definition, pxi
from mockxi.qexpr import evaluate
from mockxi.series import Zmod, invert

# %% Euler's product f_1 = (q;q)_inf is sparse: only pentagonal exponents survive.
f1 = euler_product(1, 40)
print("f_1 exponents:", [n for n, _ in f1.nonzero()])

# %% Its inverse counts partitions.
print("p(0..15):", invert(euler_product(1, 15)).coeffs)

# %% xi two ways: the defining q-series and q^2 omega(q^3) plus an eta quotient.
n = 30
direct = mock_xi_definition(n)
fast = pxi(n)
print("p_xi(0..30):", fast.coeffs)
print("forms agree:", direct == fast)

# %% The same series through the expression language.
print("via qexpr:", evaluate("q^2*omega(q^3) + f_2^4/(f_1^2*f_6)", n) == fast)
print("omega(q):", mock_omega(12).coeffs)

# %% Reductions are computed natively in Z/mZ, not by reducing big integers.
print("p_xi mod 4:", pxi(n, Zmod(4)).coeffs)
print("f_2^4/(f_1^2 f_6) mod 8:", eta_quotient({2: 4, 1: -2, 6: -1}, 20, Zmod(8)).coeffs)
