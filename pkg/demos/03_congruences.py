"""Congruences and characterizations of p_xi modulo small m.

Run: python3 demos/03_congruences.py
"""

# %%
from mockxi.congruence import CongruenceClaim, legendre, qr_family, verify_congruence
from mockxi.factory import ExponentFamily, pxi
from mockxi.series import extract, reduce_mod, Zmod

N = 20000
xi360 = pxi(N, Zmod(360))
res = {m: reduce_mod(xi360, m) for m in (3, 4, 5, 8, 9)}

# %% Vanishing progressions.
for A, B, m in [(24, 19, 3), (8, 6, 4), (16, 10, 4), (45, 33, 5), (45, 42, 5), (45, 41, 5), (96, 76, 9)]:
    r = verify_congruence(res[m], CongruenceClaim(A, B, m), 200)
    print(f"p_xi({A}n+{B}) = 0 mod {m}: {r.status}, first failure {r.first_failure}")

# %% p_xi(3n) mod 4 is 1 at n = 0, 2 at nonzero squares, 0 otherwise.
print("p_xi(3n) mod 4:", extract(res[4], 3, 0).coeffs[:26])
squares = CongruenceClaim(3, 0, 4, (ExponentFamily("square", kmin=None),))
print("matches 1 + 2 sum q^(k^2):", verify_congruence(res[4], squares, 5000).status)

# %% Families of progressions from quadratic nonresidues.
for p in (5, 7, 11):
    claims = qr_family("scaled-3r-plus-1", p)
    ok = all(verify_congruence(res[4], c, 200).passed for c in claims)
    print(f"p={p}: {[(c.A, c.B) for c in claims]} all hold: {ok}")

# %% The 3r rule keyed on 3r differs from the one keyed on r exactly when 3 is a nonresidue.
for p in (5, 7, 11, 13):
    printed, corrected = qr_family("scaled-3r", p), qr_family("scaled-3r-corrected", p)
    hold = lambda cs: all(verify_congruence(res[4], c, 100).passed for c in cs)
    print(f"p={p} (3|p)={legendre(3, p):+d}: keyed on 3r holds {hold(printed)}, keyed on r holds {hold(corrected)}")
