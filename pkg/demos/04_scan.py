"""Searching for every vanishing progression c(An+B) = 0 mod m.

Run: python3 demos/04_scan.py
"""

# %%
from mockxi.congruence import primitive_filter, scan
from mockxi.factory import euler_product, pxi
from mockxi.series import Zmod, invert

# %% Partitions: the scanner rediscovers p(5n+4) = 0 mod 5.
p5 = invert(euler_product(1, 20 * 200, Zmod(5)))
print("partitions mod 5:", [(c.A, c.B) for c in primitive_filter(scan(p5, 5, 20, 200))])

# %% p_xi mod 4, A <= 16, 200 terms per class.
raw = scan(pxi(16 * 200 - 1, Zmod(4)), 4, 16, 200)
prim = primitive_filter(raw)
print(f"{len(raw)} classes, {len(prim)} primitive:")
for c in prim:
    print(f"  p_xi({c.A}n+{c.B}) = 0 mod 4")

# %% mod 8 and mod 3 with only 64 terms per class: a short scan is a list of
# candidates, each still to be checked further out.
for m in (3, 8):
    found = primitive_filter(scan(pxi(48 * 64 - 1, Zmod(m)), m, 48, 64))
    print(f"mod {m}, A <= 48:", [(c.A, c.B) for c in found])
