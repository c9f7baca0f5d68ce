"""Extracting arithmetic progressions of p_xi and matching them to eta quotients.

Run: python3 demos/02_dissections.py
"""

# %%
from mockxi.factory import pxi
from mockxi.qexpr import SeriesCache, evaluate, parse_corpus_line
from mockxi.series import first_mismatch

cache = SeriesCache()
cache.seed("xi", pxi(3000))

# %% part(E, A, r) is the series sum c(An+r) q^n of E.
for line in [
    "part(xi(q),3,0) == f_2*f_3^4/(f_1^2*f_6^2)",
    "part(xi(q),3,1) == 2*f_3*f_6/f_1",
    "part(xi(q),3,2) == omega(q) + f_6^4/(f_2*f_3^2)",
    "part(xi(q),12,7) == 4*f_3*f_4^2*f_6/f_1^3",
]:
    c = parse_corpus_line(line)
    a, b = evaluate(c.lhs, 200, cache=cache), evaluate(c.rhs, 200, cache=cache)
    print(f"{line:55s} first mismatch to order 200: {first_mismatch(a, b)}")

# %% A wrong exponent shows up within a few terms.
a = evaluate("part(xi(q),12,10)", 100, cache=cache)
for rhs in ["4*f_2^3*f_3^2*f_12^2/(f_1^4*f_6^2)", "4*f_2^3*f_3^2*f_12^2/(f_1^4*f_6)"]:
    print(f"{rhs:40s} first mismatch: {first_mismatch(a, evaluate(rhs, 100))}")
