"""Reducing exact series mod p and testing the Lucas congruence.

The central binomial squares sum C(2n,n)^2 z^n and the Apery series are
classic examples whose coefficients satisfy a(r + mp) = a(r) a(m) mod p
for every prime p.  Equivalently, the reduction mod p satisfies
f|_p(z) = P(z) f|_p(z^p) with P the p-truncation, which makes f|_p
algebraic over F_p(z) of small degree.
"""

from lucascert import default_catalog, gen_terms, p_lucas_check, series_mod_p

catalog = default_catalog()

print("First Apery numbers:", gen_terms(catalog["apery"], 8))
print("First coefficients of f2:", gen_terms(catalog["f2"], 8))
print()

for name in ("g1", "g2", "g3", "apery"):
    for p in (3, 5, 7):
        ok, witness = p_lucas_check(catalog[name], p, 600)
        print(f"{name}: p-Lucas at p={p} up to 600 -> {ok}")

print()
print("f2 is NOT p-Lucas; the first violation at p=5:")
ok, witness = p_lucas_check(catalog["f2"], 5, 200)
r, m = witness
print(f"  a({r} + {m}*5) != a({r}) * a({m}) mod 5  (ok={ok})")

print()
print("f2 mod 3, first 12 coefficients:", series_mod_p(catalog["f2"], 3, 12).coeffs)
print("f1 mod 3, first 12 coefficients:", series_mod_p(catalog["f1"], 3, 12).coeffs)
print("note: Lambda_3(f2|3) = f1|3, the first hint of the certificate structure.")
