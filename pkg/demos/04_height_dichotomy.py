"""The height dichotomy: some series only admit quadratic-height certificates.

For f2 = 2F1(-1/2, 1/2; 1; 16z), the reduced certificate at level k+1 is
P_1^(p + ... + p^(k+1)) / P_2^(p^(k+1) - 1) with exact height
(p/2)(p^(k+1) - 1) -- growth like p^(k+2), one factor of p beyond what a
uniform C p^level bound allows.  The binomial-square series f1 and the
Apery series, being p-Lucas, stay at height < p: linear-class behavior.
"""

from lucascert import RatFun, assemble_certificate, classify_evidence, default_catalog, series_mod_p

catalog = default_catalog()

print("exact height law for the f2 tower (reduced numerator/denominator powers):")
for p in (3, 5, 7):
    P1 = series_mod_p(catalog["f1"], p, p).poly()
    P2 = series_mod_p(catalog["f2"], p, p).poly()
    heights = []
    for k in range(3):
        exp_num = sum(p**j for j in range(1, k + 2))
        B = RatFun(P1**exp_num, P2 ** (p ** (k + 1) - 1))
        heights.append(B.height)
    expected = [p * (p ** (k + 1) - 1) // 2 for k in range(3)]
    print(f"  p={p}: heights {heights}  (closed form (p/2)(p^(k+1)-1) = {expected})")

print()
print("evidence report for f1 (expected: linear class):")
certs = [assemble_certificate(catalog["f1"], p, T=600) for p in (3, 5, 7)]
report = classify_evidence(certs)
for row in report["rows"]:
    print(f"  p={row['p']}: height {row['height']}, height/p^l = {row['ratio_l']}")
print("  verdict:", report["verdict"])

print()
print("evidence report for f2 (expected: quadratic class only):")
certs = [assemble_certificate(catalog["f2"], p, T=max(1000, 14 * p**3)) for p in (3, 5, 7)]
report = classify_evidence(certs)
for row in report["rows"]:
    print(f"  p={row['p']}: height {row['height']}, height/p^l = {row['ratio_l']}, "
          f"height/p^(2l) = {row['ratio_l2']}")
print("  verdict:", report["verdict"])
