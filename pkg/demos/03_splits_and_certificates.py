"""From the polynomial split to a verified algebraicity certificate.

Any nonzero solution of a MOM-at-zero operator mod p factors as
f(z) = P(z) c(z^p) with deg P <= p*d - 1 (d the recurrence span).  Two
independent constructions recover P; dividing by the Cartier image of P
then yields the one-step certificate f = A (Lambda_p f)^p, whose height
is at most n*r*p - 1.  Iterating and closing the Cartier orbit assembles
the full certificate f|_p(z) = A_p(z) f|_p(z^(p^l)).
"""

from lucascert import (
    assemble_certificate,
    certificate_prop62,
    default_catalog,
    orbit_detect,
    series_mod_p,
    split_elimination,
    split_pade,
)

catalog = default_catalog()
p = 3
f2 = series_mod_p(catalog["f2"], p, 600)

w1 = split_pade(f2, 1, p)
w2 = split_elimination(f2, 1, p)
print(f"split of f2 mod {p}: P = {w1.P}  (degree bound {w1.degree_bound})")
print(f"independent elimination route agrees: {w1.P == w2.P}")
print()

step = certificate_prop62(f2, 2, 2, p, series_name="f2")
print(f"one-step certificate: A = {step.A}, height {step.height} <= {step.bound}")
print(f"verified to order {step.verified_to}")
print()

orbit = orbit_detect(f2, p)
print(f"Cartier orbit of f2 mod {p}: preperiod {orbit.preperiod}, "
      f"period {orbit.period}, level {orbit.level}")
print()

for name in ("f1", "f2", "apery"):
    for q in (3, 5):
        if name == "apery" and q == 3:
            continue  # 3 is not a good prime for the Apery operator
        cert = assemble_certificate(catalog[name], q, T=800)
        print(f"{name} at p={q}: level {cert.level}, height {cert.height} "
              f"<= {cert.bound} ({cert.bound_kind}), verified to {cert.verified_to}")
