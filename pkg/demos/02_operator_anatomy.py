"""Anatomy of an annihilating operator: singular points, exponents, MOM.

The operator z(1-16z) d^2 + (1-16z) d + 4 kills the hypergeometric series
2F1(-1/2, 1/2; 1; 16z).  It is Fuchsian, its singular points are 0, 1/16
and infinity, and all exponents at zero vanish: maximal order multiplicity
(MOM) at zero.  Good primes are those preserving this geometry mod p.
"""

from lucascert import (
    default_catalog,
    exponents_at_zero,
    good_primes,
    indicial_at_zero,
    infinity_transform,
    is_mom,
    p_curvature,
    recurrence_from,
    reduce_op_mod_p,
    singularities,
    to_delta,
)
from lucascert.poly import format_poly

catalog = default_catalog()

for name in ("f2", "apery"):
    L = catalog[name].operator
    print(f"== operator of {name}: {L}")
    print("   delta form:", to_delta(L))
    rep = singularities(L)
    print("   finite singular factors:", [(str(f), "regular" if r else "irregular")
                                          for f, r in rep.finite_points])
    print("   infinity:", rep.infinity, "| count r =", rep.count_r)
    print("   indicial at 0:", format_poly(indicial_at_zero(L), var="x"),
          "| MOM:", is_mom(L))
    print("   exponents at infinity:",
          [str(e) for e in exponents_at_zero(infinity_transform(L))] or "(irrational)")
    print("   good primes up to 30:", good_primes(L, 30))
    rec = recurrence_from(L)
    print("   recurrence span:", rec.span,
          "| leading poly:", format_poly(rec.polys[0], var="m"))
    for p in good_primes(L, 7):
        _, nilpotent = p_curvature(reduce_op_mod_p(L, p))
        print(f"   p-curvature mod {p} nilpotent: {nilpotent}")
    print()
