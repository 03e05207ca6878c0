"""The uniform part Y and the weak Frobenius matrix F, computed over Q.

For a MOM operator with delta-companion G, the system delta Y = G Y - Y G(0)
has a unique matrix solution with Y(0) = I (the uniform part); its first
column is the distinguished solution vector (f, delta f, ...).  The matrix

    F = [delta(Lambda_p Y) + (1/p) Lambda_p(Y) G(0)] (Lambda_p Y)^(-1)

satisfies p F(0) = G(0) exactly, and its last row annihilates the Cartier
image (Lambda_p f, Lambda_p delta f, ...): the operator equation satisfied
by Lambda_p f can be read off from it.  Everything here is exact rational
arithmetic; powers of 1/p appear as honest fractions.
"""

from lucascert import (
    cartier_row_residual,
    default_catalog,
    frobenius_shadow,
    series_over_q,
)

catalog = default_catalog()
T = 150


def _delta_pow(f, k):
    for _ in range(k):
        f = f.delta()
    return f


for name, p in (("f2", 3), ("f2", 5), ("apery", 5)):
    entry = catalog[name]
    f = series_over_q(entry, T)
    shadow = frobenius_shadow(entry.operator, p, T, solution=f)
    n = len(shadow.F)
    print(f"== {name}, p = {p}, T = {T}")
    print("   F(0) =", [[str(shadow.F[i][j][0]) for j in range(n)] for i in range(n)])
    print("   first column of Y equals (f, delta f, ...):",
          all(shadow.Y[i][0].eq_to_order(_delta_pow(f, i), T) for i in range(n)))
    order = T // p - 2
    residual = cartier_row_residual(shadow, f, order=order)
    print(f"   last-row relation on the Cartier vector vanishes to order {order}:",
          residual.is_zero())
    print()
