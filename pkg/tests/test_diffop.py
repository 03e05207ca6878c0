import json
from fractions import Fraction
from math import comb

import pytest

from lucascert import (
    GF,
    QQ,
    BadPrime,
    LeadingZero,
    NotMomAtZero,
    Poly,
    RatFun,
    default_catalog,
    diffop_from_json,
    diffop_from_polys,
    diffop_to_json,
    expand,
    good_primes,
    indicial_at_zero,
    infinity_transform,
    is_mom,
    p_curvature,
    q_series,
    recurrence_from,
    reduce_op_mod_p,
    singularities,
    to_d,
    to_delta,
)

CAT = default_catalog()
L_2F1 = CAT["f2"].operator  # z(1-16z) d^2 + (1-16z) d + 4
L_APERY = CAT["apery"].operator


def qpoly(ints):
    return Poly(QQ, [Fraction(v) for v in ints])


# -- basis conversions ---------------------------------------------------------


def test_to_delta_2f1():
    # by hand: z^2 L = (1-16z) delta^2 + 4z after stripping one z
    Ld = to_delta(L_2F1)
    expected = diffop_from_polys(QQ, "delta", [[0, 4], [], [1, -16]])
    assert Ld.equals_up_to_factor(expected)


def test_to_delta_order_one():
    # d/dz: z * L = delta
    L = diffop_from_polys(QQ, "d", [[], [1]])
    Ld = to_delta(L)
    expected = diffop_from_polys(QQ, "delta", [[], [1]])
    assert Ld.equals_up_to_factor(expected)


def test_to_delta_identity_on_delta_input():
    L = diffop_from_polys(QQ, "delta", [[1], [2, 3]])
    assert to_delta(L) is L


def test_to_d_2f1():
    Ld = diffop_from_polys(QQ, "delta", [[0, 4], [], [1, -16]])
    got = to_d(Ld)
    assert got.equals_up_to_factor(L_2F1)


def test_to_d_delta():
    L = diffop_from_polys(QQ, "delta", [[], [1]])
    expected = diffop_from_polys(QQ, "d", [[], [0, 1]])  # z d/dz
    assert to_d(L).equals_up_to_factor(expected)


def test_roundtrip_apery_up_to_factor():
    back = to_d(to_delta(L_APERY))
    assert back.equals_up_to_factor(L_APERY)


def test_roundtrip_preserves_annihilation():
    # both forms of each catalog operator kill the truncated series, T = 120
    for name in ("g1", "g2", "g3", "f2", "f3", "apery"):
        entry = CAT[name]
        f = q_series([Fraction(c) for c in __import__("lucascert").gen_terms(entry, 120)])
        L = entry.operator
        assert to_delta(L).apply(f).is_zero(), name
        assert to_d(to_delta(L)).apply(f).is_zero(), name


# -- singularities ----------------------------------------------------------------


def test_singularities_2f1():
    rep = singularities(L_2F1)
    factors = sorted(str(f) for f, _ in rep.finite_points)
    assert factors == ["-1/16 + z", "z"]
    assert all(reg for _, reg in rep.finite_points)
    assert rep.infinity == "regular"
    assert rep.count_r == 2
    assert rep.is_fuchsian()


def test_singularities_d2():
    L = diffop_from_polys(QQ, "d", [[], [], [1]])  # d^2/dz^2
    rep = singularities(L)
    assert rep.finite_points == ()
    assert rep.count_r == 0
    # degree criterion reports infinity as regular (indeed 1, z are the solutions)
    assert rep.infinity == "regular"


def test_singularities_apery():
    rep = singularities(L_APERY)
    factors = sorted((str(f), f.degree()) for f, _ in rep.finite_points)
    assert factors == [("1 + -34*z + z^2", 2), ("z", 1)]
    assert rep.count_r == 3


def test_singularity_irregular_example():
    # z^2 d/dz + 1 has an irregular singular point at 0 (pole order 2 > 1)
    L = diffop_from_polys(QQ, "d", [[1], [0, 0, 1]])
    rep = singularities(L)
    assert [(str(f), reg) for f, reg in rep.finite_points] == [("z", False)]
    assert not rep.is_fuchsian()


# -- indicial polynomial, MOM -------------------------------------------------------


def test_indicial_2f1_is_x_squared():
    assert indicial_at_zero(L_2F1) == qpoly([0, 0, 1])


def test_indicial_delta_minus_c():
    L = diffop_from_polys(QQ, "delta", [[-7], [1]])
    assert indicial_at_zero(L) == qpoly([-7, 1])


def test_indicial_apery_is_x_cubed():
    assert indicial_at_zero(L_APERY) == qpoly([0, 0, 0, 1])


def test_indicial_raises_on_pole_at_zero():
    from lucascert import DiffOp, NotSeriesExpandable, RatFun

    # delta + 1/z: the normalized delta coefficient has a pole at 0
    L = DiffOp(
        QQ,
        "delta",
        [RatFun.one(QQ), RatFun(Poly.one(QQ), Poly(QQ, [Fraction(0), Fraction(1)]))],
    )
    with pytest.raises(NotSeriesExpandable):
        indicial_at_zero(L)
    assert not is_mom(L)


def test_is_mom():
    assert is_mom(L_2F1)
    assert is_mom(L_APERY)
    assert not is_mom(diffop_from_polys(QQ, "delta", [[-1], [1]]))  # indicial x - 1


def test_is_mom_order_one_ordinary_point():
    # (1-4z) d - 2: zero is an ordinary point with exponent 0; counted as MOM
    assert is_mom(CAT["g1"].operator)


def test_is_mom_survives_reduction_at_good_primes():
    for name in ("f2", "apery"):
        L = CAT[name].operator
        for p in good_primes(L, 7):
            assert is_mom(reduce_op_mod_p(L, p)), (name, p)


# -- infinity transform ---------------------------------------------------------------


def test_infinity_transform_delta_sign_flip():
    L = diffop_from_polys(QQ, "delta", [[], [1]])  # delta
    Linf = infinity_transform(L)
    expected = diffop_from_polys(QQ, "d", [[], [0, 1]])  # z d/dz up to sign
    assert to_delta(Linf).equals_up_to_factor(to_delta(expected))
    # delta maps to -delta, so the indicial root stays 0
    assert indicial_at_zero(Linf) == qpoly([0, 1])


def test_infinity_transform_2f1_exponents():
    # exponents at infinity of 2F1(-1/2, 1/2; 1) are {-1/2, 1/2}
    Linf = infinity_transform(L_2F1)
    ind = indicial_at_zero(Linf)
    assert ind == qpoly([Fraction(-1, 4), 0, 1])  # (x-1/2)(x+1/2)


def test_infinity_transform_involution():
    for L in (L_2F1, L_APERY, CAT["g1"].operator):
        twice = infinity_transform(infinity_transform(L))
        assert twice.equals_up_to_factor(to_d(L))


def test_exponent_duality_on_catalog():
    # indicial of the transform = indicial at infinity, consistent with the
    # degree criterion verdict on regularity
    for name in ("g1", "g2", "f2", "apery"):
        L = CAT[name].operator
        rep = singularities(L)
        Linf = infinity_transform(L)
        ind = indicial_at_zero(Linf)  # must exist when infinity is regular
        assert ind.degree() == L.order
        assert rep.infinity == "regular"


# -- reduction mod p --------------------------------------------------------------------


def test_reduce_2f1_mod_3():
    Lp = reduce_op_mod_p(L_2F1, 3)
    F3 = GF(3)
    # 16 = 1 and 4 = 1 mod 3: z(1-z) d^2 + (1-z) d + 1
    expected = diffop_from_polys(F3, "d", [[1], [1, -16], [0, 1, -16]])
    assert Lp.basis == "d" and Lp.order == 2
    assert [c for c in Lp.coeffs] == [c for c in expected.coeffs]


def test_reduce_structural_image():
    Lp = reduce_op_mod_p(L_APERY, 7)
    assert Lp.order == 3
    assert Lp.field == GF(7)


def test_reduce_bad_prime_on_denominator():
    L = diffop_from_polys(QQ, "d", [[Fraction(1, 3)], [1]])
    with pytest.raises(BadPrime):
        reduce_op_mod_p(L, 3)
    # fine at other primes
    assert reduce_op_mod_p(L, 5).order == 1


def test_reduce_bad_prime_on_killed_leading():
    # 3 z d/dz + 1: clearing leaves leading content 3
    L = diffop_from_polys(QQ, "d", [[1], [0, 3]])
    with pytest.raises(BadPrime):
        reduce_op_mod_p(L, 3)


# -- p-curvature ---------------------------------------------------------------------


def test_p_curvature_trivial():
    F5 = GF(5)
    L = diffop_from_polys(F5, "d", [[], [1]])  # d/dz
    M, nil = p_curvature(L)
    assert nil and M[0][0].is_zero()


def test_p_curvature_2f1_mod_3_nilpotent():
    _, nil = p_curvature(reduce_op_mod_p(L_2F1, 3))
    assert nil


def test_p_curvature_exponential_not_nilpotent():
    # d/dz - c for c in F_p^*: A_p = c^p = c != 0; no algebraic solutions
    F5 = GF(5)
    for c in range(1, 5):
        L = diffop_from_polys(F5, "d", [[-c], [1]])
        M, nil = p_curvature(L)
        assert not nil
        assert M[0][0] == RatFun.constant(F5, pow(c, 5, 5))


def test_p_curvature_euler_operator_is_nilpotent():
    # delta - c with c in F_p has the rational solution z^c, so the
    # d/dz-companion iteration yields the falling factorial c(c-1)...(c-p+1)
    # = c^p - c = 0: nilpotent for every integer exponent
    F5 = GF(5)
    for c in range(5):
        L = diffop_from_polys(F5, "delta", [[-c], [1]])
        _, nil = p_curvature(L)
        assert nil


def test_p_curvature_nilpotent_on_catalog_good_primes():
    for name in ("g1", "g2", "g3", "f2", "f3", "apery"):
        L = CAT[name].operator
        for p in good_primes(L, 13):
            _, nil = p_curvature(reduce_op_mod_p(L, p))
            assert nil, (name, p)


# -- good primes ------------------------------------------------------------------------


def test_good_primes_2f1():
    assert good_primes(L_2F1, 20) == [3, 5, 7, 11, 13, 17, 19]


def test_good_primes_apery_excludes_2_and_3():
    # disc(z^2 - 34 z + 1) = 1152 = 2^7 * 3^2
    assert good_primes(L_APERY, 20) == [5, 7, 11, 13, 17, 19]


def test_good_primes_zero_only_singularity():
    # delta - 5 in d-basis: z d/dz - 5, only singular point is 0
    L = diffop_from_polys(QQ, "d", [[-5], [0, 1]])
    assert good_primes(L, 20) == [2, 3, 5, 7, 11, 13, 17, 19]


def test_good_primes_subset_of_reducible():
    for name in ("g1", "g2", "g3", "f2", "f3", "apery"):
        L = CAT[name].operator
        r = singularities(L).count_r
        for p in good_primes(L, 13):
            Lp = reduce_op_mod_p(L, p)  # must not raise
            assert Lp.order == L.order
            assert singularities(Lp).count_r <= r


# -- recurrences -------------------------------------------------------------------------


def test_recurrence_2f1():
    rec = recurrence_from(L_2F1)
    assert rec.span == 1
    assert rec.polys[0] == qpoly([0, 0, 1])  # m^2
    # m^2 a_m = (16(m-1)^2 - 4) a_{m-1}: Q_1(x) = -(16 x^2 - 4)
    assert rec.polys[1] == qpoly([4, 0, -16])
    s = expand(rec, [Fraction(1)], 4)
    assert list(s.coeffs) == [1, -4, -12, -80]
    # closed form oracle: -C(2n,n)^2/(2n-1)
    assert list(s.coeffs) == [Fraction(-(comb(2 * n, n) ** 2), 2 * n - 1) for n in range(4)]


def test_recurrence_delta_power_constants_only():
    L = diffop_from_polys(QQ, "delta", [[], [], [1]])  # delta^2
    rec = recurrence_from(L)
    assert rec.span == 0
    s = expand(rec, [Fraction(1)], 6)
    assert list(s.coeffs) == [1, 0, 0, 0, 0, 0]


def test_recurrence_apery():
    rec = recurrence_from(L_APERY)
    assert rec.span == 2
    assert rec.polys[0] == qpoly([0, 0, 0, 1])
    s = expand(rec, [Fraction(1)], 4)
    # oracle: double binomial sum
    oracle = [
        sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1)) for n in range(4)
    ]
    assert list(s.coeffs) == oracle == [1, 5, 73, 1445]


def test_recurrence_not_mom():
    L = diffop_from_polys(QQ, "delta", [[-1], [1]])  # delta - 1
    with pytest.raises(NotMomAtZero):
        recurrence_from(L)


def test_expand_leading_zero():
    # recurrence with Q_0 = (m - 2): vanishes at m = 2
    from lucascert import Recurrence

    rec = Recurrence((qpoly([-2, 1]), qpoly([1])), 1)
    with pytest.raises(LeadingZero) as err:
        expand(rec, [Fraction(1)], 6)
    assert err.value.index == 2


# -- operator JSON -------------------------------------------------------------------------


def test_json_roundtrip():
    for name in ("g1", "f2", "f3", "apery"):
        L = CAT[name].operator
        data = json.loads(json.dumps(diffop_to_json(L)))
        back = diffop_from_json(data)
        assert back.basis == L.basis
        assert back.equals_up_to_factor(L)


def test_json_parse_errors():
    from lucascert import ParseError

    with pytest.raises(ParseError):
        diffop_from_json("{not json")
    with pytest.raises(ParseError):
        diffop_from_json({"basis": "q", "coeffs": [{"num": [1]}]})
    with pytest.raises(ParseError):
        diffop_from_json({"basis": "d", "coeffs": [{"num": [1], "den": []}]})
