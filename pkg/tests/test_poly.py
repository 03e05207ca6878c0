import random
from fractions import Fraction
from math import comb

from lucascert import GF, QQ, Poly


def to_poly(field, ints):
    return Poly(field, [field.coerce(v) for v in ints])


def rand_poly(rng, field, max_deg, scale=9):
    deg = rng.randrange(max_deg + 1)
    if field == QQ:
        cs = [Fraction(rng.randrange(-scale, scale + 1)) for _ in range(deg + 1)]
    else:
        cs = [rng.randrange(field.p) for _ in range(deg + 1)]
    return Poly(field, cs)


def test_gcd_factor_case():
    a = to_poly(QQ, [-1, 0, 1])  # z^2 - 1
    b = to_poly(QQ, [-1, 1])  # z - 1
    assert a.gcd(b) == b


def test_gcd_with_zero_is_monic():
    a = to_poly(QQ, [2, 4])
    assert a.gcd(Poly.zero(QQ)) == to_poly(QQ, [Fraction(1, 2), 1]).monic()
    assert Poly.zero(QQ).gcd(Poly.zero(QQ)).is_zero()


def test_gcd_truncation_of_f2_mod_3_is_separable():
    # oracle: P_{2,3} from the coefficient formula -C(2n,n)^2/(2n-1) reduced mod 3
    coeffs = []
    for n in range(3):
        val = Fraction(-(comb(2 * n, n) ** 2), 2 * n - 1)
        coeffs.append(val.numerator * pow(val.denominator, -1, 3) % 3)
    F3 = GF(3)
    P = Poly(F3, coeffs)
    assert P == to_poly(F3, [1, 2])  # 1 + 2z
    # Euclid by hand: gcd(1 + 2z, 2) = 1
    assert P.gcd(P.derivative()) == Poly.one(F3)


def test_divmod_roundtrip_randomized():
    rng = random.Random(99)
    for field in (QQ, GF(5), GF(13)):
        for _ in range(200):
            a = rand_poly(rng, field, 8)
            b = rand_poly(rng, field, 5)
            if b.is_zero():
                continue
            q, r = a.divmod(b)
            assert q * b + r == a
            assert r.is_zero() or r.degree() < b.degree()


def test_gcd_divides_both_and_is_greatest():
    rng = random.Random(4242)
    for field in (QQ, GF(7)):
        for _ in range(200):
            a = rand_poly(rng, field, 6)
            b = rand_poly(rng, field, 6)
            c = rand_poly(rng, field, 3)
            a, b = a * c, b * c  # force a common divisor
            g = a.gcd(b)
            if a.is_zero() and b.is_zero():
                assert g.is_zero()
                continue
            assert (a % g).is_zero() if not a.is_zero() else True
            assert (b % g).is_zero() if not b.is_zero() else True
            if not c.is_zero():
                assert (g % c.monic()).is_zero()


def test_power_matches_repeated_multiplication():
    rng = random.Random(17)
    for field in (QQ, GF(3)):
        a = rand_poly(rng, field, 4)
        prod = Poly.one(field)
        for e in range(6):
            assert a**e == prod
            prod = prod * a


def test_kronecker_matches_schoolbook():
    rng = random.Random(5)
    F = GF(7)
    for _ in range(50):
        a = Poly(F, [rng.randrange(7) for _ in range(rng.randrange(1, 120))])
        b = Poly(F, [rng.randrange(7) for _ in range(rng.randrange(1, 120))])
        out_len = len(a.coeffs) + len(b.coeffs) - 1
        if a.is_zero() or b.is_zero():
            continue
        school = [0] * out_len
        for i, x in enumerate(a.coeffs):
            for j, y in enumerate(b.coeffs):
                school[i + j] = (school[i + j] + x * y) % 7
        assert list((a * b).coeffs) + [0] * (out_len - len((a * b).coeffs)) == school


def recursive_resultant(a, b):
    """Textbook recursion oracle: Res(a,b) = lc(b)^(m-r) (-1)^(mn) Res(b, a mod b)."""
    m, n = a.degree(), b.degree()
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0:
        return a.coeffs[0] ** n
    if n == 0:
        return b.coeffs[0] ** m
    if m < n:
        return Fraction(-1) ** (m * n) * recursive_resultant(b, a)
    r = a % b
    rd = r.degree()
    if rd < 0:
        return Fraction(0)
    return (
        Fraction(-1) ** (m * n)
        * b.leading() ** (m - rd)
        * recursive_resultant(b, r)
    )


def test_resultant_matches_recursion_and_sympy_abs():
    import sympy

    rng = random.Random(31)
    x = sympy.Symbol("x")
    checked = 0
    for _ in range(60):
        a = rand_poly(rng, QQ, 4)
        b = rand_poly(rng, QQ, 4)
        if a.is_zero() or b.is_zero() or a.degree() < 1 or b.degree() < 1:
            continue
        got = a.resultant(b)
        assert got == recursive_resultant(a, b)
        sa = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(a.coeffs))
        sb = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(b.coeffs))
        # sympy's PRS sign convention can differ from the Sylvester determinant
        assert abs(sympy.Rational(got.numerator, got.denominator)) == abs(
            sympy.resultant(sa, sb, x)
        )
        checked += 1
    assert checked > 20


def test_discriminant_known_value():
    # z^2 - 34z + 1 has discriminant 34^2 - 4 = 1152
    a = to_poly(QQ, [1, -34, 1])
    assert a.discriminant() == 1152


def test_factor_over_q():
    a = to_poly(QQ, [0, 1]) * to_poly(QQ, [-1, 16])  # z(16z - 1)
    unit, factors = a.factor()
    monics = sorted(str(f) for f, _ in factors)
    assert monics == ["-1/16 + z", "z"]


def test_factor_over_fp():
    F5 = GF(5)
    a = to_poly(F5, [1, 0, 1])  # z^2 + 1 = (z-2)(z-3) over F_5
    _, factors = a.factor()
    assert [f.degree() for f, _ in factors] == [1, 1]
    prod = Poly.one(F5)
    for f, m in factors:
        prod = prod * f**m
    assert prod == a.monic()


def test_content_primitive():
    a = Poly(QQ, [Fraction(2, 3), Fraction(4, 3)])
    c, prim = a.content_primitive()
    assert prim == to_poly(QQ, [1, 2])
    assert prim.scale(c) == a
