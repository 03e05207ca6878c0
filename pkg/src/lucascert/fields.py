"""Exact coefficient fields: the rationals and prime fields F_p.

Elements are plain Python objects -- `fractions.Fraction` over Q and
reduced int residues in [0, p) over F_p -- so that the hot loops stay
free of wrapper overhead.  A field object carries the arithmetic and is
attached to every Poly / TruncSeries so mixed-field operations fail loudly.
All values are immutable; field objects are stateless and hashable.
"""

from fractions import Fraction

from .errors import NotPLocal

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, valid for all n < 3.3 * 10^24."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RationalField:
    """The field Q with Fraction elements.  Use the QQ singleton."""

    zero = Fraction(0)
    one = Fraction(1)
    char = 0

    def __call__(self, value):
        return Fraction(value)

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return a == 0

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PrimeField:
    """F_p with int residues in [0, p).  Instances are cached per prime."""

    _cache = {}
    char = None  # set per instance

    def __new__(cls, p):
        field = cls._cache.get(p)
        if field is None:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            field = super().__new__(cls)
            field.p = p
            field.char = p
            field.zero = 0
            field.one = 1 % p
            cls._cache[p] = field
        return field

    def __call__(self, value):
        return self.coerce(value)

    def coerce(self, value):
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return reduce_rat_mod_p(value, self.p)
        raise TypeError(f"cannot coerce {value!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def GF(p):
    return PrimeField(p)


def reduce_rat_mod_p(q, p):
    """Reduce a p-local rational to its residue in [0, p).

    Raises NotPLocal when p divides the denominator, i.e. q is not in Z_(p).
    """
    q = Fraction(q)
    den = q.denominator
    if den % p == 0:
        raise NotPLocal(p, value=q)
    return q.numerator * pow(den, -1, p) % p
