"""Truncated power series, the carrier of every mod-p computation.

A TruncSeries stores exactly T coefficients (orders 0..T-1) over Q or F_p.
Arithmetic between two series truncates to the shorter operand; the library
never extends a series silently.  Equality is always "to order T" and the
comparison helpers make the certified order explicit.

Includes the section/Cartier operator family: cartier(f, p, r) extracts the
coefficients of index r mod p, compose_power substitutes z -> z^(p^k), and
delta applies the Euler operator z d/dz.
"""

from fractions import Fraction

from .errors import NotPLocal, NotSeriesExpandable
from .fields import QQ, PrimeField, reduce_rat_mod_p
from .poly import Poly, _kronecker_mul

_KRONECKER_CUTOFF = 24


class TruncSeries:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(field.coerce(c) for c in coeffs)

    @classmethod
    def from_list(cls, field, coeffs, T=None):
        cs = list(coeffs)
        if T is not None:
            if len(cs) < T:
                raise ValueError(f"need {T} coefficients, got {len(cs)}")
            cs = cs[:T]
        return cls(field, cs)

    @classmethod
    def zero(cls, field, T):
        return cls(field, [field.zero] * T)

    @classmethod
    def one(cls, field, T):
        return cls(field, [field.one] + [field.zero] * (T - 1))

    @classmethod
    def from_poly(cls, p, T):
        cs = list(p.coeffs[:T])
        cs += [p.field.zero] * (T - len(cs))
        return cls(p.field, cs)

    @property
    def T(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, T):
        if T > len(self.coeffs):
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.field, self.coeffs[:T])

    def is_zero(self):
        return all(self.field.is_zero(c) for c in self.coeffs)

    def poly(self):
        """The coefficients as a polynomial (trailing zeros dropped)."""
        return Poly(self.field, self.coeffs)

    def _check(self, other):
        if not isinstance(other, TruncSeries) or other.field != self.field:
            raise TypeError("series fields do not match")

    # -- ring operations (result T = min of operand T's) -----------------

    def __add__(self, other):
        self._check(other)
        f = self.field
        T = min(len(self.coeffs), len(other.coeffs))
        return TruncSeries(f, [f.add(a, b) for a, b in zip(self.coeffs, other.coeffs)][:T])

    def __sub__(self, other):
        self._check(other)
        f = self.field
        T = min(len(self.coeffs), len(other.coeffs))
        return TruncSeries(f, [f.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)][:T])

    def __neg__(self):
        f = self.field
        return TruncSeries(f, [f.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        self._check(other)
        f = self.field
        T = min(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs[:T], other.coeffs[:T]
        if isinstance(f, PrimeField) and T >= _KRONECKER_CUTOFF:
            return TruncSeries(f, _kronecker_mul(a, b, f.p)[:T])
        out = [f.zero] * T
        for i, x in enumerate(a):
            if f.is_zero(x):
                continue
            for j in range(T - i):
                y = b[j]
                if not f.is_zero(y):
                    out[i + j] = f.add(out[i + j], f.mul(x, y))
        return TruncSeries(f, out)

    def mul_poly(self, p):
        """Multiply by an exact polynomial; keeps this series' truncation order."""
        if p.field != self.field:
            raise TypeError("series/polynomial fields do not match")
        f = self.field
        T = len(self.coeffs)
        if p.is_zero():
            return TruncSeries.zero(f, T)
        if isinstance(f, PrimeField) and T >= _KRONECKER_CUTOFF:
            return TruncSeries(f, _kronecker_mul(self.coeffs, p.coeffs, f.p)[:T])
        out = [f.zero] * T
        for i, x in enumerate(p.coeffs):
            if f.is_zero(x):
                continue
            for j in range(T - i):
                y = self.coeffs[j]
                if not f.is_zero(y):
                    out[i + j] = f.add(out[i + j], f.mul(x, y))
        return TruncSeries(f, out)

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        return TruncSeries(f, [f.mul(c, a) for a in self.coeffs])

    def inverse(self):
        """Multiplicative inverse to the same order; needs a unit constant term."""
        f = self.field
        if not self.coeffs or f.is_zero(self.coeffs[0]):
            raise ZeroDivisionError("series constant term is zero")
        T = len(self.coeffs)
        inv0 = f.inv(self.coeffs[0])
        out = [inv0] + [f.zero] * (T - 1)
        for n in range(1, T):
            acc = f.zero
            for k in range(1, n + 1):
                ck = self.coeffs[k]
                if not f.is_zero(ck):
                    acc = f.add(acc, f.mul(ck, out[n - k]))
            out[n] = f.neg(f.mul(inv0, acc))
        return TruncSeries(f, out)

    def __pow__(self, e):
        result = TruncSeries.one(self.field, len(self.coeffs))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def div_poly(self, p):
        """Divide by a polynomial with unit constant term, to the same order.

        O(T * deg p) via the linear recurrence, much cheaper than a generic
        series inverse when the divisor is short.
        """
        if p.field != self.field:
            raise TypeError("series/polynomial fields do not match")
        f = self.field
        if p.is_zero() or f.is_zero(p.coeffs[0]):
            raise ZeroDivisionError("divisor constant term is zero")
        inv0 = f.inv(p.coeffs[0])
        T = len(self.coeffs)
        out = []
        for m in range(T):
            acc = self.coeffs[m]
            for j in range(1, min(len(p.coeffs), m + 1)):
                pj = p.coeffs[j]
                if not f.is_zero(pj):
                    acc = f.sub(acc, f.mul(pj, out[m - j]))
            out.append(f.mul(inv0, acc))
        return TruncSeries(f, out)

    # -- section operators -------------------------------------------------

    def cartier(self, p, r=0):
        """Section operator: coefficient n of the output is coefficient np+r.

        r = 0 is the Cartier operator Lambda_p.  Output order is
        ceil((T - r) / p).
        """
        if not 0 <= r < p:
            raise ValueError("need 0 <= r < p")
        return TruncSeries(self.field, self.coeffs[r::p])

    def compose_power(self, p, k, out_len=None):
        """Substitute z -> z^(p^k).

        Sound for any out_len <= T * p^k: every requested coefficient is
        either an input coefficient (index divisible by p^k) or exactly 0.
        Defaults to the input truncation order.
        """
        q = p**k
        T = len(self.coeffs)
        if out_len is None:
            out_len = T
        if out_len > T * q:
            raise ValueError("requested order exceeds what the input determines")
        f = self.field
        out = [f.zero] * out_len
        for i, c in enumerate(self.coeffs):
            if i * q >= out_len:
                break
            out[i * q] = c
        return TruncSeries(f, out)

    def delta(self):
        """Euler operator z d/dz: coefficient n maps to n * a(n)."""
        f = self.field
        return TruncSeries(f, [f.mul(f.coerce(n), c) for n, c in enumerate(self.coeffs)])

    # -- comparisons ---------------------------------------------------------

    def eq_to_order(self, other, T=None):
        """Equality of the first T coefficients (default: shorter length)."""
        self._check(other)
        limit = min(len(self.coeffs), len(other.coeffs))
        if T is not None:
            if T > limit:
                raise ValueError(f"cannot compare to order {T}, only {limit} known")
            limit = T
        f = self.field
        return all(
            f.is_zero(f.sub(a, b))
            for a, b in zip(self.coeffs[:limit], other.coeffs[:limit])
        )

    def first_difference(self, other):
        """Index of the first differing coefficient, or None up to min length."""
        self._check(other)
        f = self.field
        for i, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if not f.is_zero(f.sub(a, b)):
                return i
        return None

    def __eq__(self, other):
        return (
            isinstance(other, TruncSeries)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if len(self.coeffs) > 8 else ""
        return f"TruncSeries[T={len(self.coeffs)}]({head}{tail})"


def reduce_series_mod_p(f, p):
    """Coefficientwise reduction of a Q-series into F_p.

    Raises NotPLocal with the offending index if some coefficient has p in
    its denominator.
    """
    if f.field != QQ:
        raise TypeError("input must be a series over Q")
    out = []
    for i, c in enumerate(f.coeffs):
        if c.denominator % p == 0:
            raise NotPLocal(p, value=c, index=i)
        out.append(reduce_rat_mod_p(c, p))
    return TruncSeries(PrimeField(p), out)


def ratfun_series(a, T):
    """Expand a rational function with no pole at 0 to order T."""
    if a.has_pole_at_zero():
        raise NotSeriesExpandable(f"{a!r} has a pole at 0")
    num = TruncSeries.from_poly(a.num, T)
    den = TruncSeries.from_poly(a.den, T)
    return num * den.inverse()


def section_decomposition(f, p):
    """The p sections f_r = cartier(f, p, r); satisfies f = sum z^r f_r(z^p)."""
    return [f.cartier(p, r) for r in range(p)]


def q_series(coeffs):
    return TruncSeries(QQ, [Fraction(c) for c in coeffs])
