"""Named sequence catalog and congruence checks.

Every generator produces exact rational coefficients a(n) with a(0) = 1.
Shipped entries:

  g1, g2, g3     binomial powers  sum C(2n,n)^r z^n   (r = 1, 2, 3)
  f1             alias of g2 (the 2F1(1/2,1/2;1;16z) square of central binomials)
  f2, f3         sum -C(2n,n)^r/(2n-1) z^n            (r = 2, 3)
  apery / t      Apery numbers sum_k C(n,k)^2 C(n+k,k)^2
  cy210          C(2j,j) * sum_k (-1)^k C(2j,k)^4
  cy26           C(2j,j) * sum_k C(j,k)^2 C(j+k,k) C(2k,j)

Apery terms are produced by the classical three-term recurrence (exact
integer arithmetic, divisibility asserted); the quadruple-sum definition is
kept as the test oracle since it is quadratic in the truncation order.
Everything else is a direct big-integer binomial sum.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .diffop import DiffOp, diffop_from_json, diffop_from_polys, expand, recurrence_from
from .errors import ParseError, UnknownSeries
from .fields import QQ, is_prime, reduce_rat_mod_p
from .series import TruncSeries, reduce_series_mod_p

KINDS = ("binom_power", "f_r", "apery", "cy26", "cy210", "operator")


@dataclass(frozen=True)
class SeqGen:
    """Catalog entry: a named exact coefficient sequence with a(0) = 1."""

    name: str
    kind: str
    r: int = 0
    operator: DiffOp = None
    initial: tuple = (Fraction(1),)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")


_TERM_CACHE = {}


def gen_terms(g, T):
    """First T exact coefficients of the generator, as Fractions."""
    if T < 1:
        raise ValueError("T must be >= 1")
    key = _cache_key(g)
    cached = _TERM_CACHE.get(key)
    if cached is not None and len(cached) >= T:
        return cached[:T]
    terms = _generate(g, T)
    _TERM_CACHE[key] = terms
    return terms[:T]


def _cache_key(g):
    # closed forms are determined by (kind, r); operator entries by content
    if g.kind == "operator":
        from .diffop import diffop_to_json

        return (g.kind, json.dumps(diffop_to_json(g.operator)), g.initial)
    return (g.kind, g.r)


def _generate(g, T):
    if g.kind == "binom_power":
        return [Fraction(b**g.r) for b in _central_binomials(T)]
    if g.kind == "f_r":
        # -C(2n,n)^r / (2n-1) is an integer: C(2n,n)/(2n-1) = 2 Catalan(n-1)
        out = [Fraction(1)]
        for n, b in enumerate(_central_binomials(T)):
            if n == 0:
                continue
            quotient, rem = divmod(b, 2 * n - 1)
            assert rem == 0
            out.append(Fraction(-quotient * b ** (g.r - 1)))
        return out[:T]
    if g.kind == "apery":
        return [Fraction(v) for v in apery_numbers(T)]
    if g.kind == "cy210":
        return [Fraction(cy210_term(j)) for j in range(T)]
    if g.kind == "cy26":
        return [Fraction(cy26_term(j)) for j in range(T)]
    if g.kind == "operator":
        rec = recurrence_from(g.operator)
        return list(expand(rec, list(g.initial), T).coeffs)
    raise UnknownSeries(g.kind)


def _central_binomials(T):
    """C(0,0), C(2,1), C(4,2), ... by the exact multiplicative update."""
    out = [1]
    for n in range(1, T):
        out.append(out[-1] * (2 * (2 * n - 1)) // n)
    return out[:T]


def apery_numbers(T):
    """Apery numbers 1, 5, 73, 1445, ... by the three-term recurrence."""
    out = [1]
    if T > 1:
        out.append(5)
    for m in range(2, T):
        num = (34 * (m - 1) ** 3 + 51 * (m - 1) ** 2 + 27 * (m - 1) + 5) * out[m - 1] - (
            m - 1
        ) ** 3 * out[m - 2]
        q, rem = divmod(num, m**3)
        assert rem == 0, f"Apery recurrence not integral at m={m}"
        out.append(q)
    return out[:T]


def cy210_term(j):
    s = sum((-1 if k & 1 else 1) * comb(2 * j, k) ** 4 for k in range(2 * j + 1))
    return comb(2 * j, j) * s


def cy26_term(j):
    s = sum(comb(j, k) ** 2 * comb(j + k, k) * comb(2 * k, j) for k in range(j + 1))
    return comb(2 * j, j) * s


def series_over_q(g, T):
    return TruncSeries(QQ, gen_terms(g, T))


def series_mod_p(g, p, T):
    """f|_p to order T: exact expansion over Q, then coefficientwise reduction."""
    return reduce_series_mod_p(series_over_q(g, T), p)


# -- congruences ----------------------------------------------------------------


def lucas_binom(n, k, p):
    """C(n, k) mod p through base-p digits: the product of C(n_i, k_i)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        ni, n = n % p, n // p
        ki, k = k % p, k // p
        if ki > ni:
            return 0
        out = out * comb(ni, ki) % p
        if out == 0:
            return 0
    return out


def p_lucas_check(g, p, M):
    """Test a(r + mp) = a(r) a(m) mod p for all r in [0,p), m >= 1, r + mp <= M.

    Returns (True, None) or (False, (r, m)) with the first violation in
    lexicographic (m, r) order.  Coefficients must be p-local up to M.
    """
    terms = gen_terms(g, M + 1)
    if terms[0] != 1:
        raise ValueError("p-Lucas test requires a(0) = 1")
    residues = [reduce_rat_mod_p(t, p) for t in terms]
    for m in range(1, M // p + 1):
        am = residues[m]
        base = m * p
        for r in range(0, min(p, M - base + 1)):
            if residues[base + r] != residues[r] * am % p:
                return False, (r, m)
    return True, None


# -- built-in catalog --------------------------------------------------------------


def _op_d(ascending_polys):
    return diffop_from_polys(QQ, "d", ascending_polys)


def _op_delta(ascending_polys):
    return diffop_from_polys(QQ, "delta", ascending_polys)


def _build_default():
    # annihilators, in ascending derivative/delta order (constant term first)
    op_g1 = _op_d([[-2], [1, -4]])  # (1-4z) d/dz - 2
    op_g2 = _op_d([[-4], [1, -32], [0, 1, -16]])  # z(1-16z) d^2 + (1-32z) d - 4
    op_g3 = _op_delta([[0, -8], [0, -48], [0, -96], [1, -64]])  # (1-64z)delta^3 - 96z delta^2 - 48z delta - 8z
    op_f2 = _op_d([[4], [1, -16], [0, 1, -16]])  # z(1-16z) d^2 + (1-16z) d + 4
    op_f3 = _op_delta([[0, 8], [0, 16], [0, -32], [1, -64]])  # (1-64z)delta^3 - 32z delta^2 + 16z delta + 8z
    op_apery = _op_d(
        [
            [-5, 1],
            [1, -112, 7],
            [0, 3, -153, 6],
            [0, 0, 1, -34, 1],
        ]
    )
    entries = [
        SeqGen("g1", "binom_power", r=1, operator=op_g1),
        SeqGen("g2", "binom_power", r=2, operator=op_g2),
        SeqGen("f1", "binom_power", r=2, operator=op_g2),
        SeqGen("g3", "binom_power", r=3, operator=op_g3),
        SeqGen("f2", "f_r", r=2, operator=op_f2),
        SeqGen("f3", "f_r", r=3, operator=op_f3),
        SeqGen("apery", "apery", operator=op_apery),
        SeqGen("t", "apery", operator=op_apery),
        SeqGen("cy210", "cy210"),
        SeqGen("cy26", "cy26"),
    ]
    return {e.name: e for e in entries}


_DEFAULT = None


def default_catalog():
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = _build_default()
    return dict(_DEFAULT)


def lookup(name, catalog=None):
    catalog = catalog if catalog is not None else default_catalog()
    entry = catalog.get(name)
    if entry is None:
        raise UnknownSeries(f"no catalog entry named {name!r}")
    return entry


def hypergeometric_fr_operator(r):
    """The order-r annihilator delta^r - 4^r z (delta - 1/2)(delta + 1/2)^(r-1) of f_r."""
    from .poly import Poly

    half = Fraction(1, 2)
    # expand (x - 1/2)(x + 1/2)^(r-1) as a polynomial in x
    pol = Poly(QQ, [-half, Fraction(1)])
    plus = Poly(QQ, [half, Fraction(1)])
    for _ in range(r - 1):
        pol = pol * plus
    scale = Fraction(4**r)
    # delta^r - 4^r z * pol(delta): coefficient of delta^k is [k == r] - 4^r z pol_k
    ascending = []
    for k in range(r + 1):
        const = Fraction(1) if k == r else Fraction(0)
        zcoef = -scale * pol[k]
        ascending.append([const, zcoef])
    return _op_delta(ascending)


# -- catalog JSON -----------------------------------------------------------------


def catalog_to_json(catalog):
    out = []
    for entry in catalog.values():
        item = {"name": entry.name, "kind": entry.kind}
        if entry.kind in ("binom_power", "f_r"):
            item["r"] = entry.r
        if entry.operator is not None:
            from .diffop import diffop_to_json

            item["operator"] = diffop_to_json(entry.operator)
        if entry.kind == "operator":
            item["initial"] = [str(v) for v in entry.initial]
        out.append(item)
    return out


def catalog_from_json(data):
    """Parse catalog JSON (a list of entries); raises ParseError on bad input."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", location=f"char {exc.pos}") from exc
    if not isinstance(data, list):
        raise ParseError("catalog JSON must be an array of entries")
    catalog = {}
    for i, item in enumerate(data):
        loc = f"entry[{i}]"
        if not isinstance(item, dict) or "name" not in item or "kind" not in item:
            raise ParseError("entry must have name and kind", location=loc)
        kind = item["kind"]
        if kind not in KINDS:
            raise ParseError(f"unknown kind {kind!r}", location=loc)
        op = None
        if "operator" in item and item["operator"] is not None:
            op = diffop_from_json(item["operator"])
        initial = tuple(Fraction(v) for v in item.get("initial", ["1"]))
        entry = SeqGen(item["name"], kind, r=int(item.get("r", 0)), operator=op, initial=initial)
        catalog[entry.name] = entry
    return catalog


def load_catalog(path):
    with open(path, "r", encoding="utf-8") as fh:
        return catalog_from_json(fh.read())
