"""Executable worked examples: congruence suites run at desk scale.

Each case returns a CaseResult whose checks are (label, passed, detail)
triples; congruences are always evaluated by two independent routes
(exact big-integer sums reduced mod p, and digit-wise Lucas-theorem
evaluation) that must agree.
"""

import csv
import io
from dataclasses import dataclass, field as dc_field

from .catalog import (
    cy26_term,
    cy210_term,
    gen_terms,
    lucas_binom,
    lookup,
    p_lucas_check,
    series_mod_p,
    hypergeometric_fr_operator,
)
from .diffop import is_mom, indicial_at_zero
from .errors import UnknownCase
from .fields import GF, QQ
from .poly import Poly
from .ratfun import RatFun
from .series import TruncSeries, reduce_series_mod_p


@dataclass
class CaseResult:
    case_id: str
    p: int
    checks: list = dc_field(default_factory=list)
    orders: dict = dc_field(default_factory=dict)
    excluded: bool = False
    note: str = ""

    def add(self, label, passed, detail=""):
        self.checks.append((label, bool(passed), detail))

    @property
    def passed(self):
        return self.excluded or all(ok for _, ok, _ in self.checks)

    def to_json(self):
        return {
            "case_id": self.case_id,
            "p": self.p,
            "excluded": self.excluded,
            "note": self.note,
            "orders": self.orders,
            "checks": [
                {"label": label, "pass": ok, "detail": detail}
                for label, ok, detail in self.checks
            ],
        }


def _fixed_point_congruence(result, term, p, Jmax, series_mod_term):
    """Check a(jp) = a(j) mod p by exact sums and by the Lucas-digit route."""
    for j in range(0, Jmax + 1):
        e_big, e_small = term(j * p) % p, term(j) % p
        d_big, d_small = series_mod_term(j * p, p), series_mod_term(j, p)
        congruent = e_big == e_small
        routes_agree = d_big == e_big and d_small == e_small
        ok = congruent and routes_agree
        if not ok or j == Jmax:
            result.add(
                f"a({j}p) = a({j}) mod {p}",
                ok,
                "" if ok else f"congruent: {congruent}, routes agree: {routes_agree}",
            )
        if not ok:
            break
    result.orders["Jmax"] = Jmax


def _cy210_mod(n, p):
    s = 0
    for k in range(2 * n + 1):
        t = pow(lucas_binom(2 * n, k, p), 4, p)
        s = (s - t if k & 1 else s + t) % p
    return lucas_binom(2 * n, n, p) * s % p


def _cy26_mod(n, p):
    s = 0
    for k in range(n + 1):
        s = (
            s
            + pow(lucas_binom(n, k, p), 2, p)
            * lucas_binom(n + k, k, p)
            * lucas_binom(2 * k, n, p)
        ) % p
    return lucas_binom(2 * n, n, p) * s % p


def case_210(p, Jmax=20):
    """Cartier fixed point of the sequence C(2j,j) sum_k (-1)^k C(2j,k)^4 mod p.

    The parity step in the congruence argument needs p != 2, which is
    therefore rejected.
    """
    result = CaseResult("210", p)
    if p == 2:
        result.excluded = True
        result.note = "p = 2 excluded: the (-1)^k parity argument needs an odd prime"
        return result
    _fixed_point_congruence(result, cy210_term, p, Jmax, _cy210_mod)
    return result


def case_26(p, Jmax=15):
    """Cartier fixed point of C(2j,j) sum_k C(j,k)^2 C(j+k,k) C(2k,j) mod p."""
    result = CaseResult("26", p)
    _fixed_point_congruence(result, cy26_term, p, Jmax, _cy26_mod)
    return result


def case_apery_lucas(p, M=500):
    """p-Lucas property of the Apery numbers up to index M."""
    result = CaseResult("apery-lucas", p)
    ok, witness = p_lucas_check(lookup("apery"), p, M)
    result.add(f"a(r+mp) = a(r)a(m) mod {p}, indices <= {M}", ok, str(witness or ""))
    result.orders["M"] = M
    return result


def truncation_poly(g, p):
    """The p-truncation of a catalog series mod p, as a polynomial over F_p."""
    f = series_mod_p(g, p, p)
    return f.poly()


def case_2f1(p, kmax=2, T=500, power_cap=400):
    """The full 2F1(-1/2,1/2;1;16z) study: truncations P_1, P_2 and heights.

    Checks, each to order T where a series identity is involved:
      deg-P:        deg P_1 = deg P_2 = (p-1)/2
      f2-from-f1:   f_2 = (1-16z)(f_1 + 2 delta f_1) over Q
      f1-from-f2:   f_1 = f_2 - 2 delta f_2 over Q
      trunc-link:   P_2 = (1-16z)(P_1 + 2 delta P_1) as polynomials over F_p
      split-f1:     f_2|p = P_2 * f_1|p(z^p)
      split-f1-sq:  f_2|p = P_2 * P_1^p * f_1|p(z^(p^2))
      self-power:   f_2|p * P_2^(p-1) = P_1^p * f_2|p(z^p)
      separable:  gcd(P_2, P_2') = 1
      coprime:    P_1 = P_2 - 2z P_2' and gcd(P_1, P_2) = 1
      height-B_k: height of reduced B_k = P_1^(p+...+p^(k+1)) / P_2^(p^(k+1)-1)
                  equals (p/2)(p^(k+1)-1), and f_2|p = B_k * f_2|p(z^(p^(k+1)))
                  (k limited so p^(k+1) <= power_cap)
    """
    if p < 3:
        raise ValueError("case 2f1 needs an odd prime")
    result = CaseResult("2f1", p)
    result.orders["T"] = T
    Fp = GF(p)
    f1_gen, f2_gen = lookup("f1"), lookup("f2")

    f1_q = TruncSeries(QQ, gen_terms(f1_gen, T))
    f2_q = TruncSeries(QQ, gen_terms(f2_gen, T))
    one_m_16z = Poly(QQ, [1, -16])
    rhs_f2 = (f1_q + f1_q.delta().scale(2)).mul_poly(one_m_16z)
    result.add("f2-from-f1", f2_q.eq_to_order(rhs_f2, T))
    result.add("f1-from-f2", f1_q.eq_to_order(f2_q - f2_q.delta().scale(2), T))

    P1 = truncation_poly(f1_gen, p)
    P2 = truncation_poly(f2_gen, p)
    half = (p - 1) // 2
    result.add("deg-P", P1.degree() == half and P2.degree() == half,
               f"deg P_1 = {P1.degree()}, deg P_2 = {P2.degree()}")

    one_m_16z_p = Poly(Fp, [1, -16])
    delta_P1 = Poly(Fp, [i * c % p for i, c in enumerate(P1.coeffs)])
    trunc_link = one_m_16z_p * (P1 + delta_P1.scale(2))
    result.add("trunc-link", trunc_link == P2)

    f1_p = reduce_series_mod_p(f1_q, p)
    f2_p = reduce_series_mod_p(f2_q, p)
    rhs_split = f1_p.compose_power(p, 1, out_len=T).mul_poly(P2)
    result.add("split-f1", f2_p.eq_to_order(rhs_split, T))

    rhs_split2 = f1_p.compose_power(p, 2, out_len=T).mul_poly(P2 * P1**p)
    result.add("split-f1-sq", f2_p.eq_to_order(rhs_split2, T))

    lhs_sp = f2_p.mul_poly(P2 ** (p - 1))
    rhs_sp = f2_p.compose_power(p, 1, out_len=T).mul_poly(P1**p)
    result.add("self-power", lhs_sp.eq_to_order(rhs_sp, T))

    result.add("separable", P2.gcd(P2.derivative()) == Poly.one(Fp))
    z = Poly.x(Fp)
    rel = P2 - (z * P2.derivative()).scale(2)
    result.add("coprime", rel == P1 and P1.gcd(P2) == Poly.one(Fp))

    heights = []
    for k in range(kmax + 1):
        if p ** (k + 1) > power_cap:
            break
        exp_num = sum(p**j for j in range(1, k + 2))
        exp_den = p ** (k + 1) - 1
        Bk = RatFun(P1**exp_num, P2**exp_den)
        expected = p * (p ** (k + 1) - 1) // 2
        heights.append(Bk.height)
        ok_height = Bk.height == expected
        lhs = f2_p.mul_poly(Bk.den)
        rhs = f2_p.compose_power(p, k + 1, out_len=T).mul_poly(Bk.num)
        ok_id = lhs.eq_to_order(rhs, T)
        result.add(
            f"height-B_{k}",
            ok_height and ok_id,
            f"height {Bk.height}, expected {expected}",
        )
    result.orders["B_heights"] = heights
    return result


def case_independence(p, T=300):
    """The certificate ingredients behind the algebraic-independence transfers.

    For r in {2, 3}: Lambda_p(f_r)|p = g_r|p = Lambda_p^2(f_r)|p, f_r kills
    the order-r operator delta^r - 4^r z (delta-1/2)(delta+1/2)^(r-1), and
    that operator is MOM at zero.  For the Apery pair: t is a Cartier fixed
    point mod p, and f_2|p = B * g_2|p with B = P_2/P_1 recovered by rational
    reconstruction of bounded height.
    """
    if p < 3:
        raise ValueError("independence ingredients need an odd prime")
    result = CaseResult("independence", p)
    result.orders["T"] = T
    Fp = GF(p)
    for r in (2, 3):
        fr = lookup(f"f{r}")
        gr = lookup(f"g{r}")
        fr_p = series_mod_p(fr, p, T)
        gr_p = series_mod_p(gr, p, T)
        lam1 = fr_p.cartier(p, 0)
        lam2 = fr_p.cartier(p, 0).cartier(p, 0)
        ok1 = lam1.eq_to_order(gr_p, len(lam1))
        ok2 = lam2.eq_to_order(gr_p, len(lam2))
        result.add(f"Lambda(f_{r}) = g_{r} = Lambda^2(f_{r}) mod {p}", ok1 and ok2)
        Lr = hypergeometric_fr_operator(r)
        fr_q = TruncSeries(QQ, gen_terms(fr, T))
        result.add(f"L_{r}(f_{r}) = 0", Lr.apply(fr_q).is_zero())
        result.add(
            f"L_{r} MOM",
            is_mom(Lr) and indicial_at_zero(Lr) == Poly.x(QQ) ** r,
        )
    t_p = series_mod_p(lookup("apery"), p, T)
    lam_t = t_p.cartier(p, 0)
    result.add("Lambda(t) = t mod p", lam_t.eq_to_order(t_p, len(lam_t)))

    f2_p = series_mod_p(lookup("f2"), p, T)
    g2_p = series_mod_p(lookup("g2"), p, T)
    bound = 2 * 2 * 2 * 2 * p  # 2C p with C = 2nr = 8
    B = _reconstruct_ratio(f2_p, g2_p, min(bound, (T - 8) // 2))
    ok = B is not None and B.height <= bound
    if ok:
        lhs = f2_p.mul_poly(B.den)
        rhs = g2_p.mul_poly(B.num)
        ok = lhs.eq_to_order(rhs, T)
    P1, P2 = truncation_poly(lookup("f1"), p), truncation_poly(lookup("f2"), p)
    expected = RatFun(P2, P1)
    result.add(
        "f_2 = B g_2 with height(B) bounded",
        ok and B == expected,
        f"B height {B.height if B else None}, bound {bound}",
    )
    return result


def _reconstruct_ratio(num_series, den_series, deg_bound):
    from .certify import _pade_ratio
    from .errors import ReconstructionFailed

    try:
        u, v = _pade_ratio(num_series, den_series, deg_bound)
    except ReconstructionFailed:
        return None
    return RatFun(u, v)


_CASES = {
    "210": case_210,
    "26": case_26,
    "2f1": case_2f1,
    "independence": case_independence,
    "apery-lucas": case_apery_lucas,
}


def case_ids():
    return sorted(_CASES)


def run_case(case_id, p, **kwargs):
    fn = _CASES.get(case_id)
    if fn is None:
        raise UnknownCase(f"no case named {case_id!r}; known: {', '.join(case_ids())}")
    return fn(p, **kwargs)


def batch_report(primes, cases):
    """Run the selected cases over the selected primes; one CaseResult per pair."""
    results = []
    for case_id in cases:
        if case_id not in _CASES:
            raise UnknownCase(f"no case named {case_id!r}; known: {', '.join(case_ids())}")
        for p in primes:
            results.append(run_case(case_id, p))
    return results


def results_to_csv(results):
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["case_id", "p", "check_label", "pass", "detail"])
    for res in results:
        if res.excluded:
            writer.writerow([res.case_id, res.p, "excluded", True, res.note])
            continue
        for label, ok, detail in res.checks:
            writer.writerow([res.case_id, res.p, label, ok, detail])
    return buf.getvalue()
