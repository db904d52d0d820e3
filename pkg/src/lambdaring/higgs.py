"""Moduli of vector bundles and of L-twisted Higgs bundles on a curve.

Two independent routes to the class of the twisted Higgs moduli space are
implemented: the Bialynicki-Birula formulas (ranks 1 to 3, built as
expressions and canonicalised with ``to_lambda``) and the partition-sum
generating function of Mozgovoy, evaluated directly in lambda form.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd

from .errors import InconsistencyError, LambdaRingError
from .expr import Const, add, lefschetz_leaf, mul, power, ring_op
from .motives import Curve
from .partitions import compositions, frac_part, hook_stats, moebius, partitions
from .poly import LEFSCHETZ_VAR, LambdaVar, LefschetzVar, NamedVar, Poly, Q, RatFn, TSeries
from .simplify import adams_on_lambda_form, to_lambda

__all__ = [
    "vb_moduli", "vb_moduli_general", "higgs_bb", "adhm_H_n", "adhm_H_r", "adhm_motive",
    "bb_motive", "verify_mozgovoy", "Report", "moduli_dimension", "motive_weight", "T_VAR",
]

T_VAR = NamedVar("t")


def moduli_dimension(g, p, r):
    return r * r * (2 * g - 2 + p) + 1


def motive_weight(key):
    """Weights of the degree bound: ``L -> 1``, ``lambda^k(h1) -> k``."""
    if isinstance(key, LefschetzVar):
        return 1
    if isinstance(key, LambdaVar):
        return key.degree
    return 0


def _check_curve(curve, g_min=2):
    if not isinstance(curve, Curve):
        raise TypeError("expected a Curve")
    if curve.genus < g_min:
        raise ValueError(f"genus must be at least {g_min}, got {curve.genus}")


def _lam(n, e):
    """``lambda^n(e)`` with the convention that negative degrees give 0."""
    if n < 0:
        return Const(0)
    return ring_op("lambda", n, e)


def _inv(e):
    return power(e, -1)


# ---------------------------------------------------------------------------
# vector bundles

def vb_moduli(curve, r, d):
    """Closed formulas for ``[M(X, r, d)]``, ``r`` in ``{2, 3}``."""
    _check_curve(curve)
    if gcd(r, d) != 1:
        raise ValueError(f"rank {r} and degree {d} must be coprime")
    g = curve.genus
    L = lefschetz_leaf()
    J = curve.jacobian()
    PL = curve.P_expr(L)
    if r == 2:
        num = J * PL - power(L, g) * J ** 2
        return num * _inv((L - 1) * (L ** 2 - 1))
    if r == 3:
        PL2 = curve.P_expr(L ** 2)
        inner = (power(L, 3 * g - 1) * (1 + L + L ** 2) * J ** 2
                 - power(L, 2 * g - 1) * (1 + L) ** 2 * J * PL
                 + PL * PL2)
        return J * _inv((L - 1) * (L ** 2 - 1) ** 2 * (L ** 3 - 1)) * inner
    raise ValueError(f"explicit vector bundle formula only for r = 2, 3 (got {r})")


def vb_moduli_general(curve, r, d):
    """General-rank sum over compositions ``(r_1, ..., r_s)`` of ``r``."""
    _check_curve(curve)
    if r < 1 or gcd(r, d) != 1:
        raise ValueError(f"need r >= 1 coprime to d, got r={r}, d={d}")
    g = curve.genus
    L = lefschetz_leaf()
    J = curve.jacobian()

    def zeta(i):
        return curve.P_expr(L ** i) * _inv((1 - L ** i) * (1 - L ** (i + 1)))

    terms = []
    for parts in compositions(r):
        s = len(parts)
        factors = [Const((-1) ** (s - 1)), J ** s, _inv((1 - L) ** (s - 1)) if s > 1 else Const(1)]
        for rj in parts:
            factors += [zeta(i) for i in range(1, rj)]
        factors += [_inv(1 - L ** (parts[j] + parts[j + 1])) for j in range(s - 1)]
        exp = Fraction(sum(parts[i] * parts[j] for i in range(s) for j in range(i + 1, s)) * (g - 1))
        for i in range(s - 1):
            exp += (parts[i] + parts[i + 1]) * frac_part(Fraction(-sum(parts[: i + 1]) * d, r))
        if exp.denominator != 1:
            raise InconsistencyError(f"non-integral L exponent {exp} for composition {parts}")
        factors.append(power(L, int(exp)))
        terms.append(mul(*factors))
    return add(*terms)


# ---------------------------------------------------------------------------
# Bialynicki-Birula formulas

def _lam_sum_L2(n, X, L):
    # lambda^n([X] + L^2), L being 1-dimensional
    if n < 0:
        return Const(0)
    return add(*[_lam(k, X) * power(L, 2 * n - 2 * k) for k in range(n + 1)])


def _lam_XL_plus_1(n, X, L):
    # lambda^n([X] L + 1)
    if n < 0:
        return Const(0)
    return add(*[_lam(k, X) * power(L, k) for k in range(n + 1)])


def higgs_bb(curve, p, r, perturb=False):
    """Bialynicki-Birula class of the rank ``r`` twisted Higgs moduli space."""
    _check_curve(curve)
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    g = curve.genus
    L = lefschetz_leaf()
    X = curve.curve_class()
    J = curve.jacobian()
    if r == 1:
        out = power(L, g - 1 + p) * J
    elif r == 2:
        PL = curve.P_expr(L)
        first = power(L, 4 * g - 4 + 4 * p) * (J * PL - power(L, g) * J ** 2) * _inv((1 - L) * (1 - L ** 2))
        m = 2 * g - 1 + p
        tail = add(*[_lam(m - 2 * i, X) for i in range(1, m // 2 + 1)])
        out = first + power(L, 4 * g - 4 + 3 * p) * J * tail
    elif r == 3:
        PL = curve.P_expr(L)
        PL2 = curve.P_expr(L ** 2)
        first = (power(L, 9 * g - 9 + 9 * p) * J * _inv((L - 1) * (L ** 2 - 1) ** 2 * (L ** 3 - 1))
                 * (power(L, 3 * g - 1) * (1 + L + L ** 2) * J ** 2
                    - power(L, 2 * g - 1) * (1 + L) ** 2 * J * PL
                    + PL * PL2))
        e = 2 * g - 2 + p
        pre = power(L, 9 * g - 9 + 7 * p) * J ** 2 * _inv(L - 1)
        # floor(1/3 + e/2) and floor(2/3 + e/2)
        top1 = floor(Fraction(1, 3) + Fraction(e, 2))
        top2 = floor(Fraction(2, 3) + Fraction(e, 2))
        s1 = add(*[power(L, i + g) * _lam_sum_L2(e - 2 * i, X, L) - _lam_XL_plus_1(e - 2 * i, X, L)
                   for i in range(1, top1 + 1)])
        s2 = add(*[power(L, i + g - 1) * _lam_sum_L2(e + 1 - 2 * i, X, L) - _lam_XL_plus_1(e + 1 - 2 * i, X, L)
                   for i in range(1, top2 + 1)])
        last = []
        for i in range(1, e + 1):
            for j in range(max(2 - 2 * g - p + i, 1 - i), (2 * g - 1 + p - i) // 2 + 1):
                last.append(_lam(-i + j + e, X) * _lam(-i - 2 * j + 2 * g - 1 + p, X))
        out = first + pre * (s1 + s2) + power(L, 9 * g - 9 + 6 * p) * J * add(*last)
    else:
        raise ValueError(f"Bialynicki-Birula formulas are available for r = 1, 2, 3 only (got {r})")
    if perturb:
        out = out + 1
    return out


def _finish(rf, what):
    rf = rf.cancel()
    try:
        return rf.to_poly()
    except InconsistencyError as exc:
        raise InconsistencyError(f"{what} is not a polynomial: {exc}") from None


def bb_motive(curve, p, r, perturb=False):
    return _finish(to_lambda(higgs_bb(curve, p, r, perturb=perturb)), "Bialynicki-Birula class")


# ---------------------------------------------------------------------------
# Mozgovoy's formula

def adhm_H_n(curve, n, p):
    """``H_n(t)`` as a ``RatFn`` in ``t``, ``L`` and the lambda-powers of ``h1``."""
    _check_curve(curve)
    g = curve.genus
    sign = (-1) ** p
    zetas = {}
    out = RatFn(Poly.zero())
    for lam in partitions(n):
        t_exp, l_exp, s = 0, 0, 1
        term = RatFn.const(1)
        for _, a, l, h in hook_stats(lam):
            s *= sign
            t_exp += p * (a - l) + (1 - g) * (2 * l + 1)
            l_exp += p * a
            key = (h, a)
            if key not in zetas:
                zetas[key] = curve.Z_eval({T_VAR: h, LEFSCHETZ_VAR: a})
            term = term * zetas[key]
        unit = Poly.monomial({T_VAR: t_exp, LEFSCHETZ_VAR: l_exp}, s)
        out = out + term * RatFn(unit)
    return out


def adhm_H_r(curve, r, p):
    """``H_r(t)`` extracted from the Moebius-weighted logarithm, as a polynomial."""
    _check_curve(curve)
    H = {n: adhm_H_n(curve, n, p) for n in range(1, r + 1)}
    total = TSeries.zero(r)
    for j in range(1, r + 1):
        mu = moebius(j)
        if not mu:
            continue
        top = r // j
        coeffs = [RatFn(Poly.zero())] * (r + 1)
        for n in range(1, top + 1):
            coeffs[j * n] = adams_on_lambda_form(j, H[n])
        S = TSeries(coeffs, r)
        Sk = S
        for k in range(1, top + 1):
            if k > 1:
                Sk = Sk * S
            c = Q((-1) ** (k + 1) * mu, j * k)
            total = total + Sk.scale(c)
    coeff = total.coeff(r)
    prefactor = RatFn(Poly.one() - Poly.var(T_VAR)) * RatFn(Poly.one() - Poly.monomial({T_VAR: 1, LEFSCHETZ_VAR: 1}))
    out = (coeff * prefactor).cancel()
    if not out.is_poly():
        raise InconsistencyError(f"H_{r} not polynomial in t: residual denominator {out}")
    return out.to_poly()


def adhm_motive(curve, p, r):
    """``(-1)^(pr) L^(r^2 (g-1) + p r (r+1)/2) H_r(1)`` as a lambda-form polynomial."""
    g = curve.genus
    Hr1 = adhm_H_r(curve, r, p).evaluate(T_VAR, 1)
    pref = Poly.monomial({LEFSCHETZ_VAR: r * r * (g - 1) + p * r * (r + 1) // 2}, (-1) ** (p * r))
    return Hr1 * pref


# ---------------------------------------------------------------------------
# verification

@dataclass
class Report:
    genus: int
    p: int
    rank: int
    equal: bool = False
    n_terms: int = 0
    weighted_degree: int = None
    runtime_ms: float = 0.0
    error: str = None
    error_kind: str = None
    adhm: Poly = field(default=None, repr=False)
    bb: Poly = field(default=None, repr=False)

    def to_json(self):
        out = {
            "schema": 1,
            "genus": self.genus,
            "p": self.p,
            "rank": self.rank,
            "equal": self.equal,
            "n_terms": self.n_terms,
            "weighted_degree": self.weighted_degree,
            "runtime_ms": round(self.runtime_ms, 3),
        }
        if self.error is not None:
            out["error"] = self.error
        return out


def verify_mozgovoy(g, p, r, perturb=False, curve=None):
    """Compare the Mozgovoy and Bialynicki-Birula classes for one ``(g, p, r)``."""
    start = time.perf_counter()
    rep = Report(g, p, r)
    try:
        if g < 2 or p < 1 or r not in (1, 2, 3):
            raise ValueError(f"need g >= 2, p >= 1 and r in 1..3, got g={g}, p={p}, r={r}")
        curve = curve or Curve("X", g)
        adhm = adhm_motive(curve, p, r)
        bb = bb_motive(curve, p, r, perturb=perturb)
        diff = adhm - bb
        rep.adhm, rep.bb = adhm, bb
        rep.equal = diff.is_zero()
        rep.n_terms = len(adhm.terms)
        rep.weighted_degree = adhm.weighted_degree(motive_weight)
    except InconsistencyError as exc:
        rep.error, rep.error_kind = str(exc), "inconsistency"
    except (LambdaRingError, ValueError) as exc:
        rep.error, rep.error_kind = str(exc), "usage"
    rep.runtime_ms = (time.perf_counter() - start) * 1000
    return rep
