"""Exact sparse Laurent polynomials, factored rational functions and truncated series.

Monomials are dense exponent tuples over a sorted generator tuple ``gens``;
generator tuples are interned so that the common same-ring case is an identity
check.  Coefficients are ``gmpy2.mpq``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from operator import add

import gmpy2

from .errors import InconsistencyError, NotInvertibleError

Q = gmpy2.mpq

__all__ = [
    "Q", "VarKey", "NamedVar", "LefschetzVar", "LambdaVar", "AdamsVar", "AbstractVar",
    "Poly", "RatFn", "TSeries", "LEFSCHETZ_VAR",
]


# ---------------------------------------------------------------------------
# variables

class VarKey:
    """Base class of polynomial generators.

    ``one_dim`` marks generators on which every Adams operation acts by
    raising to a power (the Lefschetz motive and polynomial variables); only
    these may appear in denominator factors.
    """

    __slots__ = ()
    one_dim = False

    def sort_key(self):
        raise NotImplementedError

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()


@dataclass(frozen=True, eq=True)
class NamedVar(VarKey):
    name: str
    one_dim = True

    def sort_key(self):
        return (0, self.name)

    def __str__(self):
        return self.name


@dataclass(frozen=True, eq=True)
class LefschetzVar(VarKey):
    one_dim = True

    def sort_key(self):
        return (1,)

    def __str__(self):
        return "L"


@dataclass(frozen=True, eq=True)
class LambdaVar(VarKey):
    operand: object
    degree: int

    def sort_key(self):
        return (2, self.operand.oid, self.degree)

    def __str__(self):
        return f"lam{self.degree}({self.operand.name})"


@dataclass(frozen=True, eq=True)
class AdamsVar(VarKey):
    operand: object
    degree: int

    def sort_key(self):
        return (3, self.operand.oid, self.degree)

    def __str__(self):
        return f"psi{self.degree}({self.operand.name})"


@dataclass(frozen=True, eq=True)
class AbstractVar(VarKey):
    """Placeholder generator of the universal conversion polynomials."""

    family: str
    index: int

    def sort_key(self):
        return (4, self.family, self.index)

    def __str__(self):
        return f"{self.family}{self.index}"


LEFSCHETZ_VAR = LefschetzVar()

_GENS = {}
_UNIONS = {}


def _intern(gens):
    gens = tuple(gens)
    try:
        return _GENS[gens]
    except KeyError:
        _GENS[gens] = gens
        return gens


def _var_sort(g):
    return g.sort_key()


def _sorted_gens(keys):
    return _intern(sorted(set(keys), key=_var_sort))


def _embed(terms, src, dst):
    """Re-express ``terms`` (over ``src``) over the superset ``dst``."""
    if src is dst:
        return terms
    pos = {g: i for i, g in enumerate(dst)}
    idx = [pos[g] for g in src]
    n = len(dst)
    out = {}
    for mono, c in terms.items():
        arr = [0] * n
        for i, e in zip(idx, mono):
            arr[i] = e
        out[tuple(arr)] = c
    return out


def _union(a, b):
    key = (id(a), id(b))
    try:
        return _UNIONS[key]
    except KeyError:
        u = _sorted_gens(a + b)
        _UNIONS[key] = u
        return u


def _order_key(mono):
    # graded lex; a total group order on Z^n, so it is safe for Laurent monomials
    return (sum(mono), mono)


def _fmt_coeff(c):
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# polynomials

class Poly:
    """Sparse multivariate Laurent polynomial with exact rational coefficients.

    Only the Lefschetz generator is expected to carry negative exponents in
    motive computations, but the arithmetic itself is that of the Laurent ring.
    """

    __slots__ = ("gens", "terms")

    def __init__(self, terms=None, gens=()):
        self.gens = _intern(gens)
        self.terms = terms if terms is not None else {}

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c):
        c = Q(c)
        return cls({(): c} if c else {}, ())

    @classmethod
    def zero(cls):
        return cls({}, ())

    @classmethod
    def one(cls):
        return cls({(): Q(1)}, ())

    @classmethod
    def var(cls, key, exp=1):
        return cls({(exp,): Q(1)}, (key,))

    @classmethod
    def monomial(cls, powers, coeff=1):
        """Monomial from a mapping ``{VarKey: exponent}``."""
        coeff = Q(coeff)
        if not coeff:
            return cls.zero()
        gens = _sorted_gens(k for k, e in powers.items() if e)
        return cls({tuple(powers[g] for g in gens): coeff}, gens)

    @classmethod
    def from_terms(cls, items):
        """Build from ``[(coeff, {VarKey: exp}), ...]``."""
        items = list(items)
        gens = _sorted_gens(k for _, pw in items for k, e in pw.items() if e)
        terms = {}
        for c, pw in items:
            mono = tuple(pw.get(g, 0) for g in gens)
            v = terms.get(mono, 0) + Q(c)
            if v:
                terms[mono] = v
            else:
                terms.pop(mono, None)
        return cls(terms, gens)

    # -- basic queries ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.terms:
            return Q(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def is_monomial(self):
        return len(self.terms) == 1

    def compact(self):
        """Drop generators that no longer occur."""
        used = [i for i in range(len(self.gens)) if any(m[i] for m in self.terms)]
        if len(used) == len(self.gens):
            return self
        gens = tuple(self.gens[i] for i in used)
        return Poly({tuple(m[i] for i in used): c for m, c in self.terms.items()}, gens)

    def variables(self):
        return self.compact().gens

    def degree(self, key):
        if key not in self.gens or not self.terms:
            return 0
        i = self.gens.index(key)
        return max(m[i] for m in self.terms)

    def min_degree(self, key):
        if key not in self.gens or not self.terms:
            return 0
        i = self.gens.index(key)
        return min(m[i] for m in self.terms)

    def items(self):
        """Yield ``(coeff, {VarKey: exp})`` pairs."""
        for mono, c in self.terms.items():
            yield c, {g: e for g, e in zip(self.gens, mono) if e}

    def coefficient(self, powers):
        gens = self.gens
        if any(k not in gens for k, e in powers.items() if e):
            return Q(0)
        mono = tuple(powers.get(g, 0) for g in gens)
        return self.terms.get(mono, Q(0))

    def weighted_degree(self, weight):
        """Maximum of ``sum(weight(var) * exp)`` over the terms (``None`` for zero)."""
        if not self.terms:
            return None
        w = [weight(g) for g in self.gens]
        return max(sum(a * b for a, b in zip(w, m)) for m in self.terms)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, type(Q(0)))) or hasattr(other, "denominator"):
            return Poly.const(other)
        return NotImplemented

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, self.gens)

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        gens, a, b = self._unify(other)
        if len(a) < len(b):
            a, b = b, a
        res = dict(a)
        for m, c in b.items():
            v = res.get(m)
            if v is None:
                res[m] = c
            else:
                v = v + c
                if v:
                    res[m] = v
                else:
                    del res[m]
        return Poly(res, gens)

    __radd__ = __add__

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return Poly._coerce(other) - self

    def scale(self, c):
        c = Q(c)
        if not c:
            return Poly.zero()
        return Poly({m: v * c for m, v in self.terms.items()}, self.gens)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = Poly._coerce(other)
            if other is NotImplemented:
                return other
        if not self.terms or not other.terms:
            return Poly.zero()
        gens, a, b = self._unify(other)
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            if not any(mb):
                return Poly({m: c * cb for m, c in a.items()}, gens)
            return Poly({tuple(map(add, m, mb)): c * cb for m, c in a.items()}, gens)
        res = {}
        get = res.get
        bitems = list(b.items())
        for ma, ca in a.items():
            for mb, cb in bitems:
                m = tuple(map(add, ma, mb))
                v = get(m)
                res[m] = ca * cb if v is None else v + ca * cb
        return Poly({m: c for m, c in res.items() if c}, gens)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial polynomial")
            (m, c), = self.terms.items()
            return Poly({tuple(e * k for e in m): Q(1) / c ** -k}, self.gens)
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            return Poly({tuple(e * k for e in m): c ** k}, self.gens)
        result = Poly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly._coerce(other)
            if other is NotImplemented:
                return False
        if len(self.terms) != len(other.terms):
            return False
        _, a, b = self._unify(other)
        return a == b

    def __hash__(self):
        p = self.compact()
        return hash((p.gens, frozenset(p.terms.items())))

    def _unify(self, other):
        if self.gens is other.gens:
            return self.gens, self.terms, other.terms
        gens = _union(self.gens, other.gens)
        return gens, _embed(self.terms, self.gens, gens), _embed(other.terms, other.gens, gens)

    def with_gens(self, gens):
        gens = _intern(gens)
        return Poly(_embed(self.terms, self.gens, gens), gens)

    # -- division -----------------------------------------------------------

    def exact_div(self, other):
        """Quotient ``q`` with ``self == q * other`` or ``None`` if none exists."""
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return Poly.zero()
        gens, a, b = self._unify(other)
        if len(b) == 1:
            (mb, cb), = b.items()
            return Poly({tuple(x - y for x, y in zip(m, mb)): c / cb for m, c in a.items()}, gens)
        if len(b) == 2:
            return _binomial_div(a, b, gens)
        return _long_div(a, b, gens)

    # -- substitution -------------------------------------------------------

    def subs(self, key, value):
        """Replace generator ``key`` by the polynomial ``value``."""
        if key not in self.gens:
            return self
        value = Poly._coerce(value)
        i = self.gens.index(key)
        groups = {}
        for m, c in self.terms.items():
            e = m[i]
            rest = m[:i] + (0,) + m[i + 1:]
            groups.setdefault(e, {})[rest] = c
        if any(e < 0 for e in groups) and not value.is_monomial():
            raise ValueError(f"cannot substitute a non-monomial for {key} with negative exponents")
        out = Poly.zero()
        for e in sorted(groups):
            out = out + Poly(groups[e], self.gens) * (value ** e)
        return out

    def evaluate(self, key, value):
        """Substitute a rational number for ``key``."""
        if key not in self.gens:
            return self
        value = Q(value)
        i = self.gens.index(key)
        gens = self.gens[:i] + self.gens[i + 1:]
        res = {}
        for m, c in self.terms.items():
            e = m[i]
            rest = m[:i] + m[i + 1:]
            v = c * value ** e if e >= 0 else c / value ** -e
            res[rest] = res.get(rest, 0) + v
        return Poly({m: c for m, c in res.items() if c}, gens)

    def compose(self, mapping):
        """Simultaneously substitute polynomials for several generators."""
        hit = [i for i, g in enumerate(self.gens) if g in mapping]
        if not hit:
            return self
        hit_set = set(hit)
        keep = [i for i in range(len(self.gens)) if i not in hit_set]
        kept_gens = tuple(self.gens[i] for i in keep)
        images = [Poly._coerce(mapping[self.gens[i]]) for i in hit]
        groups = {}
        for m, c in self.terms.items():
            sub = tuple(m[i] for i in hit)
            rest = tuple(m[i] for i in keep)
            groups.setdefault(sub, {})[rest] = c
        powers = [{} for _ in hit]

        def power(j, e):
            cache = powers[j]
            if e not in cache:
                if e > 1 and e - 1 in cache:
                    cache[e] = cache[e - 1] * images[j]
                else:
                    cache[e] = images[j] ** e
            return cache[e]

        prefix = {(): Poly.one()}

        def product(sub):
            # memoised over prefixes; groups are visited in sorted order
            if sub in prefix:
                return prefix[sub]
            head = product(sub[:-1])
            e = sub[-1]
            val = head if e == 0 else head * power(len(sub) - 1, e)
            prefix[sub] = val
            return val

        out = Poly.zero()
        for sub in sorted(groups):
            out = out + product(sub) * Poly(groups[sub], kept_gens)
        return out

    def relabel(self, mapping):
        """Rename generators; colliding monomials are merged."""
        if not any(g in mapping for g in self.gens):
            return self
        new = [mapping.get(g, g) for g in self.gens]
        gens = _sorted_gens(new)
        pos = {g: i for i, g in enumerate(gens)}
        idx = [pos[g] for g in new]
        n = len(gens)
        res = {}
        injective = len(set(new)) == len(new)
        for m, c in self.terms.items():
            arr = [0] * n
            for i, e in zip(idx, m):
                arr[i] += e
            t = tuple(arr)
            if injective:
                res[t] = c
            else:
                v = res.get(t, 0) + c
                if v:
                    res[t] = v
                else:
                    res.pop(t, None)
        return Poly(res, gens)

    def scale_exponent(self, key, n):
        """Multiply every exponent of ``key`` by ``n`` (Adams action on a 1-dimensional generator)."""
        if key not in self.gens or n == 1:
            return self
        i = self.gens.index(key)
        return Poly({m[:i] + (m[i] * n,) + m[i + 1:]: c for m, c in self.terms.items()}, self.gens)

    # -- output -------------------------------------------------------------

    def sorted_terms(self):
        p = self.compact()
        return p.gens, sorted(p.terms.items(), key=lambda mc: _order_key(mc[0]), reverse=True)

    def to_text(self):
        """Canonical text: graded-lex descending terms, ``p/q`` coefficients."""
        if not self.terms:
            return "0"
        gens, items = self.sorted_terms()
        parts = []
        for mono, c in items:
            factors = []
            for g, e in zip(gens, mono):
                if e == 1:
                    factors.append(str(g))
                elif e:
                    factors.append(f"{g}^{e}")
            mag = abs(c)
            if not factors:
                body = _fmt_coeff(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = _fmt_coeff(mag) + "*" + "*".join(factors)
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_text

    def __repr__(self):
        return f"Poly({self.to_text()})"


def _binomial_div(a, b, gens):
    (mu, cu), (mv, cv) = b.items()
    step = tuple(y - x for x, y in zip(mu, mv))
    j = next(i for i, s in enumerate(step) if s)
    if step[j] < 0:
        mu, cu, mv, cv = mv, cv, mu, cu
        step = tuple(-s for s in step)
    gamma = cv / cu
    sj = step[j]
    groups = {}
    for m, c in a.items():
        base = tuple(x - y for x, y in zip(m, mu))
        k = base[j] // sj
        rep = tuple(x - k * s for x, s in zip(base, step))
        groups.setdefault(rep, {})[k] = c / cu
    out = {}
    for rep, chain in groups.items():
        lo, hi = min(chain), max(chain)
        q = Q(0)
        for k in range(lo, hi + 1):
            q = chain.get(k, 0) - gamma * q
            if k < hi and q:
                out[tuple(x + k * s for x, s in zip(rep, step))] = q
        if q:
            return None
    return Poly(out, gens)


def _long_div(a, b, gens):
    lead_b = max(b, key=_order_key)
    low_b = min(b, key=_order_key)
    low_a = min(a, key=_order_key)
    floor_key = _order_key(tuple(x - y for x, y in zip(low_a, low_b)))
    cb = b[lead_b]
    rem = dict(a)
    heap = [_neg_key(m) for m in rem]
    heapq.heapify(heap)
    quot = {}
    bitems = list(b.items())
    while rem:
        nk = heapq.heappop(heap)
        m = nk[2]
        c = rem.get(m)
        if c is None:
            continue
        qm = tuple(x - y for x, y in zip(m, lead_b))
        if _order_key(qm) < floor_key:
            return None
        qc = c / cb
        quot[qm] = qc
        for mb, cbb in bitems:
            t = tuple(map(add, qm, mb))
            v = rem.get(t, 0) - qc * cbb
            if v:
                if t not in rem:
                    heapq.heappush(heap, _neg_key(t))
                rem[t] = v
            else:
                rem.pop(t, None)
    return Poly(quot, gens)


def _neg_key(m):
    return (-sum(m), tuple(-x for x in m), m)


# ---------------------------------------------------------------------------
# monomial helpers for factored denominators

def _mono_key(powers):
    """Canonical hashable monomial: sorted ``((VarKey, exp), ...)`` with nonzero exps."""
    return tuple(sorted(((k, e) for k, e in powers.items() if e), key=lambda ke: ke[0].sort_key()))


def _mono_mul(a, b, sign=1):
    d = dict(a)
    for k, e in b:
        d[k] = d.get(k, 0) + sign * e
    return _mono_key(d)


def _mono_poly(key, coeff=1):
    return Poly.monomial(dict(key), coeff)


_FACTOR_POLYS = {}


def _factor_poly(key):
    try:
        return _FACTOR_POLYS[key]
    except KeyError:
        p = Poly.one() - _mono_poly(key)
        _FACTOR_POLYS[key] = p
        return p


def canonical_factor(powers):
    """Normalise ``1 - m`` to ``sign * unit * (1 - m')`` with ``m'`` non-negative.

    Returns ``(sign, unit_key, factor_key)``.
    """
    key = _mono_key(powers)
    if not key:
        raise ZeroDivisionError("factor 1 - 1 vanishes")
    for k, _ in key:
        if not k.one_dim:
            raise NotInvertibleError(f"denominator factor involves {k}, which is not 1-dimensional")
    exps = [e for _, e in key]
    if all(e > 0 for e in exps):
        return 1, (), key
    if all(e < 0 for e in exps):
        return -1, key, tuple((k, -e) for k, e in key)
    raise NotInvertibleError(f"factor 1 - {_mono_poly(key)} has mixed-sign exponents")


def _factor_text(key):
    return f"(1 - {_mono_poly(key).to_text()})"


# ---------------------------------------------------------------------------
# rational functions

class RatFn:
    """``sign * unit * num / prod(1 - m)`` with a factored denominator.

    ``den`` maps canonical factor monomials ``m`` (non-negative exponents in
    1-dimensional generators) to multiplicities; ``unit`` is a Laurent
    monomial key.
    """

    __slots__ = ("num", "den", "sign", "unit")

    def __init__(self, num, den=None, sign=1, unit=()):
        self.num = num
        self.den = {k: v for k, v in (den or {}).items() if v}
        self.sign = sign
        self.unit = unit

    @classmethod
    def from_poly(cls, p):
        return cls(p if isinstance(p, Poly) else Poly.const(p))

    @classmethod
    def const(cls, c):
        return cls(Poly.const(c))

    @classmethod
    def inverse_factor(cls, powers):
        """``1 / (1 - m)`` for a monomial ``m`` given as ``{VarKey: exp}``."""
        sign, unit, key = canonical_factor(powers)
        # 1 - m = sign * unit * (1 - m')  =>  1/(1 - m) = sign * unit^-1 / (1 - m')
        return cls(Poly.one(), {key: 1}, sign, tuple((k, -e) for k, e in unit))

    # -- queries ------------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return not self.den

    def unit_poly(self):
        return _mono_poly(self.unit, self.sign)

    def full_numerator(self):
        if not self.unit and self.sign == 1:
            return self.num
        return self.num * self.unit_poly()

    def denominator_poly(self):
        out = Poly.one()
        for key in sorted(self.den, key=_factor_sort):
            out = out * _factor_poly(key) ** self.den[key]
        return out

    def to_poly(self):
        if self.den:
            raise InconsistencyError(
                "residual denominator " + " ".join(
                    _factor_text(k) + (f"^{m}" if m > 1 else "") for k, m in sorted(self.den.items(), key=lambda km: _factor_sort(km[0]))))
        return self.full_numerator()

    def factors(self):
        return sorted(self.den.items(), key=lambda km: _factor_sort(km[0]))

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFn):
            return other
        if isinstance(other, Poly):
            return RatFn(other)
        try:
            return RatFn.const(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __neg__(self):
        return RatFn(self.num, self.den, -self.sign, self.unit)

    def __add__(self, other):
        other = RatFn._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        den = dict(self.den)
        for k, v in other.den.items():
            if v > den.get(k, 0):
                den[k] = v
        a = self.full_numerator()
        b = other.full_numerator()
        for k, v in den.items():
            da = v - self.den.get(k, 0)
            db = v - other.den.get(k, 0)
            if da:
                a = a * _factor_poly(k) ** da
            if db:
                b = b * _factor_poly(k) ** db
        return RatFn(a + b, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = RatFn._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return RatFn._coerce(other) - self

    def __mul__(self, other):
        other = RatFn._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RatFn(Poly.zero())
        num_a, num_b = self.num, other.num
        den = dict(self.den)
        for k, v in other.den.items():
            den[k] = den.get(k, 0) + v
        # trivially-equal factor cancellation: a numerator that is c*u*(1 - m)
        extra_unit = ()
        for which in (0, 1):
            num = num_a if which == 0 else num_b
            f = _as_factor(num)
            if f is not None and den.get(f[2], 0):
                coeff, unit, key = f
                den[key] -= 1
                num = Poly.const(coeff)
                extra_unit = _mono_mul(extra_unit, unit)
                if which == 0:
                    num_a = num
                else:
                    num_b = num
        unit = _mono_mul(_mono_mul(self.unit, other.unit), extra_unit)
        return RatFn(num_a * num_b, den, self.sign * other.sign, unit)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFn._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def inv(self):
        """Inverse; the numerator must be a monomial times canonical factors."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        coeff, unit, keys = _factorize(self.num)
        den = {}
        for k in keys:
            den[k] = den.get(k, 0) + 1
        num = self.denominator_poly().scale(Q(1) / abs(coeff))
        sign = self.sign * (1 if coeff > 0 else -1)
        new_unit = tuple((k, -e) for k, e in _mono_mul(self.unit, unit))
        return RatFn(num, den, sign, new_unit)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** -k
        result = RatFn.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        return RatFn(self.num.scale(c), self.den, self.sign, self.unit)

    def cancel(self):
        """Divide out every denominator factor that divides the numerator exactly."""
        num = self.num
        den = dict(self.den)
        for key in sorted(den, key=_factor_sort):
            f = _factor_poly(key)
            while den[key]:
                q = num.exact_div(f)
                if q is None:
                    break
                num = q
                den[key] -= 1
        out = RatFn(num, den, self.sign, self.unit)
        if not out.den:
            return RatFn(out.full_numerator())
        return out

    def equals(self, other):
        other = RatFn._coerce(other)
        a = self.full_numerator()
        b = other.full_numerator()
        for k in set(self.den) | set(other.den):
            da, db = self.den.get(k, 0), other.den.get(k, 0)
            common = min(da, db)
            if db - common:
                a = a * _factor_poly(k) ** (db - common)
            if da - common:
                b = b * _factor_poly(k) ** (da - common)
        return a == b

    def __eq__(self, other):
        other = RatFn._coerce(other)
        if other is NotImplemented:
            return False
        return self.equals(other)

    __hash__ = None

    # -- maps ---------------------------------------------------------------

    def map_numerator(self, fn):
        """Apply ``fn`` to the numerator only (generators absent from factors)."""
        return RatFn(fn(self.num), self.den, self.sign, self.unit)

    def scale_exponent(self, key, n):
        """Adams action ``key -> key**n`` on a 1-dimensional generator, everywhere."""
        if n == 1:
            return self
        num = self.num.scale_exponent(key, n)
        unit = tuple((k, e * n if k == key else e) for k, e in self.unit)
        sign, unit_key, den = self.sign, unit, {}
        for fk, mult in self.den.items():
            new = tuple((k, e * n if k == key else e) for k, e in fk)
            den[new] = den.get(new, 0) + mult
        return RatFn(num, den, sign, unit_key)

    def evaluate(self, key, value):
        """Substitute a number for ``key``; the generator must not occur in a factor."""
        for fk in self.den:
            if any(k == key for k, _ in fk):
                raise InconsistencyError(f"cannot evaluate {key}: it occurs in factor {_factor_text(fk)}")
        num = self.full_numerator().evaluate(key, value)
        return RatFn(num, self.den)

    def generators(self):
        keys = set(self.num.variables())
        keys.update(k for k, _ in self.unit)
        for fk in self.den:
            keys.update(k for k, _ in fk)
        return sorted(keys, key=_var_sort)

    def to_text(self):
        num = self.full_numerator().to_text()
        if not self.den:
            return num
        den = "*".join(_factor_text(k) + (f"^{m}" if m > 1 else "") for k, m in self.factors())
        return f"({num})/({den})"

    __str__ = to_text

    def __repr__(self):
        return f"RatFn({self.to_text()})"


def _factor_sort(key):
    return tuple((k.sort_key(), e) for k, e in key)


def _as_factor(p):
    """Recognise ``c * u * (1 - m)``; returns ``(c, u_key, m_key)`` or ``None``."""
    if len(p.terms) != 2:
        return None
    items = list(p.items())
    for (c1, pw1), (c2, pw2) in (items, items[::-1]):
        if c1 != -c2:
            continue
        step = dict(pw2)
        for k, e in pw1.items():
            step[k] = step.get(k, 0) - e
        try:
            sign, unit, key = canonical_factor(step)
        except (NotInvertibleError, ZeroDivisionError):
            continue
        if sign == 1 and all(k.one_dim for k in pw1):
            return c1, _mono_key(pw1), key
    return None


def _factorize(p, budget=20000):
    """Write ``p = coeff * unit * prod(1 - m_i)`` or raise ``NotInvertibleError``."""
    if not p.terms:
        raise ZeroDivisionError("zero numerator")
    gens = p.gens
    mins = [min(m[i] for m in p.terms) for i in range(len(gens))]
    low = tuple(mins)
    if low not in p.terms:
        raise NotInvertibleError(f"numerator {p} is not a monomial times canonical factors")
    coeff = p.terms[low]
    unit = _mono_key(dict(zip(gens, low)))
    if any(not k.one_dim for k, _ in unit):
        raise NotInvertibleError(f"numerator {p} has a non-invertible monomial factor")
    rest = p.exact_div(Poly({low: coeff}, gens))

    attempts = [budget]

    def search(q, found, depth):
        if q.is_constant():
            return found if q.constant_value() == 1 else None
        cands = sorted((m for m in q.terms if any(m)), key=_order_key)
        tried = set()
        for m in cands:
            pw = {g: e for g, e in zip(q.gens, m) if e}
            try:
                sign, _, key = canonical_factor(pw)
            except (NotInvertibleError, ZeroDivisionError):
                continue
            if sign != 1 or key in tried:
                continue
            tried.add(key)
            attempts[0] -= 1
            if attempts[0] < 0:
                return None
            r = q.exact_div(_factor_poly(key))
            if r is None:
                continue
            res = search(r, found + [key], depth + 1)
            if res is not None:
                return res
        return None

    keys = search(rest, [], 0)
    if keys is None:
        raise NotInvertibleError(f"numerator {p} is not a monomial times canonical factors")
    return coeff, unit, keys


# ---------------------------------------------------------------------------
# truncated series

class TSeries:
    """Power series in a bookkeeping variable, truncated after ``order``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order):
        coeffs = [RatFn._coerce(c) for c in coeffs][: order + 1]
        coeffs += [RatFn(Poly.zero())] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def zero(cls, order):
        return cls([], order)

    def _check(self, other):
        if self.order != other.order:
            raise ValueError(f"series truncation mismatch: {self.order} vs {other.order}")

    def coeff(self, r):
        if r > self.order:
            raise ValueError(f"coefficient {r} beyond truncation order {self.order}")
        return self.coeffs[r]

    def min_degree(self):
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return None

    def __add__(self, other):
        self._check(other)
        return TSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other):
        self._check(other)
        return TSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def scale(self, c):
        """Multiply every coefficient by a scalar or ``RatFn``."""
        c = RatFn._coerce(c)
        return TSeries([a * c for a in self.coeffs], self.order)

    def __mul__(self, other):
        if not isinstance(other, TSeries):
            return self.scale(other)
        self._check(other)
        n = self.order
        out = [RatFn(Poly.zero()) for _ in range(n + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TSeries(out, n)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative series power")
        low = self.min_degree()
        if k and (low is None or low * k > self.order):
            return TSeries.zero(self.order)
        result = TSeries([RatFn.const(1)], self.order)
        for _ in range(k):
            result = result * self
        return result
