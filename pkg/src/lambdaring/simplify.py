"""Canonicalisation of expression trees.

``to_adams`` rewrites a tree as a rational function in the Adams operations
of its leaves; ``to_lambda`` goes one step further and expresses every Adams
operation through the lambda-powers of its operand.  Operands carry out the
variable-level work (see :mod:`lambdaring.operands`).
"""

from math import factorial

from .context import CONTEXT, PSI
from .errors import LambdaRingError
from .expr import Add, Const, Leaf, Mul, Pow, RingOp, as_expr
from .operands import operands_in
from .poly import AbstractVar, AdamsVar, Poly, Q, RatFn

__all__ = [
    "to_adams", "to_lambda", "apply_adams", "adams_on_lambda_form",
    "operand_apply_adams", "operand_subs_adams", "subs_adams",
    "const_lambda", "const_sigma", "lambda_of_form",
]


def const_lambda(c, n):
    """``lambda^n(c) = binom(c + n - 1, n)``, polynomial in ``c``."""
    c = Q(c)
    out = Q(1)
    for i in range(n):
        out *= c + i
    return out / factorial(n)


def const_sigma(c, n):
    """``sigma^n(c) = binom(c, n)``."""
    c = Q(c)
    out = Q(1)
    for i in range(n):
        out *= c - i
    return out / factorial(n)


# ---------------------------------------------------------------------------
# operand delegation

def operand_apply_adams(op, n, p):
    return op.apply_adams(n, p)


def operand_subs_adams(op, p):
    return op.subs_adams(p)


def apply_adams(n, p):
    """``psi^n`` of an Adams-form rational function."""
    if n == 1:
        return p
    for op in operands_in(p):
        p = op.apply_adams(n, p)
    return p


def subs_adams(p):
    """Rewrite an Adams-form rational function in lambda-powers."""
    for op in operands_in(p):
        p = op.subs_adams(p)
    return p


def adams_on_lambda_form(n, p):
    """``psi^n`` of a lambda-form rational function."""
    if n == 1:
        return p
    for op in operands_in(p):
        p = op.adams_on_lambda(n, p)
    return p


# ---------------------------------------------------------------------------
# lambda / sigma of an Adams form

def _single_adams_var(p):
    """The generator if ``p`` is exactly one Adams variable, else ``None``."""
    if not p.is_poly() or p.sign != 1 or p.unit or len(p.num.terms) != 1:
        return None
    (mono, c), = p.num.terms.items()
    if c != 1:
        return None
    nz = [(g, e) for g, e in zip(p.num.gens, mono) if e]
    if len(nz) == 1 and nz[0][1] == 1 and isinstance(nz[0][0], AdamsVar):
        return nz[0][0]
    return None


def _one_dim_monomial(p):
    """``(coeff, monomial)`` if ``p`` is a rational times a monomial in 1-dimensional generators."""
    if not p.is_poly():
        return None
    num = p.full_numerator()
    if len(num.terms) != 1:
        return None
    (mono, c), = num.terms.items()
    if any(e and not g.one_dim for g, e in zip(num.gens, mono)):
        return None
    return c, Poly({mono: Q(1)}, num.gens)


def lambda_of_form(kind, n, f, route="recurrence"):
    """``lambda^n`` or ``sigma^n`` of an Adams-form ``RatFn``.

    ``route`` selects between the Newton recurrence on the actual rational
    functions and substitution into the cached universal polynomial.
    """
    if n == 0:
        return RatFn.const(1)
    mono = _one_dim_monomial(f)
    if mono is not None:
        c, m = mono
        coeff = const_lambda(c, n) if kind == "lambda" else const_sigma(c, n)
        return RatFn(m ** n).scale(coeff)
    var = _single_adams_var(f)
    table = CONTEXT.lambda_in_adams(n) if kind == "lambda" else CONTEXT.sigma_in_adams(n)
    if var is not None:
        return RatFn(table.relabel(
            {AbstractVar(PSI, k): AdamsVar(var.operand, var.degree * k) for k in range(1, n + 1)}))
    images = [None] + [apply_adams(k, f) for k in range(1, n + 1)]
    if route == "table":
        return _eval_table(table, images)
    vals = [RatFn.const(1)]
    for m in range(1, n + 1):
        acc = RatFn(Poly.zero())
        for k in range(1, m + 1):
            term = images[k] * vals[m - k]
            if kind == "sigma" and k % 2 == 0:
                term = -term
            acc = acc + term
        vals.append(acc.scale(Q(1, m)))
    return vals[n]


def _eval_table(table, images):
    gens = table.gens
    idx = [g.index for g in gens]
    cache = {}

    def pw(j, e):
        if (j, e) not in cache:
            cache[(j, e)] = images[idx[j]] ** e
        return cache[(j, e)]

    out = RatFn(Poly.zero())
    for mono, c in table.terms.items():
        term = RatFn.const(c)
        for j, e in enumerate(mono):
            if e:
                term = term * pw(j, e)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# the recursive walk

def _describe(e):
    if isinstance(e, RingOp):
        return f"{e.kind}({e.degree}, ...)"
    if isinstance(e, Pow):
        return f"power {e.exp}"
    return type(e).__name__.lower()


class _Walker:
    def __init__(self):
        self.memo = {}

    def run(self, e):
        k = id(e)
        hit = self.memo.get(k)
        if hit is not None:
            return hit[1]
        try:
            out = self.visit(e)
        except LambdaRingError as exc:
            raise exc.with_context(_describe(e))
        self.memo[k] = (e, out)
        return out

    def visit(self, e):
        if isinstance(e, Const):
            return RatFn.const(e.value)
        if isinstance(e, Leaf):
            return RatFn(e.operand.to_adams())
        if isinstance(e, Add):
            out = RatFn(Poly.zero())
            for a in e.args:
                out = out + self.run(a)
            return out
        if isinstance(e, Mul):
            out = RatFn.const(1)
            for a in e.args:
                out = out * self.run(a)
            return out
        if isinstance(e, Pow):
            return self.run(e.base) ** e.exp
        if isinstance(e, RingOp):
            return self.ring_op(e)
        raise TypeError(f"not an expression node: {e!r}")

    def ring_op(self, e):
        if e.kind == "adams":
            return apply_adams(e.degree, self.run(e.child))
        if isinstance(e.child, Const):
            fn = const_lambda if e.kind == "lambda" else const_sigma
            return RatFn.const(fn(e.child.value, e.degree))
        return lambda_of_form(e.kind, e.degree, self.run(e.child))


def to_adams(e):
    """Adams form of an expression: a ``RatFn`` in ``psi^k`` of the leaves."""
    return _Walker().run(as_expr(e))


# ---------------------------------------------------------------------------
# lambda form

class _LambdaWalker(_Walker):
    """Lambda-form evaluation that avoids the Adams round trip where it can."""

    def visit(self, e):
        if isinstance(e, Leaf):
            return RatFn(e.operand.lambda_generator())
        if isinstance(e, RingOp):
            if e.kind == "adams":
                return adams_on_lambda_form(e.degree, self.run(e.child))
            series = self.atom_series(e.child, e.degree)
            if series is None:
                return subs_adams(to_adams(e))
            if e.kind == "lambda":
                return RatFn(series[e.degree])
            return RatFn(_sigma_from_lambda(series, e.degree))
        return super().visit(e)

    def atom_series(self, e, n):
        """``[lambda^0(e), ..., lambda^n(e)]`` when ``e`` is a sum of atoms, else ``None``."""
        terms = e.args if isinstance(e, Add) else (e,)
        total = None
        for t in terms:
            s = _atom_lambda_series(t, n)
            if s is None:
                return None
            total = s if total is None else _convolve(total, s, n)
        return total


def _atom_lambda_series(e, n):
    if isinstance(e, Leaf):
        return e.operand.lambda_powers(n)
    if isinstance(e, Const):
        return [Poly.const(const_lambda(e.value, k)) for k in range(n + 1)]
    coeff, factors = Q(1), (e,)
    if isinstance(e, Mul):
        coeff, factors = e.coefficient()
    mono = Poly.one()
    for f in factors:
        base, k = (f.base, f.exp) if isinstance(f, Pow) else (f, 1)
        if not isinstance(base, Leaf) or not base.operand.one_dim or k < 0:
            return None
        mono = mono * Poly.var(base.operand.var, k)
    return [mono ** k * const_lambda(coeff, k) if k else Poly.one() for k in range(n + 1)]


def _convolve(a, b, n):
    return [sum((a[i] * b[k - i] for i in range(k + 1)), Poly.zero()) for k in range(n + 1)]


def _sigma_from_lambda(lam, n):
    sig = [Poly.one()]
    for m in range(1, n + 1):
        acc = Poly.zero()
        for i in range(1, m + 1):
            term = lam[i] * sig[m - i]
            acc = acc + (term if i % 2 else -term)
        sig.append(acc)
    return sig[n]


def to_lambda(e, use_shortcut=True):
    """Lambda form of an expression: a ``RatFn`` in the lambda-powers of the leaves."""
    e = as_expr(e)
    if use_shortcut:
        return _LambdaWalker().run(e)
    return subs_adams(to_adams(e))
