"""Basic Grothendieck motives and abstract curves."""

from .errors import LambdaRingError
from .expr import Const, Leaf, add, as_expr, lefschetz_leaf, mul, power, ring_op
from .operands import CurveChow
from .poly import LEFSCHETZ_VAR, NamedVar, Poly, RatFn

__all__ = [
    "lefschetz", "point", "proj", "Curve", "curve", "curve_class", "reduce_chow",
    "jacobian", "picard", "P_eval", "Z_eval", "Sym", "Alt", "monomial",
]


def lefschetz():
    return lefschetz_leaf()


def point():
    return Const(1)


def proj(n):
    if n < 0:
        raise ValueError(f"projective space of negative dimension {n}")
    L = lefschetz()
    return add(*[power(L, k) for k in range(n + 1)])


def Sym(n, e):
    """Symmetric power, the lambda structure on motives."""
    return ring_op("lambda", n, e)


def Alt(n, e):
    """Alternating power, the sigma structure on motives."""
    return ring_op("sigma", n, e)


def monomial(t=0, L=0, t_name="t"):
    """The monomial ``t^t * L^L`` as a ``Poly``."""
    return Poly.monomial({NamedVar(t_name): t, LEFSCHETZ_VAR: L})


def _as_monomial(arg):
    if isinstance(arg, dict):
        arg = Poly.monomial(arg)
    if isinstance(arg, RatFn):
        arg = arg.to_poly()
    if not isinstance(arg, Poly):
        arg = Poly.const(arg)
    if len(arg.terms) != 1:
        raise LambdaRingError(f"expected a monomial argument, got {arg}")
    (mono, c), = arg.terms.items()
    if c != 1:
        raise LambdaRingError(f"expected a monic monomial argument, got {arg}")
    powers = {g: e for g, e in zip(arg.gens, mono) if e}
    if any(not g.one_dim for g in powers):
        raise LambdaRingError(f"argument {arg} must only involve t and L")
    return arg, powers


class Curve:
    """Abstract smooth projective curve of genus ``g`` with ``[X] = 1 + h1 + L``."""

    def __init__(self, name="X", genus=1):
        if genus < 1:
            raise ValueError(f"curve genus must be at least 1, got {genus} (use proj(1) for genus 0)")
        self.name = name
        self.genus = genus
        self.chow = CurveChow(f"h1_{name}", genus)
        self.h1 = Leaf(self.chow)

    def __repr__(self):
        return f"Curve({self.name!r}, genus={self.genus})"

    def curve_class(self):
        return add(Const(1), self.h1, lefschetz())

    def reduce_chow(self, k):
        return self.chow.reduce(k)

    def jacobian(self):
        return add(*[ring_op("lambda", k, self.h1) for k in range(2 * self.genus + 1)])

    picard = jacobian

    def P_expr(self, arg):
        """``P_X(arg)`` as an expression, for a monomial expression ``arg``."""
        arg = as_expr(arg)
        return add(*[mul(ring_op("lambda", k, self.h1), power(arg, k)) for k in range(2 * self.genus + 1)])

    def P_eval(self, arg):
        """``sum_n reduce_chow(n) * arg^n`` for a monomial ``arg`` in ``t`` and ``L``."""
        m, _ = _as_monomial(arg)
        out = Poly.zero()
        for n in range(2 * self.genus + 1):
            out = out + self.chow.reduce(n) * m ** n
        return out

    def Z_eval(self, arg):
        """Motivic zeta function ``P_X(arg) / ((1 - arg)(1 - L arg))``."""
        m, powers = _as_monomial(arg)
        if not powers:
            raise LambdaRingError("the zeta function has a pole at 1; use P_eval for the specialisation")
        shifted = dict(powers)
        shifted[LEFSCHETZ_VAR] = shifted.get(LEFSCHETZ_VAR, 0) + 1
        out = RatFn(self.P_eval(m)) * RatFn.inverse_factor(powers)
        if any(shifted.values()):
            out = out * RatFn.inverse_factor(shifted)
        else:
            raise LambdaRingError("the zeta function has a pole at L^-1")
        return out


def curve(g, name="X"):
    return Curve(name, g)


def curve_class(h):
    return h.curve_class()


def reduce_chow(h, k):
    return h.reduce_chow(k)


def jacobian(h):
    return h.jacobian()


def picard(h):
    return h.jacobian()


def P_eval(h, arg):
    return h.P_eval(arg)


def Z_eval(h, arg):
    return h.Z_eval(arg)
