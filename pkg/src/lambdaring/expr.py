"""Immutable lambda-ring expression trees.

Nodes are built through the module-level constructors (``const``, ``add``,
``mul``, ``power``, ``ring_op``), which flatten nested sums and products,
fold constants and sort children, so structurally equal trees compare equal.
"""

from fractions import Fraction

from .operands import LEFSCHETZ, CurveChow, Free, PolyVar
from .poly import Q

__all__ = [
    "Expr", "Const", "Leaf", "Add", "Mul", "Pow", "RingOp",
    "const", "leaf", "add", "mul", "power", "ring_op", "apply_ring_op",
    "make_free", "structural_equal", "render", "as_expr", "RING_OPS",
]

RING_OPS = ("lambda", "sigma", "adams")
_OP_RANK = {k: i for i, k in enumerate(RING_OPS)}


def _rational(value):
    if isinstance(value, Fraction):
        return Q(value.numerator, value.denominator)
    return Q(value)


class Expr:
    __slots__ = ("_key",)

    def key(self):
        k = self._key
        if k is None:
            k = self._key = self._make_key()
        return k

    def _make_key(self):
        raise NotImplementedError

    def __eq__(self, other):
        if not isinstance(other, Expr):
            if isinstance(other, (int, Fraction)) or hasattr(other, "denominator"):
                other = const(other)
            else:
                return NotImplemented
        return self is other or self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def children(self):
        return ()

    # arithmetic builds trees; nothing is simplified beyond flattening
    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __neg__(self):
        return mul(Const(Q(-1)), self)

    def __sub__(self, other):
        return add(self, -as_expr(other))

    def __rsub__(self, other):
        return add(as_expr(other), -self)

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        other = as_expr(other)
        if isinstance(other, Const):
            if not other.value:
                raise ZeroDivisionError("division by zero")
            return mul(self, Const(1 / other.value))
        return mul(self, power(other, -1))

    def __rtruediv__(self, other):
        return as_expr(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return power(self, k)

    def lambda_(self, n):
        return ring_op("lambda", n, self)

    def sigma(self, n):
        return ring_op("sigma", n, self)

    def adams(self, n):
        return ring_op("adams", n, self)

    def to_adams(self):
        from .simplify import to_adams
        return to_adams(self)

    def to_lambda(self, use_shortcut=True):
        from .simplify import to_lambda
        return to_lambda(self, use_shortcut=use_shortcut)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Expr({render(self)})"


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        self._key = None
        self.value = _rational(value)

    def _make_key(self):
        return (0, self.value)


class Leaf(Expr):
    __slots__ = ("operand",)

    def __init__(self, operand):
        self._key = None
        self.operand = operand

    def _make_key(self):
        return (1, self.operand.oid)


class Pow(Expr):
    __slots__ = ("base", "exp")

    def __init__(self, base, exp):
        self._key = None
        self.base = base
        self.exp = exp

    def children(self):
        return (self.base,)

    def _make_key(self):
        return (2, self.base.key(), self.exp)


class RingOp(Expr):
    __slots__ = ("kind", "degree", "child")

    def __init__(self, kind, degree, child):
        self._key = None
        self.kind = kind
        self.degree = degree
        self.child = child

    def children(self):
        return (self.child,)

    def _make_key(self):
        return (3, _OP_RANK[self.kind], self.degree, self.child.key())


class Mul(Expr):
    __slots__ = ("args",)

    def __init__(self, args):
        self._key = None
        self.args = tuple(args)

    def children(self):
        return self.args

    def _make_key(self):
        return (4, tuple(a.key() for a in self.args))

    def coefficient(self):
        first = self.args[0]
        if isinstance(first, Const):
            return first.value, self.args[1:]
        return Q(1), self.args


class Add(Expr):
    __slots__ = ("args",)

    def __init__(self, args):
        self._key = None
        self.args = tuple(args)

    def children(self):
        return self.args

    def _make_key(self):
        return (5, tuple(a.key() for a in self.args))


# ---------------------------------------------------------------------------
# constructors

def as_expr(value):
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)) or hasattr(value, "denominator"):
        return Const(value)
    raise TypeError(f"cannot use {value!r} in a lambda-ring expression")


def const(value):
    return Const(value)


def leaf(operand):
    return Leaf(operand)


def add(*terms):
    flat = []
    total = Q(0)
    for t in terms:
        t = as_expr(t)
        parts = t.args if isinstance(t, Add) else (t,)
        for p in parts:
            if isinstance(p, Const):
                total += p.value
            else:
                flat.append(p)
    if total:
        flat.append(Const(total))
    if not flat:
        return Const(0)
    if len(flat) == 1:
        return flat[0]
    return Add(sorted(flat, key=Expr.key))


def mul(*factors):
    flat = []
    coeff = Q(1)
    for f in factors:
        f = as_expr(f)
        parts = f.args if isinstance(f, Mul) else (f,)
        for p in parts:
            if isinstance(p, Const):
                coeff *= p.value
            else:
                flat.append(p)
    if not coeff:
        return Const(0)
    if coeff != 1:
        flat.append(Const(coeff))
    if not flat:
        return Const(1)
    if len(flat) == 1:
        return flat[0]
    return Mul(sorted(flat, key=Expr.key))


def power(base, k):
    """``base ** k``.  Negative exponents are an extension used for motive denominators."""
    base = as_expr(base)
    if not isinstance(k, int):
        raise TypeError("exponents must be integers")
    if k == 0:
        return Const(1)
    if k == 1:
        return base
    if isinstance(base, Const):
        if k < 0 and not base.value:
            raise ZeroDivisionError("negative power of zero")
        return Const(base.value ** k)
    return Pow(base, k)


def ring_op(kind, n, e):
    if kind not in _OP_RANK:
        raise ValueError(f"unknown operator {kind!r}")
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("operator degree must be an integer")
    if n < 0:
        raise ValueError(f"operator degree must be non-negative, got {n}")
    e = as_expr(e)
    if kind == "adams":
        if n == 0:
            raise ValueError("the Adams operation psi^0 is undefined")
        return RingOp(kind, n, e)
    if n == 0:
        return Const(1)
    if n == 1:
        return e
    return RingOp(kind, n, e)


apply_ring_op = ring_op


def make_free(name):
    return Leaf(Free(name))


def structural_equal(a, b):
    return as_expr(a).key() == as_expr(b).key()


# ---------------------------------------------------------------------------
# text form

def _fmt(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _render_atom(e):
    """Render ``e`` so it can stand as the base of ``^`` or a factor of ``*``."""
    if isinstance(e, (Leaf, RingOp)):
        return render(e)
    if isinstance(e, Const) and e.value >= 0 and e.value.denominator == 1:
        return render(e)
    return f"({render(e)})"


def _render_unsigned(e):
    """``(negative, text)`` with the sign pulled out of constants and coefficients."""
    if isinstance(e, Const):
        return e.value < 0, _fmt(abs(e.value))
    if isinstance(e, Mul):
        c, rest = e.coefficient()
        body = "*".join(_render_factor(f) for f in rest)
        num, den = abs(c.numerator), c.denominator
        if num != 1:
            body = f"{num}*{body}"
        if den != 1:
            body = f"{body}/{den}"
        return c < 0, body
    return False, render(e)


def _render_factor(e):
    if isinstance(e, Pow):
        return render(e)
    return _render_atom(e)


def render(e):
    e = as_expr(e)
    if isinstance(e, Const):
        return _fmt(e.value)
    if isinstance(e, Leaf):
        return e.operand.display
    if isinstance(e, RingOp):
        return f"{e.kind}({e.degree}, {render(e.child)})"
    if isinstance(e, Pow):
        return f"{_render_atom(e.base)}^{e.exp}"
    if isinstance(e, Mul):
        neg, body = _render_unsigned(e)
        return "-" + body if neg else body
    out = ""
    for i, t in enumerate(e.args):
        neg, body = _render_unsigned(t)
        if i == 0:
            out = "-" + body if neg else body
        else:
            out += (" - " if neg else " + ") + body
    return out


def lefschetz_leaf():
    return Leaf(LEFSCHETZ)


def polyvar_leaf(name):
    return Leaf(PolyVar.get(name))


def curve_leaf(name, genus):
    return Leaf(CurveChow(name, genus))
