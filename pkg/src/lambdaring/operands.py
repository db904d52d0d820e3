"""Leaf objects of lambda-ring expressions.

Every operand decides how Adams operations act on its own generators
(``apply_adams``) and how its Adams generators are rewritten in terms of its
lambda-powers (``subs_adams``).  The simplifier only ever talks to operands
through these methods.
"""

import itertools
import os
import threading
from functools import lru_cache

from .context import CONTEXT, LAM, PSI
from .poly import (
    LEFSCHETZ_VAR, AbstractVar, AdamsVar, LambdaVar, LefschetzVar, NamedVar, Poly, RatFn,
)


def _cache_cap():
    raw = os.environ.get("LAMBDARING_CACHE_SIZE")
    if not raw:
        return None
    return max(int(raw), 0)


_ids = itertools.count(1)
_id_lock = threading.Lock()


def _next_id():
    with _id_lock:
        return next(_ids)


class Operand:
    """Base leaf.  Equality is identity of the session id."""

    kind = "operand"
    one_dim = False

    def __init__(self, name):
        if not name:
            raise ValueError("operand name must be non-empty")
        self.oid = _next_id()
        self.name = name

    def __eq__(self, other):
        return isinstance(other, Operand) and other.oid == self.oid

    def __hash__(self):
        return hash(("operand", self.oid))

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}, oid={self.oid})"

    @property
    def display(self):
        return self.name

    # The delegation surface used by the simplifier.

    def to_adams(self):
        raise NotImplementedError

    def apply_adams(self, n, p):
        raise NotImplementedError

    def subs_adams(self, p):
        raise NotImplementedError

    def lambda_generator(self):
        raise NotImplementedError

    def lambda_powers(self, n):
        """``[lambda^0, ..., lambda^n]`` of the leaf, already in lambda form."""
        raise NotImplementedError

    def adams_on_lambda(self, n, p):
        """Apply ``psi^n`` to the lambda-form generators of this operand inside ``p``."""
        raise NotImplementedError


class Free(Operand):
    """Element of a free lambda-ring: all lambda-powers are independent."""

    kind = "free"

    def adams_var(self, k):
        return AdamsVar(self, k)

    def lambda_var(self, k):
        return LambdaVar(self, k)

    def to_adams(self):
        return Poly.var(AdamsVar(self, 1))

    def lambda_generator(self):
        return Poly.var(LambdaVar(self, 1))

    def lambda_power(self, k):
        if k == 0:
            return Poly.one()
        return Poly.var(LambdaVar(self, k))

    def lambda_powers(self, n):
        return [self.lambda_power(k) for k in range(n + 1)]

    def psi_image(self, k):
        """``psi^k`` of this operand written in its lambda-powers."""
        return _psi_image(self, k)

    def _psi_image(self, k):
        return CONTEXT.adams_in_lambda(k).relabel(
            {AbstractVar(LAM, i): LambdaVar(self, i) for i in range(1, k + 1)})

    def _adams_vars(self, p):
        return [g for g in p.gens if isinstance(g, AdamsVar) and g.operand == self]

    def apply_adams(self, n, p):
        if n == 1:
            return p
        return p.map_numerator(
            lambda num: num.relabel({g: AdamsVar(self, g.degree * n) for g in self._adams_vars(num)}))

    def subs_adams(self, p):
        return p.map_numerator(
            lambda num: num.compose({g: self.psi_image(g.degree) for g in self._adams_vars(num)}))

    def adams_on_lambda(self, n, p):
        if n == 1:
            return p

        def fn(num):
            gens = [g for g in num.gens if isinstance(g, LambdaVar) and g.operand == self]
            return num.compose({g: _psi_of_lambda(self, n, g.degree) for g in gens})
        return p.map_numerator(fn)


class CurveChow(Free):
    """The middle Chow summand ``h^1`` of a genus ``g`` curve.

    Only ``lambda^1..lambda^g`` are generators; higher powers are rewritten
    with the functional-equation rules of :meth:`reduce`.
    """

    kind = "curve"

    def __init__(self, name, genus):
        if genus < 1:
            raise ValueError(f"curve genus must be at least 1, got {genus}")
        super().__init__(name)
        self.genus = genus

    def reduce(self, k):
        g = self.genus
        if k < 0 or k > 2 * g:
            return Poly.zero()
        if k == 0:
            return Poly.one()
        if k <= g:
            return Poly.var(LambdaVar(self, k))
        return Poly.var(LEFSCHETZ_VAR, k - g) * self.reduce(2 * g - k)

    def lambda_power(self, k):
        return self.reduce(k)

    def _psi_image(self, k):
        return CONTEXT.adams_in_lambda(k).compose(
            {AbstractVar(LAM, i): self.reduce(i) for i in range(1, k + 1)})


class OneDim(Operand):
    """Operand with ``sigma_t(x) = 1 + x t``: every ``psi^n`` and ``lambda^n`` is ``x^n``."""

    one_dim = True
    var = None

    def to_adams(self):
        return Poly.var(self.var)

    def lambda_generator(self):
        return Poly.var(self.var)

    def lambda_powers(self, n):
        return [Poly.var(self.var, k) if k else Poly.one() for k in range(n + 1)]

    def apply_adams(self, n, p):
        return p.scale_exponent(self.var, n)

    def subs_adams(self, p):
        return p

    def adams_on_lambda(self, n, p):
        return p.scale_exponent(self.var, n)


class Lefschetz(OneDim):
    kind = "lefschetz"
    var = LEFSCHETZ_VAR

    def __init__(self):
        super().__init__("L")


class PolyVar(OneDim):
    """Polynomial variable ``T`` with ``lambda^n(T) = T^n``; interned by name."""

    kind = "polyvar"
    _registry = {}
    _lock = threading.Lock()

    def __init__(self, name):
        super().__init__(name)
        self.var = NamedVar(name)

    @classmethod
    def get(cls, name):
        with cls._lock:
            op = cls._registry.get(name)
            if op is None:
                op = cls(name)
                cls._registry[name] = op
            return op


LEFSCHETZ = Lefschetz()


def operand_of(key):
    """The operand owning a polynomial generator."""
    if isinstance(key, (AdamsVar, LambdaVar)):
        return key.operand
    if isinstance(key, LefschetzVar):
        return LEFSCHETZ
    if isinstance(key, NamedVar):
        return PolyVar.get(key.name)
    raise TypeError(f"generator {key} has no operand")


def operands_in(p):
    """Operands whose generators occur in a ``RatFn``, in generator order."""
    seen = {}
    for key in p.generators():
        if isinstance(key, AbstractVar):
            continue
        op = operand_of(key)
        seen.setdefault(op.oid, op)
    return list(seen.values())


_CAP = _cache_cap()


@lru_cache(maxsize=_CAP)
def _psi_image(op, k):
    return op._psi_image(k)


@lru_cache(maxsize=_CAP)
def _psi_of_lambda(op, n, k):
    """``psi^n(lambda^k(op))`` in lambda form."""
    return CONTEXT.lambda_in_adams(k).compose(
        {AbstractVar(PSI, i): op.psi_image(n * i) for i in range(1, k + 1)})


def clear_caches():
    _psi_image.cache_clear()
    _psi_of_lambda.cache_clear()


__all__ = [
    "Operand", "Free", "CurveChow", "OneDim", "Lefschetz", "PolyVar", "LEFSCHETZ",
    "operand_of", "operands_in", "clear_caches", "RatFn",
]
