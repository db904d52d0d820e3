"""Motives of connected semisimple groups, classifying stacks and stacks of bundles."""

from dataclasses import dataclass, field
from math import factorial, prod

from .errors import InconsistencyError
from .expr import add, lefschetz_leaf, mul, power
from .poly import LEFSCHETZ_VAR, Poly, RatFn

__all__ = [
    "GroupDescriptor", "preset", "group_motive", "bg", "bun", "check_integrity",
    "PRESET_KINDS", "EXCEPTIONAL",
]

# name: (degrees, Weyl group order)
EXCEPTIONAL = {
    "E6": ((2, 5, 6, 8, 9, 12), 51840),
    "E7": ((2, 6, 8, 10, 12, 14, 18), 2903040),
    "E8": ((2, 8, 12, 14, 18, 20, 24, 30), 696729600),
    "F4": ((2, 6, 8, 12), 1152),
    "G2": ((2, 6), 12),
}

PRESET_KINDS = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2", "SL", "GL", "PSL", "SO", "Sp", "Spin")


@dataclass(frozen=True)
class GroupDescriptor:
    name: str
    degrees: tuple
    dim: int
    pi1: int = 1
    weyl_order: int = None
    notes: tuple = field(default=())

    @property
    def rank(self):
        return len(self.degrees)

    def __post_init__(self):
        if any(d < 1 for d in self.degrees):
            raise ValueError(f"{self.name}: invariant degrees must be positive")
        if self.dim < self.rank or self.dim < 0:
            raise ValueError(f"{self.name}: dimension {self.dim} is below the rank {self.rank}")
        if self.pi1 < 1:
            raise ValueError(f"{self.name}: |pi_1| must be positive")


def check_integrity(G):
    """The two arithmetic identities every semisimple degree table satisfies."""
    dim_ok = sum(2 * d - 1 for d in G.degrees) == G.dim
    weyl_ok = G.weyl_order is None or prod(G.degrees) == G.weyl_order
    return dim_ok and weyl_ok


def _root_system(family, n):
    if family == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        return tuple(range(2, n + 2)), n * (n + 2), factorial(n + 1)
    if family in ("B", "C"):
        if n < 1:
            raise ValueError(f"{family}_n needs n >= 1")
        return tuple(range(2, 2 * n + 1, 2)), n * (2 * n + 1), 2 ** n * factorial(n)
    if family == "D":
        if n < 2:
            raise ValueError("D_n needs n >= 2")
        degs = tuple(sorted(tuple(range(2, 2 * n - 1, 2)) + (n,)))
        return degs, n * (2 * n - 1), 2 ** (n - 1) * factorial(n)
    raise ValueError(f"unknown root system {family!r}")


def preset(kind, n=None):
    """Descriptor of a named group; ``GL`` returns its class as an expression."""
    if kind in EXCEPTIONAL:
        degs, weyl = EXCEPTIONAL[kind]
        return GroupDescriptor(kind, degs, sum(2 * d - 1 for d in degs), 1, weyl)
    if n is None or not isinstance(n, int):
        raise ValueError(f"group family {kind!r} needs an integer parameter n")
    if kind in ("A", "B", "C", "D"):
        degs, dim, weyl = _root_system(kind, n)
        return GroupDescriptor(f"{kind}{n}", degs, dim, 1, weyl)
    if kind in ("SL", "PSL"):
        if n < 2:
            raise ValueError(f"{kind}_n needs n >= 2")
        degs, dim, weyl = _root_system("A", n - 1)
        return GroupDescriptor(f"{kind}{n}", degs, dim, n if kind == "PSL" else 1, weyl)
    if kind in ("SO", "Spin"):
        if n < 3:
            raise ValueError(f"{kind}_n is only provided for n >= 3")
        family, m = ("B", (n - 1) // 2) if n % 2 else ("D", n // 2)
        degs, dim, weyl = _root_system(family, m)
        return GroupDescriptor(f"{kind}{n}", degs, dim, 2 if kind == "SO" else 1, weyl)
    if kind == "Sp":
        degs, dim, weyl = _root_system("C", n)
        return GroupDescriptor(f"Sp{2 * n}", degs, dim, 1, weyl)
    if kind == "GL":
        if n < 1:
            raise ValueError("GL_n needs n >= 1")
        L = lefschetz_leaf()
        return mul(*[add(power(L, n), -power(L, k)) for k in range(n)])
    raise ValueError(f"unknown group family {kind!r}")


def group_motive(G):
    """``[G] = L^dim * prod(1 - L^-d)`` expanded into a polynomial in ``L``."""
    out = Poly.var(LEFSCHETZ_VAR, G.dim) if G.dim else Poly.one()
    for d in G.degrees:
        out = out * (Poly.one() - Poly.var(LEFSCHETZ_VAR, -d))
    if out.min_degree(LEFSCHETZ_VAR) < 0:
        raise InconsistencyError(f"[{G.name}] kept a negative power of L")
    return out


def bg(G):
    """``[BG] = 1/[G]`` in factored form."""
    # [G] = (-1)^r L^(dim - sum d) prod(1 - L^d)
    r = G.rank
    out = RatFn(Poly.monomial({LEFSCHETZ_VAR: sum(G.degrees) - G.dim}, (-1) ** r))
    for d in G.degrees:
        out = out * RatFn.inverse_factor({LEFSCHETZ_VAR: d})
    return out


def bun(G, curve):
    """``|pi_1| L^((g-1) dim) prod Z_X(L^-d)``."""
    g = curve.genus
    out = RatFn(Poly.monomial({LEFSCHETZ_VAR: (g - 1) * G.dim}, G.pi1))
    for d in G.degrees:
        out = out * curve.Z_eval({LEFSCHETZ_VAR: -d})
    return out
