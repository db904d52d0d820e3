"""Symbolic lambda-ring engine with a Grothendieck-motive layer."""

from .context import CONTEXT, LambdaRingContext, get_context
from .errors import InconsistencyError, LambdaRingError, NotInvertibleError, ParseError
from .expr import (
    Add, Const, Expr, Leaf, Mul, Pow, RingOp, add, apply_ring_op, make_free, mul, power,
    render, ring_op, structural_equal,
)
from .groups import GroupDescriptor, bg, bun, group_motive, preset
from .higgs import (
    Report, adhm_H_n, adhm_H_r, adhm_motive, bb_motive, higgs_bb, verify_mozgovoy,
    vb_moduli, vb_moduli_general,
)
from .motives import Alt, Curve, Sym, curve, lefschetz, point, proj
from .operands import LEFSCHETZ, CurveChow, Free, PolyVar
from .parser import parse_expr
from .partitions import Partition, hook_stats, moebius, partitions
from .poly import Poly, RatFn, TSeries
from .simplify import apply_adams, to_adams, to_lambda

__all__ = [
    "CONTEXT", "LambdaRingContext", "get_context",
    "InconsistencyError", "LambdaRingError", "NotInvertibleError", "ParseError",
    "Add", "Const", "Expr", "Leaf", "Mul", "Pow", "RingOp", "add", "apply_ring_op", "make_free",
    "mul", "power", "render", "ring_op", "structural_equal",
    "GroupDescriptor", "bg", "bun", "group_motive", "preset",
    "Report", "adhm_H_n", "adhm_H_r", "adhm_motive", "bb_motive", "higgs_bb", "verify_mozgovoy",
    "vb_moduli", "vb_moduli_general",
    "Alt", "Curve", "Sym", "curve", "lefschetz", "point", "proj",
    "LEFSCHETZ", "CurveChow", "Free", "PolyVar",
    "parse_expr", "Partition", "hook_stats", "moebius", "partitions",
    "Poly", "RatFn", "TSeries", "apply_adams", "to_adams", "to_lambda",
]
