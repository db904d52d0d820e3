"""Shared helpers and independent oracles for the test-suite.

The symmetric-function oracle specialises a free element to a sum of ``N``
line elements ``a_1 + ... + a_N``.  In that ring ``psi^k`` is the power sum,
``lambda^k`` the complete homogeneous and ``sigma^k`` the elementary
symmetric polynomial, all computed here with sympy and nothing from the
package.
"""

import itertools

import pytest
import sympy

from lambdaring.context import LAM, PSI, SIG, X
from lambdaring.poly import AbstractVar, AdamsVar, LambdaVar, LefschetzVar, NamedVar, Poly

N_ROOTS = 6
ROOTS = sympy.symbols(f"a1:{N_ROOTS + 1}")


def power_sum(k, roots=ROOTS):
    return sum(a ** k for a in roots)


def elementary(k, roots=ROOTS):
    if k == 0:
        return sympy.Integer(1)
    return sum(sympy.Mul(*c) for c in itertools.combinations(roots, k))


def complete(k, roots=ROOTS):
    if k == 0:
        return sympy.Integer(1)
    return sum(sympy.Mul(*c) for c in itertools.combinations_with_replacement(roots, k))


_FAMILY_VALUE = {PSI: power_sum, LAM: complete, SIG: elementary}


def to_sympy(p, env=None):
    """Evaluate a ``Poly`` with sympy values for its generators."""
    env = env or {}
    out = sympy.Integer(0)
    for c, powers in p.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for key, e in powers.items():
            term *= value_of(key, env) ** e
        out += term
    return sympy.expand(out)


def value_of(key, env):
    if key in env:
        return env[key]
    if isinstance(key, AbstractVar) and key.family in _FAMILY_VALUE:
        return _FAMILY_VALUE[key.family](key.index)
    if isinstance(key, LefschetzVar):
        return sympy.Symbol("L")
    if isinstance(key, NamedVar):
        return sympy.Symbol(key.name)
    raise KeyError(f"no oracle value for {key}")


def free_env(op, degree, family, roots=ROOTS):
    """Values for the Adams or lambda generators of a free operand specialised to ``roots``."""
    env = {}
    for k in range(1, degree + 1):
        if family == "adams":
            env[AdamsVar(op, k)] = power_sum(k, roots)
        else:
            env[LambdaVar(op, k)] = complete(k, roots)
    return env


def poly_equal(a, b):
    return (a - b).is_zero()


@pytest.fixture
def roots():
    return ROOTS


__all__ = ["to_sympy", "power_sum", "elementary", "complete", "free_env", "ROOTS", "X", "ACCEPTANCE_LINES"]


# acceptance lines are collected here and printed after the run, so they
# show up regardless of output capturing
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
