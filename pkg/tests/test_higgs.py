from fractions import Fraction
from math import factorial, prod

import pytest
import sympy
from sympy.functions.combinatorial.numbers import partition

import higgs_oracle as oracle
from lambdaring.errors import InconsistencyError
from lambdaring.higgs import (
    T_VAR, adhm_H_n, adhm_H_r, adhm_motive, bb_motive, higgs_bb, moduli_dimension, motive_weight,
    vb_moduli, vb_moduli_general, verify_mozgovoy,
)
from lambdaring.motives import Curve, lefschetz
from lambdaring.partitions import (
    Partition, compositions, frac_part, hook_stats, moebius, multiplicity, ordered_partitions, partitions,
)
from lambdaring.poly import LEFSCHETZ_VAR, Poly, RatFn
from lambdaring.simplify import to_lambda

L = Poly.var(LEFSCHETZ_VAR)
t = Poly.var(T_VAR)


# --- combinatorics ----------------------------------------------------------

def test_partition_counts():
    assert [len(partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    for n in range(8, 16):
        assert len(partitions(n)) == partition(n)


def test_partition_order_and_validation():
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    with pytest.raises(ValueError):
        Partition((1, 2))
    assert ordered_partitions(0, 0) == [()]
    assert ordered_partitions(5, 2) == [(4, 1), (3, 2)]
    assert multiplicity((3, 3, 2, 1, 1), 1) == 2
    assert multiplicity((3, 3, 2, 1, 1), 2) == 1
    assert multiplicity((3, 3, 2, 1, 1), 3) == 2
    assert len(compositions(5)) == 2 ** 4


def test_hook_examples():
    assert hook_stats((1,)) == [((1, 1), 0, 0, 1)]
    stats = {cell: (a, l, h) for cell, a, l, h in hook_stats((2, 1))}
    assert stats[(1, 1)] == (1, 1, 3)
    assert stats[(1, 2)] == (0, 0, 1)
    assert stats[(2, 1)] == (0, 0, 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_hook_consistency(n):
    # the hook length formula: sum over partitions of (n!/prod h)^2 is n!
    total = 0
    for lam in partitions(n):
        stats = hook_stats(lam)
        assert len(stats) == n
        assert all(h >= 1 and a >= 0 and l >= 0 and h == a + l + 1 for _, a, l, h in stats)
        f = Fraction(factorial(n), prod(h for *_, h in stats))
        assert f.denominator == 1
        total += f * f
    assert total == factorial(n)


def test_moebius_and_frac_part():
    assert [moebius(j) for j in (1, 2, 4)] == [1, -1, 0]
    assert all(moebius(j) == sympy.mobius(j) for j in range(1, 200))
    with pytest.raises(ValueError):
        moebius(0)
    assert frac_part(Fraction(-5, 3)) == Fraction(1, 3)
    assert frac_part(2) == 0


# --- vector bundles ---------------------------------------------------------

def test_vb_rank_two_genus_two_is_polynomial():
    c = Curve("X", 2)
    rf = to_lambda(vb_moduli(c, 2, 1)).cancel()
    assert rf.is_poly()
    p = rf.to_poly()
    assert p.weighted_degree(motive_weight) == 4 * 2 - 3


@pytest.mark.parametrize("r, g", [(2, 2), (2, 3), (3, 2)])
def test_vb_against_root_model(r, g):
    c = Curve("X", g)
    p = to_lambda(vb_moduli(c, r, 1)).cancel().to_poly()
    pt = oracle.Point(g, 11)
    J, PL, Lv = pt.P(1), pt.P(pt.L), pt.L
    if r == 2:
        expected = (J * PL - Lv ** g * J ** 2) / ((Lv - 1) * (Lv ** 2 - 1))
    else:
        PL2 = pt.P(Lv ** 2)
        expected = J / ((Lv - 1) * (Lv ** 2 - 1) ** 2 * (Lv ** 3 - 1)) * (
            Lv ** (3 * g - 1) * (1 + Lv + Lv ** 2) * J ** 2 - Lv ** (2 * g - 1) * (1 + Lv) ** 2 * J * PL + PL * PL2)
    assert oracle.specialise(p, c, pt) == expected
    assert p.weighted_degree(motive_weight) == (r * r) * (g - 1) + 1


def test_vb_general_rank_one_is_the_jacobian():
    c = Curve("X", 2)
    assert to_lambda(vb_moduli_general(c, 1, 0)).equals(to_lambda(c.jacobian()))


@pytest.mark.parametrize("r, g, d", [(2, 2, 1), (2, 3, 1), (3, 2, 1), (3, 3, 1), (3, 2, 2)])
def test_vb_general_agrees_with_explicit(r, g, d):
    c = Curve("X", g)
    general = to_lambda(vb_moduli_general(c, r, d)).cancel()
    explicit = to_lambda(vb_moduli(c, r, d)).cancel()
    assert general.is_poly()
    assert general.to_poly() == explicit.to_poly()


def test_vb_rejects_bad_input():
    c = Curve("X", 2)
    with pytest.raises(ValueError):
        vb_moduli(c, 2, 2)
    with pytest.raises(ValueError):
        vb_moduli(c, 4, 1)
    with pytest.raises(ValueError):
        vb_moduli_general(c, 3, 3)
    with pytest.raises(ValueError):
        vb_moduli(Curve("Y", 1), 2, 1)


# --- Bialynicki-Birula ------------------------------------------------------

def test_bb_rank_one():
    for g, p in [(2, 1), (3, 2), (4, 5)]:
        c = Curve("X", g)
        assert bb_motive(c, p, 1) == L ** (g - 1 + p) * c.P_eval({})


def test_bb_rank_two_tail_bound():
    # g = 2, p = 1: floor((2g - 1 + p) / 2) = 2 correction terms, lambda^2 and lambda^0 of [X]
    g, p = 2, 1
    assert (2 * g - 1 + p) // 2 == 2
    c = Curve("X", g)
    X = c.curve_class()
    main = higgs_bb(c, p, 2)
    Le = lefschetz()
    J = c.jacobian()
    PL = c.P_expr(Le)
    first = Le ** (4 * g - 4 + 4 * p) * (J * PL - Le ** g * J ** 2) * ((1 - Le) * (1 - Le ** 2)) ** -1
    tail = Le ** (4 * g - 4 + 3 * p) * J * (X.lambda_(2) + 1)
    assert to_lambda(main).equals(to_lambda(first + tail))


def test_bb_rank_three_bounds():
    from math import floor
    # (e, floor(1/3 + e/2), floor(2/3 + e/2)) with e = 2g - 2 + p
    for e, top1, top2 in [(2, 1, 1), (3, 1, 2), (4, 2, 2), (5, 2, 3)]:
        assert floor(Fraction(1, 3) + Fraction(e, 2)) == top1
        assert floor(Fraction(2, 3) + Fraction(e, 2)) == top2


def test_bb_rejects_unsupported_rank():
    with pytest.raises(ValueError):
        higgs_bb(Curve("X", 2), 1, 4)
    with pytest.raises(ValueError):
        higgs_bb(Curve("X", 2), 0, 2)


# --- Mozgovoy ---------------------------------------------------------------

@pytest.mark.parametrize("p", [1, 2])
def test_H1(p):
    g = 2
    c = Curve("X", g)
    h1 = adhm_H_n(c, 1, p)
    expected = RatFn(Poly.monomial({T_VAR: 1 - g}, (-1) ** p)) * c.Z_eval(t)
    assert h1.equals(expected)


def test_H2_has_four_cells():
    assert sum(len(hook_stats(lam)) for lam in partitions(2)) == 4


@pytest.mark.parametrize("g, p", [(2, 1), (2, 2), (3, 1)])
def test_H_r_rank_one(g, p):
    c = Curve("X", g)
    h = adhm_H_r(c, 1, p)
    assert h == c.P_eval(t) * Poly.monomial({T_VAR: 1 - g}, (-1) ** p)
    assert h.evaluate(T_VAR, 1) == c.P_eval({}) * (-1) ** p


@pytest.mark.parametrize("g", range(2, 7))
@pytest.mark.parametrize("p", [1, 2, 3])
def test_adhm_rank_one_identity(g, p):
    c = Curve("X", g)
    assert adhm_motive(c, p, 1) - L ** (g - 1 + p) * c.P_eval({}) == Poly.zero()


@pytest.mark.parametrize("g, p, r", [(2, 1, 2), (2, 2, 2), (3, 1, 2), (2, 1, 3)])
def test_H_r_is_polynomial_in_t_in_root_model(g, p, r):
    pt = oracle.Point(g, 5)
    h = oracle.H_r(pt, p, r)
    num, den = sympy.fraction(sympy.together(h))
    # only Laurent powers of t may remain
    assert sympy.Poly(den, oracle.t).is_monomial


@pytest.mark.parametrize("g, p, r", [(2, 1, 1), (2, 1, 2), (2, 2, 2), (3, 1, 2), (2, 1, 3)])
def test_both_routes_against_root_model(g, p, r):
    c = Curve("X", g)
    adhm = adhm_motive(c, p, r)
    bb = bb_motive(c, p, r)
    for seed in (1, 2):
        pt = oracle.Point(g, seed)
        a_val = oracle.adhm(pt, p, r)
        b_val = oracle.bb(pt, p, r)
        assert a_val == b_val
        assert oracle.specialise(adhm, c, pt) == a_val
        assert oracle.specialise(bb, c, pt) == b_val


@pytest.mark.parametrize("g, p, r", [(2, 1, 1), (2, 1, 2), (3, 2, 3)])
def test_verify_examples(g, p, r):
    rep = verify_mozgovoy(g, p, r)
    assert rep.equal and rep.error is None
    assert rep.weighted_degree <= moduli_dimension(g, p, r)
    assert rep.n_terms == len(rep.adhm.terms) > 0


def test_verify_negative_control_and_errors():
    rep = verify_mozgovoy(2, 1, 2, perturb=True)
    assert not rep.equal and rep.error is None
    bad = verify_mozgovoy(1, 1, 2)
    assert bad.error_kind == "usage" and "error" in bad.to_json()
    assert verify_mozgovoy(2, 1, 4).error_kind == "usage"


def test_report_json_shape():
    js = verify_mozgovoy(2, 1, 1).to_json()
    assert set(js) == {"schema", "genus", "p", "rank", "equal", "n_terms", "weighted_degree", "runtime_ms"}
    assert js["equal"] is True


def test_residual_denominator_is_reported():
    from lambdaring.higgs import _finish
    with pytest.raises(InconsistencyError):
        _finish(RatFn.inverse_factor({LEFSCHETZ_VAR: 1}), "probe")
