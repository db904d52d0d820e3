import pytest

from lambdaring.groups import EXCEPTIONAL, PRESET_KINDS, GroupDescriptor, bg, bun, check_integrity, group_motive, preset
from lambdaring.motives import curve
from lambdaring.poly import LEFSCHETZ_VAR, Poly, RatFn
from lambdaring.simplify import to_lambda

L = Poly.var(LEFSCHETZ_VAR)
one = Poly.one()

PRESETS = (
    [(k, None) for k in EXCEPTIONAL]
    + [(k, n) for k in ("A", "B", "C") for n in range(1, 7)]
    + [("D", n) for n in range(2, 7)]
    + [(k, n) for k in ("SL", "PSL") for n in range(2, 6)]
    + [(k, n) for k in ("SO", "Spin") for n in range(3, 10)]
    + [("Sp", n) for n in range(1, 5)]
)


@pytest.mark.parametrize("kind, n", PRESETS)
def test_preset_integrity(kind, n):
    G = preset(kind, n)
    assert check_integrity(G)
    assert G.dim >= G.rank


@pytest.mark.parametrize("kind, n", PRESETS)
def test_group_motive_shape(kind, n):
    G = preset(kind, n)
    m = group_motive(G)
    assert all(c.denominator == 1 for c in m.terms.values())
    assert m.min_degree(LEFSCHETZ_VAR) >= 0
    assert max(mono[0] for mono in m.terms) == G.dim
    q = m
    for _ in range(G.rank):
        q = q.exact_div(L - 1)
        assert q is not None
    assert (RatFn(m) * bg(G)).equals(RatFn.const(1))


def test_known_motives():
    assert group_motive(preset("SL", 2)) == L ** 3 - L
    assert group_motive(preset("G2")) == L ** 14 * (one - L ** -2) * (one - L ** -6)
    SL3 = preset("SL", 3)
    assert SL3.degrees == (2, 3) and SL3.dim == 8
    assert group_motive(SL3) == L ** 8 * (one - L ** -2) * (one - L ** -3)
    assert group_motive(GroupDescriptor("T0", (), 5)) == L ** 5
    assert preset("F4").weyl_order == 2 * 6 * 8 * 12 == 1152


def test_gl_is_an_explicit_class():
    gl2 = to_lambda(preset("GL", 2)).to_poly()
    assert gl2 == (L ** 2 - 1) * (L ** 2 - L)
    # GL_n fibres over G_m with fibre SL_n
    assert gl2 == group_motive(preset("SL", 2)) * (L - 1)
    gl3 = to_lambda(preset("GL", 3)).to_poly()
    assert gl3 == group_motive(preset("SL", 3)) * (L - 1)


def test_fundamental_groups():
    assert preset("SL", 3).pi1 == 1
    assert preset("PSL", 3).pi1 == 3
    assert preset("SO", 5).pi1 == 2
    assert preset("Spin", 5).pi1 == 1
    assert preset("Sp", 2).pi1 == 1
    assert preset("SO", 5).degrees == preset("B", 2).degrees
    assert preset("SO", 6).degrees == preset("D", 3).degrees == preset("A", 3).degrees


def test_bg_examples():
    b = bg(preset("SL", 2))
    assert b.den == {((LEFSCHETZ_VAR, 2),): 1}
    assert b.equals(RatFn(-(L ** -1)) * RatFn.inverse_factor({LEFSCHETZ_VAR: 2}))
    assert b.to_text() == "(-L^-1)/((1 - L^2))"
    b0 = bg(GroupDescriptor("T0", (), 4))
    assert b0.is_poly() and b0.to_poly() == L ** -4


def test_bun_examples():
    X = curve(2)
    b = bun(preset("SL", 2), X)
    # L^((g - 1) dim) with g = 2, dim SL_2 = 3
    expected = RatFn(L ** 3) * X.Z_eval({LEFSCHETZ_VAR: -2})
    assert b.equals(expected)
    assert bun(preset("PSL", 2), X).equals(expected.scale(2))
    b0 = bun(GroupDescriptor("T0", (), 3, pi1=2), X)
    assert b0.to_poly() == L ** 3 * 2


@pytest.mark.parametrize("kind, n", [
    ("SO", 2), ("Spin", 1), ("SL", 1), ("A", 0), ("D", 1), ("GL", 0), ("Q", 3), ("SL", None),
])
def test_rejected_presets(kind, n):
    with pytest.raises(ValueError):
        preset(kind, n)


def test_descriptor_validation():
    with pytest.raises(ValueError):
        GroupDescriptor("bad", (2, 3), 1)
    with pytest.raises(ValueError):
        GroupDescriptor("bad", (0,), 3)


def test_preset_kinds_cover_all_families():
    assert set(PRESET_KINDS) >= {"A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2", "SL", "GL", "PSL", "SO", "Sp", "Spin"}
