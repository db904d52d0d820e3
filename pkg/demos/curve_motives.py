"""Curve motives, vector bundle moduli and classifying stacks."""

from lambdaring import Curve, bg, bun, preset, group_motive, proj, to_lambda, vb_moduli, vb_moduli_general
from lambdaring.higgs import T_VAR
from lambdaring.poly import Poly

for n in range(4):
    print(f"[P^{n}] =", to_lambda(proj(n)))

c = Curve("X", 2)
print("\ngenus 2 curve", c)
print("[Jac X] =", to_lambda(c.jacobian()))
print("P_X(1)  =", c.P_eval({}))
t = Poly.var(T_VAR)
print("Z_X(t)  =", c.Z_eval(t))

for r in (2, 3):
    m = to_lambda(vb_moduli(c, r, 1)).cancel()
    g = to_lambda(vb_moduli_general(c, r, 1)).cancel()
    print(f"\n[N(2, {r}, 1)]: {len(m.to_poly().terms)} terms, general formula agrees: {g.to_poly() == m.to_poly()}")

for kind, n in (("SL", 2), ("Sp", 2), ("G2", None)):
    G = preset(kind, n)
    print(f"\n[{G.name}] =", group_motive(G))
    print(f"[B{G.name}] =", bg(G))

# GL_n comes back as an expression rather than a descriptor
print("\n[GL2] =", to_lambda(preset("GL", 2)))

print("\n[Bun SL2] on X =", bun(preset("SL", 2), c))
