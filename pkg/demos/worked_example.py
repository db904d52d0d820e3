"""lambda^2(psi^2(x) - y/2) in the Adams and lambda forms."""

from lambdaring import make_free, parse_expr, render, to_adams, to_lambda

x, y = make_free("x"), make_free("y")
e = (x.adams(2) - y / 2).lambda_(2)
print("expression:  ", render(e))
print("adams form:  ", to_adams(e))
print("lambda form: ", to_lambda(e))

# the parser builds the same tree from text
p = parse_expr("lambda(2, adams(2,x) - y/2)", {"x": x, "y": y})
print("parsed agrees:", to_lambda(p).equals(to_lambda(e)))

# shortcut off takes the long route through the Adams form
print("no shortcut: ", to_lambda(e, use_shortcut=False))

# 1-dim objects: sigma^n(L) vanishes for n >= 2
print("sigma^3(L^2 + 1) =", to_lambda(parse_expr("sigma(3, L^2 + 1)")))
