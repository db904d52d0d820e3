"""Mozgovoy's ADHM class against the Bialynicki-Birula class on a small grid."""

import time

from lambdaring import verify_mozgovoy

cases = [(g, p, 2) for g in (2, 3, 4) for p in (1, 2, 3)] + [(g, p, 3) for g in (2, 3) for p in (1, 2)]
start = time.perf_counter()
print(f"{'g':>2} {'p':>2} {'r':>2}  equal  terms  degree  ms")
for g, p, r in cases:
    rep = verify_mozgovoy(g, p, r)
    print(f"{g:>2} {p:>2} {r:>2}  {str(rep.equal):5}  {rep.n_terms:5}  {rep.weighted_degree:6}  {rep.runtime_ms:.0f}")
print(f"total {time.perf_counter() - start:.1f} s")

# a perturbed right-hand side must be caught
bad = verify_mozgovoy(2, 1, 2, perturb=True)
print("perturbed case equal:", bad.equal)
