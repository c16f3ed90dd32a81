"""James norm by dynamic programming against enumeration, and dual-norm brackets."""

from __future__ import annotations

import random
import time
from fractions import Fraction

from monopath import FiniteVec
from monopath.oracles import james_dual_grid, james_norm_sq_bruteforce
from monopath.scenarios import random_finite_vec
from monopath.vectors import james_chain, james_dual_norm

rng = random.Random(7)
x = random_finite_vec(rng, max_support=8)
value, chain = james_chain(x, 8)
print(f"x = {x}\n||x||_J^2 = {value}, attained on chain {chain}")

for N in (4, 8, 12):
    vecs = [random_finite_vec(rng, max_support=N) for _ in range(20)]
    t0 = time.perf_counter()
    dp = [james_chain(v, N)[0] for v in vecs]
    t1 = time.perf_counter()
    bf = [james_norm_sq_bruteforce(v, N) for v in vecs]
    t2 = time.perf_counter()
    print(f"N={N:2d}: agree={dp == bf}  dp {1e3 * (t1 - t0):.1f} ms  enumeration {1e3 * (t2 - t1):.1f} ms")

e1, e2 = FiniteVec.basis(1), FiniteVec.basis(2)
for label, f in (("e1*", e1), ("e1*+e2*", e1 + e2), ("e1*-e2*", e1 - e2)):
    br = james_dual_norm(f, tol=Fraction(1, 10**5), N=3)
    grid, arg = james_dual_grid(f, N=3, steps=8)
    print(f"{label:8s} bracket [{float(br.lo):.8f}, {float(br.hi):.8f}] after {br.iterations} cuts; "
          f"grid optimum {grid} at {tuple(map(str, arg))}")
