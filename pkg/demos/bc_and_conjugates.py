"""Non-BC inf-convolutions, and the grid check of the partial inf-convolution conjugate formulas."""

from __future__ import annotations

from fractions import Fraction

from monopath import AlphaSpec, E
from monopath.infconv import DEFAULT_SPECS, bc_fail_a2, bc_fail_a4, dual_formula_bruteforce

for alpha in (E, AlphaSpec((2,), 1), AlphaSpec((Fraction(1, 3),), -3)):
    d = bc_fail_a2(alpha, 1).data
    print(f"f = ||.||,        alpha = {alpha.name:8s}: {d['lhs']} < {d['rhs']}")
for alpha in (E, AlphaSpec((), Fraction(4, 5))):
    d = bc_fail_a4(alpha, 1).data
    print(f"f = ||.||^2 / 2,  alpha = {alpha.name:8s}: {d['lhs']} < {d['rhs']}")

print()
for F1, F2 in DEFAULT_SPECS:
    for kind in ("box1", "box2"):
        _, res = dual_formula_bruteforce(F1, F2, kind=kind)
        print(f"{kind} [{F1.name}] , [{F2.name}]: max diff {res.max_abs_diff:.2e}, "
              f"inf mismatches {res.inf_mismatches}")
