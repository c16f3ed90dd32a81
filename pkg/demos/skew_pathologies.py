"""Walk through the failure certificates for T_alpha, alpha = e, at growing truncations."""

from __future__ import annotations

from monopath import E, FiniteVec
from monopath.fitzpatrick import divergence_evidence, fitz_span
from monopath.operators import graph_T_alpha
from monopath.pathology import (adjoint_nonmono_witness, adjoint_witness, br_witness_check, ni_gap,
                                sum_ni_witness)

e1 = FiniteVec.basis(1)

print("N   ni-gap  br-inf  br-dist  F_T(e1,e1) evidence")
for N in (2, 5, 10, 20):
    g = graph_T_alpha(E, N)
    gap = ni_gap(g, adjoint_witness(E)).gap
    br = br_witness_check(E, e1, N).data
    ev = divergence_evidence(g, e1, e1, 10**6)
    print(f"{N:<3} {str(gap):<7} {str(br['inf']):<7} {str(br['distance']):<8} "
          f"{fitz_span(g, e1, e1).value}  (term {ev.value} at scale {ev.scale})")

w = adjoint_nonmono_witness(E)
print(f"\nadjoint witness: <x1 - x2, x1* - x2*> = {w.product}")

frag = sum_ni_witness(E, e1, 6)
for c in frag.checks:
    print(f"sum-ni: {c.name}: {c.lhs} {c.rel} {c.rhs} -> {'ok' if c.passed else 'FAILED'}")
