"""Exact certification of skew monotone operators on sequence spaces.

The package builds the operators ``A_alpha``, ``P_alpha``, ``S_alpha`` and
Gossez's ``G`` on finitely supported and eventually constant rational
sequences, and checks their pathologies (type (D), (NI), (BR) failures and
BC-function counterexamples) exactly at finite truncation.
"""

from .convex import ConvexFnTag, conj_tag, eps_subdiff_test, eval_fn, oplus
from .errors import ConfigError, ConvergenceError, MonopathError, PreconditionError
from .fitzpatrick import FitzValue, bc_test, fitz_sampled_lb, fitz_skew_exact
from .infconv import (QuadSpec, bc_fail_a2, bc_fail_a4, box1_structured, box2_structured,
                      dual_formula_bruteforce)
from .operators import (GraphSample, LinearMap, adjoint_A_alpha, apply_A_alpha, apply_G,
                        apply_P_alpha, apply_S_alpha, dual_gossez_coeffs, dual_gossez_plus_rank1,
                        duality_map_halfsq, graph_T_alpha, graph_T_plus_subdiff, graph_T_star,
                        subdiff_supnorm, transport_graph)
from .pathology import (WitnessPoint, adjoint_nonmono_witness, br_witness_check, mono_related_min,
                        ni_gap, nonuniqueness_product, phelps_simons_check, quadratic_gap,
                        sum_ni_witness)
from .report import CertReport, Check, verify_report
from .scenarios import ScenarioConfig, list_scenarios, parse_config, run_scenario
from .vectors import (E, AlphaSpec, EventualVec, FiniteVec, james_dual_norm, james_norm_sq,
                      kernel_basis, norm_l1, norm_sup, pair)

__version__ = "0.1.0"
