from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import alphas, finite_vecs
from monopath.convex import INDICATOR_L1_BALL, SUP_NORM, oplus
from monopath.errors import PreconditionError
from monopath.fitzpatrick import (FitzValue, FitzpatrickSkew, bc_test, bracket, divergence_evidence,
                                  fitz_sampled_lb, fitz_skew_exact, fitz_span, is_skew_on_span)
from monopath.operators import GraphSample, apply_A_alpha, graph_T_alpha, graph_T_plus_subdiff
from monopath.vectors import E, AlphaSpec, FiniteVec, pair

e1, e2 = FiniteVec.basis(1), FiniteVec.basis(2)
ZERO = FiniteVec.zero()


def test_skew_exact_examples():
    assert fitz_skew_exact(E, -e1, e1) == FitzValue(0, "closed-form")
    assert fitz_skew_exact(E, ZERO, ZERO).value == 0
    assert fitz_skew_exact(E, e1, e1).value == math.inf


def test_sampled_examples():
    g = graph_T_alpha(E, 4)
    xs = FiniteVec.from_list([1, 2, -1])
    v = fitz_sampled_lb(g, -apply_A_alpha(E, xs), xs)
    assert v.value == 0 and v.exactness == "lower-bound" and v.sample_size == 3
    assert fitz_sampled_lb(g, ZERO, ZERO).value == 0
    small = fitz_sampled_lb(g, e1, e1).value
    big = fitz_sampled_lb(g, e1, e1, scales=range(1, 50)).value
    assert 0 < small < big


def test_span_exact_values():
    g = graph_T_alpha(E, 5)
    assert fitz_span(g, -e1, e1).value == 0
    assert fitz_span(g, e1, e1).value == math.inf
    assert fitz_span(g, e1, e1).exactness == "span-exact"


def test_span_requires_skew_subspace():
    g = graph_T_plus_subdiff(E, 3, SUP_NORM)
    assert not is_skew_on_span(g)
    with pytest.raises(PreconditionError):
        fitz_span(g, e1, e1)
    assert is_skew_on_span(graph_T_alpha(AlphaSpec((2,), 1), 4))


@given(alphas(), finite_vecs(max_index=5), finite_vecs(max_index=5))
def test_sampled_below_exact(alpha, x, xs):
    if all(alpha(n) == 0 for n in range(1, 6)):
        return
    g = graph_T_alpha(alpha, 5, pairwise_sums=True)
    assert fitz_sampled_lb(g, x, xs, scales=(-2, 1, 3)).value <= fitz_skew_exact(alpha, x, xs).value


@given(alphas(), finite_vecs(max_index=5))
def test_equals_pairing_on_graph(alpha, v):
    if all(alpha(n) == 0 for n in range(1, 6)):
        return
    g = graph_T_alpha(alpha, 5)
    # any combination of kernel vectors is a graph point
    kern = [astar for _, astar in g.points]
    xs = sum((c * k for c, k in zip((v[i] for i in range(1, 6)), kern)), ZERO)
    x = -apply_A_alpha(alpha, xs)
    assert fitz_span(g, x, xs).value == pair(x, xs) == 0


def test_sample_monotone_in_size():
    g = graph_T_alpha(E, 5)
    small = GraphSample(g.points[:2], g.generator, linear=True)
    x, xs = FiniteVec.from_list([0, 0, 1]), e2
    assert fitz_sampled_lb(small, x, xs).value <= fitz_sampled_lb(g, x, xs).value


def test_divergence_evidence():
    g = graph_T_alpha(E, 6)
    ev = divergence_evidence(g, e1, e1, 10**6)
    assert ev.direction_bracket == 2 and ev.exceeds and ev.value > 10**6
    assert "N=6" in ev.describe()
    assert divergence_evidence(g, -e1, e1, 10**6) is None
    neg = divergence_evidence(g, e1, e1, -5)
    assert neg.value > -5


def test_bracket_of_e1_e1_is_truncation_independent():
    for N in range(2, 12):
        brackets = [bracket(e1, e1, a, s) for a, s in graph_T_alpha(E, N)]
        assert brackets[0] == 2 and all(b == 0 for b in brackets[1:])


def test_bc_examples():
    F = oplus(SUP_NORM, INDICATOR_L1_BALL)
    frag = bc_test(F, [(e1, e1), (ZERO, ZERO)])
    assert frag.passed and len(frag.checks) == 4
    FT = FitzpatrickSkew(E)
    xs = FiniteVec.from_list([1, -2])
    frag = bc_test(FT, [(-apply_A_alpha(E, xs), xs), (ZERO, ZERO)])
    assert frag.passed
    assert FT(-apply_A_alpha(E, xs), xs) == 0 >= -1
    assert FT.conjugate()(e1, apply_A_alpha(E, e1)) == math.inf


def test_bc_detects_failure():
    # F = i_B (+) ||.|| swapped roles is still BC; a deliberately wrong handle is not
    class Bad:
        def __call__(self, x, xs):
            return Fraction(-1)

        def conjugate(self):
            return lambda xs, x: Fraction(-5)

    assert not bc_test(Bad(), [(e1, e1)]).passed


def test_fitzvalue_json():
    assert FitzValue(math.inf, "closed-form").to_json() == {"value": "inf", "exactness": "closed-form"}
    with pytest.raises(ValueError):
        FitzValue(0, "guess")
