from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import alphas, finite_vecs, rationals
from monopath.errors import ConvergenceError, PreconditionError
from monopath.oracles import james_dual_grid, james_norm_sq_bruteforce
from monopath.vectors import (E, AlphaSpec, EventualVec, FiniteVec, as_rational, format_rational,
                              james_chain, james_dual_norm, james_norm_sq, kernel_basis, norm_l1,
                              norm_sup, pair, parse_rational)

e1, e2, e3 = (FiniteVec.basis(k) for k in (1, 2, 3))


# --- rationals -------------------------------------------------------------

def test_rational_format_round_trip():
    for q in (Fraction(0), Fraction(3), Fraction(-7, 4)):
        assert parse_rational(format_rational(q)) == q
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(math.inf) == "inf"
    assert parse_rational("-inf") == -math.inf


def test_floats_refused():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)


# --- FiniteVec / EventualVec -------------------------------------------------

def test_finitevec_drops_zeros_and_sorts():
    v = FiniteVec({3: 1, 1: 0, 2: Fraction(-1, 2)})
    assert v.items() == ((2, Fraction(-1, 2)), (3, Fraction(1)))
    assert v.support == (2, 3)
    assert FiniteVec({1: 1}) + FiniteVec({1: -1}) == FiniteVec.zero()


def test_finitevec_rejects_bad_indices():
    with pytest.raises(PreconditionError):
        FiniteVec({0: 1})


def test_eventualvec_canonical_prefix():
    v = EventualVec([1, 2, 2, 2], 2, E)
    assert v.prefix == (Fraction(1),)
    assert v == EventualVec([1], 2)
    assert [v[n] for n in range(1, 5)] == [1, 2, 2, 2]


def test_eventualvec_equality_across_alpha():
    alpha = AlphaSpec((2,), 1)
    assert EventualVec((), 1, alpha) == EventualVec([2], 1, E)
    assert hash(EventualVec((), 1, alpha)) == hash(EventualVec([2], 1, E))


def test_eventualvec_equals_finite_when_tail_zero():
    assert EventualVec([1, 0, 3], 0) == FiniteVec({1: 1, 3: 3})


def test_json_round_trip():
    v = FiniteVec({1: 1, 4: Fraction(-2, 3)})
    assert v.to_json() == {"1": "1", "4": "-2/3"}
    assert FiniteVec.from_json(v.to_json()) == v
    w = EventualVec([1, Fraction(1, 2)], -3, AlphaSpec((2,), 1))
    assert EventualVec.from_json(w.to_json()) == w


def test_alpha_parse_and_name():
    a = AlphaSpec.parse("(2,1/2;1)")
    assert a.prefix == (2, Fraction(1, 2)) and a.tail == 1
    assert AlphaSpec.parse(a.name) == a
    assert AlphaSpec.parse("e") is E
    assert AlphaSpec((1, 1), 1) == E
    with pytest.raises(PreconditionError):
        AlphaSpec((), 0)
    with pytest.raises(PreconditionError):
        AlphaSpec.parse("1,2")


# --- pair and norms ---------------------------------------------------------

def test_pair_examples():
    assert pair(e1, e1) == 1
    assert pair(e1 + 2 * e2, EventualVec([1], 2)) == 5
    assert pair(FiniteVec.zero(), EventualVec([3], 1)) == 0


def test_pair_rejects_two_eventual():
    with pytest.raises(PreconditionError):
        pair(EventualVec([], 1), EventualVec([], 1))


def test_norm_examples():
    assert norm_l1(FiniteVec.from_list([1, -1])) == 2
    assert norm_l1(e1 / 2) == Fraction(1, 2)
    assert norm_l1(FiniteVec.zero()) == 0
    assert norm_sup(EventualVec([2], -2)) == 2
    assert norm_sup(EventualVec([1], -1)) == 1
    assert norm_sup(e3) == 1


def test_norm_sup_sees_alpha_prefix():
    # the tail rule c * alpha_n can exceed the limit inside alpha's prefix
    v = EventualVec((), 1, AlphaSpec((5, 1), 1))
    assert norm_sup(v) == 5


@given(finite_vecs(), finite_vecs(), finite_vecs(), rationals)
def test_pair_bilinear_symmetric(x, y, z, c):
    assert pair(x, y) == pair(y, x)
    assert pair(x * c + z, y) == c * pair(x, y) + pair(z, y)


# --- James norm --------------------------------------------------------------

@pytest.mark.parametrize("vals, expected, chain", [
    ([1], 1, (1, 2)),
    ([1, -1], 5, (1, 2, 3)),
    ([1, 2, 1], 5, (1, 2, 4)),
])
def test_james_examples(vals, expected, chain):
    x = FiniteVec.from_list(vals)
    assert james_norm_sq(x, len(vals)) == expected
    assert james_norm_sq_bruteforce(x, len(vals)) == expected
    assert james_chain(x, len(vals)) == (expected, chain)


def test_james_rejects_support_beyond_N():
    with pytest.raises(PreconditionError):
        james_norm_sq(e3, 2)


@given(finite_vecs(max_index=7))
def test_james_matches_enumeration(x):
    assert james_norm_sq(x, 7) == james_norm_sq_bruteforce(x, 7)


@given(finite_vecs(max_index=6), rationals)
def test_james_homogeneous(x, c):
    assert james_norm_sq(x * c, 6) == c * c * james_norm_sq(x, 6)


@given(finite_vecs(max_index=5))
def test_james_independent_of_extra_zeros(x):
    assert james_norm_sq(x, 5) == james_norm_sq(x, 8)


# --- James dual norm -----------------------------------------------------------

@pytest.mark.parametrize("f, optimum", [
    (FiniteVec({1: 1}), 1),
    (FiniteVec({1: 1, 2: 1}), 2),
    (FiniteVec({1: 1, 2: -1}), 1),
])
def test_james_dual_examples(f, optimum):
    tol = Fraction(1, 10**4)
    br = james_dual_norm(f, tol, N=3)
    grid_opt, _ = james_dual_grid(f, 3, 8)
    assert grid_opt == optimum
    assert grid_opt in br
    assert br.width <= tol


def test_james_dual_grid_lower_bound():
    # e1* + e3*: the grid optimum is feasible, so it can only sit below the bracket top
    f = FiniteVec({1: 1, 3: 1})
    br = james_dual_norm(f, Fraction(1, 10**4), N=3)
    grid_opt, point = james_dual_grid(f, 3, 8)
    assert james_norm_sq(FiniteVec.from_list(point), 3) <= 1
    assert grid_opt <= br.hi


def test_james_dual_zero_and_bad_tol():
    assert james_dual_norm(FiniteVec.zero(), Fraction(1, 100)).hi == 0
    with pytest.raises(PreconditionError):
        james_dual_norm(e1, 0)


def test_james_dual_iteration_cap_reports_bracket():
    with pytest.raises(ConvergenceError) as info:
        james_dual_norm(FiniteVec({1: 1, 2: -1, 3: 1}), Fraction(1, 10**8), N=3, max_iter=2)
    assert info.value.bracket is not None
    assert info.value.bracket.lo <= info.value.bracket.hi


# --- kernel basis ------------------------------------------------------------------

def test_kernel_basis_examples():
    assert kernel_basis(E, 3) == [e1 - e2, e2 - e3]
    assert kernel_basis(AlphaSpec((2,), 1), 2) == [e1 - 2 * e2]
    assert kernel_basis(E, 2) == [e1 - e2]


def test_kernel_basis_zero_coordinates():
    alpha = AlphaSpec((0, 1, 0), 2)
    basis = kernel_basis(alpha, 4)
    assert basis == [e1, FiniteVec({2: 2, 4: -1}), e3]


def test_kernel_basis_errors():
    with pytest.raises(PreconditionError):
        kernel_basis(E, 1)
    with pytest.raises(PreconditionError):
        kernel_basis(AlphaSpec((0, 0), 1), 2)


@given(alphas(), st.integers(2, 7))
def test_kernel_basis_orthogonal_and_independent(alpha, N):
    from monopath.linalg import rank

    if all(alpha(n) == 0 for n in range(1, N + 1)):
        return
    basis = kernel_basis(alpha, N)
    assert len(basis) == N - 1
    assert all(pair(v, alpha.as_vec()) == 0 for v in basis)
    assert rank([v.to_list(N) for v in basis]) == N - 1
