from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoorbit.perm import (
    CycleType,
    Permutation,
    PermutationError,
    compose,
    identity,
    index_of,
    index_via_fixed_points,
    inverse,
)


def perms(max_degree: int = 12):
    return st.integers(1, max_degree).flatmap(lambda n: st.permutations(range(n))).map(Permutation)


def test_composition_applies_left_factor_first():
    a = Permutation.parse("(1,2)", 3)
    b = Permutation.parse("(2,3)", 3)
    # 1 -> 2 under a, then 2 -> 3 under b
    assert (a * b)(0) == 2
    assert (a * b) == Permutation.parse("(1,3,2)", 3)
    assert (b * a) == Permutation.parse("(1,2,3)", 3)
    assert compose(a, b) == a * b


def test_compose_rejects_degree_mismatch():
    with pytest.raises(PermutationError):
        compose(identity(3), identity(4))


def test_parse_and_print_round_trip():
    s = Permutation.parse("(1,5,2)(3,4)", 6)
    assert s.to_cycles() == "(1,5,2)(3,4)"
    assert Permutation.parse(s.to_cycles(), 6) == s
    assert identity(4).to_cycles() == "()"


def test_cycle_data():
    s = Permutation.parse("(1,2,3)(4,5)", 7)
    assert s.cycle_type() == CycleType.of([1, 1, 2, 3])
    assert s.order() == 6
    assert s.num_cycles() == 4
    assert s.fixed_points() == 2
    assert index_of(s) == 3


def test_cycle_type_labels():
    assert CycleType.parse("6-6").lengths == (6, 6)
    assert CycleType.parse("3-1-2").label == "1-2-3"
    with pytest.raises(PermutationError):
        CycleType.parse("0-2")


def test_conjugation_convention():
    x = Permutation.parse("(1,2)", 3)
    g = Permutation.parse("(1,3)", 3)
    # x^g = g^-1 x g relabels the cycle (1,2) to (3,2)
    assert x.conjugate(g) == inverse(g) * x * g == Permutation.parse("(2,3)", 3)


@given(perms())
def test_inverse_and_powers(s):
    assert (s * s.inverse()).is_identity()
    assert (s ** s.order()).is_identity()
    assert s**-1 == s.inverse()


@given(perms(), perms())
def test_conjugation_preserves_cycle_type(s, g):
    if s.degree == g.degree:
        assert s.conjugate(g).cycle_type() == s.cycle_type()


@settings(max_examples=300)
@given(perms(30))
def test_index_formulas_agree(s):
    assert index_of(s) == index_via_fixed_points(s)
