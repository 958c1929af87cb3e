from __future__ import annotations

import math

import pytest

from twoorbit.bounds import (
    BoundsError,
    _le_exp_n_over_e,
    check_affine_p_bound,
    check_pgl_order_bound,
    check_sn_bounds,
    element_orders,
    landau_max_order,
    max_element_order,
)
from twoorbit.catalog import affine, projective_linear, sym
from twoorbit.group import naive_closure
from twoorbit.perm import Permutation


def brute_landau(n: int) -> int:
    best = 1

    def rec(remaining: int, largest: int, acc: int) -> None:
        nonlocal best
        best = max(best, acc)
        for part in range(min(remaining, largest), 1, -1):
            rec(remaining - part, part, math.lcm(acc, part))

    rec(n, n, 1)
    return best


@pytest.mark.parametrize("n", range(1, 31))
def test_landau_against_partitions(n):
    assert landau_max_order(n) == brute_landau(n)


def test_landau_known_values():
    assert landau_max_order(8) == 15
    assert landau_max_order(10) == 30


@pytest.mark.parametrize("n", [0, 201, -3])
def test_landau_range(n):
    with pytest.raises(BoundsError):
        landau_max_order(n)


def test_landau_witness_attains_value():
    for n in (10, 23, 57):
        rep = check_sn_bounds(n)
        parts = [int(x) for x in rep.witness.split(",")]
        assert sum(parts) == n
        assert math.lcm(*parts) == rep.exact


def test_exact_exponential_comparison():
    # exp(10/e) = 39.598...
    assert _le_exp_n_over_e(39, 10)
    assert not _le_exp_n_over_e(40, 10)
    # exp(2/e) = 2.0878...
    assert _le_exp_n_over_e(2, 2)
    assert not _le_exp_n_over_e(3, 2)


def test_sn_bound_examples():
    r = check_sn_bounds(10)
    assert r.satisfied and r.exact == 30 and abs(r.bound - 39.598) < 1e-3
    r = check_sn_bounds(6)
    assert r.extra["sqrt_bound_ok"] and abs(r.extra["sqrt_bound"] - 3 ** math.sqrt(3)) < 1e-12


def test_sqrt_bound_is_violated_at_seven():
    # g(7) = 12 from 3 + 4, while 3.5^sqrt(3.5) is about 10.42
    r = check_sn_bounds(7)
    assert r.exact == 12
    assert r.extra["e_bound_ok"]
    assert not r.extra["sqrt_bound_ok"]


def test_element_orders_match_naive():
    G = sym(5)
    _, orders = element_orders(G)
    naive = sorted(Permutation(x).order() for x in naive_closure(G.generators))
    assert sorted(orders.tolist()) == naive
    assert max_element_order(G)[0] == 6


def test_pgl_exception_at_2_4():
    r = check_pgl_order_bound(2, 4)
    assert r.exact == 6 and r.bound == 5
    assert not r.satisfied and r.extra["exception"] and r.extra["known_exception"]


@pytest.mark.parametrize("m, q", [(2, 2), (2, 3), (2, 5), (2, 7), (3, 2)])
def test_pgl_bound_holds(m, q):
    r = check_pgl_order_bound(m, q)
    naive = max(Permutation(x).order() for x in naive_closure(projective_linear(m, q, "PGammaL").generators))
    assert r.exact == naive
    assert r.satisfied


@pytest.mark.parametrize("m, p, best", [(3, 2, 4), (2, 3, 3), (1, 5, 5), (2, 2, 4)])
def test_affine_p_power_maxima(m, p, best):
    r = check_affine_p_bound(m, p)
    orders = [Permutation(x).order() for x in naive_closure(affine(m, p, "AGL").generators)]
    ppow = [o for o in orders if o == p ** round(math.log(o, p))]
    assert r.exact == max(ppow) == best
    assert r.satisfied


def test_affine_size_guard():
    with pytest.raises(BoundsError):
        check_affine_p_bound(13, 2)
