from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoorbit.catalog import parse_group_spec, sym
from twoorbit.classes import class_table
from twoorbit.genus0 import (
    GenusError,
    TupleType,
    anchor_matches,
    enumerate_genus0_types,
    gcd_block_check,
    genus_of_tuple,
    make_system,
    reorder_classes,
    resolve_anchor,
    rotate,
    search_genus0_systems,
    two_cycle_anchors,
)
from twoorbit.group import StabChain, naive_closure, orbit
from twoorbit.perm import Permutation, conjugate_tuple, identity, index_of, inverse_tuple, mul_tuple


def random_tuple(seed: int, n: int, r: int) -> list[Permutation]:
    rng = random.Random(seed)
    out = []
    for _ in range(r - 1):
        images = list(range(n))
        rng.shuffle(images)
        out.append(Permutation(images))
    acc = identity(n)
    for s in out:
        acc = acc * s
    return out + [acc.inverse()]


def brute_types(spec: str, anchor: int, max_points: int) -> set[tuple]:
    """(type, generated order) for all genus-0 tuples ending in the anchor, by exhaustion."""
    G = parse_group_spec(spec)
    table = class_table(G)
    n = G.degree
    x = table[anchor].representative.images
    xinv = inverse_tuple(x)
    ident = tuple(range(n))
    elems = [e for e in naive_closure(G.generators) if e != ident]
    out = set()
    for r in range(3, max_points + 1):
        for head in itertools.product(elems, repeat=r - 2):
            acc = ident
            for h in head:
                acc = mul_tuple(acc, h)
            last = mul_tuple(inverse_tuple(acc), xinv)
            if last == ident:
                continue
            tup = [*head, last, x]
            if sum(index_of(Permutation(t, check=False)) for t in tup) != 2 * (n - 1):
                continue
            if len(orbit(0, tup)) != n:
                continue
            order = StabChain.build(tup, n).order()
            out.add((TupleType.of(Permutation(t, check=False).order() for t in tup), order))
    return out


@pytest.mark.parametrize("label", ["3-3", "1-5"])
def test_enumeration_matches_brute_force(label):
    G = parse_group_spec("PGL(2,5)")
    table = class_table(G)
    (a,) = table.select(label)
    en = enumerate_genus0_types(G, a, max_branch_points=4)
    found = {(r.type, r.generated_order) for r in en.results}
    assert found == brute_types("PGL(2,5)", a, 4)


def test_counts_up_to_centralizer():
    G = parse_group_spec("PGL(2,5)")
    table = class_table(G)
    (a,) = table.select("3-3")
    en = enumerate_genus0_types(G, a)
    x = table[a].representative
    cent = [g for g in naive_closure(G.generators) if mul_tuple(g, x.images) == mul_tuple(x.images, g)]
    elems = naive_closure(G.generators)
    for res in en.results:
        classes = res.classes[:-1]
        pools = [[e for e in elems if table.class_of(e) == c] for c in classes[:-1]]
        tuples = set()
        for head in itertools.product(*pools):
            acc = tuple(range(G.degree))
            for h in head:
                acc = mul_tuple(acc, h)
            last = mul_tuple(inverse_tuple(acc), inverse_tuple(x.images))
            if table.class_of(last) != classes[-1]:
                continue
            tup = [*head, last, x.images]
            if len(orbit(0, tup)) != G.degree or StabChain.build(tup, G.degree).order() != res.generated_order:
                continue
            tuples.add(min(tuple(conjugate_tuple(t, h) for t in tup[:-1]) for h in cent))
        assert len(tuples) == res.count


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.integers(2, 12), st.integers(2, 5))
def test_genus_is_nonnegative_integer(seed, n, r):
    tup = random_tuple(seed, n, r)
    if len(orbit(0, [t.images for t in tup])) != n:
        return
    g = genus_of_tuple(n, tup)
    assert isinstance(g, int) and g >= 0
    assert 2 * (n - 1 + g) == sum(index_of(t) for t in tup)


def test_genus_errors():
    a = Permutation.parse("(1,2)", 3)
    with pytest.raises(GenusError):
        genus_of_tuple(3, [a, a, a])  # product is not 1
    with pytest.raises(GenusError):
        genus_of_tuple(3, [a, a])  # intransitive
    with pytest.raises(GenusError):
        genus_of_tuple(4, [a, a])


def test_braid_moves_keep_the_invariants():
    G = parse_group_spec("AGL(3,2)")
    systems = search_genus0_systems(G, "2,2,3,4", class_table(G).select("4-4")[1], limit=3)
    assert systems
    for s in systems:
        for i in range(1, len(s.elements)):
            t = reorder_classes(s, i)
            assert genus_of_tuple(8, t.elements) == 0
            assert t.group().order() == s.group().order()
            assert t.type == s.type
        u = rotate(s, 2)
        assert genus_of_tuple(8, u.elements) == 0
    with pytest.raises(GenusError):
        reorder_classes(systems[0], 0)


def test_gcd_block_check_on_involutions():
    s1 = Permutation.parse("(1,2)(3,4)", 4)
    s2 = Permutation.parse("(1,4)(2,3)", 4)
    s3 = (s1 * s2).inverse()
    system = make_system([s1, s2, s3])
    assert system.genus == 0
    bs = gcd_block_check(system, 2)
    assert bs.num_blocks == 2
    with pytest.raises(GenusError):
        gcd_block_check(system, 1)
    bad = make_system([Permutation.parse("(1,2)", 2), Permutation.parse("(1,2)", 2)])
    with pytest.raises(GenusError):
        gcd_block_check(bad, 3)


def test_witness_search():
    G = parse_group_spec("PGL(2,7)")
    found = search_genus0_systems(G, "2,6,4", "1-1-6", limit=1)
    assert found and found[0].type == TupleType.of([2, 4, 6])
    assert found[0].generated_order == 336


def test_infeasible_budget_is_empty():
    en = enumerate_genus0_types(sym(4), "1-1-2", max_branch_points=3)
    assert not any(r.type == TupleType.of([2, 2, 2]) for r in en.results)
    assert search_genus0_systems(sym(4), "2,2,2", "1-1-2") == []


def test_anchor_selection():
    G = parse_group_spec("AGL(3,2)")
    table = class_table(G)
    assert len(table.select("4-4")) == 2
    with pytest.raises(GenusError):
        resolve_anchor(table, "4-4")
    assert anchor_matches(table, "4-4") == table.select("4-4")
    assert anchor_matches(table, "4-4#2") == table.select("4-4")[1:]
    assert anchor_matches(table, "c3") == [3]
    assert set(anchor_matches(table, "two-cycle")) == set(two_cycle_anchors(table))
    assert anchor_matches(table, "6-6") == []
    with pytest.raises(GenusError):
        anchor_matches(table, "4-4#3")


def test_tuple_type_parsing():
    assert TupleType.parse("(4,2,2)").orders == (2, 2, 4)
    assert TupleType.parse("2,6,8").label == "(2,6,8)"
    with pytest.raises(GenusError):
        TupleType.parse("1,2")
