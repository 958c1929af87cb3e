from __future__ import annotations

import os

import pytest

from twoorbit.catalog import (
    affine,
    gf,
    linear_group_order,
    mathieu,
    projective_linear,

)
from twoorbit.catalog.fields import FieldError, is_irreducible, least_irreducible
from twoorbit.catalog.linear import affine_two_cycle_element, projective_points, singer_element, singer_projective
from twoorbit.catalog.mathieu import DataFileError, load_verified
from twoorbit.catalog.spec import SpecError, parse_group_spec
from twoorbit.catalog.standard import m10, pairs_action, product_action_wreath, sym
from twoorbit.group import is_primitive


def textbook_order(m: int, q: int, flavor: str) -> int:
    """|GL(m,q)| based formulas, written out independently."""
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = 0
    while p**e < q:
        e += 1
    gl = 1
    for i in range(m):
        gl *= q**m - q**i
    g = 1
    for d in range(1, max(m, q) + 1):
        if m % d == 0 and (q - 1) % d == 0:
            g = d
    return {
        "PGL": gl // (q - 1),
        "PSL": gl // (q - 1) // g,
        "PGammaL": gl // (q - 1) * e,
        "PSigmaL": gl // (q - 1) // g * e,
        "AGL": q**m * gl,
        "ASL": q**m * gl // (q - 1),
        "AGammaL": q**m * gl * e,
        "ASigmaL": q**m * gl // (q - 1) * e,
    }[flavor]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27])
def test_field_axioms(q):
    F = gf(q)
    for a in range(q):
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    assert F.element_order(F.generator) == q - 1
    assert sorted(F.frobenius(a) for a in range(q)) == list(range(q))
    for a in range(0, q, max(1, q // 5)):
        for b in range(0, q, max(1, q // 4)):
            for c in range(0, q, max(1, q // 3)):
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_field_rejects_non_prime_powers():
    with pytest.raises(FieldError):
        gf(6)


def test_least_irreducible():
    assert least_irreducible(2, 2) == (1, 1, 1)
    f = least_irreducible(3, 3)
    assert is_irreducible(list(f), 3)


@pytest.mark.parametrize(
    "m, q, flavor",
    [(2, 4, "PSL"), (2, 5, "PGL"), (2, 9, "PGammaL"), (2, 9, "PSigmaL"), (3, 2, "PGL"), (3, 4, "PGammaL"), (3, 4, "PSL"), (4, 2, "PGL"),
     (1, 8, "AGammaL"), (1, 9, "AGL"), (2, 3, "AGL"), (3, 2, "AGL"), (2, 4, "ASL"), (1, 16, "ASigmaL")],
)
def test_linear_group_orders(m, q, flavor):
    G = projective_linear(m, q, flavor) if flavor.startswith("P") else affine(m, q, flavor)
    assert G.order() == textbook_order(m, q, flavor) == linear_group_order(m, q, flavor)
    assert G.is_transitive()


def test_projective_points_count():
    assert len(projective_points(3, 4)) == 21
    assert len(projective_points(4, 3)) == 40


def test_singer_cycle_types():
    assert singer_element(2, 3).cycle_type().label == "1-8"
    assert singer_projective(2, 5, 2).cycle_type().label == "3-3"
    assert singer_projective(4, 3, 2).cycle_type().label == "20-20"


@pytest.mark.parametrize("m, p, case, label", [(2, 3, "a", "3-6"), (3, 2, "a", "2-6"), (4, 2, "a", "2-14"), (3, 2, "b", "4-4"), (4, 2, "b", "4-12")])
def test_affine_two_cycle_elements(m, p, case, label):
    x = affine_two_cycle_element(m, p, case)
    assert x.cycle_type().label == label
    assert x in affine(m, p, "AGL")


@pytest.mark.parametrize("n, order", [(11, 7920), (12, 95040), (22, 443520), (23, 10200960), (24, 244823040), ("11deg12", 7920)])
def test_mathieu_orders(n, order):
    G = mathieu(n)
    assert G.order() == order
    assert is_primitive(G)


def test_mathieu_data_override(tmp_path, monkeypatch):
    (tmp_path / "m11.txt").write_text("# expected-order: 7921\ndegree 11\n(1,2,3,4,5,6,7,8,9,10,11)\n")
    monkeypatch.setenv("TWO_ORBIT_DATA", str(tmp_path))
    with pytest.raises(DataFileError):
        mathieu(11)
    monkeypatch.delenv("TWO_ORBIT_DATA")
    assert "TWO_ORBIT_DATA" not in os.environ


def test_load_verified_checks_order(tmp_path):
    path = tmp_path / "c5.txt"
    path.write_text("# expected-order: 5\ndegree 5\n(1,2,3,4,5)\n")
    assert load_verified(path).order() == 5


def test_derived_actions():
    assert m10().order() == 720
    W = product_action_wreath(sym(3))
    assert W.degree == 9 and W.order() == 72
    P = pairs_action(sym(5))
    assert P.degree == 10 and P.order() == 120


@pytest.mark.parametrize(
    "text, degree, order",
    [("S(5)", 5, 120), ("A(6)", 6, 360), ("C(7)", 7, 7), ("D(5)", 5, 10), ("PGL(2,5)", 6, 120), ("AGL(3,2)", 8, 1344),
     ("M11deg12", 12, 7920), ("Wr2(S(3))", 9, 72), ("Pairs(A(5))", 10, 60), ("PGammaL(2,9)", 10, 1440), ("M10", 10, 720)],
)
def test_group_spec_parsing(text, degree, order):
    G = parse_group_spec(text)
    assert (G.degree, G.order(), G.name) == (degree, order, text)


@pytest.mark.parametrize("text", ["S(0)", "Q(3)", "PGL(2,6)", "PGL(2)", "M13", "S(x)", "Wr2()", "File()"])
def test_group_spec_errors(text):
    with pytest.raises(SpecError):
        parse_group_spec(text)


def test_file_spec(tmp_path):
    path = tmp_path / "d4.txt"
    path.write_text("# expected-order: 8\ndegree 4\n(1,2,3,4)\n(1,3)\n")
    assert parse_group_spec(f"File({path})").order() == 8
