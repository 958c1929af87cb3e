"""Symmetric, alternating, cyclic and dihedral groups plus derived actions."""

from __future__ import annotations

import itertools

from ..group import GroupError, PermGroup
from ..perm import Permutation
from .linear import DEGREE_LIMIT, projective_linear, projective_perm, diagonal
from .fields import gf


def sym(n: int) -> PermGroup:
    if n < 1:
        raise GroupError("degree must be positive")
    if n == 1:
        return PermGroup([Permutation.identity(1)], name="S(1)")
    gens = [Permutation.from_cycles([range(n)], n), Permutation.from_cycles([(0, 1)], n)]
    return PermGroup(gens, name=f"S({n})")


def alt(n: int) -> PermGroup:
    if n < 1:
        raise GroupError("degree must be positive")
    if n < 3:
        return PermGroup([Permutation.identity(n)], name=f"A({n})")
    gens = [Permutation.from_cycles([(0, 1, i)], n) for i in range(2, n)]
    return PermGroup(gens, name=f"A({n})")


def cyc(n: int) -> PermGroup:
    if n < 1:
        raise GroupError("degree must be positive")
    return PermGroup([Permutation.from_cycles([range(n)], n)], name=f"C({n})")


def dih(n: int) -> PermGroup:
    if n < 3:
        raise GroupError("dihedral groups need n >= 3")
    rot = Permutation.from_cycles([range(n)], n)
    refl = Permutation([(-i) % n for i in range(n)])
    return PermGroup([rot, refl], name=f"D({n})")


def standard(name: str, n: int) -> PermGroup:
    table = {"sym": sym, "alt": alt, "cyc": cyc, "dih": dih}
    if name not in table:
        raise GroupError(f"unknown standard family {name!r}")
    return table[name](n)


def product_action_wreath(U: PermGroup) -> PermGroup:
    """U wr C_2 on pairs (a, b), point a*r + b, coordinates swapped by the flip."""
    r = U.degree
    if r < 2:
        raise GroupError("base group needs degree at least 2")
    if not U.is_transitive():
        raise GroupError("base group must be transitive")
    if r * r > DEGREE_LIMIT:
        raise GroupError(f"degree {r * r} exceeds limit {DEGREE_LIMIT}")
    gens = []
    for g in U.generators:
        gens.append(Permutation([g[a] * r + b for a in range(r) for b in range(r)]))
        gens.append(Permutation([a * r + g[b] for a in range(r) for b in range(r)]))
    gens.append(Permutation([b * r + a for a in range(r) for b in range(r)]))
    return PermGroup(gens, name=f"Wr2({U.name or 'U'})")


def pairs_action(U: PermGroup) -> PermGroup:
    """Induced action on unordered 2-subsets, ordered lexicographically."""
    pts = list(itertools.combinations(range(U.degree), 2))
    if len(pts) > DEGREE_LIMIT:
        raise GroupError(f"degree {len(pts)} exceeds limit {DEGREE_LIMIT}")
    if not pts:
        raise GroupError("need degree at least 2")
    index = {p: i for i, p in enumerate(pts)}
    gens = []
    for g in U.generators:
        gens.append(Permutation([index[tuple(sorted((g[a], g[b])))] for a, b in pts]))
    return PermGroup(gens, name=f"Pairs({U.name or 'U'})")


def m10() -> PermGroup:
    """The index-2 subgroup of PGammaL(2,9) that is neither PGL(2,9) nor PSigmaL(2,9)."""
    F = gf(9)
    base = projective_linear(2, 9, "PSL")
    twist = projective_perm(2, 9, diagonal([F.generator, 1]), frob=1)
    return PermGroup(list(base.generators) + [twist], name="M10")
