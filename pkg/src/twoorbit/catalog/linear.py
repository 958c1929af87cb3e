"""Linear, semilinear and affine groups over finite fields as permutation groups.

Vectors are row vectors and matrices act on the right, matching the
left-to-right composition of permutations.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

from ..group import GroupError, PermGroup
from ..perm import Permutation
from .fields import FiniteField, gf, prime_factors

DEGREE_LIMIT = 10**4

Matrix = tuple[tuple[int, ...], ...]

_FLAVOR_ALIASES = {
    "PSL": "PSL",
    "PGL": "PGL",
    "PSIGMAL": "PSigmaL",
    "PΣL": "PSigmaL",
    "PGAMMAL": "PGammaL",
    "PΓL": "PGammaL",
    "ASL": "ASL",
    "AGL": "AGL",
    "ASIGMAL": "ASigmaL",
    "AΣL": "ASigmaL",
    "AGAMMAL": "AGammaL",
    "AΓL": "AGammaL",
}


def _flavor(name: str) -> str:
    key = name.upper() if name.isascii() else name
    if key not in _FLAVOR_ALIASES:
        raise GroupError(f"unknown flavor {name!r}")
    return _FLAVOR_ALIASES[key]


# matrix arithmetic


def identity_matrix(m: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(m)) for i in range(m))


def vec_mat(F: FiniteField, v: tuple[int, ...], M: Matrix) -> tuple[int, ...]:
    m = len(M)
    out = []
    for j in range(m):
        acc = 0
        for i in range(m):
            if v[i] and M[i][j]:
                acc = F.add(acc, F.mul(v[i], M[i][j]))
        out.append(acc)
    return tuple(out)


def mat_mul(F: FiniteField, A: Matrix, B: Matrix) -> Matrix:
    return tuple(vec_mat(F, row, B) for row in A)


def mat_pow(F: FiniteField, M: Matrix, k: int) -> Matrix:
    result = identity_matrix(len(M))
    base = M
    while k:
        if k & 1:
            result = mat_mul(F, result, base)
        base = mat_mul(F, base, base)
        k >>= 1
    return result


def matrix_order_is(F: FiniteField, M: Matrix, order: int) -> bool:
    ident = identity_matrix(len(M))
    if mat_pow(F, M, order) != ident:
        return False
    return all(mat_pow(F, M, order // r) != ident for r in prime_factors(order))


def elementary(m: int, i: int, j: int, c: int) -> Matrix:
    rows = [list(r) for r in identity_matrix(m)]
    rows[i][j] = c
    return tuple(tuple(r) for r in rows)


def diagonal(entries) -> Matrix:
    m = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(m)) for i in range(m))


def companion_matrix(F: FiniteField, coeffs: list[int]) -> Matrix:
    """Companion matrix of the monic polynomial with lower coefficients ``coeffs``."""
    m = len(coeffs)
    rows = []
    for i in range(m - 1):
        rows.append(tuple(int(j == i + 1) for j in range(m)))
    rows.append(tuple(F.neg(c) for c in coeffs))
    return tuple(rows)


# point sets


def _check_degree(deg: int) -> None:
    if deg > DEGREE_LIMIT:
        raise GroupError(f"degree {deg} exceeds limit {DEGREE_LIMIT}")


def normalize(F: FiniteField, v: tuple[int, ...]) -> tuple[int, ...]:
    """Scale so the last nonzero coordinate is 1."""
    for c in reversed(v):
        if c:
            inv = F.inv(c)
            return tuple(F.mul(x, inv) for x in v)
    raise ValueError("zero vector has no projective point")


@lru_cache(maxsize=None)
def projective_points(m: int, q: int) -> tuple[tuple[int, ...], ...]:
    F = gf(q)
    pts = {normalize(F, v) for v in itertools.product(range(q), repeat=m) if any(v)}
    return tuple(sorted(pts))


@lru_cache(maxsize=None)
def vectors(m: int, q: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.product(range(q), repeat=m))


def apply_frobenius(F: FiniteField, v: tuple[int, ...], times: int) -> tuple[int, ...]:
    for _ in range(times % F.e):
        v = tuple(F.frobenius(x) for x in v)
    return v


def projective_perm(m: int, q: int, M: Matrix, frob: int = 0) -> Permutation:
    """Permutation of the projective points induced by v -> v^(phi^frob) M."""
    F = gf(q)
    pts = projective_points(m, q)
    index = {v: i for i, v in enumerate(pts)}
    return Permutation([index[normalize(F, vec_mat(F, apply_frobenius(F, v, frob), M))] for v in pts])


def affine_perm(m: int, q: int, M: Matrix, shift: tuple[int, ...] | None = None, frob: int = 0) -> Permutation:
    """Permutation of the vectors induced by v -> v^(phi^frob) M + shift."""
    F = gf(q)
    vecs = vectors(m, q)
    index = {v: i for i, v in enumerate(vecs)}
    shift = shift or (0,) * m
    out = []
    for v in vecs:
        w = vec_mat(F, apply_frobenius(F, v, frob), M)
        out.append(index[tuple(F.add(a, b) for a, b in zip(w, shift))])
    return Permutation(out)


def _linear_generators(m: int, F: FiniteField, with_gl: bool, with_frob: bool) -> list[tuple[Matrix, int]]:
    gens: list[tuple[Matrix, int]] = []
    for i in range(m - 1):
        for lam in F.additive_basis():
            gens.append((elementary(m, i, i + 1, lam), 0))
            gens.append((elementary(m, i + 1, i, lam), 0))
    if with_gl and F.q > 2:
        gens.append((diagonal([F.generator] + [1] * (m - 1)), 0))
    if with_frob and F.e > 1:
        gens.append((identity_matrix(m), 1))
    if not gens:
        gens.append((identity_matrix(m), 0))
    return gens


def projective_linear(m: int, q: int, flavor: str = "PGL") -> PermGroup:
    flavor = _flavor(flavor)
    if flavor not in ("PSL", "PGL", "PSigmaL", "PGammaL"):
        raise GroupError(f"{flavor} is not a projective flavor")
    if m < 2:
        raise GroupError("projective groups need dimension at least 2")
    F = gf(q)
    _check_degree((q**m - 1) // (q - 1))
    gens = _linear_generators(m, F, flavor in ("PGL", "PGammaL"), flavor in ("PSigmaL", "PGammaL"))
    perms = [projective_perm(m, q, M, f) for M, f in gens]
    return PermGroup(perms, name=f"{flavor}({m},{q})")


def affine(m: int, q: int, flavor: str = "AGL") -> PermGroup:
    flavor = _flavor(flavor)
    if flavor not in ("ASL", "AGL", "ASigmaL", "AGammaL"):
        raise GroupError(f"{flavor} is not an affine flavor")
    if m < 1:
        raise GroupError("dimension must be positive")
    F = gf(q)
    _check_degree(q**m)
    gens = _linear_generators(m, F, flavor in ("AGL", "AGammaL"), flavor in ("ASigmaL", "AGammaL"))
    perms = [affine_perm(m, q, M, None, f) for M, f in gens]
    ident = identity_matrix(m)
    # translations along a prime-field basis of the whole space
    for i in range(m):
        for lam in F.additive_basis():
            shift = tuple(lam if j == i else 0 for j in range(m))
            perms.append(affine_perm(m, q, ident, shift))
    return PermGroup(perms, name=f"{flavor}({m},{q})")


def linear_group_order(m: int, q: int, flavor: str) -> int:
    """Textbook order formula, used as an independent check on chain orders."""
    flavor = _flavor(flavor)
    p, e = gf(q).p, gf(q).e
    gl = math.prod(q**m - q**i for i in range(m))
    sl = gl // (q - 1)
    table = {
        "PSL": sl // math.gcd(m, q - 1),
        "PGL": gl // (q - 1),
        "PSigmaL": sl // math.gcd(m, q - 1) * e,
        "PGammaL": gl // (q - 1) * e,
        "ASL": q**m * sl,
        "AGL": q**m * gl,
        "ASigmaL": q**m * sl * e,
        "AGammaL": q**m * gl * e,
    }
    return table[flavor]


# Singer cycles


@lru_cache(maxsize=None)
def singer_matrix(m: int, q: int) -> Matrix:
    """Companion matrix of the least primitive monic polynomial of degree m over GF(q)."""
    F = gf(q)
    target = q**m - 1
    for code in range(q**m):
        coeffs = []
        c = code
        for _ in range(m):
            coeffs.append(c % q)
            c //= q
        if coeffs[0] == 0:
            continue
        M = companion_matrix(F, coeffs)
        if matrix_order_is(F, M, target):
            return M
    raise AssertionError("no primitive polynomial found")


def singer_element(m: int, q: int) -> Permutation:
    """Singer cycle acting on the q^m vectors (the zero vector is fixed)."""
    _check_degree(q**m)
    return affine_perm(m, q, singer_matrix(m, q))


def singer_projective(m: int, q: int, power: int = 1) -> Permutation:
    """Image of a power of the Singer cycle in the action on projective points."""
    F = gf(q)
    return projective_perm(m, q, mat_pow(F, singer_matrix(m, q), power))


# explicit affine elements with two cycles


def affine_two_cycle_element(m: int, p: int, case: str = "a") -> Permutation:
    """Affine map on GF(p)^m with exactly two cycles.

    Case "a": identity on a line U, Singer cycle on a complement W, shifted
    by a nonzero vector of U; cycle lengths p and p^m - p.
    Case "b" (p = 2): an involution on a plane U moving the shift vector,
    with a Singer cycle on W; cycle lengths 4 and 2^m - 4.
    """
    F = gf(p)
    if F.e != 1:
        raise GroupError("p must be prime")
    if case == "a":
        if m < 2:
            raise GroupError("case a needs m >= 2")
        head = ((1,),)
        dim_u = 1
    elif case == "b":
        if p != 2 or m < 3:
            raise GroupError("case b needs p = 2 and m >= 3")
        head = ((1, 1), (0, 1))
        dim_u = 2
    else:
        raise GroupError(f"unknown case {case!r}")
    rest = m - dim_u
    tail = singer_matrix(rest, p) if rest else ()
    rows = []
    for r in head:
        rows.append(tuple(r) + (0,) * rest)
    for r in tail:
        rows.append((0,) * dim_u + tuple(r))
    M = tuple(rows)
    # shift by e_1, which lies in U and is moved by the involution in case b
    shift = [0] * m
    shift[0] = 1
    return affine_perm(m, p, M, tuple(shift))
