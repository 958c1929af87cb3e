"""Maximal element orders compared with elementary closed-form bounds."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .classes import DEFAULT_CEILING, TooLargeError
from .group import PermGroup
from .perm import Permutation

GUARD = 1e-9
# (m, q) where the largest element order of PGammaL exceeds (q^m - 1)/(q - 1)
KNOWN_PGL_EXCEPTIONS = {(2, 4)}


class BoundsError(ValueError):
    pass


@dataclass
class BoundReport:
    name: str
    params: dict
    exact: int
    bound: float
    satisfied: bool
    witness: str | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


# Landau's function


def _primes_upto(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"[: min(2, n + 1)]
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n + 1) if sieve[i]]


def landau_max_order(n: int) -> int:
    """Largest lcm of a partition of n, by a knapsack over prime powers."""
    if not 1 <= n <= 200:
        raise BoundsError(f"n must lie in 1..200, got {n}")
    best = [1] * (n + 1)  # best[j]: max product of coprime prime powers with sum <= j
    for p in _primes_upto(n):
        new = best[:]
        pk = p
        while pk <= n:
            for j in range(pk, n + 1):
                cand = best[j - pk] * pk
                if cand > new[j]:
                    new[j] = cand
            pk *= p
        best = new
    return best[n]


def _landau_witness(n: int) -> list[int]:
    """A partition of n attaining the maximum (prime powers padded with 1s)."""
    target = landau_max_order(n)
    primes = _primes_upto(n)

    def search(i: int, budget: int, prod: int) -> list[int] | None:
        if prod == target:
            return []
        if i == len(primes):
            return None
        p = primes[i]
        pk = p
        options = []
        while pk <= budget:
            options.append(pk)
            pk *= p
        for part in reversed(options):
            rest = search(i + 1, budget - part, prod * part)
            if rest is not None:
                return [part] + rest
        return search(i + 1, budget, prod)

    parts = search(0, n, 1) or []
    return sorted(parts + [1] * (n - sum(parts)), reverse=True)


# exact fallback for comparisons against exp(n/e)


def _e_interval(terms: int = 30) -> tuple[Fraction, Fraction]:
    lo = sum(Fraction(1, math.factorial(k)) for k in range(terms + 1))
    return lo, lo + Fraction(1, math.factorial(terms) * terms)


def _exp_interval(y: Fraction, terms: int = 60) -> tuple[Fraction, Fraction]:
    """Bounds for exp(y), y >= 0, from a truncated Taylor series."""
    partial = Fraction(0)
    term = Fraction(1)
    for k in range(terms + 1):
        partial += term
        term = term * y / (k + 1)
    # remainder <= next term * 1/(1 - y/(terms+2)) once terms+2 > y
    ratio = y / (terms + 2)
    if ratio >= 1:
        raise BoundsError("series too short for this argument")
    return partial, partial + term / (1 - ratio)


def _le_exp_n_over_e(x: int, n: int) -> bool:
    """Exact decision of x <= exp(n/e) by rational interval refinement."""
    terms = 30
    while terms < 400:
        e_lo, e_hi = _e_interval(terms)
        low, _ = _exp_interval(Fraction(n) / e_hi, terms + 2 * n)
        _, high = _exp_interval(Fraction(n) / e_lo, terms + 2 * n)
        if x <= low:
            return True
        if x > high:
            return False
        terms *= 2
    raise BoundsError("could not separate the comparison from the bound")


def _compare(exact: int, bound: float, exact_check) -> tuple[bool, bool]:
    """(satisfied, used_fallback)."""
    if abs(exact - bound) <= GUARD * max(1.0, abs(bound)):
        return exact_check(), True
    return exact <= bound, False


def check_sn_bounds(n: int) -> BoundReport:
    value = landau_max_order(n)
    ebound = math.exp(n / math.e)
    ok_e, fb_e = _compare(value, ebound, lambda: _le_exp_n_over_e(value, n))
    extra: dict = {"e_bound": ebound, "e_bound_ok": ok_e, "exact_fallback": fb_e}
    satisfied = ok_e
    if n >= 6:
        a = n / 2
        sbound = a ** math.sqrt(a)

        def precise() -> bool:
            with mpmath.workdps(60):
                half = mpmath.mpf(n) / 2
                return mpmath.mpf(value) <= half ** mpmath.sqrt(half)

        ok_s, fb_s = _compare(value, sbound, precise)
        extra.update(sqrt_bound=sbound, sqrt_bound_ok=ok_s)
        extra["exact_fallback"] = fb_e or fb_s
        satisfied = satisfied and ok_s
    witness = ",".join(map(str, _landau_witness(n)))
    return BoundReport("sn", {"n": n}, value, ebound, satisfied, witness, extra)


# exhaustive element orders


def element_orders(G: PermGroup, ceiling: int = DEFAULT_CEILING) -> tuple[np.ndarray, np.ndarray]:
    """(elements, orders) for every element of G."""
    if G.order() > ceiling:
        raise TooLargeError(f"group order {G.order()} exceeds the enumeration ceiling {ceiling}")
    E = G.elements().astype(np.intp)
    n = G.degree
    cyc_len = np.zeros_like(E)
    cur = E.copy()
    start = np.arange(n)[None, :]
    for k in range(1, n + 1):
        hit = (cur == start) & (cyc_len == 0)
        cyc_len[hit] = k
        if k < n:
            cur = np.take_along_axis(E, cur, axis=1)
    orders = np.lcm.reduce(cyc_len, axis=1)
    return E, orders


def max_element_order(G: PermGroup, ceiling: int = DEFAULT_CEILING) -> tuple[int, Permutation]:
    E, orders = element_orders(G, ceiling)
    i = int(np.argmax(orders))
    return int(orders[i]), Permutation(E[i].tolist(), check=False)


def check_pgl_order_bound(m: int, q: int, ceiling: int = DEFAULT_CEILING) -> BoundReport:
    from .catalog.linear import projective_linear

    G = projective_linear(m, q, "PGammaL")
    best, witness = max_element_order(G, ceiling)
    bound = (q**m - 1) // (q - 1)
    satisfied = best <= bound
    extra = {"group_order": G.order(), "exception": not satisfied, "known_exception": (m, q) in KNOWN_PGL_EXCEPTIONS}
    return BoundReport("pgl", {"m": m, "q": q}, best, float(bound), satisfied, witness.to_cycles(), extra)


def check_affine_p_bound(m: int, p: int, ceiling: int = DEFAULT_CEILING) -> BoundReport:
    """Largest p-power element order p^r in AGL(m,p), checked against p^(r-1) <= m."""
    from .catalog.linear import affine

    if p**m > 2**12:
        raise BoundsError(f"p^m = {p**m} exceeds 2^12")
    G = affine(m, p, "AGL")
    E, orders = element_orders(G, ceiling)
    ppow = orders.copy()
    while True:
        mask = ppow % p == 0
        if not mask.any():
            break
        ppow[mask] //= p
    is_ppow = ppow == 1
    candidates = np.where(is_ppow, orders, 0)
    i = int(np.argmax(candidates))
    best = int(candidates[i])
    r = round(math.log(best, p)) if best > 1 else 0
    assert p**r == best
    lhs = p ** (r - 1) if r >= 1 else 0
    satisfied = r == 0 or lhs <= m
    witness = Permutation(E[i].tolist(), check=False).to_cycles()
    extra = {"r": r, "p_pow_r_minus_1": lhs, "group_order": G.order()}
    return BoundReport("affine_p", {"m": m, "p": p}, best, float(m), satisfied, witness, extra)


PGL_SWEEP = [(2, 2), (2, 3), (2, 4), (2, 5), (2, 7), (3, 2), (3, 3), (4, 2)]
AFFINE_SWEEP = [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3), (2, 5), (3, 2), (3, 3), (4, 2)]


def sweep() -> list[BoundReport]:
    reports = [check_sn_bounds(n) for n in range(1, 101)]
    reports += [check_pgl_order_bound(m, q) for m, q in PGL_SWEEP]
    reports += [check_affine_p_bound(m, p) for m, p in AFFINE_SWEEP]
    return reports
