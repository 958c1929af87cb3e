"""Finite fields GF(p^e) with elements encoded as integers in base p.

The integer ``c0 + c1*p + ... `` stands for the residue of
``c0 + c1*X + ...`` modulo the field's modulus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache


class FieldError(ValueError):
    pass


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, or raise."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, e


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# dense polynomials over Z/p, coefficient lists low -> high


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    inv = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _monic_polys(degree: int, p: int):
    """Monic polynomials of a given degree, lower coefficients counting up in base p."""
    for code in range(p**degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(code % p)
            code //= p
        yield coeffs + [1]


def is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree at most deg(f)/2."""
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(d, p):
            if not _polymod(f, g, p):
                return False
    return deg >= 1


@lru_cache(maxsize=None)
def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    for f in _monic_polys(e, p):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True)
class FiniteField:
    p: int
    e: int
    modulus: tuple[int, ...] = field(init=False)
    generator: int = field(init=False)
    _exp: tuple[int, ...] = field(init=False, repr=False)
    _log: tuple[int, ...] = field(init=False, repr=False)
    _addt: tuple | None = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if prime_factors(self.p) != [self.p]:
            raise FieldError(f"{self.p} is not prime")
        if self.e < 1:
            raise FieldError("extension degree must be positive")
        mod = least_irreducible(self.p, self.e)
        object.__setattr__(self, "modulus", mod)
        q = self.q
        for g in range(1, q):
            exp = self._powers(g)
            if exp is not None:
                break
        else:
            raise AssertionError("multiplicative group is not cyclic")
        log = [0] * q
        for i, a in enumerate(exp):
            log[a] = i
        object.__setattr__(self, "generator", g)
        object.__setattr__(self, "_exp", tuple(exp))
        object.__setattr__(self, "_log", tuple(log))
        table = None
        if self.e > 1 and q <= 256:
            table = tuple(tuple(self._add_slow(a, b) for b in range(q)) for a in range(q))
        object.__setattr__(self, "_addt", table)

    @property
    def q(self) -> int:
        return self.p**self.e

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, d: list[int]) -> int:
        return sum(c * self.p**i for i, c in enumerate(d))

    def _mul_slow(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.e)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        r = _polymod(prod, list(self.modulus), self.p)
        return self.from_digits(r + [0] * (self.e - len(r)))

    def _powers(self, g: int) -> list[int] | None:
        """Powers of g if g generates the multiplicative group."""
        out = [1]
        x = g
        while x != 1:
            out.append(x)
            x = self._mul_slow(x, g)
        return out if len(out) == self.q - 1 else None

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self._addt is not None:
            return self._addt[a][b]
        return self._add_slow(a, b)

    def _add_slow(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        return self.from_digits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        return self.from_digits([(-x) % self.p for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def power(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k > 0 else 1
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.power(a, self.p)

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        from math import gcd

        return (self.q - 1) // gcd(self._log[a], self.q - 1)

    def additive_basis(self) -> list[int]:
        """Basis of the field as a vector space over the prime field."""
        return [self.p**i for i in range(self.e)]

    def elements(self) -> range:
        return range(self.q)


@lru_cache(maxsize=None)
def gf(q: int) -> FiniteField:
    p, e = factor_prime_power(q)
    return FiniteField(p, e)
