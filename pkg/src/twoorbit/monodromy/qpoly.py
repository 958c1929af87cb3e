"""Dense univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Number = int | Fraction


class QPoly:
    """Coefficients stored low degree first, trailing zeros stripped."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def const(cls, a: Number) -> "QPoly":
        return cls([a])

    @classmethod
    def x(cls) -> "QPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lead(self) -> Fraction:
        return self.c[-1] if self.c else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QPoly.const(other)
        return isinstance(other, QPoly) and self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"QPoly({self})"

    def __str__(self) -> str:
        if not self.c:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            a = self.c[k]
            if a == 0:
                continue
            mono = "" if k == 0 else ("Z" if k == 1 else f"Z^{k}")
            if mono and abs(a) == 1:
                coef = ""
            elif mono:
                coef = f"{abs(a)}*" if a.denominator == 1 else f"({abs(a)})*"
            else:
                coef = str(abs(a))
            sign = "-" if a < 0 else "+"
            terms.append((sign, coef + mono))
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {t}" for s, t in terms[1:])

    @staticmethod
    def _lift(other) -> "QPoly":
        return other if isinstance(other, QPoly) else QPoly.const(other)

    def __add__(self, other) -> "QPoly":
        o = self._lift(other).c
        a = self.c
        m = max(len(a), len(o))
        return QPoly((a[i] if i < len(a) else 0) + (o[i] if i < len(o) else 0) for i in range(m))

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(-x for x in self.c)

    def __sub__(self, other) -> "QPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "QPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "QPoly":
        if isinstance(other, (int, Fraction)):
            return QPoly(x * other for x in self.c)
        a, b = self.c, other.c
        if not a or not b:
            return QPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = QPoly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        db, lb = other.degree, other.lead
        if len(rem) <= db:
            return QPoly(), self
        quo = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            coef = rem[k] / lb
            if coef:
                quo[k - db] = coef
                for j, y in enumerate(other.c):
                    rem[k - db + j] -= coef * y
        return QPoly(quo), QPoly(rem[:db])

    def __floordiv__(self, other: "QPoly") -> "QPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "QPoly") -> "QPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "QPoly") -> "QPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def derivative(self) -> "QPoly":
        return QPoly(k * a for k, a in enumerate(self.c) if k)

    def monic(self) -> "QPoly":
        return self * (1 / self.lead) if self.c else self

    def __call__(self, x):
        acc = 0 * x
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def eval_with(self, x, convert):
        """Horner with the coefficients passed through ``convert`` first."""
        acc = convert(Fraction(0))
        for a in reversed(self.c):
            acc = acc * x + convert(a)
        return acc

    def coefficients(self, high_first: bool = False) -> list[Fraction]:
        return list(reversed(self.c)) if high_first else list(self.c)


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic gcd; the gcd of two zero polynomials is zero."""
    while b:
        a, b = b, a % b
    return a.monic()


def resultant(a: QPoly, b: QPoly) -> Fraction:
    """Res(a, b) for the actual degrees, by the Euclidean remainder sequence."""
    if not a or not b:
        return Fraction(0)
    acc = Fraction(1)
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return acc * b.lead**da
        r = a % b
        if not r:
            return Fraction(0)
        if (da * db) % 2:
            acc = -acc
        acc *= b.lead ** (da - r.degree)
        a, b = b, r


def discriminant(f: QPoly) -> Fraction:
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lead


def squarefree_decomposition(f: QPoly) -> list[tuple[QPoly, int]]:
    """Yun's algorithm: monic squarefree coprime factors with multiplicities."""
    if f.degree < 1:
        return []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    out = []
    k = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g.monic(), k))
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        k += 1
    return out


def squarefree_part(f: QPoly) -> QPoly:
    return f.exact_div(poly_gcd(f, f.derivative())).monic()


def interpolate(nodes: Sequence[Number], values: Sequence[Number]) -> QPoly:
    """Newton divided differences, expanded to monomial form."""
    xs = [Fraction(x) for x in nodes]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    dd = [Fraction(v) for v in values]
    k = len(xs)
    for level in range(1, k):
        for i in range(k - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    out = QPoly.const(dd[-1])
    for i in range(k - 2, -1, -1):
        out = out * QPoly([-xs[i], 1]) + dd[i]
    return out
