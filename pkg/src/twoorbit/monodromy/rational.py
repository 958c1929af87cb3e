"""Rational functions over Q, their branch points and the fiber over infinity."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from ..perm import CycleType
from .parse import parse_fraction
from .qpoly import (
    QPoly,
    interpolate,
    poly_gcd,
    squarefree_decomposition,
    squarefree_part,
)

DEFAULT_DPS = 50
CLUSTER_TOL = 1e-8


class MonodromyError(ValueError):
    pass


class DegenerateFunctionError(MonodromyError):
    pass


class NumericalError(MonodromyError):
    """A numeric guard tripped; the caller should raise precision."""

    def __init__(self, message: str):
        if "raise precision" not in message:
            message = f"{message}; raise precision"
        super().__init__(message)


@dataclass(frozen=True)
class RationalFunction:
    """P/Q in lowest terms with Q monic."""

    num: QPoly
    den: QPoly
    source: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.den:
            raise DegenerateFunctionError("denominator is zero")
        g = poly_gcd(self.num, self.den)
        P, Q = self.num.exact_div(g), self.den.exact_div(g)
        scale = 1 / Q.lead
        object.__setattr__(self, "num", P * scale)
        object.__setattr__(self, "den", Q * scale)
        if self.degree < 1:
            raise DegenerateFunctionError("the function is constant")

    @classmethod
    def parse(cls, text: str) -> "RationalFunction":
        P, Q = parse_fraction(text)
        return cls(P, Q, text.strip())

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def __str__(self) -> str:
        if self.source:
            return self.source
        return f"({self.num})/({self.den})"

    def fiber_poly(self, t: Fraction) -> QPoly:
        return self.num - self.den * Fraction(t)

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def infinity_image(self) -> tuple[Fraction | None, int]:
        """Image of Z = infinity (None for infinity) and its ramification index."""
        dP, dQ = self.num.degree, self.den.degree
        if dP > dQ:
            return None, dP - dQ
        if dP < dQ:
            return Fraction(0), dQ - dP
        c = self.num.lead / self.den.lead
        return c, self.degree - self.fiber_poly(c).degree

    def wronskian(self) -> QPoly:
        return self.num.derivative() * self.den - self.num * self.den.derivative()


def as_function(g: "RationalFunction | str") -> RationalFunction:
    return RationalFunction.parse(g) if isinstance(g, str) else g


# numerics


def mp_value(a: Fraction):
    return mpmath.mpf(a.numerator) / a.denominator


def mp_roots(f: QPoly, dps: int = DEFAULT_DPS) -> list:
    """All complex roots of f at ``dps`` digits."""
    if f.degree < 1:
        return []
    with mpmath.workdps(dps):
        if f.degree == 1:
            return [mpmath.mpc(mp_value(-f.c[0] / f.c[1]))]
        coeffs = [mp_value(a) for a in f.monic().coefficients(high_first=True)]
        for steps, extra in ((200, dps), (2000, 4 * dps)):
            try:
                roots = mpmath.polyroots(coeffs, maxsteps=steps, extraprec=extra)
                return [mpmath.mpc(r) for r in roots]
            except mpmath.libmp.NoConvergence:
                continue
    raise NumericalError(f"root finding did not converge for a degree {f.degree} polynomial")


def _rational_guess(x) -> Fraction | None:
    if abs(mpmath.im(x)) > 1e-20 * max(1, abs(x)):
        return None
    return Fraction(mpmath.nstr(mpmath.re(x), 40, strip_zeros=False)).limit_denominator(10**18)


def discriminant_in_t(g: RationalFunction) -> QPoly:
    """disc_Z(P - tQ) as a polynomial in t, by evaluation and interpolation.

    The binary-form discriminant is homogeneous of degree 2n-2 in the
    coefficients, which are affine in t, so 2n-1 nodes pin it down.  Nodes
    where the leading coefficient drops are skipped.
    """
    n = g.degree
    nodes, values = [], []
    k = 0
    while len(nodes) < 2 * n - 1:
        t = Fraction((k + 1) // 2 * (1 if k % 2 else -1))
        k += 1
        f = g.fiber_poly(t)
        if f.degree != n:
            continue
        nodes.append(t)
        values.append(_binary_discriminant(f))
    return interpolate(nodes, values)


def _binary_discriminant(f: QPoly) -> Fraction:
    from .qpoly import discriminant

    return discriminant(f) if f.degree >= 2 else Fraction(1)


@dataclass(frozen=True)
class BranchPoint:
    value: complex | None  # None stands for infinity
    local_type: CycleType
    exact: Fraction | None = None
    residual: float = 0.0

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def to_dict(self) -> dict:
        d = {"infinite": self.is_infinite, "local_type": self.local_type.label}
        if not self.is_infinite:
            d.update(re=_clean(self.value.real), im=_clean(self.value.imag))
        d["exact"] = None if self.exact is None else str(self.exact)
        return d


def _clean(x: float) -> float:
    x = float(f"{x:.12g}")
    return 0.0 if x == 0 else x


def _fiber_type_exact(g: RationalFunction, t0: Fraction) -> CycleType:
    f = g.fiber_poly(t0)
    mult = [k for h, k in squarefree_decomposition(f) for _ in range(h.degree)]
    mult += [1] * (f.degree - sum(mult))
    if g.degree > f.degree:
        mult.append(g.degree - f.degree)
    return CycleType.of(mult)


def critical_values(g: "RationalFunction | str", dps: int = DEFAULT_DPS, tol: float = CLUSTER_TOL) -> list[BranchPoint]:
    """Branch points with local types, finite ones first sorted by (re, im).

    Ramification indices come from the exact squarefree decomposition of the
    Wronskian P'Q - PQ'; only the attribution of critical points to
    discriminant roots is numeric.  Rational branch values are re-checked by
    an exact decomposition of P - t0 Q.
    """
    g = as_function(g)
    n = g.degree
    P, Q = g.num, g.den
    pole_parts = squarefree_decomposition(Q)
    W = g.wronskian()
    pole_factor = QPoly.const(1)
    for f, m in pole_parts:
        pole_factor = pole_factor * f ** (m - 1)
    W_fin = W.exact_div(pole_factor)
    crit_parts = squarefree_decomposition(W_fin)

    inf_image, e_inf = g.infinity_image()
    total = sum(k * f.degree for f, k in crit_parts) + sum((m - 1) * f.degree for f, m in pole_parts) + e_inf - 1
    if total != 2 * n - 2:
        raise MonodromyError(f"Riemann-Hurwitz count {total} != {2 * n - 2}")

    D = discriminant_in_t(g)
    if not D:
        raise MonodromyError("discriminant vanishes identically")
    S = squarefree_part(D) if D.degree > 0 else QPoly.const(1)

    with mpmath.workdps(dps):
        roots = mp_roots(S, dps)
        for i in range(len(roots)):
            for j in range(i):
                if abs(roots[i] - roots[j]) <= tol * max(1, abs(roots[i])):
                    raise NumericalError("branch values closer than the clustering tolerance")

        # (critical value, ramification index)
        crit = []
        for f, k in crit_parts:
            for z in mp_roots(f, dps):
                crit.append((P.eval_with(z, mp_value) / Q.eval_with(z, mp_value), k + 1))
        if inf_image is not None and e_inf > 1:
            crit.append((mpmath.mpc(mp_value(inf_image)), e_inf))

        assigned: list[list[int]] = [[] for _ in roots]
        for t, e in crit:
            if not roots:
                raise MonodromyError("critical point without a finite branch value")
            i = min(range(len(roots)), key=lambda r: abs(roots[r] - t))
            if abs(roots[i] - t) > tol * max(1, abs(roots[i])):
                raise NumericalError("critical value does not match any discriminant root")
            assigned[i].append(e)

        scale = max(abs(mp_value(a)) for a in S.c)
        points = []
        for r, es in zip(roots, assigned):
            if not es:
                raise NumericalError("discriminant root without a critical point")
            if sum(es) > n:
                raise MonodromyError("fiber multiplicities exceed the degree")
            ctype = CycleType.of(es + [1] * (n - sum(es)))
            exact = _rational_guess(r)
            if exact is not None and S(exact) != 0:
                exact = None
            if exact is not None:
                check = _fiber_type_exact(g, exact)
                if check != ctype:
                    raise MonodromyError(f"fiber over {exact}: exact type {check} but critical points give {ctype}")
            resid = abs(S.eval_with(r, mp_value)) / (scale * max(1, abs(r)) ** S.degree)
            value = complex(r) if exact is None else complex(float(exact), 0.0)
            if exact is None and abs(value.imag) < 1e-30 * max(1.0, abs(value)):
                value = complex(value.real, 0.0)
            points.append(BranchPoint(value, ctype, exact, float(resid)))

    points.sort(key=lambda b: (b.value.real, b.value.imag))
    fib = fiber_at_infinity(g)
    if max(fib.multiplicities.lengths) > 1:
        points.append(BranchPoint(None, fib.multiplicities))
    return points


@dataclass(frozen=True)
class InfinityFiber:
    points: tuple  # complex or None (Z = infinity), one entry per point
    point_multiplicities: tuple[int, ...]
    multiplicities: CycleType
    at_most_two: bool
    real: bool
    conjugate: bool
    quadratic: QPoly | None = None

    def to_dict(self) -> dict:
        pts = []
        for z, m in zip(self.points, self.point_multiplicities):
            if z is None:
                pts.append({"infinite": True, "multiplicity": m})
            else:
                pts.append({"re": _clean(z.real), "im": _clean(z.imag), "multiplicity": m})
        return {
            "points": pts,
            "multiplicities": self.multiplicities.label,
            "at_most_two": self.at_most_two,
            "real": self.real,
            "conjugate": self.conjugate,
            "quadratic": None if self.quadratic is None else str(self.quadratic),
        }


def _is_rational_square(a: Fraction) -> bool:
    if a < 0:
        return False
    from math import isqrt

    return isqrt(a.numerator) ** 2 == a.numerator and isqrt(a.denominator) ** 2 == a.denominator


def _all_roots_real(f: QPoly, dps: int) -> bool:
    if f.degree <= 1:
        return True
    if f.degree == 2:
        c, b, a = f.c
        return b * b - 4 * a * c >= 0
    with mpmath.workdps(dps):
        return all(abs(mpmath.im(z)) < mpmath.mpf(10) ** (-dps // 2) for z in mp_roots(f, dps))


def fiber_at_infinity(g: "RationalFunction | str", dps: int = DEFAULT_DPS) -> InfinityFiber:
    g = as_function(g)
    parts = squarefree_decomposition(g.den)
    pts, mults = [], []
    real = True
    for f, m in parts:
        real = real and _all_roots_real(f, dps)
        for z in mp_roots(f, dps):
            pts.append(complex(z))
            mults.append(m)
    dP, dQ = g.num.degree, g.den.degree
    if dP > dQ:
        pts.append(None)
        mults.append(dP - dQ)
    order = sorted(range(len(pts)), key=lambda i: (pts[i] is None, 0, 0) if pts[i] is None else (False, pts[i].real, pts[i].imag))
    pts = [pts[i] for i in order]
    mults = [mults[i] for i in order]
    quad = None
    conjugate = False
    if len(pts) == 2 and None not in pts and len(parts) == 1 and parts[0][0].degree == 2:
        quad = parts[0][0]
        c, b, a = quad.c
        conjugate = not _is_rational_square(b * b - 4 * a * c)
    return InfinityFiber(tuple(pts), tuple(mults), CycleType.of(mults), len(pts) <= 2, real, conjugate, quad)
