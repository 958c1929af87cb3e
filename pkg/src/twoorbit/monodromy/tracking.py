"""Branch cycle descriptions by continuation of the fiber of P - tQ."""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

import mpmath
import numpy as np

from ..group import PermGroup
from ..perm import CycleType, Permutation, identity
from .rational import (
    BranchPoint,
    MonodromyError,
    NumericalError,
    RationalFunction,
    as_function,
    critical_values,
    mp_roots,
    mp_value,
)


class TrackingError(NumericalError):
    pass


@dataclass
class MonodromyConfig:
    base_point: complex | None = None
    jitter: float = 0.0  # fraction of the clearance around the chosen base point
    seed: int = 0
    residual_tol: float = 1e-10
    separation_guard: float = 1e-6  # relative to the fiber diameter
    cluster_tol: float = 1e-8
    dps: int = 50
    escalate: bool = True
    mp_dps: int = 34
    min_step: float = 1e-9
    max_step: float = 0.05
    grid: int = 25


@dataclass
class BranchCycleDescription:
    function: RationalFunction
    base_point: complex
    branch_points: list[BranchPoint]
    sigmas: list[Permutation]
    base_fiber: list[complex] = field(default_factory=list)
    precision: str = "double"

    @property
    def degree(self) -> int:
        return self.function.degree

    @property
    def type(self) -> tuple[int, ...]:
        return tuple(sorted(s.order() for s in self.sigmas))

    def product(self) -> Permutation:
        out = identity(self.degree)
        for s in self.sigmas:
            out = out * s
        return out

    def group(self) -> PermGroup:
        return PermGroup(self.sigmas, self.degree)

    @property
    def genus(self) -> int:
        total = sum(self.degree - s.num_cycles() for s in self.sigmas)
        return total // 2 - self.degree + 1

    def to_dict(self) -> dict:
        return {
            "function": str(self.function),
            "degree": self.degree,
            "base_point": {"re": round(self.base_point.real, 12), "im": round(self.base_point.imag, 12)},
            "branch_points": [b.to_dict() for b in self.branch_points],
            "sigmas": [s.to_cycles() for s in self.sigmas],
            "type": list(self.type),
            "group_order": self.group().order(),
            "genus": self.genus,
            "precision": self.precision,
        }


# polynomial arithmetic on root vectors


class _Fiber:
    """Evaluation of N(z) = P(z) - t Q(z) and its z-derivative on root vectors."""

    def __init__(self, g: RationalFunction, mode: str, mp_dps: int):
        self.mode = mode
        self.mp_dps = mp_dps
        P, Q = g.num, g.den
        polys = [P, Q, P.derivative(), Q.derivative()]
        if mode == "double":
            conv = [np.array([complex(float(a)) for a in f.coefficients(True)] or [0j]) for f in polys]
        else:
            with mpmath.workdps(mp_dps):
                conv = [np.array([mpmath.mpc(mp_value(a)) for a in f.coefficients(True)] or [mpmath.mpc(0)], dtype=object) for f in polys]
        self.P, self.Q, self.dP, self.dQ = conv

    def cast(self, z):
        if self.mode == "double":
            return np.asarray(z, dtype=complex)
        return np.array([mpmath.mpc(x) for x in z], dtype=object)

    def value(self, z, t):
        return np.polyval(self.P, z) - t * np.polyval(self.Q, z)

    def slope(self, z, t):
        return np.polyval(self.dP, z) - t * np.polyval(self.dQ, z)

    def dz_dt(self, z, t):
        return np.polyval(self.Q, z) / self.slope(z, t)


def _separations(z) -> np.ndarray:
    d = np.abs(z[:, None] - z[None, :]).astype(float)
    np.fill_diagonal(d, np.inf)
    return d.min(axis=1)


def _aberth(F: _Fiber, z, t, tol: float, iters: int = 12):
    for _ in range(iters):
        w = F.value(z, t) / F.slope(z, t)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1)
        inv = 1 / diff
        np.fill_diagonal(inv, 0)
        corr = w / (1 - w * inv.sum(axis=1))
        z = z - corr
        if all(float(abs(c)) <= tol * (1 + float(abs(x))) for c, x in zip(corr, z)):
            return z, True
    return z, False


def _track_leg(F: _Fiber, z, path, cfg: MonodromyConfig, min_step: float):
    """Follow the roots along t = path(s), s from 0 to 1."""
    s, ds = 0.0, cfg.max_step / 2
    t0 = path(0.0)
    while s < 1.0:
        ds = min(ds, 1.0 - s)
        if ds < min_step:
            raise TrackingError("step size underflow while tracking")
        t1 = path(s + ds)
        sep = _separations(z)
        pred = z + F.dz_dt(z, t0) * (t1 - t0)
        new, ok = _aberth(F, pred, t1, cfg.residual_tol)
        if ok:
            jump = np.abs(new - z).astype(float)
            drift = np.abs(new - pred).astype(float)
            ok = bool(np.all(jump < 0.3 * sep) and np.all(drift < 0.1 * sep))
        if not ok:
            ds /= 2
            continue
        new_sep = _separations(new)
        diam = float(np.max(np.abs(new[:, None] - new[None, :]).astype(float)))
        if new.size > 1 and float(new_sep.min()) < cfg.separation_guard * diam:
            raise TrackingError("fiber points collided during tracking")
        z, t0, s = new, t1, s + ds
        ds = min(ds * 1.5, cfg.max_step)
    return z


def _line(a: complex, b: complex):
    return lambda s: a + s * (b - a)


def _arc(center: complex, radius: float, theta0: float):
    return lambda s: center + radius * cmath.exp(1j * (theta0 + 2 * math.pi * s))


# loop geometry


def _seg_dist(p: complex, a: complex, b: complex) -> float:
    d = b - a
    if d == 0:
        return abs(p - a)
    u = ((p - a) * d.conjugate()).real / abs(d) ** 2
    u = min(1.0, max(0.0, u))
    return abs(p - (a + u * d))


def _clearance(b: complex, obstacles: list[complex]) -> float:
    best = min(abs(b - p) for p in obstacles)
    for i, p in enumerate(obstacles):
        for j, q in enumerate(obstacles):
            if i != j:
                best = min(best, _seg_dist(q, b, p))
    return best


def choose_base_point(obstacles: list[complex], grid: int = 25) -> complex:
    """Grid search, coarse then fine, for the point with the largest clearance."""
    center = sum(obstacles) / len(obstacles)
    span = max(abs(p - center) for p in obstacles) or 1.0
    lo, width = center - 1.5 * span * (1 + 1j), 3 * span
    best, best_score = center, -1.0
    for _ in range(2):
        step = width / (grid - 1)
        for i in range(grid):
            for j in range(grid):
                b = lo + complex(i * step, j * step)
                s = _clearance(b, obstacles)
                if s > best_score + 1e-12 * span:
                    best, best_score = b, s
        lo, width = best - step * (1 + 1j), 2 * step
    return best


def _arg(z: complex) -> float:
    return math.atan2(z.imag, z.real)


@dataclass
class _Loop:
    target: complex | None  # None: a large circle around everything
    legs: list


def _loops(base: complex, points: list[complex], obstacles: list[complex]):
    """Loops around each finite branch point, ordered counterclockwise from a cut,
    and the large loop enclosing every obstacle."""
    angles = sorted(_arg(p - base) % (2 * math.pi) for p in obstacles)
    gaps = [(angles[(k + 1) % len(angles)] - angles[k]) % (2 * math.pi) or 2 * math.pi for k in range(len(angles))]
    k = max(range(len(gaps)), key=lambda i: gaps[i])
    cut = angles[k] + gaps[k] / 2

    def rel(p: complex) -> float:
        return (_arg(p - base) - cut) % (2 * math.pi)

    order = sorted(range(len(points)), key=lambda i: (rel(points[i]), abs(points[i] - base)))
    loops = []
    for i in order:
        p = points[i]
        r = abs(base - p)
        for q in obstacles:
            if q != p:
                r = min(r, abs(p - q), _seg_dist(p, base, q))
        r *= 0.4
        u = (p - base) / abs(p - base)
        entry = p - r * u
        theta0 = _arg(entry - p)
        loops.append(_Loop(p, [_line(base, entry), _arc(p, r, theta0), _line(entry, base)]))
    R = 1.5 * max(abs(q - base) for q in obstacles) + 1.0
    far = base + R * cmath.exp(1j * cut)
    big = _Loop(None, [_line(base, far), _arc(base, R, cut), _line(far, base)])
    return order, loops, big


def _match(start, end) -> list[int]:
    sep = float(_separations(start).min()) if len(start) > 1 else math.inf
    images = []
    for z in end:
        d = np.abs(start - z).astype(float)
        j = int(np.argmin(d))
        if d[j] > 0.25 * sep:
            raise TrackingError("tracked fiber does not return to the base fiber")
        images.append(j)
    if len(set(images)) != len(images):
        raise TrackingError("tracked fiber points merged")
    return images


def _base_fiber(F: _Fiber, g: RationalFunction, base: complex, cfg: MonodromyConfig):
    if F.mode == "double":
        coeffs = F.P.copy()
        k = len(coeffs) - len(F.Q)
        Qpad = np.concatenate([np.zeros(max(k, 0), complex), F.Q])
        Ppad = np.concatenate([np.zeros(max(-k, 0), complex), coeffs])
        z = np.roots(Ppad - base * Qpad)
    else:
        with mpmath.workdps(cfg.mp_dps):
            z = np.array(_mp_fiber_roots(g, base, cfg.mp_dps), dtype=object)
    z, ok = _aberth(F, F.cast(z), base, cfg.residual_tol, iters=50)
    if not ok or len(z) != g.degree:
        raise TrackingError("could not resolve the fiber over the base point")
    order = sorted(range(len(z)), key=lambda i: (round(float(mpmath.re(z[i])), 9), round(float(mpmath.im(z[i])), 9)))
    return z[order]


def _mp_fiber_roots(g: RationalFunction, base: complex, dps: int):
    with mpmath.workdps(dps):
        P = [mpmath.mpc(mp_value(a)) for a in g.num.coefficients(True)]
        Q = [mpmath.mpc(mp_value(a)) for a in g.den.coefficients(True)]
        k = len(P) - len(Q)
        P = [mpmath.mpc(0)] * max(-k, 0) + P
        Q = [mpmath.mpc(0)] * max(k, 0) + Q
        t = mpmath.mpc(base)
        coeffs = [p - t * q for p, q in zip(P, Q)]
        return mpmath.polyroots(coeffs, maxsteps=500, extraprec=2 * dps)


def _run(g, cfg, base, order, loops, big, mode):
    F = _Fiber(g, mode, cfg.mp_dps)
    min_step = cfg.min_step if mode == "double" else cfg.min_step * 1e-4
    ctx = mpmath.workdps(cfg.mp_dps) if mode != "double" else _Null()
    with ctx:
        z0 = _base_fiber(F, g, base, cfg)
        sigmas = []
        for loop in loops + [big]:
            z = z0
            for leg in loop.legs:
                path = leg if mode == "double" else (lambda s, leg=leg: mpmath.mpc(leg(s)))
                z = _track_leg(F, z, path, cfg, min_step)
            sigmas.append(Permutation(_match(z0, z)))
        fiber = [complex(x) for x in z0]
    return sigmas[:-1], sigmas[-1], fiber


class _Null:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def monodromy(g: "RationalFunction | str", config: MonodromyConfig | None = None) -> BranchCycleDescription:
    cfg = config or MonodromyConfig()
    g = as_function(g)
    n = g.degree
    bps = critical_values(g, cfg.dps, cfg.cluster_tol)
    finite = [b for b in bps if not b.is_infinite]
    at_inf = [b for b in bps if b.is_infinite]
    points = [b.value for b in finite]
    obstacles = list(points)
    image, _ = g.infinity_image()
    if image is not None and not any(abs(complex(float(image)) - p) < 1e-12 for p in points):
        obstacles.append(complex(float(image)))  # the fiber escapes to Z = infinity there
    if not obstacles:
        raise MonodromyError("no finite branch points")

    base = cfg.base_point if cfg.base_point is not None else choose_base_point(obstacles, cfg.grid)
    if cfg.jitter:
        theta = 2 * math.pi * random.Random(cfg.seed).random()
        base = base + cfg.jitter * _clearance(base, obstacles) * cmath.exp(1j * theta)
    order, loops, big = _loops(base, points, obstacles)

    mode = "double"
    try:
        sigmas, around_all, fiber = _run(g, cfg, base, order, loops, big, mode)
    except TrackingError:
        if not cfg.escalate:
            raise
        mode = "mp"
        sigmas, around_all, fiber = _run(g, cfg, base, order, loops, big, mode)

    ordered = [finite[i] for i in order]
    for bp, s in zip(ordered, sigmas):
        if s.cycle_type() != bp.local_type:
            raise MonodromyError(f"tracked permutation {s.cycle_type()} disagrees with local type {bp.local_type}")
    prod = identity(n)
    for s in sigmas:
        prod = prod * s
    if prod != around_all:
        raise MonodromyError("internal consistency failure: loop product differs from the enclosing loop")
    sigma_inf = around_all.inverse()
    if at_inf:
        if sigma_inf.cycle_type() != at_inf[0].local_type:
            raise MonodromyError("permutation at infinity disagrees with the fiber over infinity")
        ordered.append(at_inf[0])
        sigmas.append(sigma_inf)
    elif sigma_inf != identity(n):
        raise MonodromyError("nontrivial monodromy at an unramified infinity")
    return BranchCycleDescription(g, base, ordered, sigmas, fiber, mode)
