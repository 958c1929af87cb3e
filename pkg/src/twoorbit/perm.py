"""Permutations on {0, ..., n-1} stored as image tuples.

Composition follows the exponential convention: ``a * b`` maps ``i`` to
``b[a[i]]``, i.e. apply ``a`` first.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class PermutationError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CycleType:
    """Multiset of cycle lengths, kept sorted ascending."""

    lengths: tuple[int, ...]

    @classmethod
    def of(cls, lengths: Iterable[int]) -> "CycleType":
        return cls(tuple(sorted(lengths)))

    @property
    def degree(self) -> int:
        return sum(self.lengths)

    @property
    def label(self) -> str:
        """Dash-joined lengths, e.g. ``'6-6'`` or ``'1-2-3-6'``."""
        return "-".join(map(str, self.lengths))

    @classmethod
    def parse(cls, label: str) -> "CycleType":
        try:
            parts = [int(x) for x in label.strip().split("-")]
        except ValueError as exc:
            raise PermutationError(f"bad cycle type label {label!r}") from exc
        if not parts or min(parts) < 1:
            raise PermutationError(f"bad cycle type label {label!r}")
        return cls.of(parts)

    def __len__(self) -> int:
        return len(self.lengths)

    def __str__(self) -> str:
        return self.label


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int], check: bool = True):
        images = tuple(images)
        if check:
            n = len(images)
            if n == 0:
                raise PermutationError("degree must be positive")
            if sorted(images) != list(range(n)):
                raise PermutationError("images do not form a bijection of 0..n-1")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build from 0-based disjoint cycles."""
        img = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < degree:
                    raise PermutationError(f"point {a} outside 0..{degree - 1}")
                if a in seen:
                    raise PermutationError(f"point {a} appears twice")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(img, check=False)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Parse 1-based disjoint cycle notation such as ``(1,2,3)(4,5)``."""
        text = text.strip()
        if text in ("", "()"):
            return cls.identity(degree)
        if not re.fullmatch(r"(\(\s*\d+(\s*,\s*\d+)*\s*\)\s*)+", text):
            raise PermutationError(f"cannot parse cycle notation {text!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            cycles.append([int(x) - 1 for x in body.split(",")])
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __getitem__(self, i: int) -> int:
        return self.images[i]

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self):
        return iter(self.images)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Permutation):
            return self.images == other.images
        return NotImplemented

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        return Permutation(inverse_tuple(self.images), check=False)

    __invert__ = inverse

    def __pow__(self, k: int) -> "Permutation":
        return Permutation(power_tuple(self.images, k), check=False)

    def conjugate(self, g: "Permutation") -> "Permutation":
        """``g^-1 * self * g``."""
        return Permutation(conjugate_tuple(self.images, g.images), check=False)

    def is_identity(self) -> bool:
        return all(i == a for i, a in enumerate(self.images))

    def cycles(self, include_fixed: bool = True) -> list[tuple[int, ...]]:
        return cycles_of(self.images, include_fixed)

    def cycle_type(self) -> CycleType:
        return CycleType.of(len(c) for c in self.cycles())

    def num_cycles(self) -> int:
        return num_cycles(self.images)

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()))

    def fixed_points(self) -> int:
        return sum(1 for i, a in enumerate(self.images) if i == a)

    def to_cycles(self, one_based: bool = True) -> str:
        off = 1 if one_based else 0
        parts = [
            "(" + ",".join(str(a + off) for a in c) + ")"
            for c in self.cycles(include_fixed=False)
        ]
        return "".join(parts) or "()"

    def __repr__(self) -> str:
        return f"Permutation({self.to_cycles()}, degree={self.degree})"

    def __str__(self) -> str:
        return self.to_cycles()


# tuple-level helpers used by the hot loops


def mul_tuple(a: tuple, b: tuple) -> tuple:
    return tuple([b[x] for x in a])


def inverse_tuple(a: tuple) -> tuple:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def conjugate_tuple(x: tuple, g: tuple) -> tuple:
    # (i^g)^(g^-1 x g) = (i^x)^g
    out = [0] * len(x)
    for i, xi in enumerate(x):
        out[g[i]] = g[xi]
    return tuple(out)


def power_tuple(a: tuple, k: int) -> tuple:
    n = len(a)
    if k < 0:
        a = inverse_tuple(a)
        k = -k
    result = list(range(n))
    # walk each cycle once
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        cyc = [s]
        seen[s] = True
        j = a[s]
        while j != s:
            seen[j] = True
            cyc.append(j)
            j = a[j]
        m = len(cyc)
        for idx, p in enumerate(cyc):
            result[p] = cyc[(idx + k) % m]
    return tuple(result)


def cycles_of(a: Sequence[int], include_fixed: bool = True) -> list[tuple[int, ...]]:
    n = len(a)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        cyc = [s]
        seen[s] = True
        j = a[s]
        while j != s:
            seen[j] = True
            cyc.append(j)
            j = a[j]
        if include_fixed or len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def num_cycles(a: Sequence[int]) -> int:
    n = len(a)
    seen = [False] * n
    count = 0
    for s in range(n):
        if seen[s]:
            continue
        count += 1
        j = s
        while not seen[j]:
            seen[j] = True
            j = a[j]
    return count


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply ``a`` then ``b``."""
    if a.degree != b.degree:
        raise PermutationError(f"degree mismatch: {a.degree} vs {b.degree}")
    return Permutation(mul_tuple(a.images, b.images), check=False)


def inverse(a: Permutation) -> Permutation:
    return a.inverse()


def index_of(s: Permutation) -> int:
    """Degree minus the number of cycles (fixed points count as cycles)."""
    return s.degree - s.num_cycles()


def _totient(m: int) -> int:
    result = m
    p = 2
    k = m
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


def index_via_fixed_points(s: Permutation) -> int:
    """Index obtained from fixed-point counts of the powers of ``s``.

    The number of cycles of ``s`` is the number of orbits of ``<s>``, which
    Burnside counts as ``(1/o) * sum_k chi(s^k) * phi(o/k)`` over divisors
    ``k`` of the order ``o``.
    """
    o = s.order()
    total = 0
    for k in range(1, o + 1):
        if o % k == 0:
            total += (s ** k).fixed_points() * _totient(o // k)
    cycles, rem = divmod(total, o)
    assert rem == 0
    return s.degree - cycles
