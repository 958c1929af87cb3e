"""Permutation groups backed by a deterministic Schreier-Sims stabilizer chain."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .perm import (
    Permutation,
    PermutationError,
    inverse_tuple,
    mul_tuple,
)


class GroupError(ValueError):
    pass


class IntransitiveError(GroupError):
    pass


@dataclass
class StabChain:
    """Base, strong generators and transversals.

    ``levels[i]`` holds the generators of the stabilizer of ``base[:i]``;
    ``transversals[i][p]`` is an element ``u`` with ``base[i]^u == p``.
    """

    degree: int
    base: list[int] = field(default_factory=list)
    levels: list[list[tuple]] = field(default_factory=list)
    transversals: list[dict[int, tuple]] = field(default_factory=list)

    @classmethod
    def build(
        cls,
        gens: Iterable[tuple],
        degree: int,
        base_order: Sequence[int] | None = None,
    ) -> "StabChain":
        order = list(base_order) if base_order is not None else list(range(degree))
        if sorted(order) != list(range(degree)):
            seen = set(order)
            order = order + [p for p in range(degree) if p not in seen]
        chain = cls(degree)
        chain._order = order
        ident = tuple(range(degree))
        gens = [g for g in dict.fromkeys(tuple(g) for g in gens) if g != ident]
        # the first base point is the earliest point moved by the group
        moved = [p for p in order if any(g[p] != p for g in gens)]
        if moved:
            chain.base.append(moved[0])
        for g in gens:
            if all(g[b] == b for b in chain.base):
                chain._extend_base(g)
        if not chain.base:
            return chain
        chain.levels = [[] for _ in chain.base]
        for g in gens:
            for i, b in enumerate(chain.base):
                chain.levels[i].append(g)
                if g[b] != b:
                    break
        chain.transversals = [chain._orbit_transversal(i) for i in range(len(chain.base))]
        chain._schreier_sims()
        del chain._order
        return chain

    def _extend_base(self, g: tuple) -> None:
        for p in self._order:
            if g[p] != p:
                self.base.append(p)
                return
        raise AssertionError("identity passed to base extension")

    def _orbit_transversal(self, i: int) -> dict[int, tuple]:
        b = self.base[i]
        ident = tuple(range(self.degree))
        trans = {b: ident}
        queue = [b]
        gens = self.levels[i]
        for p in queue:
            u = trans[p]
            for s in gens:
                q = s[p]
                if q not in trans:
                    trans[q] = mul_tuple(u, s)
                    queue.append(q)
        return trans

    def strip(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        for i in range(start, len(self.base)):
            beta = g[self.base[i]]
            u = self.transversals[i].get(beta)
            if u is None:
                return g, i
            g = mul_tuple(g, inverse_tuple(u))
        return g, len(self.base)

    def _schreier_sims(self) -> None:
        ident = tuple(range(self.degree))
        i = len(self.base) - 1
        while i >= 0:
            restart = False
            trans = self.transversals[i]
            for p, u in list(trans.items()):
                for s in self.levels[i]:
                    us = mul_tuple(u, s)
                    v = trans[s[p]]
                    h = mul_tuple(us, inverse_tuple(v))
                    if h == ident:
                        continue
                    res, j = self.strip(h, i + 1)
                    if res == ident:
                        continue
                    if j == len(self.base):
                        self._extend_base(res)
                        self.levels.append([])
                        self.transversals.append({})
                    for level in range(i + 1, j + 1):
                        self.levels[level].append(res)
                        self.transversals[level] = self._orbit_transversal(level)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1

    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)

    def contains(self, g: tuple) -> bool:
        res, _ = self.strip(tuple(g))
        return res == tuple(range(self.degree))

    def strong_generators(self) -> list[tuple]:
        return list(dict.fromkeys(g for lvl in self.levels for g in lvl))

    def random_element(self, rng: random.Random) -> tuple:
        g = tuple(range(self.degree))
        for trans in reversed(self.transversals):
            u = trans[rng.choice(list(trans))]
            g = mul_tuple(g, u)
        return g

    def fixed_by_level(self, i: int) -> set[int]:
        """Points fixed by every generator of the stabilizer of ``base[:i]``."""
        if i >= len(self.levels):
            return set(range(self.degree))
        gens = self.levels[i]
        return {p for p in range(self.degree) if all(g[p] == p for g in gens)}

    def elements(self) -> np.ndarray:
        """All group elements as rows of an ``(order, degree)`` array."""
        dtype = np.uint8 if self.degree <= 256 else np.uint16
        elems = np.arange(self.degree, dtype=dtype)[None, :]
        for trans in reversed(self.transversals):
            us = np.array(list(trans.values()), dtype=dtype)
            # row e, coset rep u -> u[e]
            elems = us[:, elems].reshape(-1, self.degree)
        return elems


class PermGroup:
    """A permutation group given by generators; the chain is built on demand."""

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None, name: str | None = None):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise GroupError("need a degree or at least one generator")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise GroupError("generators must share the group's degree")
        if not gens:
            gens = [Permutation.identity(degree)]
        self.degree = degree
        self.generators = tuple(gens)
        self.name = name
        self._chain: StabChain | None = None

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} gens={len(self.generators)}>"

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = StabChain.build((g.images for g in self.generators), self.degree)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __contains__(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        return self.chain.contains(g.images)

    def contains(self, g: Permutation) -> bool:
        return g in self

    def random_element(self, rng: random.Random) -> Permutation:
        return Permutation(self.chain.random_element(rng), check=False)

    def orbit(self, point: int) -> list[int]:
        return orbit(point, [g.images for g in self.generators])

    def orbits(self) -> list[list[int]]:
        return orbits([g.images for g in self.generators], self.degree)

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def stabilizer_generators(self, point: int = 0) -> list[tuple]:
        """Generators of the point stabilizer (chain rebuilt with ``point`` first)."""
        chain = self.chain
        if not chain.base or chain.base[0] != point:
            order = [point] + [p for p in range(self.degree) if p != point]
            chain = StabChain.build(chain.strong_generators(), self.degree, order)
        if not chain.base or chain.base[0] != point:
            return list(chain.strong_generators())
        return chain.levels[1] if len(chain.levels) > 1 else []

    def elements(self) -> np.ndarray:
        return self.chain.elements()

    def subgroup(self, gens: Iterable[Permutation], name: str | None = None) -> "PermGroup":
        return PermGroup(gens, self.degree, name=name)


def orbit(point: int, gens: Sequence[tuple]) -> list[int]:
    seen = {point}
    out = [point]
    for p in out:
        for g in gens:
            q = g[p]
            if q not in seen:
                seen.add(q)
                out.append(q)
    return out


def orbits(gens: Sequence[tuple], degree: int) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for p in range(degree):
        if p not in seen:
            orb = orbit(p, gens)
            seen.update(orb)
            out.append(sorted(orb))
    return out


def group_order(G: PermGroup) -> int:
    return G.order()


def naive_closure(gens: Sequence[Permutation], limit: int = 10**6) -> set[tuple]:
    """Breadth-first closure under right multiplication by generators."""
    if not gens:
        raise GroupError("no generators")
    n = gens[0].degree
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    imgs = [g.images for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in imgs:
                y = mul_tuple(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise GroupError(f"closure exceeds {limit} elements")
        frontier = nxt
    return seen


# blocks


@dataclass(frozen=True)
class BlockSystem:
    block_size: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def block_of(self) -> list[int]:
        where = [0] * sum(len(b) for b in self.blocks)
        for idx, b in enumerate(self.blocks):
            for p in b:
                where[p] = idx
        return where

    def is_invariant(self, gens: Iterable[Permutation]) -> bool:
        where = self.block_of()
        for g in gens:
            for b in self.blocks:
                if len({where[g[p]] for p in b}) != 1:
                    return False
        return True

    def action(self, g: Permutation) -> Permutation:
        where = self.block_of()
        return Permutation([where[g[b[0]]] for b in self.blocks])


def _block_closure(gens: Sequence[tuple], degree: int, seed: Iterable[int]) -> list[int]:
    """Finest invariant partition in which the seed points share a cell.

    Returns a representative array (union-find roots flattened).
    """
    parent = list(range(degree))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    seed = list(seed)
    queue = []
    for a in seed[1:]:
        ra, rb = find(seed[0]), find(a)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            queue.append((seed[0], a))
    while queue:
        a, b = queue.pop()
        for g in gens:
            ra, rb = find(g[a]), find(g[b])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
                queue.append((g[a], g[b]))
    return [find(a) for a in range(degree)]


def _partition_from_roots(roots: list[int]) -> BlockSystem:
    cells: dict[int, list[int]] = {}
    for p, r in enumerate(roots):
        cells.setdefault(r, []).append(p)
    blocks = tuple(sorted(tuple(c) for c in cells.values()))
    return BlockSystem(len(blocks[0]), blocks)


def _require_transitive(G: PermGroup) -> None:
    if not G.is_transitive():
        raise IntransitiveError(f"{G!r} is not transitive")


def all_block_systems(G: PermGroup) -> list[BlockSystem]:
    """Every nontrivial block system, sorted by block size then blocks."""
    _require_transitive(G)
    n = G.degree
    gens = [g.images for g in G.generators]
    found: dict[tuple, BlockSystem] = {}
    pending = [[0]]
    seen_seeds: set[frozenset] = set()
    while pending:
        block = pending.pop()
        for i in range(n):
            if i in block:
                continue
            roots = _block_closure(gens, n, block + [i])
            system = _partition_from_roots(roots)
            cell = frozenset(system.blocks[0])
            if cell in seen_seeds:
                continue
            seen_seeds.add(cell)
            if system.block_size < n:
                found[system.blocks] = system
                pending.append(list(system.blocks[0]))
    return sorted(found.values(), key=lambda s: (s.block_size, s.blocks))


def block_systems(G: PermGroup) -> list[BlockSystem]:
    """Minimal nontrivial block systems; empty iff ``G`` is primitive."""
    _require_transitive(G)
    n = G.degree
    gens = [g.images for g in G.generators]
    systems: dict[tuple, BlockSystem] = {}
    for i in range(1, n):
        system = _partition_from_roots(_block_closure(gens, n, [0, i]))
        if system.block_size < n:
            systems[system.blocks] = system
    cells = {s.blocks: set(s.blocks[0]) for s in systems.values()}
    minimal = [
        s
        for s in systems.values()
        if not any(other < cells[s.blocks] for other in cells.values())
    ]
    return sorted(minimal, key=lambda s: (s.block_size, s.blocks))


def is_primitive(G: PermGroup) -> bool:
    return not block_systems(G)


def rank_and_subdegrees(G: PermGroup) -> tuple[int, tuple[int, ...]]:
    _require_transitive(G)
    stab = G.stabilizer_generators(0)
    orbs = orbits(stab, G.degree) if stab else [[p] for p in range(G.degree)]
    sizes = tuple(sorted(len(o) for o in orbs))
    return len(orbs), sizes


# generator files


def read_generator_file(path: str | Path) -> tuple[int, list[Permutation], dict[str, str]]:
    """Parse ``degree <n>`` followed by one 1-based cycle-notation permutation per line.

    Comment lines of the form ``# key: value`` are returned as metadata.
    """
    degree = None
    perms: list[Permutation] = []
    meta: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, value = body.split(":", 1)
                meta[key.strip()] = value.strip()
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree" or not parts[1].isdigit():
                raise GroupError(f"{path}:{lineno}: expected 'degree <n>'")
            degree = int(parts[1])
            if degree < 1:
                raise GroupError(f"{path}:{lineno}: degree must be positive")
            continue
        try:
            perms.append(Permutation.parse(line, degree))
        except PermutationError as exc:
            raise GroupError(f"{path}:{lineno}: {exc}") from exc
    if degree is None:
        raise GroupError(f"{path}: missing 'degree' line")
    return degree, perms, meta


def write_generator_file(path: str | Path, G: PermGroup, meta: dict[str, str] | None = None) -> None:
    lines = [f"# {k}: {v}" for k, v in (meta or {}).items()]
    lines.append(f"degree {G.degree}")
    lines.extend(g.to_cycles() for g in G.generators)
    Path(path).write_text("\n".join(lines) + "\n")
