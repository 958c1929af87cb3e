"""Conjugacy classes, centralizers and conjugacy tests.

Two strategies: full enumeration with numpy (orbit components of the
conjugation graph), and random discovery for large groups where class sizes
come from centralizer orders found by backtrack search.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .group import GroupError, PermGroup, StabChain, orbit
from .perm import CycleType, Permutation, cycles_of, inverse_tuple, mul_tuple, power_tuple

DEFAULT_CEILING = 10**7
# above this size "auto" switches to random discovery
EXHAUSTIVE_AUTO_LIMIT = 5 * 10**5
MAX_RANDOM_SAMPLES = 200_000


class TooLargeError(GroupError):
    pass


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    size: int
    centralizer_order: int

    @property
    def cycle_type(self) -> CycleType:
        return self.representative.cycle_type()

    @property
    def element_order(self) -> int:
        return self.representative.order()

    @property
    def label(self) -> str:
        return self.cycle_type.label


def _sort_key(images: tuple) -> tuple:
    return (CycleType.of(len(c) for c in cycles_of(images)).lengths, images)


# backtrack search


def _adapted_base(y: tuple) -> list[int]:
    cyc = sorted(cycles_of(y), key=lambda c: (-len(c), c[0]))
    return [p for c in cyc for p in c]


class _CycleData:
    """Position of each point inside its cycle."""

    def __init__(self, x: tuple):
        self.cycles = cycles_of(x)
        n = len(x)
        self.cid = [0] * n
        self.pos = [0] * n
        for ci, c in enumerate(self.cycles):
            for j, p in enumerate(c):
                self.cid[p] = ci
                self.pos[p] = j
        self.length = [len(self.cycles[self.cid[p]]) for p in range(n)]

    def step(self, p: int, j: int) -> int:
        c = self.cycles[self.cid[p]]
        return c[(self.pos[p] + j) % len(c)]


class _Backtrack:
    """Search for g in G with g[y[p]] == x[g[p]] for all p, i.e. y^g == x."""

    def __init__(self, G: PermGroup, y: tuple):
        self.n = G.degree
        self.y = y
        self.chain = StabChain.build(G.chain.strong_generators(), self.n, _adapted_base(y))
        ch = self.chain
        self.k = len(ch.base)
        self.fixed = [ch.fixed_by_level(i) for i in range(self.k + 1)]
        self.ydata = _CycleData(y)
        self.trans = [sorted(t.items()) for t in ch.transversals]
        # constraints that become checkable once level i is reached
        self.checks: list[list[int]] = []
        prev: set[int] = set()
        for i in range(self.k + 1):
            F = self.fixed[i]
            new = F - prev
            self.checks.append(sorted(p for p in F if y[p] in F and (p in new or y[p] in new)))
            prev = F
        # at level i, can the image of base[i] be read off a known point?
        self.forced: list[tuple[int, int] | None] = []
        for i, b in enumerate(ch.base):
            F = self.fixed[i]
            hit = None
            for j in range(1, self.ydata.length[b]):
                p = self.ydata.step(b, -j)
                if p in F:
                    hit = (p, j)
                    break
            self.forced.append(hit)

    def _ok(self, level: int, h: tuple, x: tuple) -> bool:
        y = self.y
        for p in self.checks[level]:
            if h[y[p]] != x[h[p]]:
                return False
        return True

    def search(self, x: tuple, level: int = 0, h: tuple | None = None) -> tuple | None:
        if h is None:
            h = tuple(range(self.n))
        xdata = _CycleData(x)
        return self._dfs(x, xdata, level, h)

    def _dfs(self, x: tuple, xdata: _CycleData, level: int, h: tuple) -> tuple | None:
        if not self._ok(level, h, x):
            return None
        if level == self.k:
            return h
        b = self.chain.base[level]
        trans = self.chain.transversals[level]
        want = self.ydata.length[b]
        forced = self.forced[level]
        if forced is not None:
            p, j = forced
            target = xdata.step(h[p], j)
            delta = inverse_tuple(h)[target]
            u = trans.get(delta)
            if u is None:
                return None
            return self._dfs(x, xdata, level + 1, mul_tuple(u, h))
        for delta, u in self.trans[level]:
            if xdata.length[h[delta]] != want:
                continue
            found = self._dfs(x, xdata, level + 1, mul_tuple(u, h))
            if found is not None:
                return found
        return None

    def centralizer(self) -> tuple[int, list[tuple]]:
        """Order and generators of the centralizer of ``y``."""
        y = self.y
        ident = tuple(range(self.n))
        gens: list[tuple] = []
        order = 1
        for i in range(self.k - 1, -1, -1):
            b = self.chain.base[i]
            lower = list(gens)
            orb = set(orbit(b, gens))
            dead: set[int] = set()
            for delta, u in self.trans[i]:
                if delta in orb or delta in dead:
                    continue
                found = None
                if self.ydata.length[delta] == self.ydata.length[b]:
                    found = self._dfs(y, self.ydata, i + 1, mul_tuple(u, ident))
                if found is None:
                    dead.update(orbit(delta, lower))
                else:
                    gens.append(found)
                    orb = set(orbit(b, gens))
            order *= len(orb)
        return order, gens


def centralizer(G: PermGroup, x: Permutation) -> tuple[int, list[Permutation]]:
    order, gens = _Backtrack(G, x.images).centralizer()
    return order, [Permutation(g, check=False) for g in gens]


def conjugating_element(G: PermGroup, y: Permutation, x: Permutation) -> Permutation | None:
    """Some g in G with ``y.conjugate(g) == x``, or None."""
    if y.cycle_type() != x.cycle_type():
        return None
    found = _Backtrack(G, y.images).search(x.images)
    return None if found is None else Permutation(found, check=False)


# class tables


@dataclass
class ClassTable:
    """Classes of a group plus an element-to-class lookup."""

    group: PermGroup
    classes: list[ConjugacyClass]
    method: str
    _sorted: np.ndarray | None = field(default=None, repr=False)
    _labels: np.ndarray | None = field(default=None, repr=False)
    _searchers: dict[int, _Backtrack] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[ConjugacyClass]:
        return iter(self.classes)

    def __getitem__(self, i: int) -> ConjugacyClass:
        return self.classes[i]

    def _searcher(self, i: int) -> _Backtrack:
        if i not in self._searchers:
            self._searchers[i] = _Backtrack(self.group, self.classes[i].representative.images)
        return self._searchers[i]

    def class_of(self, g: Permutation | tuple) -> int:
        images = g.images if isinstance(g, Permutation) else tuple(g)
        if self._sorted is not None:
            return int(self._labels[_locate(self._sorted, np.array([images]))[0]])
        ctype = CycleType.of(len(c) for c in cycles_of(images))
        for i, cl in enumerate(self.classes):
            if cl.cycle_type == ctype and self._searcher(i).search(images) is not None:
                return i
        raise GroupError("element is not in the group")

    def members(self, i: int) -> np.ndarray:
        """All elements of class ``i`` as rows (available after enumeration)."""
        if self._sorted is None:
            return _class_by_orbit(self.group, self.classes[i])
        return self._sorted[self._labels == i]

    def select(self, ctype: CycleType | str) -> list[int]:
        if isinstance(ctype, str):
            ctype = CycleType.parse(ctype)
        return [i for i, c in enumerate(self.classes) if c.cycle_type == ctype]

    def is_rational(self, i: int) -> bool:
        """True when the class contains every generator of its cyclic subgroups."""
        x = self.classes[i].representative
        o = x.order()
        return all(self.class_of(x**e) == i for e in range(2, o) if math.gcd(e, o) == 1)


def _as_void(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    return a.view(np.dtype((np.void, a.dtype.itemsize * a.shape[1]))).ravel()


def _locate(sorted_rows: np.ndarray, rows: np.ndarray) -> np.ndarray:
    keys = _as_void(sorted_rows)
    q = _as_void(rows.astype(sorted_rows.dtype))
    idx = np.searchsorted(keys, q)
    if np.any(idx >= len(keys)) or np.any(keys[np.minimum(idx, len(keys) - 1)] != q):
        raise GroupError("element is not in the group")
    return idx


def _class_by_orbit(G: PermGroup, cl: ConjugacyClass, limit: int = 2_000_000) -> np.ndarray:
    if cl.size > limit:
        raise TooLargeError(f"class of size {cl.size} exceeds member limit {limit}")
    rep = cl.representative.images
    seen = {rep}
    queue = [rep]
    gens = [g.images for g in G.generators]
    for x in queue:
        for g in gens:
            out = [0] * len(x)
            for i, xi in enumerate(x):
                out[g[i]] = g[xi]
            t = tuple(out)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    arr = np.array(sorted(seen), dtype=np.uint16 if G.degree > 256 else np.uint8)
    return arr


def _exhaustive(G: PermGroup) -> ClassTable:
    E = G.elements()
    E = E[np.lexsort(E.T[::-1])]
    N = len(E)
    rows, cols = [], []
    for s in G.generators:
        sa = np.array(s.images, dtype=np.intp)
        sinv = np.array(inverse_tuple(s.images), dtype=np.intp)
        conj = sa[E[:, sinv]].astype(E.dtype)
        rows.append(np.arange(N))
        cols.append(_locate(E, conj))
    graph = coo_matrix(
        (np.ones(sum(len(r) for r in rows), dtype=np.int8), (np.concatenate(rows), np.concatenate(cols))),
        shape=(N, N),
    )
    ncomp, comp = connected_components(graph, directed=True, connection="weak")
    sizes = np.bincount(comp, minlength=ncomp)
    first = np.full(ncomp, N, dtype=np.int64)
    np.minimum.at(first, comp, np.arange(N))
    order = G.order()
    raw = []
    for c in range(ncomp):
        rep = tuple(int(v) for v in E[first[c]])
        raw.append((_sort_key(rep), c, rep))
    raw.sort()
    relabel = np.empty(ncomp, dtype=np.int32)
    classes = []
    for new, (_, c, rep) in enumerate(raw):
        relabel[c] = new
        size = int(sizes[c])
        classes.append(ConjugacyClass(Permutation(rep, check=False), size, order // size))
    return ClassTable(G, classes, "exhaustive", E, relabel[comp])


def _random_discovery(G: PermGroup, seed: int, max_samples: int) -> ClassTable:
    rng = random.Random(seed)
    order = G.order()
    n = G.degree
    found: list[tuple[tuple, int]] = []  # (rep, centralizer order)
    searchers: list[_Backtrack] = []
    by_type: dict[CycleType, list[int]] = {}
    total = 0

    def known(x: tuple) -> bool:
        ctype = CycleType.of(len(c) for c in cycles_of(x))
        for i in by_type.get(ctype, []):
            if searchers[i].search(x) is not None:
                return True
        return False

    def add(x: tuple) -> None:
        nonlocal total
        if known(x):
            return
        bt = _Backtrack(G, x)
        corder, _ = bt.centralizer()
        found.append((x, corder))
        searchers.append(bt)
        by_type.setdefault(CycleType.of(len(c) for c in cycles_of(x)), []).append(len(found) - 1)
        total += order // corder

    add(tuple(range(n)))
    samples = 0
    while total < order:
        if samples >= max_samples:
            raise GroupError(
                f"random class discovery stalled after {samples} samples "
                f"({total} of {order} elements accounted for)"
            )
        samples += 1
        x = G.chain.random_element(rng)
        o = math.lcm(*(len(c) for c in cycles_of(x)))
        for d in sorted(d for d in range(1, o + 1) if o % d == 0):
            add(power_tuple(x, d))
    if total != order:
        raise GroupError(f"class sizes sum to {total}, expected {order}")
    ordered = sorted(range(len(found)), key=lambda i: _sort_key(found[i][0]))
    classes = [
        ConjugacyClass(Permutation(found[i][0], check=False), order // found[i][1], found[i][1])
        for i in ordered
    ]
    table = ClassTable(G, classes, "random")
    table._searchers = {new: searchers[old] for new, old in enumerate(ordered)}
    return table


def class_table(
    G: PermGroup,
    method: str = "auto",
    ceiling: int = DEFAULT_CEILING,
    seed: int = 0,
    max_samples: int = MAX_RANDOM_SAMPLES,
) -> ClassTable:
    """Deterministic class table, cached on the group per (method, seed)."""
    cache = G.__dict__.setdefault("_class_tables", {})
    key = (method, seed)
    if key in cache:
        return cache[key]
    order = G.order()
    if method == "auto":
        method = "exhaustive" if order <= EXHAUSTIVE_AUTO_LIMIT else "random"
    if method == "exhaustive":
        if order > ceiling:
            raise TooLargeError(f"group order {order} exceeds the enumeration ceiling {ceiling}")
        table = _exhaustive(G)
    elif method == "random":
        table = _random_discovery(G, seed, max_samples)
    else:
        raise ValueError(f"unknown method {method!r}")
    cache[key] = table
    return table


def conjugacy_classes(G: PermGroup, ceiling: int = DEFAULT_CEILING, method: str = "auto", seed: int = 0) -> list[tuple[Permutation, int]]:
    """(representative, size) pairs in canonical order."""
    return [(c.representative, c.size) for c in class_table(G, method, ceiling, seed)]
