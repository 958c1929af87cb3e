"""Riemann-Hurwitz genus of generating tuples and anchored genus-0 searches."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .classes import ClassTable, centralizer, class_table
from .group import BlockSystem, GroupError, PermGroup, StabChain, all_block_systems, orbit
from .perm import CycleType, Permutation, conjugate_tuple, index_of, inverse_tuple, mul_tuple


class GenusError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TupleType:
    """Unordered multiset of element orders, stored ascending."""

    orders: tuple[int, ...]

    @classmethod
    def of(cls, orders) -> "TupleType":
        orders = tuple(sorted(int(o) for o in orders))
        if any(o < 2 for o in orders):
            raise GenusError("tuple types only contain orders >= 2")
        return cls(orders)

    @classmethod
    def parse(cls, text: str) -> "TupleType":
        try:
            return cls.of(int(x) for x in text.replace("(", "").replace(")", "").split(","))
        except ValueError as exc:
            raise GenusError(f"bad tuple type {text!r}") from exc

    @property
    def label(self) -> str:
        return "(" + ",".join(map(str, self.orders)) + ")"

    def __len__(self) -> int:
        return len(self.orders)


def _product(elements) -> tuple:
    it = iter(elements)
    acc = next(it).images
    for g in it:
        acc = mul_tuple(acc, g.images)
    return acc


def genus_of_tuple(degree: int, elements) -> int:
    """Genus from 2(n - 1 + g) = sum of indices, for a transitive tuple with product 1."""
    elements = list(elements)
    if not elements:
        raise GenusError("empty tuple")
    n = elements[0].degree
    if n != degree or any(e.degree != n for e in elements):
        raise GenusError("degree mismatch")
    if _product(elements) != tuple(range(n)):
        raise GenusError("product of the tuple is not the identity")
    if len(orbit(0, [e.images for e in elements])) != n:
        raise GenusError("the tuple generates an intransitive group")
    total = sum(index_of(e) for e in elements)
    twice, rem = divmod(total, 2)
    g = twice - (n - 1)
    if rem or g < 0:
        raise GenusError(f"index sum {total} gives genus {total / 2 - (n - 1)}")
    return g


@dataclass
class GenusSystem:
    elements: tuple[Permutation, ...]
    genus: int
    generated_order: int
    class_ids: tuple[int, ...] = ()

    @property
    def degree(self) -> int:
        return self.elements[0].degree

    @property
    def type(self) -> TupleType:
        return TupleType.of(e.order() for e in self.elements)

    def group(self) -> PermGroup:
        return PermGroup(self.elements)

    def to_dict(self) -> dict:
        return {
            "type": self.type.label,
            "genus": self.genus,
            "generated_order": self.generated_order,
            "elements": [e.to_cycles() for e in self.elements],
        }


def make_system(elements, class_ids=()) -> GenusSystem:
    elements = tuple(elements)
    n = elements[0].degree
    g = genus_of_tuple(n, elements)
    order = StabChain.build((e.images for e in elements), n).order()
    return GenusSystem(elements, g, order, tuple(class_ids))


def reorder_classes(system: GenusSystem, i: int) -> GenusSystem:
    """Swap positions i, i+1 (1-based): (s_i, s_i+1) -> (s_i+1, s_i^s_i+1)."""
    r = len(system.elements)
    if not 1 <= i < r:
        raise GenusError(f"position {i} out of range 1..{r - 1}")
    els = list(system.elements)
    a, b = els[i - 1], els[i]
    els[i - 1], els[i] = b, a.conjugate(b)
    ids = list(system.class_ids)
    if ids:
        ids[i - 1], ids[i] = ids[i], ids[i - 1]
    return GenusSystem(tuple(els), system.genus, system.generated_order, tuple(ids))


def rotate(system: GenusSystem, steps: int = 1) -> GenusSystem:
    """Cyclic shift; the product becomes a conjugate of 1, so stays 1."""
    k = steps % len(system.elements)
    els = system.elements[k:] + system.elements[:k]
    ids = system.class_ids[k:] + system.class_ids[:k] if system.class_ids else ()
    return GenusSystem(els, system.genus, system.generated_order, ids)


def gcd_block_check(system: GenusSystem, d: int, positions: tuple[int, int] = (0, 1)) -> BlockSystem:
    """Block system with d blocks permuted cyclically, given the divisibility hypothesis."""
    if d <= 1:
        raise GenusError("d must exceed 1")
    for pos in positions:
        if any(length % d for length in system.elements[pos].cycle_type().lengths):
            raise GenusError(f"cycle lengths at position {pos} are not all divisible by {d}")
    G = system.group()
    for bs in all_block_systems(G):
        if bs.num_blocks != d:
            continue
        H = PermGroup([bs.action(g) for g in G.generators], d)
        if H.order() == d and H.is_transitive() and _is_cyclic(H):
            return bs
    raise GenusError(f"no block system of {d} cyclically permuted blocks: the divisibility criterion is violated")


def _is_cyclic(H: PermGroup) -> bool:
    order = H.order()
    E = H.elements()
    for row in E:
        if Permutation(row.tolist(), check=False).order() == order:
            return True
    return False


# anchored search


@dataclass
class TypeResult:
    type: TupleType
    classes: tuple[int, ...]  # class ids of non-anchor positions, then the anchor
    generated_order: int
    count: int  # tuples with the anchor fixed to its representative, up to its centralizer
    witness: GenusSystem

    def to_dict(self) -> dict:
        return {
            "type": self.type.label,
            "classes": list(self.classes),
            "generated_order": self.generated_order,
            "count": self.count,
            "witness": [e.to_cycles() for e in self.witness.elements],
        }


@dataclass
class Genus0Enumeration:
    group_order: int
    anchor: int
    anchor_label: str
    budget: int
    results: list[TypeResult] = field(default_factory=list)
    truncated: bool = False

    def types_for_order(self, order: int) -> set[TupleType]:
        return {r.type for r in self.results if r.generated_order == order}

    def full_types(self) -> set[TupleType]:
        return self.types_for_order(self.group_order)

    def orders(self) -> list[int]:
        return sorted({r.generated_order for r in self.results})


class _Searcher:
    def __init__(self, G: PermGroup, table: ClassTable, anchor: int):
        self.G = G
        self.n = G.degree
        self.table = table
        self.anchor = anchor
        self.x = table[anchor].representative.images
        corder, cgens = centralizer(G, table[anchor].representative)
        self.cent = [g.images for g in cgens]
        self.cent_elements = self._cent_elements(cgens)
        self._members: dict[int, list[tuple]] = {}
        self._reps: dict[int, list[tuple[tuple, list[tuple]]]] = {}
        self._order_cache: dict[frozenset, int] = {}

    def _cent_elements(self, cgens) -> list[tuple]:
        if not cgens:
            return [tuple(range(self.n))]
        ch = StabChain.build((g.images for g in cgens), self.n)
        return [tuple(int(v) for v in row) for row in ch.elements()]

    def members(self, c: int) -> list[tuple]:
        if c not in self._members:
            self._members[c] = [tuple(int(v) for v in row) for row in self.table.members(c)]
        return self._members[c]

    def reps(self, c: int) -> list[tuple[tuple, list[tuple]]]:
        """Orbit representatives of the centralizer on class c, with stabilizers."""
        if c not in self._reps:
            seen: set[tuple] = set()
            out = []
            for y in self.members(c):
                if y in seen:
                    continue
                orb = {conjugate_tuple(y, h) for h in self.cent_elements}
                seen |= orb
                stab = [h for h in self.cent_elements if conjugate_tuple(y, h) == y]
                out.append((y, stab, len(orb)))
            self._reps[c] = out
        return self._reps[c]

    def generated_order(self, elems: list[tuple]) -> int | None:
        """Order of the generated group, or None when intransitive."""
        if len(orbit(0, elems)) != self.n:
            return None
        key = frozenset(elems)
        if key not in self._order_cache:
            self._order_cache[key] = StabChain.build(elems, self.n).order()
        return self._order_cache[key]

    def systems(self, classes: tuple[int, ...], limit: int | None = None, want_order: int | None = None):
        """Yield (tuple of non-anchor elements, generated order, stabilizer weight).

        Position 0 runs over centralizer-orbit representatives; the last
        position is forced by the product relation.
        """
        x = self.x
        xinv = inverse_tuple(x)
        last = classes[-1]
        found = 0
        for rep, stab, _ in self.reps(classes[0]):
            middle_classes = classes[1:-1]
            pools = [self.members(c) for c in middle_classes]
            for middle in itertools.product(*pools):
                acc = rep
                for m in middle:
                    acc = mul_tuple(acc, m)
                # acc * s_last * x = 1  ->  s_last = acc^-1 x^-1
                s_last = mul_tuple(inverse_tuple(acc), xinv)
                if self.table.class_of(s_last) != last:
                    continue
                elems = [rep, *middle, s_last]
                order = self.generated_order(elems + [x])
                if order is None or (want_order is not None and order != want_order):
                    continue
                yield elems, order, stab
                found += 1
                if limit is not None and found >= limit:
                    return


def _canonical(elems: list[tuple], stab: list[tuple]) -> tuple:
    return min(tuple(conjugate_tuple(e, h) for e in elems) for h in stab)


def _index_of_class(table: ClassTable, c: int) -> int:
    rep = table[c].representative
    return index_of(rep)


def _class_multisets(indices: dict[int, int], budget: int, max_len: int):
    """Multisets of class ids (non-decreasing) whose indices sum to the budget."""
    ids = sorted(indices)

    def rec(start: int, remaining: int, chosen: list[int]):
        if remaining == 0 and len(chosen) >= 2:
            yield tuple(chosen)
            return
        if len(chosen) >= max_len:
            return
        for j in range(start, len(ids)):
            c = ids[j]
            if indices[c] <= remaining:
                chosen.append(c)
                yield from rec(j, remaining - indices[c], chosen)
                chosen.pop()

    yield from rec(0, budget, [])


def resolve_anchor(table: ClassTable, anchor: int | str | CycleType) -> int:
    if isinstance(anchor, int):
        return anchor
    hits = table.select(anchor)
    if not hits:
        raise GenusError(f"no class with cycle type {anchor}")
    if len(hits) > 1:
        raise GenusError(f"cycle type {anchor} matches {len(hits)} classes; pass a class index")
    return hits[0]


def enumerate_genus0_types(
    G: PermGroup,
    anchor: int | str | CycleType,
    seed: int = 0,
    rational_only: bool = False,
    max_branch_points: int | None = None,
    table: ClassTable | None = None,
) -> Genus0Enumeration:
    """All class multisets admitting a genus-0 system that contains the anchor.

    Results are split by the order of the subgroup the system generates.
    """
    table = table or class_table(G, seed=seed)
    a = resolve_anchor(table, anchor)
    n = G.degree
    budget = 2 * (n - 1) - _index_of_class(table, a)
    out = Genus0Enumeration(G.order(), a, table[a].label, budget)
    if budget < 0:
        return out
    if rational_only and not table.is_rational(a):
        return out
    indices = {}
    for c in range(len(table)):
        ind = _index_of_class(table, c)
        if ind == 0:
            continue
        if rational_only and not table.is_rational(c):
            continue
        indices[c] = ind
    max_len = (max_branch_points - 1) if max_branch_points else budget
    searcher = _Searcher(G, table, a)
    anchor_order = table[a].element_order
    for multiset in _class_multisets(indices, budget, max_len):
        # put the largest class first: it is reduced by the centralizer
        classes = tuple(sorted(multiset, key=lambda c: -table[c].size))
        per_order: dict[int, list] = {}
        for elems, order, stab in searcher.systems(classes):
            slot = per_order.setdefault(order, [0, set(), None])
            slot[1].add(_canonical(elems, stab))
            if slot[2] is None:
                slot[2] = elems
        for order in sorted(per_order):
            _, canon, elems = per_order[order]
            perms = [Permutation(e, check=False) for e in elems] + [Permutation(searcher.x, check=False)]
            witness = GenusSystem(tuple(perms), 0, order, classes + (a,))
            t = TupleType.of([table[c].element_order for c in classes] + [anchor_order])
            out.results.append(TypeResult(t, classes + (a,), order, len(canon), witness))
    out.results.sort(key=lambda r: (r.generated_order, r.type, r.classes))
    return out


def search_genus0_systems(
    G: PermGroup,
    tuple_type: TupleType | str,
    anchor: int | str | CycleType,
    limit: int | None = 1,
    seed: int = 0,
    full_group: bool = True,
) -> list[GenusSystem]:
    """Witness genus-0 systems of the given type containing the anchor representative."""
    if isinstance(tuple_type, str):
        tuple_type = TupleType.parse(tuple_type)
    table = class_table(G, seed=seed)
    a = resolve_anchor(table, anchor)
    n = G.degree
    budget = 2 * (n - 1) - _index_of_class(table, a)
    rest = list(tuple_type.orders)
    anchor_order = table[a].element_order
    if anchor_order not in rest:
        return []
    rest.remove(anchor_order)
    if len(rest) < 2:
        return []
    by_order: dict[int, list[int]] = {}
    for c in range(len(table)):
        if _index_of_class(table, c) > 0:
            by_order.setdefault(table[c].element_order, []).append(c)
    searcher = _Searcher(G, table, a)
    want = G.order() if full_group else None
    out: list[GenusSystem] = []
    seen: set[tuple] = set()
    for combo in itertools.product(*(by_order.get(o, []) for o in sorted(rest))):
        multiset = tuple(sorted(combo))
        if multiset in seen:
            continue
        seen.add(multiset)
        if sum(_index_of_class(table, c) for c in multiset) != budget:
            continue
        classes = tuple(sorted(multiset, key=lambda c: -table[c].size))
        remaining = None if limit is None else limit - len(out)
        for elems, order, _ in searcher.systems(classes, remaining, want):
            perms = [Permutation(e, check=False) for e in elems] + [Permutation(searcher.x, check=False)]
            out.append(GenusSystem(tuple(perms), genus_of_tuple(n, perms), order, classes + (a,)))
        if limit is not None and len(out) >= limit:
            break
    return out


def two_cycle_anchors(table: ClassTable) -> list[int]:
    return [i for i, c in enumerate(table) if len(c.cycle_type) == 2]


def anchor_matches(table: ClassTable, selector: str) -> list[int]:
    """Class ids named by a selector.

    ``6-6`` names every class of that cycle type, ``6-6#2`` the second of
    them, ``two-cycle`` every class with exactly two cycles and ``c14`` the
    class with id 14.
    """
    sel = selector.strip()
    if sel == "two-cycle":
        return two_cycle_anchors(table)
    if sel.startswith("c") and sel[1:].isdigit():
        i = int(sel[1:])
        if not 0 <= i < len(table):
            raise GenusError(f"class id {i} out of range 0..{len(table) - 1}")
        return [i]
    label, _, pick = sel.partition("#")
    try:
        hits = table.select(CycleType.parse(label))
    except ValueError as exc:
        raise GenusError(f"bad anchor selector {selector!r}") from exc
    if pick:
        if not pick.isdigit() or not 1 <= int(pick) <= len(hits):
            raise GenusError(f"selector {selector!r}: {len(hits)} matching classes")
        return [hits[int(pick) - 1]]
    return hits
