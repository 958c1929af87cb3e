"""Derive generators of M11 acting on 12 points.

M11 acts by conjugation on its twelve subgroups isomorphic to PSL(2,11)
(index 12, self-normalizing), which is the 3-transitive action of degree 12.
Run from the repository root; writes src/twoorbit/data/m11_deg12.txt.
"""

from __future__ import annotations

import random
from pathlib import Path

from twoorbit.catalog.mathieu import mathieu
from twoorbit.group import PermGroup, write_generator_file
from twoorbit.perm import Permutation


def find_index12_subgroup(G: PermGroup, rng: random.Random) -> PermGroup:
    target = G.order() // 12
    while True:
        a, b = G.random_element(rng), G.random_element(rng)
        H = PermGroup([a, b], G.degree)
        if H.order() == target:
            return H


def main() -> None:
    G = mathieu(11)
    H = find_index12_subgroup(G, random.Random(0))
    conjugates = [frozenset(map(tuple, H.elements().tolist()))]
    seen = {conjugates[0]: 0}
    images: list[dict[int, int]] = [dict() for _ in G.generators]
    queue = [0]
    while queue:
        i = queue.pop(0)
        for gi, g in enumerate(G.generators):
            conj = frozenset(Permutation(x, check=False).conjugate(g).images for x in conjugates[i])
            if conj not in seen:
                seen[conj] = len(conjugates)
                conjugates.append(conj)
                queue.append(seen[conj])
            images[gi][i] = seen[conj]
    assert len(conjugates) == 12
    gens = [Permutation([img[i] for i in range(12)]) for img in images]
    K = PermGroup(gens, 12)
    assert K.order() == 7920 and K.is_transitive()
    out = Path("src/twoorbit/data/m11_deg12.txt")
    write_generator_file(
        out,
        K,
        {
            "name": "M11deg12",
            "expected-order": "7920",
            "provenance": "M11 acting by conjugation on its 12 subgroups of index 12 (tools/make_m11_deg12.py)",
        },
    )
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
