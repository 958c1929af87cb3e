"""Elements with exactly two cycles, checked against the expected table rows."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .catalog.mathieu import data_dir
from .catalog.spec import parse_group_spec
from .classes import class_table
from .group import PermGroup, rank_and_subdegrees
from .perm import Permutation

Pair = tuple[int, int]


@dataclass
class TwoCycleReport:
    spec: str
    degree: int
    pairs: list[Pair]
    witnesses: dict[Pair, Permutation]
    has_n_cycle: bool

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "degree": self.degree,
            "pairs": [list(p) for p in self.pairs],
            "witnesses": {f"{k}+{l}": w.to_cycles() for (k, l), w in self.witnesses.items()},
            "has_n_cycle": self.has_n_cycle,
        }


def two_cycle_pairs(G: PermGroup, seed: int = 0) -> TwoCycleReport:
    table = class_table(G, seed=seed)
    witnesses: dict[Pair, Permutation] = {}
    has_n_cycle = False
    for cl in table:
        lengths = cl.cycle_type.lengths
        if len(lengths) == 1:
            has_n_cycle = True
        elif len(lengths) == 2 and lengths not in witnesses:
            witnesses[lengths] = cl.representative
    pairs = sorted(witnesses)
    return TwoCycleReport(G.name or "", G.degree, pairs, {p: witnesses[p] for p in pairs}, has_n_cycle)


def normalize_pairs(pairs) -> set[Pair]:
    return {tuple(sorted(p)) for p in pairs}


@dataclass
class RowResult:
    spec: str
    expected: list[Pair]
    report: TwoCycleReport
    missing: list[Pair] = field(default_factory=list)
    unexpected: list[Pair] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.missing and not self.unexpected

    def diff(self) -> dict:
        return {"missing": [list(p) for p in self.missing], "unexpected": [list(p) for p in self.unexpected]}


def verify_kl_row(spec: str | PermGroup, expected, seed: int = 0) -> RowResult:
    G = parse_group_spec(spec) if isinstance(spec, str) else spec
    report = two_cycle_pairs(G, seed)
    want = normalize_pairs(expected)
    got = set(report.pairs)
    return RowResult(
        report.spec,
        sorted(want),
        report,
        missing=sorted(want - got),
        unexpected=sorted(got - want),
    )


def rank_check(G: PermGroup) -> int:
    return rank_and_subdegrees(G)[0]


@dataclass
class CoprimeReport:
    checked: list[Pair]
    exempt: list[Pair]
    contains_alt: bool | None

    @property
    def ok(self) -> bool:
        return not self.checked or bool(self.contains_alt)


def contains_alternating(G: PermGroup) -> bool:
    n = G.degree
    if n < 3:
        return True
    return all(Permutation.from_cycles([(0, 1, i)], n) in G for i in range(2, n))


def marggraf_coprime_check(G: PermGroup, report: TwoCycleReport | None = None) -> CoprimeReport:
    """A two-cycle element with coprime lengths k, n-k and k > 1 forces Alt(n) <= G."""
    report = report or two_cycle_pairs(G)
    checked = [p for p in report.pairs if p[0] > 1 and math.gcd(*p) == 1]
    exempt = [p for p in report.pairs if p not in checked]
    contains = contains_alternating(G) if checked else None
    return CoprimeReport(checked, exempt, contains)


# manifests


@dataclass(frozen=True)
class ManifestRow:
    spec: str
    expected: list[Pair]
    description: str
    rank_exempt: bool = False
    primitive: bool = True


def load_kl_manifest(path: Path | None = None) -> list[ManifestRow]:
    path = path or data_dir() / "kl_manifest.json"
    raw = json.loads(Path(path).read_text())
    return [
        ManifestRow(
            r["spec"],
            [tuple(p) for p in r["expected"]],
            r.get("description", ""),
            r.get("rank_exempt", False),
            r.get("primitive", True),
        )
        for r in raw["rows"]
    ]


def load_skip_manifest(path: Path | None = None) -> list[tuple[str, str]]:
    """Lines of ``<spec> | <reason>``."""
    path = path or data_dir() / "skip_manifest.txt"
    out = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        spec, _, reason = line.partition("|")
        out.append((spec.strip(), reason.strip()))
    return out
