"""Checking printed rational functions against their stated monodromy data."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..catalog.mathieu import data_dir
from .rational import InfinityFiber, MonodromyError, as_function, fiber_at_infinity
from .tracking import BranchCycleDescription, MonodromyConfig, monodromy


@dataclass(frozen=True)
class Example:
    label: str
    function: str
    type: tuple[int, ...]
    order: int
    infinity: dict
    primary: bool = True
    description: str = ""


def load_examples(path: Path | None = None) -> list[Example]:
    path = path or data_dir() / "monodromy_examples.json"
    raw = json.loads(Path(path).read_text())
    return [
        Example(e["label"], e["function"], tuple(sorted(e["type"])), e["order"], e.get("infinity", {}), e.get("primary", True), e.get("description", ""))
        for e in raw["examples"]
    ]


@dataclass
class ExampleReport:
    function: str
    expected_type: tuple[int, ...]
    expected_order: int
    result: BranchCycleDescription | None
    infinity: InfinityFiber | None
    diffs: dict = field(default_factory=dict)
    label: str = ""

    @property
    def ok(self) -> bool:
        return not self.diffs

    def to_dict(self) -> dict:
        d = {
            "label": self.label,
            "function": self.function,
            "expected": {"type": list(self.expected_type), "order": self.expected_order},
            "status": "pass" if self.ok else "fail",
            "diffs": self.diffs,
        }
        if self.result is not None:
            d["result"] = self.result.to_dict()
        if self.infinity is not None:
            d["infinity"] = self.infinity.to_dict()
        return d


def verify_example(
    g,
    expected_type,
    expected_order: int,
    expected_infinity: dict | None = None,
    config: MonodromyConfig | None = None,
    label: str = "",
) -> ExampleReport:
    """Numerical errors propagate; mismatches are collected in ``diffs``."""
    g = as_function(g)
    want = tuple(sorted(expected_type))
    desc = monodromy(g, config)
    fib = fiber_at_infinity(g)
    diffs: dict = {}
    if desc.type != want:
        diffs["type"] = {"expected": list(want), "found": list(desc.type)}
    G = desc.group()
    if G.order() != expected_order:
        diffs["order"] = {"expected": expected_order, "found": G.order()}
    if desc.genus != 0:
        diffs["genus"] = {"expected": 0, "found": desc.genus}
    if not G.is_transitive():
        diffs["transitive"] = {"expected": True, "found": False}
    if not desc.product().is_identity():
        raise MonodromyError("product of the branch cycles is not the identity")
    # the cycle lengths of the loop around infinity are the pole multiplicities
    inf = [s for b, s in zip(desc.branch_points, desc.sigmas) if b.is_infinite]
    found_inf = inf[0].cycle_type() if inf else None
    if max(fib.multiplicities.lengths) > 1 and found_inf != fib.multiplicities:
        diffs["infinity_cycles"] = {"expected": fib.multiplicities.label, "found": None if found_inf is None else found_inf.label}
    for key, value in (expected_infinity or {}).items():
        found = {"points": len(fib.points), "real": fib.real, "conjugate": fib.conjugate, "at_most_two": fib.at_most_two}.get(key)
        if found != value:
            diffs[f"infinity_{key}"] = {"expected": value, "found": found}
    return ExampleReport(str(g), want, expected_order, desc, fib, diffs, label)


def verify_bundled(config: MonodromyConfig | None = None, primary_only: bool = False) -> list[ExampleReport]:
    out = []
    for ex in load_examples():
        if primary_only and not ex.primary:
            continue
        out.append(verify_example(ex.function, ex.type, ex.order, ex.infinity, config, ex.label))
    return out
