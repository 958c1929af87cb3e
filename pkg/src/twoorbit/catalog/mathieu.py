"""Mathieu groups loaded from bundled generator files."""

from __future__ import annotations

import os
from pathlib import Path

from ..group import GroupError, PermGroup, read_generator_file

DATA_ENV = "TWO_ORBIT_DATA"

_FILES = {
    11: "m11.txt",
    12: "m12.txt",
    22: "m22.txt",
    23: "m23.txt",
    24: "m24.txt",
    "11deg12": "m11_deg12.txt",
}


class DataFileError(GroupError):
    pass


def data_dir() -> Path:
    override = os.environ.get(DATA_ENV)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent.parent / "data"


def load_verified(path: Path, name: str | None = None) -> PermGroup:
    """Read a generator file and check its ``expected-order`` metadata when present."""
    if not path.is_file():
        raise DataFileError(f"missing data file {path}")
    degree, gens, meta = read_generator_file(path)
    G = PermGroup(gens, degree, name=name or meta.get("name"))
    if "expected-order" in meta:
        expected = int(meta["expected-order"])
        got = G.order()
        if got != expected:
            raise DataFileError(f"{path.name}: group order {got} does not match expected {expected}")
    return G


def mathieu(n: int | str) -> PermGroup:
    if n not in _FILES:
        raise GroupError(f"no Mathieu group {n!r}; choose from 11, 12, 22, 23, 24 or '11deg12'")
    name = f"M{n}" if isinstance(n, int) else "M11deg12"
    return load_verified(data_dir() / _FILES[n], name)
