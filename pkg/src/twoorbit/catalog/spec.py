"""Textual group descriptors such as ``PGL(2,5)`` or ``Wr2(S(4))``."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from ..group import GroupError, PermGroup
from .linear import affine, projective_linear
from .mathieu import load_verified, mathieu
from .standard import alt, cyc, dih, m10, pairs_action, product_action_wreath, sym


class SpecError(GroupError):
    pass


_SIMPLE = {"S": sym, "A": alt, "C": cyc, "D": dih}
_LINEAR = {"PSL", "PGL", "PSigmaL", "PGammaL"}
_AFFINE = {"ASL", "AGL", "ASigmaL", "AGammaL"}
_MATHIEU = {"M11": 11, "M11deg12": "11deg12", "M12": 12, "M22": 22, "M23": 23, "M24": 24}
_WRAPPERS = {"Wr2": product_action_wreath, "Pairs": pairs_action}


@dataclass(frozen=True)
class GroupSpec:
    text: str

    def build(self) -> PermGroup:
        return parse_group_spec(self.text)


def _split(text: str) -> tuple[str, str | None]:
    m = re.fullmatch(r"([A-Za-z][A-Za-z0-9]*)\s*(?:\((.*)\))?", text.strip(), re.S)
    if not m:
        raise SpecError(f"cannot parse group spec {text!r}")
    return m.group(1), m.group(2)


def _ints(args: str | None, count: int, head: str) -> list[int]:
    if args is None:
        raise SpecError(f"{head} needs {count} integer argument(s)")
    parts = [a.strip() for a in args.split(",")]
    if len(parts) != count or not all(re.fullmatch(r"\d+", a) for a in parts):
        raise SpecError(f"{head} needs {count} integer argument(s), got {args!r}")
    return [int(a) for a in parts]


def parse_group_spec(text: str) -> PermGroup:
    head, args = _split(text)
    try:
        if head in _SIMPLE:
            (n,) = _ints(args, 1, head)
            if n < 1:
                raise SpecError(f"degree must be positive in {text!r}")
            G = _SIMPLE[head](n)
        elif head in _LINEAR:
            m, q = _ints(args, 2, head)
            G = projective_linear(m, q, head)
        elif head in _AFFINE:
            m, q = _ints(args, 2, head)
            G = affine(m, q, head)
        elif head in _MATHIEU:
            if args is not None:
                raise SpecError(f"{head} takes no arguments")
            G = mathieu(_MATHIEU[head])
        elif head == "M10":
            if args is not None:
                raise SpecError("M10 takes no arguments")
            G = m10()
        elif head in _WRAPPERS:
            if not args:
                raise SpecError(f"{head} needs a group spec argument")
            G = _WRAPPERS[head](parse_group_spec(args))
        elif head == "File":
            if not args:
                raise SpecError("File needs a path")
            G = load_verified(Path(args.strip()))
        else:
            raise SpecError(f"unknown group family {head!r}")
    except SpecError:
        raise
    except (GroupError, ValueError) as exc:
        raise SpecError(f"{text!r}: {exc}") from exc
    G.name = text.strip()
    return G
