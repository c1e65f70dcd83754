"""JSON input/output for spaces, partitions, words and workspaces.

Rationals travel as strings "p/q" or plain integers; Boolean words as sorted
point-name arrays; abelian words as {"name": coeff}; free words as letter
arrays with a trailing apostrophe for inverses.  The name "0" is reserved
for the adjoined zero element and rejected in user inputs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .abelian import AbelianWord
from .boolean import BooleanWord, Configuration, NormCertificate
from .errors import InputError
from .finite_groups import FiniteGroupTable, IsometricAction
from .freegroup import FreeWord
from .spaces import (
    AugmentedSpace,
    Partition,
    PartitionChain,
    UltraMetricSpace,
    ball_chain,
    extend_with_zero,
)


def parse_rational(v) -> Fraction:
    if isinstance(v, bool):
        raise InputError(f"not a rational: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed rational {v!r}: {exc}") from exc
    raise InputError(f"not a rational: {v!r}")


def format_rational(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_space(obj: dict) -> UltraMetricSpace:
    try:
        names = tuple(obj["points"])
        rows = obj["dist"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"space object needs 'points' and 'dist': {exc}") from exc
    if len(set(names)) != len(names):
        raise InputError("duplicate point names")
    dist = tuple(tuple(parse_rational(v) for v in row) for row in rows)
    basepoint = 0
    if "basepoint" in obj:
        if obj["basepoint"] not in names:
            raise InputError(f"basepoint {obj['basepoint']!r} is not a point")
        basepoint = names.index(obj["basepoint"])
    return UltraMetricSpace(dist=dist, names=names, basepoint=basepoint)


def parse_partition(obj: dict, space: UltraMetricSpace) -> Partition:
    try:
        blocks = obj["blocks"]
    except (KeyError, TypeError) as exc:
        raise InputError("partition object needs 'blocks'") from exc
    idx_blocks = tuple(frozenset(space.index(name) for name in b) for b in blocks)
    return Partition(idx_blocks, space.size)


def parse_chain(obj, space: UltraMetricSpace) -> PartitionChain:
    if obj == "auto":
        return ball_chain(space)
    try:
        levels = obj["levels"]
    except (KeyError, TypeError) as exc:
        raise InputError('chain must be "auto" or an object with "levels"') from exc
    parsed = tuple(
        (parse_rational(lvl["threshold"]), parse_partition(lvl, space)) for lvl in levels
    )
    return PartitionChain(parsed)


def parse_boolean_word(obj, space: UltraMetricSpace) -> BooleanWord:
    if not isinstance(obj, list):
        raise InputError("Boolean word must be an array of point names")
    return BooleanWord(frozenset(space.index(n) for n in obj), space.size)


def parse_abelian_word(obj, space: UltraMetricSpace) -> AbelianWord:
    if not isinstance(obj, dict):
        raise InputError("abelian word must be an object name -> coefficient")
    return AbelianWord(
        tuple((space.index(n), int(c)) for n, c in obj.items()), space.size
    )


def parse_free_word(obj, space: UltraMetricSpace) -> FreeWord:
    if not isinstance(obj, list):
        raise InputError("free word must be an array of letters")
    letters = []
    for tok in obj:
        if tok.endswith("'"):
            letters.append((space.index(tok[:-1]), -1))
        else:
            letters.append((space.index(tok), 1))
    return FreeWord(tuple(letters), space.size)


def encode_boolean_word(u: BooleanWord, names: tuple[str, ...]) -> list[str]:
    return sorted(names[p] for p in u.points)


def encode_certificate(cert: NormCertificate, aug: AugmentedSpace) -> dict:
    names = aug.names
    return {
        "value": format_rational(cert.value),
        "witness": sorted([names[a], names[b]] for a, b in cert.witness.pairs),
        "algorithm": cert.algorithm,
        "basepoint": aug.base.names[cert.basepoint],
    }


@dataclass
class Workspace:
    """A validated bundle of one space plus named chains and actions."""

    space: UltraMetricSpace
    aug: AugmentedSpace
    chains: dict[str, PartitionChain]
    actions: dict[str, IsometricAction]
    options: dict[str, Any] = field(default_factory=dict)


def load_workspace(path: str, basepoint: Optional[str] = None) -> Workspace:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: line {exc.lineno} col {exc.colno}") from exc
    if "space" not in raw:
        raise InputError("workspace needs a 'space' object")
    space = parse_space(raw["space"])
    if basepoint is not None:
        space = UltraMetricSpace(
            dist=space.dist, names=space.names, basepoint=space.index(basepoint)
        )
    aug = extend_with_zero(space)
    chains = {
        name: parse_chain(obj, space) for name, obj in raw.get("chains", {}).items()
    }
    if "balls" not in chains:
        chains["balls"] = ball_chain(space)
    actions = {}
    for name, obj in raw.get("actions", {}).items():
        perms = [[space.index(n) for n in perm] for perm in obj.get("perms", [])]
        if not perms:
            raise InputError(f"action {name!r} has no permutations")
        group, elems = FiniteGroupTable.from_permutations(perms)
        actions[name] = IsometricAction(group=group, space=space, table=elems)
    return Workspace(
        space=space, aug=aug, chains=chains, actions=actions, options=raw.get("options", {})
    )


def dump_json(obj) -> str:
    """Deterministic JSON: sorted keys, no float drift."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
