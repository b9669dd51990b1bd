"""JSON schemas for instances, covers, and solver output.

Every number crosses the file boundary as a canonical lowest-terms
``"num/den"`` string, so exactness survives round trips and identical
inputs always serialize byte-identically.  Instances are re-validated on
load; nothing is silently renormalized.
"""

from __future__ import annotations

import json
from typing import Sequence

from .errors import ValidationError
from .measures import (
    ContinuousInstance,
    Cover,
    DiscreteProductInstance,
    FiniteSupportOracle,
    MeasureOracle,
    PiecewiseConstantOracle,
    SupportGrid,
    UniformOracle,
)
from .numerics import rat, rat_str


def _rats(values) -> list[str]:
    return [rat_str(v) for v in values]


def discrete_to_json(instance: DiscreteProductInstance) -> dict:
    return {
        "type": "discrete",
        "grid": _rats(instance.grid.values),
        "probs": [_rats(row) for row in instance.probs],
        "costs": _rats(instance.costs),
        "k": instance.k,
    }


def oracle_to_json(oracle: MeasureOracle) -> dict:
    if isinstance(oracle, UniformOracle):
        return {"kind": "uniform"}
    if isinstance(oracle, FiniteSupportOracle):
        return {
            "kind": "finite",
            "atoms": [[rat_str(v), rat_str(m)] for v, m in oracle.atoms],
        }
    if isinstance(oracle, PiecewiseConstantOracle):
        return {
            "kind": "piecewise",
            "breakpoints": _rats(oracle.breakpoints),
            "densities": _rats(oracle.densities),
        }
    raise ValidationError(f"oracle kind {oracle.kind!r} has no JSON form")


def oracle_from_json(obj: dict) -> MeasureOracle:
    kind = obj.get("kind")
    if kind == "uniform":
        return UniformOracle()
    if kind == "finite":
        return FiniteSupportOracle(
            atoms=[(rat(v), rat(m)) for v, m in obj["atoms"]]
        )
    if kind == "piecewise":
        return PiecewiseConstantOracle(
            breakpoints=[rat(v) for v in obj["breakpoints"]],
            densities=[rat(v) for v in obj["densities"]],
        )
    raise ValidationError(f"unknown oracle kind {kind!r}")


def continuous_to_json(instance: ContinuousInstance) -> dict:
    return {
        "type": "continuous",
        "oracles": [oracle_to_json(o) for o in instance.oracles],
        "costs": _rats(instance.costs),
        "k": instance.k,
        "alpha": rat_str(instance.alpha),
    }


def instance_to_json(instance) -> dict:
    if isinstance(instance, DiscreteProductInstance):
        return discrete_to_json(instance)
    if isinstance(instance, ContinuousInstance):
        return continuous_to_json(instance)
    raise ValidationError(f"unsupported instance type {type(instance).__name__}")


def instance_from_json(obj: dict):
    if not isinstance(obj, dict):
        raise ValidationError("instance JSON must be an object")
    kind = obj.get("type")
    if kind == "discrete":
        try:
            return DiscreteProductInstance(
                grid=SupportGrid(values=tuple(rat(v) for v in obj["grid"])),
                probs=tuple(tuple(rat(p) for p in row) for row in obj["probs"]),
                costs=tuple(rat(c) for c in obj["costs"]),
                k=int(obj["k"]),
            )
        except KeyError as exc:
            raise ValidationError(f"discrete instance missing field {exc}") from exc
    if kind == "continuous":
        try:
            return ContinuousInstance(
                oracles=tuple(oracle_from_json(o) for o in obj["oracles"]),
                costs=tuple(rat(c) for c in obj["costs"]),
                k=int(obj["k"]),
                alpha=rat(obj["alpha"]),
            )
        except KeyError as exc:
            raise ValidationError(f"continuous instance missing field {exc}") from exc
    raise ValidationError(f"unknown instance type {kind!r}")


def cover_to_json(cover: Cover) -> dict:
    return {"cover": [_rats(point) for point in cover.points]}


def cover_from_json(obj: dict) -> Cover:
    if not isinstance(obj, dict) or "cover" not in obj:
        raise ValidationError("cover JSON must be an object with a 'cover' field")
    return Cover(
        points=tuple(tuple(rat(x) for x in point) for point in obj["cover"])
    )


def dumps(obj: dict) -> str:
    """Fixed-format JSON text: stable key order, two-space indent."""
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def load_instance(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if isinstance(obj, dict) and "instance" in obj:
        obj = obj["instance"]
    return instance_from_json(obj)


def load_cover(path: str) -> Cover:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if isinstance(obj, dict) and "cover" in obj and isinstance(obj["cover"], dict):
        obj = obj["cover"]
    return cover_from_json(obj)
