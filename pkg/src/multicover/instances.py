"""Problem instances for covering (red-blue domination, point cover) and
packing (independent set, capacitated region packing), plus a strict JSON
file format.

File format (one schema for every kind; unknown fields are rejected):

    {
      "kind": "mwds" | "mwsc" | "mwis" | "region_packing",
      "t": 3,
      "shape": "interval" | "disk",
      "reds": [{"id": 0, "weight": 1.5, "parts": [[lo, hi], ...]}, ...],
      "blues": [...],          # mwds only, same record shape as reds
      "points": [[x], ...],    # mwsc / mwis / region_packing
      "capacities": [1, ...]   # region_packing (mwis: all ones, optional)
    }

Interval parts are [lo, hi]; disk parts are [cx, cy, r]. Points are
coordinate lists matching the shape dimension. "reds" always holds the
selectable (weighted) objects, also for the packing kinds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .geometry import (
    Disk,
    Interval,
    TObject,
    constraint_points,
    contains_point,
    shape_kind,
    t_intersects,
)

COVER_KINDS = ("mwds", "mwsc")
PACK_KINDS = ("mwis", "region_packing")


class ParseError(ValueError):
    """Malformed instance file."""


@dataclass(frozen=True)
class CoverInstance:
    kind: str                      # "mwds" | "mwsc"
    t: int
    shape: str                     # "interval" | "disk"
    reds: tuple
    blues: tuple = ()              # t-objects (mwds)
    points: tuple = ()             # ground points (mwsc)


@dataclass(frozen=True)
class PackInstance:
    kind: str                      # "mwis" | "region_packing"
    t: int
    shape: str
    objects: tuple
    points: tuple
    capacities: tuple


def mwis_instance(objects, t=None, shape=None) -> PackInstance:
    """Build an independent-set instance: witness points, all capacities 1."""
    objects = tuple(objects)
    pts = tuple(constraint_points(objects))
    if shape is None:
        shape = shape_kind(objects[0].parts[0])
    if t is None:
        t = max(len(o.parts) for o in objects)
    return PackInstance("mwis", t, shape, objects, pts, (1,) * len(pts))


def _check_objects(label, objects, t, shape, out):
    seen = set()
    for idx, obj in enumerate(objects):
        if obj.id in seen:
            out.append(f"{label} {idx}: duplicate id {obj.id}")
        seen.add(obj.id)
        if len(obj.parts) > t:
            out.append(f"{label} {idx}: part count exceeds t")
        if obj.weight < 0:
            out.append(f"{label} {idx}: weight must be >= 0")
        for part in obj.parts:
            if shape_kind(part) != shape:
                out.append(f"{label} {idx}: part kind differs from instance shape")


def _check_points(points, shape, out):
    dim = 1 if shape == "interval" else 2
    for idx, p in enumerate(points):
        if len(p) != dim:
            out.append(f"point {idx}: expected {dim} coordinates, got {len(p)}")


def validate(inst) -> list:
    """Return the list of invariant violations (empty when well-formed).

    Uncoverable blues/points make a covering instance infeasible; they are
    reported as violations but the instance object itself stays usable.
    """
    out = []
    if inst.t < 1:
        out.append("t must be >= 1")
        return out
    if inst.shape not in ("interval", "disk"):
        out.append(f"unknown shape {inst.shape!r}")
        return out

    if isinstance(inst, CoverInstance):
        if inst.kind not in COVER_KINDS:
            out.append(f"unknown cover kind {inst.kind!r}")
            return out
        _check_objects("red", inst.reds, inst.t, inst.shape, out)
        if inst.kind == "mwds":
            if inst.points:
                out.append("mwds instance must not carry points")
            _check_objects("blue", inst.blues, inst.t, inst.shape, out)
            if not out:
                for j, blue in enumerate(inst.blues):
                    if not any(t_intersects(blue, red) for red in inst.reds):
                        out.append(f"blue {j}: uncoverable")
        else:
            if inst.blues:
                out.append("mwsc instance must not carry blue objects")
            _check_points(inst.points, inst.shape, out)
            if not out:
                for j, p in enumerate(inst.points):
                    if not any(contains_point(red, p) for red in inst.reds):
                        out.append(f"point {j}: uncoverable")
        return out

    if inst.kind not in PACK_KINDS:
        out.append(f"unknown pack kind {inst.kind!r}")
        return out
    _check_objects("object", inst.objects, inst.t, inst.shape, out)
    _check_points(inst.points, inst.shape, out)
    if len(inst.capacities) != len(inst.points):
        out.append("capacities length differs from points length")
        return out
    for idx, c in enumerate(inst.capacities):
        if not (isinstance(c, int) and c >= 1):
            out.append(f"capacity {idx}: must be a positive integer")
    if inst.kind == "mwis" and not out:
        if any(c != 1 for c in inst.capacities):
            out.append("mwis capacities must all be 1")
        expected = constraint_points(inst.objects) if inst.objects else []
        got = sorted(inst.points)
        if len(expected) != len(got) or any(
            max(abs(a - b) for a, b in zip(p, q)) > 1e-9 for p, q in zip(expected, got)
        ):
            out.append("mwis points differ from the witness set of the objects")
    return out


@dataclass(frozen=True)
class IncidenceMatrix:
    """0/1 incidence of blue rows (or points) against red columns.

    Sparse representation: rows[j] is the sorted tuple of column indices i
    with bit (j, i) set.
    """

    num_rows: int
    num_cols: int
    rows: tuple  # tuple of sorted tuples of column indices

    def bit(self, j: int, i: int) -> int:
        return 1 if i in self.row_sets[j] else 0

    @property
    def row_sets(self):
        cached = getattr(self, "_row_sets", None)
        if cached is None:
            cached = tuple(frozenset(r) for r in self.rows)
            object.__setattr__(self, "_row_sets", cached)
        return cached

    def dense(self):
        import numpy as np

        m = np.zeros((self.num_rows, self.num_cols), dtype=np.int8)
        for j, row in enumerate(self.rows):
            for i in row:
                m[j, i] = 1
        return m


def incidence(inst: CoverInstance) -> IncidenceMatrix:
    """Incidence of blues (mwds) or points (mwsc) against the reds."""
    rows = []
    if inst.kind == "mwds":
        for blue in inst.blues:
            rows.append(tuple(i for i, red in enumerate(inst.reds) if t_intersects(blue, red)))
        return IncidenceMatrix(len(inst.blues), len(inst.reds), tuple(rows))
    for p in inst.points:
        rows.append(tuple(i for i, red in enumerate(inst.reds) if contains_point(red, p)))
    return IncidenceMatrix(len(inst.points), len(inst.reds), tuple(rows))


# ---------------------------------------------------------------------------
# serialization

_TOP_FIELDS = {"kind", "t", "shape", "reds", "blues", "points", "capacities"}
_OBJ_FIELDS = {"id", "weight", "parts"}


def _part_to_json(part):
    if isinstance(part, Interval):
        return [part.lo, part.hi]
    return [part.cx, part.cy, part.r]


def _part_from_json(raw, shape, where):
    if not isinstance(raw, list) or not all(isinstance(v, (int, float)) for v in raw):
        raise ParseError(f"{where}: part must be a list of numbers")
    try:
        if shape == "interval":
            if len(raw) != 2:
                raise ParseError(f"{where}: interval part needs [lo, hi]")
            return Interval(float(raw[0]), float(raw[1]))
        if len(raw) != 3:
            raise ParseError(f"{where}: disk part needs [cx, cy, r]")
        return Disk(float(raw[0]), float(raw[1]), float(raw[2]))
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from exc


def _obj_to_json(obj):
    return {"id": obj.id, "weight": obj.weight, "parts": [_part_to_json(p) for p in obj.parts]}


def _obj_from_json(raw, shape, where):
    if not isinstance(raw, dict):
        raise ParseError(f"{where}: object record must be a mapping")
    unknown = set(raw) - _OBJ_FIELDS
    if unknown:
        raise ParseError(f"{where}: unknown fields {sorted(unknown)}")
    for fld in _OBJ_FIELDS:
        if fld not in raw:
            raise ParseError(f"{where}: missing field {fld!r}")
    if not isinstance(raw["weight"], (int, float)) or raw["weight"] < 0:
        raise ParseError(f"{where}: weight must be >= 0")
    parts = [_part_from_json(p, shape, f"{where}.parts[{k}]") for k, p in enumerate(raw["parts"])]
    if not parts:
        raise ParseError(f"{where}: needs at least one part")
    return TObject(raw["id"], parts, float(raw["weight"]))


def instance_to_dict(inst) -> dict:
    doc = {"kind": inst.kind, "t": inst.t, "shape": inst.shape}
    if isinstance(inst, CoverInstance):
        doc["reds"] = [_obj_to_json(o) for o in inst.reds]
        if inst.kind == "mwds":
            doc["blues"] = [_obj_to_json(o) for o in inst.blues]
        else:
            doc["points"] = [list(p) for p in inst.points]
    else:
        doc["reds"] = [_obj_to_json(o) for o in inst.objects]
        doc["points"] = [list(p) for p in inst.points]
        doc["capacities"] = list(inst.capacities)
    return doc


def instance_from_dict(doc) -> "CoverInstance | PackInstance":
    if not isinstance(doc, dict):
        raise ParseError("top level must be a mapping")
    unknown = set(doc) - _TOP_FIELDS
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}")
    for fld in ("kind", "t", "shape", "reds"):
        if fld not in doc:
            raise ParseError(f"missing field {fld!r}")
    kind, shape = doc["kind"], doc["shape"]
    if kind not in COVER_KINDS + PACK_KINDS:
        raise ParseError(f"unknown kind {kind!r}")
    if shape not in ("interval", "disk"):
        raise ParseError(f"unknown shape tag {shape!r}")
    if not isinstance(doc["t"], int) or doc["t"] < 1:
        raise ParseError("t must be a positive integer")
    t = doc["t"]
    reds = tuple(_obj_from_json(o, shape, f"reds[{i}]") for i, o in enumerate(doc["reds"]))

    dim = 1 if shape == "interval" else 2

    def parse_points(raw):
        pts = []
        for i, p in enumerate(raw):
            if not isinstance(p, list) or len(p) != dim:
                raise ParseError(f"points[{i}]: expected {dim} coordinates")
            pts.append(tuple(float(v) for v in p))
        return tuple(pts)

    if kind == "mwds":
        if "blues" not in doc:
            raise ParseError("mwds instance requires 'blues'")
        if "points" in doc or "capacities" in doc:
            raise ParseError("mwds instance must not carry points/capacities")
        blues = tuple(_obj_from_json(o, shape, f"blues[{i}]") for i, o in enumerate(doc["blues"]))
        return CoverInstance(kind, t, shape, reds, blues=blues)
    if kind == "mwsc":
        if "points" not in doc:
            raise ParseError("mwsc instance requires 'points'")
        if "blues" in doc or "capacities" in doc:
            raise ParseError("mwsc instance must not carry blues/capacities")
        return CoverInstance(kind, t, shape, reds, points=parse_points(doc["points"]))

    if "points" not in doc:
        raise ParseError(f"{kind} instance requires 'points'")
    if "blues" in doc:
        raise ParseError(f"{kind} instance must not carry blue objects")
    points = parse_points(doc["points"])
    if "capacities" in doc:
        caps = doc["capacities"]
        if not all(isinstance(c, int) and c >= 1 for c in caps):
            raise ParseError("capacities must be positive integers")
        if len(caps) != len(points):
            raise ParseError("capacities length differs from points length")
        capacities = tuple(caps)
    elif kind == "mwis":
        capacities = (1,) * len(points)
    else:
        raise ParseError("region_packing instance requires 'capacities'")
    return PackInstance(kind, t, shape, reds, points, capacities)


def write_instance(inst, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_dict(inst), fh, indent=2)
        fh.write("\n")


def read_instance(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}:{exc.lineno}: {exc.msg}") from exc
    return instance_from_dict(doc)
