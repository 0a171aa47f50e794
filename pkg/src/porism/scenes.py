"""Scene and report files: schema validation, canonical serialization.

Reports must be reproducible byte for byte, so JSON is emitted by a small
canonical writer: keys sorted, floats printed with 17 significant digits
(enough to round-trip doubles exactly), no locale or ordering surprises.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

from .errors import SceneError
from .geometry import Circle, Point
from .pencils import PairSequence
from .series import Scene, Tolerances

SCHEMA_KEYS = {"alpha0", "alpha1", "delta", "index", "start", "pairs", "tolerances"}


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise SceneError(f"cannot serialize non-finite float {x}")
    if x == int(x) and abs(x) < 1e16:
        return f"{x:.1f}"
    return format(x, ".17g")


def dumps_canonical(obj) -> str:
    """Deterministic JSON: sorted keys, fixed float format."""
    if isinstance(obj, dict):
        items = sorted(obj.items())
        inner = ",".join(f"{json.dumps(k)}:{dumps_canonical(v)}" for k, v in items)
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps_canonical(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise SceneError(f"cannot serialize {type(obj).__name__}")


def _circle_to_dict(c: Circle) -> dict:
    return {"center": [c.center.x, c.center.y], "radius": c.radius}


def _circle_from_dict(d, label: str) -> Circle:
    if not isinstance(d, dict) or "center" not in d or "radius" not in d:
        raise SceneError(f"{label}: expected {{'center': [x, y], 'radius': r}}")
    center = d["center"]
    if not (isinstance(center, (list, tuple)) and len(center) == 2):
        raise SceneError(f"{label}: center must be a pair of numbers")
    try:
        cx, cy, r = float(center[0]), float(center[1]), float(d["radius"])
    except (TypeError, ValueError) as exc:
        raise SceneError(f"{label}: non-numeric circle data") from exc
    if not (math.isfinite(cx) and math.isfinite(cy) and math.isfinite(r)):
        raise SceneError(f"{label}: circle data must be finite")
    if r <= 0:
        raise SceneError(f"{label}: radius must be positive")
    return Circle(Point(cx, cy), r)


@dataclass(frozen=True)
class SceneFile:
    """A parsed scene file: the scene plus optional start and pair sequence."""

    scene: Scene
    start_point: Point | None = None
    start_circle: Circle | None = None
    pairs: PairSequence | None = None


def parse_scene(data: dict) -> SceneFile:
    if not isinstance(data, dict):
        raise SceneError("scene file must contain a JSON object")
    unknown = set(data) - SCHEMA_KEYS
    if unknown:
        raise SceneError(f"unknown scene keys: {sorted(unknown)}")
    for key in ("alpha0", "alpha1", "delta"):
        if key not in data:
            raise SceneError(f"missing required key {key!r}")
    a0 = _circle_from_dict(data["alpha0"], "alpha0")
    a1 = _circle_from_dict(data["alpha1"], "alpha1")
    delta = _circle_from_dict(data["delta"], "delta")
    index = data.get("index", 1)
    if index not in (0, 1):
        raise SceneError("index must be 0 or 1")
    tol = Tolerances()
    if "tolerances" in data:
        td = data["tolerances"]
        if not isinstance(td, dict) or set(td) - {"geo", "quad", "close"}:
            raise SceneError("tolerances must be an object with keys geo, quad, close")
        vals = {}
        for k in ("geo", "quad", "close"):
            v = float(td.get(k, getattr(tol, k)))
            if not (v > 0 and math.isfinite(v)):
                raise SceneError(f"tolerance {k} must be positive and finite")
            vals[k] = v
        tol = Tolerances(**vals)
    scene = Scene(a0, a1, delta, index, tol)

    start_point = None
    start_c = None
    if "start" in data:
        sd = data["start"]
        if not isinstance(sd, dict) or not ({"point", "circle"} & set(sd)):
            raise SceneError("start must contain 'point' or 'circle'")
        if "point" in sd:
            pt = sd["point"]
            if not (isinstance(pt, (list, tuple)) and len(pt) == 2):
                raise SceneError("start point must be a pair of numbers")
            start_point = Point(float(pt[0]), float(pt[1]))
        if "circle" in sd:
            start_c = _circle_from_dict(sd["circle"], "start circle")

    pairs = None
    if "pairs" in data:
        pd = data["pairs"]
        if not isinstance(pd, dict) or "t0" not in pd or "t1" not in pd:
            raise SceneError("pairs must contain arrays 't0' and 't1'")
        t0s = [float(v) for v in pd["t0"]]
        t1s = [float(v) for v in pd["t1"]]
        if len(t0s) != len(t1s) or not t0s:
            raise SceneError("pairs arrays must be nonempty and the same length")
        pairs = PairSequence.from_base(delta, a0, a1, t0s, t1s)
    return SceneFile(scene, start_point, start_c, pairs)


def scene_to_dict(sf: SceneFile) -> dict:
    out = {
        "alpha0": _circle_to_dict(sf.scene.alpha0),
        "alpha1": _circle_to_dict(sf.scene.alpha1),
        "delta": _circle_to_dict(sf.scene.delta),
        "index": sf.scene.index,
        "tolerances": {
            "geo": sf.scene.tol.geo,
            "quad": sf.scene.tol.quad,
            "close": sf.scene.tol.close,
        },
    }
    if sf.start_point is not None or sf.start_circle is not None:
        start = {}
        if sf.start_point is not None:
            start["point"] = [sf.start_point.x, sf.start_point.y]
        if sf.start_circle is not None:
            start["circle"] = _circle_to_dict(sf.start_circle)
        out["start"] = start
    if sf.pairs is not None:
        out["pairs"] = {"t0": list(sf.pairs.t0s), "t1": list(sf.pairs.t1s)}
    return out


def load_scene_file(path: str) -> SceneFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SceneError(f"cannot read scene file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SceneError(f"scene file is not valid JSON: {exc}") from exc
    return parse_scene(data)


def scene_hash(sf: SceneFile) -> str:
    return hashlib.sha256(dumps_canonical(scene_to_dict(sf)).encode()).hexdigest()
