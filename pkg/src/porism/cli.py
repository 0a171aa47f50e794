"""Command-line front end: run series, verify identities, scan parameters,
render figures, validate scenes.

Exit codes: 0 success, 1 schema or usage error, 2 blocked series (a partial
report is still written), 3 verification suite failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import replace

import scipy.optimize as opt

from . import __version__
from .errors import GeometryError, SceneError, SeriesBlocked
from .geometry import Circle, Point, Quadric, line_tangency_residual
from .measure import (
    CCW,
    CW,
    PairDensity,
    ZigzagConfig,
    arc_mass,
    black_howland,
    rho,
    total_mass,
    verify_invariance,
    verify_prop1,
)
from .cyclics import (
    Cyclic,
    chord_line,
    derive_poncelet_quadric,
    equivalence_witness,
    equivalent_pencil,
    verify_prop1_prime,
)
from .pencils import (
    PairSequence,
    Pencil,
    classify_quadric,
    pencil_member,
    run_generalized_series,
    verify_prop3,
)
from .scenes import (
    SceneFile,
    dumps_canonical,
    load_scene_file,
    scene_hash,
    scene_to_dict,
)
from .series import (
    Scene,
    Tolerances,
    begin_series,
    normalize_assumption1,
    rotation_number,
    run_series,
    signed_invariant_check,
    start_circle,
)
from .svg import render_report
from .tangency import (
    TangentCircle,
    classify_index,
    tangency_point,
    tangent_circles_through_point,
)
from .errors import NotNested, NotTangent

_DEFAULT_START_ANGLES = (0.37, 1.13, 2.31, 3.93, 5.21, 0.9)

SUITES = ("measure", "prop1", "signed", "pencil", "quadric", "cyclic")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(1)


def _env_tolerances() -> Tolerances | None:
    raw = os.environ.get("PORISM_TOLERANCES")
    if not raw:
        return None
    vals = {}
    try:
        for part in raw.split(","):
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in ("geo", "quad", "close"):
                raise ValueError(f"unknown tolerance {key!r}")
            vals[key] = float(val)
    except ValueError as exc:
        raise SceneError(f"bad PORISM_TOLERANCES: {exc}") from exc
    base = Tolerances()
    return replace(base, **vals)


def _load(path: str) -> SceneFile:
    sf = load_scene_file(path)
    env = _env_tolerances()
    if env is not None:
        sf = SceneFile(replace(sf.scene, tol=env), sf.start_point, sf.start_circle, sf.pairs)
    return sf


def _resolve_start(sf: SceneFile) -> TangentCircle:
    scene = sf.scene
    if sf.start_circle is not None:
        w = sf.start_circle
        t0 = tangency_point(w, scene.alpha0, max(scene.tol.geo, 1e-7))
        t1 = tangency_point(w, scene.alpha1, max(scene.tol.geo, 1e-7))
        idx = classify_index(w, scene.alpha0, scene.alpha1, max(scene.tol.geo, 1e-7))
        if idx != scene.index:
            raise NotTangent(f"start circle has index {idx}, scene expects {scene.index}")
        return TangentCircle(w, t0, t1, idx)
    if sf.start_point is not None:
        return start_circle(scene, sf.start_point)
    for th in _DEFAULT_START_ANGLES:
        try:
            return start_circle(scene, scene.delta.point_at(th))
        except GeometryError:
            continue
    raise SeriesBlocked("no admissible start circle found on the carrier")


def _point(p: Point) -> list[float]:
    return [p.x, p.y]


def _build_report(sf: SceneFile, series, closure) -> dict:
    steps = []
    for k, s in enumerate(series.steps):
        entry = {
            "circle": {"center": _point(s.omega.circle.center), "radius": s.omega.circle.radius},
            "start": _point(s.start),
            "end": _point(s.end),
            "touch0": _point(s.omega.touch0),
            "touch1": _point(s.omega.touch1),
            "orient": s.orient,
        }
        if k < len(closure.step_masses):
            entry["mass"] = closure.step_masses[k]
        steps.append(entry)
    return {
        "kind": "run-report",
        "version": __version__,
        "scene": scene_to_dict(sf),
        "scene_hash": scene_hash(sf),
        "direction": series.direction,
        "steps": steps,
        "closure": {
            "closed": closure.closed,
            "n": closure.n,
            "winding": closure.winding,
            "residual": closure.residual if math.isfinite(closure.residual) else None,
            "stop_reason": closure.stop_reason,
        },
        "masses": {
            "per_step": list(closure.step_masses),
            "signed": closure.signed_mass,
            "total": closure.total_mass,
        },
    }


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_run(args) -> int:
    try:
        sf = _load(args.scene)
    except SceneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        w1 = _resolve_start(sf)
    except SeriesBlocked as exc:
        report = {
            "kind": "run-report",
            "version": __version__,
            "scene": scene_to_dict(sf),
            "scene_hash": scene_hash(sf),
            "steps": [],
            "closure": {"closed": False, "stop_reason": f"blocked: {exc}"},
        }
        _write(args.out, dumps_canonical(report))
        print(f"blocked: {exc}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    series, closure = run_series(
        sf.scene, w1, max_steps=args.steps, direction=args.direction,
        compute_masses=not args.no_masses,
    )
    report = _build_report(sf, series, closure)
    _write(args.out, dumps_canonical(report))
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_report(report))
    if closure.stop_reason.startswith("blocked"):
        print(closure.stop_reason, file=sys.stderr)
        return 2
    return 0


# --------------------------- verification suites ---------------------------


def _check(name: str, value: float, threshold: float | None) -> dict:
    ok = True if threshold is None else bool(value <= threshold)
    return {"name": name, "value": value, "threshold": threshold, "pass": ok}


def _suite_measure(sf: SceneFile) -> list[dict]:
    scene = sf.scene
    d = scene.density()
    delta = scene.delta
    rows = []
    w1 = _resolve_start(sf)
    rep = verify_invariance(d, delta, w1, 1e-4)
    rows.append(_check("invariance residual (eps 1e-4)", rep.residual, 1e-3))
    halving_ok = rep.residual_halved <= max(0.62 * rep.residual, 1e-9)
    rows.append(_check("invariance halving", 0.0 if halving_ok else 1.0, 0.5))
    # arc additivity and orientation invariance
    a, b, c = (delta.point_at(t) for t in (0.2, 1.7, 3.9))
    m_ab = arc_mass(d, delta, a, b, CCW, scene.tol.quad).value
    m_bc = arc_mass(d, delta, b, c, CCW, scene.tol.quad).value
    m_ac = arc_mass(d, delta, a, c, CCW, scene.tol.quad).value
    rows.append(_check("arc additivity", abs(m_ab + m_bc - m_ac), 1e-8))
    tot_ccw = m_ac + arc_mass(d, delta, c, a, CCW, scene.tol.quad).value
    tot_cw = (
        arc_mass(d, delta, a, c, CW, scene.tol.quad).value
        + arc_mass(d, delta, c, a, CW, scene.tol.quad).value
    )
    rows.append(_check("total mass ccw vs cw", abs(tot_ccw - tot_cw), 1e-8))
    series, closure = run_series(sf.scene, w1, max_steps=10)
    masses = closure.step_masses
    if len(masses) >= 2:
        spread = max(abs(m - masses[0]) for m in masses) / abs(masses[0])
        rows.append(_check("step-mass constancy", spread, 1e-8))
    if scene.alpha0.center.dist(scene.alpha1.center) <= scene.tol.geo:
        z = ZigzagConfig.from_pair(scene.alpha0, scene.alpha1)
        worst = 0.0
        for k in range(200):
            p = delta.point_at(k * 0.031415926535897934 + 0.005)
            bv = black_howland(z, p)
            rv = 2.0 * d.rho(p)
            if math.isfinite(bv) and math.isfinite(rv):
                worst = max(worst, abs(bv - rv) / abs(rv))
        rows.append(_check("triangle-area law = 2 rho", worst, 1e-12))
    # coaxial case: carrier in the pencil of the pair
    pen = Pencil.from_circles(scene.alpha0, scene.alpha1)
    fd = Quadric.from_circle(delta)
    if _pencil_parameter_of(pen, fd) is not None:
        vals = []
        for k in range(100):
            p = delta.point_at(k * 0.0628318 + 0.017)
            r = d.rho(p)
            if math.isfinite(r):
                vals.append(r * abs(scene.alpha0.power(p)))
        mean = sum(vals) / len(vals)
        spread = max(abs(v - mean) for v in vals) / abs(mean)
        rows.append(_check("reciprocal-power law on coaxial carrier", spread, 1e-10))
    return rows


def _pencil_parameter_of(pen: Pencil, q: Quadric) -> float | None:
    """The parameter at which q sits in the pencil, or None (monic circle pencils)."""
    ga, gb = pen.gen_a, pen.gen_b
    # member(t) = (1-t) ga + t gb; all monic, so match an affine coefficient
    best = None
    for num, den in (
        (q.b1 - ga.b1, gb.b1 - ga.b1),
        (q.b2 - ga.b2, gb.b2 - ga.b2),
        (q.c - ga.c, gb.c - ga.c),
    ):
        if abs(den) > 1e-12:
            best = num / den
            break
    if best is None:
        return None
    m = pen.combination(best)
    dist = max(abs(u - v) for u, v in zip(m.coeffs(), q.coeffs()))
    return best if dist <= 1e-9 else None


def _suite_prop1(sf: SceneFile) -> list[dict]:
    scene = sf.scene
    d = scene.density()
    worst = 0.0
    count = 0
    for k in range(20):
        th = (k + 0.5) * 2.0 * math.pi / 20.0
        try:
            cands = tangent_circles_through_point(
                scene.alpha0, scene.alpha1, scene.delta.point_at(th), scene.index, scene.tol.geo
            )
        except GeometryError:
            continue
        for w in cands:
            rep = verify_prop1(w, d, samples=48)
            worst = max(worst, rep.max_rel_deviation)
            count += 1
    rows = [_check(f"rho*h constancy over {count} tangent circles", worst, 1e-9)]
    return rows


def _suite_signed(sf: SceneFile) -> list[dict]:
    scene = sf.scene
    w1 = _resolve_start(sf)
    inv, scene_n, w1_n = normalize_assumption1(scene, w1)
    series = begin_series(scene_n, w1_n)
    from .series import next_step

    for _ in range(7):
        try:
            series = next_step(series)
        except SeriesBlocked:
            break
    rep = signed_invariant_check(scene_n, series, 1e-4)
    rows = [
        _check("signed invariant spread (eps 1e-4)", rep.signed_spread, 1e-2),
        _check(
            "signed halving",
            0.0 if rep.signed_spread_halved <= max(0.62 * rep.signed_spread, 1e-9) else 1.0,
            0.5,
        ),
        _check("normalization applied", 0.0 if inv is None else 1.0, None),
    ]
    return rows


def _suite_pencil(sf: SceneFile) -> list[dict]:
    scene = sf.scene
    pairs = sf.pairs
    if pairs is None:
        pairs = PairSequence.from_base(
            scene.delta, scene.alpha0, scene.alpha1, (1.0, 0.85, 1.1), (1.0, 1.1, 0.9)
        )
    rep = verify_prop3(pairs, scene.delta)
    rows = [
        _check("proportional measures ratio spread", rep.ratio_spread, 1e-10),
        _check("pencil product identity", rep.identity_residual, 1e-10),
    ]
    try:
        import itertools

        verdicts = set()
        n = len(pairs)
        perms = list(itertools.permutations(range(n)))[:6]
        for perm in perms:
            for th in (0.3, 2.1, 4.4):
                g = run_generalized_series(
                    pairs, scene.delta, scene.delta.point_at(th), order=perm, index=scene.index
                )
                verdicts.add((g.closed, g.n))
        rows.append(_check("generalized closure verdict count", float(len(verdicts) - 1), 0.5))
    except (NotNested, SeriesBlocked, GeometryError) as exc:
        rows.append({"name": f"generalized series skipped ({exc})", "value": 0.0, "threshold": None, "pass": True})
    return rows


def _suite_quadric(sf: SceneFile) -> list[dict]:
    scene = sf.scene
    w1 = _resolve_start(sf)
    series, _ = run_series(scene, w1, max_steps=8, compute_masses=False)
    if len(series.steps) < 4:
        raise SeriesBlocked("need at least 4 steps for the quadric suite")
    chords = [chord_line(s.start, s.end) for s in series.steps]
    der = derive_poncelet_quadric(scene.alpha0, scene.alpha1, scene.delta, chords[0], chords[1])
    der2 = derive_poncelet_quadric(scene.alpha0, scene.alpha1, scene.delta, chords[2], chords[3])
    seed_dist = max(
        abs(u - v)
        for u, v in zip(der.quadric.normalized().coeffs(), der2.quadric.normalized().coeffs())
    )
    worst = max(abs(line_tangency_residual(der.quadric, c)) for c in chords)
    rows = [
        _check("pencil parameter", der.a_p, None),
        _check("chord tangency residual", worst, 1e-8),
        _check("chord-seed independence", seed_dist, 1e-8),
    ]
    circ = der.quadric.as_circle()
    if circ is not None:
        rows.append(_check("conic radius", circ.radius, None))
    return rows


def _suite_cyclic(sf: SceneFile) -> list[dict]:
    scene = sf.scene
    curve = Cyclic.from_pair(scene.alpha0, scene.alpha1)
    worst = 0.0
    for k in range(1000):
        p = Point(3.0 * math.sin(k * 0.7512), 3.0 * math.cos(k * 1.1931))
        lhs = curve(p)
        rhs = scene.alpha0.power(p) * scene.alpha1.power(p)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    rows = [_check("product-of-powers identity", worst, 1e-12)]
    spread = 0.0
    for j in range(50):
        a_p = -5.0 + 0.2 * j
        ew = equivalence_witness(curve, scene.delta, a_p)
        spread = max(spread, ew.spread)
    rows.append(_check("equivalent-pencil ratio spread (50 members)", spread, 1e-10))
    pen = equivalent_pencil(curve, scene.delta)
    inf_member = pencil_member(pen, math.inf)
    if isinstance(inf_member, Circle):
        dist = max(
            inf_member.center.dist(scene.delta.center),
            abs(inf_member.radius - scene.delta.radius),
        )
    else:
        dist = math.inf
    rows.append(_check("member at infinity is the carrier", dist, 1e-10))
    w1 = _resolve_start(sf)
    rep = verify_prop1_prime(curve, w1.circle, w1.touch0, w1.touch1)
    rows.append(_check("restriction vs squared chord distance", rep.max_rel_deviation, 1e-9))
    return rows


_SUITE_FNS = {
    "measure": _suite_measure,
    "prop1": _suite_prop1,
    "signed": _suite_signed,
    "pencil": _suite_pencil,
    "quadric": _suite_quadric,
    "cyclic": _suite_cyclic,
}


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(f"error: unknown suite {args.suite!r} (choose from {', '.join(SUITES)})", file=sys.stderr)
        return 1
    try:
        sf = _load(args.scene)
        rows = _SUITE_FNS[args.suite](sf)
    except (SceneError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    width = max(len(r["name"]) for r in rows) + 2
    lines = []
    for r in rows:
        thr = "-" if r["threshold"] is None else format(r["threshold"], ".3g")
        status = "PASS" if r["pass"] else "FAIL"
        lines.append(f"{r['name']:<{width}} {format(r['value'], '.6g'):>12}  (<= {thr:>8})  {status}")
    table = "\n".join(lines)
    print(table)
    if args.out:
        payload = {"kind": "verify-report", "suite": args.suite, "version": __version__,
                   "scene_hash": scene_hash(sf), "checks": rows}
        _write(args.out, dumps_canonical(payload))
    return 0 if all(r["pass"] for r in rows) else 3


# --------------------------------- scan ------------------------------------


_VARY_TARGETS = {
    "delta.radius": ("delta", "radius"),
    "alpha0.radius": ("alpha0", "radius"),
    "alpha1.radius": ("alpha1", "radius"),
}


def _scene_with(scene: Scene, target: str, value: float) -> Scene:
    label, _ = _VARY_TARGETS[target]
    circle = getattr(scene, label)
    return replace(scene, **{label: Circle(circle.center, value)})


def _rotation_at(scene: Scene, target: str, value: float) -> float:
    s = _scene_with(scene, target, value)
    last = None
    for th in _DEFAULT_START_ANGLES:
        try:
            w1 = start_circle(s, s.delta.point_at(th))
            return rotation_number(s, w1)
        except NotNested:
            raise
        except GeometryError as exc:
            last = exc
    raise last if last is not None else GeometryError("no admissible start")


def _closure_at(scene: Scene, target: str, value: float, max_steps: int):
    s = _scene_with(scene, target, value)
    for th in _DEFAULT_START_ANGLES:
        try:
            w1 = start_circle(s, s.delta.point_at(th))
            return run_series(s, w1, max_steps=max_steps)
        except GeometryError:
            continue
    return None


def _fmt_cell(x) -> str:
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return dumps_canonical(x)
    return str(x)


def cmd_scan(args) -> int:
    try:
        sf = _load(args.scene)
    except SceneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.vary not in _VARY_TARGETS:
        print(f"error: unknown scan target {args.vary!r}", file=sys.stderr)
        return 1
    lo, hi = args.lo, args.hi
    if not (lo < hi):
        print("error: --from must be smaller than --to", file=sys.stderr)
        return 1
    rows: list[dict] = []
    samples = max(args.samples, 0)
    values = [lo + (hi - lo) * j / (samples - 1) for j in range(samples)] if samples > 1 else (
        [lo] if samples == 1 else []
    )
    for v in values:
        row = {"parameter": v, "rotation": None, "closed": None, "n": None,
               "winding": None, "residual": None, "note": ""}
        try:
            row["rotation"] = _rotation_at(sf.scene, args.vary, v)
        except NotNested:
            row["note"] = "not-nested"
        except GeometryError:
            row["note"] = "blocked"
        if row["rotation"] is not None and args.closure:
            out = _closure_at(sf.scene, args.vary, v, args.steps)
            if out is not None:
                _, closure = out
                row["closed"] = closure.closed
                row["n"] = closure.n
                row["winding"] = closure.winding
                row["residual"] = closure.residual if math.isfinite(closure.residual) else None
        rows.append(row)

    if args.target_n:
        found = _bisect_target(sf.scene, args.vary, rows, args.target_n, args.steps)
        if found is not None:
            rows.append(found)

    header = "parameter,rotation,closed,n,winding,residual,note"
    lines = [header]
    for row in rows:
        lines.append(",".join(_fmt_cell(row[k]) for k in
                              ("parameter", "rotation", "closed", "n", "winding", "residual", "note")))
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def _bisect_target(scene: Scene, target: str, rows: list[dict], n: int, max_steps: int) -> dict | None:
    goal = 1.0 / n
    valid = [(r["parameter"], r["rotation"]) for r in rows if r["rotation"] is not None]
    if len(valid) < 2:
        return None

    def g(x: float) -> float:
        return _rotation_at(scene, target, x) - goal

    root = None
    for (x0, r0), (x1, r1) in zip(valid, valid[1:]):
        if (r0 - goal) * (r1 - goal) < 0.0:
            root = opt.brentq(g, x0, x1, xtol=1e-12, rtol=8.9e-16)
            break
    if root is None:
        # no crossing: the target sits at a tangential extremum of the
        # rotation number; recenter a parabola fit on a shrinking stencil
        x_best = min(valid, key=lambda t: abs(t[1] - goal))[0]
        h = (valid[1][0] - valid[0][0]) * 0.5
        while h > 5e-6:
            try:
                gm, g0, gp = g(x_best - h), g(x_best), g(x_best + h)
            except GeometryError:
                return None
            denom = gp - 2.0 * g0 + gm
            if denom == 0.0 or not math.isfinite(denom):
                break
            shift = -0.5 * h * (gp - gm) / denom
            x_best += max(-h, min(h, shift))
            h *= 0.1
        try:
            if abs(g(x_best)) > 1e-6:
                return None
        except GeometryError:
            return None
        root = x_best
    out = _closure_at(scene, target, root, max_steps)
    row = {"parameter": root, "rotation": None, "closed": None, "n": None,
           "winding": None, "residual": None, "note": f"target-n={n}"}
    try:
        row["rotation"] = _rotation_at(scene, target, root)
    except GeometryError:
        pass
    if out is not None:
        _, closure = out
        row["closed"] = closure.closed
        row["n"] = closure.n
        row["winding"] = closure.winding
        row["residual"] = closure.residual if math.isfinite(closure.residual) else None
    return row


def cmd_render(args) -> int:
    import json

    try:
        with open(args.report, "r", encoding="utf-8") as fh:
            report = json.load(fh)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if report.get("kind") != "run-report" or "scene" not in report:
        print("error: not a run report", file=sys.stderr)
        return 1
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(render_report(report))
    return 0


def cmd_validate(args) -> int:
    try:
        sf = _load(args.scene)
    except SceneError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    print(f"ok: scene hash {scene_hash(sf)}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="porism", description=__doc__)
    parser.add_argument("--version", action="version", version=f"porism {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="construct a circular series and report it")
    p_run.add_argument("scene")
    p_run.add_argument("--steps", type=int, default=256)
    p_run.add_argument("--direction", choices=(CCW, CW), default=CCW)
    p_run.add_argument("--out", default=None, help="report JSON path (default stdout)")
    p_run.add_argument("--svg", default=None, help="also write an SVG figure")
    p_run.add_argument("--no-masses", action="store_true", help="skip step-mass quadrature")
    p_run.set_defaults(fn=cmd_run)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("scene")
    p_verify.add_argument("--suite", required=True)
    p_verify.add_argument("--out", default=None, help="write the check table as JSON")
    p_verify.set_defaults(fn=cmd_verify)

    p_scan = sub.add_parser("scan", help="scan a scene parameter")
    p_scan.add_argument("scene")
    p_scan.add_argument("--vary", required=True)
    p_scan.add_argument("--from", dest="lo", type=float, required=True)
    p_scan.add_argument("--to", dest="hi", type=float, required=True)
    p_scan.add_argument("--samples", type=int, default=16)
    p_scan.add_argument("--target-n", type=int, default=None)
    p_scan.add_argument("--steps", type=int, default=72, help="closure horizon per sample")
    p_scan.add_argument("--closure", action="store_true", help="also run closure at each sample")
    p_scan.add_argument("--out", default=None, help="CSV path (default stdout)")
    p_scan.set_defaults(fn=cmd_scan)

    p_render = sub.add_parser("render", help="render an SVG from a stored report")
    p_render.add_argument("report")
    p_render.add_argument("--svg", required=True)
    p_render.set_defaults(fn=cmd_render)

    p_validate = sub.add_parser("validate", help="validate a scene file")
    p_validate.add_argument("scene")
    p_validate.set_defaults(fn=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SeriesBlocked as exc:
        print(f"blocked: {exc}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
