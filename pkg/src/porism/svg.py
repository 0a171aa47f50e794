"""SVG rendering of run reports.

Rendering is a pure function of the report dictionary: no geometry is
recomputed, so figures can be regenerated offline from a stored report.
"""

from __future__ import annotations


def _f(x: float) -> str:
    return format(x, ".6f")


def _svg_circle(cx, cy, r, stroke, width="0.01", dash=None, opacity="1") -> str:
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return (
        f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(r)}" fill="none" '
        f'stroke="{stroke}" stroke-width="{width}" opacity="{opacity}"{extra}/>'
    )


def _svg_dot(cx, cy, r, fill) -> str:
    return f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(r)}" fill="{fill}"/>'


def _svg_line(x1, y1, x2, y2, stroke, width="0.008") -> str:
    return (
        f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
        f'stroke="{stroke}" stroke-width="{width}"/>'
    )


def render_report(report: dict) -> str:
    """Figure with the base circles, carrier, chain circles, chords, and points."""
    scene = report["scene"]
    circles = [scene["alpha0"], scene["alpha1"], scene["delta"]]
    steps = report.get("steps", [])
    all_circles = circles + [s["circle"] for s in steps]
    xs = [c["center"][0] + s * c["radius"] for c in all_circles for s in (-1, 1)]
    ys = [c["center"][1] + s * c["radius"] for c in all_circles for s in (-1, 1)]
    pad = 0.08 * max(max(xs) - min(xs), max(ys) - min(ys))
    x0, y0 = min(xs) - pad, min(ys) - pad
    w, h = (max(xs) - min(xs)) + 2 * pad, (max(ys) - min(ys)) + 2 * pad
    stroke_w = _f(max(w, h) / 400.0)
    thin_w = _f(max(w, h) / 700.0)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="640" height="640" '
        f'viewBox="{_f(x0)} {_f(y0)} {_f(w)} {_f(h)}">',
        # flip the y axis so the figure is in math orientation
        f'<g transform="translate(0 {_f(2 * y0 + h)}) scale(1 -1)">',
    ]
    a0, a1, d = scene["alpha0"], scene["alpha1"], scene["delta"]
    parts.append(_svg_circle(*a0["center"], a0["radius"], "#1f77b4", stroke_w))
    parts.append(_svg_circle(*a1["center"], a1["radius"], "#1f77b4", stroke_w))
    parts.append(_svg_circle(*d["center"], d["radius"], "#000000", stroke_w, dash=_f(w / 80.0)))
    for s in steps:
        c = s["circle"]
        parts.append(_svg_circle(*c["center"], c["radius"], "#ff7f0e", thin_w, opacity="0.85"))
    for s in steps:
        parts.append(_svg_line(*s["start"], *s["end"], "#888888", thin_w))
    dot = max(w, h) / 180.0
    for s in steps:
        parts.append(_svg_dot(*s["touch0"], dot * 0.7, "#2ca02c"))
        parts.append(_svg_dot(*s["touch1"], dot * 0.7, "#d62728"))
    for s in steps:
        parts.append(_svg_dot(*s["start"], dot, "#000000"))
    if steps:
        parts.append(_svg_dot(*steps[-1]["end"], dot, "#000000"))
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
