"""Deterministic raw-SVG rendering of 2-D staircase diagrams.

Lattice point (a, b) maps to pixel (margin + a*cell, height - margin - b*cell).
Hyperbola levels c are drawn as the curves (x+1)(y+1) = c, sampled at 256
points and clamped to the axis cap; exactly one path element is emitted per
requested level.  Output is a pure function of the inputs (no timestamps, no
dict-order dependence), so files are byte-identical across reruns.

Three-variable ideals are rendered as three labeled panels, one per
2-variable restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import ArityError
from .ideals import MonomialIdeal, UnitIdeal, restrict
from .staircase import staircase_corners

_HYPERBOLA_SAMPLES = 256
_PALETTE = ("#1f6f8b", "#b2533e", "#5a7d2a", "#77498d", "#9b8714")


@dataclass(frozen=True)
class RenderSpec:
    """Staircase figure description: hyperbola levels, axis cap, geometry."""

    levels: tuple[float, ...] = ()
    axis_cap: Optional[int] = None  # lattice units; derived from the data if None
    panel_px: int = 420
    margin_px: int = 46

    def __post_init__(self):
        if self.axis_cap is not None and self.axis_cap < 1:
            raise ValueError("axis cap must be >= 1")
        if self.panel_px < 100:
            raise ValueError("panel too small")


def _fmt(x: float) -> str:
    return format(x, ".2f")


def _auto_cap(ideal: MonomialIdeal, levels: Sequence[float]) -> int:
    cap = 8
    if not ideal.is_zero:
        cap = max(cap, *(e + 2 for g in ideal.generators for e in g))
    for c in levels:
        cap = max(cap, int(c) + 1)
    return cap


class _Panel:
    def __init__(self, spec: RenderSpec, cap: int, x0: float, y0: float):
        self.spec = spec
        self.cap = cap
        self.x0 = x0  # pixel offset of the panel's plot origin
        self.y0 = y0  # pixel y of the lattice origin (bottom-left)
        self.cell = (spec.panel_px - 2 * spec.margin_px) / cap

    def px(self, a: float) -> float:
        return self.x0 + self.spec.margin_px + a * self.cell

    def py(self, b: float) -> float:
        return self.y0 - self.spec.margin_px - b * self.cell


def _panel_elements(
    panel: _Panel,
    ideal: Union[MonomialIdeal, UnitIdeal],
    levels: Sequence[float],
    label: str,
) -> list[str]:
    out = []
    cap = panel.cap
    ox, oy = panel.px(0), panel.py(0)
    ex, ey = panel.px(cap), panel.py(cap)
    if label:
        out.append(
            f'<text x="{_fmt(ox)}" y="{_fmt(ey - 8)}" font-size="13" '
            f'font-family="monospace">{label}</text>'
        )
    if isinstance(ideal, UnitIdeal):
        out.append(
            f'<text x="{_fmt((ox + ex) / 2 - 30)}" y="{_fmt((oy + ey) / 2)}" '
            f'font-size="12" font-family="monospace">unit ideal</text>'
        )
    elif not ideal.is_zero:
        outer, inner = staircase_corners(ideal)
        # boundary polyline: down the first corner, then step across
        pts = [(outer[0][0], cap)]
        for j, (a, b) in enumerate(outer):
            pts.append((a, b))
            nxt = outer[j + 1][0] if j + 1 < len(outer) else cap
            pts.append((nxt, b))
        poly = pts + [(cap, cap)]
        path = " ".join(f"{_fmt(panel.px(a))},{_fmt(panel.py(b))}" for a, b in poly)
        out.append(f'<polygon points="{path}" fill="#d9d9d9" stroke="none"/>')
        line = " ".join(f"{_fmt(panel.px(a))},{_fmt(panel.py(b))}" for a, b in pts)
        out.append(
            f'<polyline points="{line}" fill="none" stroke="#222222" stroke-width="1.4"/>'
        )
        r_out = max(2.4, min(4.5, panel.cell * 0.3))
        for a, b in outer:
            out.append(
                f'<circle cx="{_fmt(panel.px(a))}" cy="{_fmt(panel.py(b))}" '
                f'r="{_fmt(r_out)}" fill="#111111"/>'
            )
        for a, b in inner:
            out.append(
                f'<circle cx="{_fmt(panel.px(a))}" cy="{_fmt(panel.py(b))}" '
                f'r="{_fmt(r_out)}" fill="#ffffff" stroke="#111111" stroke-width="1.1"/>'
            )
    # hyperbolas (x+1)(y+1) = c, one path per level, clamped to the axes box
    for idx, c in enumerate(levels):
        color = _PALETTE[idx % len(_PALETTE)]
        cmds = []
        for i in range(_HYPERBOLA_SAMPLES + 1):
            x = cap * i / _HYPERBOLA_SAMPLES
            y = c / (x + 1.0) - 1.0
            y = min(max(y, 0.0), float(cap))
            cmds.append(("M" if not cmds else "L")
                        + f"{_fmt(panel.px(x))},{_fmt(panel.py(y))}")
        out.append(
            f'<path d="{" ".join(cmds)}" fill="none" stroke="{color}" '
            f'stroke-width="1.2" stroke-dasharray="5,3"/>'
        )
        out.append(
            f'<text x="{_fmt(ex - 40)}" y="{_fmt(panel.py(c / (cap + 1.0) - 1.0) - 4 - 12 * idx)}" '
            f'font-size="11" font-family="monospace" fill="{color}">c={_fmt(c)}</text>'
        )
    # axes on top (polyline, so <path> elements are exactly the hyperbolas)
    out.append(
        f'<polyline points="{_fmt(ox)},{_fmt(ey)} {_fmt(ox)},{_fmt(oy)} '
        f'{_fmt(ex)},{_fmt(oy)}" fill="none" stroke="#000000" stroke-width="1"/>'
    )
    out.append(
        f'<text x="{_fmt(ex - 10)}" y="{_fmt(oy + 16)}" font-size="11" '
        f'font-family="monospace">{cap}</text>'
    )
    out.append(
        f'<text x="{_fmt(ox - 28)}" y="{_fmt(ey + 10)}" font-size="11" '
        f'font-family="monospace">{cap}</text>'
    )
    return out


def staircase_svg(
    ideal: MonomialIdeal,
    spec: RenderSpec = RenderSpec(),
) -> str:
    """SVG document for a 2-variable staircase, or restriction panels for n == 3."""
    if ideal.n == 2:
        panels = [(ideal, "")]
    elif ideal.n == 3:
        panels = [
            (restrict(ideal, T), "I restricted to x%d,x%d" % (T[0] + 1, T[1] + 1))
            for T in ((0, 1), (0, 2), (1, 2))
        ]
    else:
        raise ArityError(f"staircase rendering needs n in (2, 3), got {ideal.n}")
    caps = []
    for sub, _ in panels:
        if isinstance(sub, UnitIdeal):
            caps.append(8)
        else:
            caps.append(spec.axis_cap or _auto_cap(sub, spec.levels))
    cap = max(caps)
    width = spec.panel_px * len(panels)
    height = spec.panel_px
    body = []
    for i, (sub, label) in enumerate(panels):
        panel = _Panel(spec, cap, i * spec.panel_px, height)
        body.extend(_panel_elements(panel, sub, spec.levels, label))
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        *body,
        "</svg>",
    ]
    return "\n".join(parts) + "\n"
