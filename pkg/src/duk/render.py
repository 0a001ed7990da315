"""SVG drawings of disk configurations: disks, centers, origin and gap angles."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

from duk.geometry import DiskConfig, argument_order, to_polar

MAX_DISKS = 12
_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
            "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939")


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def render_svg(config: DiskConfig, size: int = 480) -> str:
    """SVG text for ``config``; the viewport is the disks' bounding box plus 10%."""
    if config.n > MAX_DISKS:
        raise ValueError(f"can render at most {MAX_DISKS} disks")
    config = config.permuted(argument_order(config))
    cs, rs = config.centers, config.radii
    x0 = min(c.x - r for c, r in zip(cs, rs))
    x1 = max(c.x + r for c, r in zip(cs, rs))
    y0 = min(c.y - r for c, r in zip(cs, rs))
    y1 = max(c.y + r for c, r in zip(cs, rs))
    pad = 0.1 * max(x1 - x0, y1 - y0)
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    w, h = x1 - x0, y1 - y0
    unit = max(w, h)
    dot = 0.008 * unit
    stroke = 0.003 * unit
    font = 0.035 * unit

    # SVG y grows downwards; flip every y coordinate
    def P(x, y):
        return _fmt(x), _fmt(-y)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{_fmt(size * h / w)}" '
        f'viewBox="{_fmt(x0)} {_fmt(-y1)} {_fmt(w)} {_fmt(h)}">',
        f'<g stroke-width="{_fmt(stroke)}">',
    ]
    for k, (c, r) in enumerate(zip(cs, rs)):
        col = _PALETTE[k % len(_PALETTE)]
        cx, cy = P(c.x, c.y)
        out.append(f'<circle class="disk" cx="{cx}" cy="{cy}" r="{_fmt(r)}" '
                   f'fill="{col}" fill-opacity="0.18" stroke="{col}"/>')
    for k, c in enumerate(cs):
        cx, cy = P(c.x, c.y)
        out.append(f'<circle class="center" cx="{cx}" cy="{cy}" r="{_fmt(dot)}" fill="black"/>')
        out.append(f'<text x="{cx}" y="{cy}" dx="{_fmt(dot * 1.5)}" font-size="{_fmt(font)}">'
                   f'{escape(f"r{k + 1}")}</text>')
        out.append(f'<line class="ray" x1="0" y1="0" x2="{cx}" y2="{cy}" stroke="gray" '
                   f'stroke-dasharray="{_fmt(4 * stroke)}"/>')
    out.append(f'<circle class="origin" cx="0" cy="0" r="{_fmt(1.5 * dot)}" fill="white" stroke="black"/>')

    if config.n >= 2:
        try:
            params = to_polar(config)
        except ValueError:
            params = None
        if params is not None:
            gaps = list(params.theta) + [2 * math.pi - math.fsum(params.theta)]
            rho = 0.25 * min(rs)
            start = params.theta0
            for k, g in enumerate(gaps):
                a, b = start, start + g
                ax, ay = P(rho * math.cos(a), rho * math.sin(a))
                bx, by = P(rho * math.cos(b), rho * math.sin(b))
                large = 1 if g > math.pi else 0
                out.append(f'<path class="gap" d="M {ax} {ay} A {_fmt(rho)} {_fmt(rho)} 0 {large} 0 {bx} {by}" '
                           f'fill="none" stroke="black"/>')
                m = a + 0.5 * g
                lx, ly = P(1.35 * rho * math.cos(m), 1.35 * rho * math.sin(m))
                out.append(f'<text class="gap-label" x="{lx}" y="{ly}" font-size="{_fmt(0.8 * font)}" '
                           f'text-anchor="middle">θ{k + 1}</text>')
                start = b
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
