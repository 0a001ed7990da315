#!/usr/bin/env python
"""Write SVG drawings of a few reference configurations into a directory."""
from __future__ import annotations

import argparse
import math
from pathlib import Path

from duk.geometry import PolarParams, from_polar
from duk.render import render_svg

PI = math.pi

GALLERY = {
    # two disks with a gap below pi/2
    "two_disks": PolarParams(1.0, 0.2, (0.8,), (2 * PI / 5,)),
    # three equal disks meeting only at the origin
    "three_tangent": PolarParams(1.0, PI / 2, (1.0, 1.0), (2 * PI / 3, 2 * PI / 3)),
    # edges of the admissible ratio interval at theta = 5pi/12
    "lower_edge": PolarParams(1.0, 0.0, (2 * math.cos(5 * PI / 12) * 1.001,), (5 * PI / 12,)),
    "upper_edge": PolarParams(1.0, 0.0, (0.999 / (2 * math.cos(5 * PI / 12)),), (5 * PI / 12,)),
    "five_disks": PolarParams(1.0, 0.0, (1.05, 0.95, 1.02, 0.98), (2 * PI / 5,) * 4),
}


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("outdir", type=Path)
    args = p.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name, params in GALLERY.items():
        path = args.outdir / f"{name}.svg"
        path.write_text(render_svg(from_polar(params)), encoding="utf-8")
        print(path)


if __name__ == "__main__":
    main()
