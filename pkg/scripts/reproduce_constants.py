#!/usr/bin/env python
"""Compute c2 and c3 by quadrature and by Monte Carlo, and compare with published values."""
from __future__ import annotations

import argparse
import json
import math
import time

from duk.oracle import mc_c_n
from duk.quadrature import C2_PUBLISHED, C2_TAO_WU, C3_PUBLISHED, C3_TAO_WU, c2, c3


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--samples", type=int, default=10**7)
    p.add_argument("--radius", type=float, default=3.0)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--json", action="store_true", help="print a JSON summary instead of a table")
    args = p.parse_args()

    rows = []
    for n, published, older in ((2, C2_PUBLISHED, C2_TAO_WU), (3, C3_PUBLISHED, C3_TAO_WU)):
        t0 = time.perf_counter()
        parts: dict = {}
        quad = c2() if n == 2 else c3(parts=parts)
        t_quad = time.perf_counter() - t0
        t0 = time.perf_counter()
        mc = mc_c_n(n, args.samples, args.radius, args.seed)
        t_mc = time.perf_counter() - t0
        rows.append(
            {
                "n": n,
                "quadrature": quad.to_dict(),
                "quadrature_seconds": t_quad,
                "parts": {k: v.to_dict() for k, v in parts.items()},
                "monte_carlo": mc.to_dict(),
                "monte_carlo_seconds": t_mc,
                "mc_sigma_from_quadrature": abs(mc.value - quad.value) / mc.std_error,
                "published": published,
                "tao_wu": older,
            }
        )

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    for r in rows:
        q, m = r["quadrature"], r["monte_carlo"]
        print(f"c{r['n']}: quadrature {q['value']:.8f} (+- {q['error_estimate']:.1e}, {q['evaluations']} evals, "
              f"{r['quadrature_seconds']:.2f}s)")
        for name, part in r["parts"].items():
            print(f"      {name} = {part['value']:.8f}")
        print(f"     monte carlo {m['value']:.6f} +- {m['std_error']:.6f} "
              f"({r['mc_sigma_from_quadrature']:.2f} sigma, {r['monte_carlo_seconds']:.1f}s)")
        print(f"     published {r['published']}, Tao & Wu {r['tao_wu']}, "
              f"diff {q['value'] - r['published']:+.2e} / {q['value'] - r['tao_wu']:+.2e}")
        if not math.isfinite(q["value"]):
            raise SystemExit(1)


if __name__ == "__main__":
    main()
