#!/usr/bin/env python3
"""Slope tables for the torsion tower of pi*X + X^q over a few fields."""
import argparse
from dataclasses import dataclass, field

from ltforge.lubin_tate import default_frobenius, torsion_newton_polygon
from ltforge.padic import make_field


@dataclass
class TowerConfig:
    levels: int = 3
    fields: list = field(default_factory=lambda: [
        ("Q_2", 2, None, None),
        ("Q_3", 3, None, None),
        ("Q_5", 5, None, None),
        ("Q_2(sqrt2)", 2, None, [-2, 0, 1]),
        ("Q_9", 3, [1, 0, 1], None),
    ])


def main(cfg: TowerConfig) -> None:
    for name, p, u, e in cfg.fields:
        phi = default_frobenius(make_field(p, u, e, name))
        print(f"{name}  (q = {phi.q})")
        for n in range(1, cfg.levels + 1):
            r = torsion_newton_polygon(phi, n)
            new = ", ".join(f"{s} x{c}" for s, c in r.new_slopes)
            print(f"  level {n}: {r.total:>5} roots, new slopes {new}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", type=int, default=TowerConfig.levels)
    main(TowerConfig(levels=ap.parse_args().levels))
