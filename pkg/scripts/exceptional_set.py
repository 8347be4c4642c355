#!/usr/bin/env python3
"""Print the exceptional set of norms over Q_p."""
import argparse
from dataclasses import dataclass

from ltforge.finiteness import exceptional_set
from ltforge.padic import qp


@dataclass
class ExceptionalConfig:
    p: int = 2
    f: int = 1
    g: int = 1


def _poly(c) -> str:
    return "[" + ", ".join(str(x) for x in c) + "]"


def main(cfg: ExceptionalConfig) -> None:
    W = exceptional_set(cfg.f, cfg.g, qp(cfg.p))
    print(f"p = {W.p}, f = {W.f}, g = {W.g}")
    print("explicit part:", ", ".join(_poly(a.min_poly) for a in W.explicit))
    print(f"T_1 ({len(W.t1)} Weil polynomials):", ", ".join(_poly(t) for t in W.t1))
    print(f"degree bound B = {W.bound}")
    print(f"{len(W.equations)} norm equations")
    for eq in W.equations:
        sizes = [len(R) - 1 for _, R, _ in eq.expansions]
        print(f"  beta {_poly(eq.beta)}  m={eq.m}  f_K={eq.f_K}  expanded degrees {sizes}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--f", type=int, default=1)
    ap.add_argument("--g", type=int, default=1)
    a = ap.parse_args()
    main(ExceptionalConfig(a.p, a.f, a.g))
