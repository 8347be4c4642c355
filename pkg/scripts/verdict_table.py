#!/usr/bin/env python3
"""Conditions and verdicts for a list of (field, uniformizer) pairs."""
import argparse
from dataclasses import dataclass, field

from ltforge.finiteness import GroupClass, condition_mu, condition_W, make_pair, verdict
from ltforge.padic import make_field


@dataclass
class PairRow:
    label: str
    p: int
    e_poly: list | None = None
    pi: int | None = None
    d_G: int | None = None


@dataclass
class TableConfig:
    rows: list = field(default_factory=lambda: [
        PairRow("(Q_2, 2)", 2),
        PairRow("(Q_2, -2)", 2, pi=-2),
        PairRow("(Q_3, 3)", 3),
        PairRow("(Q_5, 5)", 5),
        PairRow("(Q_5, 30)", 5, e_poly=[-30, 1]),
        PairRow("(Q_5, 10)", 5, pi=10),
        PairRow("(Q_2(sqrt2), sqrt2)", 2, e_poly=[-2, 0, 1], d_G=2),
        PairRow("(Q_5(5^1/3), 5^1/3)", 5, e_poly=[-5, 0, 0, 1]),
    ])


def main(cfg: TableConfig) -> None:
    classes = list(GroupClass)
    head = f"{'pair':<24}{'Nr':>6}{'d_G':>5}  {'W':<6}{'mu':<6}" + "".join(f"{c.value:<22}" for c in classes)
    print(head)
    print("-" * len(head))
    for row in cfg.rows:
        k = make_field(row.p, e_poly=row.e_poly)
        pair = make_pair(k, None if row.pi is None else k.from_rational(row.pi), row.d_G)
        W, mu = condition_W(pair).holds, condition_mu(pair).holds
        cells = "".join(f"{verdict(pair, c).verdict.value:<22}" for c in classes)
        print(f"{row.label:<24}{str(pair.nr):>6}{pair.d_G:>5}  {str(W):<6}{str(mu):<6}{cells}")


if __name__ == "__main__":
    argparse.ArgumentParser(description=__doc__).parse_args()
    main(TableConfig())
