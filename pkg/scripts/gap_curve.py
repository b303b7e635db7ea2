"""Heuristic gap and runtimes as the number of sensors grows.

    python scripts/gap_curve.py --nodes 20 --components 30 --b1-max 4 -o gap.csv
"""

import argparse
import sys
from dataclasses import dataclass

from netinspect.cli import gap_curve_rows, rows_to_csv
from netinspect.generate import generate_instance


@dataclass
class GapCurveConfig:
    seed: int = 7
    nodes: int = 20
    components: int = 30
    overlap_p: float = 0.12
    b1_max: int = 4
    b2: int = 1
    accuracy_step: float = 0.05
    exact: str = "colgen"


def run(cfg: GapCurveConfig) -> str:
    template = generate_instance(cfg.seed, cfg.nodes, cfg.components, 1, cfg.b2,
                                 overlap="random", p=cfg.overlap_p)
    rows = gap_curve_rows(template, list(range(1, cfg.b1_max + 1)), b2=cfg.b2,
                          step=cfg.accuracy_step, exact=cfg.exact)
    return rows_to_csv(rows)


def main():
    cfg = GapCurveConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(cfg).items():
        ap.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    ap.add_argument("-o", "--output")
    args = ap.parse_args()
    out = args.output
    text = run(GapCurveConfig(**{k: getattr(args, k) for k in vars(cfg)}))
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
