"""Print the interchange-basis verdict grid for Z_m x Z_n with canonical
generators, marking where the three decision methods disagree.

    python3 scripts/basis_grid.py --max 18
"""

import argparse
import time
from dataclasses import dataclass

from medial.groups import GroupSpec
from medial.spectral import interchange_basis_decision


@dataclass
class GridConfig:
    lo: int = 2
    hi: int = 12


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min", type=int, default=GridConfig.lo)
    ap.add_argument("--max", type=int, default=GridConfig.hi)
    args = ap.parse_args()
    cfg = GridConfig(args.min, args.max)
    t0 = time.perf_counter()
    span = range(cfg.lo, cfg.hi + 1)
    print("m\\n " + " ".join(f"{n:>2}" for n in span))
    bad = 0
    for m in span:
        row = []
        for n in span:
            rep = interchange_basis_decision(GroupSpec(m, n, (1, 0), (0, 1)))
            if not rep.consistent:
                bad += 1
                row.append(" !")
            else:
                row.append(" Y" if rep.verdict else " .")
        print(f"{m:>3} " + " ".join(row))
    print(f"Y = interchange laws form a basis; '!' = methods disagree ({bad}); {time.perf_counter() - t0:.2f} s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
