"""Eigenvalues and exact determinant of a multicirculant matrix.

    python3 scripts/spectrum_demo.py --s 2,2 --row=-1,1,1,0
"""

import argparse
from dataclasses import dataclass

import numpy as np

from medial.spectral import MulticirculantSpec, build_multicirculant, eigenvalues


@dataclass
class SpectrumConfig:
    s: tuple = (2, 2)
    row: tuple = (-1, 1, 1, 0)


def _ints(text: str) -> tuple:
    return tuple(int(v) for v in text.split(","))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s", type=_ints, default=SpectrumConfig.s)
    ap.add_argument("--row", type=_ints, default=SpectrumConfig.row)
    args = ap.parse_args()
    spec = MulticirculantSpec(args.s, args.row)
    for line in build_multicirculant(spec):
        print(" ".join(f"{v:>3}" for v in line))
    sp = eigenvalues(spec)
    print("eigenvalues:", np.array2string(np.round(sp.eigenvalues, 9)))
    print("determinant:", sp.exact_determinant)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
