"""Check every finite basis identity against the integer-operation oracle and
search for short mutation-law derivations of sample interchange laws.

    python3 scripts/finite_bases.py --depth 5
"""

import argparse
from dataclasses import dataclass

from medial.groups import oracle_in_sigma_K
from medial.rewrite import MUTATION_LAWS, TABLE1, bounded_search


@dataclass
class BasesConfig:
    depth: int = 5
    samples: tuple = ("(xy)(zt)=(tz)(yx)", "(((xy)z)t)u=(((xy)u)t)z", "u(v(((xy)z)t))=x(v(((uy)z)t))")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=BasesConfig.depth)
    cfg = BasesConfig(ap.parse_args().depth)
    failures = 0
    for k in sorted(TABLE1, key=lambda s: (len(s), sorted(s))):
        names = []
        for name, e in TABLE1[k]:
            ok = oracle_in_sigma_K(e, k)
            failures += not ok
            names.append(name + ("" if ok else "!"))
        print(f"K={{{','.join(map(str, sorted(k)))}}}: {' '.join(names)}")
    for text in cfg.samples:
        tr = bounded_search(text, MUTATION_LAWS, cfg.depth)
        steps = "none" if tr is None else " ".join(s.rule for s in tr.steps)
        print(f"{text}: {steps}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
