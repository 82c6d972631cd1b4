"""Run the exhaustive shape censuses and print one JSON report per census.

    python3 scripts/census.py --max-rank 9
"""

import argparse
import json
from dataclasses import dataclass

from medial.harness import closure_report, interchange_report, quad_form_report, representability_report


@dataclass
class CensusConfig:
    max_rank: int = 8
    interchange_rank: int = 8
    quad_rank: int = 9


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-rank", type=int, default=CensusConfig.max_rank, help="representability census rank")
    ap.add_argument("--interchange-rank", type=int, default=CensusConfig.interchange_rank)
    ap.add_argument("--quad-rank", type=int, default=CensusConfig.quad_rank)
    args = ap.parse_args()
    cfg = CensusConfig(args.max_rank, args.interchange_rank, args.quad_rank)
    reports = [
        representability_report(cfg.max_rank),
        interchange_report(cfg.interchange_rank),
        quad_form_report(cfg.quad_rank),
        closure_report(),
    ]
    for r in reports:
        print(json.dumps(r.to_json(), sort_keys=True))
    return 0 if all(r.ok for r in reports) else 1


if __name__ == "__main__":
    raise SystemExit(main())
