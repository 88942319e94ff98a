"""Finite-size deviations |lambda - k^2/n| and |mu - k^2/n| along SRG families.

Writes one CSV per family into --outdir and prints the last row of each.
"""

import argparse
from dataclasses import dataclass, field
from pathlib import Path

from srglab.asymptotics import family_sweep, sweep_csv
from srglab.families import _is_prime
from srglab.graph import atomic_write


@dataclass
class SweepConfig:
    paley_max: int = 1000
    triangular: list[int] = field(default_factory=lambda: list(range(10, 61)))
    lattice: list[int] = field(default_factory=lambda: list(range(3, 41)))
    cliques: list[str] = field(default_factory=lambda: [f"{r}x5" for r in (2, 4, 8, 16, 32)])
    outdir: Path = Path("results")


def run(cfg: SweepConfig) -> dict[str, Path]:
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    plan = {
        "paley": [q for q in range(5, cfg.paley_max + 1) if q % 4 == 1 and _is_prime(q)],
        "triangular": cfg.triangular,
        "lattice": cfg.lattice,
        "cliques": cfg.cliques,
    }
    out = {}
    for family, sizes in plan.items():
        rows = family_sweep(family, sizes)
        path = cfg.outdir / f"sweep_{family}.csv"
        atomic_write(path, sweep_csv(rows))
        out[family] = path
        last = rows[-1]
        print(f"{family:>10}  n={last.n:<6} dev_lambda/n={float(last.dev_lambda_over_n):.3e}  "
              f"dev_mu/n={float(last.dev_mu_over_n):.3e}  -> {path}")
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--paley-max", type=int, default=SweepConfig.paley_max)
    ap.add_argument("--outdir", type=Path, default=SweepConfig.outdir)
    args = ap.parse_args()
    run(SweepConfig(paley_max=args.paley_max, outdir=args.outdir))


if __name__ == "__main__":
    main()
