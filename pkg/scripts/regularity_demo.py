"""Build and verify regular partitions on a few graphs across a grid of eps."""

import argparse
from dataclasses import dataclass, field

from srglab.families import from_spec
from srglab.regularity import build_partition, density_dichotomy, verify_partition


@dataclass
class DemoConfig:
    graphs: list[tuple[str, int]] = field(
        default_factory=lambda: [("cliques:4x50", 4), ("~cliques:4x50", 4), ("paley:401", 8)])
    eps: list[float] = field(default_factory=lambda: [0.1, 0.2, 0.25, 0.3])
    seed: int = 0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    cfg = DemoConfig(seed=ap.parse_args().seed)
    print(f"{'graph':<15}{'l':>3}{'eps':>6}{'p':>4}{'t':>5}{'|V0|':>6}{'falsified':>11}"
          f"{'(i)':>6}{'(ii)':>6}{'low/high/mid':>15}")
    for spec, l in cfg.graphs:
        g = from_spec(spec)
        for eps in cfg.eps:
            P = build_partition(g, l, eps, seed=cfg.seed)
            rep = verify_partition(g, P, eps, seed=cfg.seed)
            labels = [pc.label for pc in density_dichotomy(rep, eps)]
            counts = "/".join(str(labels.count(x)) for x in ("Low", "High", "Middle"))
            print(f"{spec:<15}{l:>3}{eps:>6}{rep.p:>4}{rep.t:>5}{rep.v0_size:>6}"
                  f"{len(rep.falsified_pairs):>11}{str(rep.condition_i):>6}"
                  f"{str(rep.condition_ii):>6}{counts:>15}")


if __name__ == "__main__":
    main()
