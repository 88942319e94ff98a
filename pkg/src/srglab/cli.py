"""``srglab`` command line.

Exit codes: 0 success or property holds, 1 checked property fails,
2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from srglab import asymptotics, counting, instances, regularity
from srglab._exact import render
from srglab.families import (
    SPEC_GRAMMAR,
    SpecError,
    SrgParams,
    _is_prime,
    eigen_feasibility,
    from_spec,
    verify_srg,
)
from srglab.graph import Graph, GraphFormatError, atomic_write, format_edgelist, read_edgelist

OK, FAIL, USAGE = 0, 1, 2
LEMMAS = ("xsec", "xsec1", "xsec2", "xple2", "dle", "lebs")
_INSTANCE_KIND = {"xsec": "random", "xsec1": "random", "xsec2": "random",
                  "xple2": "tripartite", "dle": "random-multi", "lebs": "random-multi"}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    target: str = ""
    eps: float = 0.1
    r: int = 1
    seed: int = 0
    trials: int = 8
    rounds: int = regularity.DEFAULT_ROUNDS
    out: str | None = None
    format: str = "json"


def _json_default(x):
    if isinstance(x, Fraction):
        return render(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.bool_):
        return bool(x)
    raise TypeError(f"not serialisable: {type(x).__name__}")


def _document(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, default=_json_default) + "\n"
    lines = []

    def walk(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}{k}.", v)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for i, v in enumerate(value):
                walk(f"{prefix}{i}.", v)
        else:
            lines.append(f"{prefix[:-1]} = {json.dumps(value, default=_json_default)}")

    walk("", doc)
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _config(args, command: str, target: str = "") -> RunConfig:
    return RunConfig(command, target,
                     eps=getattr(args, "eps", 0.1), r=getattr(args, "r", 1),
                     seed=args.seed, trials=getattr(args, "trials", 8),
                     rounds=getattr(args, "rounds", regularity.DEFAULT_ROUNDS),
                     out=getattr(args, "out", None), format=getattr(args, "format", "json"))


def _family(spec: str) -> Graph:
    try:
        return from_spec(spec)
    except SpecError as exc:
        raise UsageError(f"{exc}\naccepted grammar: {SPEC_GRAMMAR}") from exc


def _load_graph(target: str) -> Graph:
    """An edge-list path if the file exists, otherwise a family spec."""
    if os.path.exists(target):
        return read_edgelist(target)
    return _family(target)


# -- commands ------------------------------------------------------------


def cmd_gen(args) -> int:
    g = _family(args.spec)
    verdict = verify_srg(g)
    if args.out:
        atomic_write(args.out, format_edgelist(g))
    print(verdict)
    return OK if verdict.ok else FAIL


def cmd_verify(args) -> int:
    g = read_edgelist(args.graph)
    verdict = verify_srg(g)
    print(verdict)
    return OK if verdict.ok else FAIL


def _sizes(family: str, sizes: list[str], upto: int | None) -> list[str]:
    if upto is None:
        return sizes
    name = family.lstrip("~")
    if name == "paley":
        extra = [q for q in range(5, upto + 1) if q % 4 == 1 and _is_prime(q)]
    elif name == "triangular":
        extra = list(range(4, upto + 1))
    elif name == "lattice":
        extra = list(range(2, upto + 1))
    else:
        raise UsageError("--upto is not defined for cliques; list RxM sizes explicitly")
    return sizes + [str(x) for x in extra]


def cmd_sweep(args) -> int:
    if args.family.lstrip("~") not in ("paley", "triangular", "lattice", "cliques"):
        raise UsageError(f"unknown family {args.family!r}")
    sizes = _sizes(args.family, args.sizes, args.upto)
    try:
        rows = asymptotics.family_sweep(args.family, sizes)
    except SpecError as exc:
        raise UsageError(str(exc)) from exc
    _emit(asymptotics.sweep_csv(rows), args.out)
    return OK


def _lemma_reports(lemma: str, inst: instances.Instance, cfg: RunConfig, tail_r: int):
    g, cl = inst.g, inst.classes
    if lemma in ("xsec", "xsec1"):
        tail = "lower" if lemma == "xsec" else "upper"
        return [counting.xsec_check(g, cl["A"], cl["B"], eps=cfg.eps, r=tail_r, tail=tail,
                                    seed=cfg.seed)]
    if lemma == "xsec2":
        return list(counting.xsec2_check(g, cl["A"], cl["B"], cfg.eps, tail_r, seed=cfg.seed))
    if lemma == "xple2":
        return list(counting.xple2_check(g, cl["A1"], cl["A2"], cl["B"], cfg.eps, seed=cfg.seed))
    Bs = [v for k, v in cl.items() if k.startswith("B")]
    if lemma == "dle":
        return [counting.dle_check(g, cl["A"], Bs, inst.S, cfg.eps, seed=cfg.seed)]
    return [counting.lebs_check(g, cl["A1"], cl["A2"], Bs, inst.S, cfg.eps, seed=cfg.seed)]


def cmd_lemma(args) -> int:
    cfg = _config(args, "lemma", args.instance)
    kind = _INSTANCE_KIND[args.lemma]
    if not args.instance.startswith(kind + ":"):
        raise UsageError(f"lemma {args.lemma} needs a '{kind}:' instance, got {args.instance!r}; "
                         f"grammar: {instances.INSTANCE_GRAMMAR}")
    try:
        inst = instances.from_spec(args.instance, seed=cfg.seed,
                                   kind="lebs" if args.lemma == "lebs" else "dle")
        reports = _lemma_reports(args.lemma, inst, cfg, args.r)
    except counting.BudgetError as exc:
        raise UsageError(str(exc)) from exc
    ok = all(rep.holds or rep.hypothesis == "vacuous" for rep in reports)
    doc = {
        "command": "lemma",
        "lemma": args.lemma,
        "instance": args.instance,
        "epsilon": cfg.eps,
        "r": cfg.r,
        "seed": cfg.seed,
        "verdict": "holds" if ok else "violated",
        "reports": [rep.to_dict() for rep in reports],
    }
    _emit(_document(doc, cfg.format), cfg.out)
    return OK if ok else FAIL


def cmd_regularity(args) -> int:
    cfg = _config(args, "regularity", args.graph)
    g = _load_graph(args.graph)
    if args.l < 1 or 2 * args.l > g.n:
        raise UsageError(f"l={args.l} must satisfy 1 <= l <= n/2 = {g.n / 2:g}")
    try:
        part = regularity.build_partition(g, args.l, cfg.eps, max_rounds=cfg.rounds,
                                          seed=cfg.seed, trials=cfg.trials)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep = regularity.verify_partition(g, part, cfg.eps, trials=cfg.trials, seed=cfg.seed)
    pairs = regularity.density_dichotomy(rep, cfg.eps)
    doc = {"command": "regularity", "graph": args.graph, "l": args.l, "rounds": cfg.rounds,
           "trials": cfg.trials, **rep.to_dict()}
    doc["dichotomy"] = {
        "sqrt_eps": regularity.sqrt_eps(cfg.eps),
        "low": sum(pc.label == "Low" for pc in pairs),
        "high": sum(pc.label == "High" for pc in pairs),
        "middle": sum(pc.label == "Middle" for pc in pairs),
        "all_within_sqrt_eps": all(pc.spread_ok for pc in pairs),
    }
    if args.partition:
        atomic_write(args.partition, part.to_text())
    _emit(_document(doc, cfg.format), cfg.out)
    return OK if rep.condition_i and rep.condition_ii else FAIL


def cmd_feasibility(args) -> int:
    p = SrgParams(args.n, args.k, args.lam, args.mu)
    bad = p.invariant_violations()
    f = eigen_feasibility(p)
    doc = {
        "command": "feasibility",
        "params": str(p),
        "seed": args.seed,
        "invariants": bad or "ok",
        "discriminant": f.discriminant,
        "eigenvalues": list(f.eigenvalues),
        "multiplicities": None if f.multiplicities is None else list(f.multiplicities),
        "conference": f.conference,
        "feasible": f.feasible and not bad,
        "reason": f.reason,
    }
    _emit(_document(doc, args.format), args.out)
    return OK if doc["feasible"] else FAIL


# -- parser --------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="srglab", description="Strongly regular graph toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, *, eps=True, fmt=True):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="output file (default stdout)")
        if eps:
            p.add_argument("--eps", type=float, default=0.1)
        if fmt:
            p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("gen", help="generate a family member as an edge list")
    p.add_argument("spec", help=SPEC_GRAMMAR)
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="brute-force SRG check of an edge-list file")
    p.add_argument("graph")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="deviation sweep over a family, as CSV")
    p.add_argument("family")
    p.add_argument("sizes", nargs="*", help="family sizes (cliques: RxM)")
    p.add_argument("--upto", type=int, default=None, help="add every valid size up to N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv",), default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("lemma", help="exhaustive counting-lemma check")
    p.add_argument("lemma", choices=LEMMAS)
    p.add_argument("instance", help=instances.INSTANCE_GRAMMAR)
    p.add_argument("--r", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("regularity", help="build and verify a regular partition")
    p.add_argument("graph", help="edge-list path or family spec")
    p.add_argument("--l", type=int, required=True, help="initial number of classes")
    p.add_argument("--rounds", type=int, default=regularity.DEFAULT_ROUNDS)
    p.add_argument("--trials", type=int, default=8)
    p.add_argument("--partition", default=None, help="write the partition file here")
    common(p)
    p.set_defaults(func=cmd_regularity)

    p = sub.add_parser("feasibility", help="eigenvalue feasibility of SRG parameters")
    for name in ("n", "k", "lam", "mu"):
        p.add_argument(name, type=int)
    common(p, eps=False)
    p.set_defaults(func=cmd_feasibility)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    except GraphFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
