"""Seeded random instances for the counting-lemma checks.

Vertices are laid out class by class: the first class is ``0..size-1``,
the next one follows, and so on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from srglab.graph import Graph


@dataclass
class Instance:
    g: Graph
    classes: dict[str, np.ndarray]
    S: list[tuple[int, int]] = field(default_factory=list)
    spec: str = ""
    seed: int = 0


def _bipartite_block(rng, a: int, b: int, p: float) -> np.ndarray:
    return rng.random((a, b)) < p


def _assemble(n: int, blocks: list[tuple[np.ndarray, np.ndarray, np.ndarray]]) -> Graph:
    adj = np.zeros((n, n), dtype=bool)
    for rows, cols, block in blocks:
        adj[np.ix_(rows, cols)] |= block
        adj[np.ix_(cols, rows)] |= block.T
    return Graph(adj)


def random_bipartite(a: int, b: int, p: float, seed: int = 0) -> Instance:
    rng = np.random.default_rng(seed)
    A, B = np.arange(a), np.arange(a, a + b)
    g = _assemble(a + b, [(A, B, _bipartite_block(rng, a, b, p))])
    return Instance(g, {"A": A, "B": B}, spec=f"random:{a}x{b}:{p}", seed=seed)


def random_tripartite(s: int, p1: float, p2: float, seed: int = 0) -> Instance:
    """A1, A2, B of size s with (A1, B) of density ~p1 and (A2, B) of density ~p2."""
    rng = np.random.default_rng(seed)
    A1, A2, B = np.arange(s), np.arange(s, 2 * s), np.arange(2 * s, 3 * s)
    g = _assemble(3 * s, [(A1, B, _bipartite_block(rng, s, s, p1)),
                          (A2, B, _bipartite_block(rng, s, s, p2))])
    return Instance(g, {"A1": A1, "A2": A2, "B": B},
                    spec=f"tripartite:{s}:{p1},{p2}", seed=seed)


def random_multi(t: int, p: int, seed: int = 0, densities=(0.3, 0.7), kind: str = "dle",
                 min_pairs: float = 0.2) -> Instance:
    """Classes of size t with pair densities drawn from ``densities``.

    ``kind="dle"``: A, B1..Bp; S is the edge set of G(t, 1/2) on A, redrawn
    until it has at least ``min_pairs * t^2`` edges.  ``kind="lebs"``: A1, A2,
    B1..Bp; S is a uniformly random half of A1 x A2.  S is also added to the
    graph, so the instance is self-contained.
    """
    rng = np.random.default_rng(seed)
    heads = ["A"] if kind == "dle" else ["A1", "A2"]
    if kind not in ("dle", "lebs"):
        raise ValueError(f"kind must be 'dle' or 'lebs', got {kind!r}")
    names = heads + [f"B{i + 1}" for i in range(p)]
    classes = {name: np.arange(k * t, (k + 1) * t) for k, name in enumerate(names)}
    blocks = []
    for h in heads:
        for i in range(p):
            dens = float(rng.choice(densities))
            blocks.append((classes[h], classes[f"B{i + 1}"], _bipartite_block(rng, t, t, dens)))
    if kind == "dle":
        A = classes["A"]
        iu = np.triu_indices(t, 1)
        while True:
            keep = rng.random(iu[0].size) < 0.5
            if keep.sum() >= min_pairs * t * t:
                break
        S = [(int(A[i]), int(A[j])) for i, j in zip(iu[0][keep], iu[1][keep])]
        inner = np.zeros((t, t), dtype=bool)
        inner[iu[0][keep], iu[1][keep]] = True
        blocks.append((A, A, inner))
    else:
        A1, A2 = classes["A1"], classes["A2"]
        flat = rng.permutation(t * t)[: (t * t) // 2]
        i, j = np.divmod(np.sort(flat), t)
        S = [(int(A1[x]), int(A2[y])) for x, y in zip(i, j)]
        cross = np.zeros((t, t), dtype=bool)
        cross[i, j] = True
        blocks.append((A1, A2, cross))
    g = _assemble(len(names) * t, blocks)
    return Instance(g, classes, S, spec=f"random-multi:t={t},p={p}", seed=seed)


_RANDOM = re.compile(r"^random:(\d+)x(\d+):([0-9.]+)$")
_TRI = re.compile(r"^tripartite:(\d+):([0-9.]+),([0-9.]+)$")
_MULTI = re.compile(r"^random-multi:t=(\d+),p=(\d+)$")
INSTANCE_GRAMMAR = "random:AxB:P | tripartite:S:P1,P2 | random-multi:t=T,p=P"


def from_spec(spec: str, seed: int = 0, kind: str = "dle") -> Instance:
    if m := _RANDOM.match(spec):
        return random_bipartite(int(m[1]), int(m[2]), float(m[3]), seed)
    if m := _TRI.match(spec):
        return random_tripartite(int(m[1]), float(m[2]), float(m[3]), seed)
    if m := _MULTI.match(spec):
        return random_multi(int(m[1]), int(m[2]), seed, kind=kind)
    raise ValueError(f"bad instance spec {spec!r}; expected {INSTANCE_GRAMMAR}")
