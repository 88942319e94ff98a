"""Uniform-pair testing and regularity-style partitions.

Deciding epsilon-uniformity exactly means looking at every pair of large
subsets, so pair verdicts are three-valued:

* ``Certified``  - the degree/codegree deviation criterion passed;
* ``Falsified``  - an explicit witness ``(X, Y)`` was found and re-checked;
* ``Unknown``    - neither.

Partitions are built heuristically and then *verified*; nothing here
promises that the uniformity conditions hold for the output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from srglab._exact import exact
from srglab._parallel import pmap
from srglab.graph import Graph

CERTIFIED = "Certified"
FALSIFIED = "Falsified"
UNKNOWN = "Unknown"

DEFAULT_ROUNDS = 16


@dataclass(frozen=True)
class Witness:
    X: tuple[int, ...]
    Y: tuple[int, ...]
    density: Fraction
    gap: Fraction


@dataclass(frozen=True)
class PairVerdict:
    status: str
    density: Fraction
    epsilon: float
    witness: Witness | None = None
    # (D1, D2) when produced by certify_uniformity
    deviations: tuple[float, float] | None = None


def _check_eps(eps: float) -> Fraction:
    if not 0 < eps < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {eps}")
    return exact(eps)


def min_subset_size(eps: float, size: int) -> int:
    """Smallest integer s with s >= eps * size (and s >= 1)."""
    return max(1, math.ceil(exact(eps) * size))


def _sizes(lo: int, hi: int) -> list[int]:
    out = {lo, hi}
    s = lo
    while s < hi:
        out.add(s)
        s *= 2
    out.update(math.ceil(hi * j / 8) for j in range(1, 8))
    return sorted(s for s in out if lo <= s <= hi)


class _Pair:
    """Bi-adjacency of (A, B) plus what the witness search needs."""

    def __init__(self, g: Graph, A, B, eps: float):
        self.eps = _check_eps(eps)
        self.A, self.B = g._disjoint_pair(A, B)
        self.M = g._sub(self.A, self.B)
        self.e = int(np.count_nonzero(self.M))
        self.d = Fraction(self.e, self.A.size * self.B.size)
        self.sA = min_subset_size(eps, self.A.size)
        self.sB = min_subset_size(eps, self.B.size)

    def exact_gap(self, xi: np.ndarray, yi: np.ndarray) -> tuple[Fraction, Fraction]:
        e = int(np.count_nonzero(self.M[np.ix_(xi, yi)]))
        dxy = Fraction(e, xi.size * yi.size)
        return dxy, abs(dxy - self.d)

    def witness(self, xi, yi) -> Witness | None:
        if xi.size < self.sA or yi.size < self.sB:
            return None
        dxy, gap = self.exact_gap(xi, yi)
        if gap < self.eps:
            return None
        return Witness(tuple(self.A[np.sort(xi)].tolist()),
                       tuple(self.B[np.sort(yi)].tolist()), dxy, gap)


def _scan_prefixes(pair: _Pair, M: np.ndarray, xi: np.ndarray, lo: int, d: float):
    """Best gap over Y = prefixes (size >= lo) of the columns ordered by degree into X.

    ``M`` is oriented so that rows are the X side.  Yields candidate
    ``(gap, area, xi, yi)`` tuples best-first for this X.
    """
    col = M[xi].sum(axis=0)
    for order in (np.argsort(-col, kind="stable"), np.argsort(col, kind="stable")):
        cs = np.cumsum(col[order])
        sy = np.arange(lo, col.size + 1)
        dens = cs[sy - 1] / (xi.size * sy)
        gaps = np.abs(dens - d)
        ok = np.flatnonzero(gaps >= float(pair.eps) - 1e-12)
        if ok.size:
            best = ok[np.lexsort((-(xi.size * sy[ok]), -gaps[ok]))]
            for b in best[:4]:
                yield gaps[b], xi.size * sy[b], xi, order[:sy[b]]


def _structured(pair: _Pair) -> Witness | None:
    d = float(pair.d)
    degA = pair.M.sum(axis=1)
    degB = pair.M.sum(axis=0)
    cands = []
    for flip in (False, True):
        M = pair.M.T if flip else pair.M
        deg = degB if flip else degA
        lo_x, hi_x = (pair.sB, pair.B.size) if flip else (pair.sA, pair.A.size)
        lo_y = pair.sA if flip else pair.sB
        for order in (np.argsort(-deg, kind="stable"), np.argsort(deg, kind="stable")):
            for sx in _sizes(lo_x, hi_x):
                for gap, area, xi, yi in _scan_prefixes(pair, M, order[:sx], lo_y, d):
                    cands.append((gap, area, flip, xi, yi))
    # strongest witness first: largest gap, then largest |X||Y|
    cands.sort(key=lambda c: (-c[0], -c[1]))
    for _, _, flip, xi, yi in cands:
        w = pair.witness(yi, xi) if flip else pair.witness(xi, yi)
        if w is not None:
            return w
    return None


def _random(pair: _Pair, trials: int, rng: np.random.Generator) -> Witness | None:
    a, b = pair.A.size, pair.B.size
    d = float(pair.d)
    for _ in range(trials):
        xi = rng.choice(a, size=int(rng.integers(pair.sA, a + 1)), replace=False)
        yi = rng.choice(b, size=int(rng.integers(pair.sB, b + 1)), replace=False)
        w = pair.witness(xi, yi)
        if w is not None:
            return w
        for _, _, xs, ys in _scan_prefixes(pair, pair.M, xi, pair.sB, d):
            w = pair.witness(xs, ys)
            if w is not None:
                return w
    return None


def falsify_uniformity(g: Graph, A, B, eps: float, trials: int = 8, seed: int = 0) -> PairVerdict:
    """Search for ``X ⊂ A, Y ⊂ B`` breaking eps-uniformity of ``(A, B)``.

    Degree-sorted prefixes are tried before random subsets; the strongest
    structured witness is returned.  Never certifies.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    pair = _Pair(g, A, B, eps)
    w = _structured(pair)
    if w is None:
        w = _random(pair, trials, np.random.default_rng(seed))
    status = FALSIFIED if w is not None else UNKNOWN
    return PairVerdict(status, pair.d, eps, witness=w)


def uniformity_deviations(g: Graph, A, B) -> tuple[float, float]:
    """Normalised degree and codegree deviations (D1, D2) of the pair (A, B)."""
    A, B = g._disjoint_pair(A, B)
    M = g._sub(A, B).astype(np.float64)
    a, b = M.shape
    d = M.sum() / (a * b)
    d1 = np.abs(M.sum(axis=1) - d * b).sum() / (a * b)
    codeg = M @ M.T
    np.fill_diagonal(codeg, d * d * b)
    d2 = np.abs(codeg - d * d * b).sum() / (a * a * b)
    return float(d1), float(d2)


def certify_uniformity(g: Graph, A, B, eps: float, threshold: float | None = None) -> PairVerdict:
    """Certified iff both deviations are at most ``threshold`` (default eps**3)."""
    _check_eps(eps)
    dens = g.density(A, B)
    thr = eps ** 3 if threshold is None else threshold
    d1, d2 = uniformity_deviations(g, A, B)
    status = CERTIFIED if d1 <= thr and d2 <= thr else UNKNOWN
    return PairVerdict(status, dens, eps, deviations=(d1, d2))


def pair_seed(seed: int, *keys: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([seed, *keys])


# -- partitions ------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """``V0`` (exceptional) plus equal-size classes ``V1..Vp``."""

    n: int
    exceptional: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = np.zeros(self.n, dtype=np.int64)
        for part in (self.exceptional, *self.classes):
            for v in part:
                if not 0 <= v < self.n:
                    raise ValueError(f"vertex {v} outside 0..{self.n - 1}")
                seen[v] += 1
        if (seen != 1).any():
            v = int(np.flatnonzero(seen != 1)[0])
            raise ValueError(f"vertex {v} is in {int(seen[v])} classes")
        if len({len(c) for c in self.classes}) > 1:
            raise ValueError("non-exceptional classes differ in size")
        if self.classes and not self.classes[0]:
            raise ValueError("empty class")

    @property
    def p(self) -> int:
        return len(self.classes)

    @property
    def t(self) -> int:
        return len(self.classes[0]) if self.classes else 0

    def to_text(self) -> str:
        lines = [f"V{i}: " + " ".join(map(str, part))
                 for i, part in enumerate((self.exceptional, *self.classes))]
        return "\n".join(line.rstrip() for line in lines) + "\n"

    @classmethod
    def from_text(cls, text: str, n: int) -> "Partition":
        parts = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            label, _, rest = line.partition(":")
            label = label.strip()
            if not (label.startswith("V") and label[1:].isdigit()):
                raise ValueError(f"line {lineno}: expected 'Vi: ...', got {line!r}")
            parts[int(label[1:])] = tuple(int(v) for v in rest.split())
        if sorted(parts) != list(range(len(parts))):
            raise ValueError("class labels must be V0, V1, ... without gaps")
        return cls(n, parts.get(0, ()), tuple(parts[i] for i in range(1, len(parts))))


def _profile_chain(g: Graph, atoms: list[np.ndarray], classes: list[np.ndarray]) -> list[int]:
    """Order atoms so that atoms with similar densities to the classes are adjacent.

    Greedy nearest-neighbour chain in L1 distance over the atom-to-class
    density profiles, starting from atom 0.
    """
    counts = np.stack([g._sub(c, None).sum(axis=0) for c in classes])  # classes x n
    prof = np.stack([counts[:, a].mean(axis=1) for a in atoms]) / classes[0].size
    left = np.ones(len(atoms), dtype=bool)
    order = [0]
    left[0] = False
    for _ in range(len(atoms) - 1):
        dist = np.abs(prof - prof[order[-1]]).sum(axis=1)
        dist[~left] = np.inf
        nxt = int(np.argmin(dist))
        order.append(nxt)
        left[nxt] = False
    return order


def _cut(seq: np.ndarray, size: int) -> tuple[list[np.ndarray], list[int]]:
    full = seq.size - seq.size % size
    return [np.sort(seq[i:i + size]) for i in range(0, full, size)], seq[full:].tolist()


def _key(classes) -> frozenset:
    return frozenset(tuple(c.tolist()) for c in classes)


def build_partition(g: Graph, l: int, eps: float, max_rounds: int = DEFAULT_ROUNDS,
                    seed: int = 0, trials: int = 8) -> Partition:
    """Random equitable partition into ``l`` classes, refined along witnesses.

    Each round falsifies every class pair.  Every class is split into atoms
    by membership in the witness sets that landed in it; the atoms are laid
    out in density-profile order and cut back into classes of the current
    size.  When that reproduces a partition already seen, the class size is
    halved instead (leftovers go to V0), as long as V0 stays below
    ``eps * n``.  Stops when a round finds no witness, when no admissible
    refinement remains, or after ``max_rounds`` rounds.
    """
    _check_eps(eps)
    if l < 1:
        raise ValueError("l must be >= 1")
    if g.n < 2 * l:
        raise ValueError(f"n={g.n} is too small for {l} classes of size >= 2")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(g.n)
    t = g.n // l
    classes = [np.sort(perm[i * t:(i + 1) * t]) for i in range(l)]
    exceptional = perm[l * t:].tolist()
    budget = exact(eps) * g.n
    seen = {_key(classes)}

    for rnd in range(max_rounds):
        pairs = list(combinations(range(len(classes)), 2))

        def test(ij, rnd=rnd, classes=classes):
            i, j = ij
            ss = pair_seed(seed, rnd, i, j)
            return falsify_uniformity(g, classes[i], classes[j], eps, trials,
                                      seed=int(ss.generate_state(1)[0]))

        verdicts = pmap(test, pairs)
        marks: list[list[np.ndarray]] = [[] for _ in classes]
        for (i, j), v in zip(pairs, verdicts):
            if v.status == FALSIFIED:
                marks[i].append(np.isin(classes[i], v.witness.X))
                marks[j].append(np.isin(classes[j], v.witness.Y))
        if not any(marks):
            break
        atoms = []
        for cls_, ms in zip(classes, marks):
            if not ms:
                atoms.append(cls_)
                continue
            _, label = np.unique(np.stack(ms, axis=1), axis=0, return_inverse=True)
            label = label.ravel()
            atoms.extend(cls_[label == a] for a in range(label.max() + 1))
        seq = np.concatenate([atoms[i] for i in _profile_chain(g, atoms, classes)])

        new_classes, spill = _cut(seq, t)
        if _key(new_classes) in seen:
            t_new = t // 2
            if t_new < 2:
                break
            new_classes, spill = _cut(seq, t_new)
            if len(exceptional) + len(spill) >= budget:
                break
            t = t_new
        classes = new_classes
        exceptional = exceptional + spill
        seen.add(_key(classes))

    return Partition(g.n, tuple(sorted(exceptional)),
                     tuple(tuple(c.tolist()) for c in classes))


@dataclass
class PartitionReport:
    n: int
    p: int
    t: int
    epsilon: float
    seed: int
    v0_size: int
    condition_i: bool
    condition_ii: bool
    falsified_pairs: list[tuple[int, int]]
    falsified_per_class: list[int]
    densities: list[list[Fraction | None]] = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "t": self.t,
            "epsilon": self.epsilon,
            "seed": self.seed,
            "v0_size": self.v0_size,
            "condition_i": self.condition_i,
            "condition_ii": self.condition_ii,
            "falsified_pair_count": len(self.falsified_pairs),
            "falsified_pairs": [list(ij) for ij in self.falsified_pairs],
            "falsified_per_class": self.falsified_per_class,
            "densities": [[None if d is None else float(d) for d in row]
                          for row in self.densities],
        }


def verify_partition(g: Graph, P: Partition, eps: float, trials: int = 8,
                     seed: int = 0) -> PartitionReport:
    """Check |V0| < eps*n and, per class, at most eps*p falsified partners.

    Only falsified pairs count against the second condition, so it is a
    necessary check: a pass means no violation was *found*.
    """
    _check_eps(eps)
    if P.n != g.n:
        raise ValueError(f"partition is for n={P.n}, graph has n={g.n}")
    p = P.p
    classes = [np.asarray(c, dtype=np.int64) for c in P.classes]
    dens: list[list[Fraction | None]] = [[None] * p for _ in range(p)]
    pairs = list(combinations(range(p), 2))

    def test(ij):
        i, j = ij
        ss = pair_seed(seed, i, j)
        return falsify_uniformity(g, classes[i], classes[j], eps, trials,
                                  seed=int(ss.generate_state(1)[0]))

    falsified = []
    per_class = [0] * p
    for (i, j), v in zip(pairs, pmap(test, pairs)):
        dens[i][j] = dens[j][i] = v.density
        if v.status == FALSIFIED:
            falsified.append((i, j))
            per_class[i] += 1
            per_class[j] += 1
    epsF = exact(eps)
    return PartitionReport(
        n=g.n, p=p, t=P.t, epsilon=eps, seed=seed,
        v0_size=len(P.exceptional),
        condition_i=len(P.exceptional) < epsF * g.n,
        condition_ii=all(c <= epsF * p for c in per_class),
        falsified_pairs=falsified,
        falsified_per_class=per_class,
        densities=dens,
    )


@dataclass(frozen=True)
class PairClass:
    i: int
    j: int
    density: Fraction
    label: str  # Low, High or Middle
    spread: Fraction  # d - d^2
    spread_ok: bool | None  # 0 <= d - d^2 <= sqrt(eps); None for Middle pairs


def sqrt_eps(eps) -> Fraction:
    """sqrt(eps), exact when eps is the square of a rational."""
    e = exact(eps)
    a, b = math.isqrt(e.numerator), math.isqrt(e.denominator)
    if a * a == e.numerator and b * b == e.denominator:
        return Fraction(a, b)
    return Fraction(math.sqrt(e))


def classify_density(d, eps: float) -> tuple[str, Fraction, bool | None]:
    d = exact(d)
    s = sqrt_eps(eps)
    spread = d - d * d
    if d <= s:
        label = "Low"
    elif d >= 1 - s:
        label = "High"
    else:
        return "Middle", spread, None
    return label, spread, 0 <= spread <= s


def density_dichotomy(densities: PartitionReport | Sequence[Sequence], eps: float) -> list[PairClass]:
    """Split class pairs into Low (d <= sqrt eps), High (d >= 1 - sqrt eps) and Middle."""
    if isinstance(densities, PartitionReport):
        densities = densities.densities
    out = []
    for i, row in enumerate(densities):
        for j in range(i + 1, len(row)):
            if row[j] is None:
                continue
            label, spread, ok = classify_density(row[j], eps)
            out.append(PairClass(i, j, exact(row[j]), label, spread, ok))
    return out
