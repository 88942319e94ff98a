"""Exhaustive checks of the codegree counting lemmas on concrete instances.

Every check enumerates the r-sets (or vertex pairs) involved, counts the
ones on the relevant side of the threshold and compares with the bound in
exact rational arithmetic.  The uniformity hypothesis of each lemma is not
enforced: it is *recorded* (Certified / Unknown / Falsified) next to the
verdict.  ``hypothesis`` tracks the explicit numeric side condition of a
lemma (only the tail lemmas have one); a report with a vacuous hypothesis
or a falsified pair is never a lemma failure.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from srglab._exact import exact, render
from srglab.graph import Graph
from srglab.regularity import (
    CERTIFIED,
    FALSIFIED,
    UNKNOWN,
    certify_uniformity,
    falsify_uniformity,
)

MAX_R = 3
MAX_SET = 300
MAX_PAIRS = 10**6
PHI_MAX = 20


class BudgetError(ValueError):
    """Instance too large for exhaustive enumeration."""


def phi(r: int) -> int:
    """r! * sum_{i<r} 1/i!, as an exact integer (each term r!/i! is integral)."""
    if not 0 <= r <= PHI_MAX:
        raise ValueError(f"phi is tabulated for 0 <= r <= {PHI_MAX}, got {r}")
    return sum(math.factorial(r) // math.factorial(i) for i in range(r))


@dataclass(frozen=True)
class LemmaReport:
    lemma: str
    hypothesis: str  # "met" or "vacuous"
    uniformity: str  # Certified / Unknown / Falsified, summarised over the pairs
    measured: Fraction
    bound: Fraction
    form: str  # "<" (measured < bound) or ">=" (measured >= bound)
    digest: str = ""
    details: dict = field(default_factory=dict, compare=False)

    @property
    def slack(self) -> Fraction:
        """Margin by which the inequality holds; negative when it fails."""
        if self.form == "<":
            return self.bound - self.measured
        return self.measured - self.bound

    @property
    def holds(self) -> bool:
        return self.slack > 0 if self.form == "<" else self.slack >= 0

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "violated"

    @property
    def meaningful_failure(self) -> bool:
        return not self.holds and self.hypothesis == "met" and self.uniformity != FALSIFIED

    def to_dict(self) -> dict:
        def num(x):
            if isinstance(x, Fraction):
                return render(x)
            return x

        return {
            "lemma": self.lemma,
            "inputs_digest": self.digest,
            "hypothesis": self.hypothesis,
            "uniformity": self.uniformity,
            "measured": render(self.measured),
            "bound": render(self.bound),
            "slack": render(self.slack),
            "form": self.form,
            "verdict": self.verdict,
            "details": {k: num(v) for k, v in self.details.items()},
        }


def _digest(g: Graph, *sets) -> str:
    h = hashlib.sha256()
    h.update(str(g.n).encode())
    h.update(g.rows.tobytes())
    for s in sets:
        h.update(b"|")
        h.update(np.asarray(sorted(s) if not isinstance(s, np.ndarray) else s,
                            dtype=np.int64).tobytes())
    return h.hexdigest()[:16]


def pair_uniformity(g: Graph, A, B, eps: float, seed: int = 0, trials: int = 4) -> str:
    if certify_uniformity(g, A, B, eps).status == CERTIFIED:
        return CERTIFIED
    return falsify_uniformity(g, A, B, eps, trials=trials, seed=seed).status


def _summarise(statuses: Iterable[str]) -> str:
    statuses = list(statuses)
    if FALSIFIED in statuses:
        return FALSIFIED
    if statuses and all(s == CERTIFIED for s in statuses):
        return CERTIFIED
    return UNKNOWN


def _budget(A: np.ndarray, r: int) -> None:
    if not 1 <= r <= MAX_R:
        raise BudgetError(f"r={r} outside 1..{MAX_R}")
    if A.size > MAX_SET:
        raise BudgetError(f"|A|={A.size} exceeds enumeration budget {MAX_SET}")
    if A.size < r:
        raise BudgetError(f"|A|={A.size} has no {r}-subsets")


def rset_codegrees(g: Graph, A, Y, r: int) -> np.ndarray:
    """Codegree into Y of every r-subset of A, in lexicographic subset order."""
    A, Y = g.vertex_set(A), g.vertex_set(Y)
    _budget(A, r)
    M = g._sub(A, Y).astype(np.float32)
    if r == 1:
        return M.sum(axis=1).astype(np.int64)
    if r == 2:
        C = np.rint(M @ M.T).astype(np.int64)
        return C[np.triu_indices(A.size, 1)]
    out = []
    for u in range(A.size - 2):
        P = M[u + 1:] * M[u]
        C = np.rint(P @ M[u + 1:].T).astype(np.int64)
        out.append(C[np.triu_indices(C.shape[0], 1)])
    return np.concatenate(out)


def _count_le(values: np.ndarray, thr: Fraction) -> int:
    return int(np.count_nonzero(values <= math.floor(thr)))


def _count_ge(values: np.ndarray, thr: Fraction) -> int:
    return int(np.count_nonzero(values >= math.ceil(thr)))


def _count_gt(values: np.ndarray, thr: Fraction) -> int:
    return int(np.count_nonzero(values > math.floor(thr)))


def _count_lt(values: np.ndarray, thr: Fraction) -> int:
    return int(np.count_nonzero(values < math.ceil(thr)))


def xsec_check(g: Graph, A, B, Y=None, eps: float = 0.1, r: int = 1,
               tail: str = "lower", seed: int = 0, check_uniformity: bool = True) -> LemmaReport:
    """Tail count of ``d_Y(R)`` over r-sets R of A against ``eps * phi(r) * C(|A|, r)``.

    ``tail="lower"`` counts ``d_Y(R) <= (d - eps)^r |Y|``; ``"upper"`` counts
    ``d_Y(R) >= (d + eps)^r |Y|``.
    """
    if tail not in ("lower", "upper"):
        raise ValueError(f"tail must be 'lower' or 'upper', got {tail!r}")
    A, B = g._disjoint_pair(A, B)
    Y = B if Y is None else g.vertex_set(Y)
    if not np.isin(Y, B).all():
        raise ValueError("Y must be a subset of B")
    _budget(A, r)
    e = exact(eps)
    d = g.density(A, B)
    base = d - e if tail == "lower" else d + e
    hyp = base ** (r - 1) * Y.size > e * B.size
    thr = base ** r * Y.size
    codeg = rset_codegrees(g, A, Y, r)
    total = math.comb(A.size, r)
    if tail == "lower":
        count, rest = _count_le(codeg, thr), _count_gt(codeg, thr)
    else:
        count, rest = _count_ge(codeg, thr), _count_lt(codeg, thr)
    uni = pair_uniformity(g, A, B, eps, seed) if check_uniformity else UNKNOWN
    return LemmaReport(
        lemma="xsec" if tail == "lower" else "xsec1",
        hypothesis="met" if hyp else "vacuous",
        uniformity=uni,
        measured=Fraction(count),
        bound=e * phi(r) * total,
        form="<",
        digest=_digest(g, A, B, Y),
        details={"r": r, "d": d, "threshold": thr, "total": total,
                 "complement_count": rest, "side_condition": hyp,
                 "fraction": Fraction(count, total)},
    )


def xsec2_check(g: Graph, A, B, eps: float, r: int, seed: int = 0,
                check_uniformity: bool = True) -> tuple[LemmaReport, LemmaReport]:
    """Counts of r-sets with ``d_B(R) - d^r|B|`` above ``-eps r |B|`` (i) and below ``eps r |B|`` (ii)."""
    A, B = g._disjoint_pair(A, B)
    _budget(A, r)
    e = exact(eps)
    d = g.density(A, B)
    codeg = rset_codegrees(g, A, B, r)
    total = math.comb(A.size, r)
    need = (1 - e * phi(r)) * total
    lo = (d ** r - e * r) * B.size
    hi = (d ** r + e * r) * B.size
    uni = pair_uniformity(g, A, B, eps, seed) if check_uniformity else UNKNOWN
    hyp = "met"
    digest = _digest(g, A, B)
    common = {"r": r, "d": d, "total": total}
    return (
        LemmaReport("xsec2.i", hyp, uni, Fraction(_count_gt(codeg, lo)), need, ">=",
                    digest, {**common, "threshold": lo}),
        LemmaReport("xsec2.ii", hyp, uni, Fraction(_count_lt(codeg, hi)), need, ">=",
                    digest, {**common, "threshold": hi}),
    )


def xple2_check(g: Graph, A1, A2, B, eps: float, seed: int = 0,
                check_uniformity: bool = True) -> tuple[LemmaReport, LemmaReport]:
    """Cross-pair codegrees ``d_B(uv)``, u in A1, v in A2, against ``d1 d2 |B| -+ 2 eps |B|``."""
    A1, B = g._disjoint_pair(A1, B)
    A2, _ = g._disjoint_pair(A2, B)
    g._disjoint_pair(A1, A2)
    if A1.size * A2.size > MAX_PAIRS:
        raise BudgetError(f"|A1||A2|={A1.size * A2.size} exceeds budget {MAX_PAIRS}")
    e = exact(eps)
    d1, d2 = g.density(A1, B), g.density(A2, B)
    codeg = g.codegree_matrix(A1, B, A2).ravel()
    total = A1.size * A2.size
    need = (1 - 2 * e) * total
    lo = (d1 * d2 - 2 * e) * B.size
    hi = (d1 * d2 + 2 * e) * B.size
    if check_uniformity:
        uni = _summarise([pair_uniformity(g, A1, B, eps, seed),
                          pair_uniformity(g, A2, B, eps, seed + 1)])
    else:
        uni = UNKNOWN
    hyp = "met"
    digest = _digest(g, A1, A2, B)
    common = {"d1": d1, "d2": d2, "total": total}
    return (
        LemmaReport("xple2.i", hyp, uni, Fraction(_count_gt(codeg, lo)), need, ">=",
                    digest, {**common, "threshold": lo}),
        LemmaReport("xple2.ii", hyp, uni, Fraction(_count_lt(codeg, hi)), need, ">=",
                    digest, {**common, "threshold": hi}),
    )


def _equal_classes(g: Graph, first: Sequence, B_list: Sequence) -> tuple[list[np.ndarray], int]:
    sets = [g.vertex_set(s) for s in (*first, *B_list)]
    t = sets[0].size
    sizes = [s.size for s in sets]
    if len(set(sizes)) != 1 or t == 0:
        raise ValueError(f"all classes must share one nonzero size, got sizes {sizes}")
    allv = np.concatenate(sets)
    if np.unique(allv).size != allv.size:
        raise ValueError("classes must be pairwise disjoint")
    return sets, t


def _pair_sums(g: Graph, us: np.ndarray, vs: np.ndarray, Bs: list[np.ndarray],
               pos_u: np.ndarray, pos_v: np.ndarray, A_u, A_v) -> tuple[int, int]:
    """Sum over the pairs of sum_i d_{B_i}(uv), accumulated two independent ways."""
    per_class = 0
    for Bi in Bs:
        C = g.codegree_matrix(A_u, Bi, A_v)
        per_class += int(C[pos_u, pos_v].sum())
    union = g.mask(np.concatenate(Bs))
    per_pair = int(np.bitwise_count(g.rows[us] & g.rows[vs] & union).sum())
    return per_class, per_pair


def _averaged(total: int, S: int, target_per_pair: Fraction, const: int, p: int,
              e: Fraction, t: int, alpha) -> dict:
    alpha = Fraction(S, t * t) if alpha is None else exact(alpha)
    out = {"alpha": alpha}
    if S and alpha > 0 and S >= alpha * t * t:
        out["averaged_lhs"] = abs(Fraction(total, S) - target_per_pair)
        out["averaged_bound"] = const * p * e / alpha * t
        out["averaged_holds"] = out["averaged_lhs"] < out["averaged_bound"]
    return out


def dle_check(g: Graph, A, B_list: Sequence, S: Iterable, eps: float, alpha=None,
              seed: int = 0, check_uniformity: bool = True) -> LemmaReport:
    """``|sum_S sum_i d_{B_i}(uv) - t|S| sum_i d_i^2| < 5 p eps t^3`` for 2-sets S of A."""
    (A, *Bs), t = _equal_classes(g, [A], B_list)
    p = len(Bs)
    pairs = sorted({tuple(sorted((int(u), int(v)))) for u, v in S})
    if any(u == v for u, v in pairs):
        raise ValueError("S must consist of 2-sets")
    if pairs and not np.isin(np.array(pairs).ravel(), A).all():
        raise ValueError("S must consist of 2-subsets of A")
    us = np.array([u for u, _ in pairs], dtype=np.int64)
    vs = np.array([v for _, v in pairs], dtype=np.int64)
    pos = np.searchsorted(A, us), np.searchsorted(A, vs)
    per_class, per_pair = _pair_sums(g, us, vs, Bs, pos[0], pos[1], A, A)
    e = exact(eps)
    dens = [g.density(A, Bi) for Bi in Bs]
    target_per_pair = t * sum(d * d for d in dens)
    lhs = abs(per_class - len(pairs) * target_per_pair)
    if check_uniformity:
        uni = _summarise(pair_uniformity(g, A, Bi, eps, seed + i) for i, Bi in enumerate(Bs))
    else:
        uni = UNKNOWN
    details = {"t": t, "p": p, "S": len(pairs), "sum_per_class": per_class,
               "sum_per_pair": per_pair}
    details.update(_averaged(per_class, len(pairs), target_per_pair, 5, p, e, t, alpha))
    return LemmaReport("dle", "met", uni, lhs,
                       5 * p * e * t ** 3, "<", _digest(g, A, *Bs, us, vs), details)


def lebs_check(g: Graph, A1, A2, B_list: Sequence, S: Iterable, eps: float, alpha=None,
               seed: int = 0, check_uniformity: bool = True) -> LemmaReport:
    """``|sum_S sum_i d_{B_i}(uv) - t|S| sum_i d_1i d_2i| < 6 eps p t^3`` for S in A1 x A2."""
    (A1, A2, *Bs), t = _equal_classes(g, [A1, A2], B_list)
    p = len(Bs)
    pairs = sorted({(int(u), int(v)) for u, v in S})
    if pairs:
        arr = np.array(pairs)
        if not (np.isin(arr[:, 0], A1).all() and np.isin(arr[:, 1], A2).all()):
            raise ValueError("S must be a subset of A1 x A2")
    us = np.array([u for u, _ in pairs], dtype=np.int64)
    vs = np.array([v for _, v in pairs], dtype=np.int64)
    per_class, per_pair = _pair_sums(g, us, vs, Bs, np.searchsorted(A1, us),
                                     np.searchsorted(A2, vs), A1, A2)
    e = exact(eps)
    target_per_pair = t * sum(g.density(A1, Bi) * g.density(A2, Bi) for Bi in Bs)
    lhs = abs(per_class - len(pairs) * target_per_pair)
    if check_uniformity:
        uni = _summarise(pair_uniformity(g, A, Bi, eps, seed + 2 * i + k)
                         for i, Bi in enumerate(Bs) for k, A in enumerate((A1, A2)))
    else:
        uni = UNKNOWN
    details = {"t": t, "p": p, "S": len(pairs), "sum_per_class": per_class,
               "sum_per_pair": per_pair}
    details.update(_averaged(per_class, len(pairs), target_per_pair, 6, p, e, t, alpha))
    return LemmaReport("lebs", "met", uni, lhs,
                       6 * e * p * t ** 3, "<", _digest(g, A1, A2, *Bs, us, vs), details)
