"""Limit algebra for SRG sequences and finite-size deviation sweeps.

A sequence of SRGs with ``k/n -> d``, ``lambda/n -> a`` and ``mu/n -> c`` is
summarised by its limit triple ``(d, a, c)``.  For nontrivial families the
triple satisfies ``a = c = d^2``; the sweeps below measure how fast
``lambda`` and ``mu`` approach ``k^2/n`` on concrete families, in exact
rational arithmetic throughout.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from srglab._exact import exact, render
from srglab._parallel import pmap
from srglab.families import SrgParams, from_spec, verify_srg
from srglab.graph import Graph

TOLERANCE = 1e-12


@dataclass(frozen=True)
class CsrLimits:
    d: Fraction
    a: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("d", "a", "c"):
            object.__setattr__(self, name, exact(getattr(self, name)))
        for name in ("d", "a", "c"):
            if not 0 <= getattr(self, name) <= 1:
                raise ValueError(f"{name}={getattr(self, name)} outside [0, 1]")
        if self.a > self.d or self.c > self.d:
            raise ValueError(f"limits need d >= a and d >= c, got {self}")

    def __iter__(self):
        return iter((self.d, self.a, self.c))


@dataclass(frozen=True)
class ProofConstants:
    delta: Fraction
    eps: Fraction
    l: int


def eq1_residual(lim: CsrLimits) -> Fraction:
    """``d^2 - (a - c) d - c``: the limit of the parameter identity divided by n^2."""
    d, a, c = lim
    return d * d - (a - c) * d - c


def complement_limits(lim: CsrLimits) -> CsrLimits:
    d, a, c = lim
    return CsrLimits(1 - d, 1 - 2 * d + c, 1 - 2 * d + a)


def main_theorem_target(lim: CsrLimits, tol: float = TOLERANCE) -> bool:
    """True when ``a = c = d^2`` (within ``tol``; exact for rational limits)."""
    d, a, c = lim
    return abs(a - c) <= tol and abs(a - d * d) <= tol


def proof_constants(lim: CsrLimits) -> ProofConstants:
    """delta = min(|a-c|, |d-a|, |d-c|, 1/10), eps = (delta/20)^2, l = ceil(1/eps)."""
    d, a, c = lim
    terms = {"a = c": abs(a - c), "d = a": abs(d - a), "d = c": abs(d - c)}
    for name, value in terms.items():
        if value == 0:
            raise ValueError(f"proof hypothesis violated: {name}")
    delta = min(*terms.values(), Fraction(1, 10))
    eps = (delta / 20) ** 2
    return ProofConstants(delta, eps, math.ceil(1 / eps))


def family_limits(family: str, fixed_r: int | None = None) -> CsrLimits:
    """Exact limit triple of a generator family as its size parameter grows.

    ``cliques`` grows r with m fixed unless ``fixed_r`` is given, in which
    case m grows and the limit is ``(1/r, 1/r, 0)``.  A ``~`` prefix gives the
    complementary family.
    """
    comp = family.startswith("~")
    name = family.lstrip("~")
    if name == "paley":
        lim = CsrLimits(Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
    elif name in ("triangular", "lattice"):
        lim = CsrLimits(0, 0, 0)
    elif name == "cliques":
        lim = CsrLimits(0, 0, 0) if fixed_r is None else CsrLimits(
            Fraction(1, fixed_r), Fraction(1, fixed_r), 0)
    else:
        raise ValueError(f"unknown family {family!r}")
    return complement_limits(lim) if comp else lim


# -- sweeps ----------------------------------------------------------------

CSV_HEADER = ["family", "param", "n", "k", "lambda", "mu", "k_over_n", "dev_lambda",
              "dev_mu", "dev_lambda_over_n", "dev_mu_over_n"]


@dataclass(frozen=True)
class DeviationRow:
    family: str
    param: str
    n: int
    k: int
    lam: int
    mu: int

    @classmethod
    def from_params(cls, family: str, param: str, p: SrgParams) -> "DeviationRow":
        return cls(family, param, p.n, p.k, p.lam, p.mu)

    @property
    def k_sq_over_n(self) -> Fraction:
        return Fraction(self.k * self.k, self.n)

    @property
    def k_over_n(self) -> Fraction:
        return Fraction(self.k, self.n)

    @property
    def lambda_over_n(self) -> Fraction:
        return Fraction(self.lam, self.n)

    @property
    def mu_over_n(self) -> Fraction:
        return Fraction(self.mu, self.n)

    @property
    def dev_lambda(self) -> Fraction:
        return abs(self.lam - self.k_sq_over_n)

    @property
    def dev_mu(self) -> Fraction:
        return abs(self.mu - self.k_sq_over_n)

    @property
    def dev_lambda_over_n(self) -> Fraction:
        return self.dev_lambda / self.n

    @property
    def dev_mu_over_n(self) -> Fraction:
        return self.dev_mu / self.n

    def limit_gap(self, lim: CsrLimits) -> Fraction:
        """max(|k/n - d|, |lambda/n - a|, |mu/n - c|)."""
        return max(abs(self.k_over_n - lim.d), abs(self.lambda_over_n - lim.a),
                   abs(self.mu_over_n - lim.c))

    def csv_fields(self) -> list[str]:
        return [self.family, self.param, str(self.n), str(self.k), str(self.lam), str(self.mu),
                render(self.k_over_n), render(self.dev_lambda), render(self.dev_mu),
                render(self.dev_lambda_over_n), render(self.dev_mu_over_n)]


def _param_str(param) -> str:
    if isinstance(param, tuple):
        return "x".join(str(x) for x in param)
    return str(param)


def family_sweep(family: str, sizes: Iterable) -> list[DeviationRow]:
    """Generate, brute-force verify and measure each member; rows sorted by n.

    ``family`` is ``paley``, ``triangular``, ``lattice`` or ``cliques``
    (optionally ``~``-prefixed); cliques sizes are ``(r, m)`` or ``"RxM"``.
    """
    params = [_param_str(s) for s in sizes]

    def one(param: str) -> DeviationRow:
        spec = f"{family}:{param}"
        verdict = verify_srg(from_spec(spec))
        if not verdict.ok:
            raise ValueError(f"{spec}: {verdict}")
        return DeviationRow.from_params(family, param, verdict.params)

    rows = pmap(one, params)
    return sorted(rows, key=lambda r: (r.n, r.param))


def sweep_csv(rows: Iterable[DeviationRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow(row.csv_fields())
    return buf.getvalue()


def codegree_deviation(g: Graph) -> Fraction:
    """(1/n^2) * sum over unordered pairs u != v of |codeg(u, v) - k^2/n|."""
    degrees = g.degrees()
    k = int(degrees[0])
    if not (degrees == k).all():
        raise ValueError("codegree deviation needs a regular graph")
    n = g.n
    iu = np.triu_indices(n, 1)
    codeg = g.codegree_matrix()[iu]
    # |c - k^2/n| = |c n - k^2| / n, summed in integers
    total = int(np.abs(codeg * n - k * k).sum(dtype=np.int64))
    return Fraction(total, n * n * n)
