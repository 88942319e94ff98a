"""Classical strongly regular graph families and exact parameter algebra.

``verify_srg`` is the exhaustive checker every other check in the package
leans on; the generators are only trusted after passing through it.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from srglab.graph import MAX_VERTICES, Graph


class SpecError(ValueError):
    """Bad generator parameters or an unparsable family spec."""


@dataclass(frozen=True)
class SrgParams:
    n: int
    k: int
    lam: int
    mu: int

    def __iter__(self):
        return iter((self.n, self.k, self.lam, self.mu))

    def __str__(self) -> str:
        return f"SR({self.n},{self.k},{self.lam},{self.mu})"

    def invariant_violations(self) -> list[str]:
        out = []
        if min(self) < 0:
            out.append("negative parameter")
        if not self.k < self.n:
            out.append("k < n fails")
        if not self.lam < self.k:
            out.append("lambda < k fails")
        if not self.mu <= self.k:
            out.append("mu <= k fails")
        if identity_check(self) != 0:
            out.append("k(k-lambda-1) = (n-k-1)mu fails")
        return out

    @property
    def is_valid(self) -> bool:
        return not self.invariant_violations()


@dataclass(frozen=True)
class SrgVerdict:
    """Outcome of ``verify_srg``: ``kind`` is SRG, NotRegular, CodegreeMismatch or Degenerate."""

    kind: str
    params: SrgParams | None = None
    vertex: int | None = None
    pair: tuple[int, int] | None = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.kind == "SRG"

    def __str__(self) -> str:
        if self.kind == "SRG":
            return str(self.params)
        if self.kind == "NotRegular":
            return f"NotRegular vertex={self.vertex}"
        if self.kind == "CodegreeMismatch":
            return f"CodegreeMismatch pair={self.pair[0]},{self.pair[1]} {self.reason}"
        return f"Degenerate {self.reason}"


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    return all(q % f for f in range(3, math.isqrt(q) + 1, 2))


# -- generators ------------------------------------------------------------

def paley(q: int) -> Graph:
    """Paley graph on Z_q: ``u ~ v`` iff ``u - v`` is a nonzero square mod q."""
    if not _is_prime(q):
        raise SpecError(f"paley: q={q} is not prime")
    if q % 4 != 1:
        raise SpecError(f"paley: q={q} is not 1 mod 4")
    if q > MAX_VERTICES:
        raise SpecError(f"paley: q={q} exceeds {MAX_VERTICES}")
    square = np.zeros(q, dtype=bool)
    square[(np.arange(1, q, dtype=np.int64) ** 2) % q] = True
    idx = np.arange(q)
    return Graph(square[(idx[:, None] - idx[None, :]) % q])


def triangular(m: int) -> Graph:
    """Line graph of K_m: 2-subsets of {0..m-1}, adjacent when they meet."""
    if m < 4:
        raise SpecError(f"triangular: m={m} must be at least 4")
    if m * (m - 1) // 2 > MAX_VERTICES:
        raise SpecError(f"triangular: m={m} gives more than {MAX_VERTICES} vertices")
    pairs = np.array(list(combinations(range(m), 2)))
    a, b = pairs[:, 0], pairs[:, 1]
    meet = ((a[:, None] == a[None, :]) | (a[:, None] == b[None, :])
            | (b[:, None] == a[None, :]) | (b[:, None] == b[None, :]))
    np.fill_diagonal(meet, False)
    return Graph(meet)


def lattice(m: int) -> Graph:
    """Rook's graph on an m x m board; vertex (i, j) is ``i*m + j``."""
    if m < 2:
        raise SpecError(f"lattice: m={m} must be at least 2")
    if m * m > MAX_VERTICES:
        raise SpecError(f"lattice: m={m} gives more than {MAX_VERTICES} vertices")
    i, j = np.divmod(np.arange(m * m), m)
    adj = (i[:, None] == i[None, :]) | (j[:, None] == j[None, :])
    np.fill_diagonal(adj, False)
    return Graph(adj)


def disjoint_cliques(r: int, m: int) -> Graph:
    """r disjoint copies of K_m; vertex v lies in clique ``v // m``."""
    if r < 1 or m < 2:
        raise SpecError(f"cliques: need r >= 1 and m >= 2, got r={r}, m={m}")
    if r * m > MAX_VERTICES:
        raise SpecError(f"cliques: {r}x{m} exceeds {MAX_VERTICES} vertices")
    block = np.arange(r * m) // m
    adj = block[:, None] == block[None, :]
    np.fill_diagonal(adj, False)
    return Graph(adj)


_SPEC = re.compile(r"^(~?)(paley|triangular|lattice|cliques):(\d+)(?:x(\d+))?$")
SPEC_GRAMMAR = "[~](paley:Q | triangular:M | lattice:M | cliques:RxM)"


def from_spec(spec: str) -> Graph:
    """Build a graph from ``paley:13``, ``~triangular:5``, ``cliques:3x4`` ..."""
    match = _SPEC.match(spec.strip())
    if not match:
        raise SpecError(f"bad family spec {spec!r}; expected {SPEC_GRAMMAR}")
    tilde, family, a, b = match.groups()
    if (family == "cliques") != (b is not None):
        raise SpecError(f"bad family spec {spec!r}; expected {SPEC_GRAMMAR}")
    a = int(a)
    if family == "paley":
        g = paley(a)
    elif family == "triangular":
        g = triangular(a)
    elif family == "lattice":
        g = lattice(a)
    else:
        g = disjoint_cliques(a, int(b))
    return g.complement() if tilde else g


# -- verification ----------------------------------------------------------

def verify_srg(g: Graph) -> SrgVerdict:
    degrees = g.degrees()
    k = int(degrees[0])
    if not (degrees == k).all():
        return SrgVerdict("NotRegular", vertex=int(np.argmin(degrees)))
    if k == 0:
        return SrgVerdict("Degenerate", reason="no edges")
    if k == g.n - 1:
        return SrgVerdict("Degenerate", reason="no non-adjacent pair")

    adj = g.adj
    codeg = g.codegree_matrix()
    upper = np.triu(np.ones((g.n, g.n), dtype=bool), 1)
    values = {}
    for name, sel in (("lambda", upper & adj), ("mu", upper & ~adj)):
        us, vs = np.nonzero(sel)
        c = codeg[us, vs]
        bad = np.flatnonzero(c != c[0])
        if bad.size:
            i = bad[0]
            return SrgVerdict(
                "CodegreeMismatch",
                pair=(int(us[i]), int(vs[i])),
                reason=f"{name}: codegree {int(c[i])} != {int(c[0])} "
                       f"at ({int(us[0])},{int(vs[0])})",
            )
        values[name] = int(c[0])
    return SrgVerdict("SRG", params=SrgParams(g.n, k, values["lambda"], values["mu"]))


# -- parameter algebra -----------------------------------------------------

def identity_check(p: SrgParams) -> int:
    """Residual ``k(k - lambda - 1) - (n - k - 1) mu``; zero for every SRG."""
    n, k, lam, mu = p
    return k * (k - lam - 1) - (n - k - 1) * mu


def complement_params(p: SrgParams) -> SrgParams:
    n, k, lam, mu = p
    out = SrgParams(n, n - 1 - k, n - 2 - 2 * k + mu, n - 2 * k + lam)
    for field in ("n", "k", "lam", "mu"):
        if getattr(out, field) < 0:
            raise ValueError(f"complement of {p} has negative {field}: {out}")
    return out


def is_trivial(p: SrgParams) -> bool:
    """True for rK_m (mu = 0) and for complements of rK_m (n - 2k + lambda = 0)."""
    return p.mu == 0 or p.n - 2 * p.k + p.lam == 0


@dataclass(frozen=True)
class Feasibility:
    params: SrgParams
    discriminant: int
    eigenvalues: tuple[float, float]
    multiplicities: tuple[Fraction, Fraction] | None
    conference: bool
    feasible: bool
    reason: str


def eigen_feasibility(p: SrgParams) -> Feasibility:
    """Integrality test for the multiplicities of the two restricted eigenvalues.

    With ``D = (lambda - mu)^2 + 4(k - mu)`` the eigenvalues are
    ``((lambda - mu) +- sqrt(D)) / 2`` with multiplicities
    ``((n - 1) -+ (2k + (n - 1)(lambda - mu)) / sqrt(D)) / 2``.
    """
    n, k, lam, mu = p
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    root = math.sqrt(disc)
    eig = ((lam - mu + root) / 2, (lam - mu - root) / 2)
    skew = 2 * k + (n - 1) * (lam - mu)
    conference = skew == 0
    if disc <= 0:
        half = Fraction(n - 1, 2)
        return Feasibility(p, disc, eig, (half, half), conference, False,
                           "non-positive discriminant")
    if conference:
        half = Fraction(n - 1, 2)
        ok = half.denominator == 1
        return Feasibility(p, disc, eig, (half, half), True, ok,
                           "conference case" + ("" if ok else ": n - 1 odd"))
    s = math.isqrt(disc)
    if s * s != disc:
        return Feasibility(p, disc, eig, None, False, False,
                           "irrational eigenvalues outside the conference case")
    f = Fraction(n - 1, 2) - Fraction(skew, 2 * s)
    g = Fraction(n - 1, 2) + Fraction(skew, 2 * s)
    ok = f.denominator == 1 and g.denominator == 1 and f >= 0 and g >= 0
    reason = "integral multiplicities" if ok else "multiplicities not non-negative integers"
    return Feasibility(p, disc, eig, (f, g), False, ok, reason)
