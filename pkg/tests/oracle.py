"""Pure-Python reference implementations used as independent test oracles.

Nothing here touches numpy bit tricks: adjacency is a list of Python sets
and every quantity is counted straight from its definition.
"""

from fractions import Fraction
from itertools import combinations


def adjacency_sets(n, edges):
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def codegree(adj, R, Y=None):
    ys = range(len(adj)) if Y is None else Y
    return sum(1 for w in ys if all(w in adj[r] for r in R))


def edges_between(adj, A, B):
    return sum(1 for a in A for b in B if b in adj[a])


def density(adj, A, B):
    return Fraction(edges_between(adj, A, B), len(A) * len(B))


def srg_params(adj):
    """(n, k, lam, mu) by direct enumeration, or None when not an SRG."""
    n = len(adj)
    degs = {len(a) for a in adj}
    if len(degs) != 1:
        return None
    lam, mu = set(), set()
    for u, v in combinations(range(n), 2):
        c = len(adj[u] & adj[v])
        (lam if v in adj[u] else mu).add(c)
    if len(lam) != 1 or len(mu) != 1:
        return None
    return n, degs.pop(), lam.pop(), mu.pop()


def quadratic_residues(q):
    return {(x * x) % q for x in range(1, q)}


def paley_edges(q):
    qr = quadratic_residues(q)
    return [(u, v) for u, v in combinations(range(q), 2) if (v - u) % q in qr]


def petersen_edges():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return outer + spokes + inner


def rset_codegrees(adj, A, Y, r):
    return [codegree(adj, R, Y) for R in combinations(A, r)]
