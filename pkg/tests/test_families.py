from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from srglab.families import (
    SpecError,
    SrgParams,
    complement_params,
    disjoint_cliques,
    eigen_feasibility,
    from_spec,
    identity_check,
    is_trivial,
    lattice,
    paley,
    triangular,
    verify_srg,
)
from srglab.graph import build_graph, complement

PALEY_PRIMES = [5, 13, 17, 29, 37, 41, 53, 61]


def params(g):
    v = verify_srg(g)
    assert v.ok, str(v)
    return tuple(v.params)


def oracle_params(g):
    return oracle.srg_params(oracle.adjacency_sets(g.n, g.edges()))


# -- generators ----------------------------------------------------------


def test_paley_examples():
    assert params(paley(5)) == (5, 2, 0, 1)
    assert sorted(paley(5).edges()) == sorted(build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).edges())
    assert params(paley(13)) == (13, 6, 2, 3)


@pytest.mark.parametrize("q", [7, 12, 9, 1, 3])
def test_paley_rejects(q):
    with pytest.raises(SpecError):
        paley(q)


@pytest.mark.parametrize("q", PALEY_PRIMES)
def test_paley_against_residue_oracle(q):
    g = paley(q)
    assert g.edges() == oracle.paley_edges(q)
    assert oracle_params(g) == params(g) == (q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4)


def test_triangular_examples():
    assert params(triangular(5)) == (10, 6, 3, 4)
    assert params(complement(triangular(5))) == (10, 3, 0, 1)
    assert params(triangular(4)) == (6, 4, 2, 4)
    with pytest.raises(SpecError):
        triangular(3)


def test_lattice_examples():
    assert params(lattice(3)) == (9, 4, 1, 2)
    assert params(lattice(4)) == (16, 6, 2, 2)
    assert params(lattice(2)) == (4, 2, 0, 2)
    with pytest.raises(SpecError):
        lattice(1)


def test_cliques_examples():
    assert params(disjoint_cliques(3, 4)) == (12, 3, 2, 0)
    assert params(disjoint_cliques(2, 2)) == (4, 1, 0, 0)
    v = verify_srg(disjoint_cliques(1, 5))
    assert v.kind == "Degenerate" and not v.ok
    for r, m in [(0, 3), (2, 1)]:
        with pytest.raises(SpecError):
            disjoint_cliques(r, m)


@pytest.mark.parametrize("m", [4, 5, 6, 7])
def test_triangular_and_lattice_against_oracle(m):
    for g, closed in [(triangular(m), (m * (m - 1) // 2, 2 * (m - 2), m - 2, 4)),
                      (lattice(m), (m * m, 2 * (m - 1), m - 2, 2))]:
        assert oracle_params(g) == params(g) == closed


# -- verify_srg -----------------------------------------------------------


def test_verify_non_regular_witness():
    v = verify_srg(build_graph(3, [(0, 1), (1, 2)]))
    assert v.kind == "NotRegular" and v.vertex in (0, 2)
    assert str(v) == "NotRegular vertex=0"


def test_verify_degenerate():
    assert verify_srg(build_graph(5, combinations(range(5), 2))).kind == "Degenerate"
    assert verify_srg(build_graph(5, [])).kind == "Degenerate"


def test_verify_codegree_mismatch_witness():
    # 6-cycle: regular, adjacent codegrees 0, non-adjacent codegrees 1 or 0
    g = build_graph(6, [(i, (i + 1) % 6) for i in range(6)])
    v = verify_srg(g)
    assert v.kind == "CodegreeMismatch"
    u, w = v.pair
    assert 0 <= u < w < 6
    assert str(v).startswith(f"CodegreeMismatch pair={u},{w}")


def test_family_strings():
    assert params(from_spec("paley:13")) == (13, 6, 2, 3)
    assert params(from_spec("~triangular:5")) == (10, 3, 0, 1)
    assert params(from_spec("lattice:4")) == (16, 6, 2, 2)
    assert params(from_spec("cliques:3x4")) == (12, 3, 2, 0)
    for bad in ["paley:12", "foo:3", "cliques:3", "paley:", "lattice:4x4"]:
        with pytest.raises(SpecError):
            from_spec(bad)


# -- parameter algebra ----------------------------------------------------


def test_identity_examples():
    assert identity_check(SrgParams(13, 6, 2, 3)) == 0
    assert identity_check(SrgParams(10, 3, 0, 1)) == 0
    assert identity_check(SrgParams(10, 3, 1, 1)) == -3
    assert not SrgParams(10, 3, 1, 1).is_valid


def test_complement_params_examples():
    assert complement_params(SrgParams(10, 6, 3, 4)) == SrgParams(10, 3, 0, 1)
    assert complement_params(SrgParams(13, 6, 2, 3)) == SrgParams(13, 6, 2, 3)
    assert complement_params(SrgParams(12, 3, 2, 0)) == SrgParams(12, 8, 4, 8)
    assert params(complement(disjoint_cliques(3, 4))) == (12, 8, 4, 8)


def test_complement_params_negative_field():
    with pytest.raises(ValueError):
        complement_params(SrgParams(5, 4, 0, 0))


def test_triviality_examples():
    assert is_trivial(SrgParams(12, 3, 2, 0))
    assert is_trivial(SrgParams(12, 8, 4, 8))
    assert not is_trivial(SrgParams(10, 3, 0, 1))


def test_feasibility_petersen_matches_spectrum():
    f = eigen_feasibility(SrgParams(10, 3, 0, 1))
    assert f.feasible and not f.conference
    assert f.eigenvalues == (1.0, -2.0)
    assert f.multiplicities == (Fraction(5), Fraction(4))
    # independent oracle: spectrum of the Petersen adjacency matrix
    A = build_graph(10, oracle.petersen_edges()).adj.astype(float)
    ev = np.rint(np.linalg.eigvalsh(A)).astype(int)
    assert sorted(ev.tolist()) == [-2] * 4 + [1] * 5 + [3]


def test_feasibility_conference_and_irrational():
    f = eigen_feasibility(SrgParams(5, 2, 0, 1))
    assert f.feasible and f.conference and f.multiplicities == (2, 2)
    f = eigen_feasibility(SrgParams(21, 10, 4, 5))
    assert f.discriminant == 21 and f.conference
    assert f.feasible and f.multiplicities == (10, 10)


def test_feasibility_rejects_bad_multiplicities():
    # (16, 5, 0, 2): D = 16, multiplicities 10 and 5 (Clebsch): feasible
    assert eigen_feasibility(SrgParams(16, 5, 0, 2)).feasible
    # identity holds but multiplicities are fractional
    f = eigen_feasibility(SrgParams(21, 8, 1, 4))
    assert identity_check(SrgParams(21, 8, 1, 4)) == 0
    assert not f.feasible and f.multiplicities == (Fraction(72, 5), Fraction(28, 5))
    # identity holds, eigenvalues irrational, not a conference graph
    f = eigen_feasibility(SrgParams(9, 4, 0, 3))
    assert not f.feasible and f.multiplicities is None


@pytest.mark.parametrize("q", PALEY_PRIMES)
def test_paley_spectrum_matches_feasibility(q):
    f = eigen_feasibility(SrgParams(*params(paley(q))))
    ev = np.linalg.eigvalsh(paley(q).adj.astype(float))
    lo, hi = sorted(f.eigenvalues)
    assert np.isclose(ev, lo, atol=1e-8).sum() == f.multiplicities[1]
    assert np.isclose(ev, hi, atol=1e-8).sum() == f.multiplicities[0]


# -- properties ----------------------------------------------------------

family_specs = st.one_of(
    st.sampled_from(PALEY_PRIMES).map(lambda q: f"paley:{q}"),
    st.integers(4, 14).map(lambda m: f"triangular:{m}"),
    st.integers(2, 10).map(lambda m: f"lattice:{m}"),
    st.tuples(st.integers(2, 8), st.integers(2, 8)).map(lambda rm: f"cliques:{rm[0]}x{rm[1]}"),
)


@settings(max_examples=50, deadline=None)
@given(family_specs, st.booleans())
def test_generated_graphs_satisfy_identity(spec, comp):
    g = from_spec(("~" if comp else "") + spec)
    v = verify_srg(g)
    assert v.ok and identity_check(v.params) == 0
    assert v.params.is_valid


@settings(max_examples=50, deadline=None)
@given(family_specs)
def test_complement_commutes_with_params(spec):
    p = verify_srg(from_spec(spec)).params
    comp = verify_srg(from_spec("~" + spec))
    assert comp.params == complement_params(p)
    assert complement_params(complement_params(p)) == p


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 10), st.integers(2, 10))
def test_cliques_trivial(r, m):
    assert is_trivial(SrgParams(r * m, m - 1, m - 2, 0))
    assert is_trivial(complement_params(SrgParams(r * m, m - 1, m - 2, 0)))
