import random

import pytest
from hypothesis import given, settings, strategies as st

from prosimpl.fixtures import degree_map_boundary, fixture_ssets, rp2, torus
from prosimpl.homology import (ChainComplex, HomologyGroup, SparseSNF, betti, determinant,
                               homology, homology_basis, induced_map_homology, matmul, matrix_text,
                               pi0, smith_normal_form)
from prosimpl.simplicial import circle, constant_map, identity, standard_simplex

matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)))


def _diag_chain_ok(D):
    d = [D[k][k] for k in range(min(len(D), len(D[0]))) if D[k][k]]
    return all(x > 0 for x in d) and all(d[k + 1] % d[k] == 0 for k in range(len(d) - 1))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_reconstructs(M):
    D, U, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    assert _diag_chain_ok(D)
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            assert i == j or x == 0


def test_snf_known_cases():
    D, _, _ = smith_normal_form([[2, 0], [0, 3]])
    assert D == [[1, 0], [0, 6]]
    D, _, _ = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [D[k][k] for k in range(3)] == [2, 6, 12]


def test_sparse_inverses():
    rng = random.Random(3)
    for _ in range(40):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        cols = {j: {i: rng.randint(-4, 4) for i in range(m) if rng.random() < 0.5} for j in range(n)}
        cols = {j: {i: v for i, v in c.items() if v} for j, c in cols.items()}
        S = SparseSNF(m, n, cols, rows=True, cols=True)
        eye = [[int(i == j) for j in range(m)] for i in range(m)]
        U = [[S.U[i].get(j, 0) for j in range(m)] for i in range(m)]
        # the inverse is kept column by column
        Ui = [[S.Uinv[j].get(i, 0) for j in range(m)] for i in range(m)]
        assert matmul(U, Ui) == eye


def test_determinant():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[2, 0, 0], [0, 3, 0], [1, 1, 5]]) == 30


def test_homology_oracles():
    assert [str(h) for h in homology(circle())] == ["Z", "Z"]
    assert [str(h) for h in homology(rp2().sset())] == ["Z", "Z/2", "0"]
    assert [str(h) for h in homology(torus().sset())] == ["Z", "Z^2", "Z"]
    assert betti(fixture_ssets()["bdelta3"]) == [1, 0, 1]


def test_d_squared_zero():
    for X in fixture_ssets().values():
        assert ChainComplex(X).check_d2()


def test_degenerate_faces_dropped():
    # the circle's edge has boundary v - v = 0
    cc = ChainComplex(circle())
    assert cc.dense(1) == [[0]]


def test_basis_coordinates():
    cc = ChainComplex(torus().sset())
    B = homology_basis(cc, 1)
    assert str(B.group) == "Z^2"


def test_induced_maps():
    maps = induced_map_homology(constant_map(circle(), standard_simplex(0), "0"))
    assert [m.iso for m in maps] == [True, False]
    maps = induced_map_homology(identity(rp2().sset()))
    assert all(m.iso for m in maps)
    maps = induced_map_homology(degree_map_boundary())
    assert [m.iso for m in maps][:2] == [True, True]


def test_pi0():
    from prosimpl.simplicial import boundary
    assert pi0(boundary(1))[0] == 2
    assert pi0(torus().sset())[0] == 1


def test_group_strings_and_matrix_text():
    assert str(HomologyGroup(2, (2, 4))) == "Z^2 + Z/2 + Z/4"
    assert str(HomologyGroup(0, ())) == "0"
    assert matrix_text([[1, -2], [0, 3]]) == "2 2\n1 -2\n0 3\n"
