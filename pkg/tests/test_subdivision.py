import pytest

from prosimpl.constructions import find_isomorphism
from prosimpl.fixtures import degree_map_boundary, edge_to_circle, fixture_complexes, fixture_ssets
from prosimpl.homology import homology, induced_map_homology
from prosimpl.simplicial import boundary, circle, nd, standard_simplex, validate, validate_map
from prosimpl.subdivision import (last_vertex, pi_comparison, sd_map, sd_ordinal, sd_sset,
                                  sd_standard, subdivide, tower)


def test_standard_counts():
    assert sd_standard(0).counts() == (1,)
    assert sd_standard(1).counts() == (3, 2)
    assert sd_standard(2).counts() == (7, 12, 6)


def test_sd_of_non_complexes():
    S = sd_sset(circle())
    assert S.counts() == (2, 2) and validate(S) == []
    # a degenerate face collapses part of sd(Delta^2)
    from prosimpl.simplicial import FinSSet, SimplexRef
    cone = FinSSet([["a", "b"], ["e"], ["t"]],
                   {"e": [nd("b"), nd("a")], "t": [SimplexRef((0,), "b"), nd("e"), nd("e")]})
    assert validate(cone) == []
    assert validate(sd_sset(cone)) == []


def test_sd_ordinal_functorial():
    a = sd_ordinal((0, 2), 2)
    b = sd_ordinal((0, 1, 1), 1)
    assert b.compose(a).assignment == sd_ordinal((0, 1), 1).assignment


def test_pi_comparison_isomorphism_on_complexes():
    for name, K in fixture_complexes().items():
        if name in ("torus", "rp2"):
            continue
        pi, iso = pi_comparison(K)
        assert iso, name


def test_pi_comparison_not_iso_on_circle():
    pi, iso = pi_comparison(circle())
    assert not iso


def test_last_vertex_on_interval():
    g = last_vertex(standard_simplex(1))
    sub = subdivide(standard_simplex(1))
    assert validate_map(g) == []
    images = sorted(str(g.assignment[x]) for x in sub.obj.level(1))
    assert images == ["01", "s0(1)"]


def test_last_vertex_on_circle_hits_edge_once():
    g = last_vertex(circle())
    hits = [x for x in g.source.level(1) if g.assignment[x] == nd("e")]
    assert len(hits) == 1


def test_naturality_of_gamma():
    for f in (edge_to_circle(), degree_map_boundary()):
        lhs = f.compose(last_vertex(f.source))
        rhs = last_vertex(f.target).compose(sd_map(f))
        assert lhs.assignment == rhs.assignment


def test_sd_map_valid():
    f = degree_map_boundary()
    g = sd_map(f)
    assert validate_map(g) == []


@pytest.mark.parametrize("name", ["bdelta2", "circle", "hexagon", "wedge_circles"])
def test_euler_and_homology_invariant(name):
    X = fixture_ssets()[name]
    t = tower(X, 2)
    for Y in t.levels:
        assert Y.euler() == X.euler()
        assert [str(h) for h in homology(Y)] == [str(h) for h in homology(X)]
    for m in induced_map_homology(t.gamma_composite()):
        assert m.iso


def test_tower_counts():
    t = tower(standard_simplex(1), 2)
    assert [L.counts() for L in t.levels] == [(3, 2), (5, 4)]
    assert find_isomorphism(sd_sset(boundary(2)), t.levels[0]) is None
