
import pytest
from hypothesis import given, settings, strategies as st

from prosimpl.constructions import (Product, colimit_of, enumerate_maps, find_isomorphism,
                                    find_map, pushout, search_order)
from prosimpl.errors import BudgetError, MalformedExpression
from prosimpl.fixtures import fixture_ssets
from prosimpl.simplicial import (FinSSet, SMap, SimplexRef, boundary, circle, codegeneracy, coface,
                                 compose_ordinal, constant_map, epi_mono, horn, identity, inclusion,
                                 nd, ordinal_map, simplex_map, standard_simplex, sub_sset, surjection,
                                 validate, validate_map, word_of)
from prosimpl.truncated import build_from_raw


def refs_of(X, n):
    return X.all_simplices(n)


@st.composite
def monotone(draw, m_max=4, n_max=4):
    n = draw(st.integers(0, n_max))
    m = draw(st.integers(0, m_max))
    vals = sorted(draw(st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1)))
    return tuple(vals), n


def test_ordinal_helpers():
    assert coface(2, 1) == (0, 2)
    assert codegeneracy(1, 0) == (0, 0, 1)
    assert surjection((1, 0), 3) == (0, 0, 0, 1)
    assert word_of((0, 0, 0, 1)) == (1, 0)
    assert epi_mono((0, 0, 2)) == ((0, 0, 1), (0, 2))


@given(monotone())
def test_epi_mono_factorization(data):
    theta, n = data
    eps, image = epi_mono(theta)
    assert compose_ordinal(image, eps) == theta
    assert list(image) == sorted(set(image))


@given(st.integers(1, 4), st.data())
def test_surjection_word_round_trip(m, data):
    k = data.draw(st.integers(0, m))
    word = tuple(sorted(data.draw(st.sets(st.integers(0, m - 1), min_size=k, max_size=k)), reverse=True))
    assert word_of(surjection(word, m)) == word


def _identities_hold(X, ref):
    p = X.ref_dim(ref)
    if p >= 2:
        for j in range(p + 1):
            for i in range(j):
                assert X.face(X.face(ref, j), i) == X.face(X.face(ref, i), j - 1)
    for j in range(p + 1):
        for i in range(j + 1):
            assert X.degeneracy(X.degeneracy(ref, j), i) == X.degeneracy(X.degeneracy(ref, i), j + 1)
    for j in range(p + 1):
        s = X.degeneracy(ref, j)
        assert X.face(s, j) == ref and X.face(s, j + 1) == ref
        if p == 0:
            continue
        for i in range(j):
            assert X.face(s, i) == X.degeneracy(X.face(ref, i), j - 1)
        for i in range(j + 2, p + 2):
            assert X.face(s, i) == X.degeneracy(X.face(ref, i - 1), j)


@pytest.mark.parametrize("name", ["delta2", "bdelta3", "circle", "torus", "wedge_circles"])
def test_simplicial_identities_on_all_simplices(name):
    X = fixture_ssets()[name]
    for n in range(min(X.dim, 2) + 2):
        for ref in refs_of(X, n):
            _identities_hold(X, ref)


@settings(max_examples=60, deadline=None)
@given(monotone(m_max=3, n_max=3), monotone(m_max=3, n_max=3))
def test_operators_compose(a, b):
    # (theta psi)^* = psi^* theta^* on the top simplex of Delta^3
    X = standard_simplex(3)
    top = nd("0123")
    psi, p = a
    theta, q = b
    if max(theta) > 3 or max(psi) > len(theta) - 1:
        return
    lhs = X.apply(compose_ordinal(theta, psi), top)
    rhs = X.apply(psi, X.apply(theta, top))
    assert lhs == rhs


def test_normal_form_of_degenerate_faces():
    X = circle()
    s = X.degeneracy(nd("e"), 0)
    assert s == SimplexRef((0,), "e")
    assert X.face(s, 0) == nd("e") and X.face(s, 2) == SimplexRef((0,), "v")
    assert X.normalize([("d", 0), ("s", 1), ("s", 0)], "v") == SimplexRef((0,), "v")
    with pytest.raises(MalformedExpression):
        X.normalize([("x", 0)], "v")
    with pytest.raises(MalformedExpression):
        X.face(nd("v"), 0)


def test_generators_counts():
    assert standard_simplex(3).counts() == (4, 6, 4, 1)
    assert boundary(2).counts() == (3, 3)
    assert horn(2, 1).counts() == (3, 2)
    assert "02" not in horn(2, 1)
    assert standard_simplex(2).euler() == 1 and boundary(3).euler() == 2


def test_validate_fixtures_clean():
    for X in fixture_ssets().values():
        assert validate(X) == []


def test_validate_locates_problems():
    bad = FinSSet([["a", "b"], ["e"]], {"e": [nd("a")]})
    (v,) = validate(bad)
    assert v.where == "e" and v.check == "faces"
    bad = FinSSet([["0", "1", "2"], ["01", "02", "12"], ["012"]],
                  {"01": [nd("1"), nd("0")], "02": [nd("2"), nd("0")], "12": [nd("2"), nd("1")],
                   "012": [nd("12"), nd("01"), nd("01")]})
    assert any(v.where == "012" and v.check.startswith("d") for v in validate(bad))


def test_maps_and_composition():
    D1, D2 = standard_simplex(1), standard_simplex(2)
    f = ordinal_map((0, 2), 2)
    assert f.source == D1 and f("01") == nd("02")
    g = ordinal_map((0, 0, 1), 1)
    h = g.compose(f)
    assert h("01") == nd("01")
    assert validate_map(h) == []
    c = constant_map(D2, D1, "1")
    assert c("012") == SimplexRef((1, 0), "1") and validate_map(c) == []
    chi = simplex_map(circle(), SimplexRef((0,), "e"))
    assert chi("012") == SimplexRef((0,), "e") and chi("02") == nd("e")
    assert identity(D2).is_isomorphism() and not c.is_isomorphism()


def test_validate_map_reports_face_mismatch():
    D1 = standard_simplex(1)
    f = SMap(D1, D1, {"0": nd("0"), "1": nd("0"), "01": nd("01")})
    assert any(v.where == "01" for v in validate_map(f))


def test_products():
    assert Product(standard_simplex(1), standard_simplex(1)).obj.counts() == (4, 5, 2)
    P = Product(standard_simplex(2), standard_simplex(1))
    assert P.obj.counts() == (6, 12, 10, 3)
    assert validate(P.obj) == []
    assert validate_map(P.proj1) == [] and validate_map(P.proj2) == []
    S = Product(circle(), circle()).obj
    assert S.euler() == 0 and validate(S) == []


def test_sub_sset_and_inclusion():
    D2 = standard_simplex(2)
    A = sub_sset(D2, ["01", "12"])
    assert A.counts() == (3, 2)
    assert validate_map(inclusion(A, D2)) == []


def test_pushout_glues_circle():
    pts = boundary(1)
    P = pushout(inclusion(pts, standard_simplex(1)), constant_map(pts, standard_simplex(0), "0"))
    assert P.obj.counts() == (1, 1)
    assert find_isomorphism(P.obj, circle()) is not None


def test_colimit_creates_degeneracy():
    D1, D0 = standard_simplex(1), standard_simplex(0)
    col = colimit_of({"a": D1, "b": D0}, [("a", "b", constant_map(D1, D0, "0"))])
    assert col.obj.counts() == (1,)
    assert col.legs["a"]("01") == SimplexRef((0,), col.legs["b"]("0").base)


def test_map_enumeration():
    maps = list(enumerate_maps(standard_simplex(1), circle()))
    assert len(maps) == 2
    assert len(list(enumerate_maps(boundary(2), standard_simplex(1)))) == 4
    fixed = {"0": nd("1"), "1": nd("0")}
    assert find_map(standard_simplex(1), standard_simplex(1), fixed) is None


def test_search_order_places_faces_first():
    X = standard_simplex(2)
    order = search_order(X)
    seen = set()
    for x in order:
        assert all(r.base in seen for r in X.face_refs(x))
        seen.add(x)


def test_build_from_raw_normal_form():
    # monotone maps [n] -> [1], i.e. the nerve of [1]
    def levels(n):
        for c in range(n + 2):
            yield tuple([0] * (n + 1 - c) + [1] * c)

    face = lambda r, i: r[:i] + r[i + 1:]
    degen = lambda r, j: r[:j + 1] + r[j:]
    X = build_from_raw("I", levels, face, degen, 3, rank=lambda r: len(r) - 1)
    assert X.counts() == (2, 1)
    assert X.locate((0, 0, 1, 1)) == SimplexRef((2, 0), X.locate((0, 1)).base)


def test_budget_on_raw_levels():
    with pytest.raises(BudgetError):
        build_from_raw("B", lambda n: range(10), lambda r, i: r, lambda r, j: r, 0,
                       rank=lambda r: 0, map_cap=5)
