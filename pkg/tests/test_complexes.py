import pytest
from hypothesis import given, settings, strategies as st

from prosimpl.category import (FinCategory, Functor, Groupoid, Poset, cospan_category, cyclic_group,
                               discrete_category, identity_functor, nerve, nerve_map, ordinal,
                               terminal_category)
from prosimpl.complexes import (SimplicialComplex, boundary_complex, complex_vertex_map,
                                compose_realizations, face_poset, functor_of_map, horn_complex,
                                induced_poset_map, last_vertex_complex, order_complex,
                                realize_functor, simplex_complex)
from prosimpl.errors import CoherenceError, MustTruncateError, ValidationError
from prosimpl.fixtures import complex_maps, filtered_poset, fixture_complexes, rp2, torus
from prosimpl.simplicial import SimplexRef, nd, validate, validate_map


def test_complex_counts():
    assert torus().counts() == (7, 21, 14) and torus().euler() == 0
    assert rp2().counts() == (6, 15, 10) and rp2().euler() == 1
    assert horn_complex(2, 1).counts() == (3, 2)
    assert boundary_complex(3).counts() == (4, 6, 4)


def test_complex_rejects_bad_input():
    with pytest.raises(ValidationError):
        SimplicialComplex("ab", [("a", "c")])
    with pytest.raises(ValidationError):
        SimplicialComplex("abc", [("a", "b")])


def test_complex_sset_is_valid():
    for K in fixture_complexes().values():
        X = K.sset()
        assert validate(X) == []
        assert X.counts() == K.counts()


def test_order_complex_matches_nerve_of_face_poset():
    for name in ("delta2", "bdelta2", "horn21", "wedge"):
        K = fixture_complexes()[name]
        S = order_complex(K).sset()
        B = nerve(face_poset(K.sset()))
        assert S.simplices == B.simplices
        assert S.faces == B.faces


def test_order_complex_counts():
    assert order_complex(simplex_complex(2)).counts() == (7, 12, 6)
    assert order_complex(boundary_complex(2)).counts() == (6, 6)


def test_vertex_map_checks():
    D1, D2 = simplex_complex(1), simplex_complex(2)
    with pytest.raises(ValidationError):
        complex_vertex_map(D1, D1, {"0": "1", "1": "0"})
    with pytest.raises(ValidationError):
        complex_vertex_map(D2, boundary_complex(2), {v: v for v in "012"})
    g = complex_vertex_map(D2, D1, {"0": "0", "1": "0", "2": "1"})
    assert g("012") == SimplexRef((0,), "01")


def test_last_vertex_complex():
    g = last_vertex_complex(simplex_complex(1))
    assert validate_map(g) == []
    assert g("0") == nd("0") and g("01") == nd("1")


def test_functor_round_trip_all_fixture_maps():
    maps = complex_maps()
    assert len(maps) >= 10
    for f in maps.values():
        assert realize_functor(functor_of_map(f), f.source, f.target) == f


def test_realize_functor_names_bad_pair():
    f = complex_maps()["incl_d1_d2"]
    F = functor_of_map(f)
    F["01"] = nd("01")
    with pytest.raises(CoherenceError) as exc:
        realize_functor(F, f.source, f.target)
    assert exc.value.pair == ("0", "01") or exc.value.pair == ("1", "01")


def test_compose_realizations():
    maps = complex_maps()
    g, f = maps["collapse_d3_d2"], maps["collapse_d2_d1"]
    comp, ok = compose_realizations(g, f)
    assert ok and validate_map(comp) == []


def test_induced_poset_map_is_monotone():
    g = complex_maps()["fold_bd2_d1"]
    p = induced_poset_map(g)
    assert p("02") == "01" and p("12") == "1"


def test_poset_basics():
    P = Poset("abc", [("a", "b"), ("b", "c")])
    assert P.leq("a", "c") and not P.leq("c", "a")
    assert len(P.chains(2)) == 1
    with pytest.raises(ValidationError):
        Poset("ab", [("a", "b"), ("b", "a")])
    assert P.validate() == []
    assert '"a" -> "b"' in P.to_dot() and '"a" -> "c"' not in P.to_dot()


def test_category_validation_reports_bad_table():
    C = FinCategory(["x"], {"i": ("x", "x"), "f": ("x", "x")},
                    {("i", "i"): "i", ("i", "f"): "f", ("f", "i"): "f", ("f", "f"): "i"},
                    {"x": "i"})
    assert C.validate() == []
    bad = FinCategory(["x"], {"i": ("x", "x"), "f": ("x", "x")},
                      {("i", "i"): "i", ("i", "f"): "f", ("f", "i"): "i", ("f", "f"): "i"},
                      {"x": "i"})
    assert bad.validate()


def test_nerves_of_fixture_categories():
    assert nerve(terminal_category()).counts() == (1,)
    assert nerve(ordinal(1)).counts() == (2, 1)
    assert nerve(ordinal(2)).counts() == (3, 3, 1)
    assert nerve(cospan_category()).counts() == (3, 2)
    assert nerve(discrete_category("ab")).counts() == (2,)
    with pytest.raises(MustTruncateError):
        nerve(cyclic_group(2))


def test_nerve_of_group_is_truncated_kan():
    B = nerve(cyclic_group(2), trunc=3)
    assert B.counts() == (1, 1, 1, 1) and B.cap == 3 and B.kan
    assert validate(B) == []
    G = Groupoid(cyclic_group(3))
    assert G.nerve(2).counts() == (1, 2, 4)


def test_nerve_locate_degenerate_string():
    B = nerve(ordinal(2))
    r = B.locate((("0", "0", "2"), ()))
    assert r == SimplexRef((0,), "02")


def test_functor_validation_and_nerve_map():
    I, T = ordinal(1), terminal_category()
    F = Functor(I, T, {"0": "*", "1": "*"}, {m: "id_*" for m in I.morphisms})
    assert F.validate() == []
    f = nerve_map(F, nerve(I), nerve(T))
    assert validate_map(f) == []
    bad = Functor(I, I, {"0": "1", "1": "0"}, {"0<=0": "1<=1", "1<=1": "0<=0", "0<=1": "0<=1"})
    assert bad.validate()
    assert identity_functor(I).compose(identity_functor(I)).validate() == []


def test_left_filtered():
    assert filtered_poset().is_left_filtered()
    assert ordinal(1).is_left_filtered()
    assert not cospan_category().is_left_filtered()
    assert not discrete_category("ab").is_left_filtered()


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=8))
def test_poset_nerve_faces_valid(pairs):
    rel = [(str(a), str(b)) for a, b in pairs if a < b]
    P = Poset([str(k) for k in range(5)], rel)
    B = nerve(P)
    assert validate(B) == []
    assert B.counts()[0] == 5
    edges = len(B.level(1))
    assert edges == sum(1 for a in P.elements for b in P.elements if P.less(a, b))
