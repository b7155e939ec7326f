"""The in-repo fixture corpus: small complexes, simplicial sets, categories and maps."""
from __future__ import annotations

from .category import FinCategory, Poset, cospan_category, cyclic_group, ordinal, terminal_category
from .complexes import (SimplicialComplex, boundary_complex, complex_vertex_map, horn_complex,
                        simplex_complex)
from .simplicial import FinSSet, SMap, circle, nd


def hexagon() -> SimplicialComplex:
    vs = [str(k) for k in range(6)]
    return SimplicialComplex(vs, [(vs[k], vs[(k + 1) % 6]) for k in range(6)], name="hexagon")


def torus() -> SimplicialComplex:
    """Seven-vertex triangulation of the torus."""
    vs = [str(k) for k in range(7)]
    facets = []
    for i in range(7):
        facets.append((vs[i], vs[(i + 1) % 7], vs[(i + 3) % 7]))
        facets.append((vs[i], vs[(i + 2) % 7], vs[(i + 3) % 7]))
    return SimplicialComplex(vs, facets, name="torus")


def rp2() -> SimplicialComplex:
    """Six-vertex triangulation of the real projective plane."""
    facets = ["012", "023", "034", "045", "051", "124", "235", "341", "452", "513"]
    return SimplicialComplex("012345", [tuple(f) for f in facets], name="RP2")


def wedge() -> SimplicialComplex:
    """Two edges sharing the vertex 1."""
    return SimplicialComplex("012", [("0", "1"), ("1", "2")], name="wedge")


def point() -> SimplicialComplex:
    return simplex_complex(0)


def fixture_complexes() -> dict:
    """The complexes on which the subdivision comparison is checked."""
    out = {f"delta{n}": simplex_complex(n) for n in range(4)}
    out.update({"bdelta2": boundary_complex(2), "bdelta3": boundary_complex(3),
                "horn21": horn_complex(2, 1), "hexagon": hexagon(), "torus": torus(), "rp2": rp2(),
                "wedge": wedge()})
    return out


def wedge_of_circles() -> FinSSet:
    return FinSSet([["v"], ["a", "b"]], {"a": [nd("v"), nd("v")], "b": [nd("v"), nd("v")]},
                   name="S1vS1")


def fixture_ssets() -> dict:
    """Every fixture as a simplicial set (complexes via their realization)."""
    out = {k: K.sset() for k, K in fixture_complexes().items()}
    out["circle"] = circle()
    out["wedge_circles"] = wedge_of_circles()
    return out


def fixture_categories() -> dict:
    return {"terminal": terminal_category(), "interval": ordinal(1), "cospan": cospan_category()}


def filtered_poset() -> Poset:
    """Two objects 1 <= 0; left filtered (1 is a common source)."""
    return Poset(["0", "1"], [("1", "0")], name="filtered2")


def bz2() -> FinCategory:
    return cyclic_group(2)


def fixture_complex_maps() -> list:
    """(name, K, L, vertex map) for maps between fixture complexes."""
    D0, D1, D2, D3 = (simplex_complex(n) for n in range(4))
    B2, B3 = boundary_complex(2), boundary_complex(3)
    H = horn_complex(2, 1)
    W = wedge()
    return [
        ("id_bdelta2", B2, B2, {v: v for v in "012"}),
        ("id_delta2", D2, D2, {v: v for v in "012"}),
        ("collapse_d1", D1, D0, {"0": "0", "1": "0"}),
        ("collapse_d2_d1", D2, D1, {"0": "0", "1": "0", "2": "1"}),
        ("incl_d1_d2", D1, D2, {"0": "0", "1": "2"}),
        ("incl_bd2_d2", B2, D2, {v: v for v in "012"}),
        ("incl_horn_d2", H, D2, {v: v for v in "012"}),
        ("incl_bd3_d3", B3, D3, {v: v for v in "0123"}),
        ("fold_bd2_d1", B2, D1, {"0": "0", "1": "1", "2": "1"}),
        ("wedge_to_d1", W, D1, {"0": "0", "1": "1", "2": "1"}),
        ("d2_to_d3_face", D2, D3, {"0": "0", "1": "2", "2": "3"}),
        ("collapse_d3_d2", D3, D2, {"0": "0", "1": "1", "2": "1", "3": "2"}),
        ("horn_to_d1", H, D1, {"0": "0", "1": "0", "2": "1"}),
    ]


def complex_maps() -> dict:
    return {name: complex_vertex_map(K, L, vm, name=name) for name, K, L, vm in fixture_complex_maps()}


def edge_to_circle(K: SimplicialComplex | None = None) -> SMap:
    """Delta^1 -> S^1 wrapping the edge once."""
    K = K or simplex_complex(1)
    return SMap(K.sset(), circle(), {"0": nd("v"), "1": nd("v"), "01": nd("e")}, name="wrap")


def degree_map_boundary() -> SMap:
    """dDelta^2 -> S^1 sending each edge to e, recording degree 1 - 1 + 1."""
    B = boundary_complex(2).sset()
    return SMap(B, circle(), {"0": nd("v"), "1": nd("v"), "2": nd("v"),
                              "01": nd("e"), "02": nd("e"), "12": nd("e")}, name="wind")
