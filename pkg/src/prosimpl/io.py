"""JSON readers and writers for every object the package exchanges.

A reference inside a file is either an inline object, a path (relative to the
referring file) or ``fixture:<name>`` for the in-repo corpus.
"""
from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from .category import FinCategory, Functor, Groupoid, Poset
from .complexes import SimplicialComplex
from .diagrams import Diagram, FibrantTestObject, ProMap
from .errors import MalformedExpression
from .simplicial import FinSSet, SMap, SimplexRef


def dumps(record) -> str:
    """Byte-stable JSON text (insertion order preserved, fixed separators)."""
    return json.dumps(record, indent=2, ensure_ascii=False) + "\n"


def write_json(record, path):
    Path(path).write_text(dumps(record), encoding="utf-8")


def read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise MalformedExpression(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise MalformedExpression(f"{path}: not JSON ({exc.msg} at line {exc.lineno})") from None


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("prosimpl") / "data" / f"{name}.json"))


def _resolve(ref, base: Path | None):
    """(json data, directory for nested refs)."""
    if isinstance(ref, dict):
        return ref, base
    if isinstance(ref, os.PathLike):
        ref = os.fspath(ref)
    if not isinstance(ref, str):
        raise MalformedExpression(f"expected an object or a path, got {ref!r}")
    if ref.startswith("fixture:"):
        p = fixture_path(ref[len("fixture:"):])
    else:
        p = Path(ref)
        if base is not None and not p.is_absolute():
            p = base / p
    return read_json(p), p.parent


def _need(data: dict, key: str, what: str):
    if not isinstance(data, dict) or key not in data:
        raise MalformedExpression(f"{what}: missing field {key!r}")
    return data[key]


# -- simplicial sets and maps -----------------------------------------------------------

def ref_record(r: SimplexRef) -> dict:
    return {"degens": list(r.word), "base": r.base}


def _ref(rec, where: str) -> SimplexRef:
    if isinstance(rec, str):
        return SimplexRef((), rec)
    try:
        return SimplexRef(tuple(int(j) for j in rec.get("degens", ())), str(rec["base"]))
    except (KeyError, TypeError, ValueError, AttributeError):
        raise MalformedExpression(f"{where}: bad face record {rec!r}") from None


def _key_order(X: FinSSet):
    return sorted(X.ids(), key=lambda x: (X.dim_of(x), x))


def sset_to_json(X: FinSSet) -> dict:
    return {"name": X.name,
            "simplices": [list(level) for level in X.simplices],
            "faces": {x: [ref_record(r) for r in X.faces[x]] for x in _key_order(X) if X.dim_of(x)}}


def sset_from_json(data, base: Path | None = None, name: str | None = None) -> FinSSet:
    data, base = _resolve(data, base)
    if "vertices" in data and "facets" in data:
        return complex_from_json(data).sset()
    levels = _need(data, "simplices", "simplicial set")
    if not isinstance(levels, list) or not all(isinstance(lv, list) for lv in levels):
        raise MalformedExpression("simplicial set: 'simplices' must be a list of lists")
    faces = {}
    for x, recs in data.get("faces", {}).items():
        if not isinstance(recs, list):
            raise MalformedExpression(f"simplicial set: faces of {x} must be a list")
        faces[x] = [_ref(r, f"face of {x}") for r in recs]
    X = FinSSet([[str(s) for s in lv] for lv in levels], faces, name=name or data.get("name", "X"))
    if data.get("assume_fibrant"):
        X.kan = True
    return X


def smap_to_json(f: SMap, inline: bool = True) -> dict:
    out = {}
    if inline:
        out["source"] = sset_to_json(f.source)
        out["target"] = sset_to_json(f.target)
    out["on"] = {x: ref_record(f.assignment[x]) for x in _key_order(f.source)}
    return out


def smap_from_json(data, base: Path | None = None, source: FinSSet | None = None,
                   target: FinSSet | None = None) -> SMap:
    data, base = _resolve(data, base)
    src = source if source is not None else sset_from_json(_need(data, "source", "map"), base)
    tgt = target if target is not None else sset_from_json(_need(data, "target", "map"), base)
    on = _need(data, "on", "map")
    return SMap(src, tgt, {str(x): _ref(r, f"image of {x}") for x, r in on.items()},
                name=data.get("name", "f"))


# -- complexes, categories, functors ------------------------------------------------------

def complex_to_json(K: SimplicialComplex) -> dict:
    return {"name": K.name, "vertices": list(K.vertices),
            "facets": [[K.vertices[v] for v in c] for c in K.facets()]}


def complex_from_json(data, base: Path | None = None) -> SimplicialComplex:
    data, _ = _resolve(data, base)
    return SimplicialComplex(_need(data, "vertices", "complex"), _need(data, "facets", "complex"),
                             name=data.get("name", "K"))


def category_to_json(C: FinCategory) -> dict:
    if isinstance(C, Poset):
        return {"name": C.name, "elements": list(C.elements),
                "leq": [[a, b] for a in C.elements for b in C.elements if C.less(a, b)]}
    return {"name": C.name, "objects": list(C.objects),
            "morphisms": [{"id": m, "src": s, "dst": t} for m, (s, t) in C.morphisms.items()],
            "compose": [[g, f, h] for (g, f), h in C.compose.items()],
            "identities": dict(C.identities)}


def category_from_json(data, base: Path | None = None) -> FinCategory:
    data, _ = _resolve(data, base)
    name = data.get("name", "C")
    if "elements" in data:
        try:
            return Poset(data["elements"], [tuple(p) for p in data.get("leq", [])], name=name)
        except TypeError:
            raise MalformedExpression("poset: malformed 'leq' entry") from None
    try:
        mors = {m["id"]: (m["src"], m["dst"]) for m in _need(data, "morphisms", "category")}
        comp = {(g, f): h for g, f, h in _need(data, "compose", "category")}
    except (KeyError, TypeError, ValueError):
        raise MalformedExpression("category: malformed morphism or composition entry") from None
    return FinCategory(_need(data, "objects", "category"), mors, comp,
                       _need(data, "identities", "category"), name=name)


def functor_from_json(data, base: Path | None = None, source=None, target=None) -> Functor:
    data, base = _resolve(data, base)
    src = source or category_from_json(_need(data, "source", "functor"), base)
    tgt = target or category_from_json(_need(data, "target", "functor"), base)
    return Functor(src, tgt, _need(data, "objects", "functor"), _need(data, "morphisms", "functor"),
                   name=data.get("name", "F"))


# -- diagrams, pro-maps, test objects -----------------------------------------------------

def diagram_from_json(data, base: Path | None = None) -> Diagram:
    data, base = _resolve(data, base)
    I = category_from_json(_need(data, "index", "diagram"), base)
    objs = {a: sset_from_json(r, base) for a, r in _need(data, "objects", "diagram").items()}
    arrows = {}
    for m, r in data.get("arrows", {}).items():
        if m not in I.morphisms:
            raise MalformedExpression(f"diagram: unknown morphism {m!r}")
        arrows[m] = smap_from_json(r, base, objs[I.src(m)], objs[I.dst(m)])
    return Diagram(I, objs, arrows, name=data.get("name", "X"))


def diagram_to_json(X: Diagram) -> dict:
    return {"name": X.name, "index": category_to_json(X.index),
            "objects": {a: sset_to_json(A) for a, A in X.objects.items()},
            "arrows": {m: smap_to_json(F, inline=False) for m, F in X.arrows.items()
                       if not X.index.is_identity(m)}}


def promap_from_json(data, base: Path | None = None) -> ProMap:
    """``{"X": diagram over I, "Y": diagram over J, "alpha": {"objects", "morphisms"},
    "theta": {j: map X(alpha j) -> Y(j)}}``."""
    data, base = _resolve(data, base)
    X = diagram_from_json(_need(data, "X", "pro-map"), base)
    Y = diagram_from_json(_need(data, "Y", "pro-map"), base)
    alpha = functor_from_json(_need(data, "alpha", "pro-map"), base, Y.index, X.index)
    theta = {}
    for j, r in _need(data, "theta", "pro-map").items():
        if j not in Y.objects:
            raise MalformedExpression(f"pro-map: theta names unknown object {j!r}")
        theta[j] = smap_from_json(r, base, X.objects[alpha.on_object(j)], Y.objects[j])
    return ProMap(alpha, theta, X, Y, name=data.get("name", "p"))


def fibrant_from_json(data, base: Path | None = None) -> FibrantTestObject:
    """A groupoid (any category record) or a simplicial set flagged ``assume_fibrant``."""
    data, base = _resolve(data, base)
    if "groupoid" in data:
        return FibrantTestObject(Groupoid(category_from_json(data["groupoid"], base)))
    if "objects" in data and "morphisms" in data:
        return FibrantTestObject(Groupoid(category_from_json(data, base)))
    X = sset_from_json(data, base)
    return FibrantTestObject(X, assume_fibrant=bool(data.get("assume_fibrant")))


def inclusion_from_json(data, base: Path | None = None):
    """``{"X": diagram, "Y": diagram, "maps": {i: map X(i) -> Y(i)}}`` over one index."""
    data, base = _resolve(data, base)
    X = diagram_from_json(_need(data, "X", "inclusion"), base)
    Y = diagram_from_json(_need(data, "Y", "inclusion"), base)
    maps = {a: smap_from_json(r, base, X.objects[a], Y.objects[a])
            for a, r in _need(data, "maps", "inclusion").items()}
    return X, Y, maps


def load_any(path):
    """(kind, object) for a file of unknown kind."""
    data, base = _resolve(str(path), None)
    if not isinstance(data, dict):
        raise MalformedExpression(f"{path}: expected a JSON object")
    if "alpha" in data and "theta" in data:
        return "promap", promap_from_json(data, base)
    if "groupoid" in data:
        return "groupoid", category_from_json(data["groupoid"], base)
    if "X" in data and "Y" in data and "maps" in data:
        return "inclusion", inclusion_from_json(data, base)
    if "index" in data:
        return "diagram", diagram_from_json(data, base)
    if "on" in data and "complex" in data:
        return "complex", complex_from_json(data["complex"], base)
    if "on" in data:
        return "smap", smap_from_json(data, base)
    if "vertices" in data and "facets" in data:
        return "complex", complex_from_json(data, base)
    if "elements" in data or ("morphisms" in data and "objects" in data and "source" not in data):
        return "category", category_from_json(data, base)
    if "source" in data and "target" in data and "objects" in data:
        return "functor", functor_from_json(data, base)
    if "simplices" in data:
        return "sset", sset_from_json(data, base)
    raise MalformedExpression(f"{path}: cannot tell what kind of object this is")
