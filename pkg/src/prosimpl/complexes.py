"""Ordered simplicial complexes, face posets, order complexes and the passage
between maps of complexes and functors on their face posets."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .category import Poset
from .errors import CoherenceError, ValidationError
from .simplicial import FinSSet, SMap, SimplexRef, nd, subset_id, surjection, word_of


class SimplicialComplex:
    """Totally ordered vertices and a family of facets; the faces are all
    non-empty subsets of facets."""

    def __init__(self, vertices, facets, name: str = "K"):
        self.name = name
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError(f"{name}: repeated vertex")
        self.pos = {v: k for k, v in enumerate(self.vertices)}
        found = set()
        for f in facets:
            try:
                c = tuple(sorted({self.pos[str(v)] for v in f}))
            except KeyError as exc:
                raise ValidationError(f"{name}: facet {list(f)} uses unknown vertex {exc}") from None
            if not c:
                raise ValidationError(f"{name}: empty facet")
            for m in range(1, len(c) + 1):
                found.update(combinations(c, m))
        missing = [v for v in self.vertices if (self.pos[v],) not in found]
        if missing:
            raise ValidationError(f"{name}: vertices {missing} lie in no face")
        top = max(len(c) for c in found) - 1
        self.levels = [sorted(c for c in found if len(c) == m + 1) for m in range(top + 1)]
        self.single = all(len(v) == 1 for v in self.vertices)
        self._sset = None

    def __repr__(self):
        return f"SimplicialComplex({self.name!r}, counts={self.counts()})"

    @property
    def dim(self) -> int:
        return len(self.levels) - 1

    def counts(self) -> tuple:
        return tuple(len(level) for level in self.levels)

    def euler(self) -> int:
        return sum((-1) ** n * c for n, c in enumerate(self.counts()))

    def level_set(self, n: int) -> frozenset:
        memo = self.__dict__.setdefault("_level_sets", {})
        if n not in memo:
            memo[n] = frozenset(self.levels[n])
        return memo[n]

    def face_id(self, c: tuple) -> str:
        return subset_id(tuple(self.vertices[k] for k in c), self.single)

    def faces(self):
        for level in self.levels:
            yield from level

    def facets(self) -> list:
        covered = {d[:i] + d[i + 1:] for d in self.faces() for i in range(len(d)) if len(d) > 1}
        return [c for c in self.faces() if c not in covered]

    def sset(self) -> FinSSet:
        if self._sset is None:
            simplices, faces, tuples = [], {}, {}
            for n, level in enumerate(self.levels):
                ids = []
                for c in level:
                    x = self.face_id(c)
                    ids.append(x)
                    tuples[x] = c
                    if n:
                        faces[x] = [nd(self.face_id(c[:i] + c[i + 1:])) for i in range(n + 1)]
                simplices.append(ids)
            X = FinSSet(simplices, faces, name=self.name)
            X.vertex_tuple = tuples
            self._sset = X
        return self._sset


def complex_to_sset(K: SimplicialComplex) -> FinSSet:
    return K.sset()


def simplex_complex(n: int) -> SimplicialComplex:
    return SimplicialComplex([str(k) for k in range(n + 1)], [range(n + 1)], name=f"Delta{n}")


def boundary_complex(n: int) -> SimplicialComplex:
    vs = [str(k) for k in range(n + 1)]
    return SimplicialComplex(vs, [c for c in combinations(vs, n)], name=f"dDelta{n}")


def horn_complex(n: int, k: int) -> SimplicialComplex:
    vs = [str(v) for v in range(n + 1)]
    facets = [c for c in combinations(vs, n) if str(k) in c]
    return SimplicialComplex(vs, facets, name=f"Lambda{n}_{k}")


# -- face posets and order complexes ------------------------------------------------

def face_closure(X: FinSSet, x: str) -> set:
    """Non-degenerate simplices reachable from x by iterated faces (x included)."""
    seen, stack = set(), [x]
    while stack:
        y = stack.pop()
        if y in seen:
            continue
        seen.add(y)
        stack.extend(r.base for r in X.face_refs(y))
    return seen


def face_poset(X: FinSSet) -> Poset:
    """sigma <= tau iff sigma lies in the subcomplex generated by tau."""
    elements = list(X.ids())
    below = {}
    for x in elements:
        # closure of x is x together with the closures of its faces
        got = {x}
        for r in X.face_refs(x):
            got |= below[r.base]
        below[x] = got
    pairs = [(s, t) for t in elements for s in below[t]]
    return Poset(elements, pairs, name=f"N{X.name}", closed=True)


def order_complex(K: SimplicialComplex) -> SimplicialComplex:
    """Chains of faces of K; vertices ordered by dimension, then lexicographically."""
    verts = [K.face_id(c) for c in K.faces()]
    facets = []
    for top in K.facets():
        # full flags inside a facet: grow by one vertex at a time
        flags = [((v,),) for v in top]
        for _ in range(len(top) - 1):
            flags = [fl + (tuple(sorted(fl[-1] + (v,))),) for fl in flags for v in top
                     if v not in fl[-1]]
        facets.extend([K.face_id(c) for c in fl] for fl in flags)
    return SimplicialComplex(verts, facets, name=f"sd{K.name}")


sd_complex = order_complex


# -- maps of complexes --------------------------------------------------------------

def complex_vertex_map(K: SimplicialComplex, L: SimplicialComplex, vmap: dict, name: str = "g") -> SMap:
    """The simplicial map of realizations induced by a vertex map that is
    weakly increasing on every simplex of K."""
    out = {}
    for c in K.faces():
        image = [L.pos[str(vmap[K.vertices[k]])] for k in c]
        if any(a > b for a, b in zip(image, image[1:])):
            raise ValidationError(f"{name}: vertex map reverses the order on {K.face_id(c)}")
        distinct = tuple(sorted(set(image)))
        if len(distinct) > L.dim + 1 or distinct not in L.level_set(len(distinct) - 1):
            raise ValidationError(f"{name}: image of {K.face_id(c)} is not a face of {L.name}")
        surj = tuple(distinct.index(v) for v in image)
        out[K.face_id(c)] = SimplexRef(word_of(surj), L.face_id(distinct))
    return SMap(K.sset(), L.sset(), out, name=name)


def last_vertex_complex(K: SimplicialComplex) -> SMap:
    """sd(K) -> K sending a face, viewed as a vertex of sd(K), to its last vertex."""
    S = sd_complex(K)
    return complex_vertex_map(S, K, {K.face_id(c): K.vertices[c[-1]] for c in K.faces()}, name="gamma")


def functor_of_map(f: SMap) -> dict:
    """The functor on the face poset of a complex that a map out of it determines."""
    return {x: f.assignment[x] for x in f.source.ids()}


def _as_complex_sset(L):
    return L.sset() if isinstance(L, SimplicialComplex) else L


def realize_functor(F: dict, L, X: FinSSet, name: str = "f") -> SMap:
    """The unique map L -> X restricting to F; order-compatibility is checked
    on every pair sigma <= tau."""
    S = _as_complex_sset(L)
    tuples = S.vertex_tuple
    by_tuple = {c: x for x, c in tuples.items()}
    for t in S.ids():
        if t not in F:
            raise CoherenceError(f"no value at {t}", pair=(t, t))
        n = S.dim_of(t)
        if X.ref_dim(F[t]) != n:
            raise CoherenceError(f"value at {t} has the wrong dimension", pair=(t, t))
        tc = tuples[t]
        for m in range(n):
            for pos in combinations(range(n + 1), m + 1):
                s = by_tuple[tuple(tc[p] for p in pos)]
                if X.apply(pos, F[t]) != F[s]:
                    raise CoherenceError(f"{name}: value at {s} is not the matching face of the value at {t}",
                                         pair=(s, t))
    return SMap(S, X, dict(F), name=name)


@dataclass
class PosetMap:
    """g_* on face posets with the codegeneracy word s_sigma of each factorization."""
    on: dict
    words: dict

    def __call__(self, x):
        return self.on[x]

    def compose(self, other: "PosetMap") -> "PosetMap":
        """self . other"""
        return PosetMap({x: self.on[y] for x, y in other.on.items()}, None)


def induced_poset_map(g: SMap) -> PosetMap:
    on, words = {}, {}
    for x in g.source.ids():
        r = g.assignment[x]
        on[x], words[x] = r.base, r.word
    P, Q = face_poset(g.source), face_poset(g.target)
    for a, b in P.relation:
        if not Q.leq(on[a], on[b]):
            raise ValidationError(f"induced map is not monotone at {a} <= {b}")
    return PosetMap(on, words)


def compose_realizations(g: SMap, f: SMap) -> tuple[SMap, bool]:
    """Realize (F_f . g_*) twisted by the words s_sigma over NK and compare with f.g."""
    gs = induced_poset_map(g)
    Ff = functor_of_map(f)
    X, S = f.target, g.source
    F = {x: X.degenerate(Ff[gs.on[x]], surjection(gs.words[x], S.dim_of(x))) for x in S.ids()}
    composite = realize_functor(F, S, X, name=f"{f.name}.{g.name}")
    return composite, composite == f.compose(g)
