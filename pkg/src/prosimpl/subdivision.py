"""Barycentric subdivision of finite simplicial sets through the colimit
presentation, the comparison map to the order complex and last-vertex maps."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .category import nerve
from .complexes import (SimplicialComplex, complex_vertex_map, face_poset, last_vertex_complex,
                        order_complex, simplex_complex)
from .constructions import Colimit, colimit_of
from .errors import ValidationError
from .simplicial import FinSSet, SMap, coface, identity, nd, simplex_map, surjection


@lru_cache(maxsize=None)
def _sd_standard(n: int):
    D = simplex_complex(n)
    return D, order_complex(D)


def sd_standard(n: int) -> FinSSet:
    """sd(Delta^n) as the nerve of the face poset of Delta^n."""
    return _sd_standard(n)[1].sset()


@lru_cache(maxsize=None)
def sd_ordinal(theta: tuple, n: int) -> SMap:
    """sd(theta) : sd(Delta^m) -> sd(Delta^n) for a monotone theta: [m] -> [n],
    sending a face S to theta(S)."""
    m = len(theta) - 1
    Dm, Sm = _sd_standard(m)
    Dn, Sn = _sd_standard(n)
    vmap = {Dm.face_id(c): Dn.face_id(tuple(sorted({theta[k] for k in c}))) for c in Dm.faces()}
    return complex_vertex_map(Sm, Sn, vmap, name="sd")


@lru_cache(maxsize=None)
def _gamma_standard(n: int) -> SMap:
    return last_vertex_complex(_sd_standard(n)[0])


@dataclass
class Subdivision:
    """sd(X) together with the colimit presentation it was glued from."""
    source: FinSSet
    colim: Colimit
    slots: dict = field(repr=False)

    @property
    def obj(self) -> FinSSet:
        return self.colim.obj

    def induced(self, on_simplex, target: FinSSet, name: str) -> SMap:
        """Glue maps sd(Delta^n) -> target given for each non-degenerate x."""
        cocone = {}
        for x in self.source.ids():
            cocone[x] = on_simplex(x)
        for key, (x, i) in self.slots.items():
            n = self.source.dim_of(x)
            cocone[key] = cocone[x].compose(sd_ordinal(coface(n, i), n))
        return self.colim.induced(cocone, target, name=name)


def subdivide(X: FinSSet, name: str | None = None) -> Subdivision:
    """sd(X) as the colimit of sd(Delta^n) over the simplices of X and their faces."""
    objects, arrows, slots = {}, [], {}
    for x in X.ids():
        objects[x] = sd_standard(X.dim_of(x))
    for x in X.ids():
        n = X.dim_of(x)
        for i, r in enumerate(X.face_refs(x)):
            key = ("#face", x, i)
            slots[key] = (x, i)
            objects[key] = sd_standard(n - 1)
            arrows.append((key, x, sd_ordinal(coface(n, i), n)))
            arrows.append((key, r.base, sd_ordinal(surjection(r.word, n - 1), X.dim_of(r.base))))
    colim = colimit_of(objects, arrows, name=name or f"sd{X.name}")
    return Subdivision(X, colim, slots)


def sd_sset(X: FinSSet) -> FinSSet:
    return subdivide(X).obj


def sd_map(f: SMap, sd_source: Subdivision | None = None, sd_target: Subdivision | None = None) -> SMap:
    """sd(f) : sd(X) -> sd(Y)."""
    A = sd_source or subdivide(f.source)
    B = sd_target or subdivide(f.target)
    Y = f.target

    def on(x):
        r = f.assignment[x]
        n = f.source.dim_of(x)
        into = sd_ordinal(surjection(r.word, n), Y.dim_of(r.base))
        return B.colim.legs[r.base].compose(into)

    return A.induced(on, B.obj, name=f"sd({f.name})")


def last_vertex(X: FinSSet, sub: Subdivision | None = None) -> SMap:
    """gamma : sd(X) -> X, the last-vertex map."""
    sub = sub or subdivide(X)
    return sub.induced(lambda x: simplex_map(X, nd(x)).compose(_gamma_standard(X.dim_of(x))), X,
                       name="gamma")


def pi_comparison(K) -> tuple[SMap, bool]:
    """pi : sd(X) -> B(NX), sending a chain S_0 < ... < S_k in sd(Delta^n) over x to
    the chain of faces of x that the S_i pick out.  An isomorphism for complexes."""
    X = K.sset() if isinstance(K, SimplicialComplex) else K
    sub = subdivide(X)
    BN = nerve(face_poset(X))

    def on(x):
        n = X.dim_of(x)
        Dn, Sn = _sd_standard(n)
        S = Sn.sset()
        faces = list(Dn.faces())
        out = {}
        for sid, c in S.vertex_tuple.items():
            chain = tuple(X.apply(faces[v], nd(x)).base for v in c)
            out[sid] = BN.locate((chain, ()))
        return SMap(S, BN, out, name="pi")

    pi = sub.induced(on, BN, name="pi")
    return pi, pi.is_isomorphism()


@dataclass
class SubdivisionTower:
    base: FinSSet
    levels: list
    gammas: list

    def gamma_composite(self) -> SMap:
        out = identity(self.base)
        for g in self.gammas:
            out = out.compose(g)
        return out


def tower(X: FinSSet, k: int) -> SubdivisionTower:
    if k < 0:
        raise ValidationError("k must be >= 0")
    levels, gammas = [], []
    cur = X
    for _ in range(k):
        sub = subdivide(cur)
        levels.append(sub.obj)
        gammas.append(last_vertex(cur, sub))
        cur = sub.obj
    return SubdivisionTower(X, levels, gammas)


def gamma_composite(t: SubdivisionTower) -> SMap:
    return t.gamma_composite()
