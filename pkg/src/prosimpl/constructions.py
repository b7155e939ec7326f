"""Products, finite colimits and map search for finite simplicial sets."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .budget import check_size
from .errors import BudgetError, CoherenceError, ValidationError
from .simplicial import FinSSet, SMap, SimplexRef, nd, surjection, word_of


# -- products -------------------------------------------------------------------

def _joint_section(ha: tuple, hb: tuple):
    n = len(ha) - 1
    joint = tuple(j for j in range(n - 1, -1, -1) if ha[j] == ha[j + 1] and hb[j] == hb[j + 1])
    h = surjection(joint, n)
    section = tuple(h.index(k) for k in range(h[-1] + 1))
    return joint, section


class Product:
    """X x Y with its projections; simplices enumerated by shuffles."""

    def __init__(self, X: FinSSet, Y: FinSSet, cap: int | None = None, name: str | None = None):
        self.X, self.Y = X, Y
        name = name or f"{X.name}x{Y.name}"
        top = X.dim + Y.dim if cap is None else min(cap, X.dim + Y.dim)
        xi = {x: k for k, x in enumerate(X.ids())}
        yi = {y: k for k, y in enumerate(Y.ids())}
        keys = []
        for p, xs in enumerate(X.simplices):
            for q, ys in enumerate(Y.simplices):
                for n in range(max(p, q), min(p + q, top) + 1):
                    for wa in combinations(range(n), n - p):
                        rest = [j for j in range(n) if j not in wa]
                        for wb in combinations(rest, n - q):
                            wa_, wb_ = tuple(reversed(wa)), tuple(sorted(wb, reverse=True))
                            for x in xs:
                                for y in ys:
                                    keys.append((n, xi[x], yi[y], wa_, wb_,
                                                 SimplexRef(wa_, x), SimplexRef(wb_, y)))
        keys.sort(key=lambda t: t[:5])
        check_size(len(keys), name)
        self.index = {}
        self.key = {}
        simplices = [[] for _ in range(top + 1)] if keys else []
        for c, (n, *_rest, ra, rb) in enumerate(keys):
            sid = f"{name}.{c}"
            self.index[(ra, rb)] = sid
            self.key[sid] = (ra, rb)
            simplices[n].append(sid)
        faces = {}
        for sid, (ra, rb) in self.key.items():
            n = X.ref_dim(ra)
            if n:
                faces[sid] = tuple(self.pair(X.face(ra, i), Y.face(rb, i)) for i in range(n + 1))
        self.obj = FinSSet(simplices, faces, name=name)
        self.proj1 = SMap(self.obj, X, {s: k[0] for s, k in self.key.items()}, name="pr1")
        self.proj2 = SMap(self.obj, Y, {s: k[1] for s, k in self.key.items()}, name="pr2")

    def pair(self, ra: SimplexRef, rb: SimplexRef) -> SimplexRef:
        n = self.X.ref_dim(ra)
        if self.Y.ref_dim(rb) != n:
            raise ValueError("pairing simplices of different dimensions")
        joint, section = _joint_section(surjection(ra.word, n), surjection(rb.word, n))
        a = self.X.apply(section, ra)
        b = self.Y.apply(section, rb)
        return SimplexRef(joint, self.index[(a, b)])


def product(X: FinSSet, Y: FinSSet, cap: int | None = None) -> Product:
    return Product(X, Y, cap=cap)


def product_map(f: SMap, g: SMap, source: Product, target: Product) -> SMap:
    """f x g : source -> target."""
    return SMap(source.obj, target.obj,
                {s: target.pair(f(ra), g(rb)) for s, (ra, rb) in source.key.items()},
                name=f"{f.name}x{g.name}")


# -- colimits ---------------------------------------------------------------------

class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, a):
        self.parent.setdefault(a, a)
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass
class Colimit:
    obj: FinSSet
    legs: dict
    reps: dict = field(repr=False)

    def induced(self, cocone: dict, target: FinSSet, name: str = "u") -> SMap:
        """The map out of the colimit determined by a compatible cocone."""
        u = SMap(self.obj, target, {s: cocone[c](x) for s, (c, x) in self.reps.items()}, name=name)
        for c, leg in self.legs.items():
            for x in leg.source.ids():
                if u(leg(x)) != cocone[c](x):
                    raise CoherenceError(f"cocone not compatible at {c}:{x}", pair=(c, x))
        return u


def colimit_of(objects: dict, arrows: list, name: str = "colim") -> Colimit:
    """Colimit of a finite diagram given as objects and (src, dst, SMap) arrows.

    Works dimension by dimension on non-degenerate simplices; a simplex that
    is identified with a degenerate one becomes degenerate in the colimit.
    """
    order = {c: k for k, c in enumerate(objects)}
    top = max((X.dim for X in objects.values()), default=-1)
    out_of = {}
    for src, dst, F in arrows:
        out_of.setdefault(src, []).append((dst, F))
    class_ref = {}
    simplices, faces, reps = [], {}, {}
    counter = 0
    for n in range(top + 1):
        uf = _UnionFind()
        nodes = [(c, x) for c, X in objects.items() for x in X.level(n)]
        for node in nodes:
            uf.find(node)
        for c, x in nodes:
            for dst, F in out_of.get(c, ()):
                r = F.assignment[x]
                if not r.word:
                    uf.union((c, x), (dst, r.base))
                else:
                    lower = class_ref[(dst, r.base)]
                    h = surjection(lower.word, n - len(r.word))
                    total = tuple(h[t] for t in surjection(r.word, n))
                    uf.union(("#deg", SimplexRef(word_of(total), lower.base)), (c, x))
        classes = {}
        for node in nodes:
            classes.setdefault(uf.find(node), []).append(node)
        tokens = {}
        for k in list(uf.parent):
            if k[0] == "#deg":
                tokens.setdefault(uf.find(k), set()).add(k[1])
        for root, found in tokens.items():
            if len(found) > 1:
                raise ValidationError(f"inconsistent degeneracies in colimit: {sorted(map(str, found))}")
            (ref,) = found
            for m in classes.pop(root, ()):
                class_ref[m] = ref
        fresh = sorted(((min(ms, key=lambda m: (order[m[0]], m[1])), ms) for ms in classes.values()),
                       key=lambda t: (order[t[0][0]], t[0][1]))
        level = []
        for rep, members in fresh:
            sid = f"{name}.{counter}"
            counter += 1
            level.append(sid)
            reps[sid] = rep
            for m in members:
                class_ref[m] = nd(sid)
        simplices.append(level)
        for sid in level:
            if n == 0:
                continue
            c, x = reps[sid]
            fs = []
            for r in objects[c].face_refs(x):
                lower = class_ref[(c, r.base)]
                h = surjection(lower.word, n - 1 - len(r.word))
                total = tuple(h[t] for t in surjection(r.word, n - 1))
                fs.append(SimplexRef(word_of(total), lower.base))
            faces[sid] = fs
        check_size(counter, name)
    while simplices and not simplices[-1]:
        simplices.pop()
    obj = FinSSet(simplices, faces, name=name)
    legs = {c: SMap(X, obj, {x: class_ref[(c, x)] for x in X.ids()}, name=f"in_{c}")
            for c, X in objects.items()}
    return Colimit(obj, legs, reps)


def colimit(diagram, name: str = "colim") -> Colimit:
    """Colimit of a validated diagram (any object with index/objects/arrows)."""
    diagram.check()
    arrows = [(diagram.index.src(m), diagram.index.dst(m), F) for m, F in diagram.arrows.items()
              if not diagram.index.is_identity(m)]
    return colimit_of(dict(diagram.objects), arrows, name=name)


def pushout(f: SMap, g: SMap, name: str = "pushout") -> Colimit:
    if f.source is not g.source and f.source != g.source:
        raise ValidationError("pushout legs must share a source")
    return colimit_of({"A": f.source, "B": f.target, "C": g.target},
                      [("A", "B", f), ("A", "C", g)], name=name)


def union_sset(X: FinSSet, *parts: FinSSet, name: str | None = None) -> FinSSet:
    """Union of simplicial subsets of X (given with X's ids)."""
    from .simplicial import sub_sset
    return sub_sset(X, [x for P in parts for x in P.ids()], name=name)


# -- map search -------------------------------------------------------------------

def _candidate_index(Y: FinSSet, k: int) -> dict:
    memo = Y.__dict__.setdefault("_cand_memo", {})
    hit = memo.get(k)
    if hit is not None:
        return hit
    if Y.cap is not None and k > Y.cap:
        raise BudgetError(f"{Y.name} is truncated at {Y.cap}; dimension {k} requested")
    idx = {}
    for r in Y.all_simplices(k):
        key = () if k == 0 else tuple(Y.face(r, i) for i in range(k + 1))
        idx.setdefault(key, []).append(r)
    memo[k] = idx
    return idx


def search_order(P: FinSSet, first=()) -> list:
    """Vertices (``first`` ones leading, then breadth-first), each followed by
    every simplex whose faces are already placed."""
    first = [x for x in first if P.dim_of(x) == 0]
    verts = list(P.level(0))
    adj = {v: [] for v in verts}
    for e in P.level(1):
        a, b = (r.base for r in P.face_refs(e))
        adj[a].append(b)
        adj[b].append(a)
    pending = {}
    cofaces = {}
    for n in range(1, len(P.simplices)):
        for x in P.simplices[n]:
            bases = {r.base for r in P.face_refs(x)}
            pending[x] = len(bases)
            for b in bases:
                cofaces.setdefault(b, []).append(x)
    order, placed = [], set()

    def place(x):
        order.append(x)
        placed.add(x)
        ready = []
        for y in cofaces.get(x, ()):
            pending[y] -= 1
            if pending[y] == 0:
                ready.append(y)
        for y in sorted(ready, key=lambda s: (P.dim_of(s), s)):
            place(y)

    seen = set()
    queue = [v for v in first] + sorted(verts)
    while queue:
        v = queue.pop(0)
        if v in seen:
            continue
        seen.add(v)
        place(v)
        queue[0:0] = sorted(w for w in adj[v] if w not in seen)
    return order


@dataclass
class SearchStats:
    nodes: int = 0
    solutions: int = 0


def map_search(P: FinSSet, Y: FinSSet, fixed: dict | None = None,
               max_nodes: int | None = None, stats: SearchStats | None = None):
    """Core of :func:`enumerate_maps`: returns (order, generator of value lists),
    the k-th value being the image of order[k]."""
    fixed = fixed or {}
    stats = stats if stats is not None else SearchStats()
    order = search_order(P, first=sorted(fixed))
    pos = {x: k for k, x in enumerate(order)}
    # per position: dimension, faces as (position, surjection or None), pinned value
    plan = []
    for x in order:
        k = P.dim_of(x)
        faces = tuple((pos[r.base], surjection(r.word, k - 1) if r.word else None)
                      for r in P.face_refs(x))
        pin = fixed.get(x)
        if pin is not None:
            if Y.ref_dim(pin) != k:
                pin = False
            else:
                pin = (pin, () if k == 0 else tuple(Y.face(pin, i) for i in range(k + 1)))
        plan.append((k, faces, pin))
    index = {}

    def gen():
        total = len(order)
        if not total:
            stats.solutions += 1
            yield []
            return
        values = [None] * total
        degenerate = Y.degenerate

        def cands(d):
            k, faces, pin = plan[d]
            req = tuple(values[p] if s is None else degenerate(values[p], s) for p, s in faces)
            if pin is not None:
                if pin is False:
                    return ()
                return (pin[0],) if pin[1] == req else ()
            idx = index.get(k)
            if idx is None:
                idx = index[k] = _candidate_index(Y, k)
            return idx.get(req, ())

        its = [iter(cands(0))]
        while its:
            d = len(its) - 1
            v = next(its[-1], None)
            if v is None:
                its.pop()
                continue
            values[d] = v
            stats.nodes += 1
            if max_nodes is not None and stats.nodes > max_nodes:
                raise BudgetError(f"map search exceeded {max_nodes} nodes")
            if d + 1 == total:
                stats.solutions += 1
                yield values
                continue
            its.append(iter(cands(d + 1)))

    return order, gen()


def enumerate_maps(P: FinSSet, Y: FinSSet, fixed: dict | None = None,
                   max_nodes: int | None = None, stats: SearchStats | None = None):
    """Yield every simplicial map P -> Y (as assignments) agreeing with ``fixed``.

    Backtracking over the non-degenerate simplices of P in :func:`search_order`,
    trying candidate images in the target's enumeration order.
    """
    order, values = map_search(P, Y, fixed, max_nodes, stats)
    for vals in values:
        yield dict(zip(order, vals))


def find_map(P, Y, fixed=None, max_nodes=None, stats=None):
    return next(enumerate_maps(P, Y, fixed, max_nodes, stats), None)


def find_isomorphism(X: FinSSet, Y: FinSSet) -> SMap | None:
    """Some isomorphism X -> Y, or None (exhaustive; small inputs only)."""
    if X.counts() != Y.counts():
        return None
    for assign in enumerate_maps(X, Y):
        images = list(assign.values())
        if all(not r.word for r in images) and len(set(images)) == len(images):
            return SMap(X, Y, assign, name="iso")
    return None
