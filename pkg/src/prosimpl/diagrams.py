"""Diagrams of finite simplicial sets, pro-maps, homotopy colimits of
hom-diagrams and the bounded pro-equivalence check."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .budget import Budgets
from .category import FinCategory, Functor, Groupoid, _nerve_ops, _strings, nerve, nerve_map
from .complexes import SimplicialComplex, complex_vertex_map, last_vertex_complex, sd_complex
from .constructions import (Product, SearchStats, colimit_of, enumerate_maps, find_map, map_search,
                            product_map, pushout)
from .errors import BudgetError, CoherenceError, NotFilteredError, ValidationError
from .kan import COUNTEREXAMPLE, NO_OBSTRUCTION, function_complex, precompose, weq_test
from .simplicial import (FinSSet, SMap, SimplexRef, Violation, codegeneracy, coface, identity, nd,
                         ordinal_map, standard_simplex, sub_sset, surjection, validate_map)
from .truncated import TruncatedSSet, build_from_raw


class Diagram:
    """A functor from a finite category to finite simplicial sets.  Arrows for
    identities may be omitted."""

    def __init__(self, index: FinCategory, objects: dict, arrows: dict, name: str = "X"):
        self.index = index
        self.objects = dict(objects)
        self.arrows = {}
        self.name = name
        for m in index.morphisms:
            if m in arrows:
                self.arrows[m] = arrows[m]
            elif index.is_identity(m):
                self.arrows[m] = identity(self.objects[index.src(m)])
        missing = [m for m in index.morphisms if m not in self.arrows]
        if missing:
            raise ValidationError(f"{name}: no map for morphisms {missing}")

    def __repr__(self):
        return f"Diagram({self.name!r} over {self.index.name})"

    def __call__(self, m) -> SMap:
        return self.arrows[m]

    def validate(self) -> list:
        out = list(self.index.validate())
        I = self.index
        for m, F in self.arrows.items():
            if F.source != self.objects[I.src(m)] or F.target != self.objects[I.dst(m)]:
                out.append(Violation(m, "endpoints", "map does not match the objects"))
                continue
            out.extend(Violation(f"{m}:{v.where}", v.check, v.detail) for v in validate_map(F))
        if out:
            return out
        for a in I.objects:
            if self.arrows[I.identities[a]].assignment != identity(self.objects[a]).assignment:
                out.append(Violation(a, "identity", "X(id) is not the identity"))
        for (g, f), h in I.compose.items():
            if self.arrows[g].compose(self.arrows[f]).assignment != self.arrows[h].assignment:
                out.append(Violation(f"{g}.{f}", "functoriality", f"X({g})X({f}) != X({h})"))
        return out

    def check(self):
        problems = self.validate()
        if problems:
            raise ValidationError(f"diagram {self.name}: {problems[0]}", problems)
        return self


def constant_diagram(I: FinCategory, X: FinSSet, name: str = "const") -> Diagram:
    return Diagram(I, {a: X for a in I.objects}, {m: identity(X) for m in I.morphisms}, name=name)


class ProMap:
    """(alpha, theta) : X -> Y with alpha : J -> I and theta_j : X(alpha j) -> Y(j)."""

    def __init__(self, alpha: Functor, theta: dict, X: Diagram, Y: Diagram, name: str = "p"):
        self.alpha, self.theta, self.X, self.Y, self.name = alpha, dict(theta), X, Y, name

    def validate(self) -> list:
        out = list(self.alpha.validate())
        if self.alpha.source is not self.Y.index and self.alpha.source.objects != self.Y.index.objects:
            out.append(Violation("alpha", "source", "alpha must start at the index of Y"))
        if out:
            return out
        J = self.Y.index
        for j in J.objects:
            t = self.theta.get(j)
            if t is None:
                out.append(Violation(j, "theta", "missing component"))
                continue
            if t.source != self.X.objects[self.alpha.on_object(j)] or t.target != self.Y.objects[j]:
                out.append(Violation(j, "theta", "component has the wrong endpoints"))
        if out:
            return out
        for a, (j, k) in J.morphisms.items():
            left = self.theta[k].compose(self.X(self.alpha(a)))
            right = self.Y(a).compose(self.theta[j])
            if left.assignment != right.assignment:
                out.append(Violation(a, "naturality", "theta is not natural"))
        return out

    def check(self):
        problems = self.validate()
        if problems:
            raise ValidationError(f"pro-map {self.name}: {problems[0]}", problems)
        return self


def identity_promap(X: Diagram) -> ProMap:
    from .category import identity_functor
    return ProMap(identity_functor(X.index), {a: identity(X.objects[a]) for a in X.index.objects},
                  X, X, name="id")


class FibrantTestObject:
    """A Kan test object: a groupoid (nerve built lazily) or a finite simplicial
    set the caller vouches for."""

    def __init__(self, obj, assume_fibrant: bool = False, name: str | None = None):
        if isinstance(obj, FinCategory):
            obj = Groupoid(obj)
        if isinstance(obj, FinSSet) and not (assume_fibrant or getattr(obj, "kan", False)):
            raise ValidationError("a finite simplicial set must be flagged assume_fibrant")
        self.obj = obj
        self.name = name or obj.name

    def __repr__(self):
        return f"FibrantTestObject({self.name!r})"

    def at(self, dim: int) -> FinSSet:
        return self.obj.nerve(dim) if isinstance(self.obj, Groupoid) else self.obj


def as_fibrant(Z) -> FibrantTestObject:
    if isinstance(Z, FibrantTestObject):
        return Z
    return FibrantTestObject(Z, assume_fibrant=True)


# -- homotopy colimits ----------------------------------------------------------------

class _Frames:
    """X(a) x Delta^n and the maps X(m) x theta between them."""

    def __init__(self, X: Diagram):
        self.X = X
        self._p, self._m = {}, {}

    def product(self, a, n: int) -> Product:
        key = (a, n)
        if key not in self._p:
            self._p[key] = Product(self.X.objects[a], standard_simplex(n), name=f"X{a}xD{n}")
        return self._p[key]

    def along(self, m, theta: tuple, n: int) -> SMap:
        """X(m) x theta : X(src m) x Delta^k -> X(dst m) x Delta^n."""
        key = (m, theta, n)
        if key not in self._m:
            I = self.X.index
            k = len(theta) - 1
            self._m[key] = product_map(self.X(m), ordinal_map(theta, n),
                                       self.product(I.src(m), k), self.product(I.dst(m), n))
        return self._m[key]


def hocolim(X: Diagram, Z, D: int, map_cap: int | None = None, name: str | None = None) -> TruncatedSSet:
    """n-simplices (n <= D): a string alpha : [n] -> I and tau : X(alpha(n)) x Delta^n -> Z."""
    Z = as_fibrant(Z)
    I = X.index
    top = max((A.dim for A in X.objects.values()), default=0) + D
    T = Z.at(top)
    frames = _Frames(X)
    face_s, degen_s = _nerve_ops(I)
    index = {}
    taus = {}

    def idx(a, n):
        key = (a, n)
        if key not in index:
            index[key] = {x: k for k, x in enumerate(frames.product(a, n).obj.ids())}
        return index[key]

    def maps_from(a, n):
        key = (a, n)
        if key not in taus:
            P = frames.product(a, n).obj
            order, values = map_search(P, T)
            where = {x: k for k, x in enumerate(order)}
            perm = [where[x] for x in P.ids()]
            found = []
            for vals in values:
                found.append(tuple([vals[k] for k in perm]))
                if map_cap is not None and len(found) > map_cap:
                    raise BudgetError(f"more than {map_cap} maps X({a}) x Delta^{n} -> {T.name}")
            taus[key] = found
        return taus[key]

    def levels(n):
        for objs, mors in _strings(I, n):
            for tau in maps_from(objs[-1], n):
                yield objs, mors, tau

    def face(r, i):
        objs, mors, tau = r
        n = len(mors)
        o2, m2 = face_s((objs, mors), i)
        m = I.identities[objs[n]] if i < n else mors[n - 1]
        return o2, m2, precompose(tau, frames.along(m, coface(n, i), n), T, idx(objs[n], n))

    def degen(r, j):
        objs, mors, tau = r
        n = len(mors)
        o2, m2 = degen_s((objs, mors), j)
        m = I.identities[objs[n]]
        return o2, m2, precompose(tau, frames.along(m, codegeneracy(n, j), n), T, idx(objs[n], n))

    out = build_from_raw(name or f"hocolim({X.name},{Z.name})", levels, face, degen, D,
                         rank=lambda r: len(r[1]), kan=False, map_cap=map_cap)
    out.diagram, out.test_object, out.target, out.frames = X, Z, T, frames
    out._degen_raw = degen
    out._face_raw = face
    return out


def raw_of(H: TruncatedSSet, ref: SimplexRef):
    """Raw data of any simplex (degenerate ones included) of an object built from raw data."""
    r = H.raw[ref.base]
    for j in reversed(ref.word):
        r = H._degen_raw(r, j)
    return r


def index_nerve(I: FinCategory, D: int) -> TruncatedSSet:
    return nerve(I) if I.is_loop_free() else nerve(I, trunc=D)


def projection(H: TruncatedSSet, BI: TruncatedSSet | None = None) -> SMap:
    """hocolim -> BI, forgetting tau."""
    BI = BI or index_nerve(H.diagram.index, H.cap)
    return SMap(H, BI, {s: BI.locate((r[0], r[1])) for s, r in H.raw.items()}, name="proj")


def induced_hocolim_map(p: ProMap, Z, D: int, HY: TruncatedSSet | None = None,
                        HX: TruncatedSSet | None = None) -> SMap:
    """hocolim_J hom(Y, Z) -> hocolim_I hom(X, Z): (beta, tau) |-> (alpha beta, tau (theta x 1))."""
    Z = as_fibrant(Z)
    HY = HY or hocolim(p.Y, Z, D)
    HX = HX or hocolim(p.X, Z, D)
    if HX.target is not HY.target and HX.target.name != HY.target.name:
        raise ValidationError("hocolims must be built against the same test object")
    T = HY.target
    cache = {}
    out = {}
    for sid, (objs, mors, tau) in HY.raw.items():
        n = len(mors)
        j = objs[-1]
        key = (j, n)
        if key not in cache:
            PX = HX.frames.product(p.alpha.on_object(j), n)
            PY = HY.frames.product(j, n)
            g = product_map(p.theta[j], identity(standard_simplex(n)), PX, PY)
            cache[key] = (g, {x: k for k, x in enumerate(PY.obj.ids())})
        g, idx = cache[key]
        raw = (tuple(p.alpha.on_object(a) for a in objs), tuple(p.alpha(m) for m in mors),
               precompose(tau, g, T, idx))
        out[sid] = HX.locate(raw)
    return SMap(HY, HX, out, name=f"{p.name}*")


def slice_nerve(X: Diagram, Z, D: int, map_cap: int | None = None) -> TruncatedSSet:
    """Nerve of the category of pairs (i, g : X(i) -> Z), morphisms a : i -> i' with g = g' X(a)."""
    Z = as_fibrant(Z)
    I = X.index
    T = Z.at(max((A.dim for A in X.objects.values()), default=0))
    objs, label = [], {}
    for a in I.objects:
        for k, g in enumerate(enumerate_maps(X.objects[a], T)):
            if map_cap is not None and k >= map_cap:
                raise BudgetError(f"more than {map_cap} maps X({a}) -> {T.name}")
            name = f"{a}:{k}"
            objs.append(name)
            label[name] = (a, SMap(X.objects[a], T, g))
    mors, ident = {}, {}
    by_pair = {}
    for s in objs:
        a, g = label[s]
        for t in objs:
            b, h = label[t]
            for m in I.hom(a, b):
                if h.compose(X(m)).assignment == g.assignment:
                    mid = f"{m}@{s}" if not I.is_identity(m) else f"id_{s}"
                    mors[mid] = (s, t)
                    by_pair[mid] = m
                    if I.is_identity(m) and s == t:
                        ident[s] = mid
    lookup = {(by_pair[k], v[0], v[1]): k for k, v in mors.items()}
    comp = {}
    for g_, (b, c) in mors.items():
        for f_, (a, b2) in mors.items():
            if b2 == b:
                comp[(g_, f_)] = lookup[(I.comp(by_pair[g_], by_pair[f_]), a, c)]
    C = FinCategory(objs, mors, comp, ident, name=f"{X.name}/{Z.name}")
    B = nerve(C) if C.is_loop_free() else nerve(C, trunc=D)
    return B


# -- the pro-equivalence check --------------------------------------------------------

NOT_PRO_EQUIVALENCE = "NotProEquivalence"


@dataclass
class ProVerdict:
    status: str
    witness: dict | None
    checks: list
    budgets: dict
    test_objects: list

    def record(self) -> dict:
        return {"status": self.status, "witness": self.witness, "checks": self.checks,
                "test_objects": self.test_objects, "budgets": self.budgets}


def pro_equivalence_check(p: ProMap, Zs: list, budgets: Budgets | None = None,
                          lifting: bool = True) -> ProVerdict:
    """BJ -> BI and each induced map of hocolims must pass the bounded weak-equivalence test."""
    b = budgets or Budgets()
    p.check()
    Zs = [as_fibrant(Z) for Z in Zs]
    names = [Z.name for Z in Zs]
    checks = []
    BJ, BI = index_nerve(p.Y.index, b.dim), index_nerve(p.X.index, b.dim)
    v = weq_test(nerve_map(p.alpha, BJ, BI), b, lifting=lifting)
    checks.append({"check": "BJ->BI", "status": v.status, "witness": v.witness})
    if v.status == COUNTEREXAMPLE:
        return ProVerdict(NOT_PRO_EQUIVALENCE, {"stage": "nerve", **v.witness}, checks, b.record(), names)
    for Z in Zs:
        HY = hocolim(p.Y, Z, b.dim, map_cap=b.map_cap)
        HX = hocolim(p.X, Z, b.dim, map_cap=b.map_cap)
        f = induced_hocolim_map(p, Z, b.dim, HY, HX)
        v = weq_test(f, b, lifting=lifting)
        checks.append({"check": f"hocolim at {Z.name}", "status": v.status, "witness": v.witness,
                       "source": list(HY.counts()), "target": list(HX.counts()),
                       "unresolved": len(v.unresolved)})
        if v.status == COUNTEREXAMPLE:
            return ProVerdict(NOT_PRO_EQUIVALENCE, {"stage": f"hocolim at {Z.name}", **v.witness},
                              checks, b.record(), names)
    return ProVerdict(NO_OBSTRUCTION, None, checks, b.record(), names)


# -- L_K realization ------------------------------------------------------------------

@dataclass
class LKResult:
    obj: FinSSet
    f_omega: SMap
    legs: dict
    values: dict = field(repr=False)
    round_trip: bool = False


def _complex_sset(K):
    return K.sset() if isinstance(K, SimplicialComplex) else K


def realize_LK(X: Diagram, H: TruncatedSSet, omega: SMap, name: str = "LK") -> LKResult:
    """Colimit over NK of sigma |-> X(alpha_sigma(top)) x Delta^dim, with f_omega glued from the taus."""
    S = omega.source
    tuples = S.vertex_tuple
    by_tuple = {c: x for x, c in tuples.items()}
    frames = H.frames
    T = H.target
    vals = {x: raw_of(H, omega(x)) for x in S.ids()}
    objects, arrows, cocone = {}, [], {}
    for x in S.ids():
        objs, mors, tau = vals[x]
        n = len(mors)
        P = frames.product(objs[-1], n)
        objects[x] = P.obj
        cocone[x] = SMap(P.obj, T, dict(zip(P.obj.ids(), tau)), name=f"tau_{x}")
    I = X.index
    for t in S.ids():
        tc = tuples[t]
        n = len(tc) - 1
        objs_t = vals[t][0]
        for m in range(n):
            for pos in combinations(range(n + 1), m + 1):
                s = by_tuple[tuple(tc[q] for q in pos)]
                # alpha_s = alpha_t . pos, and X(alpha_t(pos(m)) -> alpha_t(n)) x pos
                arrow = _string_arrow(I, vals[t][1], objs_t, pos[-1], n)
                if tuple(objs_t[q] for q in pos) != vals[s][0]:
                    raise CoherenceError(f"strings at {s} and {t} do not match", pair=(s, t))
                arrows.append((s, t, frames.along(arrow, pos, n)))
    colim = colimit_of(objects, arrows, name=name)
    f = colim.induced(cocone, T, name="f_omega")
    trip = all(f.compose(colim.legs[x]).assignment == cocone[x].assignment for x in S.ids())
    return LKResult(colim.obj, f, colim.legs, vals, trip)


def _string_arrow(I: FinCategory, mors: tuple, objs: tuple, a: int, b: int):
    """The composite morphism objs[a] -> objs[b] along a string."""
    m = I.identities[objs[a]]
    for k in range(a, b):
        m = I.comp(mors[k], m)
    return m


# -- prism frames and the corner extension test -------------------------------------------

def prism_complex(n: int) -> SimplicialComplex:
    """Delta^n x Delta^1 triangulated by chains in [n] x [1]; vertex ``ab``."""
    verts = [f"{a}{b}" for a in range(n + 1) for b in range(2)]
    facets = [[f"{a}0" for a in range(k + 1)] + [f"{a}1" for a in range(k, n + 1)] for k in range(n + 1)]
    return SimplicialComplex(verts, facets, name=f"D{n}xD1")


@dataclass
class ComplexFrame:
    """Inclusions K in K', L in L' and K -> L, K' -> L' of finite complexes."""
    K: SimplicialComplex
    K2: SimplicialComplex
    L: SimplicialComplex
    L2: SimplicialComplex
    k_to_l: dict
    k2_to_l2: dict


def canonical_complex_frame(n: int) -> ComplexFrame:
    """K = dDelta^n, K' = Delta^n, L = (dDelta^n x Delta^1) u (Delta^n x {0}), L' = Delta^n x Delta^1,
    the simplex sitting at the end {1}."""
    P = prism_complex(n)
    full = set(range(n + 1))
    facets = []
    for c in P.faces():
        pts = [P.vertices[k] for k in c]
        first = {int(v[:-1]) for v in pts}
        if first != full or all(v[-1] == "0" for v in pts):
            facets.append(pts)
    used = {v for c in facets for v in c}
    L = SimplicialComplex([v for v in P.vertices if v in used], facets, name=f"L{n}")
    vs = [str(k) for k in range(n + 1)]
    K2 = SimplicialComplex(vs, [vs], name=f"Delta{n}")
    if n == 0:
        K = None
    else:
        K = SimplicialComplex(vs, [list(c) for c in combinations(vs, n)], name=f"dDelta{n}")
    at1 = {v: f"{v}1" for v in vs}
    return ComplexFrame(K, K2, L, P, at1, at1)


@dataclass
class CornerResult:
    success: bool
    k: int | None
    transcript: list
    pushout_counts: tuple | None = None
    lift: dict | None = None

    def record(self) -> dict:
        return {"success": self.success, "k": self.k, "transcript": list(self.transcript),
                "pushout_counts": list(self.pushout_counts) if self.pushout_counts else None}


def restriction_map(inc: dict, X: Diagram, Y: Diagram, Z, D: int, HY=None, HX=None) -> SMap:
    """i^* : hocolim hom(Y, Z) -> hocolim hom(X, Z) for a levelwise map i : X -> Y."""
    from .category import identity_functor
    p = ProMap(identity_functor(X.index), inc, X, Y, name="i")
    return induced_hocolim_map(p, Z, D, HY, HX)


def _subdivided(frame: ComplexFrame, k: int):
    """sd^k of every complex in the frame with gamma^k and the inclusions."""
    cs = {"K2": frame.K2, "L": frame.L, "L2": frame.L2}
    if frame.K is not None:
        cs["K"] = frame.K
    gam = {c: None for c in cs}
    vmaps = {"K2L2": dict(frame.k2_to_l2)}
    for _ in range(k):
        new = {c: sd_complex(K) for c, K in cs.items()}
        for c in cs:
            g = last_vertex_complex(cs[c])
            gam[c] = g if gam[c] is None else gam[c].compose(g)
        old = cs
        K2, L2 = old["K2"], old["L2"]
        vm = vmaps["K2L2"]
        vmaps["K2L2"] = {K2.face_id(c): L2.face_id(tuple(sorted(L2.pos[vm[K2.vertices[v]]] for v in c)))
                         for c in K2.faces()}
        cs = new
    return cs, gam, vmaps


def _sub_ids(small: SimplicialComplex, big: SimplicialComplex, vmap: dict | None = None) -> dict:
    """Ids of the faces of ``small`` inside ``big`` along a vertex map (default: same names)."""
    at = (lambda v: v) if vmap is None else vmap.__getitem__
    return {small.face_id(c): big.face_id(tuple(sorted({big.pos[at(small.vertices[v])] for v in c})))
            for c in small.faces()}


def corner_extension_test(inc: dict, X: Diagram, Y: Diagram, frame: ComplexFrame, Z,
                          omega: SMap, beta: SMap, sd_budget: int, D: int | None = None,
                          max_nodes: int | None = None) -> CornerResult:
    """Search k = 0..sd_budget for omega' on sd^k K' and beta' on sd^k L' extending
    omega gamma^k and beta gamma^k with beta' = i^* omega' on sd^k K'."""
    Z = as_fibrant(Z)
    HY, HX = omega.target, beta.target
    D = D or HY.cap
    istar = restriction_map(inc, X, Y, Z, D, HY, HX)
    K0, L0 = frame.K, frame.L
    if K0 is not None:
        into = _sub_ids(K0, frame.L, frame.k_to_l)
        for x in K0.sset().ids():
            if beta(nd(into[x])) != istar(omega(x)):
                raise ValidationError(f"beta does not restrict to i^* omega at {x}")
    pushout_counts = None
    if K0 is not None:
        LKY = realize_LK(Y, HY, omega, name="LKY")
        LKX = realize_LK(X, HX, SMap(K0.sset(), HX, {x: istar(omega(x)) for x in K0.sset().ids()}),
                         name="LKX")
        LLX = realize_LK(X, HX, beta, name="LLX")
        a = _LK_map(LKX, LKY, inc, X, Y, HX, HY)
        b_ = _LK_restrict(LKX, LLX, into)
        po = pushout(a, b_, name="corner")
        pushout_counts = po.obj.counts()
    transcript = []
    for k in range(sd_budget + 1):
        cs, gam, vm = _subdivided(frame, k)
        K2s, Ls, L2s = cs["K2"], cs["L"], cs["L2"]
        stats = SearchStats()
        fixed_w = {}
        if K0 is not None:
            Ks = cs["K"]
            kin = _sub_ids(Ks, K2s)
            for x in Ks.sset().ids():
                fixed_w[kin[x]] = omega(gam["K"](x) if gam["K"] is not None else nd(x))
        lin = _sub_ids(Ls, L2s)
        fixed_b = {}
        for x in Ls.sset().ids():
            fixed_b[lin[x]] = beta(gam["L"](x) if gam["L"] is not None else nd(x))
        k2l2 = {}
        for x in K2s.sset().ids():
            c = K2s.sset().vertex_tuple[x]
            k2l2[x] = L2s.face_id(tuple(sorted(L2s.pos[vm["K2L2"][K2s.vertices[v]]] for v in c)))
        tried = 0
        found = None
        for w in enumerate_maps(K2s.sset(), HY, fixed_w, max_nodes, stats):
            tried += 1
            fx = dict(fixed_b)
            ok = True
            for x, v in w.items():
                val = istar(v)
                if fx.setdefault(k2l2[x], val) != val:
                    ok = False
                    break
            if not ok:
                continue
            bmap = find_map(L2s.sset(), HX, fx, max_nodes, stats)
            if bmap is not None:
                found = {"omega": w, "beta": bmap}
                break
        status = "success" if found else "exhausted"
        transcript.append(f"k={k} omega_tried={tried} nodes={stats.nodes} {status}")
        if found:
            return CornerResult(True, k, transcript, pushout_counts, found)
    return CornerResult(False, None, transcript, pushout_counts)


def _LK_map(LKX: LKResult, LKY: LKResult, inc, X, Y, HX, HY) -> SMap:
    """L_K X -> L_K Y induced by i."""
    cocone = {}
    for x, leg in LKY.legs.items():
        objs, mors, tau = LKY.values[x]
        n = len(mors)
        PX = HX.frames.product(objs[-1], n)
        PY = HY.frames.product(objs[-1], n)
        g = product_map(inc[objs[-1]], identity(standard_simplex(n)), PX, PY)
        cocone[x] = leg.compose(g)
    return _induced_from(LKX, cocone, LKY.obj)


def _LK_restrict(LKX: LKResult, LLX: LKResult, into: dict) -> SMap:
    """L_K X -> L_L X along K in L."""
    cocone = {x: LLX.legs[into[x]] for x in LKX.legs}
    return _induced_from(LKX, cocone, LLX.obj)


def _induced_from(src: LKResult, cocone: dict, target: FinSSet) -> SMap:
    out = {}
    for x, leg in src.legs.items():
        for s in leg.source.ids():
            r = leg(s)
            out.setdefault(r.base, None)
    # each colimit simplex is hit by some leg without degeneracy
    for x, leg in src.legs.items():
        for s in leg.source.ids():
            r = leg.assignment[s]
            if not r.word and out.get(r.base) is None:
                out[r.base] = cocone[x](s)
    return SMap(src.obj, target, out, name="LKmap")


# -- filtered index categories ---------------------------------------------------------

@dataclass
class RefinementResult:
    solved: bool
    morphism: str | None
    lift: SMap | None
    transcript: list


def relative_frame(n: int, A: FinSSet, Xsub: FinSSet):
    """Delta^n x A with its simplicial subset (dDelta^n x A) u (Delta^n x Xsub); Xsub uses A's ids."""
    P = Product(standard_simplex(n), A, name=f"D{n}x{A.name}")
    top = f"{''.join(str(k) for k in range(n + 1))}"
    keep = [s for s, (ra, rb) in P.key.items() if ra.base != top or rb.base in Xsub]
    return P, sub_sset(P.obj, keep, name="M")


def filtered_refinement_solve(inc: dict, X: Diagram, Y: Diagram, i, n: int, f: SMap, Z,
                              max_nodes: int | None = None) -> RefinementResult:
    """Find alpha : j -> i and theta : Delta^n x Y_j -> Z extending f . alpha_*."""
    I = Y.index
    if not I.is_left_filtered():
        raise NotFilteredError(f"{I.name} is not left filtered")
    Z = as_fibrant(Z)
    T = Z.at(n + max(A.dim for A in Y.objects.values()))
    Pi, Mi = relative_frame(n, Y.objects[i], _image(inc[i]))
    transcript = []
    candidates = sorted((m for m in I.morphisms if I.dst(m) == i),
                        key=lambda m: (not I.is_identity(m), m))
    for m in candidates:
        j = I.src(m)
        Pj, Mj = relative_frame(n, Y.objects[j], _image(inc[j]))
        push = product_map(identity(standard_simplex(n)), Y(m), Pj, Pi)
        fixed = {}
        for s in Mj.ids():
            r = push.assignment[s]
            fixed[s] = f(r)
        stats = SearchStats()
        got = find_map(Pj.obj, T, fixed, max_nodes, stats)
        transcript.append(f"{m}: {'solved' if got else 'no lift'} nodes={stats.nodes}")
        if got is not None:
            return RefinementResult(True, m, SMap(Pj.obj, T, got, name="theta"), transcript)
    return RefinementResult(False, None, None, transcript)


def _image(g: SMap) -> set:
    return {r.base for r in g.assignment.values()}


def colim_hom(X: Diagram, Z, D: int, map_cap: int | None = None) -> FinSSet:
    """The filtered colimit of hom(X_i, Z) along the maps X(a)^*."""
    I = X.index
    if not I.is_left_filtered():
        raise NotFilteredError(f"{I.name} is not left filtered")
    Z = as_fibrant(Z)
    top = max(A.dim for A in X.objects.values()) + D
    T = Z.at(top)
    homs = {a: function_complex(X.objects[a], T, D, map_cap=map_cap) for a in I.objects}
    arrows = []
    for m in I.non_identities():
        a, b = I.src(m), I.dst(m)
        arrows.append((b, a, hom_precompose(X(m), homs[b], homs[a])))
    out = colimit_of(homs, arrows, name=f"colimhom({X.name})").obj
    out.cap = D
    return out


def hom_precompose(g: SMap, HB: TruncatedSSet, HA: TruncatedSSet) -> SMap:
    """g^* : hom(B, Z) -> hom(A, Z) for g : A -> B."""
    T = HB.target
    out = {}
    for sid, r in HB.raw.items():
        n = HB.dim_of(sid)
        PA, PB = HA.frames.product(n), HB.frames.product(n)
        h = product_map(g, identity(standard_simplex(n)), PA, PB)
        idx = {x: k for k, x in enumerate(PB.obj.ids())}
        out[sid] = HA.locate(precompose(r, h, T, idx))
    return SMap(HB, HA, out, name=f"{g.name}*")
