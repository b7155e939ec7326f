"""Function complexes, Ex, the path-space replacement and the bounded
weak-equivalence test built on extension problems after subdivision."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .budget import Budgets
from .category import Groupoid
from .constructions import (Product, SearchStats, enumerate_maps, find_map, map_search,
                            product_map)
from .errors import BudgetError, ValidationError
from .homology import induced_map_homology, pi0, valid_degrees
from .simplicial import (FinSSet, SMap, SimplexRef, boundary, codegeneracy, coface, identity, nd,
                         ordinal_map, simplex_map, standard_simplex, sub_sset, surjection)
from .subdivision import _gamma_standard, last_vertex, sd_map, sd_ordinal, sd_standard, subdivide
from .truncated import TruncatedSSet, build_from_raw


# -- objects whose n-simplices are maps out of a cosimplicial frame -------------------

def precompose(r: tuple, g: SMap, target: FinSSet, index: dict) -> tuple:
    """Values of (raw map r on g.target) . g, listed over g.source."""
    out = []
    for x in g.source.ids():
        ref = g.assignment[x]
        v = r[index[ref.base]]
        if ref.word:
            v = target.degenerate(v, surjection(ref.word, g.source.dim_of(x)))
        out.append(v)
    return tuple(out)


def maps_complex(name: str, frame, coface_map, codegen_map, Y: FinSSet, D: int,
                 map_cap: int | None = None, fixed=None, kan: bool = False) -> TruncatedSSet:
    """Truncated simplicial set with n-simplices the maps frame(n) -> Y.

    ``coface_map(n, i)`` : frame(n-1) -> frame(n) and ``codegen_map(n, j)`` :
    frame(n+1) -> frame(n) give the operators by precomposition.  ``fixed(n)``
    optionally pins values (a dict over frame(n) ids) for sub-objects.
    """
    frames = {n: frame(n) for n in range(D + 1)}
    index = {n: {x: k for k, x in enumerate(frames[n].ids())} for n in frames}
    rank = {len(index[n]): n for n in frames}

    def levels(n):
        P = frames[n]
        pins = fixed(n) if fixed else None
        order, values = map_search(P, Y, pins)
        where = {x: k for k, x in enumerate(order)}
        perm = [where[x] for x in P.ids()]
        for vals in values:
            yield tuple([vals[k] for k in perm])

    def face(r, i):
        n = rank[len(r)]
        return precompose(r, coface_map(n, i), Y, index[n])

    def degen(r, j):
        n = rank[len(r)]
        return precompose(r, codegen_map(n, j), Y, index[n])

    # r = s_j d_j r iff r is fixed by the idempotent delta^j sigma^j; compare
    # entry by entry, vertices first, so most simplices are rejected early
    idem = {}
    for n in range(1, D + 1):
        for j in range(n):
            e = coface_map(n, j).compose(codegen_map(n - 1, j))
            P = frames[n]
            idem[(n, j)] = [(index[n][x], index[n][e.assignment[x].base], e.assignment[x].word,
                             P.dim_of(x)) for x in P.ids()]

    def degenerate_at(r, j):
        for k, src, word, d in idem[(rank[len(r)], j)]:
            v = r[src]
            if word:
                v = Y.degenerate(v, surjection(word, d))
            if v != r[k]:
                return False
        return True

    return build_from_raw(name, levels, face, degen, D, rank=lambda r: rank[len(r)],
                          kan=kan, map_cap=map_cap, degenerate_at=degenerate_at)


def _target(Y, top: int) -> FinSSet:
    return Y.nerve(top) if isinstance(Y, Groupoid) else Y


# -- function complexes ---------------------------------------------------------------

class _ProductFrames:
    """A x Delta^n with the maps 1 x theta, cached per n."""

    def __init__(self, A: FinSSet):
        self.A = A
        self._p = {}
        self._maps = {}

    def __call__(self, n: int) -> FinSSet:
        return self.product(n).obj

    def product(self, n: int) -> Product:
        if n not in self._p:
            self._p[n] = Product(self.A, standard_simplex(n), name=f"{self.A.name}xD{n}")
        return self._p[n]

    def along(self, theta: tuple, n: int) -> SMap:
        key = (theta, n)
        if key not in self._maps:
            m = len(theta) - 1
            self._maps[key] = product_map(identity(self.A), ordinal_map(theta, n),
                                          self.product(m), self.product(n))
        return self._maps[key]

    def coface(self, n, i):
        return self.along(coface(n, i), n)

    def codegen(self, n, j):
        return self.along(codegeneracy(n, j), n)


def function_complex(A: FinSSet, Y, D: int, map_cap: int | None = None) -> TruncatedSSet:
    """hom(A, Y) truncated at D: n-simplices are the maps A x Delta^n -> Y."""
    frames = _ProductFrames(A)
    T = _target(Y, A.dim + D + 1)
    kan = isinstance(Y, Groupoid) or getattr(Y, "kan", False)
    out = maps_complex(f"hom({A.name},{T.name})", frames, frames.coface, frames.codegen, T, D,
                       map_cap=map_cap, kan=kan)
    out.frames = frames
    out.target = T
    return out


@dataclass
class PathSpace:
    obj: TruncatedSSet
    projection: SMap
    to_source: SMap
    paths: TruncatedSSet


def _end_inclusion(frames: _ProductFrames, n: int, end: str) -> SMap:
    """Delta^n -> Delta^1 x Delta^n at the given end of Delta^1."""
    P = frames.product(n)
    Dn = standard_simplex(n)
    out = {}
    for x in Dn.ids():
        m = Dn.dim_of(x)
        out[x] = P.pair(SimplexRef(tuple(range(m - 1, -1, -1)), end), nd(x))
    return SMap(Dn, P.obj, out, name=f"at{end}")


def path_space_replacement(f: SMap, D: int, map_cap: int | None = None) -> PathSpace:
    """X x_Y Y^I with the projection pi to Y through the far end of the path."""
    X, Y = f.source, f.target
    I = standard_simplex(1)
    YI = function_complex(I, Y, D, map_cap=map_cap)
    frames = YI.frames
    T = YI.target
    ends = {(n, e): _end_inclusion(frames, n, e) for n in range(D + 1) for e in "01"}
    index = {n: {x: k for k, x in enumerate(frames(n).ids())} for n in range(D + 1)}

    def ev(p, n, e):
        return precompose(p, ends[(n, e)], T, index[n])[-1]

    def levels(n):
        # pairs (x, p) with p starting at f(x); degenerate x included
        P = frames(n)
        start = ends[(n, "0")]
        for x in X.all_simplices(n):
            fx = f(x)
            pins = {start(s).base: T.apply(_vertex_tuple(s), fx) for s in start.source.ids()}
            for assign in enumerate_maps(P, T, pins):
                yield x, tuple(assign[y] for y in P.ids())

    def face(r, i):
        x, p = r
        n = X.ref_dim(x)
        return X.face(x, i), precompose(p, frames.coface(n, i), T, index[n])

    def degen(r, j):
        x, p = r
        n = X.ref_dim(x)
        return X.degeneracy(x, j), precompose(p, frames.codegen(n, j), T, index[n])

    obj = build_from_raw(f"P({f.name})", levels, face, degen, D,
                         rank=lambda r: X.ref_dim(r[0]), map_cap=map_cap)
    proj = SMap(obj, T, {s: ev(r[1], X.ref_dim(r[0]), "1") for s, r in obj.raw.items()}, name="pi")
    back = SMap(obj, X, {s: r[0] for s, r in obj.raw.items()}, name="pr")
    return PathSpace(obj, proj, back, YI)


def _vertex_tuple(s: str) -> tuple:
    """Vertices of a face of a standard simplex from its id."""
    return tuple(int(v) for v in (s.split("<") if "<" in s else s))


# -- Ex ---------------------------------------------------------------------------------

def ex(X: FinSSet, D: int, map_cap: int | None = None) -> TruncatedSSet:
    """Ex(X) truncated at D: n-simplices are the maps sd(Delta^n) -> X."""
    return maps_complex(f"Ex{X.name}", sd_standard,
                        lambda n, i: sd_ordinal(coface(n, i), n),
                        lambda n, j: sd_ordinal(codegeneracy(n, j), n), X, D, map_cap=map_cap)


def ex_unit(X: FinSSet, E: TruncatedSSet) -> SMap:
    """The natural map X -> Ex(X), x |-> x . gamma."""
    out = {}
    for x in X.ids():
        n = X.dim_of(x)
        if E.cap is not None and n > E.cap:
            raise BudgetError(f"{x} has dimension {n} above the truncation {E.cap}")
        g = simplex_map(X, nd(x)).compose(_gamma_standard(n))
        out[x] = E.locate(tuple(g.assignment[s] for s in g.source.ids()))
    return SMap(X, E, out, name="eta")


# -- lifting problems ------------------------------------------------------------------

@dataclass
class Frame:
    """Delta^n x Delta^1 with L = (dDelta^n x Delta^1) u (Delta^n x {0}) and the
    end inclusion d0 : Delta^n -> Delta^n x {1}."""
    n: int
    prism: Product
    L: FinSSet
    simplex: FinSSet
    bdry: FinSSet
    d0: SMap

    @property
    def Q(self) -> FinSSet:
        return self.prism.obj


@lru_cache(maxsize=None)
def lifting_frame(n: int) -> Frame:
    Dn, I = standard_simplex(n), standard_simplex(1)
    P = Product(Dn, I, name=f"D{n}xD1")
    top = Dn.level(n)[0]
    keep = [s for s, (ra, rb) in P.key.items() if ra.base != top or rb.base == "0"]
    L = sub_sset(P.obj, keep, name=f"L{n}")
    out = {}
    for x in Dn.ids():
        m = Dn.dim_of(x)
        out[x] = P.pair(nd(x), SimplexRef(tuple(range(m - 1, -1, -1)), "1"))
    d0 = SMap(Dn, P.obj, out, name="d0")
    return Frame(n, P, L, Dn, boundary(n), d0)


@dataclass
class LiftingProblem:
    """alpha : dDelta^n -> X and (h, beta) : L -> Y with f . alpha = (h, beta) . d0."""
    n: int
    alpha: SMap
    hb: SMap
    f: SMap

    def __post_init__(self):
        fr = lifting_frame(self.n)
        for x in fr.bdry.ids():
            if self.f(self.alpha(x)) != self.hb(fr.d0(x)):
                raise ValidationError(f"lifting square does not commute at {x}")

    @property
    def frame(self) -> Frame:
        return lifting_frame(self.n)


def restrict(g: SMap, A: FinSSet) -> SMap:
    """g restricted to a simplicial subset A of its source (same ids)."""
    return SMap(A, g.target, {x: g.assignment[x] for x in A.ids()}, name=g.name)


def problem_from_homotopy(n: int, f: SMap, alpha: SMap, H: SMap) -> LiftingProblem:
    """The problem whose (h, beta) is the restriction of a map H : Delta^n x Delta^1 -> Y."""
    return LiftingProblem(n, alpha, restrict(H, lifting_frame(n).L), f)


@lru_cache(maxsize=None)
def _subdivided_frame(n: int, k: int):
    """sd^k of the frame with the sd^k of its inclusions and the gamma composites."""
    fr = lifting_frame(n)
    Q, L, Dn, B = fr.Q, fr.L, fr.simplex, fr.bdry
    incl_L = SMap(L, Q, {x: nd(x) for x in L.ids()})
    incl_B = SMap(B, Dn, {x: nd(x) for x in B.ids()})
    objs = {"Q": Q, "L": L, "D": Dn, "B": B}
    maps = {"L": incl_L, "d0": fr.d0, "B": incl_B}
    gam = {c: identity(X) for c, X in objs.items()}
    for _ in range(k):
        subs = {c: subdivide(X) for c, X in objs.items()}
        for c in objs:
            gam[c] = gam[c].compose(last_vertex(objs[c], subs[c]))
        maps = {"L": sd_map(maps["L"], subs["L"], subs["Q"]),
                "d0": sd_map(maps["d0"], subs["D"], subs["Q"]),
                "B": sd_map(maps["B"], subs["B"], subs["D"])}
        objs = {c: s.obj for c, s in subs.items()}
    return objs, maps, gam


@dataclass
class ExtensionResult:
    success: bool
    k: int | None
    theta: SMap | None
    H: SMap | None
    transcript: list = field(default_factory=list)

    def record(self) -> dict:
        return {"success": self.success, "k": self.k, "transcript": list(self.transcript)}


def extension_search(p: LiftingProblem, k_budget: int, max_nodes: int | None = None) -> ExtensionResult:
    """Search k = 0..k_budget for theta : sd^k Delta^n -> X and H : sd^k(Delta^n x Delta^1) -> Y
    extending the subdivided square."""
    X, Y = p.f.source, p.f.target
    transcript = []
    for k in range(k_budget + 1):
        objs, maps, gam = _subdivided_frame(p.n, k)
        fixed_theta = {}
        for s in objs["B"].ids():
            fixed_theta[maps["B"](s).base] = p.alpha(gam["B"](s))
        fixed_L = {maps["L"](s).base: p.hb(gam["L"](s)) for s in objs["L"].ids()}
        stats = SearchStats()
        tried = 0
        for assign in enumerate_maps(objs["D"], X, fixed_theta, max_nodes, stats):
            tried += 1
            theta = SMap(objs["D"], X, assign, name="theta")
            fixed = dict(fixed_L)
            clash = False
            for s in objs["D"].ids():
                key, val = maps["d0"](s).base, p.f(theta(s))
                if fixed.setdefault(key, val) != val:
                    clash = True
                    break
            if clash:
                continue
            H = find_map(objs["Q"], Y, fixed, max_nodes, stats)
            if H is not None:
                H = SMap(objs["Q"], Y, H, name="H")
                _verify(p, k, theta, H, objs, maps, gam)
                transcript.append(f"k={k} theta_tried={tried} nodes={stats.nodes} success")
                return ExtensionResult(True, k, theta, H, transcript)
        transcript.append(f"k={k} theta_tried={tried} nodes={stats.nodes} exhausted")
    return ExtensionResult(False, None, None, None, transcript)


def _verify(p, k, theta, H, objs, maps, gam):
    """The subdivided square commutes bit-exactly."""
    for s in objs["B"].ids():
        assert theta(maps["B"](s)) == p.alpha(gam["B"](s))
    for s in objs["L"].ids():
        assert H(maps["L"](s)) == p.hb(gam["L"](s))
    for s in objs["D"].ids():
        assert H(maps["d0"](s)) == p.f(theta(s))


def canonical_problems(f: SMap, n: int, limit: int, max_nodes: int | None = None):
    """The first ``limit`` lifting problems of dimension n for f, in search order."""
    X, Y = f.source, f.target
    fr = lifting_frame(n)
    found = []
    for a in enumerate_maps(fr.bdry, X, max_nodes=max_nodes):
        alpha = SMap(fr.bdry, X, a, name="alpha")
        fixed = {fr.d0(x).base: f(alpha(x)) for x in fr.bdry.ids()}
        for hb in enumerate_maps(fr.L, Y, fixed, max_nodes=max_nodes):
            found.append(LiftingProblem(n, alpha, SMap(fr.L, Y, hb, name="hb"), f))
            if len(found) >= limit:
                return found
    return found


# -- the bounded weak-equivalence test -------------------------------------------------

COUNTEREXAMPLE = "CounterexampleFound"
NO_OBSTRUCTION = "NoObstructionFound"


@dataclass
class WeqVerdict:
    status: str
    witness: dict | None
    budgets: dict
    checks: list = field(default_factory=list)
    unresolved: list = field(default_factory=list)

    def record(self) -> dict:
        return {"status": self.status, "witness": self.witness, "budgets": self.budgets,
                "checks": self.checks, "unresolved": self.unresolved}


def weq_test(f: SMap, budgets: Budgets | None = None, lifting: bool = True) -> WeqVerdict:
    """pi_0, then homology with the induced map, then bounded extension searches."""
    b = budgets or Budgets()
    X, Y = f.source, f.target
    checks = []
    cx, lx = pi0(X)
    cy, ly = pi0(Y)
    checks.append({"check": "pi0", "source": cx, "target": cy})
    if cx != cy:
        return WeqVerdict(COUNTEREXAMPLE, {"invariant": "pi0", "source": cx, "target": cy},
                          b.record(), checks)
    hit = {ly[f(v).base] for v in X.level(0)}
    if len(hit) != cy or len({(lx[v], ly[f(v).base]) for v in X.level(0)}) != cx:
        return WeqVerdict(COUNTEREXAMPLE, {"invariant": "pi0 map", "source": cx, "target": cy,
                                           "detail": "induced map on components is not a bijection"},
                          b.record(), checks)
    degrees = min(X.dim, Y.dim) + 2
    for m in induced_map_homology(f, degrees=degrees):
        checks.append({"check": f"H{m.degree}", "source": str(m.source), "target": str(m.target),
                       "iso": m.iso})
        if not m.iso:
            return WeqVerdict(COUNTEREXAMPLE, {"invariant": f"H{m.degree}", "degree": m.degree,
                                               "source": str(m.source), "target": str(m.target),
                                               "matrix": m.free_matrix},
                              b.record(), checks)
    unresolved = []
    if lifting:
        top = b.n_max
        for obj in (X, Y):
            if getattr(obj, "cap", None) is not None:
                top = min(top, obj.cap - 1)
        for n in range(top + 1):
            try:
                problems = canonical_problems(f, n, b.problems_per_dim, b.search_nodes)
            except BudgetError as exc:
                unresolved.append({"n": n, "reason": str(exc)})
                continue
            solved = 0
            for q, prob in enumerate(problems):
                try:
                    res = extension_search(prob, b.k_max, b.search_nodes)
                except BudgetError as exc:
                    unresolved.append({"n": n, "problem": q, "reason": str(exc)})
                    continue
                if res.success:
                    solved += 1
                else:
                    unresolved.append({"n": n, "problem": q, "reason": "exhausted",
                                       "transcript": res.transcript})
            checks.append({"check": f"lifting n={n}", "problems": len(problems), "solved": solved})
    return WeqVerdict(NO_OBSTRUCTION, None, b.record(), checks, unresolved)
