"""Acceptance suite: one PASS/FAIL line per criterion.

Under pytest the lines are repeated in the terminal summary; ``python
tests/test_acceptance.py`` runs the same checks as a script.
"""
import json
import random
import time

from prosimpl import io
from prosimpl.budget import Budgets
from prosimpl.category import Functor, Groupoid, discrete_category, identity_functor, terminal_category
from prosimpl.cli import run
from prosimpl.complexes import (compose_realizations, functor_of_map, last_vertex_complex,
                                realize_functor, sd_complex)
from prosimpl.constructions import Product, find_isomorphism
from prosimpl.diagrams import (NOT_PRO_EQUIVALENCE, Diagram, ProMap, constant_diagram, hocolim,
                               identity_promap, index_nerve, pro_equivalence_check)
from prosimpl.fixtures import (bz2, complex_maps, filtered_poset, fixture_categories,
                               fixture_complexes, fixture_ssets)
from prosimpl.homology import determinant, homology, induced_map_homology, matmul, smith_normal_form
from prosimpl.kan import (NO_OBSTRUCTION, LiftingProblem, ex, ex_unit, extension_search,
                          function_complex, lifting_frame, problem_from_homotopy)
from prosimpl.simplicial import (SMap, boundary, circle, constant_map, identity, inclusion, nd,
                                 standard_simplex, validate, validate_map)
from prosimpl.subdivision import pi_comparison, sd_standard, tower

T = terminal_category()
P = standard_simplex(0)


def report(log, n, title, ok, elapsed, detail="", limit=None):
    budget = f" (limit {limit}s)" if limit is not None else ""
    line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}  [{elapsed:.2f}s{budget}]"
    if detail:
        line += f"  {detail}"
    log.append(line)
    print(line)
    return ok


def _groups(X):
    return [str(h) for h in homology(X)]


# 1 -----------------------------------------------------------------------------------

PI_FIXTURES = ["delta0", "delta1", "delta2", "delta3", "bdelta2", "bdelta3", "horn21",
               "hexagon", "torus", "rp2"]


def criterion_1(log):
    t = time.time()
    bad = []
    for name in PI_FIXTURES:
        K = fixture_complexes()[name]
        pi, iso = pi_comparison(K)
        same_counts = pi.source.counts() == pi.target.counts()
        # a bijective simplicial map identifies the face tables
        if not (iso and same_counts and validate_map(pi) == []):
            bad.append(name)
    dt = time.time() - t
    ok = not bad and dt < 10
    return report(log, 1, "pi: sd(K) -> BN(K) is an isomorphism", ok, dt,
                  f"{len(PI_FIXTURES)} complexes" + (f", failing {bad}" if bad else ""), limit=10)


# 2 -----------------------------------------------------------------------------------

def criterion_2(log):
    t = time.time()
    maps = complex_maps()
    bad = []
    for name, f in maps.items():
        F = functor_of_map(f)
        g = realize_functor(F, f.source, f.target)
        if g != f or functor_of_map(g) != F:
            bad.append(name)
    ok = len(maps) >= 10 and not bad
    return report(log, 2, "functor/realization round trip", ok, time.time() - t,
                  f"{len(maps)} maps" + (f", failing {bad}" if bad else ""))


# 3 -----------------------------------------------------------------------------------

def criterion_3(log):
    t = time.time()
    maps = complex_maps()
    pairs = bad = 0
    for g in maps.values():
        for f in maps.values():
            if g.target == f.source:
                pairs += 1
                bad += not compose_realizations(g, f)[1]
    chains = 0
    for f in maps.values():
        K = next(k for k in fixture_complexes().values() if k.sset() == f.source)
        g1 = last_vertex_complex(K)
        g2 = last_vertex_complex(sd_complex(K))
        for g, h in ((g2, g1), (g1, f), (g1.compose(g2), f), (g2, f.compose(g1))):
            chains += 1
            bad += not compose_realizations(g, h)[1]
    return report(log, 3, "composite realizations agree", bad == 0, time.time() - t,
                  f"{pairs} fixture pairs, {chains} gamma-chain pairs, {bad} mismatches")


# 4 -----------------------------------------------------------------------------------

def criterion_4(log):
    t = time.time()
    bad = []
    for name, X in fixture_ssets().items():
        kmax = 2 if name in ("torus", "rp2") else 3
        tw = tower(X, kmax)
        h = _groups(X)
        for k, Y in enumerate(tw.levels, 1):
            if Y.euler() != X.euler() or _groups(Y) != h:
                bad.append(f"{name}@{k}")
        if not all(m.iso for m in induced_map_homology(tw.gamma_composite())):
            bad.append(f"{name}:gamma")
    return report(log, 4, "subdivision preserves chi and homology", not bad, time.time() - t,
                  f"{len(fixture_ssets())} objects, k<=3 (k<=2 torus/rp2)" +
                  (f", failing {bad}" if bad else ""))


# 5 -----------------------------------------------------------------------------------

def criterion_5(log):
    t = time.time()
    D1, D2 = standard_simplex(1), standard_simplex(2)
    got = {"sd(D2)": sd_standard(2).counts(),
           "D1xD1": Product(D1, D1).obj.counts(),
           "D2xD1": Product(D2, D1).obj.counts(),
           "sd(bD2)": tower(boundary(2), 1).levels[0].counts()}
    want = {"sd(D2)": (7, 12, 6), "D1xD1": (4, 5, 2), "D2xD1": (6, 13, 9, 3), "sd(bD2)": (6, 6)}
    wrong = [f"{k}={got[k]} expected {want[k]}" for k in want if got[k] != want[k]]
    return report(log, 5, "counting oracle", not wrong, time.time() - t,
                  "; ".join(wrong) if wrong else "all four counts match")


# 6 -----------------------------------------------------------------------------------

def _snf_ok(M) -> bool:
    D, U, V = smith_normal_form(M)
    if matmul(matmul(U, M), V) != D or abs(determinant(U)) != 1 or abs(determinant(V)) != 1:
        return False
    diag = []
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            if i != j and x:
                return False
            if i == j and x:
                diag.append(x)
    return all(d > 0 for d in diag) and all(b % a == 0 for a, b in zip(diag, diag[1:]))


def criterion_6(log):
    t = time.time()
    from prosimpl.fixtures import rp2, torus
    oracle = (_groups(circle()) == ["Z", "Z"] and _groups(rp2().sset()) == ["Z", "Z/2", "0"]
              and _groups(torus().sset()) == ["Z", "Z^2", "Z"])
    rng = random.Random(20261018)
    mats = []
    for _ in range(100):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        mats.append([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
    snf_bad = sum(not _snf_ok(M) for M in mats)
    dt = time.time() - t
    ok = oracle and snf_bad == 0 and dt < 10
    return report(log, 6, "homology oracle and SNF reconstruction", ok, dt,
                  f"oracle {'ok' if oracle else 'MISMATCH'}, {100 - snf_bad}/100 matrices", limit=10)


# 7 -----------------------------------------------------------------------------------

def criterion_7(log):
    t = time.time()
    Z = Groupoid(bz2())
    bad = []
    for name in ("delta0", "delta1", "bdelta2", "circle"):
        A = fixture_ssets()[name]
        H = hocolim(Diagram(T, {"*": A}, {}), Z, 3)
        F = function_complex(A, Z.nerve(3 + A.dim), 3)
        if H.counts() != F.counts():
            bad.append(f"hom({name},BZ/2): {H.counts()} vs {F.counts()}")
    for name, I in fixture_categories().items():
        H = hocolim(constant_diagram(I, P), P, 3)
        B = index_nerve(I, 3)
        if H.counts() != B.counts() or find_isomorphism(H, B) is None:
            bad.append(f"nerve({name})")
    return report(log, 7, "hocolim degenerate cases", not bad, time.time() - t,
                  "; ".join(bad) if bad else "4 function complexes, 3 nerves")


# 8 -----------------------------------------------------------------------------------

def criterion_8(log):
    t = time.time()
    Z = Groupoid(bz2())
    b = Budgets()
    notes, ok = [], True
    I = filtered_poset()
    m = [a for a in I.morphisms if not I.is_identity(a)][0]
    D1 = standard_simplex(1)
    interval = Diagram(I, {"0": D1, "1": P}, {m: SMap(P, D1, {"0": nd("0")})})
    for X in (Diagram(T, {"*": circle()}, {}), interval):
        v = pro_equivalence_check(identity_promap(X), [Z], b)
        ok &= v.status == NO_OBSTRUCTION
        notes.append(f"id: {v.status}")
    X, Y = Diagram(T, {"*": circle()}, {}), Diagram(T, {"*": P}, {})
    p = ProMap(identity_functor(T), {"*": constant_map(circle(), P, "0")}, X, Y)
    v = pro_equivalence_check(p, [Z], b)
    w = v.witness or {}
    ok &= (v.status == NOT_PRO_EQUIVALENCE and w.get("invariant") == "pi0"
           and sorted((w.get("source"), w.get("target"))) == [1, 2])
    notes.append(f"collapse: {v.status} pi0 {w.get('target')} vs {w.get('source')}")
    J = discrete_category(["a", "b"])
    al = Functor(J, T, {"a": "*", "b": "*"}, {x: T.identities["*"] for x in J.morphisms})
    p = ProMap(al, {"a": identity(P), "b": identity(P)}, Diagram(T, {"*": P}, {}),
               Diagram(J, {"a": P, "b": P}, {}))
    v = pro_equivalence_check(p, [Z], b)
    ok &= v.status == NOT_PRO_EQUIVALENCE and (v.witness or {}).get("stage") == "nerve"
    notes.append(f"broken alpha: {v.status} at {(v.witness or {}).get('stage')}")
    dt = time.time() - t
    return report(log, 8, "pro-equivalence verdicts", ok and dt < 30, dt, "; ".join(notes), limit=30)


# 9 -----------------------------------------------------------------------------------

def criterion_9(log):
    t = time.time()
    bad = []
    for name, X in fixture_ssets().items():
        E = ex(X, 3)
        eta = ex_unit(X, E)
        verts = {eta(v).base for v in X.level(0)}
        if len(E.level(0)) != len(X.level(0)) or verts != set(E.level(0)):
            bad.append(f"{name}:Ex0")
        if not all(m.iso for m in induced_map_homology(eta)):
            bad.append(f"{name}:H")
    n1 = len(ex(circle(), 2).all_simplices(1))
    if n1 != 4:
        bad.append(f"Ex(circle)_1={n1}")
    return report(log, 9, "Ex suite", not bad, time.time() - t,
                  f"{len(fixture_ssets())} objects at cap 3, Ex(circle)_1 = {n1}" +
                  (f", failing {bad}" if bad else ""))


# 10 ----------------------------------------------------------------------------------

def _extension_examples():
    D1, D2, B2 = standard_simplex(1), standard_simplex(2), boundary(2)
    p1 = problem_from_homotopy(1, identity(D1), inclusion(boundary(1), D1), lifting_frame(1).prism.proj1)
    fr0 = lifting_frame(0)
    f0 = SMap(P, D1, {"0": nd("0")}, name="f")
    hb = SMap(fr0.L, D1, {x: nd("1") for x in fr0.L.ids()}, name="hb")
    p2 = LiftingProblem(0, SMap(boundary(0), P, {}), hb, f0)
    p3 = problem_from_homotopy(2, inclusion(B2, D2), identity(B2), lifting_frame(2).prism.proj1)
    return [p1, p2, p3]


def criterion_10(log):
    t = time.time()
    runs = [[extension_search(p, 2).record() for p in _extension_examples()] for _ in range(2)]
    outcome = [r["success"] for r in runs[0]]
    ok = outcome == [True, True, False] and runs[0] == runs[1]
    ks = [r["k"] for r in runs[0]]
    return report(log, 10, "extension search examples", ok, time.time() - t,
                  f"outcomes {outcome} at k={ks}, transcripts identical: {runs[0] == runs[1]}")


# 11 ----------------------------------------------------------------------------------

def _corrupted():
    out = {}
    c = io.read_json(io.fixture_path("circle"))
    c["faces"]["e"] = c["faces"]["e"][:1]
    out["circle with one face"] = c
    s = io.sset_to_json(standard_simplex(2))
    s["faces"]["012"][0] = {"degens": [], "base": "01"}
    out["triangle with a wrong face"] = s
    m = io.read_json(io.fixture_path("map_circle_point"))
    m["on"]["e"] = {"degens": [], "base": "0"}
    out["map dropping dimension"] = m
    g = io.read_json(io.fixture_path("bz2"))
    g["groupoid"]["compose"][3] = ["g", "g", "g"]
    out["non-invertible groupoid table"] = g
    d1 = str(io.fixture_path("delta1"))
    out["diagram arrow not simplicial"] = {
        "name": "bad", "index": str(io.fixture_path("interval")), "objects": {"0": d1, "1": d1},
        "arrows": {"0<=1": {"on": {"0": "1", "1": "0", "01": "01"}}}}
    return out


def criterion_11(log, tmp):
    t = time.time()
    bad = [n for n, X in fixture_ssets().items() if validate(X)]
    files = sorted(io.fixture_path("delta0").parent.glob("*.json"))
    bad += [p.name for p in files if run(["validate", str(p)]).code != 0]
    located = []
    for name, data in _corrupted().items():
        p = tmp / (name.replace(" ", "_") + ".json")
        p.write_text(json.dumps(data))
        r = run(["validate", str(p)])
        vs = r.record.get("violations") or []
        if r.code == 1 and vs and vs[0]["where"]:
            located.append(f"{vs[0]['where']}/{vs[0]['check']}")
        else:
            bad.append(name)
    return report(log, 11, "validation suite", not bad and len(located) == 5, time.time() - t,
                  f"{len(files)} files clean, corrupted located at {located}" +
                  (f", failing {bad}" if bad else ""))


# pytest entry points -----------------------------------------------------------------

def test_criterion_01(acceptance_log):
    assert criterion_1(acceptance_log)


def test_criterion_02(acceptance_log):
    assert criterion_2(acceptance_log)


def test_criterion_03(acceptance_log):
    assert criterion_3(acceptance_log)


def test_criterion_04(acceptance_log):
    assert criterion_4(acceptance_log)


def test_criterion_05(acceptance_log):
    assert criterion_5(acceptance_log)


def test_criterion_06(acceptance_log):
    assert criterion_6(acceptance_log)


def test_criterion_07(acceptance_log):
    assert criterion_7(acceptance_log)


def test_criterion_08(acceptance_log):
    assert criterion_8(acceptance_log)


def test_criterion_09(acceptance_log):
    assert criterion_9(acceptance_log)


def test_criterion_10(acceptance_log):
    assert criterion_10(acceptance_log)


def test_criterion_11(acceptance_log, tmp_path):
    assert criterion_11(acceptance_log, tmp_path)


if __name__ == "__main__":
    import sys
    import tempfile
    from pathlib import Path

    log = []
    checks = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
              criterion_7, criterion_8, criterion_9, criterion_10]
    results = [c(log) for c in checks]
    with tempfile.TemporaryDirectory() as d:
        results.append(criterion_11(log, Path(d)))
    sys.exit(0 if all(results) else 1)
