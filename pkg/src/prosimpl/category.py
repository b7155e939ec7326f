"""Finite categories given by composition tables, posets, functors and nerves."""
from __future__ import annotations


from .errors import MustTruncateError, ValidationError
from .simplicial import Violation, subset_id
from .truncated import TruncatedSSet, build_from_raw


class FinCategory:
    """Objects, morphisms ``id -> (src, dst)``, a composition table
    ``(g, f) -> g.f`` for composable pairs and one identity per object."""

    def __init__(self, objects, morphisms: dict, compose: dict, identities: dict, name: str = "C"):
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = {m: tuple(sd) for m, sd in morphisms.items()}
        self.compose = dict(compose)
        self.identities = dict(identities)
        self._ids = set(self.identities.values())

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}, {len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    def src(self, m):
        return self.morphisms[m][0]

    def dst(self, m):
        return self.morphisms[m][1]

    def is_identity(self, m) -> bool:
        return m in self._ids

    def comp(self, g, f):
        """g . f (f first)."""
        return self.compose[(g, f)]

    def hom(self, a, b) -> list:
        return [m for m, (s, t) in self.morphisms.items() if s == a and t == b]

    def non_identities(self) -> list:
        return [m for m in self.morphisms if m not in self._ids]

    def validate(self) -> list:
        out = []
        objs = set(self.objects)
        for m, (s, t) in self.morphisms.items():
            if s not in objs or t not in objs:
                out.append(Violation(m, "endpoints", f"{s} -> {t} mentions an unknown object"))
        for a in self.objects:
            i = self.identities.get(a)
            if i is None or self.morphisms.get(i) != (a, a):
                out.append(Violation(a, "identity", f"missing or misplaced identity {i!r}"))
        if out:
            return out
        for (g, f), h in self.compose.items():
            if g not in self.morphisms or f not in self.morphisms or h not in self.morphisms:
                out.append(Violation(f"{g}.{f}", "compose", "unknown morphism in table"))
            elif self.src(g) != self.dst(f) or self.morphisms[h] != (self.src(f), self.dst(g)):
                out.append(Violation(f"{g}.{f}", "compose", f"ill-typed entry {h!r}"))
        if out:
            return out
        for f in self.morphisms:
            for g in self.morphisms:
                if self.src(g) == self.dst(f) and (g, f) not in self.compose:
                    out.append(Violation(f"{g}.{f}", "compose", "composable pair missing from table"))
        if out:
            return out
        for f in self.morphisms:
            a, b = self.morphisms[f]
            if self.comp(self.identities[b], f) != f or self.comp(f, self.identities[a]) != f:
                out.append(Violation(f, "unit", "identity law fails"))
        for f in self.morphisms:
            for g in self.morphisms:
                if self.src(g) != self.dst(f):
                    continue
                for h in self.morphisms:
                    if self.src(h) != self.dst(g):
                        continue
                    if self.comp(h, self.comp(g, f)) != self.comp(self.comp(h, g), f):
                        out.append(Violation(f"{h}.{g}.{f}", "associativity", "fails"))
        return out

    def check(self):
        problems = self.validate()
        if problems:
            raise ValidationError(f"{self.name}: {problems[0]}", problems)
        return self

    def is_groupoid(self) -> bool:
        return not self.groupoid_violations()

    def groupoid_violations(self) -> list:
        """Morphisms without a two-sided inverse."""
        return [Violation(f, "inverse", "no two-sided inverse")
                for f in self.morphisms
                if not any(self.comp(g, f) == self.identities[self.src(f)] and
                           self.comp(f, g) == self.identities[self.dst(f)]
                           for g in self.hom(self.dst(f), self.src(f)))]

    def is_loop_free(self) -> bool:
        return self.longest_chain() is not None

    def longest_chain(self) -> int | None:
        """Length of the longest string of non-identity morphisms, None if unbounded."""
        succ = {a: set() for a in self.objects}
        for m in self.non_identities():
            s, t = self.morphisms[m]
            if s == t:
                return None
            succ[s].add(t)
        depth, state = {}, {}

        def visit(a):
            if state.get(a) == 1:
                raise _Cycle
            if a in depth:
                return depth[a]
            state[a] = 1
            depth[a] = max((visit(b) + 1 for b in succ[a]), default=0)
            state[a] = 2
            return depth[a]

        try:
            return max((visit(a) for a in self.objects), default=0)
        except _Cycle:
            return None

    def opposite(self) -> "FinCategory":
        return FinCategory(self.objects, {m: (t, s) for m, (s, t) in self.morphisms.items()},
                           {(f, g): h for (g, f), h in self.compose.items()}, self.identities,
                           name=f"{self.name}^op")

    def is_left_filtered(self) -> bool:
        """Every finite diagram admits a cone: pairs of objects have a common
        source, and parallel pairs are equalized by some morphism."""
        for a in self.objects:
            for b in self.objects:
                if not any(self.hom(c, a) and self.hom(c, b) for c in self.objects):
                    return False
        for f in self.morphisms:
            for g in self.morphisms:
                if f == g or self.morphisms[f] != self.morphisms[g]:
                    continue
                a = self.src(f)
                if not any(self.comp(f, h) == self.comp(g, h)
                           for h in self.morphisms if self.dst(h) == a):
                    return False
        return True

    def to_dot(self) -> str:
        lines = [f'digraph "{self.name}" {{']
        for a in self.objects:
            lines.append(f'  "{a}";')
        for m in self.non_identities():
            s, t = self.morphisms[m]
            lines.append(f'  "{s}" -> "{t}" [label="{m}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class _Cycle(Exception):
    pass


class Poset(FinCategory):
    """A finite poset viewed as a category; the morphism a <= b has id ``a<=b``."""

    def __init__(self, elements, leq_pairs, name: str = "P", closed: bool = False):
        elements = list(elements)
        rel = {(a, a) for a in elements} | {tuple(p) for p in leq_pairs}
        changed = not closed
        while changed:
            changed = False
            for a, b in list(rel):
                for c, d in list(rel):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise ValidationError(f"{name}: {a} <= {b} <= {a} violates antisymmetry")
        self.elements = tuple(elements)
        self.relation = frozenset(rel)
        mid = lambda a, b: f"{a}<={b}"
        morphisms = {mid(a, b): (a, b) for a in elements for b in elements if (a, b) in rel}
        above = {a: [] for a in elements}
        for a, b in rel:
            above[a].append(b)
        compose = {(mid(b, c), mid(a, b)): mid(a, c)
                   for (a, b) in rel for c in above[b]}
        super().__init__(elements, morphisms, compose, {a: mid(a, a) for a in elements}, name=name)
        self._above = {a: sorted((b for b in above[a] if b != a), key=self.elements.index)
                       for a in elements}

    def validate(self) -> list:
        # reflexive, transitive and antisymmetric by construction
        return []

    def leq(self, a, b) -> bool:
        return (a, b) in self.relation

    def less(self, a, b) -> bool:
        return a != b and (a, b) in self.relation

    def chains(self, n: int) -> list:
        """Strictly increasing chains with n+1 elements."""
        out = [(a,) for a in self.elements]
        for _ in range(n):
            out = [c + (b,) for c in out for b in self._above[c[-1]]]
        return out

    def to_dot(self) -> str:
        lines = [f'digraph "{self.name}" {{']
        for a in self.elements:
            lines.append(f'  "{a}";')
        for a in self.elements:
            for b in self.elements:
                if self.less(a, b) and not any(self.less(a, c) and self.less(c, b) for c in self.elements):
                    lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


class Functor:
    def __init__(self, source: FinCategory, target: FinCategory, objects: dict, morphisms: dict,
                 name: str = "F"):
        self.source, self.target = source, target
        self.objects = dict(objects)
        self.morphisms = dict(morphisms)
        self.name = name

    def __call__(self, m):
        return self.morphisms[m]

    def on_object(self, a):
        return self.objects[a]

    def validate(self) -> list:
        out = []
        C, D = self.source, self.target
        for a in C.objects:
            if self.objects.get(a) not in D.objects:
                out.append(Violation(a, "object", f"image {self.objects.get(a)!r} is not an object"))
        if out:
            return out
        for m, (s, t) in C.morphisms.items():
            fm = self.morphisms.get(m)
            if fm not in D.morphisms:
                out.append(Violation(m, "morphism", f"image {fm!r} is not a morphism"))
            elif D.morphisms[fm] != (self.objects[s], self.objects[t]):
                out.append(Violation(m, "morphism", "endpoints not preserved"))
        if out:
            return out
        for a in C.objects:
            if self.morphisms[C.identities[a]] != D.identities[self.objects[a]]:
                out.append(Violation(a, "identity", "not preserved"))
        for (g, f), h in C.compose.items():
            if D.comp(self(g), self(f)) != self(h):
                out.append(Violation(f"{g}.{f}", "composition", "not preserved"))
        return out

    def check(self):
        problems = self.validate()
        if problems:
            raise ValidationError(f"functor {self.name}: {problems[0]}", problems)
        return self

    def compose(self, other: "Functor") -> "Functor":
        """self . other"""
        return Functor(other.source, self.target,
                       {a: self.objects[b] for a, b in other.objects.items()},
                       {m: self.morphisms[n] for m, n in other.morphisms.items()},
                       name=f"{self.name}.{other.name}")


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, {a: a for a in C.objects}, {m: m for m in C.morphisms}, name="id")


# -- standard categories ------------------------------------------------------------

def terminal_category(obj: str = "*") -> FinCategory:
    return FinCategory([obj], {f"id_{obj}": (obj, obj)}, {(f"id_{obj}", f"id_{obj}"): f"id_{obj}"},
                       {obj: f"id_{obj}"}, name="1")


def ordinal(n: int) -> Poset:
    """The ordinal [n] = {0 < 1 < ... < n}."""
    elems = [str(k) for k in range(n + 1)]
    return Poset(elems, [(elems[a], elems[b]) for a in range(n + 1) for b in range(a, n + 1)],
                 name=f"[{n}]")


def cospan_category() -> Poset:
    return Poset(["a", "b", "c"], [("a", "c"), ("b", "c")], name="cospan")


def discrete_category(objects) -> Poset:
    return Poset(list(objects), [], name="discrete")


def cyclic_group(order: int, name: str | None = None) -> FinCategory:
    """Z/order as a one-object groupoid; morphism ``g^k`` (``e`` for the unit)."""
    label = lambda k: "e" if k % order == 0 else ("g" if k % order == 1 else f"g{k % order}")
    mors = {label(k): ("*", "*") for k in range(order)}
    comp = {(label(a), label(b)): label(a + b) for a in range(order) for b in range(order)}
    return FinCategory(["*"], mors, comp, {"*": "e"}, name=name or f"Z/{order}")


# -- nerves ------------------------------------------------------------------------

def _strings(C: FinCategory, n: int):
    out_of = {a: [] for a in C.objects}
    for m, (s, t) in C.morphisms.items():
        out_of[s].append((m, t))
    out = [((a,), ()) for a in C.objects]
    for _ in range(n):
        out = [(objs + (t,), mors + (m,)) for objs, mors in out for m, t in out_of[objs[-1]]]
    return out


def _nerve_ops(C: FinCategory):
    def face(r, i):
        objs, mors = r
        n = len(mors)
        if i == 0:
            return objs[1:], mors[1:]
        if i == n:
            return objs[:-1], mors[:-1]
        return objs[:i] + objs[i + 1:], mors[:i - 1] + (C.comp(mors[i], mors[i - 1]),) + mors[i + 1:]

    def degen(r, j):
        objs, mors = r
        return objs[:j + 1] + objs[j:], mors[:j] + (C.identities[objs[j]],) + mors[j:]

    return face, degen


def nerve(C: FinCategory, trunc: int | None = None, name: str | None = None) -> TruncatedSSet:
    """Nerve of C: n-simplices are composable strings of n morphisms.

    Without ``trunc`` the category must be loop-free so the nerve is finite.
    """
    if isinstance(C, Poset):
        return _poset_nerve(C, trunc, name)
    C.check()
    top = C.longest_chain()
    if trunc is None:
        if top is None:
            raise MustTruncateError(f"{C.name} has loops; its nerve is infinite-dimensional")
        cap, complete = top, True
    else:
        cap, complete = trunc, top is not None and top <= trunc
    face, degen = _nerve_ops(C)
    if isinstance(C, Poset):
        single = all(len(str(a)) == 1 for a in C.objects)
        label = lambda r: subset_id(tuple(str(a) for a in r[0]), single)
    else:
        label = lambda r: str(r[0][0]) if not r[1] else ";".join(r[1])
    try:
        return build_from_raw(name or f"B{C.name}", lambda n: _strings(C, n), face, degen, cap,
                              complete=complete, label=label, rank=lambda r: len(r[1]),
                              kan=C.is_groupoid())
    except ValidationError:
        return build_from_raw(name or f"B{C.name}", lambda n: _strings(C, n), face, degen, cap,
                              complete=complete, rank=lambda r: len(r[1]), kan=C.is_groupoid())


def _poset_nerve(P: Poset, trunc, name):
    from .simplicial import nd, SimplexRef, word_of
    single = all(len(str(a)) == 1 for a in P.elements)
    label = lambda chain: subset_id(tuple(str(a) for a in chain), single)
    simplices, faces, raw = [], {}, {}
    n = 0
    chains = P.chains(0)
    while chains and (trunc is None or n <= trunc):
        level = []
        for c in chains:
            sid = label(c)
            level.append(sid)
            raw[sid] = (c, tuple(f"{a}<={b}" for a, b in zip(c, c[1:])))
            if n:
                faces[sid] = [nd(label(c[:i] + c[i + 1:])) for i in range(n + 1)]
        simplices.append(level)
        n += 1
        chains = [c + (b,) for c in chains for b in P._above[c[-1]]]
    complete = not chains

    def locate(r):
        objs = tuple(r[0])
        pos, distinct = [], []
        for a in objs:
            if not distinct or distinct[-1] != a:
                distinct.append(a)
            pos.append(len(distinct) - 1)
        return SimplexRef(word_of(tuple(pos)), label(tuple(distinct)))

    return TruncatedSSet(simplices, faces, name=name or f"B{P.name}",
                         cap=None if complete else trunc, raw=raw, locator=locate)


def nerve_map(F: Functor, source_nerve: TruncatedSSet, target_nerve: TruncatedSSet):
    """BF : BC -> BD between (possibly truncated) nerves."""
    from .simplicial import SMap
    out = {}
    for sid, (objs, mors) in source_nerve.raw.items():
        out[sid] = target_nerve.locate((tuple(F.objects[a] for a in objs), tuple(F(m) for m in mors)))
    return SMap(source_nerve, target_nerve, out, name=f"B{F.name}")


class Groupoid:
    """A finite groupoid used as a Kan test object; its nerve is built lazily
    to whatever dimension a computation needs."""

    def __init__(self, category: FinCategory, name: str | None = None):
        category.check()
        if not category.is_groupoid():
            raise ValidationError(f"{category.name} is not a groupoid")
        self.category = category
        self.name = name or f"B{category.name}"
        self._nerves = {}

    def __repr__(self):
        return f"Groupoid({self.category.name!r})"

    def nerve(self, dim: int) -> TruncatedSSet:
        hit = self._nerves.get(dim)
        if hit is None:
            hit = nerve(self.category, trunc=dim, name=self.name)
            self._nerves[dim] = hit
        return hit


def groupoid_nerve(G: FinCategory, D: int) -> TruncatedSSet:
    return Groupoid(G).nerve(D)
