"""Finite simplicial sets in Eilenberg-Zilber normal form.

A finite simplicial set is stored through its non-degenerate simplices only.
Every simplex, degenerate or not, is a :class:`SimplexRef`: a strictly
decreasing degeneracy word applied to a non-degenerate base simplex.  Simplicial
operators act on refs through monotone maps of ordinals, written as tuples
``theta = (theta(0), ..., theta(m))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import MalformedExpression, ValidationError


class SimplexRef(NamedTuple):
    word: tuple
    base: str

    def __str__(self):
        if not self.word:
            return self.base
        return "".join(f"s{j}" for j in self.word) + f"({self.base})"


def nd(base: str) -> SimplexRef:
    """Ref to a non-degenerate simplex."""
    return SimplexRef((), base)


# -- ordinal maps -----------------------------------------------------------

@lru_cache(maxsize=None)
def surjection(word: tuple, m: int) -> tuple:
    """Monotone surjection [m] -> [m - len(word)] of a normal-form word."""
    return tuple(k - sum(1 for j in word if j < k) for k in range(m + 1))


@lru_cache(maxsize=None)
def word_of(surj: tuple) -> tuple:
    return tuple(j for j in range(len(surj) - 2, -1, -1) if surj[j] == surj[j + 1])


def coface(n: int, i: int) -> tuple:
    """delta^i : [n-1] -> [n], skipping i."""
    return tuple(k if k < i else k + 1 for k in range(n))


def codegeneracy(n: int, j: int) -> tuple:
    """sigma^j : [n+1] -> [n], hitting j twice."""
    return tuple(k if k <= j else k - 1 for k in range(n + 2))


def compose_ordinal(outer: tuple, inner: tuple) -> tuple:
    return tuple(outer[k] for k in inner)


def epi_mono(theta: tuple) -> tuple[tuple, tuple]:
    """Factor a monotone map as (surjection, image) with theta = image . surjection."""
    image = tuple(sorted(set(theta)))
    pos = {v: k for k, v in enumerate(image)}
    return tuple(pos[v] for v in theta), image


def is_monotone(theta, target_dim=None) -> bool:
    if any(a > b for a, b in zip(theta, theta[1:])):
        return False
    if target_dim is not None and theta and (theta[0] < 0 or theta[-1] > target_dim):
        return False
    return True


def _is_decreasing(word) -> bool:
    return all(a > b for a, b in zip(word, word[1:])) and all(
        isinstance(j, int) and j >= 0 for j in word)


# -- simplicial sets ----------------------------------------------------------

class FinSSet:
    """A finite simplicial set presented by non-degenerate simplices.

    ``simplices[n]`` lists the ids of the non-degenerate n-simplices and
    ``faces[x]`` gives the n+1 faces of an n-simplex x (n >= 1) as refs.
    Instances are treated as immutable; memo tables are private.
    """

    cap = None

    def __init__(self, simplices: Iterable[Iterable[str]], faces: dict, name: str = "X"):
        self.name = name
        self.simplices = tuple(tuple(level) for level in simplices)
        self.faces = {k: tuple(SimplexRef(tuple(r[0]), r[1]) for r in v) for k, v in faces.items()}
        self._dim = {}
        for n, level in enumerate(self.simplices):
            for x in level:
                self._dim.setdefault(x, n)
        self._face_memo = {}
        self._all_memo = {}

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}, counts={self.counts()})"

    def __eq__(self, other):
        return (isinstance(other, FinSSet) and self.simplices == other.simplices
                and self.faces == other.faces)

    def __hash__(self):
        return hash((self.simplices, tuple(sorted(self.faces.items()))))

    # structure
    @property
    def dim(self) -> int:
        for n in range(len(self.simplices) - 1, -1, -1):
            if self.simplices[n]:
                return n
        return -1

    def counts(self) -> tuple:
        return tuple(len(level) for level in self.simplices[: self.dim + 1])

    def euler(self) -> int:
        return sum((-1) ** n * c for n, c in enumerate(self.counts()))

    def ids(self):
        for level in self.simplices:
            yield from level

    def level(self, n: int) -> tuple:
        return self.simplices[n] if 0 <= n < len(self.simplices) else ()

    def __contains__(self, x):
        return x in self._dim

    def __len__(self):
        return len(self._dim)

    def dim_of(self, x: str) -> int:
        try:
            return self._dim[x]
        except KeyError:
            raise MalformedExpression(f"unknown simplex {x!r} in {self.name}") from None

    def ref_dim(self, ref: SimplexRef) -> int:
        return self.dim_of(ref.base) + len(ref.word)

    def face_refs(self, x: str) -> tuple:
        return self.faces.get(x, ())

    # operators
    def apply(self, theta: tuple, ref: SimplexRef) -> SimplexRef:
        """theta^* applied to ref, for a monotone theta: [m] -> [dim ref]."""
        p = self.ref_dim(ref)
        if not theta or not is_monotone(theta, p):
            raise MalformedExpression(f"{theta} is not a monotone map into [{p}]")
        h = surjection(ref.word, p)
        eps, image = epi_mono(tuple(h[t] for t in theta))
        r = self._face_by_image(ref.base, image)
        hr = surjection(r.word, len(image) - 1)
        return SimplexRef(word_of(tuple(hr[e] for e in eps)), r.base)

    def _face_by_image(self, base: str, image: tuple) -> SimplexRef:
        key = (base, image)
        hit = self._face_memo.get(key)
        if hit is not None:
            return hit
        n = self.dim_of(base)
        if len(image) == n + 1:
            out = nd(base)
        else:
            i = next(k for k in range(n + 1) if k not in image)
            try:
                r = self.faces[base][i]
            except (KeyError, IndexError):
                raise MalformedExpression(f"{base!r} has no face d{i}") from None
            out = self.apply(tuple(v if v < i else v - 1 for v in image), r)
        self._face_memo[key] = out
        return out

    def face(self, ref: SimplexRef, i: int) -> SimplexRef:
        p = self.ref_dim(ref)
        if p < 1 or not 0 <= i <= p:
            raise MalformedExpression(f"d{i} undefined on a {p}-simplex")
        return self.apply(coface(p, i), ref)

    def degeneracy(self, ref: SimplexRef, j: int) -> SimplexRef:
        p = self.ref_dim(ref)
        if not 0 <= j <= p:
            raise MalformedExpression(f"s{j} undefined on a {p}-simplex")
        return self.apply(codegeneracy(p, j), ref)

    def degenerate(self, ref: SimplexRef, surj: tuple) -> SimplexRef:
        """ref precomposed with a monotone surjection (no face lookups)."""
        h = surjection(ref.word, self.ref_dim(ref))
        return SimplexRef(word_of(tuple(h[t] for t in surj)), ref.base)

    def vertices(self, ref: SimplexRef) -> tuple:
        return tuple(self.apply((k,), ref).base for k in range(self.ref_dim(ref) + 1))

    def normalize(self, ops, ref: SimplexRef) -> SimplexRef:
        """Evaluate an operator word such as ``[("d", 1), ("s", 0)]`` (outermost first)."""
        if isinstance(ref, str):
            ref = nd(ref)
        for op in reversed(list(ops)):
            kind, idx = op
            if kind == "d":
                ref = self.face(ref, idx)
            elif kind == "s":
                ref = self.degeneracy(ref, idx)
            else:
                raise MalformedExpression(f"unknown operator {kind!r}")
        return ref

    def all_simplices(self, n: int) -> list:
        """Every n-simplex (degenerate ones included), non-degenerate first."""
        hit = self._all_memo.get(n)
        if hit is not None:
            return hit
        out = []
        for k in range(min(n, len(self.simplices) - 1), -1, -1):
            words = [tuple(sorted(c, reverse=True)) for c in combinations(range(n), n - k)]
            words.sort()
            for x in self.simplices[k]:
                out.extend(SimplexRef(w, x) for w in words)
        self._all_memo[n] = out
        return out

    def boundary_refs(self, x: str) -> tuple:
        return self.faces.get(x, ())

    def check(self):
        problems = validate(self)
        if problems:
            raise ValidationError(f"{self.name}: {len(problems)} violation(s); first: {problems[0]}", problems)
        return self


@dataclass(frozen=True)
class Violation:
    where: str
    check: str
    detail: str

    def __str__(self):
        return f"{self.where}: {self.check}: {self.detail}"


def _ref_problem(X: FinSSet, ref, expected_dim) -> str | None:
    if ref.base not in X:
        return f"unknown base {ref.base!r}"
    if not _is_decreasing(ref.word):
        return f"degeneracy word {list(ref.word)} is not strictly decreasing"
    d = X.dim_of(ref.base) + len(ref.word)
    if d != expected_dim:
        return f"ref {ref} has dimension {d}, expected {expected_dim}"
    if ref.word and ref.word[0] > d - 1:
        return f"degeneracy index {ref.word[0]} out of range for dimension {d}"
    return None


def validate(X: FinSSet) -> list:
    """Every violated invariant of X; empty iff X is a valid simplicial set."""
    out = []
    seen = {}
    for n, level in enumerate(X.simplices):
        for x in level:
            if x in seen:
                out.append(Violation(x, "unique-id", f"listed in dimensions {seen[x]} and {n}"))
            seen[x] = n
    for x in X.faces:
        if x not in X:
            out.append(Violation(x, "faces", "face record for an unknown simplex"))
    structural_ok = set()
    for n, level in enumerate(X.simplices):
        for x in level:
            fs = X.faces.get(x, ())
            if n == 0:
                if fs:
                    out.append(Violation(x, "faces", "a vertex has no faces"))
                structural_ok.add(x)
                continue
            if len(fs) != n + 1:
                out.append(Violation(x, "faces", f"expected {n + 1} faces, found {len(fs)}"))
                continue
            ok = True
            for i, r in enumerate(fs):
                msg = _ref_problem(X, r, n - 1)
                if msg:
                    out.append(Violation(x, f"d{i}", msg))
                    ok = False
            if ok:
                structural_ok.add(x)
    # simplicial identities, once every face in the closure is well formed
    for n, level in enumerate(X.simplices):
        if n < 2:
            continue
        for x in level:
            if x not in structural_ok:
                continue
            try:
                for j in range(n + 1):
                    for i in range(j):
                        left = X.face(X.face(nd(x), j), i)
                        right = X.face(X.face(nd(x), i), j - 1)
                        if left != right:
                            out.append(Violation(
                                x, f"d{i}d{j}=d{j - 1}d{i}", f"{left} != {right}"))
            except MalformedExpression as exc:
                out.append(Violation(x, "faces", f"not evaluable: {exc}"))
    return out


# -- maps -------------------------------------------------------------------------

class SMap:
    """A simplicial map, given on non-degenerate source simplices."""

    def __init__(self, source: FinSSet, target: FinSSet, assignment: dict, name: str = "f"):
        self.source = source
        self.target = target
        self.assignment = {k: SimplexRef(tuple(v[0]), v[1]) for k, v in assignment.items()}
        self.name = name

    def __repr__(self):
        return f"SMap({self.source.name} -> {self.target.name})"

    def __eq__(self, other):
        return (isinstance(other, SMap) and self.source == other.source
                and self.target == other.target and self.assignment == other.assignment)

    __hash__ = None

    def __call__(self, ref) -> SimplexRef:
        if isinstance(ref, str):
            return self.assignment[ref]
        image = self.assignment[ref.base]
        if not ref.word:
            return image
        surj = surjection(ref.word, self.source.ref_dim(ref))
        return self.target.degenerate(image, surj)

    def compose(self, other: "SMap") -> "SMap":
        """self . other"""
        return SMap(other.source, self.target,
                    {x: self(other(x)) for x in other.source.ids()},
                    name=f"{self.name}.{other.name}")

    def is_isomorphism(self) -> bool:
        images = list(self.assignment.values())
        if any(r.word for r in images) or len(set(images)) != len(images):
            return False
        return set(r.base for r in images) == set(self.target.ids()) and not validate_map(self)

    def inverse(self) -> "SMap":
        if not self.is_isomorphism():
            raise ValidationError(f"{self} is not an isomorphism")
        return SMap(self.target, self.source, {r.base: nd(x) for x, r in self.assignment.items()})


def identity(X: FinSSet) -> SMap:
    return SMap(X, X, {x: nd(x) for x in X.ids()}, name="id")


def validate_map(f: SMap) -> list:
    out = []
    S, T = f.source, f.target
    for n, level in enumerate(S.simplices):
        for x in level:
            if x not in f.assignment:
                out.append(Violation(x, "assigned", "no image"))
                continue
            msg = _ref_problem(T, f.assignment[x], n)
            if msg:
                out.append(Violation(x, "image", msg))
    for x in f.assignment:
        if x not in S:
            out.append(Violation(x, "assigned", "not a source simplex"))
    if out:
        return out
    for n, level in enumerate(S.simplices):
        for x in level:
            for i, r in enumerate(S.face_refs(x)):
                try:
                    left, right = f(r), T.face(f.assignment[x], i)
                except MalformedExpression as exc:
                    out.append(Violation(x, f"d{i}", f"not evaluable: {exc}"))
                    continue
                if left != right:
                    out.append(Violation(x, f"f.d{i}=d{i}.f", f"{left} != {right}"))
    return out


# -- standard generators -------------------------------------------------------

def subset_id(vertex_ids: tuple, single: bool) -> str:
    if single:
        return "".join(vertex_ids)
    return "<".join(v if "<" not in v else f"({v})" for v in vertex_ids)


def _simplex_data(n: int, keep) -> tuple[list, dict]:
    labels = [str(v) for v in range(n + 1)]
    single = n <= 9
    simplices, faces = [], {}
    for m in range(n + 1):
        level = []
        for c in combinations(range(n + 1), m + 1):
            if not keep(c):
                continue
            x = subset_id(tuple(labels[v] for v in c), single)
            level.append(x)
            if m:
                faces[x] = [nd(subset_id(tuple(labels[v] for v in c[:i] + c[i + 1:]), single))
                            for i in range(m + 1)]
        simplices.append(level)
    while simplices and not simplices[-1]:
        simplices.pop()
    return simplices, faces


def standard_simplex(n: int) -> FinSSet:
    if n < 0:
        raise ValueError("n must be >= 0")
    return FinSSet(*_simplex_data(n, lambda c: True), name=f"Delta{n}")


def boundary(n: int) -> FinSSet:
    if n < 0:
        raise ValueError("n must be >= 0")
    return FinSSet(*_simplex_data(n, lambda c: len(c) <= n), name=f"dDelta{n}")


def horn(n: int, k: int) -> FinSSet:
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    full = set(range(n + 1))
    keep = lambda c: len(c) <= n - 1 or (len(c) == n and full - set(c) != {k})
    return FinSSet(*_simplex_data(n, keep), name=f"Lambda{n}_{k}")


def sub_sset(X: FinSSet, ids: Iterable[str], name: str | None = None) -> FinSSet:
    """The simplicial subset generated by ``ids`` (closed under faces)."""
    keep = set()
    stack = list(ids)
    while stack:
        x = stack.pop()
        if x in keep:
            continue
        keep.add(x)
        stack.extend(r.base for r in X.face_refs(x))
    simplices = [[x for x in level if x in keep] for level in X.simplices]
    while simplices and not simplices[-1]:
        simplices.pop()
    return FinSSet(simplices, {x: X.faces[x] for x in keep if x in X.faces}, name=name or f"{X.name}'")


def inclusion(A: FinSSet, X: FinSSet) -> SMap:
    return SMap(A, X, {x: nd(x) for x in A.ids()}, name="incl")


def constant_map(X: FinSSet, Y: FinSSet, vertex: str) -> SMap:
    out = {}
    for n, level in enumerate(X.simplices):
        for x in level:
            out[x] = SimplexRef(tuple(range(n - 1, -1, -1)), vertex)
    return SMap(X, Y, out, name="const")


def simplex_map(Y: FinSSet, ref: SimplexRef) -> SMap:
    """The map Delta^n -> Y classifying an n-simplex ``ref`` of Y."""
    n = Y.ref_dim(ref)
    D = standard_simplex(n)
    single = n <= 9
    out = {}
    for m in range(n + 1):
        for c in combinations(range(n + 1), m + 1):
            out[subset_id(tuple(str(v) for v in c), single)] = Y.apply(c, ref)
    return SMap(D, Y, out, name="chi")


def ordinal_map(theta: tuple, n: int) -> SMap:
    """Delta^m -> Delta^n induced by a monotone theta: [m] -> [n]."""
    return simplex_map(standard_simplex(n), SimplexRef(word_of(epi_mono(theta)[0]),
                       subset_id(tuple(str(v) for v in sorted(set(theta))), n <= 9)))


def circle() -> FinSSet:
    return FinSSet([["v"], ["e"]], {"e": [nd("v"), nd("v")]}, name="S1")
