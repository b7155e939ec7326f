"""Simplicial sets built from raw simplex data, possibly truncated at a dimension.

Function complexes, Ex, nerves with loops and homotopy colimits all have an
obvious description of *every* n-simplex (degenerate ones included) together
with face and degeneracy operators.  :func:`build_from_raw` turns such a
description into a normal-form presentation: it keeps the raw simplices that
are not of the form s_j d_j r and records normalized faces.
"""
from __future__ import annotations

from typing import Callable, Hashable, Iterable

from .budget import check_size
from .errors import BudgetError, ValidationError
from .simplicial import FinSSet, SimplexRef, codegeneracy, nd, surjection, word_of


def degen_ref(ref: SimplexRef, j: int, dim: int) -> SimplexRef:
    """s_j applied to a ref of dimension ``dim``."""
    h = surjection(ref.word, dim)
    return SimplexRef(word_of(tuple(h[t] for t in codegeneracy(dim, j))), ref.base)


class TruncatedSSet(FinSSet):
    """Non-degenerate simplices in dimensions <= cap (cap None: complete).

    ``raw`` maps simplex ids back to the raw data they were built from, and
    :meth:`locate` finds the normal form of any raw simplex.
    """

    def __init__(self, simplices, faces, name="T", cap=None, kan=False, raw=None, locator=None):
        super().__init__(simplices, faces, name=name)
        self.cap = cap
        self.kan = kan
        self.raw = raw or {}
        self._locator = locator

    def __repr__(self):
        return f"TruncatedSSet({self.name!r}, cap={self.cap}, counts={self.counts()})"

    def locate(self, r: Hashable) -> SimplexRef:
        if self._locator is None:
            raise ValidationError(f"{self.name} has no raw locator")
        return self._locator(r)

    @property
    def complete(self) -> bool:
        return self.cap is None

    def valid_homology_degrees(self) -> int | None:
        return None if self.cap is None else self.cap - 1


def build_from_raw(name: str, levels: Callable[[int], Iterable[Hashable]],
                   face: Callable, degen: Callable, cap: int, *, complete=False,
                   rank: Callable, label: Callable | None = None, kan=False,
                   map_cap: int | None = None,
                   degenerate_at: Callable | None = None) -> TruncatedSSet:
    """Normal-form presentation of a simplicial set described by raw simplices.

    ``levels(n)`` enumerates all raw n-simplices, ``face(r, i)`` and
    ``degen(r, j)`` are the simplicial operators on raw data and ``rank(r)``
    is the dimension of a raw simplex.  With
    ``complete=True`` the caller asserts there are no non-degenerate
    simplices above ``cap``.  ``degenerate_at(r, j)`` may replace the test
    ``degen(face(r, j), j) == r`` by something cheaper.
    """
    if degenerate_at is None:
        degenerate_at = lambda r, j: degen(face(r, j), j) == r
    ids_of, raw, dims = {}, {}, {}
    simplices, faces = [], {}
    counter = 0
    for n in range(cap + 1):
        level = []
        seen = 0
        for r in levels(n):
            seen += 1
            if map_cap is not None and seen > map_cap:
                raise BudgetError(f"{name}: more than {map_cap} raw {n}-simplices")
            if n and any(degenerate_at(r, j) for j in range(n)):
                continue
            if label is None:
                sid = f"{name}.{counter}"
            else:
                sid = label(r)
                if sid in raw:
                    raise ValidationError(f"{name}: duplicate simplex label {sid!r}")
            counter += 1
            ids_of[r] = sid
            raw[sid] = r
            dims[sid] = n
            level.append(sid)
        simplices.append(level)
        check_size(counter, name)

    memo = {}

    def locate(r, n=None):
        sid = ids_of.get(r)
        if sid is not None:
            return nd(sid)
        hit = memo.get(r)
        if hit is not None:
            return hit
        if n is None:
            n = rank(r)
        for j in range(n):
            if degenerate_at(r, j):
                out = degen_ref(locate(face(r, j), n - 1), j, n - 1)
                memo[r] = out
                return out
        raise ValidationError(f"{name}: raw simplex outside the presented range: {r!r}")

    for sid, r in raw.items():
        n = dims[sid]
        if n:
            faces[sid] = tuple(locate(face(r, i), n - 1) for i in range(n + 1))
    while simplices and not simplices[-1]:
        simplices.pop()
    return TruncatedSSet(simplices, faces, name=name, cap=None if complete else cap, kan=kan,
                         raw=raw, locator=locate)
