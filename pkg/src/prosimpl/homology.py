"""Integral homology of finite simplicial sets on normalized chains.

The Smith normal form is computed by sparse elimination over Python
integers.  Pivots are logical (row, column) positions, so nothing is ever
permuted until a dense result is requested.  Unimodular transforms are
tracked only when asked for, together with their inverses.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from math import prod

from .constructions import _UnionFind
from .simplicial import FinSSet, SMap


# -- sparse integer elimination ------------------------------------------------------

def _axpy(dst: dict, q: int, src: dict):
    """dst += q * src for sparse vectors."""
    for k, v in src.items():
        w = dst.get(k, 0) + q * v
        if w:
            dst[k] = w
        else:
            dst.pop(k, None)


def _eye(n: int) -> dict:
    return {k: {k: 1} for k in range(n)}


class SparseSNF:
    """Smith normal form D = U M V of an m x n integer matrix.

    ``pivots`` lists (row, col, d) with d_1 | d_2 | ...; every other entry of
    D is zero.  With ``rows=True`` the row transform U (as rows) and U^-1 (as
    columns) are kept; ``cols=True`` keeps V (as columns) and V^-1 (as rows).
    """

    def __init__(self, m: int, n: int, columns: dict, rows: bool = False, cols: bool = False):
        self.shape = (m, n)
        R = {}
        C = {}
        for c, vec in columns.items():
            for r, v in vec.items():
                if v:
                    R.setdefault(r, {})[c] = v
                    C.setdefault(c, set()).add(r)
        self._R, self._C = R, C
        self.U = _eye(m) if rows else None
        self.Uinv = _eye(m) if rows else None
        self.V = _eye(n) if cols else None
        self.Vinv = _eye(n) if cols else None
        self.pivots = []
        self._run()
        self._fix_chain()
        del self._R, self._C

    # elementary operations, mirrored onto the transforms
    def _row_op(self, k: int, q: int, r: int):
        """row_k -= q row_r"""
        if not q:
            return
        R, C = self._R, self._C
        rk = R.setdefault(k, {})
        for j, v in R[r].items():
            w = rk.get(j, 0) - q * v
            if w:
                rk[j] = w
                C.setdefault(j, set()).add(k)
            else:
                rk.pop(j, None)
                C[j].discard(k)
        if self.U is not None:
            _axpy(self.U[k], -q, self.U[r])
            _axpy(self.Uinv[r], q, self.Uinv[k])

    def _col_op_on_pivot_row(self, j: int, q: int, c: int, r: int):
        """col_j -= q col_c, where column c is zero outside row r."""
        if not q:
            return
        R, C = self._R, self._C
        w = R[r].get(j, 0) - q * R[r][c]
        if w:
            R[r][j] = w
        else:
            R[r].pop(j, None)
            C[j].discard(r)
        if self.V is not None:
            _axpy(self.V[j], -q, self.V[c])
            _axpy(self.Vinv[c], q, self.Vinv[j])

    def _negate_row(self, r: int):
        if self.U is not None:
            self.U[r] = {k: -v for k, v in self.U[r].items()}
            self.Uinv[r] = {k: -v for k, v in self.Uinv[r].items()}

    def _eliminate(self, r: int, c: int):
        R, C = self._R, self._C
        while True:
            p = R[r][c]
            for k in sorted(C[c] - {r}):
                self._row_op(k, R[k][c] // p, r)
            rest = C[c] - {r}
            if rest:
                r = min(rest, key=lambda k: (abs(R[k][c]), len(R[k]), k))
                continue
            for j in sorted(set(R[r]) - {c}):
                self._col_op_on_pivot_row(j, R[r][j] // p, c, r)
            rest = set(R[r]) - {c}
            if rest:
                c = min(rest, key=lambda j: (abs(R[r][j]), len(C[j]), j))
                continue
            return r, c

    def _run(self):
        R, C = self._R, self._C
        order = sorted(C, key=lambda c: (len(C[c]), c))
        for c0 in order:
            while C.get(c0):
                units = [k for k in C[c0] if abs(R[k][c0]) == 1]
                pool = units or list(C[c0])
                r = min(pool, key=lambda k: (abs(R[k][c0]), len(R[k]), k))
                r, c = self._eliminate(r, c0)
                d = R[r].pop(c)
                C[c].discard(r)
                if d < 0:
                    self._negate_row(r)
                    d = -d
                self.pivots.append((r, c, d))

    def _fix_chain(self):
        piv = sorted(self.pivots, key=lambda t: (t[2], t[0], t[1]))
        # units divide everything and stay in front
        first = next((k for k, t in enumerate(piv) if t[2] != 1), len(piv))
        for i in range(first, len(piv)):
            for j in range(i + 1, len(piv)):
                (ri, ci, a), (rj, cj, b) = piv[i], piv[j]
                if b % a == 0:
                    continue
                g, x, y = _xgcd(a, b)
                self._two_by_two(ri, rj, ci, cj, a, b, g, x, y)
                piv[i], piv[j] = (ri, ci, g), (rj, cj, a // g * b)
        self.pivots = piv

    def _two_by_two(self, ri, rj, ci, cj, a, b, g, x, y):
        if self.U is not None:
            U, Ui = self.U, self.Uinv
            new_i, new_j = {}, {}
            _axpy(new_i, x, U[ri]); _axpy(new_i, y, U[rj])
            _axpy(new_j, -(b // g), U[ri]); _axpy(new_j, a // g, U[rj])
            U[ri], U[rj] = new_i, new_j
            new_i, new_j = {}, {}
            _axpy(new_i, a // g, Ui[ri]); _axpy(new_i, b // g, Ui[rj])
            _axpy(new_j, -y, Ui[ri]); _axpy(new_j, x, Ui[rj])
            Ui[ri], Ui[rj] = new_i, new_j
        if self.V is not None:
            V, Vi = self.V, self.Vinv
            new_i, new_j = {}, {}
            _axpy(new_i, 1, V[ci]); _axpy(new_i, 1, V[cj])
            _axpy(new_j, -y * (b // g), V[ci]); _axpy(new_j, x * (a // g), V[cj])
            V[ci], V[cj] = new_i, new_j
            new_i, new_j = {}, {}
            _axpy(new_i, x * (a // g), Vi[ci]); _axpy(new_i, y * (b // g), Vi[cj])
            _axpy(new_j, -1, Vi[ci]); _axpy(new_j, 1, Vi[cj])
            Vi[ci], Vi[cj] = new_i, new_j

    # derived data
    @property
    def rank(self) -> int:
        return len(self.pivots)

    def invariant_factors(self) -> list:
        return [d for _, _, d in self.pivots]

    def pivot_rows(self) -> set:
        return {r for r, _, _ in self.pivots}

    def pivot_cols(self) -> set:
        return {c for _, c, _ in self.pivots}


def _xgcd(a: int, b: int):
    """g, x, y with g = gcd(a, b) = x a + y b (a, b > 0)."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


# -- dense interface -------------------------------------------------------------------

def _dense_to_columns(M) -> tuple[int, int, dict]:
    m = len(M)
    n = len(M[0]) if m else 0
    cols = {}
    for i, row in enumerate(M):
        for j, v in enumerate(row):
            if v:
                cols.setdefault(j, {})[i] = int(v)
    return m, n, cols


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def smith_normal_form(M) -> tuple[list, list, list]:
    """(D, U, V) with D = U M V, D diagonal with d_1 | d_2 | ... and U, V unimodular."""
    m, n, cols = _dense_to_columns(M)
    S = SparseSNF(m, n, cols, rows=True, cols=True)
    # permute so that pivot k sits at (k, k)
    pr = S.pivot_rows()
    prow = [r for r, _, _ in S.pivots] + [r for r in range(m) if r not in pr]
    pc = S.pivot_cols()
    pcol = [c for _, c, _ in S.pivots] + [c for c in range(n) if c not in pc]
    U = [[S.U[r].get(k, 0) for k in range(m)] for r in prow]
    V = [[S.V[c].get(k, 0) for c in pcol] for k in range(n)]
    D = [[0] * n for _ in range(m)]
    for k, (_, _, d) in enumerate(S.pivots):
        D[k][k] = d
    return D, U, V


def determinant(M) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = [list(row) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def matrix_text(M) -> str:
    """Plain row-major integer text: a "rows cols" header, then one row per line."""
    m = len(M)
    n = len(M[0]) if m else 0
    return "\n".join([f"{m} {n}"] + [" ".join(str(v) for v in row) for row in M]) + "\n"


# -- chains ---------------------------------------------------------------------

class ChainComplex:
    """Normalized chains: degree n is free on the non-degenerate n-simplices,
    faces with degenerate normal form are dropped."""

    def __init__(self, X: FinSSet, top: int | None = None):
        self.X = X
        top = X.dim if top is None else top
        self.top = top
        self.basis = [list(X.level(n)) for n in range(top + 1)]
        self.index = [{x: k for k, x in enumerate(b)} for b in self.basis]
        self.boundary = [None]
        for n in range(1, top + 1):
            cols = {}
            for k, x in enumerate(self.basis[n]):
                vec = {}
                for i, r in enumerate(X.face_refs(x)):
                    if r.word:
                        continue
                    row = self.index[n - 1][r.base]
                    vec[row] = vec.get(row, 0) + (-1) ** i
                cols[k] = {r: v for r, v in vec.items() if v}
            self.boundary.append(cols)

    def size(self, n: int) -> int:
        return len(self.basis[n]) if 0 <= n <= self.top else 0

    def dense(self, n: int) -> list:
        """The boundary d_n : C_n -> C_{n-1} as a dense row-major matrix."""
        rows, cols = self.size(n - 1), self.size(n)
        M = [[0] * cols for _ in range(rows)]
        if 1 <= n <= self.top:
            for c, vec in self.boundary[n].items():
                for r, v in vec.items():
                    M[r][c] = v
        return M

    def columns(self, n: int) -> dict:
        if 1 <= n <= self.top:
            return self.boundary[n]
        return {}

    def check_d2(self) -> bool:
        for n in range(2, self.top + 1):
            for vec in self.boundary[n].values():
                acc = {}
                for r, v in vec.items():
                    _axpy(acc, v, self.boundary[n - 1].get(r, {}))
                if acc:
                    return False
        return True


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: tuple = ()

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) or "0"

    @property
    def trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def record(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def valid_degrees(X: FinSSet) -> int | None:
    """Number of degrees in which homology of a truncated X is trusted; None if complete."""
    if X.cap is None:
        return None
    return max(0, X.cap - 1)


def homology(X: FinSSet, degrees: int | None = None) -> list:
    """H_0 ... H_{degrees-1} of X."""
    top = valid_degrees(X)
    if top is None:
        top = X.dim + 1
    if degrees is not None:
        top = min(top, degrees)
    cc = ChainComplex(X, top=top)
    ranks, factors = [0], []
    for n in range(1, top + 1):
        S = SparseSNF(cc.size(n - 1), cc.size(n), cc.columns(n))
        ranks.append(S.rank)
        factors.append(S.invariant_factors())
    ranks.append(0)
    factors.append([])
    out = []
    for n in range(top):
        free = cc.size(n) - ranks[n] - ranks[n + 1]
        out.append(HomologyGroup(free, tuple(d for d in factors[n] if d > 1)))
    return out


def betti(X: FinSSet) -> list:
    return [h.rank for h in homology(X)]


# -- homology with generators ---------------------------------------------------------

@dataclass
class HomologyBasis:
    """Generators and coordinates for H_n of a chain complex."""
    n: int
    free: list
    torsion: list
    _coords: object = field(repr=False)

    @property
    def group(self) -> HomologyGroup:
        return HomologyGroup(len(self.free), tuple(d for _, d, _ in self.torsion))

    def coordinates(self, z: dict) -> tuple[list, list]:
        """(free coordinates, torsion coordinates mod d) of a cycle z."""
        return self._coords(z)


def homology_basis(cc: ChainComplex, n: int) -> HomologyBasis:
    """Cycles representing a basis of H_n; the class of any cycle is computable."""
    size = cc.size(n)
    dn = SparseSNF(cc.size(n - 1), size, cc.columns(n), cols=True)
    pc = dn.pivot_cols()
    kernel = [c for c in range(size) if c not in pc]
    # kernel rows of V^-1, indexed by column
    by_col = {}
    for k, c in enumerate(kernel):
        for j, v in dn.Vinv[c].items():
            by_col.setdefault(j, []).append((k, v))

    def kcoords(z: dict) -> dict:
        out = {}
        for j, a in z.items():
            for k, v in by_col.get(j, ()):
                out[k] = out.get(k, 0) + v * a
        return {k: v for k, v in out.items() if v}

    A = {}
    for col, vec in cc.columns(n + 1).items():
        A[col] = kcoords(vec)
    img = SparseSNF(len(kernel), cc.size(n + 1), A, rows=True)
    hit = {r: d for r, _, d in img.pivots}

    def cycle_of(row: int) -> dict:
        z = {}
        for k, a in img.Uinv[row].items():
            _axpy(z, a, dn.V[kernel[k]])
        return z

    free_rows = [r for r in range(len(kernel)) if r not in hit]
    tors_rows = [(r, d) for r, _, d in img.pivots if d > 1]
    free = [(r, cycle_of(r)) for r in free_rows]
    torsion = [(r, d, cycle_of(r)) for r, d in tors_rows]

    def coords(z: dict):
        x = kcoords(z)
        yv = {r: sum(img.U[r].get(k, 0) * a for k, a in x.items()) for r in free_rows}
        yt = {r: sum(img.U[r].get(k, 0) * a for k, a in x.items()) % d for r, d in tors_rows}
        return [yv[r] for r in free_rows], [yt[r] for r, _ in tors_rows]

    return HomologyBasis(n, [z for _, z in free], [(r, d, z) for r, d, z in torsion], coords)


def _chain_image(f: SMap, z: dict, src: ChainComplex, tgt: ChainComplex, n: int) -> dict:
    out = {}
    for k, a in z.items():
        r = f.assignment[src.basis[n][k]]
        if r.word:
            continue
        j = tgt.index[n][r.base]
        out[j] = out.get(j, 0) + a
    return {j: v for j, v in out.items() if v}


@dataclass
class InducedMap:
    degree: int
    source: HomologyGroup
    target: HomologyGroup
    free_matrix: list
    torsion_matrix: list
    iso: bool

    def record(self) -> dict:
        return {"degree": self.degree, "source": str(self.source), "target": str(self.target),
                "free_matrix": self.free_matrix, "torsion_matrix": self.torsion_matrix,
                "iso": self.iso}


def induced_map_homology(f: SMap, degrees: int | None = None) -> list:
    """Matrices of f_* on H_n in the chosen bases, with an isomorphism verdict per degree."""
    bounds = [b for b in (valid_degrees(f.source), valid_degrees(f.target)) if b is not None]
    top = min(bounds) if bounds else max(f.source.dim, f.target.dim) + 1
    if degrees is not None:
        top = min(top, degrees)
    A = ChainComplex(f.source, top=top)
    B = ChainComplex(f.target, top=top)
    out = []
    for n in range(top):
        hx, hy = homology_basis(A, n), homology_basis(B, n)
        free_cols, tors_cols = [], []
        for z in hx.free:
            free_cols.append(hy.coordinates(_chain_image(f, z, A, B, n)))
        for _, _, z in hx.torsion:
            tors_cols.append(hy.coordinates(_chain_image(f, z, A, B, n)))
        fm = [[col[0][i] for col in free_cols] for i in range(len(hy.free))]
        tm = [[col[1][i] for col in tors_cols] for i in range(len(hy.torsion))]
        iso = _is_iso(fm, [d for _, d, _ in hx.torsion], [d for _, d, _ in hy.torsion], tm,
                      len(hx.free), len(hy.free))
        out.append(InducedMap(n, hx.group, hy.group, fm, tm, iso))
    return out


def _is_iso(fm, src_t, tgt_t, tm, a, b) -> bool:
    # block lower-triangular: iso iff the free block and the torsion block are
    if a != b or prod(src_t) != prod(tgt_t):
        return False
    if a and abs(determinant(fm)) != 1:
        return False
    if not src_t:
        return True
    seen = set()
    for coeffs in cartesian(*[range(d) for d in src_t]):
        img = tuple(sum(tm[i][k] * coeffs[k] for k in range(len(src_t))) % tgt_t[i]
                    for i in range(len(tgt_t)))
        if img in seen:
            return False
        seen.add(img)
    return True


# -- components --------------------------------------------------------------------

def pi0(X: FinSSet) -> tuple[int, dict]:
    """Number of path components and a vertex -> component-number labeling."""
    uf = _UnionFind()
    for v in X.level(0):
        uf.find(v)
    for e in X.level(1):
        a, b = (r.base for r in X.face_refs(e))
        uf.union(a, b)
    labels, out = {}, {}
    for v in X.level(0):
        root = uf.find(v)
        labels.setdefault(root, len(labels))
        out[v] = labels[root]
    return len(labels), out
