"""Exact integer linear algebra on sparse matrices.

Hermite and Smith normal forms with unimodular transforms, lattice
membership, and the structure of ``Z^n / rowspace``.  Entries are Python
ints, so there is no overflow.  Matrices are stored as one ``{col: value}``
dict per row; relation matrices have a handful of nonzeros per row and the
Smith reduction picks pivots to keep it that way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class IntMatrix:
    """A sparse integer matrix with no stored zeros."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[dict[int, int]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            self.rows = [{} for _ in range(nrows)]
        else:
            if len(rows) != nrows:
                raise ValueError("row count mismatch")
            self.rows = [{c: v for c, v in r.items() if v} for r in rows]
            for r in self.rows:
                for c in r:
                    if not 0 <= c < ncols:
                        raise ValueError(f"column {c} out of range")

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, [{j: v for j, v in enumerate(r) if v} for r in data])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    def to_dense(self) -> list[list[int]]:
        out = []
        for r in self.rows:
            row = [0] * self.ncols
            for c, v in r.items():
                row[c] = v
            out.append(row)
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i].get(j, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def transpose(self) -> "IntMatrix":
        cols: list[dict[int, int]] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return IntMatrix(self.ncols, self.nrows, cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        orows = other.rows
        for r in self.rows:
            acc: dict[int, int] = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.append({j: v for j, v in acc.items() if v})
        return IntMatrix(self.nrows, other.ncols, out)

    def row_vector(self, i: int) -> list[int]:
        row = [0] * self.ncols
        for c, v in self.rows[i].items():
            row[c] = v
        return row


# ---------------------------------------------------------------------------
# helpers on sparse rows
# ---------------------------------------------------------------------------


def _axpy(dst: dict[int, int], src: dict[int, int], c: int) -> None:
    """dst += c * src, in place, dropping zeros."""
    if not c:
        return
    for j, v in src.items():
        w = dst.get(j, 0) + c * v
        if w:
            dst[j] = w
        else:
            del dst[j]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def integer_determinant(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    a = M.to_dense()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1] if n else 1


# ---------------------------------------------------------------------------
# Hermite normal form
# ---------------------------------------------------------------------------


def hnf(A: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form: returns (H, U) with U @ A == H.

    H is upper echelon; pivots are positive and the entries above each pivot
    lie in ``[0, pivot)``.  Zero rows are at the bottom.
    """
    m, n = A.shape
    rows = [dict(r) for r in A.rows]
    U = [{i: 1} for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            cand = [i for i in range(r, m) if c in rows[i]]
            if not cand:
                break
            p = min(cand, key=lambda i: (abs(rows[i][c]), len(rows[i]), i))
            if len(cand) == 1:
                break
            pv = rows[p][c]
            for i in cand:
                if i != p:
                    q = rows[i][c] // pv
                    _axpy(rows[i], rows[p], -q)
                    _axpy(U[i], U[p], -q)
        if not cand:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        U[r], U[p] = U[p], U[r]
        if rows[r][c] < 0:
            rows[r] = {j: -v for j, v in rows[r].items()}
            U[r] = {j: -v for j, v in U[r].items()}
        pv = rows[r][c]
        for i in range(r):
            x = rows[i].get(c)
            if x is not None:
                q = x // pv
                if q:
                    _axpy(rows[i], rows[r], -q)
                    _axpy(U[i], U[r], -q)
        r += 1
    return IntMatrix(m, n, rows), IntMatrix(m, m, U)


def _hnf_pivots(H: IntMatrix) -> list[tuple[int, int, dict[int, int]]]:
    out = []
    for r in H.rows:
        if not r:
            break
        c = min(r)
        out.append((c, r[c], r))
    return out


def hnf_reduce(v: Sequence[int] | dict[int, int], basis: list[tuple[int, int, dict[int, int]]]) -> dict[int, int]:
    """Reduce v against HNF pivot rows; the result is a canonical coset representative."""
    w = dict(v) if isinstance(v, dict) else {j: x for j, x in enumerate(v) if x}
    w = {j: x for j, x in w.items() if x}
    for c, p, row in basis:
        x = w.get(c)
        if x:
            q = x // p
            if q:
                _axpy(w, row, -q)
    return w


def membership(v: Sequence[int] | dict[int, int], relations: IntMatrix) -> bool:
    """Is v an integer combination of the rows of ``relations``?"""
    H, _ = hnf(relations)
    return not hnf_reduce(v, _hnf_pivots(H))


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass
class SNFResult:
    """U @ A @ V == D with U, V unimodular; ``invariants`` is the nonzero diagonal."""

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    invariants: tuple[int, ...]
    U_inv: IntMatrix = field(repr=False)
    V_inv: IntMatrix = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.invariants)


class _SmithWork:
    """Mutable state of one sparse Smith reduction.

    A is kept as sparse rows plus a column index.  U is kept as rows, its
    inverse as columns; V as columns, its inverse as rows.  Every elementary
    operation updates all four, so U @ U_inv == I holds throughout.
    """

    def __init__(self, A: IntMatrix):
        m, n = A.shape
        self.m, self.n = m, n
        self.rows = [dict(r) for r in A.rows]
        self.cols: list[set[int]] = [set() for _ in range(n)]
        for i, r in enumerate(self.rows):
            for j in r:
                self.cols[j].add(i)
        self.U = [{i: 1} for i in range(m)]
        self.Uinv_cols = [{i: 1} for i in range(m)]
        self.V_cols = [{j: 1} for j in range(n)]
        self.Vinv = [{j: 1} for j in range(n)]

    def add_row(self, dst: int, src: int, c: int) -> None:
        """row_dst += c * row_src."""
        if not c:
            return
        rd = self.rows[dst]
        for j, v in self.rows[src].items():
            w = rd.get(j, 0) + c * v
            if w:
                if j not in rd:
                    self.cols[j].add(dst)
                rd[j] = w
            else:
                del rd[j]
                self.cols[j].discard(dst)
        _axpy(self.U[dst], self.U[src], c)
        _axpy(self.Uinv_cols[src], self.Uinv_cols[dst], -c)

    def add_col(self, dst: int, src: int, c: int) -> None:
        """col_dst += c * col_src."""
        if not c:
            return
        for i in list(self.cols[src]):
            r = self.rows[i]
            w = r.get(dst, 0) + c * r[src]
            if w:
                if dst not in r:
                    self.cols[dst].add(i)
                r[dst] = w
            else:
                del r[dst]
                self.cols[dst].discard(i)
        _axpy(self.V_cols[dst], self.V_cols[src], c)
        _axpy(self.Vinv[src], self.Vinv[dst], -c)

    def negate_row(self, i: int) -> None:
        self.rows[i] = {j: -v for j, v in self.rows[i].items()}
        self.U[i] = {j: -v for j, v in self.U[i].items()}
        self.Uinv_cols[i] = {j: -v for j, v in self.Uinv_cols[i].items()}

    def pick_pivot(self, active_rows: set[int]) -> tuple[int, int] | None:
        best = None
        best_key = None
        cols = self.cols
        for i in active_rows:
            r = self.rows[i]
            if not r:
                continue
            ri = len(r) - 1
            for j, v in r.items():
                key = (abs(v), ri * (len(cols[j]) - 1), i, j)
                if best_key is None or key < best_key:
                    best_key, best = key, (i, j)
                    if key[0] == 1 and key[1] == 0:
                        return best
        return best

    def clear(self, i: int, j: int) -> tuple[int, int]:
        """Eliminate row i and column j around the pivot (i, j) by Euclid steps."""
        rows = self.rows
        while True:
            # column j
            pv = rows[i][j]
            others = [k for k in self.cols[j] if k != i]
            for k in others:
                q = rows[k][j] // pv
                self.add_row(k, i, -q)
            rem = [k for k in self.cols[j] if k != i]
            if rem:
                i = min(rem, key=lambda k: (abs(rows[k][j]), k))
                continue
            # row j
            pv = rows[i][j]
            others = [c for c in rows[i] if c != j]
            for c in others:
                q = rows[i][c] // pv
                self.add_col(c, j, -q)
            rem = [c for c in rows[i] if c != j]
            if rem:
                j = min(rem, key=lambda c: (abs(rows[i][c]), c))
                continue
            return i, j

    def pair_fix(self, ia: int, ja: int, ib: int, jb: int) -> None:
        """Replace diagonal entries (a, b) at (ia,ja), (ib,jb) by (gcd, lcm)."""
        a = self.rows[ia][ja]
        b = self.rows[ib][jb]
        g, s, t = _xgcd(a, b)
        ag, bg = a // g, b // g
        # rows: [s t; -b/g a/g]
        ra, rb = self.U[ia], self.U[ib]
        self.U[ia] = _lin(ra, s, rb, t)
        self.U[ib] = _lin(ra, -bg, rb, ag)
        # inverse [[a/g, -t], [b/g, s]] applied on the right to U^-1
        ca, cb = self.Uinv_cols[ia], self.Uinv_cols[ib]
        self.Uinv_cols[ia] = _lin(ca, ag, cb, bg)
        self.Uinv_cols[ib] = _lin(ca, -t, cb, s)
        # cols: [[1, -t b/g], [1, s a/g]]
        va, vb = self.V_cols[ja], self.V_cols[jb]
        self.V_cols[ja] = _lin(va, 1, vb, 1)
        self.V_cols[jb] = _lin(va, -t * bg, vb, s * ag)
        wa, wb = self.Vinv[ja], self.Vinv[jb]
        self.Vinv[ja] = _lin(wa, s * ag, wb, t * bg)
        self.Vinv[jb] = _lin(wa, -1, wb, 1)
        self.rows[ia] = {ja: g}
        self.rows[ib] = {jb: a // g * b}


def _lin(x: dict[int, int], a: int, y: dict[int, int], b: int) -> dict[int, int]:
    out: dict[int, int] = {}
    if a:
        for k, v in x.items():
            out[k] = a * v
    if b:
        for k, v in y.items():
            w = out.get(k, 0) + b * v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return {k: v for k, v in out.items() if v}


def snf(A: IntMatrix, verify: bool = True, det_check_limit: int = 40) -> SNFResult:
    """Smith normal form with transforms.

    Pivot rule: least absolute value, then least Markowitz fill estimate.
    With ``verify`` the identities U A V == D, U U^-1 == I and V^-1 V == I
    are checked exactly; integer determinants of U and V are additionally
    computed when their size is at most ``det_check_limit``.
    """
    m, n = A.shape
    w = _SmithWork(A)
    active = set(range(m))
    pivots: list[tuple[int, int]] = []
    while True:
        pv = w.pick_pivot(active)
        if pv is None:
            break
        i, j = w.clear(*pv)
        if w.rows[i][j] < 0:
            w.negate_row(i)
        active.discard(i)
        pivots.append((i, j))
    # divisibility chain
    pivots.sort(key=lambda p: (w.rows[p[0]][p[1]], p))
    k = len(pivots)
    for s in range(k):
        for t in range(s + 1, k):
            ia, ja = pivots[s]
            ib, jb = pivots[t]
            if w.rows[ib][jb] % w.rows[ia][ja]:
                w.pair_fix(ia, ja, ib, jb)
    prow = [p[0] for p in pivots]
    pcol = [p[1] for p in pivots]
    used_r, used_c = set(prow), set(pcol)
    row_order = prow + [i for i in range(m) if i not in used_r]
    col_order = pcol + [j for j in range(n) if j not in used_c]
    invariants = tuple(w.rows[i][j] for i, j in pivots)

    U = IntMatrix(m, m, [w.U[i] for i in row_order])
    U_inv = IntMatrix(m, m, [w.Uinv_cols[i] for i in row_order]).transpose()
    V = IntMatrix(n, n, [w.V_cols[j] for j in col_order]).transpose()
    V_inv = IntMatrix(n, n, [w.Vinv[j] for j in col_order])
    D = IntMatrix(m, n, [{t: d} for t, d in enumerate(invariants)] + [{} for _ in range(m - k)])
    res = SNFResult(D, U, V, invariants, U_inv, V_inv)
    if verify:
        check_snf(A, res, det_check_limit)
    return res


def check_snf(A: IntMatrix, res: SNFResult, det_check_limit: int = 40) -> None:
    m, n = A.shape
    if (res.U @ A) @ res.V != res.D:
        raise AssertionError("U A V != D")
    if res.U @ res.U_inv != IntMatrix.identity(m):
        raise AssertionError("U is not unimodular")
    if res.V_inv @ res.V != IntMatrix.identity(n):
        raise AssertionError("V is not unimodular")
    inv = res.invariants
    for a, b in zip(inv, inv[1:]):
        if a <= 0 or b % a:
            raise AssertionError(f"divisibility chain broken: {inv}")
    if m <= det_check_limit and abs(integer_determinant(res.U)) != 1:
        raise AssertionError("det U != +-1")
    if n <= det_check_limit and abs(integer_determinant(res.V)) != 1:
        raise AssertionError("det V != +-1")


# ---------------------------------------------------------------------------
# quotient structure
# ---------------------------------------------------------------------------


@dataclass
class QuotientStructure:
    """Z^ngens / rowspace(relations) = Z^free_rank + sum Z/torsion[i]."""

    num_generators: int
    free_rank: int
    torsion: tuple[int, ...]
    hnf_basis: list[tuple[int, int, dict[int, int]]] = field(repr=False)
    smith: SNFResult | None = field(default=None, repr=False)

    def membership(self, v: Sequence[int] | dict[int, int]) -> bool:
        return not hnf_reduce(v, self.hnf_basis)

    def reduce(self, v: Sequence[int] | dict[int, int]) -> dict[int, int]:
        return hnf_reduce(v, self.hnf_basis)

    def coordinates(self, v: Sequence[int] | dict[int, int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(free coordinates, torsion coordinates) of v's class."""
        if self.smith is None:
            raise ValueError("no Smith data")
        w = dict(v) if isinstance(v, dict) else {j: x for j, x in enumerate(v) if x}
        # coordinates of v in the basis given by the rows of V^-1: x = v V
        x: dict[int, int] = {}
        V = self.smith.V
        for j, a in w.items():
            for c, b in V.rows[j].items():
                x[c] = x.get(c, 0) + a * b
        inv = self.smith.invariants
        tors = tuple(x.get(t, 0) % d for t, d in enumerate(inv) if d > 1)
        free = tuple(x.get(t, 0) for t in range(len(inv), self.num_generators))
        return free, tors

    def describe(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " (+) ".join(parts) if parts else "0"


def quotient_structure(num_generators: int, relations: IntMatrix, verify: bool = True) -> QuotientStructure:
    if relations.ncols != num_generators:
        raise ValueError("relation matrix has the wrong number of columns")
    res = snf(relations, verify=verify)
    H, _ = hnf(relations)
    torsion = tuple(d for d in res.invariants if d > 1)
    return QuotientStructure(num_generators, num_generators - res.rank, torsion, _hnf_pivots(H), res)


def invariant_factors(A: IntMatrix) -> tuple[int, ...]:
    return snf(A).invariants
