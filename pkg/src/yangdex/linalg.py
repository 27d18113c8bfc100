"""Exact linear algebra: GF(2) bit-packed elimination, integer Smith normal
form, and rational solving.

GF(2) vectors are Python ints used as bitsets (bit ``j`` = coordinate ``j``);
XOR on them is word-wide.  Integer matrices use Python's arbitrary precision
ints and rationals use :class:`fractions.Fraction`.  No floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatchError

# ------------------------------------------------------------------- GF(2)


class GF2Basis:
    """Incremental echelon basis of a subspace of GF(2)^n.

    Each stored vector has a distinct leading (highest) bit.  Vectors can
    carry a *tag* bitset that is XORed along during reduction, which is how
    solutions and kernel vectors are recovered.
    """

    __slots__ = ("_pivots", "_tags")

    def __init__(self):
        self._pivots: dict[int, int] = {}
        self._tags: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._pivots)

    def reduce(self, v: int, tag: int = 0) -> tuple[int, int]:
        """Reduce ``v`` by leading bits; the residual is 0 iff ``v`` is in the span."""
        pivots, tags = self._pivots, self._tags
        while v:
            p = v.bit_length() - 1
            row = pivots.get(p)
            if row is None:
                break
            v ^= row
            tag ^= tags[p]
        return v, tag

    def add(self, v: int, tag: int = 0) -> Optional[int]:
        """Insert ``v``; return None if it was new, else the tag of its dependency."""
        pivots, tags = self._pivots, self._tags
        while v:
            p = v.bit_length() - 1
            row = pivots.get(p)
            if row is None:
                pivots[p] = v
                tags[p] = tag
                return None
            v ^= row
            tag ^= tags[p]
        return tag

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def copy(self) -> "GF2Basis":
        other = GF2Basis()
        other._pivots = dict(self._pivots)
        other._tags = dict(self._tags)
        return other


class GF2Matrix:
    """Dense GF(2) matrix; row ``i`` is an int bitset over the columns."""

    __slots__ = ("rows", "n_rows", "n_cols")

    def __init__(self, rows: Sequence[int], n_cols: int):
        self.rows = list(rows)
        self.n_rows = len(self.rows)
        self.n_cols = n_cols
        mask = ~((1 << n_cols) - 1)
        if any(r & mask or r < 0 for r in self.rows):
            raise DimensionMismatchError("row has bits beyond n_cols")

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[int]], n_cols: Optional[int] = None):
        entries = [list(r) for r in entries]
        if n_cols is None:
            n_cols = len(entries[0]) if entries else 0
        rows = []
        for r in entries:
            if len(r) != n_cols:
                raise DimensionMismatchError("ragged matrix")
            rows.append(sum(1 << j for j, x in enumerate(r) if x % 2))
        return cls(rows, n_cols)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls([1 << i for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "GF2Matrix":
        return cls([0] * m, n)

    def to_dense(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n_cols)] for r in self.rows]

    def columns(self) -> list[int]:
        cols = [0] * self.n_cols
        for i, r in enumerate(self.rows):
            bit = 1 << i
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= bit
                r ^= low
        return cols

    def transpose(self) -> "GF2Matrix":
        return GF2Matrix(self.columns(), self.n_rows)

    def apply(self, x: int) -> int:
        """Matrix-vector product with ``x`` given as a column bitset."""
        out = 0
        for i, r in enumerate(self.rows):
            if bin(r & x).count("1") & 1:
                out |= 1 << i
        return out

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.n_cols != other.n_rows:
            raise DimensionMismatchError("inner dimensions differ")
        rows = []
        for r in self.rows:
            acc = 0
            while r:
                low = r & -r
                acc ^= other.rows[low.bit_length() - 1]
                r ^= low
            rows.append(acc)
        return GF2Matrix(rows, other.n_cols)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GF2Matrix) and self.n_cols == other.n_cols
                and self.rows == other.rows)

    def __repr__(self) -> str:
        return f"GF2Matrix({self.n_rows}x{self.n_cols})"


def gf2_rank(A: GF2Matrix) -> int:
    basis = GF2Basis()
    for r in A.rows:
        basis.add(r)
    return len(basis)


def gf2_column_basis(A: GF2Matrix) -> GF2Basis:
    """Echelon basis of the column space, each vector tagged by its column combination."""
    basis = GF2Basis()
    for j, c in enumerate(A.columns()):
        basis.add(c, 1 << j)
    return basis


def gf2_solve(A: GF2Matrix, b: int | Sequence[int]) -> Optional[list[int]]:
    """Some ``x`` with ``A x = b`` over GF(2), or None if inconsistent.

    ``b`` may be a bitset over the rows or a 0/1 sequence of length n_rows.
    """
    if not isinstance(b, int):
        b = list(b)
        if len(b) != A.n_rows:
            raise DimensionMismatchError(f"b has length {len(b)}, expected {A.n_rows}")
        b = sum(1 << i for i, x in enumerate(b) if x % 2)
    elif b >> A.n_rows:
        raise DimensionMismatchError("b has bits beyond n_rows")
    residual, tag = gf2_column_basis(A).reduce(b)
    if residual:
        return None
    return [(tag >> j) & 1 for j in range(A.n_cols)]


def gf2_nullspace(A: GF2Matrix) -> list[int]:
    """Basis of ``{x : A x = 0}`` as column bitsets."""
    basis = GF2Basis()
    kernel = []
    for j, c in enumerate(A.columns()):
        dep = basis.add(c, 1 << j)
        if dep is not None:
            kernel.append(dep)
    return kernel


# --------------------------------------------------------- integer matrices


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]
    n_rows: int
    n_cols: int

    @classmethod
    def of(cls, entries: Sequence[Sequence[int]], n_cols: Optional[int] = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in entries)
        if n_cols is None:
            n_cols = len(rows[0]) if rows else 0
        if any(len(r) != n_cols for r in rows):
            raise DimensionMismatchError("ragged matrix")
        return cls(rows, len(rows), n_cols)

    @classmethod
    def from_sparse(cls, rows: Sequence[dict[int, int]], n_cols: int) -> "IntMatrix":
        dense = []
        for r in rows:
            line = [0] * n_cols
            for j, x in r.items():
                line[j] = x
            dense.append(tuple(line))
        return cls(tuple(dense), len(dense), n_cols)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class SNFResult:
    """Invariant factors ``d_1 | d_2 | ...`` (length min(m, n), zeros last).

    With ``transforms`` requested, ``U @ A @ V == D`` and the inverses are given.
    """

    factors: tuple[int, ...]
    rank: int
    U: Optional[list[list[int]]] = None
    V: Optional[list[list[int]]] = None
    U_inv: Optional[list[list[int]]] = None
    V_inv: Optional[list[list[int]]] = None

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.factors if d > 1]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _dense_snf(A: list[list[int]], m: int, n: int, transforms: bool):
    """Smith form by smallest-pivot elimination; mutates ``A``."""
    U = _identity(m) if transforms else None
    Ui = _identity(m) if transforms else None
    V = _identity(n) if transforms else None
    Vi = _identity(n) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if transforms:
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        if transforms:
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        if transforms:
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
            for r in Ui:
                r[src] -= q * r[dst]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for r in A:
            r[dst] += q * r[src]
        if transforms:
            for r in V:
                r[dst] += q * r[src]
            Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            p = A[t][t]
            moved = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        swap_rows(t, i)
                        moved = True
                        break
            if moved:
                continue
            p = A[t][t]
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        swap_cols(t, j)
                        moved = True
                        break
            if moved:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if transforms:
                U[t] = [-x for x in U[t]]
                for r in Ui:
                    r[t] = -r[t]
        diag.append(A[t][t])
        t += 1
    return diag, U, V, Ui, Vi


def _sparse_unit_elimination(rows: list[dict[int, int]]) -> tuple[int, list[dict[int, int]]]:
    """Eliminate +-1 pivots, preferring light rows and light columns.

    Returns the number of unit pivots removed and the residual rows (columns
    of removed pivots are gone).  Invariant factors of the input are ``1``
    repeated that many times followed by those of the residual.
    """
    rows = [dict(r) for r in rows if r]
    alive = set(range(len(rows)))
    col_rows: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            col_rows.setdefault(j, set()).add(i)
    units = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(alive, key=lambda i: len(rows[i])):
            if i not in alive:
                continue
            r = rows[i]
            cands = [j for j, x in r.items() if x in (1, -1)]
            if not cands:
                continue
            j = min(cands, key=lambda c: len(col_rows[c]))
            u = r[j]
            for k in list(col_rows[j]):
                if k == i:
                    continue
                rk = rows[k]
                q = rk[j] * u  # u = 1/u for units
                for c, x in r.items():
                    y = rk.get(c, 0) - q * x
                    if y:
                        if c not in rk:
                            col_rows.setdefault(c, set()).add(k)
                        rk[c] = y
                    else:
                        rk.pop(c, None)
                        col_rows[c].discard(k)
                if not rk:
                    alive.discard(k)
            for c in r:
                col_rows[c].discard(i)
            del col_rows[j]
            alive.discard(i)
            units += 1
            progress = True
    return units, [rows[i] for i in sorted(alive)]


def smith_normal_form(A: IntMatrix | Sequence[Sequence[int]], transforms: bool = False
                      ) -> SNFResult:
    """Invariant factors of an integer matrix.

    Without transforms, unit pivots are first eliminated sparsely (coboundary
    matrices are mostly +-1) and only the residual block goes through the
    dense smallest-pivot routine.
    """
    if not isinstance(A, IntMatrix):
        A = IntMatrix.of(A)
    m, n = A.n_rows, A.n_cols
    size = min(m, n)
    if transforms:
        work = [list(r) for r in A.rows]
        diag, U, V, Ui, Vi = _dense_snf(work, m, n, True)
        rank = len(diag)
        factors = tuple(diag) + (0,) * (size - rank)
        return SNFResult(factors, rank, U, V, Ui, Vi)
    return sparse_snf_factors([{j: x for j, x in enumerate(r) if x} for r in A.rows], n)


def sparse_snf_factors(rows: Sequence[dict[int, int]], n_cols: int) -> SNFResult:
    """Smith factors of a matrix given as sparse rows ``{col: value}``."""
    units, rest = _sparse_unit_elimination(list(rows))
    cols = sorted({j for r in rest for j in r})
    cidx = {j: k for k, j in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rest]
    for i, r in enumerate(rest):
        for j, x in r.items():
            dense[i][cidx[j]] = x
    diag, *_ = _dense_snf(dense, len(rest), len(cols), False)
    rank = units + len(diag)
    size = min(len(rows), n_cols)
    return SNFResult((1,) * units + tuple(diag) + (0,) * (size - rank), rank)


def two_primary_elementary(factors: Iterable[int]) -> bool:
    """True iff every finite cyclic summand has 2-part trivial or Z/2."""
    for d in factors:
        d = abs(int(d))
        if d > 0 and d % 4 == 0:
            return False
    return True


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in A]


# ----------------------------------------------------------------- rationals


def rational_solve(A: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """Exact solution of ``A x = b`` (free variables set to 0), or None."""
    m = len(A)
    if len(b) != m:
        raise DimensionMismatchError(f"b has length {len(b)}, expected {m}")
    n = len(A[0]) if m else 0
    if any(len(r) != n for r in A):
        raise DimensionMismatchError("ragged matrix")
    M = [[Fraction(x) for x in r] + [Fraction(y)] for r, y in zip(A, b)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, m) if M[i][col]), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = 1 / M[row][col]
        M[row] = [x * inv for x in M[row]]
        for i in range(m):
            if i != row and M[i][col]:
                q = M[i][col]
                M[i] = [x - q * y for x, y in zip(M[i], M[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    if any(M[i][n] for i in range(row, m)):
        return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = M[i][n]
    return x


def rational_rank(A: Sequence[Sequence]) -> int:
    M = [[Fraction(x) for x in r] for r in A]
    m = len(M)
    n = len(M[0]) if m else 0
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(rank + 1, m):
            if M[i][col]:
                q = M[i][col] / M[rank][col]
                M[i] = [x - q * y for x, y in zip(M[i], M[rank])]
        rank += 1
    return rank


def barycentric_of_origin(points: Sequence[Sequence[Fraction]]) -> Optional[list[Fraction]]:
    """Affine coefficients ``t`` with ``sum t_i p_i = 0`` and ``sum t_i = 1``.

    Only meaningful for affinely independent points, where the answer is
    unique; returns None when no affine combination hits the origin.
    """
    d = len(points[0])
    A = [[p[r] for p in points] for r in range(d)] + [[1] * len(points)]
    return rational_solve(A, [0] * d + [1])


def affinely_independent(points: Sequence[Sequence[Fraction]]) -> bool:
    if not points:
        return True
    lifted = [list(p) + [1] for p in points]
    return rational_rank(lifted) == len(points)


def origin_in_hull(points: Sequence[Sequence]) -> Optional[list[Fraction]]:
    """Convex weights ``lam`` over ``points`` with ``sum lam_i p_i = 0``, or None.

    Decided by enumerating affinely independent subsets (Caratheodory) of
    increasing size; each candidate is a unique exact affine solve.
    """
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        return None
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DimensionMismatchError("points of different dimension")
    first: dict[tuple, int] = {}
    for i, p in enumerate(pts):
        first.setdefault(p, i)
    uniq = sorted(first.values())
    for size in range(1, min(len(uniq), d + 1) + 1):
        for subset in combinations(uniq, size):
            sub = [pts[i] for i in subset]
            if not affinely_independent(sub):
                continue
            t = barycentric_of_origin(sub)
            if t is not None and all(x >= 0 for x in t):
                lam = [Fraction(0)] * len(pts)
                for i, x in zip(subset, t):
                    lam[i] = x
                return lam
    return None
