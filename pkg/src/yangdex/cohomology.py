"""Simplicial cochains with Z/2 and Z coefficients, cup products and induced maps.

Cochains are evaluated on simplices oriented by the complex's fixed global
vertex order (increasing ids).  Z/2 cochains are int bitsets indexed by the
position of the simplex in ``K.simplices(k)``; integer cochains are tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Sequence

from .complex import SimplicialComplex, SimplicialMap, check_simplicial_map, permutation_sign
from .errors import DimensionMismatchError, NotCocycleError, OrderMismatchError
from .linalg import (
    GF2Basis,
    GF2Matrix,
    IntMatrix,
    matmul,
    smith_normal_form,
    sparse_snf_factors,
)

Coeff = Literal["GF2", "Int"]
GF2: Coeff = "GF2"
INT: Coeff = "Int"


def _check_coeff(coeff: str) -> Coeff:
    if coeff not in (GF2, INT):
        raise ValueError(f"unknown coefficient system {coeff!r}")
    return coeff  # type: ignore[return-value]


@dataclass(frozen=True, eq=False)
class Cochain:
    complex: SimplicialComplex
    degree: int
    values: object  # int bitset (GF2) or tuple of ints (Int)
    coeff: Coeff = GF2

    @classmethod
    def zero(cls, K: SimplicialComplex, k: int, coeff: Coeff = GF2) -> "Cochain":
        return cls(K, k, 0 if coeff == GF2 else (0,) * K.n_simplices(k), coeff)

    @classmethod
    def unit(cls, K: SimplicialComplex, coeff: Coeff = GF2) -> "Cochain":
        n = K.n_vertices
        return cls(K, 0, (1 << n) - 1 if coeff == GF2 else (1,) * n, coeff)

    @classmethod
    def from_support(cls, K: SimplicialComplex, k: int, simplices) -> "Cochain":
        """GF2 cochain that is 1 exactly on the given simplices (id tuples or names)."""
        idx = K.simplex_index(k)
        bits = 0
        for s in simplices:
            s = tuple(s)
            if s and isinstance(s[0], str):
                s = K.ids(s)
            else:
                s = tuple(sorted(s))
            bits ^= 1 << idx[s]
        return cls(K, k, bits, GF2)

    def value(self, s: Sequence[int]) -> int:
        i = self.complex.simplex_id(tuple(s))
        if self.coeff == GF2:
            return (self.values >> i) & 1
        return self.values[i]

    def is_zero(self) -> bool:
        if self.coeff == GF2:
            return self.values == 0
        return not any(self.values)

    def support(self) -> list[tuple[int, ...]]:
        simp = self.complex.simplices(self.degree)
        if self.coeff == GF2:
            v = self.values
            return [simp[i] for i in range(len(simp)) if (v >> i) & 1]
        return [s for s, x in zip(simp, self.values) if x]

    def support_names(self) -> list[list[str]]:
        return [list(self.complex.names(s)) for s in self.support()]

    def __add__(self, other: "Cochain") -> "Cochain":
        _same(self, other)
        if self.degree != other.degree:
            raise DimensionMismatchError("cochains of different degree")
        if self.coeff == GF2:
            return Cochain(self.complex, self.degree, self.values ^ other.values, GF2)
        return Cochain(self.complex, self.degree,
                       tuple(a + b for a, b in zip(self.values, other.values)), INT)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain) and self.complex == other.complex
                and self.degree == other.degree and self.coeff == other.coeff
                and self.values == other.values)

    __hash__ = None  # type: ignore[assignment]


def _same(a: Cochain, b: Cochain) -> None:
    if a.complex is not b.complex and a.complex != b.complex:
        raise OrderMismatchError("cochains live on different complexes")
    if a.coeff != b.coeff:
        raise OrderMismatchError("cochains use different coefficients")


# ---------------------------------------------------------------- coboundary


def _memo(K: SimplicialComplex, key, build):
    cache = K._cache
    if key not in cache:
        cache.setdefault(key, build())
    return cache[key]


def _face_rows(K: SimplicialComplex, k: int) -> list[int]:
    """Rows of delta^k over GF2: for each (k+1)-simplex, bitset of its k-faces."""
    def build():
        idx = K.simplex_index(k)
        rows = []
        for t in K.simplices(k + 1):
            bits = 0
            for i in range(len(t)):
                bits |= 1 << idx[t[:i] + t[i + 1:]]
            rows.append(bits)
        return rows
    return _memo(K, ("rows", k), build)


def _coface_cols(K: SimplicialComplex, k: int) -> list[int]:
    """Columns of delta^k over GF2: coboundary of each k-simplex over (k+1)-simplices."""
    def build():
        cols = [0] * K.n_simplices(k)
        idx = K.simplex_index(k)
        for j, t in enumerate(K.simplices(k + 1)):
            bit = 1 << j
            for i in range(len(t)):
                cols[idx[t[:i] + t[i + 1:]]] |= bit
        return cols
    return _memo(K, ("cols", k), build)


def _int_rows(K: SimplicialComplex, k: int) -> list[dict[int, int]]:
    """Sparse rows of the integer delta^k (alternating face signs)."""
    def build():
        idx = K.simplex_index(k)
        return [{idx[t[:i] + t[i + 1:]]: (-1) ** i for i in range(len(t))}
                for t in K.simplices(k + 1)]
    return _memo(K, ("introws", k), build)


def coboundary_matrices(K: SimplicialComplex, coeff: Coeff = GF2, verify: bool = True) -> list:
    """``[delta^0, ..., delta^(dim-1)]``; delta^k has rows = (k+1)-simplices."""
    coeff = _check_coeff(coeff)
    mats = []
    for k in range(K.dim):
        if coeff == GF2:
            mats.append(GF2Matrix(_face_rows(K, k), K.n_simplices(k)))
        else:
            mats.append(IntMatrix.from_sparse(_int_rows(K, k), K.n_simplices(k)))
    if verify:
        for k in range(len(mats) - 1):
            if coeff == GF2:
                if any((mats[k + 1] @ mats[k]).rows):
                    raise NotCocycleError(f"delta^{k + 1} delta^{k} != 0")
            else:
                prod = matmul(mats[k + 1].rows, mats[k].rows)
                if any(any(r) for r in prod):
                    raise NotCocycleError(f"delta^{k + 1} delta^{k} != 0")
    return mats


def coboundary(c: Cochain) -> Cochain:
    K, k = c.complex, c.degree
    if c.coeff == GF2:
        out = 0
        for j, row in enumerate(_face_rows(K, k)):
            if bin(row & c.values).count("1") & 1:
                out |= 1 << j
        return Cochain(K, k + 1, out, GF2)
    vals = c.values
    return Cochain(K, k + 1, tuple(sum(s * vals[i] for i, s in row.items())
                                   for row in _int_rows(K, k)), INT)


def is_cocycle(c: Cochain) -> bool:
    return coboundary(c).is_zero()


def _gf2_rank_of_rows(rows) -> int:
    basis = GF2Basis()
    for r in rows:
        basis.add(r)
    return len(basis)


def gf2_ranks(K: SimplicialComplex) -> list[int]:
    """Ranks of delta^0 .. delta^(dim-1) over GF2."""
    return _memo(K, ("gf2ranks",),
                 lambda: [_gf2_rank_of_rows(_face_rows(K, k)) for k in range(K.dim)])


def betti2(K: SimplicialComplex) -> list[int]:
    """``dim H^k(K; Z/2)`` for ``k = 0..dim K``."""
    ranks = gf2_ranks(K)
    out = []
    for k in range(K.dim + 1):
        rk = ranks[k] if k < K.dim else 0
        rprev = ranks[k - 1] if k > 0 else 0
        out.append(K.n_simplices(k) - rk - rprev)
    return out


def _boundary_space(K: SimplicialComplex, k: int) -> GF2Basis:
    """Echelon basis of the coboundaries in C^k(K; Z/2)."""
    def build():
        basis = GF2Basis()
        if k > 0:
            for c in _coface_cols(K, k - 1):
                basis.add(c)
        return basis
    return _memo(K, ("B", k), build)


def class_is_zero(K: SimplicialComplex, c: Cochain) -> bool:
    """Whether the Z/2 cocycle ``c`` is a coboundary."""
    if c.complex is not K and c.complex != K:
        raise OrderMismatchError("cochain lives on a different complex")
    if c.coeff != GF2:
        raise ValueError("class_is_zero works over GF2")
    if not is_cocycle(c):
        raise NotCocycleError(f"degree-{c.degree} cochain is not a cocycle")
    if c.degree == 0 or c.degree > K.dim:
        return c.is_zero()
    return _boundary_space(K, c.degree).contains(c.values)


# ----------------------------------------------------------- integer groups


@dataclass(frozen=True)
class IntegerGroup:
    """A finitely generated abelian group ``Z^free_rank + sum Z/t``."""

    free_rank: int
    torsion: tuple[int, ...]

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}" if self.free_rank > 1 else "Z"] * bool(self.free_rank)
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def _int_snf(K: SimplicialComplex, k: int):
    def build():
        if k < 0 or k >= K.dim:
            return None
        return sparse_snf_factors(_int_rows(K, k), K.n_simplices(k))
    return _memo(K, ("intsnf", k), build)


def integer_cohomology(K: SimplicialComplex, k: int) -> IntegerGroup:
    """``H^k(K; Z)`` from the Smith forms of delta^k and delta^(k-1)."""
    if not 0 <= k <= K.dim:
        raise DimensionMismatchError(f"degree {k} outside 0..{K.dim}")
    cur = _int_snf(K, k)
    prev = _int_snf(K, k - 1)
    rk = cur.rank if cur else 0
    rprev = prev.rank if prev else 0
    torsion = tuple(d for d in prev.factors if d > 1) if prev else ()
    return IntegerGroup(K.n_simplices(k) - rk - rprev, torsion)


# --------------------------------------------------------- cohomology bases


@dataclass(frozen=True, eq=False)
class CohomologyBasis:
    """Representative cocycles of a basis (GF2) or generating system (Int) of H^k.

    For Int, ``orders[i]`` is the order of generator ``i`` (0 = infinite).
    """

    complex: SimplicialComplex
    degree: int
    coeff: Coeff
    representatives: tuple[Cochain, ...]
    orders: tuple[int, ...]
    _data: object = None

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    @property
    def free_rank(self) -> int:
        return sum(1 for o in self.orders if o == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(o for o in self.orders if o > 1)

    def coordinates(self, c: Cochain) -> list[int]:
        """Coordinates of the class of cocycle ``c`` in this basis."""
        if c.degree != self.degree or c.coeff != self.coeff:
            raise DimensionMismatchError("cochain does not match basis degree/coefficients")
        if not is_cocycle(c):
            raise NotCocycleError("coordinates need a cocycle")
        if self.coeff == GF2:
            basis: GF2Basis = self._data
            residual, tag = basis.reduce(c.values)
            if residual:
                raise NotCocycleError("cocycle not in span (internal error)")
            return [(tag >> i) & 1 for i in range(self.dimension)]
        Vi_tail, U2, keep = self._data
        y = [sum(a * b for a, b in zip(row, c.values)) for row in Vi_tail]
        coords = [sum(a * b for a, b in zip(row, y)) for row in U2]
        out = []
        for i, order in keep:
            out.append(coords[i] % order if order else coords[i])
        return out


def cohomology_basis(K: SimplicialComplex, k: int, coeff: Coeff = GF2) -> CohomologyBasis:
    coeff = _check_coeff(coeff)
    if coeff == GF2:
        return _memo(K, ("basis", k, GF2), lambda: _gf2_basis(K, k))
    return _memo(K, ("basis", k, INT), lambda: _int_basis(K, k))


def _gf2_basis(K: SimplicialComplex, k: int) -> CohomologyBasis:
    if not 0 <= k <= K.dim:
        return CohomologyBasis(K, k, GF2, (), (), GF2Basis())
    # cocycles: kernel of delta^k, recovered as dependencies among its columns
    if k < K.dim:
        cols = GF2Basis()
        kernel = []
        for j, c in enumerate(_coface_cols(K, k)):
            dep = cols.add(c, 1 << j)
            if dep is not None:
                kernel.append(dep)
    else:
        kernel = [1 << j for j in range(K.n_simplices(k))]
    basis = _boundary_space(K, k).copy()
    reps = []
    for z in kernel:
        if basis.add(z, 1 << len(reps)) is None:
            reps.append(Cochain(K, k, z, GF2))
    return CohomologyBasis(K, k, GF2, tuple(reps), (2,) * len(reps), basis)


def _int_basis(K: SimplicialComplex, k: int) -> CohomologyBasis:
    if not 0 <= k <= K.dim:
        return CohomologyBasis(K, k, INT, (), (), ([], [], []))
    nk = K.n_simplices(k)
    if k < K.dim:
        Dk = IntMatrix.from_sparse(_int_rows(K, k), nk)
        snf = smith_normal_form(Dk, transforms=True)
        r, V, Vi = snf.rank, snf.V, snf.V_inv
    else:
        r = 0
        V = [[int(i == j) for j in range(nk)] for i in range(nk)]
        Vi = V
    kernel_cols = [[V[i][j] for i in range(nk)] for j in range(r, nk)]
    Vi_tail = Vi[r:]
    q = nk - r
    if k > 0:
        Dprev = IntMatrix.from_sparse(_int_rows(K, k - 1), K.n_simplices(k - 1)).rows
        Y = matmul(Vi_tail, Dprev) if q else []
    else:
        Y = [[] for _ in range(q)]
    if q and Y and Y[0]:
        snf2 = smith_normal_form(Y, transforms=True)
        U2, U2i, e, rank2 = snf2.U, snf2.U_inv, snf2.factors, snf2.rank
    else:
        U2 = [[int(i == j) for j in range(q)] for i in range(q)]
        U2i, e, rank2 = U2, (), 0
    keep = []
    reps = []
    for i in range(q):
        order = e[i] if i < rank2 else 0
        if order == 1:
            continue
        keep.append((i, order))
        gen = [sum(kernel_cols[t][row] * U2i[t][i] for t in range(q)) for row in range(nk)]
        reps.append(Cochain(K, k, tuple(gen), INT))
    orders = tuple(o for _, o in keep)
    return CohomologyBasis(K, k, INT, tuple(reps), orders, (Vi_tail, U2, keep))


# ----------------------------------------------------------------- products


def cup(K: SimplicialComplex, a: Cochain, b: Cochain, verify: bool = True) -> Cochain:
    """Alexander-Whitney cup product of Z/2 cocycles in the global vertex order."""
    for c in (a, b):
        if c.complex is not K and c.complex != K:
            raise OrderMismatchError("cochain lives on a different complex")
        if c.coeff != GF2:
            raise ValueError("cup is implemented over GF2")
        if verify and not is_cocycle(c):
            raise NotCocycleError(f"degree-{c.degree} factor is not a cocycle")
    p, q = a.degree, b.degree
    if p + q > K.dim:
        return Cochain(K, p + q, 0, GF2)
    ia, ib = K.simplex_index(p), K.simplex_index(q)
    av, bv = a.values, b.values
    out = 0
    for j, s in enumerate(K.simplices(p + q)):
        if (av >> ia[s[:p + 1]]) & 1 and (bv >> ib[s[p:]]) & 1:
            out |= 1 << j
    result = Cochain(K, p + q, out, GF2)
    if verify and not is_cocycle(result):
        raise NotCocycleError("cup product is not a cocycle (internal error)")
    return result


# ------------------------------------------------------------ induced maps


def pullback(f: SimplicialMap, c: Cochain) -> Cochain:
    """``f^* c``; simplices on which f degenerates get 0."""
    X, k = f.source, c.degree
    tgt = f.target.simplex_index(k)
    vals = []
    for s in X.simplices(k):
        img = f.image_ordered(s)
        if len(set(img)) < len(img):
            vals.append(0)
            continue
        t = tgt[tuple(sorted(img))]
        if c.coeff == GF2:
            vals.append((c.values >> t) & 1)
        else:
            vals.append(permutation_sign(img) * c.values[t])
    if c.coeff == GF2:
        return Cochain(X, k, sum(1 << i for i, x in enumerate(vals) if x), GF2)
    return Cochain(X, k, tuple(vals), INT)


@dataclass(frozen=True, eq=False)
class InducedMap:
    """``f^*: H^k(target) -> H^k(source)``; ``matrix[i][j]`` = coordinate i of f^* g_j."""

    map: SimplicialMap
    degree: int
    coeff: Coeff
    matrix: tuple[tuple[int, ...], ...]
    source_basis: CohomologyBasis
    target_basis: CohomologyBasis

    @property
    def is_trivial(self) -> bool:
        return not any(any(r) for r in self.matrix)


def induced_map(f: SimplicialMap, k: int, coeff: Coeff = GF2) -> InducedMap:
    coeff = _check_coeff(coeff)
    HX = cohomology_basis(f.source, k, coeff)
    HY = cohomology_basis(f.target, k, coeff)
    cols = [HX.coordinates(pullback(f, g)) for g in HY.representatives]
    matrix = tuple(tuple(col[i] for col in cols) for i in range(HX.dimension))
    return InducedMap(f, k, coeff, matrix, HX, HY)


def inclusion(X: SimplicialComplex, Z: SimplicialComplex) -> SimplicialMap:
    """The inclusion of a subcomplex (vertices matched by name)."""
    return check_simplicial_map({v: v for v in X.vertices}, X, Z)


def restriction_is_trivial(X: SimplicialComplex, Z: SimplicialComplex, k: int,
                           coeff: Coeff = GF2) -> bool:
    """Whether ``i^*: H^k(Z) -> H^k(X)`` vanishes for the inclusion ``X <= Z``."""
    return induced_map(inclusion(X, Z), k, coeff).is_trivial
