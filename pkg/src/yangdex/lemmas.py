"""Checkers and witness finders for the discrete Borsuk-Ulam equivalents.

Tucker (complementary edges), Ky Fan (alternating simplices), Shashkin
(pattern counts), the point-configuration property ``P_n``, closed cover
statements (Lusternik-Shnirelman, Tucker, Tucker-Bacon) and one
triangulation level of the Kakutani-type selection argument.

Every function reports what it finds; none assumes the guarantee holds.
Closed sets are modelled as subcomplexes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .complex import (
    EquivariantComplex,
    FreeInvolution,
    SimplicialComplex,
    classify_pseudomanifold,
    _normalize_name,
)
from .errors import (
    BadPairingError,
    DimensionMismatchError,
    HasComplementaryEdgeError,
    IncompleteMapError,
    NoWitnessError,
    NotACoverError,
    NotAntipodalError,
    NotPseudomanifoldLikeError,
    WrongAlphabetError,
)
from .linalg import origin_in_hull


# ----------------------------------------------------------------- labelings


@dataclass(frozen=True, eq=False)
class Labeling:
    """A ``Pi_m``-labeling, antipodal on the region of ``involution``.

    ``involution`` acts on the whole complex or on a subcomplex X (relative
    statements); None means no antipodality is required.
    """

    complex: SimplicialComplex
    labels: Mapping[str, int]
    m: int
    involution: Optional[FreeInvolution] = None

    @property
    def relative(self) -> bool:
        return self.involution is not None and self.involution.complex != self.complex

    def ids(self) -> list[int]:
        """Labels indexed by vertex id."""
        return [self.labels[v] for v in self.complex.vertices]


def labeling(K: SimplicialComplex, labels: Mapping, m: int, involution=None) -> Labeling:
    """Validate totality, the alphabet ``{+-1..+-m}`` and antipodality."""
    labs = {}
    for k, v in dict(labels).items():
        if isinstance(v, bool) or not isinstance(v, int):
            raise WrongAlphabetError(f"label of {k!r} is not an integer: {v!r}")
        labs[_normalize_name(k)] = v
    missing = [v for v in K.vertices if v not in labs]
    if missing:
        raise IncompleteMapError(f"labeling undefined on {missing[:5]}")
    for v in K.vertices:
        lab = labs[v]
        if lab == 0 or abs(lab) > m:
            raise WrongAlphabetError(f"label {lab} of {v!r} is outside Pi_{m}")
    labs = {v: labs[v] for v in K.vertices}
    if involution is not None and not isinstance(involution, FreeInvolution):
        raise TypeError("involution must be a validated FreeInvolution")
    if involution is not None:
        region = involution.complex
        for v in region.vertices:
            if v not in labs:
                raise IncompleteMapError(f"antipodality region vertex {v!r} is not in the complex")
            if labs[involution(v)] != -labs[v]:
                raise NotAntipodalError(
                    f"L(A {v!r}) = {labs[involution(v)]}, expected {-labs[v]}", vertex=v)
    return Labeling(K, labs, m, involution)


def complementary_edges(L: Labeling) -> list[tuple[str, str]]:
    """All edges ``{u, v}`` with ``L(u) = -L(v)``."""
    K = L.complex
    lab = L.ids()
    return [K.names(e) for e in K.simplices(1) if lab[e[0]] == -lab[e[1]]]


def _require_no_complementary(L: Labeling) -> None:
    edges = complementary_edges(L)
    if edges:
        raise HasComplementaryEdgeError(f"complementary edge {list(edges[0])}", edge=edges[0])


def is_alternating(labels: Iterable[int], either_sign: bool = False) -> bool:
    """Sorted by absolute value, the labels strictly increase and alternate in sign.

    The first label must be positive unless ``either_sign``.
    """
    seq = sorted(labels, key=abs)
    for a, b in zip(seq, seq[1:]):
        if abs(a) == abs(b) or (a > 0) == (b > 0):
            return False
    return either_sign or not seq or seq[0] > 0


def fan_simplices(L: Labeling, same_sign_variant: bool = False) -> list[tuple[str, ...]]:
    """Top simplices with alternating labels ``{k0, -k1, k2, ...}``.

    ``same_sign_variant`` also accepts the globally negated pattern.
    """
    _require_no_complementary(L)
    K = L.complex
    lab = L.ids()
    return [K.names(s) for s in K.simplices(K.dim)
            if is_alternating([lab[v] for v in s], same_sign_variant)]


@dataclass(frozen=True)
class ShashkinCount:
    count: int
    simplices: tuple[tuple[str, ...], ...]

    @property
    def odd(self) -> bool:
        return self.count % 2 == 1


def check_pattern(pattern: Sequence[int], d: int) -> tuple[int, ...]:
    """A label set with exactly one label of each absolute value ``1..d+1``."""
    pat = tuple(sorted((int(x) for x in pattern), key=abs))
    if [abs(x) for x in pat] != list(range(1, d + 2)):
        raise WrongAlphabetError(f"pattern {list(pattern)} needs one label of each |l| = 1..{d + 1}")
    return pat


def shashkin_count(L: Labeling, pattern: Sequence[int], include_negation: bool = False
                   ) -> ShashkinCount:
    """Count the d-simplices labelled exactly by ``pattern`` (or its negation)."""
    _require_no_complementary(L)
    K = L.complex
    d = K.dim
    if not classify_pseudomanifold(K).is_almost_pseudomanifold:
        raise NotPseudomanifoldLikeError(f"{K.name or 'complex'} is not a {d}-pseudomanifold")
    if L.m > d + 1:
        raise WrongAlphabetError(f"labels must lie in Pi_{d + 1}, got m = {L.m}")
    pat = frozenset(check_pattern(pattern, d))
    neg = frozenset(-x for x in pat)
    lab = L.ids()
    hits = []
    for s in K.simplices(d):
        ls = frozenset(lab[v] for v in s)
        if ls == pat or (include_negation and ls == neg):
            hits.append(K.names(s))
    return ShashkinCount(len(hits), tuple(hits))


# -------------------------------------------------------- point configurations


@dataclass(frozen=True)
class PointConfiguration:
    """Centrally symmetric points ``p_{+-k}`` in Q^n, with ``p_{-k} = -p_k``."""

    points: Mapping[int, tuple[Fraction, ...]]

    @classmethod
    def from_positive(cls, pts: Sequence[Sequence]) -> "PointConfiguration":
        """Points ``p_1..p_m``; negatives are added."""
        out = {}
        for k, p in enumerate(pts, start=1):
            p = tuple(Fraction(x) for x in p)
            out[k] = p
            out[-k] = tuple(-x for x in p)
        return cls.of(out)

    @classmethod
    def of(cls, points: Mapping) -> "PointConfiguration":
        pts = {int(k): tuple(Fraction(x) for x in p) for k, p in points.items()}
        dims = {len(p) for p in pts.values()}
        if len(dims) > 1:
            raise DimensionMismatchError("points of different dimension")
        for k, p in list(pts.items()):
            if k == 0:
                raise WrongAlphabetError("point index 0 is not in Pi_m")
            if -k not in pts:
                raise BadPairingError(f"p_{-k} missing")
            if pts[-k] != tuple(-x for x in p):
                raise BadPairingError(f"p_{-k} != -p_{k}")
        return cls(pts)

    @property
    def m(self) -> int:
        return max(self.points)

    @property
    def dim(self) -> int:
        return len(next(iter(self.points.values())))


@dataclass(frozen=True)
class HullWitness:
    """A simplex whose image points have the origin in their convex hull."""

    simplex: tuple[str, ...]
    labels: tuple[int, ...]
    weights: tuple[Fraction, ...]
    notes: tuple[str, ...] = ()


def _search_hull(K: SimplicialComplex, point_of) -> Optional[tuple]:
    seen: dict[tuple, Optional[list]] = {}
    for k in range(K.dim + 1):
        for s in K.simplices(k):
            pts = tuple(point_of(v) for v in s)
            if pts not in seen:
                seen[pts] = origin_in_hull(pts)
            lam = seen[pts]
            if lam is not None:
                return s, lam
    return None


def pn_witness(L: Labeling, P: PointConfiguration) -> HullWitness:
    """Smallest simplex s with ``0 in conv{p_L(v) : v in s}``, with exact weights."""
    K = L.complex
    missing = {abs(x) for x in L.labels.values()} - set(P.points)
    if missing:
        raise WrongAlphabetError(f"no points for labels {sorted(missing)}")
    lab = L.ids()
    found = _search_hull(K, lambda v: P.points[lab[v]])
    if found is None:
        raise NoWitnessError("no simplex covers the origin")
    s, lam = found
    notes = ()
    if L.relative:
        notes = ("labeling is antipodal on the invariant subcomplex X; "
                 "the 'antipodal on the boundary' reading is not used",)
    return HullWitness(K.names(s), tuple(lab[v] for v in s), tuple(lam), notes)


# --------------------------------------------------------------------- covers


@dataclass(frozen=True, eq=False)
class CoverFamily:
    """Closed subcomplexes of an equivariant complex.

    ``kind`` is ``"ls"`` (n+1 sets), ``"t"`` (sets indexed by ``indices``,
    ``+-1..+-n`` with ``C_{-i} = A(C_i)``) or ``"tb"`` (n+2 sets, none
    containing an antipodal pair).
    """

    kind: str
    members: tuple[SimplicialComplex, ...]
    indices: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class CoverWitness:
    kind: str
    index: Optional[int]
    simplex: tuple[str, ...]
    image: tuple[str, ...]


def _vertex_set(E: EquivariantComplex, C: SimplicialComplex) -> set[int]:
    return {E.complex.index[v] for v in C.vertices}


def _validate_cover(E: EquivariantComplex, cover: CoverFamily) -> None:
    K = E.complex
    for C in cover.members:
        if not C.is_subcomplex_of(K):
            raise NotACoverError(f"{C.name or 'member'} is not a subcomplex")
    for f in K.facets:
        names = K.names(f)
        if not any(all(v in C.index for v in names) and C.has_simplex(C.ids(names))
                   for C in cover.members):
            raise NotACoverError(f"facet {list(names)} is not covered")


def cover_check(E: EquivariantComplex, cover: CoverFamily, j: Optional[int] = None
                ) -> CoverWitness:
    """Find the intersection promised by the cover statement of ``cover.kind``.

    Intersections of subcomplexes are nonempty iff they share a vertex, so the
    witness is a vertex p together with A p.
    """
    _validate_cover(E, cover)
    K, A = E.complex, E.involution
    kind = cover.kind.lower()
    vsets = [_vertex_set(E, C) for C in cover.members]
    if kind == "ls":
        for i, vs in enumerate(vsets, start=1):
            for v in sorted(vs):
                if A.perm[v] in vs:
                    return CoverWitness("ls", i, K.names((v,)), K.names((A.perm[v],)))
        raise NoWitnessError("no member contains an antipodal pair")
    if kind == "t":
        idx = cover.indices
        if idx is None or len(idx) != len(cover.members) or len(set(idx)) != len(idx):
            raise BadPairingError("T-covers need distinct indices, one per member")
        by_index = dict(zip(idx, cover.members))
        for k, C in by_index.items():
            if k == 0 or -k not in by_index:
                raise BadPairingError(f"C_{-k} missing")
            image = {tuple(sorted(A(v) for v in C.names(f))) for f in C.facets}
            other = by_index[-k]
            theirs = {tuple(sorted(other.names(f))) for f in other.facets}
            if SimplicialComplex(image, allow_empty=True) != \
                    SimplicialComplex(theirs, allow_empty=True):
                raise BadPairingError(f"C_{-k} is not A(C_{k})")
        vs_by = dict(zip(idx, vsets))
        for k in sorted(k for k in idx if k > 0):
            common = vs_by[k] & vs_by[-k]
            if common:
                v = min(common)
                return CoverWitness("t", k, K.names((v,)), K.names((A.perm[v],)))
        raise NoWitnessError("no pair C_k, C_-k intersects")
    if kind == "tb":
        n2 = len(vsets)
        if j is None or not 1 <= j <= n2 - 1:
            raise BadPairingError(f"j must lie in 1..{n2 - 1}")
        for i, vs in enumerate(vsets, start=1):
            if any(A.perm[v] in vs for v in vs):
                raise NotACoverError(f"C_{i} contains an antipodal pair")
        front = set.intersection(*vsets[:j])
        back = set.intersection(*vsets[j:])
        for v in sorted(front):
            if A.perm[v] in back:
                return CoverWitness("tb", j, K.names((v,)), K.names((A.perm[v],)))
        raise NoWitnessError(f"no p with p in C_1..C_{j} and A p in C_{j + 1}..C_{n2}")
    raise ValueError(f"unknown cover kind {cover.kind!r}")


# -------------------------------------------------------------------- Kakutani


def kakutani_pl_zero(E: EquivariantComplex, selection: Mapping) -> HullWitness:
    """A simplex whose selected points contain 0 in their hull.

    ``selection`` gives, per vertex, a rational point ``y(v)`` with
    ``y(A v) = -y(v)``; the PL map through these points vanishes on the
    returned simplex at the barycentric point given by ``weights``.
    """
    K, A = E.complex, E.involution
    sel = {}
    for k, p in dict(selection).items():
        sel[_normalize_name(k)] = tuple(Fraction(x) for x in p)
    missing = [v for v in K.vertices if v not in sel]
    if missing:
        raise IncompleteMapError(f"selection undefined on {missing[:5]}")
    dims = {len(p) for p in sel.values()}
    if len(dims) != 1:
        raise DimensionMismatchError("selected points of different dimension")
    for v in K.vertices:
        if sel[A(v)] != tuple(-x for x in sel[v]):
            raise NotAntipodalError(f"y(A {v!r}) != -y({v!r})", vertex=v)
    pts = [sel[v] for v in K.vertices]
    found = _search_hull(K, lambda v: pts[v])
    if found is None:
        raise NoWitnessError("no simplex image covers the origin")
    s, lam = found
    return HullWitness(K.names(s), (), tuple(lam))
