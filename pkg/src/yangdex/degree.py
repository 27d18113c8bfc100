"""Degrees of simplicial maps between closed pseudomanifolds and zeros of PL maps.

Degrees are computed by counting, over a target facet, the source facets
mapped onto it without collapsing (signed by orientations for the integer
degree).  Every target facet is checked, so an ill-defined count surfaces as
an error instead of a silent answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .cohomology import GF2, betti2, induced_map
from .complex import (
    EquivariantComplex,
    FreeInvolution,
    Orientation,
    SimplicialComplex,
    SimplicialMap,
    check_simplicial_map,
    classify_pseudomanifold,
    orient,
    permutation_sign,
    _normalize_name,
)
from .errors import (
    DimensionMismatchError,
    IllDefinedError,
    IncompleteMapError,
    NonOrientableError,
    NotAntipodalError,
    NotClosedError,
    NotTransversalError,
)
from .index import hind2
from .linalg import affinely_independent, origin_in_hull, rational_solve


@dataclass(frozen=True)
class DegreeResult:
    mod2: int
    integer: Optional[int]
    facet_used: tuple[str, ...]
    well_defined_verified: bool


def _check_closed(K: SimplicialComplex, role: str) -> None:
    rep = classify_pseudomanifold(K)
    if not (rep.is_almost_pseudomanifold and rep.is_closed):
        label = f"{role} {K.name}" if K.name else role
        raise NotClosedError(f"{label} is not a closed (almost) pseudomanifold")


def _preimage_counts(f: SimplicialMap, signs=None) -> dict[tuple, int]:
    X, Y = f.source, f.target
    d = Y.dim
    counts = {s: 0 for s in Y.simplices(d)}
    for s in X.simplices(d):
        img = f.image_ordered(s)
        if len(set(img)) < len(img):
            continue  # collapses
        t = tuple(sorted(img))
        if signs is None:
            counts[t] += 1
        else:
            sx, sy = signs
            counts[t] += sx[s] * sy[t] * permutation_sign(img)
    return counts


def _settle(counts: dict[tuple, int], Y: SimplicialComplex, facet, verify: bool, parity: bool):
    if facet is None:
        t = Y.simplices(Y.dim)[0]
    else:
        t = Y.ids(facet)
        if t not in counts:
            raise DimensionMismatchError(f"{list(facet)} is not a top simplex of the target")
    value = counts[t] % 2 if parity else counts[t]
    if verify:
        for other, c in counts.items():
            c = c % 2 if parity else c
            if c != value:
                raise IllDefinedError(
                    f"preimage count {c} over {list(Y.names(other))} differs from {value} "
                    f"over {list(Y.names(t))}")
    return value, Y.names(t)


def _check_dims(f: SimplicialMap) -> None:
    if f.source.dim != f.target.dim:
        raise DimensionMismatchError(f"source dim {f.source.dim} != target dim {f.target.dim}")
    _check_closed(f.source, "source")
    _check_closed(f.target, "target")


def degree_mod2(f: SimplicialMap, facet: Optional[Sequence[str]] = None,
                verify: bool = True) -> DegreeResult:
    """Parity of non-collapsing preimages of a target facet."""
    _check_dims(f)
    value, used = _settle(_preimage_counts(f), f.target, facet, verify, parity=True)
    return DegreeResult(value, None, used, verify)


def degree_int(f: SimplicialMap, orientations: Optional[tuple[Orientation, Orientation]] = None,
               facet: Optional[Sequence[str]] = None, verify: bool = True) -> DegreeResult:
    """Signed preimage count for oriented source and target."""
    _check_dims(f)
    if orientations is None:
        orientations = (orient(f.source), orient(f.target))
    ox, oy = orientations
    for o, role in ((ox, "source"), (oy, "target")):
        if not o.orientable:
            raise NonOrientableError(f"{role} is not orientable")
    counts = _preimage_counts(f, (ox.signs, oy.signs))
    value, used = _settle(counts, f.target, facet, verify, parity=False)
    return DegreeResult(value % 2, value, used, verify)


# ------------------------------------------------------------ odd degree


@dataclass(frozen=True)
class OddDegreeReport:
    """Degree and index data for an equivariant map between closed d-pseudomanifolds.

    ``both_but`` means hind2 = d on both sides (for closed almost
    pseudomanifolds this is exactly BUT_d); then deg2 must be 1.  When the
    target is certified BUT_d (a sphere in practice), ``source_but`` is read
    off from deg2 alone and ``matches_index`` compares it with hind2.
    """

    d: int
    deg2: int
    hind2_source: int
    hind2_target: int
    both_but: bool
    odd_degree_consistent: bool
    target_certified: bool
    source_but: Optional[bool]
    matches_index: Optional[bool]
    cohomology_agrees: bool
    top_iso_consistent: Optional[bool]

    @property
    def ok(self) -> bool:
        return (self.odd_degree_consistent and self.cohomology_agrees
                and self.matches_index is not False and self.top_iso_consistent is not False)


def odd_degree_check(f: SimplicialMap, AX: FreeInvolution, AY: FreeInvolution,
                     verify: bool = True) -> OddDegreeReport:
    X, Y = f.source, f.target
    f = check_simplicial_map(f.vertex_map, X, Y, equivariant_on=(AX, AY))
    deg = degree_mod2(f, verify=verify).mod2
    d = X.dim
    hx = hind2(EquivariantComplex(X, AX), verify=verify).hind2
    hy = hind2(EquivariantComplex(Y, AY), verify=verify).hind2
    both = hx == d and hy == d
    target_cert = hy == d
    source_but = (deg == 1) if target_cert else None
    matches = (source_but == (hx == d)) if source_but is not None else None
    # deg2 is the induced map on H^d(.; Z/2) = Z/2 for pseudomanifolds
    star = induced_map(f, d, GF2)
    bx, by = betti2(X)[d], betti2(Y)[d]
    agrees = True
    iso = None
    if bx == 1 and by == 1:
        agrees = (star.matrix[0][0] == deg)
        iso = star.matrix[0][0] == 1
    top_iso = None
    if hy == d and bx == 1 and by == 1 and iso:
        top_iso = hx == d  # equal index forced by an iso on top cohomology
    return OddDegreeReport(d, deg, hx, hy, both, (not both) or deg == 1, target_cert,
                           source_but, matches, agrees, top_iso)


# -------------------------------------------------------------- PL zeros


@dataclass(frozen=True)
class PLMap:
    """Rational images ``h(v)`` in Q^d, extended affinely on each simplex."""

    source: SimplicialComplex
    d: int
    coords: Mapping[str, tuple[Fraction, ...]]

    @classmethod
    def of(cls, K: SimplicialComplex, coords: Mapping) -> "PLMap":
        c = {_normalize_name(k): tuple(Fraction(x) for x in p) for k, p in dict(coords).items()}
        missing = [v for v in K.vertices if v not in c]
        if missing:
            raise IncompleteMapError(f"PL map undefined on {missing[:5]}")
        dims = {len(c[v]) for v in K.vertices}
        if len(dims) != 1:
            raise DimensionMismatchError("images of different dimension")
        return cls(K, dims.pop(), {v: c[v] for v in K.vertices})

    def is_antipodal(self, A: FreeInvolution) -> bool:
        return all(self.coords[A(v)] == tuple(-x for x in self.coords[v])
                   for v in self.source.vertices)


@dataclass(frozen=True)
class ZeroReport:
    transversal: bool
    zeros: tuple[tuple[tuple[str, ...], tuple[Fraction, ...]], ...]
    count: int
    mod4: Optional[int] = None
    four_k_plus_two: Optional[bool] = None


def pl_zeros(h: PLMap, involution: Optional[FreeInvolution] = None) -> ZeroReport:
    """Zeros of a PL map ``M^d -> Q^d``; each must be interior to a d-simplex.

    A zero on a lower face, or a facet on which h is degenerate and vanishes,
    raises :class:`NotTransversalError` naming the offending simplex.
    """
    K = h.source
    d = K.dim
    if h.d != d:
        raise DimensionMismatchError(f"PL map lands in Q^{h.d}, expected Q^{d}")
    _check_closed(K, "source")
    if involution is not None and not h.is_antipodal(involution):
        bad = next(v for v in K.vertices
                   if h.coords[involution(v)] != tuple(-x for x in h.coords[v]))
        raise NotAntipodalError(f"h(A {bad!r}) != -h({bad!r})", vertex=bad)
    zeros = []
    for s in K.simplices(d):
        names = K.names(s)
        pts = [h.coords[v] for v in names]
        if not affinely_independent(pts):
            if origin_in_hull(pts) is not None:
                raise NotTransversalError(f"h is degenerate and vanishes on {list(names)}",
                                          simplex=names)
            continue
        A = [[q[r] for q in pts] for r in range(d)] + [[Fraction(1)] * (d + 1)]
        t = rational_solve(A, [Fraction(0)] * d + [Fraction(1)])
        if t is None or any(x < 0 for x in t):
            continue
        if any(x == 0 for x in t):
            face = tuple(v for v, x in zip(names, t) if x > 0)
            raise NotTransversalError(f"zero on the face {list(face)}", simplex=face)
        zeros.append((names, tuple(t)))
    count = len(zeros)
    if involution is None:
        return ZeroReport(True, tuple(zeros), count)
    return ZeroReport(True, tuple(zeros), count, count % 4, count % 4 == 2)


def axis_projection(E: EquivariantComplex, facet: Optional[Sequence[str]] = None) -> PLMap:
    """Project along the line through the barycenter x of a facet and -x.

    Uses the coordinates attached to ``E`` (e.g. a cross-polytope) and a
    rational basis ``x_p e_j - x_j e_p`` of the orthogonal complement of x,
    so ``h(v) = 0`` exactly on the line through x.
    """
    if E.coordinates is None:
        raise IncompleteMapError("complex has no coordinates")
    K = E.complex
    f = K.facets[0] if facet is None else K.ids(facet)
    pts = [E.coordinates[v] for v in K.names(f)]
    x = [sum(c) / len(pts) for c in zip(*pts)]
    p = next(i for i, c in enumerate(x) if c != 0)
    basis = []
    for j in range(len(x)):
        if j == p:
            continue
        b = [Fraction(0)] * len(x)
        b[j] = x[p]
        b[p] = -x[j]
        basis.append(b)
    coords = {v: tuple(sum(bi * ci for bi, ci in zip(b, E.coordinates[v])) for b in basis)
              for v in K.vertices}
    return PLMap(K, len(basis), coords)
