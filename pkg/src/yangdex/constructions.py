"""Standard equivariant complexes and the operations that build new ones.

Cross-polytope spheres, equivariant barycentric subdivision, suspension,
the camomile doubling ``D(X, Z)`` of a complex along an invariant
subcomplex, and the involutive connected sum ``M # M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Mapping, Optional, Sequence, Union

from .complex import (
    EquivariantComplex,
    FreeInvolution,
    SimplicialComplex,
    SimplicialMap,
    check_free_involution,
    check_simplicial_map,
    classify_pseudomanifold,
    natural_key,
)
from .errors import (
    MalformedFacetError,
    NotClosedPseudomanifoldError,
    NotFreeError,
    NotFreeOnXError,
    NotSimplicialError,
    XNotFullSubcomplexError,
)

__all__ = [
    "EquivariantComplex",
    "CamomileResult",
    "cross_polytope_sphere",
    "barycentric_subdivision",
    "subdivision_retraction",
    "suspension",
    "camomile",
    "connected_sum_double",
    "extend_equivariantly",
    "hemisphere_map",
    "stellar_subdivision",
]

Coords = Mapping[str, tuple[Fraction, ...]]


def _fresh(base: str, used) -> str:
    if base not in used:
        return base
    i = 1
    while f"{base}{i}" in used:
        i += 1
    return f"{base}{i}"


# ------------------------------------------------------------ cross-polytope


def cross_polytope_sphere(n: int) -> EquivariantComplex:
    """Boundary of the (n+1)-dimensional cross-polytope with the antipodal map."""
    if n < 0:
        raise ValueError("n must be >= 0")
    pairs = [(f"+e{i}", f"-e{i}") for i in range(1, n + 2)]
    facets = [list(choice) for choice in product(*pairs)]
    K = SimplicialComplex(facets, f"S^{n}")
    inv = {}
    coords = {}
    for i, (p, q) in enumerate(pairs):
        inv[p], inv[q] = q, p
        e = [Fraction(0)] * (n + 1)
        e[i] = Fraction(1)
        coords[p] = tuple(e)
        coords[q] = tuple(-x for x in e)
    return EquivariantComplex(K, check_free_involution(K, inv), coords)


# ---------------------------------------------------- barycentric subdivision


def _simplex_name(K: SimplicialComplex, s) -> str:
    if len(s) == 1:
        return K.vertices[s[0]]
    return "[" + ",".join(K.names(s)) + "]"


def _subdivide(K: SimplicialComplex):
    """Facets of sd K by name, plus the carrier simplex (ids) of each new vertex."""
    carrier: dict[str, tuple[int, ...]] = {}
    for s in K.all_simplices():
        name = _simplex_name(K, s)
        if name in carrier:
            raise MalformedFacetError(f"vertex name {name!r} clashes with a barycenter name")
        carrier[name] = s
    facets = []
    for f in K.facets:
        for order in permutations(f):
            facets.append([_simplex_name(K, tuple(sorted(order[:i + 1])))
                           for i in range(len(order))])
    return facets, carrier


def barycentric_subdivision(E: Union[EquivariantComplex, SimplicialComplex]):
    """First barycentric subdivision; simplices of sd are flags of simplices.

    A vertex keeps its name and a larger simplex ``{a, b, ...}`` becomes the
    vertex ``"[a,b,...]"``.  An involution and coordinates (barycenters) are
    carried along when present.
    """
    K = E.complex if isinstance(E, EquivariantComplex) else E
    facets, carrier = _subdivide(K)
    sd = SimplicialComplex(facets, f"sd({K.name})" if K.name else "sd")
    sd._cache["carrier"] = {sd.index[n]: s for n, s in carrier.items()}
    sd._cache["parent"] = K
    if not isinstance(E, EquivariantComplex):
        return sd
    A = E.involution
    inv = {name: _simplex_name(K, A.image(s)) for name, s in carrier.items()}
    coords = None
    if E.coordinates is not None:
        coords = {}
        for name, s in carrier.items():
            pts = [E.coordinates[K.vertices[v]] for v in s]
            coords[name] = tuple(sum(c) / len(pts) for c in zip(*pts))
    return EquivariantComplex(sd, check_free_involution(sd, inv), coords)


def subdivision_retraction(sd: EquivariantComplex, E: EquivariantComplex) -> SimplicialMap:
    """Equivariant simplicial map sd X -> X sending each barycenter into its carrier.

    On every orbit {s, As} the smallest vertex v of s is chosen and As goes to
    A v, so the map commutes with the involutions.
    """
    K, S = E.complex, sd.complex
    carrier = S._cache.get("carrier")
    if carrier is None or S._cache.get("parent") != K:
        raise NotSimplicialError("first argument is not the subdivision of the second")
    A = E.involution
    fmap: dict[str, str] = {}
    for vid, s in carrier.items():
        name = S.vertices[vid]
        if name in fmap:
            continue
        v = s[0]
        fmap[name] = K.vertices[v]
        fmap[_simplex_name(K, A.image(s))] = K.vertices[A.perm[v]]
    return check_simplicial_map(fmap, S, K, equivariant_on=(sd.involution, A))


# ---------------------------------------------------------------- suspension


def suspension(E: EquivariantComplex) -> EquivariantComplex:
    """Join with a swapped pair of poles ``+s<i>`` / ``-s<i>``."""
    K = E.complex
    i = 1
    while f"+s{i}" in K.index or f"-s{i}" in K.index:
        i += 1
    north, south = f"+s{i}", f"-s{i}"
    facets = []
    for f in K.facet_names():
        facets.append(f + [north])
        facets.append(f + [south])
    SK = SimplicialComplex(facets, f"S({K.name})" if K.name else "S")
    inv = dict(E.involution.mapping)
    inv[north], inv[south] = south, north
    coords = None
    if E.coordinates is not None:
        k = len(next(iter(E.coordinates.values())))
        coords = {v: tuple(p) + (Fraction(0),) for v, p in E.coordinates.items()}
        coords[north] = (Fraction(0),) * k + (Fraction(1),)
        coords[south] = (Fraction(0),) * k + (Fraction(-1),)
    return EquivariantComplex(SK, check_free_involution(SK, inv), coords)


# ------------------------------------------------------------------ camomile


@dataclass(frozen=True, eq=False)
class CamomileResult:
    """``D(X, Z)``: two copies of Z glued along X, swapped by the involution.

    ``X`` and ``Z`` are the complexes actually doubled (after the one
    subdivision applied when X was not full in Z).  ``embedding`` is
    ``j: Z -> D`` onto the first copy and ``tags`` records, per D-vertex,
    whether it is ``shared`` (in X), ``copy1`` or ``copy2``.
    """

    complex: SimplicialComplex
    involution: FreeInvolution
    X: EquivariantComplex
    Z: SimplicialComplex
    embedding: SimplicialMap
    tags: Mapping[str, str]
    subdivided: bool = False
    pairs: Optional[tuple[tuple[str, str], ...]] = None  # equator pairs, connected sums only
    notes: tuple[str, ...] = field(default=())

    @property
    def equivariant(self) -> EquivariantComplex:
        return EquivariantComplex(self.complex, self.involution)


def _as_equivariant_on(X, A) -> EquivariantComplex:
    if isinstance(X, EquivariantComplex):
        return X
    if isinstance(A, FreeInvolution):
        return EquivariantComplex(X, A)
    try:
        return EquivariantComplex(X, check_free_involution(X, A))
    except NotFreeError as exc:
        raise NotFreeOnXError(str(exc)) from None


def camomile(X, Z: SimplicialComplex, A=None, *, subdivide: bool = True) -> CamomileResult:
    """Double Z along the invariant subcomplex X.

    X is an :class:`EquivariantComplex` (or a complex with ``A`` given).  X
    must be a full subcomplex of Z so that no copied simplex meets its image;
    otherwise both are subdivided once (sd X is full in sd Z), or
    :class:`XNotFullSubcomplexError` is raised when ``subdivide`` is false.
    """
    EX = _as_equivariant_on(X, A)
    if not EX.complex.is_subcomplex_of(Z):
        raise XNotFullSubcomplexError("X is not a subcomplex of Z")
    subdivided = False
    if not EX.complex.is_full_subcomplex_of(Z):
        if not subdivide:
            raise XNotFullSubcomplexError("X is not a full subcomplex of Z")
        EX = barycentric_subdivision(EX)
        Z = barycentric_subdivision(Z)
        subdivided = True
    Xc = EX.complex
    Av = EX.involution
    shared = set(Xc.vertices)
    outside = [v for v in Z.vertices if v not in shared]
    used = set(Z.vertices)
    c1, c2 = {}, {}
    for v in outside:
        a = _fresh(f"{v}:1", used)
        used.add(a)
        b = _fresh(f"{v}:2", used)
        used.add(b)
        c1[v], c2[v] = a, b
    facets = []
    for f in Z.facet_names():
        facets.append([v if v in shared else c1[v] for v in f])
        facets.append([Av(v) if v in shared else c2[v] for v in f])
    name = f"D({Xc.name},{Z.name})" if Xc.name or Z.name else "D"
    D = SimplicialComplex(facets, name)
    inv = {v: Av(v) for v in Xc.vertices}
    tags = {v: "shared" for v in Xc.vertices}
    for v in outside:
        inv[c1[v]], inv[c2[v]] = c2[v], c1[v]
        tags[c1[v]], tags[c2[v]] = "copy1", "copy2"
    involution = check_free_involution(D, inv)
    j = check_simplicial_map({v: (v if v in shared else c1[v]) for v in Z.vertices}, Z, D)
    return CamomileResult(D, involution, EX, Z, j, tags, subdivided)


def extend_equivariantly(result: CamomileResult, f: SimplicialMap,
                         AY: FreeInvolution) -> SimplicialMap:
    """Extend ``f: Z -> Y`` (equivariant on X) to an equivariant map ``D -> Y``.

    The first copy maps by f and the second by ``AY o f``; on X the two agree
    because f commutes with the involutions there.
    """
    Z, D = result.Z, result.complex
    if f.source != Z:
        raise NotSimplicialError("map is not defined on Z")
    X = result.X
    check_simplicial_map(f.vertex_map, Z, f.target, equivariant_on=(X.involution, AY))
    back = {j_v: v for v, j_v in result.embedding.vertex_map.items()}
    fmap = {}
    for v in D.vertices:
        tag = result.tags[v]
        if tag == "shared":
            fmap[v] = f(v)
        elif tag == "copy1":
            fmap[v] = f(back[v])
        else:
            fmap[v] = AY(f(back[result.involution(v)]))
    return check_simplicial_map(fmap, D, f.target,
                                equivariant_on=(result.involution, AY))


# ----------------------------------------------------------- connected sums


def stellar_subdivision(facets: list[frozenset], face: frozenset, p: str) -> list[frozenset]:
    """Stellar subdivision of ``face`` at a new vertex ``p`` (facets as name sets)."""
    out = []
    for F in facets:
        if face <= F:
            for t in face:
                out.append((F - {t}) | {p})
        else:
            out.append(F)
    return out


def connected_sum_double(M: SimplicialComplex, facet: Optional[Sequence[str]] = None
                         ) -> CamomileResult:
    """``M # M`` with the involution swapping the two summands.

    The chosen facet is re-triangulated by stellar moves only, which leaves
    the rest of M untouched:

    1. cone the facet ``{v0..vd}`` from a new center ``b``; its link is the
       boundary of a d-simplex;
    2. subdivide the triangles ``{b, v0, v1}``, ``{b, m1, v2}``, ...,
       ``{b, m_{d-2}, v_{d-1}}`` at new points m1 .. m_{d-1}; this turns the
       link into the octahedral (d-1)-sphere, the join of the pairs
       ``(v0, v1), (m1, v2), ..., (m_{d-1}, v_d)``;
    3. subdivide every edge ``{b, u}`` at ``u'`` so the new link lies in a
       collar and is a full subcomplex of its complement.

    X is the final link with the antipodal pairing and Z is everything away
    from b.  The pairs are kept on the result (see :func:`hemisphere_map`).
    """
    rep = classify_pseudomanifold(M)
    if not (rep.is_pseudomanifold and rep.is_closed):
        raise NotClosedPseudomanifoldError(f"{M.name or 'complex'} is not a closed pseudomanifold")
    d = M.dim
    if d < 1:
        raise NotClosedPseudomanifoldError("connected sums need dimension >= 1")
    if facet is None:
        sigma = list(M.names(M.facets[0]))
    else:
        sigma = list(M.names(M.ids(facet)))
        if M.ids(sigma) not in M.facets:
            raise NotSimplicialError(f"{list(facet)} is not a facet of {M.name or 'M'}",
                                     simplex=tuple(facet))
    used = set(M.vertices)
    facets = [frozenset(M.names(f)) for f in M.facets]

    b = _fresh("ctr", used)
    used.add(b)
    facets = stellar_subdivision(facets, frozenset(sigma), b)

    pairs = [(sigma[0], sigma[1])]
    for k in range(1, d):
        m = _fresh(f"mid{k}", used)
        used.add(m)
        facets = stellar_subdivision(facets, frozenset((b,) + pairs[-1]), m)
        pairs.append((m, sigma[k + 1]))

    link_vertices = sorted({v for F in facets if b in F for v in F} - {b}, key=natural_key)
    primed = {}
    for u in link_vertices:
        p = _fresh(f"{u}'", used)
        used.add(p)
        primed[u] = p
        facets = stellar_subdivision(facets, frozenset((b, u)), p)

    pairs = tuple((primed[a], primed[c]) for a, c in pairs)
    inv = {}
    for a, c in pairs:
        inv[a], inv[c] = c, a
    Z = SimplicialComplex([F for F in facets if b not in F], f"{M.name or 'M'}-ball")
    X_facets = [F - {b} for F in facets if b in F]
    Xc = SimplicialComplex(X_facets, "S^%d" % (d - 1))
    EX = EquivariantComplex(Xc, check_free_involution(Xc, inv))
    result = camomile(EX, Z, subdivide=False)
    D = SimplicialComplex(result.complex.facet_names(),
                          f"{M.name or 'M'}#{M.name or 'M'}")
    inv_D = check_free_involution(D, result.involution.mapping)
    j = check_simplicial_map(result.embedding.vertex_map, Z, D)
    return CamomileResult(D, inv_D, EX, Z, j, result.tags, False, pairs,
                          (f"facet {sigma} octahedralized",))


def hemisphere_map(result: CamomileResult) -> SimplicialMap:
    """Equivariant map ``M # M -> S^d`` (cross-polytope) of mod-2 degree 1.

    The sphere X goes to the equator through its antipodal pairs, the rest of
    the first copy to the north pole ``+e(d+1)``; the second copy follows by
    equivariance.
    """
    if result.pairs is None:
        raise NotSimplicialError("result carries no equator pairing")
    d = len(result.pairs)
    S = cross_polytope_sphere(d)
    north = f"+e{d + 1}"
    f = {}
    for i, (a, c) in enumerate(result.pairs, start=1):
        f[a], f[c] = f"+e{i}", f"-e{i}"
    for v in result.Z.vertices:
        f.setdefault(v, north)
    fZ = check_simplicial_map(f, result.Z, S.complex)
    return extend_equivariantly(result, fZ, S.involution)
