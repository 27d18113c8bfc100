"""Finite abstract simplicial complexes, free involutions and simplicial maps.

Vertices are external string names; internally each complex interns them to
dense integer ids in *natural* sort order of the names (``v2`` before
``v10``).  That id order is the fixed global vertex order used for oriented
cochains and Alexander-Whitney cup products.  Simplices are stored as sorted
tuples of ids.
"""

from __future__ import annotations

import logging
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import (
    EmptyInputError,
    IncompleteMapError,
    MalformedFacetError,
    NonOrientableError,
    NotEquivariantError,
    NotFreeError,
    NotOrder2Error,
    NotPseudomanifoldLikeError,
    NotSimplicialError,
)

log = logging.getLogger(__name__)

Simplex = tuple  # sorted tuple of vertex ids

_DIGITS = re.compile(r"(\d+)")


def natural_key(name: str):
    """Sort key that orders embedded integers numerically."""
    parts = _DIGITS.split(name)
    return tuple((1, int(p)) if i % 2 else (0, p) for i, p in enumerate(parts))


def _normalize_name(v) -> str:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise MalformedFacetError(f"vertex name must be a string or integer, got {v!r}")
    name = str(v)
    if not name or name != name.strip():
        raise MalformedFacetError(f"malformed vertex name {v!r}")
    return name


class SimplicialComplex:
    """Immutable finite simplicial complex generated by its facets.

    Use :func:`validate_complex` (or :meth:`from_facets`) to build one.
    """

    def __init__(self, facets_by_name: Iterable[Iterable[str]], name: str = "",
                 *, allow_empty: bool = False):
        warns: list[str] = []
        cleaned: list[frozenset] = []
        seen: set[frozenset] = set()
        for raw in facets_by_name:
            raw = list(raw)
            if not raw:
                raise MalformedFacetError("empty facet")
            names = [_normalize_name(v) for v in raw]
            fs = frozenset(names)
            if len(fs) != len(names):
                dup = next(n for n in names if names.count(n) > 1)
                raise MalformedFacetError(f"facet {raw!r} repeats vertex {dup!r}")
            if fs in seen:
                warns.append(f"duplicate facet {sorted(fs, key=natural_key)} dropped")
                continue
            seen.add(fs)
            cleaned.append(fs)
        if not cleaned and not allow_empty:
            raise EmptyInputError("facet list is empty")

        # absorb non-maximal facets: check against larger facets only
        cleaned.sort(key=len, reverse=True)
        maximal: list[frozenset] = []
        by_vertex: dict[str, list[int]] = {}
        for fs in cleaned:
            some = next(iter(fs))
            cands = by_vertex.get(some, ())
            if any(fs <= maximal[i] for i in cands):
                warns.append(f"non-maximal facet {sorted(fs, key=natural_key)} absorbed")
                continue
            idx = len(maximal)
            maximal.append(fs)
            for v in fs:
                by_vertex.setdefault(v, []).append(idx)

        self.name = name
        self.vertices: tuple[str, ...] = tuple(sorted({v for fs in maximal for v in fs},
                                                      key=natural_key))
        self.index: dict[str, int] = {v: i for i, v in enumerate(self.vertices)}
        self.facets: tuple[Simplex, ...] = tuple(sorted(
            tuple(sorted(self.index[v] for v in fs)) for fs in maximal))
        self.warnings: tuple[str, ...] = tuple(warns)
        for w in warns:
            log.warning("%s: %s", name or "complex", w)

        self.dim = max((len(f) - 1 for f in self.facets), default=-1)
        faces: list[set] = [set() for _ in range(self.dim + 1)]
        for f in self.facets:
            for k in range(1, len(f) + 1):
                faces[k - 1].update(combinations(f, k))
        self._faces: list[tuple[Simplex, ...]] = [tuple(sorted(s)) for s in faces]
        self._face_index: list[dict[Simplex, int]] = [
            {s: i for i, s in enumerate(fk)} for fk in self._faces]
        self._cache: dict = {}

    # ------------------------------------------------------------------ basics
    @classmethod
    def from_facets(cls, facets, name: str = "", *, allow_empty: bool = False):
        return cls(facets, name, allow_empty=allow_empty)

    @classmethod
    def empty(cls, name: str = "") -> "SimplicialComplex":
        return cls([], name, allow_empty=True)

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(fk) for fk in self._faces)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def simplices(self, k: int) -> tuple[Simplex, ...]:
        """All k-simplices in lexicographic order of vertex ids."""
        if 0 <= k <= self.dim:
            return self._faces[k]
        return ()

    def n_simplices(self, k: int) -> int:
        return len(self.simplices(k))

    def simplex_id(self, s: Simplex) -> int:
        return self._face_index[len(s) - 1][s]

    def simplex_index(self, k: int) -> Mapping[Simplex, int]:
        if 0 <= k <= self.dim:
            return self._face_index[k]
        return {}

    def has_simplex(self, s: Iterable[int]) -> bool:
        s = tuple(sorted(s))
        if not s:
            return True
        k = len(s) - 1
        return k <= self.dim and s in self._face_index[k]

    def all_simplices(self) -> Iterator[Simplex]:
        for fk in self._faces:
            yield from fk

    def ids(self, names: Iterable) -> Simplex:
        try:
            return tuple(sorted(self.index[_normalize_name(v)] for v in names))
        except KeyError as exc:
            raise NotSimplicialError(f"unknown vertex {exc.args[0]!r}") from None

    def names(self, s: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.vertices[i] for i in s)

    def facet_names(self) -> list[list[str]]:
        return sorted((list(self.names(f)) for f in self.facets),
                      key=lambda f: [natural_key(v) for v in f])

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector))

    def is_pure(self) -> bool:
        return all(len(f) == self.dim + 1 for f in self.facets)

    def components(self) -> list[list[int]]:
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.simplices(1):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, list[int]] = {}
        for v in range(self.n_vertices):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def subcomplex(self, facets_by_name, name: str = "") -> "SimplicialComplex":
        sub = SimplicialComplex(facets_by_name, name, allow_empty=True)
        for f in sub.facets:
            if not self.has_simplex(self.ids(sub.names(f))):
                raise NotSimplicialError(f"{list(sub.names(f))} is not a simplex of "
                                         f"{self.name or 'the complex'}",
                                         simplex=sub.names(f))
        return sub

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        if any(v not in other.index for v in self.vertices):
            return False
        return all(other.has_simplex(other.ids(self.names(f))) for f in self.facets)

    def is_full_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        """Every simplex of ``other`` spanned by our vertices is one of ours."""
        if not self.is_subcomplex_of(other):
            return False
        ours = {other.index[v] for v in self.vertices}
        for f in other.facets:
            inside = [v for v in f if v in ours]
            if len(inside) > 1 and not self.has_simplex(self.ids(other.names(inside))):
                return False
        return True

    def renamed(self, name: str) -> "SimplicialComplex":
        return SimplicialComplex(self.facet_names(), name, allow_empty=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self.facets == other.facets

    def __hash__(self) -> int:
        return hash((self.vertices, self.facets))

    def __repr__(self) -> str:
        return (f"SimplicialComplex({self.name!r}, dim={self.dim}, "
                f"f_vector={self.f_vector})")


def validate_complex(facets: Sequence[Sequence], name: str = "") -> SimplicialComplex:
    """Build a complex from facet vertex lists.

    Duplicate and non-maximal facets are dropped; each drop is recorded in
    ``K.warnings``.
    """
    if not facets:
        raise EmptyInputError("facet list is empty")
    return SimplicialComplex(facets, name)


# ---------------------------------------------------------------- involutions


@dataclass(frozen=True, eq=False)
class FreeInvolution:
    """A validated free simplicial involution; build with check_free_involution."""

    complex: SimplicialComplex
    perm: tuple[int, ...]

    def __call__(self, v: str) -> str:
        K = self.complex
        return K.vertices[self.perm[K.index[v]]]

    def image(self, s: Iterable[int]) -> Simplex:
        return tuple(sorted(self.perm[v] for v in s))

    @property
    def mapping(self) -> dict[str, str]:
        K = self.complex
        return {K.vertices[i]: K.vertices[j] for i, j in enumerate(self.perm)}

    def representatives(self) -> list[int]:
        """The smaller id of every orbit, ascending."""
        return [v for v, w in enumerate(self.perm) if v < w]


def check_free_involution(K: SimplicialComplex, A: Mapping) -> FreeInvolution:
    """Validate a vertex map as an order-2, simplicial, free involution of K."""
    mapping = {_normalize_name(k): _normalize_name(v) for k, v in dict(A).items()}
    missing = [v for v in K.vertices if v not in mapping]
    if missing:
        raise IncompleteMapError(f"involution undefined on {missing[:5]}")
    perm = []
    for v in K.vertices:
        w = mapping[v]
        if w not in K.index:
            raise NotSimplicialError(f"involution sends {v!r} to unknown vertex {w!r}",
                                     simplex=(v,))
        perm.append(K.index[w])
    for v, w in enumerate(perm):
        if perm[w] != v:
            raise NotOrder2Error(
                f"A(A({K.vertices[v]!r})) = {K.vertices[perm[w]]!r}, not the identity")
    for f in K.facets:
        img = tuple(sorted(perm[v] for v in f))
        if not K.has_simplex(img):
            raise NotSimplicialError(f"image of {list(K.names(f))} is not a simplex",
                                     simplex=K.names(f))
        meet = set(f).intersection(img)
        if meet:
            v = min(meet)
            bad = tuple(sorted({v, perm[v]}))
            raise NotFreeError(f"simplex {list(K.names(bad))} meets its image",
                               simplex=K.names(bad))
    return FreeInvolution(K, tuple(perm))


@dataclass(frozen=True, eq=False)
class EquivariantComplex:
    """A complex with a validated free involution and optional rational coordinates."""

    complex: SimplicialComplex
    involution: FreeInvolution
    coordinates: Optional[Mapping[str, tuple[Fraction, ...]]] = None

    def __post_init__(self):
        if self.involution.complex is not self.complex and \
                self.involution.complex != self.complex:
            raise NotFreeError("involution belongs to a different complex")

    @property
    def name(self) -> str:
        return self.complex.name

    @property
    def dim(self) -> int:
        return self.complex.dim


def equivariant(facets, involution: Mapping, name: str = "", coordinates=None
                ) -> EquivariantComplex:
    K = validate_complex(facets, name)
    A = check_free_involution(K, involution)
    if coordinates is not None:
        coordinates = {str(v): tuple(Fraction(x) for x in p) for v, p in coordinates.items()}
    return EquivariantComplex(K, A, coordinates)


# --------------------------------------------------------------- simplicial maps


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: Mapping[str, str]
    _ids: tuple[int, ...] = field(repr=False, default=())

    def __call__(self, v: str) -> str:
        return self.vertex_map[v]

    def image(self, s: Iterable[int]) -> Simplex:
        """Sorted target ids of the image of source simplex ``s`` (deduplicated)."""
        return tuple(sorted({self._ids[v] for v in s}))

    def image_ordered(self, s: Iterable[int]) -> tuple[int, ...]:
        return tuple(self._ids[v] for v in s)


def check_simplicial_map(f: Mapping, X: SimplicialComplex, Y: SimplicialComplex,
                         equivariant_on: Optional[tuple[FreeInvolution, FreeInvolution]] = None
                         ) -> SimplicialMap:
    """Validate that the vertex map ``f`` sends simplices of X to simplices of Y.

    ``equivariant_on`` is a pair ``(A_X, A_Y)`` where ``A_X`` is a free involution
    on a subcomplex of X (possibly X itself) and ``A_Y`` one on Y; then
    ``f(A_X v) = A_Y f(v)`` is checked on the vertices of that subcomplex.
    """
    fmap = {_normalize_name(k): _normalize_name(v) for k, v in dict(f).items()}
    missing = [v for v in X.vertices if v not in fmap]
    if missing:
        raise IncompleteMapError(f"map undefined on {missing[:5]}")
    ids = []
    for v in X.vertices:
        w = fmap[v]
        if w not in Y.index:
            raise NotSimplicialError(f"{v!r} maps to unknown vertex {w!r}", simplex=(v,))
        ids.append(Y.index[w])
    fmap = {v: fmap[v] for v in X.vertices}
    for s in X.facets:
        img = {ids[v] for v in s}
        if not Y.has_simplex(img):
            raise NotSimplicialError(
                f"image of {list(X.names(s))} is {sorted(Y.names(sorted(img)))}, not a simplex",
                simplex=X.names(s))
    if equivariant_on is not None:
        AX, AY = equivariant_on
        if AY.complex != Y:
            raise NotEquivariantError("target involution acts on a different complex")
        if not AX.complex.is_subcomplex_of(X):
            raise NotEquivariantError("equivariance region is not a subcomplex of the source")
        for v in AX.complex.vertices:
            if fmap[AX(v)] != AY(fmap[v]):
                raise NotEquivariantError(
                    f"f(A {v!r}) = {fmap[AX(v)]!r} but A f({v!r}) = {AY(fmap[v])!r}", vertex=v)
    return SimplicialMap(X, Y, fmap, tuple(ids))


def compose(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """g after f."""
    if f.target != g.source:
        raise NotSimplicialError("maps are not composable")
    return check_simplicial_map({v: g(f(v)) for v in f.source.vertices}, f.source, g.target)


def identity_map(K: SimplicialComplex) -> SimplicialMap:
    return check_simplicial_map({v: v for v in K.vertices}, K, K)


# ----------------------------------------------------------- pseudomanifolds


@dataclass(frozen=True)
class PseudomanifoldReport:
    dimension: int
    is_almost_pseudomanifold: bool
    is_strongly_connected: bool
    is_pseudomanifold: bool
    boundary: SimplicialComplex
    is_closed: bool
    is_pure: bool = True


def _ridge_cofacets(K: SimplicialComplex) -> dict[Simplex, list[Simplex]]:
    ridges: dict[Simplex, list[Simplex]] = {}
    for f in K.facets:
        if len(f) != K.dim + 1:
            continue
        for i in range(len(f)):
            ridges.setdefault(f[:i] + f[i + 1:], []).append(f)
    return ridges


def classify_pseudomanifold(K: SimplicialComplex) -> PseudomanifoldReport:
    """Classify K against the (almost) pseudomanifold conditions.

    For dim 0 the only ridge is the empty simplex, so a closed 0-pseudomanifold
    is exactly a pair of points.
    """
    pure = K.is_pure()
    ridges = _ridge_cofacets(K)
    almost = pure and bool(K.facets) and all(len(c) <= 2 for c in ridges.values())
    boundary_ridges = [r for r, c in ridges.items() if len(c) == 1]

    adj: dict[Simplex, list[Simplex]] = {f: [] for f in K.facets}
    for cof in ridges.values():
        for a, b in combinations(cof, 2):
            adj[a].append(b)
            adj[b].append(a)
    strong = False
    if pure and K.facets:
        start = K.facets[0]
        seen = {start}
        queue = deque([start])
        while queue:
            for g in adj[queue.popleft()]:
                if g not in seen:
                    seen.add(g)
                    queue.append(g)
        strong = len(seen) == len(K.facets)

    boundary = SimplicialComplex([K.names(r) for r in boundary_ridges if r],
                                 f"boundary({K.name})", allow_empty=True)
    return PseudomanifoldReport(
        dimension=K.dim,
        is_almost_pseudomanifold=almost,
        is_strongly_connected=strong,
        is_pseudomanifold=almost and strong,
        boundary=boundary,
        is_closed=almost and not boundary_ridges,
        is_pure=pure,
    )


@dataclass(frozen=True)
class Orientation:
    """Coherent facet signs relative to the sorted vertex order, or non-orientable.

    ``signs`` is None for a non-orientable complex.
    """

    complex: SimplicialComplex
    signs: Optional[Mapping[Simplex, int]]

    @property
    def orientable(self) -> bool:
        return self.signs is not None

    def reversed(self) -> "Orientation":
        if self.signs is None:
            return self
        return Orientation(self.complex, {f: -s for f, s in self.signs.items()})

    def is_coherent(self) -> bool:
        if self.signs is None:
            return False
        for r, cof in _ridge_cofacets(self.complex).items():
            if len(cof) == 2:
                a, b = cof
                if _induced(a, r, self.signs[a]) != -_induced(b, r, self.signs[b]):
                    return False
        return True


def _induced(facet: Simplex, ridge: Simplex, sign: int) -> int:
    """Sign of the orientation that ``facet`` (with ``sign``) induces on ``ridge``."""
    missing = next(i for i, v in enumerate(facet) if v not in ridge)
    return sign * (-1) ** missing


def orient(K: SimplicialComplex) -> Orientation:
    """Propagate facet orientations across interior ridges by BFS.

    Raises :class:`NonOrientableError` when propagation meets a conflict.
    """
    if not classify_pseudomanifold(K).is_almost_pseudomanifold:
        raise NotPseudomanifoldLikeError(f"{K.name or 'complex'} is not an almost pseudomanifold")
    ridges = _ridge_cofacets(K)
    neighbours: dict[Simplex, list[tuple[Simplex, Simplex]]] = {f: [] for f in K.facets}
    for r, cof in ridges.items():
        if len(cof) == 2:
            a, b = cof
            neighbours[a].append((b, r))
            neighbours[b].append((a, r))
    signs: dict[Simplex, int] = {}
    for seed in K.facets:
        if seed in signs:
            continue
        signs[seed] = 1
        queue = deque([seed])
        while queue:
            a = queue.popleft()
            for b, r in neighbours[a]:
                want = -_induced(a, r, signs[a]) * _induced(b, r, 1)
                if b not in signs:
                    signs[b] = want
                    queue.append(b)
                elif signs[b] != want:
                    raise NonOrientableError(f"{K.name or 'complex'} is not orientable")
    return Orientation(K, signs)


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign
