"""Yang's cohomological index of a free involution and the certificates built on it.

The double cover ``X -> X/T`` is encoded by the characteristic 1-cocycle ``w``
on the orbit complex; ``hind2`` is the largest ``n`` with ``w^n`` not a
coboundary.  From ``hind2 <= tind <= dim`` and the equivalence criteria for
closed almost pseudomanifolds and for elementary 2-primary top cohomology,
:func:`but_certificate` derives yes/no/unknown verdicts for each ``BUT_n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .cohomology import (
    GF2,
    INT,
    Coeff,
    Cochain,
    class_is_zero,
    cup,
    induced_map,
    inclusion,
    integer_cohomology,
    is_cocycle,
)
from .complex import (
    EquivariantComplex,
    FreeInvolution,
    PseudomanifoldReport,
    SimplicialComplex,
    check_free_involution,
    classify_pseudomanifold,
    natural_key,
)
from .constructions import barycentric_subdivision, suspension
from .errors import InternalInconsistencyError
from .linalg import two_primary_elementary


def _equivariant(X, A=None) -> EquivariantComplex:
    if isinstance(X, EquivariantComplex):
        return X
    if not isinstance(A, FreeInvolution):
        A = check_free_involution(X, A)
    return EquivariantComplex(X, A)


# ------------------------------------------------------------------ quotient


def is_regular(E: EquivariantComplex) -> bool:
    """Whether the orbit complex is a faithful simplicial model of X/T.

    Regular means: no simplex contains two points of one orbit, and two
    simplices with the same orbit image are equal or swapped by A.
    """
    K, perm = E.complex, E.involution.perm
    orbit = [min(v, w) for v, w in enumerate(perm)]
    images: dict[tuple, int] = {}
    for s in K.all_simplices():
        img = tuple(sorted({orbit[v] for v in s}))
        if len(img) < len(s):
            return False
        images[img] = images.get(img, 0) + 1
    # s and A s always share an image and differ (freeness), so exactly two
    return all(c == 2 for c in images.values())


@dataclass(frozen=True, eq=False)
class QuotientData:
    """Orbit complex Q of a regular free involution.

    ``source`` is the complex actually divided out (the input, or its
    barycentric subdivision when the input was not regular).  Each orbit is
    named after its smallest vertex, which is also the lift ``section``.
    """

    source: EquivariantComplex
    complex: SimplicialComplex
    projection: Mapping[str, str]
    section: Mapping[str, str]
    subdivided: bool


def quotient(X, A=None) -> QuotientData:
    E = _equivariant(X, A)
    subdivided = False
    if not is_regular(E):
        # One subdivision suffices: a flag s0 < s1 < ... of sd X meets the flag
        # A t0 < A t1 < ... in one orbit image only if s_i = t_i or s_i = A t_i
        # consistently; mixing would give s_i contained in s_j and A s_j,
        # impossible since s_j and A s_j are disjoint.
        E = barycentric_subdivision(E)
        subdivided = True
        if not is_regular(E):
            raise InternalInconsistencyError("subdivided action is still not regular")
    K = E.complex
    A = E.involution
    projection: dict[str, str] = {}
    for v in K.vertices:
        w = A(v)
        projection[v] = min(v, w, key=natural_key)
    section = {q: q for q in set(projection.values())}
    images = {frozenset(projection[v] for v in K.names(f)) for f in K.facets}
    Q = SimplicialComplex(images, f"{K.name}/T" if K.name else "X/T")
    return QuotientData(E, Q, projection, section, subdivided)


# ------------------------------------------------------- characteristic class


@dataclass(frozen=True, eq=False)
class CharacteristicCocycle:
    quotient: QuotientData
    w: Cochain

    @property
    def broken_edges(self) -> list[list[str]]:
        """Quotient edges whose lifted endpoints are not joined in X."""
        return self.w.support_names()


def characteristic_cocycle(X, A=None, *, qd: Optional[QuotientData] = None,
                           verify: bool = True) -> CharacteristicCocycle:
    """``w(uv) = 1`` iff the lifts of u and v do not span an edge of X."""
    if qd is None:
        qd = quotient(X, A)
    Q = qd.complex
    K = qd.source.complex
    lift = qd.section
    bits = 0
    for j, (u, v) in enumerate(Q.simplices(1)):
        a, b = lift[Q.vertices[u]], lift[Q.vertices[v]]
        if not K.has_simplex((K.index[a], K.index[b])):
            bits |= 1 << j
    w = Cochain(Q, 1, bits, GF2)
    if verify and not is_cocycle(w):
        raise InternalInconsistencyError("characteristic cochain fails the cocycle condition")
    return CharacteristicCocycle(qd, w)


@dataclass(frozen=True, eq=False)
class IndexReport:
    """``hind2`` with witness cocycles ``w, w^2, ..., w^hind2`` on the quotient."""

    hind2: int
    witnesses: tuple[Cochain, ...]
    first_vanishing_power: int
    characteristic: CharacteristicCocycle
    dim: int

    @property
    def quotient(self) -> QuotientData:
        return self.characteristic.quotient


def hind2(X, A=None, *, verify: bool = True) -> IndexReport:
    E = _equivariant(X, A)
    cc = characteristic_cocycle(E, verify=verify)
    Q = cc.quotient.complex
    w = cc.w
    witnesses: list[Cochain] = []
    power = w
    n = 1
    while n <= Q.dim:
        if class_is_zero(Q, power):
            break
        witnesses.append(power)
        n += 1
        if n > Q.dim:
            break
        power = cup(Q, power, w, verify=verify)
    index = len(witnesses)
    if index > E.dim:
        raise InternalInconsistencyError(f"index {index} exceeds dimension {E.dim}")
    return IndexReport(index, tuple(witnesses), index + 1, cc, E.dim)


# --------------------------------------------------------------- certificates


@dataclass(frozen=True, eq=False)
class ButCertificate:
    """Bounds ``tind_lower <= tind <= tind_upper`` and per-n BUT verdicts.

    ``equivalence_applied`` is ``"almost_pseudomanifold"`` (closed almost
    pseudomanifold: tind = dim iff hind2 = dim), ``"prop31"`` (elementary
    2-primary top cohomology of the quotient, or of the suspension quotient in
    odd dimension) or None.
    """

    hind2: int
    dim: int
    tind_lower: int
    tind_upper: int
    equivalence_applied: Optional[str]
    prop31_applicable: bool
    pseudomanifold: PseudomanifoldReport
    index: IndexReport
    notes: tuple[str, ...] = field(default=())

    def verdict(self, n: int) -> str:
        if n <= self.tind_lower:
            return "yes"
        if n > self.tind_upper:
            return "no"
        return "unknown"

    @property
    def verdicts(self) -> dict[int, str]:
        return {n: self.verdict(n) for n in range(self.dim + 1)}

    @property
    def is_but_dim(self) -> Optional[bool]:
        v = self.verdict(self.dim)
        return None if v == "unknown" else v == "yes"


def top_cohomology_elementary(E: EquivariantComplex) -> tuple[bool, str]:
    """Elementary-2-group test on ``H^n(X/T)`` (n even) or ``H^(n+1)(SX/T)`` (n odd)."""
    n = E.dim
    if n % 2 == 0:
        Q = quotient(E).complex
        group = integer_cohomology(Q, n) if Q.dim >= n else None
        where = f"H^{n}(X/T;Z)"
    else:
        Q = quotient(suspension(E)).complex
        group = integer_cohomology(Q, n + 1) if Q.dim >= n + 1 else None
        where = f"H^{n + 1}(SX/T;Z)"
    if group is None:
        return True, f"{where} = 0"
    return two_primary_elementary(group.torsion), f"{where} = {group}"


def but_certificate(X, A=None, *, verify: bool = True) -> ButCertificate:
    E = _equivariant(X, A)
    report = hind2(E, verify=verify)
    h, dim = report.hind2, E.dim
    pm = classify_pseudomanifold(E.complex)
    notes = []
    prop31, where = top_cohomology_elementary(E)
    notes.append(f"2-primary part of {where} is {'elementary' if prop31 else 'not elementary'}")
    equivalence = None
    if pm.is_almost_pseudomanifold and pm.is_closed:
        equivalence = "almost_pseudomanifold"
    elif prop31:
        equivalence = "prop31"
    upper = dim
    if equivalence is not None and h < dim:
        upper = dim - 1
        notes.append(f"hind2 = {h} < dim = {dim}: not BUT_{dim} ({equivalence})")
    if h == dim:
        notes.append(f"hind2 = dim = {dim}: BUT_{dim} certified")
    return ButCertificate(h, dim, h, upper, equivalence, prop31, pm, report, tuple(notes))


@dataclass(frozen=True, eq=False)
class RelativeHypothesisReport:
    """Whether ``hind(X) >= d-1`` and ``i^* = 0`` on ``H^(d-1)`` both hold.

    For integer coefficients the index condition is only certified through
    ``hind2`` (which bounds the integer index from below); ``index_ok`` is
    None when that bound is inconclusive.
    """

    holds: bool
    coeff: Coeff
    d: int
    hind2: int
    index_ok: Optional[bool]
    restriction_trivial: bool
    notes: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def relative_hypothesis(X, Z: SimplicialComplex, d: int, coeff: Coeff = GF2, A=None, *,
                        verify: bool = True) -> RelativeHypothesisReport:
    E = _equivariant(X, A)
    h = hind2(E, verify=verify).hind2
    trivial = True
    if d - 1 >= 0:
        trivial = induced_map(inclusion(E.complex, Z), d - 1, coeff).is_trivial
    notes = []
    if coeff == GF2:
        index_ok: Optional[bool] = h >= d - 1
    elif coeff == INT:
        index_ok = True if h >= d - 1 else None
        if index_ok is None:
            notes.append("integer index not computed; hind2 bound inconclusive")
    else:
        raise ValueError(f"unknown coefficient system {coeff!r}")
    holds = bool(index_ok) and trivial
    return RelativeHypothesisReport(holds, coeff, d, h, index_ok, trivial, tuple(notes))
