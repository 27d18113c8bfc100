from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import equivariant_corpus
from yangdex import catalog
from yangdex.complex import SimplicialComplex
from yangdex.constructions import barycentric_subdivision, cross_polytope_sphere
from yangdex.degree import axis_projection, pl_zeros
from yangdex.errors import (
    BadPairingError,
    HasComplementaryEdgeError,
    NoWitnessError,
    NotACoverError,
    NotAntipodalError,
    WrongAlphabetError,
)
from yangdex.lemmas import (
    CoverFamily,
    PointConfiguration,
    complementary_edges,
    cover_check,
    fan_simplices,
    is_alternating,
    kakutani_pl_zero,
    labeling,
    pn_witness,
    shashkin_count,
)


def identity_labels(E):
    return {v: int(v[2:]) * (1 if v[0] == "+" else -1) for v in E.complex.vertices}


def antipodal_labelings(E, m):
    reps = [E.complex.vertices[v] for v in E.involution.representatives()]
    alphabet = [s * k for k in range(1, m + 1) for s in (1, -1)]
    for choice in itertools.product(alphabet, repeat=len(reps)):
        lab = {}
        for v, x in zip(reps, choice):
            lab[v], lab[E.involution(v)] = x, -x
        yield lab


def test_labeling_validation():
    E = catalog.octahedron()
    lab = identity_labels(E)
    with pytest.raises(WrongAlphabetError):
        labeling(E.complex, lab, 2, E.involution)
    bad = dict(lab, **{"-e1": 1})
    with pytest.raises(NotAntipodalError):
        labeling(E.complex, bad, 3, E.involution)


def test_tucker_examples():
    H = catalog.hexagon()
    for lab in antipodal_labelings(H, 1):
        assert complementary_edges(labeling(H.complex, lab, 1, H.involution))
    E = catalog.octahedron()
    assert complementary_edges(labeling(E.complex, identity_labels(E), 3, E.involution)) == []


def test_fan_examples():
    S = catalog.square()
    L = labeling(S.complex, identity_labels(S), 2, S.involution)
    simplices = fan_simplices(L)
    assert len(simplices) == 1
    assert sorted(L.labels[v] for v in simplices[0]) == [-2, 1]
    E = catalog.octahedron()
    L = labeling(E.complex, identity_labels(E), 3, E.involution)
    labs = {tuple(sorted((L.labels[v] for v in s), key=abs)) for s in fan_simplices(L)}
    assert (1, -2, 3) in labs
    H = catalog.hexagon()
    L = labeling(H.complex, {f"v{i}": (1 if i < 3 else -1) for i in range(6)}, 1, H.involution)
    with pytest.raises(HasComplementaryEdgeError):
        fan_simplices(L)


def test_alternation():
    assert is_alternating([1, -2, 3]) and is_alternating([-2, 1])
    assert not is_alternating([-1, 2]) and is_alternating([-1, 2], either_sign=True)
    assert not is_alternating([1, 2]) and not is_alternating([1, -1])


def test_shashkin_examples():
    E = catalog.octahedron()
    L = labeling(E.complex, identity_labels(E), 3, E.involution)
    r = shashkin_count(L, [1, 2, 3])
    assert r.count == 1 and r.odd and set(r.simplices[0]) == {"+e1", "+e2", "+e3"}
    r = shashkin_count(L, [1, -2, 3])
    assert r.count == 1 and set(r.simplices[0]) == {"+e1", "-e2", "+e3"}
    assert shashkin_count(L, [1, -2, 3], include_negation=True).count == 2
    with pytest.raises(WrongAlphabetError):
        shashkin_count(L, [1, 1, 3])


def test_pn_examples():
    S = catalog.square()
    L = labeling(S.complex, identity_labels(S), 2, S.involution)
    w = pn_witness(L, PointConfiguration.from_positive([[1], [2]]))
    assert sorted(w.labels) == [-2, 1]
    weights = dict(zip(w.labels, w.weights))
    assert weights == {1: Fraction(2, 3), -2: Fraction(1, 3)}
    T = catalog.two_swapped_triangles()
    lab = {v: (1 if v.startswith("a") else -1) for v in T.complex.vertices}
    L = labeling(T.complex, lab, 1, T.involution)
    with pytest.raises(NoWitnessError):
        pn_witness(L, PointConfiguration.from_positive([[1]]))
    with pytest.raises(BadPairingError):
        PointConfiguration.of({1: (1,), -1: (1,)})


def test_pn_implies_tucker_on_octahedron():
    E = catalog.octahedron()
    P = PointConfiguration.from_positive([[1, 0], [0, 1]])
    for lab in antipodal_labelings(E, 2):
        L = labeling(E.complex, lab, 2, E.involution)
        w = pn_witness(L, P)
        assert any(a == -b for a, b in itertools.combinations(w.labels, 2))


def test_ls_covers_of_octahedron_exhaustive():
    E = catalog.octahedron()
    K = E.complex
    facets = K.facet_names()
    for assign in itertools.product(range(3), repeat=len(facets)):
        members = []
        for i in range(3):
            fs = [f for f, a in zip(facets, assign) if a == i]
            members.append(SimplicialComplex(fs, allow_empty=True))
        w = cover_check(E, CoverFamily("ls", tuple(members)))
        assert w.image == (E.involution(w.simplex[0]),)


def _hexagon_halves(H):
    K = H.complex
    c1 = K.subcomplex([["v0", "v1"], ["v1", "v2"], ["v2", "v3"]])
    c2 = K.subcomplex([["v3", "v4"], ["v4", "v5"], ["v5", "v0"]])
    return c1, c2


def test_t_cover_examples():
    H = catalog.hexagon()
    c1, c2 = _hexagon_halves(H)
    w = cover_check(H, CoverFamily("t", (c1, c2), (1, -1)))
    assert w.index == 1
    T = catalog.two_swapped_triangles()
    a = T.complex.subcomplex([["a1", "a2", "a3"]])
    b = T.complex.subcomplex([["b1", "b2", "b3"]])
    with pytest.raises(NoWitnessError):
        cover_check(T, CoverFamily("t", (a, b), (1, -1)))
    with pytest.raises(BadPairingError):
        cover_check(H, CoverFamily("t", (H.complex, c1), (1, -1)))


def test_tb_symmetry():
    H = catalog.hexagon()
    K = H.complex
    C = [K.subcomplex([["v0", "v1"], ["v1", "v2"]]),
         K.subcomplex([["v2", "v3"], ["v3", "v4"]]),
         K.subcomplex([["v4", "v5"], ["v5", "v0"]])]
    for j in (1, 2):
        w = cover_check(H, CoverFamily("tb", tuple(C)), j)
        r = cover_check(H, CoverFamily("tb", tuple(reversed(C))), 3 - j)
        assert set(r.simplex) | set(r.image) == set(w.simplex) | set(w.image)
    with pytest.raises(NotACoverError):
        cover_check(H, CoverFamily("tb", (K, K, K)), 1)


def test_kakutani_examples():
    E = catalog.octahedron()
    h = axis_projection(E)
    w = kakutani_pl_zero(E, h.coords)
    zero_facets = {frozenset(f) for f, _ in pl_zeros(h, E.involution).zeros}
    assert frozenset(w.simplex) in zero_facets
    S0 = cross_polytope_sphere(0)
    with pytest.raises(NoWitnessError):
        kakutani_pl_zero(S0, {"+e1": [Fraction(1, 3)], "-e1": [Fraction(-1, 3)]})
    assert kakutani_pl_zero(S0, {"+e1": [0], "-e1": [0]}).simplex == ("+e1",)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-5, 5).filter(bool), min_size=3, max_size=3))
def test_kakutani_hexagon_always_finds_edge(vals):
    H = catalog.hexagon()
    sel = {}
    for i, x in enumerate(vals):
        sel[f"v{i}"], sel[f"v{i + 3}"] = [x], [-x]
    w = kakutani_pl_zero(H, sel)
    ys = [sel[v][0] for v in w.simplex]
    assert min(ys) <= 0 <= max(ys)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 9), st.sampled_from(["S2", "T7#T7", "dT#dT", "susp_hexagon"]))
def test_tucker_guarantee_sampled(seed, name):
    E = equivariant_corpus()[name]
    rng = random.Random(seed)
    lab = {}
    for v in E.involution.representatives():
        n = E.complex.vertices[v]
        x = rng.choice([1, -1, 2, -2])
        lab[n], lab[E.involution(n)] = x, -x
    assert complementary_edges(labeling(E.complex, lab, 2, E.involution))


def test_shashkin_on_sd_octahedron_sampled():
    E = barycentric_subdivision(catalog.octahedron())
    rng = random.Random(57)
    found = 0
    base = identity_labels(catalog.octahedron())
    for _ in range(300):
        lab = {}
        for v in E.involution.representatives():
            n = E.complex.vertices[v]
            if n in base:
                x = base[n]
            else:
                # barycenters copy the label of a random carrier vertex
                x = base[rng.choice(n.strip("[]").split(","))]
            lab[n], lab[E.involution(n)] = x, -x
        L = labeling(E.complex, lab, 3, E.involution)
        if complementary_edges(L):
            continue
        found += 1
        for pattern in ([1, 2, 3], [-1, 2, -3], [1, -2, -3]):
            assert shashkin_count(L, pattern).odd
    assert found > 0
