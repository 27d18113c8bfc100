"""Small named complexes used by the tests, the acceptance suite and the CLI."""

from __future__ import annotations

from .complex import (
    EquivariantComplex,
    SimplicialComplex,
    SimplicialMap,
    check_free_involution,
    check_simplicial_map,
    equivariant,
)
from .constructions import barycentric_subdivision, cross_polytope_sphere


def cycle(n: int, prefix: str = "v", name: str = "") -> SimplicialComplex:
    return SimplicialComplex([[f"{prefix}{i}", f"{prefix}{(i + 1) % n}"] for i in range(n)],
                             name or f"C{n}")


def cycle_with_half_turn(n: int, prefix: str = "v", name: str = "") -> EquivariantComplex:
    if n % 2 or n < 4:
        raise ValueError("half-turn needs an even cycle of length >= 4")
    K = cycle(n, prefix, name)
    A = {f"{prefix}{i}": f"{prefix}{(i + n // 2) % n}" for i in range(n)}
    return EquivariantComplex(K, check_free_involution(K, A))


def hexagon() -> EquivariantComplex:
    """Six-cycle ``v0..v5`` with the half-turn ``v_i -> v_(i+3)``."""
    return cycle_with_half_turn(6, "v", "hexagon")


def octahedron() -> EquivariantComplex:
    return cross_polytope_sphere(2)


def square() -> EquivariantComplex:
    return cross_polytope_sphere(1)


def sd_square() -> EquivariantComplex:
    """The 8-cycle obtained by subdividing the square once."""
    return barycentric_subdivision(square())


def boundary_tetrahedron() -> SimplicialComplex:
    return SimplicialComplex([[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]], "dT")


def seven_vertex_torus() -> SimplicialComplex:
    """The minimal (Moebius-Csaszar) torus on vertices 0..6."""
    facets = [[i, (i + 1) % 7, (i + 3) % 7] for i in range(7)]
    facets += [[i, (i + 2) % 7, (i + 3) % 7] for i in range(7)]
    return SimplicialComplex(facets, "T7")


def minimal_rp2() -> SimplicialComplex:
    return SimplicialComplex([[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
                              [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6]], "RP2")


def _grid_name(i: int, j: int) -> str:
    return f"x{i}y{j}"


def grid_torus(a: int = 4, b: int = 3) -> EquivariantComplex:
    """``a x b`` grid torus with the half-period translation ``(i, j) -> (i + a/2, j)``."""
    if a % 2 or a < 4 or b < 3:
        raise ValueError("need even a >= 4 and b >= 3")
    facets = []
    for i in range(a):
        for j in range(b):
            p, q = (i + 1) % a, (j + 1) % b
            facets.append([_grid_name(i, j), _grid_name(p, j), _grid_name(p, q)])
            facets.append([_grid_name(i, j), _grid_name(i, q), _grid_name(p, q)])
    K = SimplicialComplex(facets, f"torus{a}x{b}")
    A = {_grid_name(i, j): _grid_name((i + a // 2) % a, j) for i in range(a) for j in range(b)}
    return EquivariantComplex(K, check_free_involution(K, A))


def torus_to_square(T: EquivariantComplex, S: EquivariantComplex | None = None) -> SimplicialMap:
    """Equivariant map sending column i of the 4 x b grid torus around the square.

    The square may be the equator ``+-e1, +-e2`` of a larger cross-polytope,
    in which case the map collapses every triangle.
    """
    S = S or square()
    around = ["+e1", "+e2", "-e1", "-e2"]
    f = {}
    for v in T.complex.vertices:
        i = int(v[1:v.index("y")])
        f[v] = around[i % 4]
    return check_simplicial_map(f, T.complex, S.complex, equivariant_on=(T.involution, S.involution))


def triple_wrap() -> tuple[SimplicialMap, EquivariantComplex, EquivariantComplex]:
    """The degree-3 map from the 18-gon onto the hexagon, ``u_k -> v_(k mod 6)``.

    Equivariant for the half-turns on both cycles.
    """
    src = cycle_with_half_turn(18, "u", "C18")
    tgt = hexagon()
    f = {f"u{k}": f"v{k % 6}" for k in range(18)}
    m = check_simplicial_map(f, src.complex, tgt.complex,
                             equivariant_on=(src.involution, tgt.involution))
    return m, src, tgt


def cone_over_hexagon() -> SimplicialComplex:
    return SimplicialComplex([[f"v{i}", f"v{(i + 1) % 6}", "c"] for i in range(6)], "cone")


def hexagon_disk() -> SimplicialComplex:
    """A 19-vertex disk: centre ``c``, rings ``a0..a5``, ``b0..b5`` and boundary ``v0..v5``."""
    rings = ["a", "b", "v"]
    facets = [["c", f"a{k}", f"a{(k + 1) % 6}"] for k in range(6)]
    for inner, outer in zip(rings, rings[1:]):
        for k in range(6):
            k1 = (k + 1) % 6
            facets.append([f"{inner}{k}", f"{inner}{k1}", f"{outer}{k}"])
            facets.append([f"{outer}{k}", f"{outer}{k1}", f"{inner}{k1}"])
    return SimplicialComplex(facets, "disk19")


def two_swapped_triangles() -> EquivariantComplex:
    return equivariant([["a1", "a2", "a3"], ["b1", "b2", "b3"]],
                       {"a1": "b1", "a2": "b2", "a3": "b3",
                        "b1": "a1", "b2": "a2", "b3": "a3"}, "2T")
