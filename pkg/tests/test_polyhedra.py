from __future__ import annotations

from itertools import product

import pytest

from toric_deform.errors import (
    DimensionMismatchError,
    EmptyConeError,
    GuardExceededError,
    InputError,
    NotAPolygonError,
)
from toric_deform.lattice import LatticeMatrix, dot, primitive, rational_solve
from toric_deform.limits import ComputationLimits
from toric_deform.polyhedra import (
    ConeDesc,
    PolytopeDesc,
    cayley_cone,
    cone_from_inequalities,
    facets_of_cone,
    intersect_cones,
    lattice_points,
    minkowski_decompose,
    minkowski_sum,
    minkowski_sum_all,
    restrict_to_sublattice,
)

from toric_deform.terminalize import pulling_triangulation

from conftest import hexagon_rays


def test_cone_canonical_form():
    cone = ConeDesc.from_rays([(2, 0), (0, 3), (1, 0)])
    assert cone.rays == ((0, 1), (1, 0))
    assert cone.dim == 2
    assert cone.is_simplicial
    assert cone.is_full_dimensional


def test_cone_rejects_bad_input():
    with pytest.raises(EmptyConeError):
        ConeDesc.from_rays([])
    with pytest.raises(InputError):
        ConeDesc.from_rays([(0, 0)])
    with pytest.raises(DimensionMismatchError):
        ConeDesc.from_rays([(1, 0), (1, 0, 0)])


def test_orthant_facets(orthant3):
    assert orthant3.facets == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_facets_of_planar_cone():
    cone = ConeDesc.from_rays([(1, 0), (1, 2)])
    assert set(facets_of_cone(cone)) == {(0, 1), (2, -1)}


def test_hexagon_cone_has_six_facets():
    cone = ConeDesc.from_rays(hexagon_rays(1, 1))
    assert len(cone.facets) == 6
    assert cone.extremal_rays() == cone.rays


def test_lower_dimensional_cone():
    cone = ConeDesc.from_rays([(1, 0, 0), (0, 1, 0)])
    assert cone.dim == 2
    assert not cone.is_full_dimensional
    assert cone.equations == ((0, 0, 1),)
    assert cone.contains((3, 4, 0))
    assert not cone.contains((3, 4, 1))
    assert cone.in_relative_interior((1, 1, 0))
    assert not cone.in_relative_interior((1, 0, 0))


def test_non_extremal_rays_are_dropped():
    cone = ConeDesc.from_rays([(1, 0), (1, 1), (0, 1)])
    assert cone.extremal_rays() == ((0, 1), (1, 0))


def test_rays_facets_rays_round_trip(rng):
    for _ in range(40):
        dim = rng.randint(2, 4)
        rays = [tuple(rng.randint(0, 3) for _ in range(dim - 1)) + (rng.randint(1, 3),) for _ in range(dim + 2)]
        cone = ConeDesc.from_rays(rays)
        if not cone.is_full_dimensional:
            continue
        ricostruito = cone_from_inequalities(cone.facets, dim)
        assert set(ricostruito.rays) == set(cone.extremal_rays())


def test_intersect_cones():
    a = ConeDesc.from_rays([(1, 0), (0, 1)])
    b = ConeDesc.from_rays([(1, 1), (-1, 1)])
    assert intersect_cones(a, b).rays == ((0, 1), (1, 1))
    c = ConeDesc.from_rays([(1, 0), (1, 1)])
    d = ConeDesc.from_rays([(1, 1), (0, 1)])
    assert intersect_cones(c, d).rays == ((1, 1),)


def test_restrict_to_diagonal():
    cone = ConeDesc.from_rays([(1, 0), (0, 1)])
    assert restrict_to_sublattice(cone, [(1, 1)]).rays == ((1,),)
    assert restrict_to_sublattice(cone, [(1, -1)]) is None


def test_polytope_keeps_only_vertices():
    quadrato = PolytopeDesc.from_points([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0)])
    assert quadrato.vertices == ((0, 0), (0, 2), (2, 0), (2, 2))
    assert quadrato.dim == 2
    assert quadrato.contains((1, 1))
    assert not quadrato.contains((3, 1))


def test_lattice_points():
    assert lattice_points(PolytopeDesc.from_points([(0,), (1,)])) == ((0,), (1,))
    triangolo = PolytopeDesc.from_points([(1, 0), (0, 1), (-1, -1)])
    assert set(lattice_points(triangolo)) == {(1, 0), (0, 1), (-1, -1), (0, 0)}
    unimodulare = PolytopeDesc.from_points([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert set(lattice_points(unimodulare)) == set(unimodulare.vertices)


def test_lattice_points_guard():
    grande = PolytopeDesc.from_points([(0, 0), (10, 0), (0, 10)])
    with pytest.raises(GuardExceededError):
        lattice_points(grande, ComputationLimits(max_box_points=50))


def test_minkowski_sum_of_segments():
    quadrato = minkowski_sum(PolytopeDesc.from_points([(1, 0), (0, 0)]), PolytopeDesc.from_points([(0, 1), (0, 0)]))
    assert quadrato.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_minkowski_sum_with_point_is_translation():
    triangolo = PolytopeDesc.from_points([(0, 0), (1, 0), (0, 1)])
    assert minkowski_sum(triangolo, PolytopeDesc.from_points([(2, -1)])) == triangolo.translate((2, -1))


def test_minkowski_sum_gives_hexagon(flop_summands):
    esagono = minkowski_sum_all(flop_summands(1, 1))
    assert set(esagono.vertices) == {v[:2] for v in hexagon_rays(1, 1)}


def test_minkowski_sum_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        minkowski_sum(PolytopeDesc.from_points([(0,)]), PolytopeDesc.from_points([(0, 0)]))


def test_decompose_hexagon():
    esagono = PolytopeDesc.from_points([v[:2] for v in hexagon_rays(1, 1)])
    decomposizioni = minkowski_decompose(esagono, 3)
    attesa = (((0, 0), (0, 1)), ((0, 0), (1, 0)), ((0, 0), (1, 1)))
    assert attesa in [tuple(s.vertices for s in d) for d in decomposizioni]


def test_decompose_segment():
    decomposizioni = minkowski_decompose(PolytopeDesc.from_points([(0,), (2,)]), 2)
    vertici = [tuple(s.vertices for s in d) for d in decomposizioni]
    assert (((0,), (1,)), ((0,), (1,))) in vertici
    assert (((0,),), ((0,), (2,))) in vertici


def test_decompose_indecomposable_triangle():
    triangolo = PolytopeDesc.from_points([(0, 0), (1, 0), (0, 1)])
    decomposizioni = minkowski_decompose(triangolo, 2)
    assert decomposizioni
    assert all(any(len(s.vertices) == 1 for s in d) for d in decomposizioni)


def test_decompose_rejects_bad_input():
    with pytest.raises(InputError):
        minkowski_decompose(PolytopeDesc.from_points([(0, 0), (1, 0)]), 1)
    with pytest.raises(NotAPolygonError):
        minkowski_decompose(PolytopeDesc.from_points([(0, 0, 0), (1, 0, 0)]), 2)


def test_cayley_cone_flop_rays(flop_summands):
    a, b = 2, 3
    cone = cayley_cone(flop_summands(a, b), 3)
    assert set(cone.rays) == {
        (1, 0, 1, 0, 0),
        (0, 0, 1, 0, 0),
        (0, 1, 0, 1, 0),
        (0, 0, 0, 1, 0),
        (-a, -b, 0, 0, 1),
        (0, 0, 0, 0, 1),
    }


def test_cayley_cone_dimension_check(flop_summands):
    with pytest.raises(DimensionMismatchError):
        cayley_cone(flop_summands(1, 1), 4)


def test_serialization_round_trip():
    cone = ConeDesc.from_rays(hexagon_rays(2, 3))
    assert ConeDesc.from_dict(cone.to_dict()) == cone
    poligono = PolytopeDesc.from_points([(0, 0), (2, 0), (0, 1)])
    assert PolytopeDesc.from_dict(poligono.to_dict()) == poligono


def _random_polytope(rng):
    dim = rng.randint(1, 4)
    punti = [tuple(rng.randint(0, 6) for _ in range(dim)) for _ in range(rng.randint(1, dim + 2))]
    return PolytopeDesc.from_points(punti, dim)


def _scan_by_facets(polytope):
    cono = polytope.cone_over
    intervalli = [
        range(min(v[i] for v in polytope.vertices), max(v[i] for v in polytope.vertices) + 1)
        for i in range(polytope.ambient_dim)
    ]
    trovati = []
    for p in product(*intervalli):
        sollevato = p + (1,)
        if all(dot(e, sollevato) == 0 for e in cono.equations) and all(dot(f, sollevato) >= 0 for f in cono.facets):
            trovati.append(p)
    return tuple(trovati)


def _in_some_cell(cells, point):
    for cella in cells:
        coefficienti = rational_solve(LatticeMatrix.from_columns(cella.rays, len(point)), point)
        if coefficienti is not None and all(c >= 0 for c in coefficienti):
            return True
    return False


def test_lattice_points_match_facet_scan(rng):
    for _ in range(30):
        politopo = _random_polytope(rng)
        punti = lattice_points(politopo)
        assert punti == _scan_by_facets(politopo)
        assert set(politopo.vertices) <= set(punti)
        celle = pulling_triangulation(politopo.cone_over).cells
        assert all(_in_some_cell(celle, p + (1,)) for p in punti)


def _edge_normals(polygon):
    return {primitive(f[:2]) for f in polygon.cone_over.facets}


def test_minkowski_sum_normals_are_union(rng):
    confrontati = 0
    for _ in range(40):
        p = PolytopeDesc.from_points([(rng.randint(0, 5), rng.randint(0, 5)) for _ in range(rng.randint(3, 5))], 2)
        q = PolytopeDesc.from_points([(rng.randint(0, 5), rng.randint(0, 5)) for _ in range(rng.randint(3, 5))], 2)
        if p.dim < 2 or q.dim < 2:
            continue
        confrontati += 1
        somma = minkowski_sum(p, q)
        assert _edge_normals(somma) == _edge_normals(p) | _edge_normals(q)
        assert set(somma.vertices) <= {tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices}
    assert confrontati >= 10
