import json

import pytest

from dtilde.errors import BadCoordinate, IsProjective, NotAdmissible
from dtilde.quiver_core import delta
from dtilde.rep_core import INFINITY, ZERO, Component, ModuleCoordinate, TubeColor, classify_component
from dtilde.equivalence import (
    MeshSide,
    boundary_arc,
    calibrate,
    corpus,
    curve_to_module,
    expand_mesh,
    module_of,
    module_to_curve,
    tau_coordinate,
    tube_curve,
    verify_intersection_dimension,
)
from dtilde.surface_core import (
    Curve,
    Turn,
    canonical_triangulation,
    crosses_gamma0,
    elementary_moves,
    is_projective_edge,
    rho,
    winding_curve,
)

COLORS = ["0", "1", "inf", "2", "-1"]


def canon(n):
    return canonical_triangulation(n)[0]


def key(coord):
    return json.dumps(None if coord is None else coord.to_json(), sort_keys=True)


@pytest.fixture(scope="module", params=[5, 6, 7])
def setup(request):
    t = canon(request.param)
    return t, corpus(t, 3, 3, COLORS)


def test_p3_curve():
    t = canon(6)
    pair = curve_to_module(rho(t.edge(3), Turn.INVERSE), t)
    assert pair.dim_vector == (0, 0, 1, 1, 1, 1, 1)
    assert pair.coordinate == ModuleCoordinate.preprojective(3, 0)


def test_m0_curve_is_rank_two_regular():
    t = canon(6)
    pair = curve_to_module(Curve(winding_curve(6, 1), (1, 0), ZERO), t)
    assert pair.dim_vector == delta(6)
    c = pair.coordinate
    assert c.component is Component.REGULAR and c.color == ZERO and c.quasi_length == 2


def test_edge_maps_to_zero():
    t = canon(6)
    for e in t.edges:
        pair = curve_to_module(e, t)
        assert pair.coordinate is None
        assert pair.dim_vector[t.index_of(e) - 1] == 0
        assert module_of(t, None).is_zero


def test_module_to_curve_projective_and_infinity_mouth():
    t = canon(6)
    for j in range(1, 8):
        c = module_to_curve(ModuleCoordinate.preprojective(j, 0), t).curve
        assert rho(c) == t.edge(j)
    c = module_to_curve(ModuleCoordinate.regular(INFINITY, 0, 1), t).curve
    assert isinstance(c.start, int) and isinstance(c.end, int)
    assert not crosses_gamma0(c)


def test_bad_coordinates():
    t = canon(6)
    with pytest.raises(BadCoordinate):
        module_to_curve(ModuleCoordinate.preprojective(9, 0), t)
    with pytest.raises(BadCoordinate):
        tube_curve(t, TubeColor.parse("2"), 0, 0)
    with pytest.raises(BadCoordinate):
        calibrate(t, TubeColor.neg_inf())
    from dtilde.surface_core import completion

    with pytest.raises(NotAdmissible):
        curve_to_module(completion(t.edge(1)), t)


def test_round_trip(setup):
    t, curves = setup
    for c in curves:
        pair = curve_to_module(c, t)
        back = module_to_curve(pair.coordinate, t)
        assert back.curve.same(c)
        assert curve_to_module(back.curve, t).coordinate == pair.coordinate


def test_dimension_vectors_match_modules(setup):
    t, curves = setup
    for c in curves:
        pair = curve_to_module(c, t)
        m = module_of(t, pair.coordinate)
        assert m.dims == pair.dim_vector
        assert classify_component(m) == pair.coordinate


def test_rho_commutes_with_tau(setup):
    t, curves = setup
    for c in curves:
        pair = curve_to_module(c, t)
        if is_projective_edge(c, t):
            continue
        left = curve_to_module(rho(c), t).coordinate
        assert left == tau_coordinate(pair.coordinate, t.n)


def test_meshes_agree(setup):
    t, curves = setup
    for c in curves:
        if is_projective_edge(c, t):
            with pytest.raises(IsProjective):
                expand_mesh(c, MeshSide.GEOMETRIC, t)
            continue
        geo = expand_mesh(c, MeshSide.GEOMETRIC, t)
        coord = curve_to_module(c, t).coordinate
        alg = expand_mesh(coord, MeshSide.ALGEBRAIC, t)
        assert 1 <= len(geo.middles) <= 3
        assert key(curve_to_module(geo.left, t).coordinate) == key(alg.left)
        assert sorted(key(curve_to_module(m, t).coordinate) for m in geo.middles) == sorted(key(m) for m in alg.middles)


def test_move_counts_per_case(setup):
    t, curves = setup
    allowed = {1: {2}, 2: {3}, 3: {1}, 4: {1, 2}, 5: {1, 2}, 6: {1, 2}}
    seen = set()
    for c in curves:
        if is_projective_edge(c, t):
            continue
        moves = elementary_moves(c, t)
        cases = {m.case_id for m in moves}
        assert len(cases) == 1
        case = cases.pop()
        seen.add(case)
        assert len(moves) in allowed[case]
    # with three marks every pair of marks is adjacent, so crossing arcs always bound a digon
    assert seen == ({2, 3, 4, 5, 6} if t.n == 5 else {1, 2, 3, 4, 5, 6})


def test_rank_one_mouth_has_single_middle():
    t = canon(6)
    mouth = tube_curve(t, TubeColor.parse("2"), 0, 1)
    assert len(expand_mesh(mouth, MeshSide.GEOMETRIC, t).middles) == 1


def test_boundary_arc_mouths():
    n = 7
    t = canon(n)
    cal = calibrate(t, INFINITY)
    assert cal.rank == n - 2
    for i in range(n - 2):
        c = Curve(boundary_arc(n, i, 1), color=INFINITY)
        assert not crosses_gamma0(c)
        assert curve_to_module(c, t).coordinate.quasi_length == 1


def test_harness_small():
    report = verify_intersection_dimension(6, 2, 2, ["0", "inf", "2"])
    assert report.ok, report.failures
    assert report.pairs_checked > 0
    data = report.to_json()
    assert set(data) == {"params", "pairs_checked", "failures", "elapsed_ms"}
