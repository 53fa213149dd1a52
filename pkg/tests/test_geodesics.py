import random
from fractions import Fraction

import pytest

from cvn.errors import (
    NotAGeodesic,
    NotMaximalSimplex,
    ParamOutOfRange,
    RankMismatch,
    Unsupported,
)
from cvn.geodesics import (
    GeodesicPath,
    check_gluing,
    general_position,
    is_rigid,
    local_geodesic_approximation,
    on_geodesic,
    piecewise_rigid_geodesic,
    ray_dimension_audit,
)
from cvn.graphs import (
    point_from_coords,
    rose_point,
    theta_point,
    theta_type,
    twisted_theta_point,
)
from cvn.metric import is_witness, same_point, stretch, stretch_report
from cvn.sampling import random_point
from cvn.words import conj_class


def CC(letters):
    return conj_class(letters, 2)


def _segment_point(a, b, t):
    coords = tuple((1 - t) * x + t * y for x, y in zip(a.lengths, b.lengths))
    return point_from_coords(a.ttype, coords)


def test_on_geodesic_straight_segment():
    a = theta_point(1, 2, 4)
    b = theta_point(4, 2, 1)
    for k in range(1, 8):
        c = _segment_point(a, b, Fraction(k, 8))
        assert on_geodesic(a, c, b)


def test_on_geodesic_endpoints():
    a = theta_point(1, 2, 4)
    b = theta_point(4, 2, 1)
    assert on_geodesic(a, a, b)
    assert on_geodesic(a, b, b)


def test_on_geodesic_rank_mismatch():
    with pytest.raises(RankMismatch):
        on_geodesic(rose_point([1, 1]), rose_point([1, 1]),
                    rose_point([1, 1, 1]))


def test_on_geodesic_directed_disagreement():
    # two oppositely twisted thetas around a figure-eight: the middle rose
    # point can sit on a one-way geodesic only
    eps = Fraction(1, 10)
    delta = Fraction(1, 50)
    a_len = Fraction(1, 2)
    a = theta_point(a_len + delta, eps, 1 - (a_len + delta) - eps)
    c = twisted_theta_point(a_len - delta, eps, 1 - (a_len - delta) - eps)
    found_both = False
    for k in range(1, 40):
        alpha = Fraction(k, 40)
        b = rose_point([alpha, 1 - alpha])
        if on_geodesic(a, b, c) and on_geodesic(c, b, a):
            found_both = True
    assert not found_both


def test_gluing_matches_on_geodesic():
    rng = random.Random(17)
    hits = 0
    for _ in range(60):
        a = random_point(2, rng)
        c = random_point(2, rng)
        b = random_point(2, rng)
        og = on_geodesic(a, c, b)
        shared = check_gluing(a, c, b)
        assert og == bool(shared)
        hits += og
    assert hits < 10  # random middle points rarely land on a geodesic


def test_gluing_on_straight_segment_witnesses():
    a = theta_point(1, 1, 1)
    b = theta_point(2, 1, 1)
    c = _segment_point(a, b, Fraction(1, 2))
    shared = check_gluing(a, c, b)
    assert CC([1]) in shared and CC([1, -2]) in shared


def test_closed_triangle_glues_pairwise():
    a = theta_point(1, 1, 1)
    b = theta_point(2, 1, 1)
    c = theta_point(1, Fraction(1, 3), 1)
    assert CC([1, -2]) in check_gluing(a, b, c)
    assert CC([2]) in check_gluing(b, c, a)
    assert CC([1]) in check_gluing(c, a, b)


def test_walker_same_point():
    a = theta_point(1, 2, 4)
    path = piecewise_rigid_geodesic(a, a)
    assert path.breakpoints == (a,)
    assert path.segment_witnesses == ()


def test_walker_two_phase_quadrilateral():
    # hand-checked polygon: the envelope is a quadrilateral and the walk
    # turns at the vertex where a second class reaches maximal stretch
    a = theta_point(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    b = theta_point(Fraction(1, 2), Fraction(1, 3), Fraction(1, 6))
    path = piecewise_rigid_geodesic(a, b)
    assert [p.lengths for p in path.breakpoints] == [
        a.lengths,
        (Fraction(2, 7), Fraction(3, 7), Fraction(2, 7)),
        b.lengths,
    ]
    assert path.rigid_segments == (0, 1, 2)
    mid = path.breakpoints[1]
    assert stretch(a, b) == stretch(a, mid) * stretch(mid, b)


def test_walker_single_segment_to_envelope_vertex():
    a = theta_point(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    b = point_from_coords(
        theta_type(), (Fraction(2, 7), Fraction(3, 7), Fraction(2, 7))
    )
    path = piecewise_rigid_geodesic(a, b)
    assert len(path.breakpoints) == 2
    assert path.rigid_segments == (0, 1)


def test_walker_cross_simplex():
    eps = Fraction(1, 10)
    a = theta_point(Fraction(45, 100), eps, Fraction(45, 100))
    b = twisted_theta_point(Fraction(40, 100), eps, Fraction(50, 100))
    path = piecewise_rigid_geodesic(a, b)
    assert same_point(path.breakpoints[-1], b)
    sizes = {len(p.ttype.edges) for p in path.breakpoints}
    assert 2 in sizes  # passes through the rose face
    lam = stretch(a, b)
    acc = Fraction(1)
    for u, v in zip(path.breakpoints, path.breakpoints[1:]):
        acc *= stretch(u, v)
    assert acc == lam


def test_walker_witness_persistence():
    rng = random.Random(5)
    for _ in range(6):
        a = theta_point(*[rng.randint(2, 9) for _ in range(3)])
        b = theta_point(*[rng.randint(2, 9) for _ in range(3)])
        if same_point(a, b):
            continue
        path = piecewise_rigid_geodesic(a, b)
        cw = stretch_report(a, b).candidate_witnesses
        for c in path.breakpoints[1:-1]:
            for g in cw:
                assert is_witness(g, a, c)
                assert is_witness(g, c, b)
        for w in path.segment_witnesses:
            assert w


def test_walker_triple_multiplicativity():
    rng = random.Random(11)
    for _ in range(4):
        a = theta_point(*[rng.randint(2, 9) for _ in range(3)])
        b = theta_point(*[rng.randint(2, 9) for _ in range(3)])
        if same_point(a, b):
            continue
        pts = piecewise_rigid_geodesic(a, b).breakpoints
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                for k in range(j + 1, len(pts)):
                    assert stretch(pts[i], pts[k]) == stretch(
                        pts[i], pts[j]
                    ) * stretch(pts[j], pts[k])


def test_is_rigid_envelope_edge():
    a = theta_point(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    b = point_from_coords(
        theta_type(), (Fraction(2, 7), Fraction(3, 7), Fraction(2, 7))
    )
    path = piecewise_rigid_geodesic(a, b)
    assert is_rigid(path)


def test_is_rigid_fails_for_interior_chord():
    a = theta_point(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    b = theta_point(Fraction(1, 2), Fraction(1, 3), Fraction(1, 6))
    mid = _segment_point(a, b, Fraction(1, 2))
    chord = GeodesicPath(
        (a, mid, b),
        (stretch_report(a, mid).candidate_witnesses,
         stretch_report(mid, b).candidate_witnesses),
        (0, 2),
    )
    assert not is_rigid(chord)


def test_is_rigid_rejects_non_geodesic():
    a = theta_point(7, 7, 1)
    mid = theta_point(5, 9, 8)
    b = theta_point(7, 5, 8)
    assert not on_geodesic(a, mid, b)
    bogus = GeodesicPath((a, mid, b), (frozenset(), frozenset()), (0, 2))
    with pytest.raises(NotAGeodesic):
        is_rigid(bogus)


def test_general_position_generic_pair():
    ok, cert = general_position(theta_point(1, 2, 4), theta_point(5, 3, 2))
    assert ok
    assert cert.gamma in stretch_report(
        theta_point(1, 2, 4), theta_point(5, 3, 2)
    ).candidate_witnesses
    assert cert.strict


def test_general_position_same_point_false():
    a = theta_point(1, 2, 4)
    ok, cert = general_position(a, a)
    assert not ok and cert is None


def test_general_position_tied_pair_false():
    a = theta_point(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    b = theta_point(Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
    ok, _ = general_position(a, b)
    assert not ok


def test_general_position_sides_agree():
    rng = random.Random(29)
    for _ in range(15):
        a = theta_point(*[rng.randint(1, 9) for _ in range(3)])
        b = theta_point(*[rng.randint(1, 9) for _ in range(3)])
        assert general_position(a, b)[0] == general_position(a, b, "in")[0]


def test_general_position_needs_maximal_simplex():
    with pytest.raises(NotMaximalSimplex):
        general_position(rose_point([1, 1]), theta_point(1, 2, 4))


def test_general_position_stable_under_perturbation():
    rng = random.Random(31)
    a = theta_point(7, 5, 3)
    b = theta_point(2, 5, 9)
    assert general_position(a, b)[0]
    cw = stretch_report(a, b).candidate_witnesses
    for _ in range(8):
        bump = [Fraction(rng.randint(-1, 1), 1000) for _ in range(3)]
        a2 = theta_point(*[q + d for q, d in zip(a.lengths, bump)])
        b2 = theta_point(*[q - d for q, d in zip(b.lengths, bump)])
        assert stretch_report(a2, b2).candidate_witnesses == cw


def test_local_approximation_geodesic_unchanged():
    a = theta_point(1, 1, 1)
    b = theta_point(2, 1, 1)
    mid = _segment_point(a, b, Fraction(1, 2))
    path = local_geodesic_approximation([a, mid, b], Fraction(2))
    assert [p.lengths for p in path.breakpoints] == [
        a.lengths, mid.lengths, b.lengths
    ]


def test_local_approximation_closed_triangle():
    a = theta_point(1, 1, 1)
    b = theta_point(2, 1, 1)
    c = theta_point(1, Fraction(1, 3), 1)
    path = local_geodesic_approximation([a, b, c, a], Fraction(2))
    pts = path.breakpoints
    assert [p.lengths for p in pts] == [
        a.lengths, b.lengths, c.lengths, a.lengths
    ]
    for p, q, r in zip(pts, pts[1:], pts[2:]):
        assert check_gluing(p, q, r)


def test_local_approximation_inserts_detour():
    # out and straight back: the turnaround needs a face-jumping detour
    a = theta_point(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    b = theta_point(Fraction(1, 2), Fraction(1, 3), Fraction(1, 6))
    path = local_geodesic_approximation([a, b, a], Fraction(2))
    pts = path.breakpoints
    assert len(pts) > 3
    for p, q, r in zip(pts, pts[1:], pts[2:]):
        assert check_gluing(p, q, r)


def test_local_approximation_guards():
    with pytest.raises(Unsupported):
        local_geodesic_approximation(
            [random_point(3, random.Random(1)),
             random_point(3, random.Random(2))], Fraction(2))
    with pytest.raises(ParamOutOfRange):
        local_geodesic_approximation([theta_point(1, 1, 1)], Fraction(1))
    with pytest.raises(ParamOutOfRange):
        local_geodesic_approximation(
            [theta_point(1, 1, 1), theta_point(9, 1, 1)], Fraction(1, 1000))


def test_ray_audit_figure_eight():
    a = rose_point([Fraction(5, 8), Fraction(3, 8)])
    audit = ray_dimension_audit(a, [CC([1]), CC([2])], 2)
    assert audit.crossings[-1] == 2
    # crossings land on figure eights with drifting rational lengths
    eights = [p for p in audit.points if len(p.ttype.edges) == 2]
    assert len(eights) >= 3
    assert sorted(eights[1].lengths) == [Fraction(2, 5), Fraction(3, 5)]
    for (i, j), d in audit.dims.items():
        if i >= 1:
            assert d == 1
    assert audit.stable_from <= 1


def test_ray_audit_rank_guard():
    with pytest.raises(Unsupported):
        ray_dimension_audit(
            random_point(3, random.Random(3)), [conj_class([1], 3)], 1
        )
