import itertools
import random
from fractions import Fraction

import pytest

from cvn.errors import DimensionMismatch, Infeasible
from cvn.polytope import (
    HalfSpace,
    Polytope,
    affine_rank,
    equality,
    feasible,
)


def H(*coeffs):
    return HalfSpace.make(coeffs, ("test",))


def test_empty_system_feasible():
    assert feasible([], 3)
    assert feasible([], 1)


def test_contradictory_halfspaces_infeasible():
    # x1 - x2 >= 0 and x2 - x1 >= x1 + x2 (i.e. 2x2 <= 0 with x2 >= x1)
    # simplest contradiction: x1 >= x2 and x2 >= x1 + (x1+x2) fails unless 0
    a = H(1, -1)
    b = H(-3, 1)  # x2 >= 3 x1, combined with x1 >= x2 forces x1 = x2 = 0
    assert not feasible([a, b], 2)


def test_generic_halfspace_feasible():
    assert feasible([H(1, -1, 0)], 3)
    assert feasible([H(-1, 2, 2)], 3)


def test_degenerate_constraints_ignored():
    assert feasible([HalfSpace.make((0, 0, 0), ("z",))], 3)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        feasible([H(1, -1)], 3)
    with pytest.raises(DimensionMismatch):
        Polytope(3, [H(1, -1)])


def test_full_simplex_vertices():
    p = Polytope(3, [])
    assert p.vertices == (
        (0, 0, 1),
        (0, 1, 0),
        (1, 0, 0),
    )
    assert p.dim == 2
    assert len(p.skeleton_edges) == 3


def test_halfspace_cut_vertices():
    p = Polytope(3, [H(1, -1, 0)])  # x1 >= x2
    # cut triangle: (1,0,0), (0,0,1) and the midpoint where the plane
    # x1 = x2 crosses the bottom edge
    assert set(p.vertices) == {
        (Fraction(1), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(1)),
        (Fraction(1, 2), Fraction(1, 2), Fraction(0)),
    }
    assert p.dim == 2


def test_equality_segment():
    p = Polytope(3, equality((1, -1, 0), ("eq",)))  # x1 = x2
    assert set(p.vertices) == {
        (Fraction(1, 2), Fraction(1, 2), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(1)),
    }
    assert p.dim == 1
    assert p.skeleton_edges == ((0, 1),)


def test_point_polytope():
    hs = equality((1, -1, 0), ("a",)) + equality((0, 1, -1), ("b",))
    p = Polytope(3, hs)
    assert p.vertices == ((Fraction(1, 3),) * 3,)
    assert p.dim == 0
    assert p.skeleton_edges == ()


def test_infeasible_polytope():
    p = Polytope(2, [H(1, -1), H(-3, 1)])
    assert p.vertices == ()
    assert p.dim == -1
    assert not p.is_feasible()
    with pytest.raises(Infeasible):
        p.skeleton_edges


def test_feasible_matches_vertex_enumeration():
    rng = random.Random(23)
    for _ in range(60):
        d = rng.choice([2, 3, 4])
        hs = [
            H(*[Fraction(rng.randint(-3, 3)) for _ in range(d)])
            for _ in range(rng.randint(1, 4))
        ]
        p = Polytope(d, hs)
        assert feasible(hs, d) == (len(p.vertices) > 0)


def test_membership_closed_and_interior():
    p = Polytope(3, [H(1, -1, 0)])
    bary = (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    assert p.contains(bary, "closed")
    # barycenter is on the cutting plane x1 = x2: not relative interior
    assert not p.contains(bary, "relative-interior")
    inside = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
    assert p.contains(inside, "relative-interior")
    outside = (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4))
    assert not p.contains(outside, "closed")


def test_membership_vertex_not_interior():
    p = Polytope(3, [])
    assert p.contains((1, 0, 0), "closed")
    assert not p.contains((1, 0, 0), "relative-interior")


def test_membership_on_segment():
    p = Polytope(3, equality((1, -1, 0), ("eq",)))
    mid = (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))
    assert p.contains(mid, "relative-interior")
    end = (Fraction(1, 2), Fraction(1, 2), Fraction(0))
    assert p.contains(end, "closed")
    assert not p.contains(end, "relative-interior")


def test_dimension_monotone_under_constraints():
    rng = random.Random(5)
    for _ in range(20):
        d = 3
        hs = [H(*[Fraction(rng.randint(-2, 2)) for _ in range(d)])
              for _ in range(3)]
        dims = []
        for k in range(len(hs) + 1):
            dims.append(Polytope(d, hs[:k]).dim)
        assert all(a >= b for a, b in zip(dims, dims[1:]))


def _polygon_oracle_2d(halfspaces):
    """Independent rank-2 check: intersect constraint lines pairwise in the
    plane sum = 1 and keep feasible intersection points."""
    unit = [tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3)]
    cons = [h.coeffs for h in halfspaces] + unit
    pts = set()
    for a, b in itertools.combinations(cons, 2):
        rows = [list(a), list(b), [1, 1, 1]]
        rhs = [Fraction(0), Fraction(0), Fraction(1)]
        from cvn.polytope import _solve_square

        x = _solve_square(rows, rhs)
        if x is None:
            continue
        if all(sum(Fraction(c) * q for c, q in zip(co, x)) >= 0 for co in cons):
            pts.add(x)
    return pts


def test_vertices_match_2d_oracle():
    rng = random.Random(41)
    for _ in range(50):
        hs = [H(*[Fraction(rng.randint(-3, 3)) for _ in range(3)])
              for _ in range(rng.randint(1, 3))]
        p = Polytope(3, hs)
        assert set(p.vertices) == _polygon_oracle_2d(
            [h for h in hs if not h.degenerate]
        )


def test_barycenter_in_relative_interior():
    p = Polytope(3, [H(1, -1, 0)])
    assert p.contains(p.barycenter(), "relative-interior")
    seg = Polytope(3, equality((1, -1, 0), ("eq",)))
    assert seg.contains(seg.barycenter(), "relative-interior")


def test_affine_rank():
    assert affine_rank([]) == -1
    assert affine_rank([(1, 0)]) == 0
    assert affine_rank([(1, 0), (0, 1)]) == 1
    assert affine_rank([(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == 2
