"""Envelopes: where geodesic concatenation through a witness is possible.

A point C lies in Env(A,B) exactly when stretch(A,B) = stretch(A,C) *
stretch(C,B).  Inside a fixed simplex this region is a polytope, cut out by
two families of half-spaces: (star) says the reference witness gamma is
stretched from A at least as much as every candidate of A, and (starstar)
says gamma is stretched into B at least as much as every candidate of the
simplex.  Out- and in-envelopes are the one-sided versions.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .candidates import edge_counts, enumerate_candidates
from .errors import (
    BudgetExceeded,
    EmptyDirection,
    EmptySlice,
    ParamOutOfRange,
    RankMismatch,
    TrivialClass,
)
from .graphs import (
    SimplexPoint,
    TopologicalType,
    adjacent_simplices,
    make_type,
    marking_equivalent,
    point_from_coords,
)
from .metric import conj_length, stretch_report
from .polytope import HalfSpace, Polytope, equality, feasible
from .words import ConjClass, Word, extend_to_basis

DEFAULT_BUDGET = 500


def _budget(budget):
    if budget is not None:
        return budget
    return int(os.environ.get("CVN_BUDGET", DEFAULT_BUDGET))


def star_system(a: SimplexPoint, gamma: ConjClass,
                delta: TopologicalType) -> list[HalfSpace]:
    """One half-space per candidate of a: on the nonnegative side, gamma is
    stretched from a into points of delta at least as much as the candidate."""
    if gamma.is_trivial():
        raise TrivialClass("trivial direction")
    lg = conj_length(a, gamma)
    ng = edge_counts(delta, gamma)
    out = []
    for c in enumerate_candidates(a.ttype):
        lw = conj_length(a, c.word)
        nw = edge_counts(delta, c.word)
        coeffs = [lw * g - lg * w for g, w in zip(ng, nw)]
        out.append(HalfSpace.make(coeffs, ("star", str(c.word))))
    return out


def starstar_system(b: SimplexPoint, gamma: ConjClass,
                    delta: TopologicalType) -> list[HalfSpace]:
    """One half-space per candidate of delta: gamma is stretched from points
    of delta into b at least as much as the candidate."""
    if gamma.is_trivial():
        raise TrivialClass("trivial direction")
    lg = conj_length(b, gamma)
    ng = edge_counts(delta, gamma)
    out = []
    for c in enumerate_candidates(delta):
        ld = conj_length(b, c.word)
        nd = edge_counts(delta, c.word)
        coeffs = [lg * d - ld * g for d, g in zip(nd, ng)]
        out.append(HalfSpace.make(coeffs, ("starstar", str(c.word))))
    return out


def _direction(s) -> list[ConjClass]:
    s = sorted(set(s), key=lambda g: (len(g.rep), g.rep.letters))
    if not s:
        raise EmptyDirection("direction set is empty")
    for g in s:
        if g.is_trivial():
            raise TrivialClass("trivial direction")
    return s


def out_envelope(a: SimplexPoint, s, delta: TopologicalType) -> Polytope:
    """Points of delta reached from a with every class in s a shared witness."""
    s = _direction(s)
    hs = []
    for g in s:
        hs.extend(star_system(a, g, delta))
    first = s[0]
    lg = conj_length(a, first)
    ng = edge_counts(delta, first)
    for g in s[1:]:
        lw = conj_length(a, g)
        nw = edge_counts(delta, g)
        coeffs = [lw * x - lg * y for x, y in zip(ng, nw)]
        hs.extend(equality(coeffs, ("equal-stretch-out", str(first), str(g))))
    return Polytope(len(delta.edges), hs)


def in_envelope(b: SimplexPoint, s, delta: TopologicalType) -> Polytope:
    """Points of delta from which every class in s witnesses into b."""
    s = _direction(s)
    hs = []
    for g in s:
        hs.extend(starstar_system(b, g, delta))
    first = s[0]
    lg = conj_length(b, first)
    ng = edge_counts(delta, first)
    for g in s[1:]:
        lw = conj_length(b, g)
        nw = edge_counts(delta, g)
        # stretch into b equal: l_b(first)/l_C(first) = l_b(g)/l_C(g)
        coeffs = [lg * x - lw * y for x, y in zip(nw, ng)]
        hs.extend(equality(coeffs, ("equal-stretch-in", str(first), str(g))))
    return Polytope(len(delta.edges), hs)


def reference_witness(a: SimplexPoint, b: SimplexPoint) -> ConjClass:
    """Deterministic choice of a candidate witness from a to b."""
    cw = stretch_report(a, b).candidate_witnesses
    return min(cw, key=lambda g: (len(g.rep), g.rep.letters))


@dataclass(frozen=True)
class EnvelopeSlice:
    simplex: TopologicalType
    gamma: ConjClass
    star: tuple
    starstar: tuple
    polytope: Polytope


def envelope_slice(a: SimplexPoint, b: SimplexPoint,
                   delta: TopologicalType) -> EnvelopeSlice:
    if a.ttype.rank != b.ttype.rank or a.ttype.rank != delta.rank:
        raise RankMismatch("mixed ranks")
    gamma = reference_witness(a, b)
    star = tuple(star_system(a, gamma, delta))
    starstar = tuple(starstar_system(b, gamma, delta))
    poly = Polytope(len(delta.edges), star + starstar)
    return EnvelopeSlice(delta, gamma, star, starstar, poly)


def envelope(a: SimplexPoint, b: SimplexPoint,
             delta: TopologicalType) -> Polytope:
    """The envelope of the pair (a, b) inside the simplex of delta."""
    return envelope_slice(a, b, delta).polytope


@dataclass(frozen=True)
class Support:
    simplices: tuple[TopologicalType, ...]


def support(a: SimplexPoint, b: SimplexPoint, budget=None) -> Support:
    """All simplices meeting Env(a,b), found by flood fill from T(a)."""
    budget = _budget(budget)
    gamma = reference_witness(a, b)
    found: list[TopologicalType] = []
    queue = [a.ttype]
    examined: list[TopologicalType] = []
    while queue:
        t = queue.pop(0)
        if any(marking_equivalent(t, x) for x in examined):
            continue
        examined.append(t)
        if len(examined) > budget:
            raise BudgetExceeded(f"support search examined > {budget} simplices")
        hs = star_system(a, gamma, t) + starstar_system(b, gamma, t)
        if not feasible(hs, len(t.edges)):
            continue
        found.append(t)
        queue.extend(adjacent_simplices(t))
    return Support(tuple(found))


def direction_reduction(a: SimplexPoint, m, delta: TopologicalType) -> frozenset:
    """Replace an arbitrary direction set by candidates of a with the same
    out-envelope slice in delta."""
    sl = out_envelope(a, m, delta)
    if not sl.vertices:
        raise EmptySlice("out-envelope slice is empty in this simplex")
    b0 = point_from_coords(delta, sl.barycenter())
    s = stretch_report(a, b0).candidate_witnesses
    reduced = out_envelope(a, s, delta)
    assert set(reduced.vertices) == set(sl.vertices), \
        "direction reduction changed the slice"
    return s


def rainbow_graph(gamma: ConjClass, eps) -> SimplexPoint:
    """A point whose immersed gamma-loop is tiny: two short edges of length
    eps/2 each, every other candidate at least two unit edges long.

    The graph is a chain of nested arcs over a baseline: arcs are labelled
    by a basis extending gamma, the innermost arc together with the middle
    baseline edge carries gamma.  Rank 2 gives a theta.
    """
    eps = Fraction(eps)
    n = gamma.rank
    if not 0 < eps < Fraction(1, 4 * n):
        raise ParamOutOfRange(f"need 0 < eps < 1/{4 * n}")
    basis = extend_to_basis(gamma.rep)  # NotPrimitive / Unsupported
    if n == 1:
        raise ParamOutOfRange("rank 1 has a unique simplex; no rainbow needed")
    verts = [f"q{i}" for i in range(2, 2 * n)]  # q2 .. q_{2n-1}
    edges = []
    tree = []
    for i in range(len(verts) - 1):
        eid = f"t{i + 1}"
        edges.append((eid, verts[i], verts[i + 1], []))
        tree.append(eid)
    # innermost arc: gamma over the middle baseline edge
    mid_l = verts[n - 2]
    mid_r = verts[n - 1]
    edges.append(("a1", mid_l, mid_r, list(basis[0].letters)))
    # nested arcs for the remaining basis elements
    for k in range(2, n):
        u = verts[n - 2 - (k - 1)]
        v = verts[n - 1 + (k - 1)]
        edges.append((f"a{k}", u, v, list(basis[k - 1].letters)))
    edges.append(("big", verts[0], verts[-1], list(basis[n - 1].letters)))
    t = make_type(n, verts, edges, tree)
    unit = Fraction(1)
    tiny = eps / 2
    lengths = []
    mid_edge = f"t{n - 1}"
    for eid, *_ in edges:
        if eid in ("a1", mid_edge):
            lengths.append(tiny)
        elif eid == "big":
            # the outermost loop must not be shorter than two units
            lengths.append(2 * unit)
        else:
            lengths.append(unit)
    total = sum(lengths)
    p = SimplexPoint(t, tuple(q / total for q in lengths))
    # verify the length claims instead of trusting the construction
    cands = enumerate_candidates(t)
    words = {c.word for c in cands}
    assert gamma in words, "gamma is not a candidate of the rainbow graph"
    for c in cands:
        ln = conj_length(p, c.word) * total
        if c.word == gamma:
            assert ln <= 2 * tiny
        else:
            assert ln >= 2 * unit
    return p
