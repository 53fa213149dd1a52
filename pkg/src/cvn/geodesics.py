"""Geodesic predicates and constructions.

Multiplicativity of stretch factors characterizes intermediate points, so
gluing tests are exact rational identities.  The central construction walks
edges of envelope polytopes: the walk from A maximizes the length of the
reference witness (a linear functional whose unique maximum over the
envelope is B), restarting a new phase whenever a fresh candidate of the
current simplex becomes maximally stretched into B.  Consecutive envelope
edges within a phase are rigid, so the output is a concatenation of
uniquely-geodesic segments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .candidates import candidate_words, edge_counts
from .envelopes import (
    _budget,
    in_envelope,
    out_envelope,
    reference_witness,
    star_system,
    starstar_system,
    support,
)
from .errors import (
    NoFacetChain,
    NotAForest,
    NotAGeodesic,
    NotMaximalSimplex,
    ParamOutOfRange,
    RankMismatch,
    Unsupported,
    WalkStuck,
)
from .graphs import (
    SimplexPoint,
    TopologicalType,
    adjacent_simplices,
    embed_point,
    point_from_coords,
)
from .metric import is_witness, same_point, stretch, stretch_report
from .polytope import Polytope
from .words import ConjClass


def _check_ranks(*points):
    ranks = {p.ttype.rank for p in points}
    if len(ranks) != 1:
        raise RankMismatch(f"mixed ranks {sorted(ranks)}")


def on_geodesic(a: SimplexPoint, c: SimplexPoint, b: SimplexPoint) -> bool:
    """Whether c lies on some geodesic from a to b (exact multiplicativity)."""
    _check_ranks(a, c, b)
    return stretch(a, b) == stretch(a, c) * stretch(c, b)


def check_gluing(a: SimplexPoint, c: SimplexPoint, b: SimplexPoint) -> frozenset:
    """Candidate-generated classes witnessing both a->c and c->b.

    Nonempty exactly when c lies on a geodesic from a to b: any witness of
    the whole realizes both legs, and some candidate of a always witnesses.
    """
    _check_ranks(a, c, b)
    pool = set(candidate_words(a.ttype)) | set(candidate_words(c.ttype))
    return frozenset(
        g for g in pool if is_witness(g, a, c) and is_witness(g, c, b)
    )


@dataclass(frozen=True)
class GeodesicPath:
    breakpoints: tuple[SimplexPoint, ...]
    segment_witnesses: tuple[frozenset, ...]
    rigid_segments: tuple[int, ...]

    @property
    def start(self) -> SimplexPoint:
        return self.breakpoints[0]

    @property
    def end(self) -> SimplexPoint:
        return self.breakpoints[-1]


def _type_key(t: TopologicalType):
    return (
        len(t.edges),
        tuple(sorted(str(e.label) for e in t.edges)),
        tuple(sorted(e.id for e in t.edges)),
    )


def _score(delta: TopologicalType, gamma: ConjClass, coords) -> Fraction:
    counts = edge_counts(delta, gamma)
    return sum(Fraction(n) * c for n, c in zip(counts, coords))


def _slice_polytope(a: SimplexPoint, b: SimplexPoint, gamma: ConjClass,
                    delta: TopologicalType) -> Polytope:
    hs = star_system(a, gamma, delta) + starstar_system(b, gamma, delta)
    return Polytope(len(delta.edges), hs)


def _collapsible(delta: TopologicalType, coords) -> bool:
    """Whether the zero set of coords is a collapsible forest, so the
    vertex is an actual point of the space rather than an ideal corner."""
    if all(c > 0 for c in coords):
        return True
    try:
        point_from_coords(delta, coords)
    except NotAForest:
        return False
    return True


def _forward_vertex(poly: Polytope, coords, score, delta=None,
                    require_clean=False):
    """Best strictly-improving neighbour of coords in the polytope skeleton.

    coords may be a vertex or sit in the relative interior of a skeleton
    edge.  Ideal corners (zero sets that are not forests) are never
    stepped onto.  Among improving neighbours, edges through the interior
    beat edges running inside a boundary face of the simplex, so the walk
    hugs the envelope's own facets; remaining ties break toward the
    lexicographically smallest far endpoint.  With require_clean, refuse
    to answer at all when every route onward walks a boundary face.
    """
    vs = poly.vertices

    def edge_on_boundary(u, v):
        return any(x == 0 and y == 0 for x, y in zip(u, v))

    standable = set(range(len(vs)))
    if delta is not None:
        standable = {i for i in standable if _collapsible(delta, vs[i])}
    adj: dict = {i: [] for i in range(len(vs))}
    for u, w in poly.skeleton_edges:
        adj[u].append(w)
        adj[w].append(u)

    def improving(i):
        return [j for j in adj[i] if j in standable
                and score(vs[j]) > score(vs[i])]

    def reaches_sink(i, avoid_boundary):
        seen = {i}
        stack = [i]
        while stack:
            k = stack.pop()
            steps = improving(k)
            if avoid_boundary:
                steps = [j for j in steps
                         if not edge_on_boundary(vs[k], vs[j])]
            if not improving(k):
                return True  # nothing improves: top of this chart
            for j in steps:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return False

    if coords in vs:
        i = vs.index(coords)
        options = [vs[j] for j in improving(i)]
    else:
        options = []
        for u, w in poly.skeleton_edges:
            lo, hi = vs[u], vs[w]
            if _on_segment(coords, lo, hi):
                options += [vs[j] for j in (u, w)
                            if j in standable
                            and score(vs[j]) > score(coords)]
    if not options:
        return None

    def is_clean(v):
        # edges inside a boundary face of the chart do not pin down the
        # envelope of their own endpoints, so prefer neighbours from which
        # the top of the chart is reachable without ever walking one
        return (not edge_on_boundary(coords, v)
                and reaches_sink(vs.index(v), avoid_boundary=True))

    if require_clean:
        options = [v for v in options if is_clean(v)]
        if not options:
            return None
        return min(options)
    return min(options, key=lambda v: (not is_clean(v), v))


def _ideal_half_step(poly: Polytope, coords, score, delta):
    """Step halfway toward an improving ideal corner of the polytope.

    A ray can leave every rose face behind: its envelope then runs from
    the current position straight toward a corner whose zero set is not
    a forest.  No vertex of the skeleton is standable there, but every
    interior point of that segment is a genuine point of the chart, so
    the walk samples the midpoint instead of stopping dead.
    """
    vs = poly.vertices
    adj: dict = {i: [] for i in range(len(vs))}
    for u, w in poly.skeleton_edges:
        adj[u].append(w)
        adj[w].append(u)
    options = []
    if coords in vs:
        i = vs.index(coords)
        options = [vs[j] for j in adj[i] if score(vs[j]) > score(coords)]
    else:
        for u, w in poly.skeleton_edges:
            if _on_segment(coords, vs[u], vs[w]):
                options += [vs[j] for j in (u, w)
                            if score(vs[j]) > score(coords)]
    options = [v for v in options if not _collapsible(delta, v)]
    if not options:
        return None
    target = min(options)
    return tuple((c + t) / 2 for c, t in zip(coords, target))


def _on_segment(x, lo, hi) -> bool:
    diffs = [h - l for h, l in zip(hi, lo)]
    t = None
    for xi, li, d in zip(x, lo, diffs):
        if d == 0:
            if xi != li:
                return False
        else:
            ti = (xi - li) / d
            if t is None:
                t = ti
            elif ti != t:
                return False
    return t is not None and 0 <= t <= 1


def _witness_pool(p: SimplexPoint, b: SimplexPoint) -> frozenset:
    return frozenset(
        g for g in candidate_words(p.ttype) if is_witness(g, p, b)
    )


def piecewise_rigid_geodesic(a: SimplexPoint, b: SimplexPoint,
                             budget=None) -> GeodesicPath:
    """A geodesic from a to b as a chain of uniquely-geodesic segments.

    Each phase fixes the current breakpoint and walks strictly forward
    along skeleton edges of its envelope slice; a phase ends when a new
    candidate of the current simplex becomes maximally stretched into b.
    """
    _check_ranks(a, b)
    budget = _budget(budget)
    breakpoints = [a]
    rigid = [0]
    if same_point(a, b):
        return GeodesicPath((a,), (), (0,))

    phase_base = a
    gamma = reference_witness(phase_base, b)
    base_witnesses = _class_witnesses(phase_base, b)
    delta = a.ttype
    coords = a.lengths
    steps = 0
    while True:
        steps += 1
        if steps > budget:
            raise WalkStuck(f"walk exceeded {budget} steps")
        moved = _advance(phase_base, b, gamma, delta, coords)
        if moved is None:
            raise WalkStuck("no forward envelope edge from current point")
        delta, coords = moved
        point = point_from_coords(delta, coords)
        breakpoints.append(point)
        if same_point(point, b):
            break
        fresh = [
            g for g in _witness_pool(point, b) if g not in base_witnesses
        ]
        if fresh:
            # a new maximally-stretched class ends the current phase
            rigid.append(len(breakpoints) - 1)
            phase_base = point
            gamma = reference_witness(phase_base, b)
            base_witnesses = _class_witnesses(phase_base, b)
    rigid.append(len(breakpoints) - 1)
    witnesses = tuple(
        stretch_report(p, q).candidate_witnesses
        for p, q in zip(breakpoints, breakpoints[1:])
    )
    return GeodesicPath(tuple(breakpoints), witnesses, tuple(dict.fromkeys(rigid)))


def _class_witnesses(p: SimplexPoint, b: SimplexPoint) -> set:
    """Witnesses from p to b among candidates of p's simplex, kept as a
    mutable baseline the walker compares against."""
    return set(_witness_pool(p, b))


def _advance(base: SimplexPoint, b: SimplexPoint, gamma: ConjClass,
             delta: TopologicalType, coords):
    """One skeleton-edge step forward; crosses simplices when needed."""

    def score_in(dl):
        return lambda v: _score(dl, gamma, v)

    here = point_from_coords(delta, coords)
    charts = list(adjacent_simplices(delta))
    if len(here.ttype.edges) < len(delta.edges):
        # the point sits on a face: resolutions of the face count too
        charts += adjacent_simplices(here.ttype)
    candidates = []
    for d2 in charts:
        emb = embed_point(here, d2)
        if emb is None:
            continue
        target = embed_point(b, d2)
        key = (0 if target is not None else 1, -len(d2.edges),
               _type_key(d2))
        candidates.append((key, d2, emb))
    candidates.sort(key=lambda x: x[0])
    # two sweeps over the current and adjacent charts: first insist on
    # steps that stay off chart-boundary faces (those are the rigid ones),
    # then allow boundary steps as a last resort
    for clean in (True, False):
        nxt = _forward_vertex(_slice_polytope(base, b, gamma, delta),
                              coords, score_in(delta), delta, clean)
        if nxt is not None:
            return delta, nxt
        for _, d2, emb in candidates:
            poly2 = _slice_polytope(base, b, gamma, d2)
            if not poly2.is_feasible():
                continue
            nxt = _forward_vertex(poly2, emb, score_in(d2), d2, clean)
            if nxt is not None:
                return d2, nxt
    return None


def _pair_dim(p: SimplexPoint, q: SimplexPoint, budget=None) -> int:
    """Largest envelope-slice dimension of the pair over its support."""
    gamma = reference_witness(p, q)
    best = -1
    for delta in support(p, q, budget).simplices:
        poly = _slice_polytope(p, q, gamma, delta)
        best = max(best, poly.dim)
    return best


def is_rigid(path: GeodesicPath, budget=None) -> bool:
    """Whether every sub-arc of the path is the unique geodesic between
    its endpoints: all two-breakpoint envelopes are at most 1-dimensional."""
    pts = path.breakpoints
    for i in range(len(pts)):
        for k in range(i + 2, len(pts)):
            for j in range(i + 1, k):
                if not on_geodesic(pts[i], pts[j], pts[k]):
                    raise NotAGeodesic("breakpoints fail multiplicativity")
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if same_point(pts[i], pts[j]):
                continue
            if _pair_dim(pts[i], pts[j], budget) > 1:
                return False
    return True


@dataclass(frozen=True)
class PositionCertificate:
    gamma: ConjClass
    strict: tuple


def general_position(a: SimplexPoint, b: SimplexPoint, via: str = "out"):
    """Whether the candidate-witness set of (a, b) is locally constant.

    True when b sits in the relative interior of a single-direction
    out-envelope of a (or, via="in", a in the in-envelope of b); the
    certificate names the direction and the strictly satisfied constraints.
    """
    _check_ranks(a, b)
    if not (a.ttype.is_trivalent() and b.ttype.is_trivalent()):
        raise NotMaximalSimplex("both points must be in maximal simplices")
    if via not in ("out", "in"):
        raise ValueError(f"unknown side {via!r}")
    for gamma in sorted(
        stretch_report(a, b).candidate_witnesses,
        key=lambda g: (len(g.rep), g.rep.letters),
    ):
        if via == "out":
            poly = out_envelope(a, [gamma], b.ttype)
            x = b.lengths
        else:
            poly = in_envelope(b, [gamma], a.ttype)
            x = a.lengths
        if poly.is_feasible() and poly.contains(x, "relative-interior"):
            strict = tuple(
                h.provenance for h in poly.constraints if h.value(x) > 0
            )
            return True, PositionCertificate(gamma, strict)
    return False, None


def _sym_excess(p: SimplexPoint, q: SimplexPoint) -> Fraction:
    return stretch(p, q) * stretch(q, p) - 1


def _facet_chain(u: SimplexPoint, start: ConjClass, goal: ConjClass):
    """Candidates of u connecting start to goal so that consecutive
    out-envelopes meet in a hyperplane of the simplex of u."""
    cands = sorted(
        candidate_words(u.ttype), key=lambda g: (len(g.rep), g.rep.letters)
    )
    dim = len(u.ttype.edges)
    full = dim - 1

    def touches(g, h):
        poly = out_envelope(u, [g, h], u.ttype)
        return poly.is_feasible() and poly.dim == full - 1

    frontier = [[start]]
    seen = {start}
    while frontier:
        path = frontier.pop(0)
        if path[-1] == goal:
            return path
        for g in cands:
            if g not in seen and touches(path[-1], g):
                seen.add(g)
                frontier.append(path + [g])
    raise NoFacetChain("no chain of adjacent out-envelope facets")


def _nudge(u: SimplexPoint, g1: ConjClass, g2: ConjClass, eps: Fraction):
    """A point near u inside both out-envelopes of g1 and g2."""
    poly = out_envelope(u, [g1, g2], u.ttype)
    bary = poly.barycenter()
    t = Fraction(1, 2)
    while True:
        coords = tuple(
            (1 - t) * a + t * c for a, c in zip(u.lengths, bary)
        )
        cand = point_from_coords(u.ttype, coords)
        if _sym_excess(u, cand) <= eps:
            return cand
        t /= 2


def local_geodesic_approximation(waypoints, eps) -> GeodesicPath:
    """A locally minimizing path tracking the waypoint polyline.

    Direction changes at the interior waypoints are realized by tiny
    detours through chains of adjacent out-envelope facets, so that every
    consecutive triple of recorded points glues.
    """
    eps = Fraction(eps)
    pts = list(waypoints)
    if len(pts) < 2:
        raise ParamOutOfRange("need at least two waypoints")
    _check_ranks(*pts)
    if pts[0].ttype.rank != 2:
        raise Unsupported("local approximation is implemented for rank 2")
    if eps <= 0:
        raise ParamOutOfRange("eps must be positive")
    for p, q in zip(pts, pts[1:]):
        if _sym_excess(p, q) > eps:
            raise ParamOutOfRange("consecutive waypoints too far apart")

    scale = eps
    for _ in range(8):
        out = _approx_once(pts, scale)
        if all(
            check_gluing(p, q, r)
            for p, q, r in zip(out, out[1:], out[2:])
        ):
            witnesses = tuple(
                stretch_report(p, q).candidate_witnesses
                for p, q in zip(out, out[1:])
            )
            return GeodesicPath(tuple(out), witnesses, tuple(range(len(out))))
        scale /= 8
    raise NoFacetChain("detours do not glue at any tested scale")


def _approx_once(pts, scale):
    out = [pts[0]]
    for idx in range(1, len(pts)):
        nxt = pts[idx]
        prev = out[-2] if len(out) >= 2 else None
        if prev is not None and not check_gluing(prev, out[-1], nxt):
            u = out[-1]
            gamma0 = reference_witness(prev, u)
            gamma1 = reference_witness(u, nxt)
            chain = _facet_chain(u, gamma0, gamma1)
            cur = u
            for g1, g2 in zip(chain, chain[1:]):
                cur = _nudge(cur, g1, g2, scale / (2 * len(chain)))
                out.append(cur)
        out.append(nxt)
    return out


@dataclass(frozen=True)
class RayAudit:
    points: tuple[SimplexPoint, ...]
    crossings: tuple[int, ...]
    dims: dict
    stable_from: int


def ray_dimension_audit(a: SimplexPoint, s, steps: int,
                        budget=None) -> RayAudit:
    """Walk the out-envelope of a in direction s across simplex crossings.

    Records the visited points and, for every ordered pair, the largest
    envelope dimension over the pair's support; stable_from is the first
    index past which all dimensions drop to 3n-5 or below.
    """
    if a.ttype.rank != 2:
        raise Unsupported("ray walking is implemented for rank 2")
    direction = sorted(set(s), key=lambda g: (len(g.rep), g.rep.letters))
    if not direction:
        raise ParamOutOfRange("empty direction")
    budget = _budget(budget)
    gamma = direction[0]
    base = a
    delta = a.ttype
    coords = a.lengths
    points = [a]
    crossings = [0]
    crossed = 0
    guard = 0
    while crossed < steps:
        guard += 1
        if guard > budget:
            raise WalkStuck(f"ray walk exceeded {budget} steps")

        def score(dl):
            return lambda v: _score(dl, gamma, v)

        poly = out_envelope(base, direction, delta)
        nxt = poly.is_feasible() and _forward_vertex(
            poly, coords, score(delta), delta
        )
        if nxt:
            coords = nxt
            here = point_from_coords(delta, coords)
            points.append(here)
            crossings.append(crossed)
            continue
        here = point_from_coords(delta, coords)
        charts = list(adjacent_simplices(delta))
        if len(here.ttype.edges) < len(delta.edges):
            charts += adjacent_simplices(here.ttype)
        moved = None
        for toward_ideal in (False, True):
            for d2 in sorted(charts, key=_type_key):
                emb = embed_point(here, d2)
                if emb is None:
                    continue
                poly2 = out_envelope(here, direction, d2)
                if not poly2.is_feasible():
                    continue
                if toward_ideal:
                    step = _ideal_half_step(poly2, emb, score(d2), d2)
                else:
                    step = _forward_vertex(poly2, emb, score(d2), d2)
                if step is not None:
                    moved = (d2, step)
                    break
            if moved is not None:
                break
        if moved is None:
            raise WalkStuck("ray cannot continue in any adjacent simplex")
        base = here
        delta, coords = moved
        crossed += 1
        points.append(point_from_coords(delta, coords))
        crossings.append(crossed)
    dims = {}
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if same_point(points[i], points[j]):
                continue
            dims[(i, j)] = _pair_dim(points[i], points[j], budget)
    bound = 3 * a.ttype.rank - 5
    stable = 0
    for i in sorted({i for i, _ in dims}, reverse=True):
        if any(d > bound for (x, _), d in dims.items() if x >= i):
            stable = i + 1
            break
    return RayAudit(tuple(points), tuple(crossings), dims, stable)
