"""Marked metric graphs: points of Outer Space.

A point is a finite connected graph of rank n, all valencies at least 3,
with a spanning tree and a labelling of the non-tree edges by words forming
a basis of F_n.  Collapsing the tree identifies the graph with the rose,
and the labels say which petal each surviving edge maps to.  Lengths are
exact rationals normalized to total volume 1.

Conventions: an oriented edge path is a tuple of (edge_id, sign) with sign
+1 for u -> v.  The basepoint used for all label computations is the first
vertex in the vertex list.  Half-edges are pairs (edge_id, end) with end 0
at u and end 1 at v.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    BadPartition,
    BadValency,
    DisconnectedGraph,
    NonpositiveLength,
    NotABasis,
    NotAForest,
    NotAnAutomorphism,
    NotClosed,
    NotPrimitive,
    RankMismatch,
    TrivialClass,
    WrongRank,
)
from .words import (
    ConjClass,
    Word,
    conj_normal_form,
    cyclic_reduce,
    free_reduce,
    generator,
    invert,
    is_basis,
    reduce,
    rewrite_in_basis,
)

Path = tuple[tuple[str, int], ...]
HalfEdge = tuple[str, int]


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    label: Word  # trivial word on tree edges

    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class TopologicalType:
    """A marked graph with lengths forgotten.

    The edge order is fixed at construction and defines the coordinates of
    the corresponding open simplex of CV_n.
    """

    rank: int
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    tree: frozenset[str]

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def index(self, eid: str) -> int:
        for i, e in enumerate(self.edges):
            if e.id == eid:
                return i
        raise KeyError(eid)

    def non_tree_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.id not in self.tree)

    def basis_words(self) -> list[Word]:
        return [e.label for e in self.non_tree_edges()]

    def valency(self, v: str) -> int:
        d = 0
        for e in self.edges:
            d += (e.u == v) + (e.v == v)
        return d

    def half_edges_at(self, v: str) -> list[HalfEdge]:
        out = []
        for e in self.edges:
            if e.u == v:
                out.append((e.id, 0))
            if e.v == v:
                out.append((e.id, 1))
        return out

    def is_trivalent(self) -> bool:
        return all(self.valency(v) == 3 for v in self.vertices)

    def base(self) -> str:
        return self.vertices[0]


@dataclass(frozen=True)
class SimplexPoint:
    """A point of CV_n: a topological type plus volume-1 edge lengths."""

    ttype: TopologicalType
    lengths: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.lengths) != len(self.ttype.edges):
            raise WrongRank("one length per edge required")
        for q in self.lengths:
            if q <= 0:
                raise NonpositiveLength(f"length {q}")
        if sum(self.lengths) != 1:
            raise NonpositiveLength("lengths must sum to 1")

    def length_of(self, eid: str) -> Fraction:
        return self.lengths[self.ttype.index(eid)]


# ---------------------------------------------------------------------------
# Construction and validation.
# ---------------------------------------------------------------------------


@dataclass
class MarkedGraph:
    """Raw user input, prior to validation."""

    rank: int
    vertices: list[str]
    edges: list[tuple[str, str, str, Fraction, list[int]]]  # id,u,v,len,label
    tree: list[str]


def _check_connected(vertices, edges):
    if not vertices:
        raise DisconnectedGraph("no vertices")
    adj: dict[str, set[str]] = {v: set() for v in vertices}
    for e in edges:
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(vertices):
        raise DisconnectedGraph("graph is not connected")


def _check_spanning_tree(t: TopologicalType):
    tree_edges = [e for e in t.edges if e.id in t.tree]
    if len(t.tree) != len(tree_edges):
        raise NotAForest("tree refers to unknown edges")
    if len(tree_edges) != len(t.vertices) - 1:
        raise NotAForest("spanning tree must have V-1 edges")
    parent = {v: v for v in t.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in tree_edges:
        ru, rv = find(e.u), find(e.v)
        if ru == rv:
            raise NotAForest(f"tree contains a cycle through {e.id}")
        parent[ru] = rv


def make_type(rank, vertices, edge_specs, tree) -> TopologicalType:
    """Build and fully validate a topological type.

    edge_specs: iterable of (id, u, v, label_letters).
    """
    edges = tuple(
        Edge(eid, u, v, reduce(tuple(lab), rank)) for eid, u, v, lab in edge_specs
    )
    t = TopologicalType(rank, tuple(vertices), edges, frozenset(tree))
    ids = [e.id for e in t.edges]
    if len(set(ids)) != len(ids):
        raise WrongRank("duplicate edge ids")
    _check_connected(t.vertices, t.edges)
    for v in t.vertices:
        if t.valency(v) < 3:
            raise BadValency(f"vertex {v} has valency {t.valency(v)}")
    if len(t.edges) - len(t.vertices) + 1 != rank:
        raise WrongRank(
            f"first Betti number {len(t.edges) - len(t.vertices) + 1} != {rank}"
        )
    _check_spanning_tree(t)
    for e in t.edges:
        if e.id in t.tree and not e.label.is_trivial():
            raise NotABasis(f"tree edge {e.id} carries a nontrivial label")
    labels = t.basis_words()
    if not is_basis(labels, rank):
        raise NotABasis("non-tree labels do not form a basis")
    return t


def validate_and_normalize(g: MarkedGraph) -> SimplexPoint:
    """Check all marked graph invariants and rescale total length to 1."""
    t = make_type(g.rank, g.vertices, [(e[0], e[1], e[2], e[4]) for e in g.edges],
                  g.tree)
    lengths = [Fraction(e[3]) for e in g.edges]
    for q in lengths:
        if q <= 0:
            raise NonpositiveLength(f"length {q}")
    total = sum(lengths)
    return SimplexPoint(t, tuple(q / total for q in lengths))


def graph_from_json(text) -> MarkedGraph:
    data = json.loads(text) if isinstance(text, str) else text
    edges = []
    for e in data["edges"]:
        edges.append(
            (e["id"], e["from"], e["to"], Fraction(e["length"]),
             [int(a) for a in e.get("label", [])])
        )
    return MarkedGraph(int(data["rank"]), list(data["vertices"]), edges,
                       list(data["tree"]))


def point_to_json(p: SimplexPoint) -> dict:
    t = p.ttype
    return {
        "rank": t.rank,
        "vertices": list(t.vertices),
        "edges": [
            {
                "id": e.id,
                "from": e.u,
                "to": e.v,
                "length": str(p.lengths[i]),
                "label": list(e.label.letters),
            }
            for i, e in enumerate(t.edges)
        ],
        "tree": sorted(t.tree),
    }


# ---------------------------------------------------------------------------
# Paths, loops, tightening.
# ---------------------------------------------------------------------------


def _ends(t: TopologicalType, step) -> tuple[str, str]:
    e = t.edge(step[0])
    return (e.u, e.v) if step[1] > 0 else (e.v, e.u)


def path_word(t: TopologicalType, path) -> Word:
    """Image of an edge path under the marking (concatenate labels)."""
    out: list[int] = []
    for eid, s in path:
        lab = t.edge(eid).label.letters
        out.extend(lab if s > 0 else invert(lab))
    return reduce(out, t.rank)


def loop_word(t: TopologicalType, path) -> ConjClass:
    """Conjugacy class represented by a closed edge path."""
    path = tuple(path)
    if not path:
        raise NotClosed("empty path")
    for k in range(len(path)):
        head = _ends(t, path[k])[1]
        tail = _ends(t, path[(k + 1) % len(path)])[0]
        if head != tail:
            raise NotClosed(f"steps {k} and {k + 1} do not concatenate")
    return conj_normal_form(path_word(t, path))


@lru_cache(maxsize=4096)
def _tree_parents(t: TopologicalType) -> dict:
    """BFS tree of the spanning tree rooted at the base vertex."""
    adj: dict[str, list[tuple[str, str, int]]] = {v: [] for v in t.vertices}
    for e in t.edges:
        if e.id in t.tree:
            adj[e.u].append((e.v, e.id, 1))
            adj[e.v].append((e.u, e.id, -1))
    parent = {t.base(): None}
    order = [t.base()]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for w, eid, s in adj[v]:
            if w not in parent:
                parent[w] = (v, eid, s)
                order.append(w)
    return parent


def tree_path(t: TopologicalType, u: str, v: str) -> Path:
    """The geodesic in the spanning tree from u to v as an oriented path."""
    parent = _tree_parents(t)

    def to_root(x):
        out = []
        while parent[x] is not None:
            p, eid, s = parent[x]
            out.append((eid, -s))  # step from x toward the root
            x = p
        return out

    up_u = to_root(u)
    up_v = to_root(v)
    while up_u and up_v and up_u[-1] == up_v[-1]:
        up_u.pop()
        up_v.pop()
    down_v = [(eid, -s) for eid, s in reversed(up_v)]
    return tuple(up_u + down_v)


def _cancel_path(steps) -> list:
    out = []
    for st in steps:
        if out and out[-1] == (st[0], -st[1]):
            out.pop()
        else:
            out.append(st)
    return out


@lru_cache(maxsize=65536)
def _tighten_cached(t: TopologicalType, rep_letters) -> Path:
    base = t.base()
    basis = t.basis_words()
    petals = []
    for e in t.non_tree_edges():
        loop = list(tree_path(t, base, e.u)) + [(e.id, 1)] + list(
            tree_path(t, e.v, base)
        )
        petals.append(loop)
    coords = rewrite_in_basis(Word(rep_letters, t.rank), basis)
    steps: list = []
    for a in coords.letters:
        p = petals[abs(a) - 1]
        steps.extend(p if a > 0 else [(eid, -s) for eid, s in reversed(p)])
    steps = _cancel_path(steps)
    while len(steps) >= 2 and steps[0] == (steps[-1][0], -steps[-1][1]):
        steps = steps[1:-1]
    return tuple(steps)


def tighten(t: TopologicalType, gamma: ConjClass) -> Path:
    """The immersed (cyclically backtrack-free) loop realizing gamma."""
    if gamma.is_trivial():
        raise TrivialClass("cannot tighten the trivial class")
    if gamma.rank != t.rank:
        raise RankMismatch(f"class rank {gamma.rank} != graph rank {t.rank}")
    return _tighten_cached(t, gamma.rep.letters)


# ---------------------------------------------------------------------------
# Forest collapse and tree exchange.
# ---------------------------------------------------------------------------


def _retree(t: TopologicalType, new_tree: frozenset) -> TopologicalType:
    """Same graph, different spanning tree; labels recomputed through the
    old marking so the point of CV_n is unchanged (up to global conjugation)."""
    edges = []
    base = t.base()
    probe = TopologicalType(t.rank, t.vertices,
                            tuple(Edge(e.id, e.u, e.v,
                                       Word((), t.rank)) for e in t.edges),
                            new_tree)
    _check_spanning_tree(probe)
    for e in t.edges:
        if e.id in new_tree:
            edges.append(Edge(e.id, e.u, e.v, Word((), t.rank)))
        else:
            loop = list(tree_path(probe, base, e.u)) + [(e.id, 1)] + list(
                tree_path(probe, e.v, base)
            )
            edges.append(Edge(e.id, e.u, e.v, path_word(t, loop)))
    return TopologicalType(t.rank, t.vertices, tuple(edges), new_tree)


def _fundamental_cycle_tree_edges(t: TopologicalType, eid: str) -> list[str]:
    e = t.edge(eid)
    return [x for x, _ in tree_path(t, e.v, e.u)]


def collapse_forest(t: TopologicalType, forest) -> TopologicalType:
    """Collapse a forest of edges; the quotient keeps the same marking.

    Non-tree members are first swapped into the spanning tree (tree
    exchange), so the actual collapse only ever kills tree edges.
    """
    forest = set(forest)
    for eid in forest:
        e = t.edge(eid)  # raises KeyError on unknown ids
        if e.is_loop():
            raise NotAForest(f"{eid} is a loop edge")
    # acyclicity
    parent = {v: v for v in t.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in forest:
        e = t.edge(eid)
        ru, rv = find(e.u), find(e.v)
        if ru == rv:
            raise NotAForest("selected edges contain a cycle")
        parent[ru] = rv
    # move non-tree members into the tree one at a time
    while True:
        outside = [eid for eid in forest if eid not in t.tree]
        if not outside:
            break
        f = outside[0]
        swap = [x for x in _fundamental_cycle_tree_edges(t, f)
                if x not in forest]
        if not swap:
            raise NotAForest("no tree exchange available")
        t = _retree(t, (t.tree - {swap[0]}) | {f})
    root = {v: find(v) for v in t.vertices}
    new_vertices = tuple(v for v in t.vertices if root[v] == v)
    new_edges = tuple(
        Edge(e.id, root[e.u], root[e.v], e.label)
        for e in t.edges
        if e.id not in forest
    )
    return TopologicalType(t.rank, new_vertices, new_edges,
                           frozenset(t.tree) - forest)


def collapse_point(p: SimplexPoint, forest) -> SimplexPoint:
    """Collapse a forest and renormalize the surviving lengths."""
    t2 = collapse_forest(p.ttype, forest)
    keep = [p.lengths[i] for i, e in enumerate(p.ttype.edges)
            if e.id not in set(forest)]
    total = sum(keep)
    return SimplexPoint(t2, tuple(q / total for q in keep))


# ---------------------------------------------------------------------------
# Blow-ups.
# ---------------------------------------------------------------------------


def _fresh(used, stem: str) -> str:
    if stem not in used:
        return stem
    k = 2
    while f"{stem}{k}" in used:
        k += 1
    return f"{stem}{k}"


def blow_up_vertex(t: TopologicalType, v: str, side1, side2) -> TopologicalType:
    """Split v into two vertices joined by a new tree edge.

    side1 and side2 partition the half-edges at v; side1 stays on v, side2
    moves to the new vertex.  Collapsing the new edge returns the input.
    """
    side1, side2 = frozenset(side1), frozenset(side2)
    half = set(t.half_edges_at(v))
    if t.valency(v) < 4:
        raise BadPartition(f"vertex {v} has valency {t.valency(v)} < 4")
    if side1 | side2 != half or side1 & side2 or len(side1) < 2 or len(side2) < 2:
        raise BadPartition("sides must partition the half-edges, each size >= 2")
    used_v = set(t.vertices)
    v2 = _fresh(used_v, v + "'")
    used_e = {e.id for e in t.edges}
    new_eid = _fresh(used_e, "blow")
    edges = []
    for e in t.edges:
        u_, w_ = e.u, e.v
        if (e.id, 0) in side2:
            u_ = v2
        if (e.id, 1) in side2:
            w_ = v2
        edges.append(Edge(e.id, u_, w_, e.label))
    edges.append(Edge(new_eid, v, v2, Word((), t.rank)))
    return TopologicalType(
        t.rank,
        t.vertices + (v2,),
        tuple(edges),
        t.tree | {new_eid},
    )


# ---------------------------------------------------------------------------
# Marking equivalence.
# ---------------------------------------------------------------------------


def _graph_isomorphisms(a: TopologicalType, b: TopologicalType):
    """Yield edge maps {a_edge_id: (b_edge_id, sign)} of graph isomorphisms."""
    if len(a.vertices) != len(b.vertices) or len(a.edges) != len(b.edges):
        return
    a_val = sorted(a.valency(v) for v in a.vertices)
    b_val = sorted(b.valency(v) for v in b.vertices)
    if a_val != b_val:
        return

    def groups(t):
        g: dict[frozenset, list[Edge]] = {}
        for e in t.edges:
            g.setdefault(frozenset((e.u, e.v)), []).append(e)
        return g

    ga, gb = groups(a), groups(b)
    for perm in itertools.permutations(b.vertices):
        sigma = dict(zip(a.vertices, perm))
        if any(a.valency(v) != b.valency(sigma[v]) for v in a.vertices):
            continue
        keys = list(ga)
        target = [frozenset(sigma[x] for x in k) for k in keys]
        if any(tk not in gb or len(gb[tk]) != len(ga[k])
               for k, tk in zip(keys, target)):
            continue
        per_group = []
        for k, tk in zip(keys, target):
            per_group.append([list(zip(ga[k], q))
                              for q in itertools.permutations(gb[tk])])
        for combo in itertools.product(*per_group):
            pairs = [pq for grp in combo for pq in grp]
            sign_choices = []
            ok = True
            for ea, eb in pairs:
                if ea.is_loop():
                    sign_choices.append([1, -1])
                elif (sigma[ea.u], sigma[ea.v]) == (eb.u, eb.v):
                    sign_choices.append([1])
                elif (sigma[ea.u], sigma[ea.v]) == (eb.v, eb.u):
                    sign_choices.append([-1])
                else:
                    ok = False
                    break
            if not ok:
                continue
            for signs in itertools.product(*sign_choices):
                yield {ea.id: (eb.id, s) for (ea, eb), s in zip(pairs, signs)}


def _induced_automorphism(a: TopologicalType, b: TopologicalType, emap):
    """Automorphism of F_n induced by the edge map, or None if not one."""
    base = a.base()
    w_list = []
    c_list = []
    for e in a.non_tree_edges():
        loop = list(tree_path(a, base, e.u)) + [(e.id, 1)] + list(
            tree_path(a, e.v, base)
        )
        image = [(emap[eid][0], s * emap[eid][1]) for eid, s in loop]
        w_list.append(e.label)
        c_list.append(path_word(b, image))
    images = []
    try:
        for i in range(1, a.rank + 1):
            coords = rewrite_in_basis(generator(i, a.rank), w_list)
            acc: list[int] = []
            for x in coords.letters:
                lab = c_list[abs(x) - 1].letters
                acc.extend(lab if x > 0 else invert(lab))
            images.append(reduce(acc, a.rank))
    except NotABasis:
        return None
    return images


def _is_inner(images: list[Word]) -> bool:
    """Whether x_i -> images[i] is conjugation by a fixed element."""
    rank = len(images)
    core, pre = cyclic_reduce(images[0].letters)
    if core != (1,):
        return False
    bound = max(len(w) for w in images) + len(pre) + 2
    for m in range(-bound, bound + 1):
        g = free_reduce(pre + (1,) * m if m >= 0 else pre + (-1,) * (-m))
        if all(
            free_reduce(g + (i,) + invert(g)) == images[i - 1].letters
            for i in range(1, rank + 1)
        ):
            return True
    return False


def marking_isomorphisms(a: TopologicalType, b: TopologicalType):
    """Edge maps realizing an equivalence of marked graphs."""
    if a.rank != b.rank:
        return
    for emap in _graph_isomorphisms(a, b):
        images = _induced_automorphism(a, b, emap)
        if images is not None and _is_inner(images):
            yield emap


@lru_cache(maxsize=65536)
def marking_equivalent(a: TopologicalType, b: TopologicalType) -> bool:
    """True when some graph isomorphism matches the two markings."""
    return next(marking_isomorphisms(a, b), None) is not None


# ---------------------------------------------------------------------------
# Simplex adjacency.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def faces(t: TopologicalType) -> list[TopologicalType]:
    """Codimension-1 faces: single-edge collapses, up to equivalence."""
    out: list[TopologicalType] = []
    for e in t.edges:
        if e.is_loop():
            continue
        c = collapse_forest(t, {e.id})
        if not any(marking_equivalent(c, x) for x in out):
            out.append(c)
    return out


@lru_cache(maxsize=4096)
def resolutions(t: TopologicalType) -> list[TopologicalType]:
    """Trivalent types obtained from t by iterated vertex blow-ups."""
    leaves: list[TopologicalType] = []
    stack = [t]
    while stack:
        cur = stack.pop()
        fat = [v for v in cur.vertices if cur.valency(v) >= 4]
        if not fat:
            if cur is not t:
                leaves.append(cur)
            continue
        v = fat[0]
        half = cur.half_edges_at(v)
        k = len(half)
        first = half[0]
        rest = half[1:]
        for r in range(1, k - 2 + 1):
            for side_rest in itertools.combinations(rest, r):
                side1 = frozenset((first,) + side_rest)
                if len(side1) < 2 or k - len(side1) < 2:
                    continue
                side2 = frozenset(h for h in half if h not in side1)
                stack.append(blow_up_vertex(cur, v, side1, side2))
    # dedupe: two types agree up to marking equivalence exactly when their
    # uniform-length points are at stretch 1 in both directions
    from .metric import stretch

    def uniform(tt):
        n = len(tt.edges)
        return SimplexPoint(tt, (Fraction(1, n),) * n)

    ref = uniform(t)
    buckets: dict = {}
    done: list[TopologicalType] = []
    for leaf in dict.fromkeys(leaves):
        p = uniform(leaf)
        key = (stretch(p, ref), stretch(ref, p))
        group = buckets.setdefault(key, [])
        if any(stretch(p, q) == 1 and stretch(q, p) == 1 for q in group):
            continue
        group.append(p)
        done.append(leaf)
    return done


def adjacent_simplices(t: TopologicalType) -> list[TopologicalType]:
    """Faces plus trivalent resolutions, each distinct up to equivalence."""
    return faces(t) + resolutions(t)


# ---------------------------------------------------------------------------
# Out(F_n) action and point embedding.
# ---------------------------------------------------------------------------


def apply_outer_automorphism(p: SimplexPoint, images: list[Word]) -> SimplexPoint:
    """Change the marking by the automorphism x_i -> images[i]."""
    t = p.ttype
    if len(images) != t.rank or not is_basis(images, t.rank):
        raise NotAnAutomorphism("images do not define an automorphism")
    from .words import apply_endomorphism

    edges = tuple(
        Edge(e.id, e.u, e.v, apply_endomorphism(e.label, images))
        for e in t.edges
    )
    return SimplexPoint(
        TopologicalType(t.rank, t.vertices, edges, t.tree), p.lengths
    )


def forests(t: TopologicalType):
    """All forests of non-loop edges, smallest first, including the empty one."""
    ids = [e.id for e in t.edges if not e.is_loop()]
    for r in range(len(ids) + 1):
        for sub in itertools.combinations(ids, r):
            try:
                collapse_forest(t, sub)
            except NotAForest:
                continue
            yield frozenset(sub)


def embed_point(p: SimplexPoint, delta: TopologicalType):
    """Coordinates of p in the closed simplex of delta, or None.

    Searches the faces of delta for one equivalent to the type of p; the
    forest that was collapsed gets coordinate 0.
    """
    for forest in forests(delta):
        if len(delta.edges) - len(forest) != len(p.ttype.edges):
            continue
        face = collapse_forest(delta, forest)
        emap = next(marking_isomorphisms(face, p.ttype), None)
        if emap is None:
            continue
        coords = []
        for e in delta.edges:
            if e.id in forest:
                coords.append(Fraction(0))
            else:
                coords.append(p.length_of(emap[e.id][0]))
        return tuple(coords)
    return None


def point_from_coords(delta: TopologicalType, coords) -> SimplexPoint:
    """Point of the closed simplex: zero coordinates collapse their edges."""
    coords = tuple(Fraction(c) for c in coords)
    zero = {e.id for e, c in zip(delta.edges, coords) if c == 0}
    if any(c < 0 for c in coords):
        raise NonpositiveLength("negative coordinate")
    if not zero:
        return SimplexPoint(delta, coords)
    t2 = collapse_forest(delta, zero)  # NotAForest on missing faces
    keep = tuple(c for e, c in zip(delta.edges, coords) if e.id not in zero)
    return SimplexPoint(t2, keep)


# ---------------------------------------------------------------------------
# Standard families.
# ---------------------------------------------------------------------------


def rose_type(rank: int) -> TopologicalType:
    specs = [(f"p{i}", "o", "o", [i]) for i in range(1, rank + 1)]
    return make_type(rank, ["o"], specs, [])


def rose_point(lengths) -> SimplexPoint:
    lengths = [Fraction(q) for q in lengths]
    total = sum(lengths)
    return SimplexPoint(rose_type(len(lengths)),
                        tuple(q / total for q in lengths))


def theta_type() -> TopologicalType:
    """Two vertices, three parallel edges; e1 is x, e2 the tree, e3 is y."""
    return make_type(
        2,
        ["p", "q"],
        [("e1", "p", "q", [1]), ("e2", "p", "q", []), ("e3", "p", "q", [2])],
        ["e2"],
    )


def theta_point(l1, l2, l3) -> SimplexPoint:
    ls = [Fraction(l1), Fraction(l2), Fraction(l3)]
    total = sum(ls)
    return SimplexPoint(theta_type(), tuple(q / total for q in ls))


def twisted_theta_type() -> TopologicalType:
    """Theta whose third edge carries the inverse generator: the product
    class xy then misses the middle edge while x y^-1 crosses it twice."""
    return make_type(
        2,
        ["p", "q"],
        [("e1", "p", "q", [1]), ("e2", "p", "q", []), ("e3", "p", "q", [-2])],
        ["e2"],
    )


def twisted_theta_point(l1, l2, l3) -> SimplexPoint:
    ls = [Fraction(l1), Fraction(l2), Fraction(l3)]
    total = sum(ls)
    return SimplexPoint(twisted_theta_type(), tuple(q / total for q in ls))


def barbell_type() -> TopologicalType:
    """Loops e1 (x) and e3 (y) joined by the handle e2."""
    return make_type(
        2,
        ["p", "q"],
        [("e1", "p", "p", [1]), ("e2", "p", "q", []), ("e3", "q", "q", [2])],
        ["e2"],
    )


def barbell_point(l1, l2, l3) -> SimplexPoint:
    ls = [Fraction(l1), Fraction(l2), Fraction(l3)]
    total = sum(ls)
    return SimplexPoint(barbell_type(), tuple(q / total for q in ls))
