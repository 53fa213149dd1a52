"""Candidate loops of a topological type.

A candidate is an embedded simple loop, a figure of eight (two simple loops
meeting in one vertex), or a barbell (two disjoint simple loops joined by an
embedded arc).  Maximal stretch between two points is always attained on a
candidate of the source graph, so these finitely many classes determine the
whole metric.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import TrivialClass
from .graphs import Path, TopologicalType, loop_word, tighten
from .words import ConjClass

SIMPLE_LOOP = "simple-loop"
FIGURE_EIGHT = "figure-eight"
BARBELL = "barbell"


@dataclass(frozen=True)
class Candidate:
    kind: str
    path: Path
    word: ConjClass
    counts: tuple[int, ...]


def path_counts(t: TopologicalType, path) -> tuple[int, ...]:
    c = [0] * len(t.edges)
    for eid, _ in path:
        c[t.index(eid)] += 1
    return tuple(c)


def edge_counts(t: TopologicalType, gamma: ConjClass) -> tuple[int, ...]:
    """How often the immersed loop of gamma runs over each edge."""
    if gamma.is_trivial():
        raise TrivialClass("trivial class has no immersed representative")
    return path_counts(t, tighten(t, gamma))


def _simple_cycles(t: TopologicalType) -> list[Path]:
    """Embedded cycles as oriented paths, one per edge subset."""
    out = []
    edges = t.edges
    for r in range(1, len(edges) + 1):
        for sub in itertools.combinations(edges, r):
            deg: dict[str, int] = {}
            for e in sub:
                deg[e.u] = deg.get(e.u, 0) + 1
                deg[e.v] = deg.get(e.v, 0) + 1
            if any(d != 2 for d in deg.values()):
                continue
            verts = list(deg)
            # connectivity of the subgraph
            adj = {v: [] for v in verts}
            for e in sub:
                adj[e.u].append((e.v, e.id, 1))
                adj[e.v].append((e.u, e.id, -1))
            seen = {verts[0]}
            stack = [verts[0]]
            while stack:
                for w, _, _ in adj[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) != len(verts):
                continue
            # trace the cycle
            path = []
            v = verts[0]
            used: set[str] = set()
            while len(path) < len(sub):
                for w, eid, s in adj[v]:
                    if eid not in used:
                        used.add(eid)
                        path.append((eid, s))
                        v = w
                        break
            out.append(tuple(path))
    return out


def _rotate_to(path: Path, t: TopologicalType, v: str) -> Path:
    """Rotate a cyclic path so it starts at vertex v."""
    for k, step in enumerate(path):
        e = t.edge(step[0])
        tail = e.u if step[1] > 0 else e.v
        if tail == v:
            return path[k:] + path[:k]
    raise ValueError(f"cycle does not visit {v}")


def _reverse(path: Path) -> Path:
    return tuple((eid, -s) for eid, s in reversed(path))


def _cycle_vertices(t: TopologicalType, path: Path) -> set[str]:
    verts = set()
    for eid, _ in path:
        e = t.edge(eid)
        verts.add(e.u)
        verts.add(e.v)
    return verts


def _arcs_between(t, verts1: set[str], verts2: set[str], banned: set[str]):
    """Embedded arcs from verts1 to verts2 avoiding banned edges and interior
    vertices on either cycle."""
    arcs = []

    def extend(v, path, used_edges, used_verts):
        for e in t.edges:
            if e.id in banned or e.id in used_edges or e.is_loop():
                continue
            steps = []
            if e.u == v:
                steps.append((e.v, 1))
            if e.v == v:
                steps.append((e.u, -1))
            for w, s in steps:
                if w in verts2:
                    arcs.append(tuple(path + [(e.id, s)]))
                    continue
                if w in verts1 or w in used_verts:
                    continue
                extend(w, path + [(e.id, s)], used_edges | {e.id},
                       used_verts | {w})

    for v in verts1:
        extend(v, [], set(), {v})
    return arcs


@lru_cache(maxsize=4096)
def enumerate_candidates(t: TopologicalType) -> list[Candidate]:
    """All candidates of the type, one per unoriented conjugacy class."""
    cycles = _simple_cycles(t)
    found: list[Candidate] = []
    seen: set = set()

    def add(kind, path):
        w = loop_word(t, path)
        if w.is_trivial() or w in seen:
            return
        seen.add(w)
        found.append(Candidate(kind, path, w, path_counts(t, path)))

    for c in cycles:
        add(SIMPLE_LOOP, c)
    for c1, c2 in itertools.combinations(cycles, 2):
        e1 = {eid for eid, _ in c1}
        e2 = {eid for eid, _ in c2}
        if e1 & e2:
            continue
        v1 = _cycle_vertices(t, c1)
        v2 = _cycle_vertices(t, c2)
        common = v1 & v2
        if len(common) == 1:
            (v,) = common
            a = _rotate_to(c1, t, v)
            b = _rotate_to(c2, t, v)
            add(FIGURE_EIGHT, a + b)
            add(FIGURE_EIGHT, a + _reverse(b))
        elif not common:
            for arc in _arcs_between(t, v1, v2, e1 | e2):
                start = t.edge(arc[0][0])
                u = start.u if arc[0][1] > 0 else start.v
                last = t.edge(arc[-1][0])
                w = last.v if arc[-1][1] > 0 else last.u
                a = _rotate_to(c1, t, u)
                b = _rotate_to(c2, t, w)
                add(BARBELL, a + arc + b + _reverse(arc))
                add(BARBELL, a + arc + _reverse(b) + _reverse(arc))
    return found


def candidate_words(t: TopologicalType) -> list[ConjClass]:
    return [c.word for c in enumerate_candidates(t)]
