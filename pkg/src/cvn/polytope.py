"""Exact convex geometry inside a coordinate simplex.

All polytopes live in the simplex {x >= 0, sum x = 1} of some dimension and
are cut out by homogeneous half-spaces c.x >= 0.  Everything is rational:
feasibility runs a textbook phase-1 simplex method with Bland's rule, and
vertices come from exhaustive tight-set enumeration (ambient dimension is
at most 3n-4, so this is cheap and obviously correct).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import DimensionMismatch, Infeasible

Vector = tuple[Fraction, ...]

SIMPLEX_BOUNDARY = "simplex-boundary"


@dataclass(frozen=True)
class HalfSpace:
    """The constraint coeffs . x >= 0, tagged with where it came from."""

    coeffs: Vector
    provenance: tuple
    degenerate: bool = field(default=False)

    @staticmethod
    def make(coeffs, provenance) -> "HalfSpace":
        coeffs = tuple(Fraction(c) for c in coeffs)
        return HalfSpace(coeffs, provenance, all(c == 0 for c in coeffs))

    def value(self, x) -> Fraction:
        if len(x) != len(self.coeffs):
            raise DimensionMismatch(f"{len(x)} != {len(self.coeffs)}")
        return sum(c * q for c, q in zip(self.coeffs, x))


def equality(coeffs, provenance) -> list[HalfSpace]:
    """An equality constraint as a pair of opposite half-spaces."""
    plus = HalfSpace.make(coeffs, provenance + ("==", "+"))
    minus = HalfSpace.make([-c for c in coeffs], provenance + ("==", "-"))
    return [plus, minus]


# ---------------------------------------------------------------------------
# Exact LP feasibility (phase-1 simplex, Bland's rule).
# ---------------------------------------------------------------------------


def _phase1_feasible(rows: list[list[Fraction]], rhs: list[Fraction]) -> bool:
    """Whether {v >= 0 : rows . v = rhs} is nonempty; rhs must be >= 0."""
    m = len(rows)
    if m == 0:
        return True
    n = len(rows[0])
    tab = [list(rows[i]) + [Fraction(int(k == i)) for k in range(m)]
           + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # reduced costs for minimizing the artificial sum
    red = [Fraction(0)] * (n + m + 1)
    for j in range(n):
        red[j] = -sum(tab[i][j] for i in range(m))
    red[n + m] = -sum(rhs)
    while True:
        enter = next((j for j in range(n + m) if red[j] < 0), None)
        if enter is None:
            break
        pivot_row = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][n + m] / tab[i][enter]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[pivot_row]
                ):
                    best = ratio
                    pivot_row = i
        if pivot_row is None:
            return False  # unbounded phase 1 cannot happen; defensive
        piv = tab[pivot_row][enter]
        tab[pivot_row] = [q / piv for q in tab[pivot_row]]
        for i in range(m):
            if i != pivot_row and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[pivot_row])]
        if red[enter] != 0:
            f = red[enter]
            red = [a - f * b for a, b in zip(red, tab[pivot_row])]
        basis[pivot_row] = enter
    return red[n + m] == 0


def feasible(halfspaces, ambient_dim: int) -> bool:
    """Exact feasibility of {x in simplex : all half-spaces hold}."""
    live = []
    for h in halfspaces:
        if len(h.coeffs) != ambient_dim:
            raise DimensionMismatch(
                f"half-space in dim {len(h.coeffs)}, ambient {ambient_dim}"
            )
        if not h.degenerate:
            live.append(h)
    d = ambient_dim
    k = len(live)
    rows = [[Fraction(1)] * d + [Fraction(0)] * k]
    rhs = [Fraction(1)]
    for j, h in enumerate(live):
        row = list(h.coeffs) + [Fraction(0)] * k
        row[d + j] = Fraction(-1)  # slack: c.x - s = 0
        rows.append(row)
        rhs.append(Fraction(0))
    return _phase1_feasible(rows, rhs)


# ---------------------------------------------------------------------------
# Linear algebra helpers.
# ---------------------------------------------------------------------------


def _solve_square(rows, rhs):
    """Solve a square rational system; None when singular."""
    n = len(rows)
    a = [list(r) + [q] for r, q in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [q / p for q in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return tuple(a[i][n] for i in range(n))


def affine_rank(points) -> int:
    """Dimension of the affine hull of a point set (-1 when empty)."""
    pts = list(points)
    if not pts:
        return -1
    base = pts[0]
    rows = [[q - b for q, b in zip(p, base)] for p in pts[1:]]
    rank = 0
    cols = len(base)
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [q / p for q in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


# ---------------------------------------------------------------------------
# Polytopes.
# ---------------------------------------------------------------------------


class Polytope:
    """Intersection of half-spaces with the coordinate simplex."""

    def __init__(self, ambient_dim: int, halfspaces):
        self.ambient_dim = ambient_dim
        self.halfspaces = tuple(halfspaces)
        for h in self.halfspaces:
            if len(h.coeffs) != ambient_dim:
                raise DimensionMismatch(
                    f"half-space in dim {len(h.coeffs)}, ambient {ambient_dim}"
                )

    @cached_property
    def constraints(self) -> tuple[HalfSpace, ...]:
        """Non-degenerate half-spaces plus the simplex boundary, deduplicated."""
        d = self.ambient_dim
        out = []
        seen = set()
        for h in self.halfspaces:
            if h.degenerate or h.coeffs in seen:
                continue
            seen.add(h.coeffs)
            out.append(h)
        for i in range(d):
            co = tuple(Fraction(int(j == i)) for j in range(d))
            if co not in seen:
                seen.add(co)
                out.append(HalfSpace.make(co, (SIMPLEX_BOUNDARY, i)))
        return tuple(out)

    @cached_property
    def vertices(self) -> tuple[Vector, ...]:
        d = self.ambient_dim
        cons = self.constraints
        ones = [Fraction(1)] * d
        found = set()
        for combo in itertools.combinations(range(len(cons)), d - 1):
            rows = [list(cons[i].coeffs) for i in combo] + [ones]
            rhs = [Fraction(0)] * (d - 1) + [Fraction(1)]
            x = _solve_square(rows, rhs)
            if x is None:
                continue
            if all(h.value(x) >= 0 for h in cons):
                found.add(x)
        return tuple(sorted(found))

    def is_feasible(self) -> bool:
        return feasible(self.halfspaces, self.ambient_dim)

    @cached_property
    def dim(self) -> int:
        return affine_rank(self.vertices)

    def tight_set(self, x) -> frozenset:
        return frozenset(
            i for i, h in enumerate(self.constraints) if h.value(x) == 0
        )

    @cached_property
    def skeleton_edges(self) -> tuple[tuple[int, int], ...]:
        """1-faces as index pairs into the vertex list."""
        vs = self.vertices
        if not vs:
            raise Infeasible("empty polytope has no skeleton")
        tights = [self.tight_set(v) for v in vs]
        edges = []
        for i, j in itertools.combinations(range(len(vs)), 2):
            common = tights[i] & tights[j]
            face = [k for k in range(len(vs)) if common <= tights[k]]
            if face == sorted((i, j)):
                edges.append((i, j))
        return tuple(edges)

    def contains(self, x, mode: str = "closed") -> bool:
        x = tuple(Fraction(q) for q in x)
        if len(x) != self.ambient_dim:
            raise DimensionMismatch(f"point in dim {len(x)}")
        if sum(x) != 1:
            return False
        if any(h.value(x) < 0 for h in self.constraints):
            return False
        if mode == "closed":
            return True
        if mode != "relative-interior":
            raise ValueError(f"unknown mode {mode!r}")
        vs = self.vertices
        if not vs:
            return False
        for h in self.constraints:
            if h.value(x) == 0 and any(h.value(v) != 0 for v in vs):
                return False
        return True

    def barycenter(self) -> Vector:
        vs = self.vertices
        if not vs:
            raise Infeasible("empty polytope")
        n = len(vs)
        return tuple(sum(v[i] for v in vs) / n for i in range(self.ambient_dim))
