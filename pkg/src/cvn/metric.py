"""The asymmetric Lipschitz metric on Outer Space.

All stretch factors are exact rationals; distances are carried
multiplicatively and only converted to logarithms for display.  The maximal
stretch from A to B is attained on a candidate of A, which makes every
quantity here a finite exact maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .candidates import enumerate_candidates
from .errors import RankMismatch, TrivialClass
from .graphs import SimplexPoint, marking_equivalent, tighten
from .words import ConjClass, conjugacy_classes_up_to


def conj_length(p: SimplexPoint, gamma: ConjClass) -> Fraction:
    """Length of the immersed loop realizing gamma in p."""
    if gamma.is_trivial():
        raise TrivialClass("trivial class has zero length")
    t = p.ttype
    return sum(p.lengths[t.index(eid)] for eid, _ in tighten(t, gamma))


@dataclass(frozen=True)
class StretchReport:
    lam: Fraction
    candidate_witnesses: frozenset
    per_candidate: dict

    def __post_init__(self):
        assert self.lam == max(self.per_candidate.values())


def stretch_report(a: SimplexPoint, b: SimplexPoint) -> StretchReport:
    """Maximal stretch from a to b with the argmax candidate set CW(a,b)."""
    if a.ttype.rank != b.ttype.rank:
        raise RankMismatch("points live in different Outer Spaces")
    per = {}
    for c in enumerate_candidates(a.ttype):
        per[c.word] = conj_length(b, c.word) / conj_length(a, c.word)
    lam = max(per.values())
    cw = frozenset(w for w, r in per.items() if r == lam)
    return StretchReport(lam, cw, per)


def stretch(a: SimplexPoint, b: SimplexPoint) -> Fraction:
    return stretch_report(a, b).lam


@dataclass(frozen=True)
class Distance:
    """A distance value stored as an exact stretch factor."""

    lam: Fraction
    mode: str

    @property
    def log(self) -> float:
        return math.log(self.lam)


def distance(a: SimplexPoint, b: SimplexPoint, mode: str = "right") -> Distance:
    """right = log stretch(a,b); left = log stretch(b,a); symmetric = sum."""
    if mode == "right":
        lam = stretch(a, b)
    elif mode == "left":
        lam = stretch(b, a)
    elif mode in ("symmetric", "sym"):
        lam = stretch(a, b) * stretch(b, a)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return Distance(lam, mode)


def is_witness(gamma: ConjClass, a: SimplexPoint, b: SimplexPoint) -> bool:
    """Whether gamma is stretched maximally from a to b."""
    if gamma.is_trivial():
        raise TrivialClass("trivial class cannot witness")
    return conj_length(b, gamma) / conj_length(a, gamma) == stretch(a, b)


def candidate_witnesses(a: SimplexPoint, b: SimplexPoint) -> frozenset:
    return stretch_report(a, b).candidate_witnesses


def same_point(a: SimplexPoint, b: SimplexPoint) -> bool:
    """Equality as points of Outer Space (zero symmetric distance)."""
    return (
        marking_equivalent(a.ttype, b.ttype)
        and stretch(a, b) == 1
        and stretch(b, a) == 1
    )


def brute_force_lambda(a: SimplexPoint, b: SimplexPoint, max_len: int):
    """Max ratio over all conjugacy classes of word length <= max_len.

    Independent of the candidate machinery; used as an oracle for the
    finiteness theorem.  Returns (ratio, argmax classes).
    """
    best = None
    argmax: list[ConjClass] = []
    for g in conjugacy_classes_up_to(a.ttype.rank, max_len):
        r = conj_length(b, g) / conj_length(a, g)
        if best is None or r > best:
            best = r
            argmax = [g]
        elif r == best:
            argmax.append(g)
    return best, argmax
