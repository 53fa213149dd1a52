"""Random points of Outer Space for experiments and property tests.

Points are produced by picking a standard topological type, twisting the
marking by a random automorphism, and drawing random rational edge lengths.
Everything is driven by a caller-supplied random.Random so runs reproduce.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .graphs import (
    SimplexPoint,
    apply_outer_automorphism,
    barbell_type,
    blow_up_vertex,
    rose_type,
    theta_type,
)
from .words import Word, generator


def random_automorphism(rank: int, rng, steps: int = 4) -> list[Word]:
    """Images of the generators under a random composition of Nielsen moves."""
    images = [generator(i, rank) for i in range(1, rank + 1)]
    for _ in range(steps):
        kind = rng.randrange(3)
        i = rng.randrange(rank)
        if kind == 0:
            images[i] = images[i].inverse()
        else:
            j = rng.choice([k for k in range(rank) if k != i]) if rank > 1 else i
            if rank == 1:
                continue
            other = images[j] if rng.random() < 0.5 else images[j].inverse()
            new = images[i] * other if kind == 1 else other * images[i]
            if not new.is_trivial():
                images[i] = new
    return images


def random_lengths(n: int, rng) -> tuple[Fraction, ...]:
    nums = [rng.randint(1, 12) for _ in range(n)]
    total = sum(nums)
    return tuple(Fraction(k, total) for k in nums)


@lru_cache(maxsize=8)
def _types(rank: int):
    if rank == 2:
        return (rose_type(2), theta_type(), barbell_type())
    if rank != 3:
        return (rose_type(rank),)
    rose = rose_type(3)
    # two explicit trivalent resolutions: a chain of three loops, and a
    # theta with an extra loop hanging off
    t = blow_up_vertex(rose, "o",
                       {("p1", 0), ("p1", 1)},
                       {("p2", 0), ("p2", 1), ("p3", 0), ("p3", 1)})
    v2 = t.vertices[-1]
    chain = blow_up_vertex(t, v2,
                           {("p2", 0), ("p2", 1)},
                           {("p3", 0), ("p3", 1), ("blow", 1)})
    t = blow_up_vertex(rose, "o",
                       {("p1", 0), ("p2", 0)},
                       {("p1", 1), ("p2", 1), ("p3", 0), ("p3", 1)})
    v2 = t.vertices[-1]
    theta_loop = blow_up_vertex(t, v2,
                                {("p1", 1), ("p2", 1)},
                                {("p3", 0), ("p3", 1), ("blow", 1)})
    return (rose, chain, theta_loop)


def random_point(rank: int, rng, twist_steps: int = 4) -> SimplexPoint:
    t = rng.choice(_types(rank))
    p = SimplexPoint(t, random_lengths(len(t.edges), rng))
    return apply_outer_automorphism(p, random_automorphism(rank, rng, twist_steps))


def random_pair(rank: int, rng, twist_steps: int = 4):
    return random_point(rank, rng, twist_steps), random_point(rank, rng, twist_steps)
