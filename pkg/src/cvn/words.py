"""Exact word algebra in the free group F_n.

Letters are nonzero signed integers: ``k`` is the k-th generator, ``-k`` its
inverse.  Words are always kept freely reduced.  Conjugacy classes are
unoriented (closed under inversion), because loop lengths and edge counts in
a metric graph do not see the orientation of a loop.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import IndexOutOfRange, NotABasis, NotPrimitive, Unsupported

Letters = tuple[int, ...]


def free_reduce(letters) -> Letters:
    """Freely reduce a letter sequence (cancel adjacent k, -k pairs)."""
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def invert(letters) -> Letters:
    return tuple(-a for a in reversed(letters))


def cyclic_reduce(letters: Letters) -> tuple[Letters, Letters]:
    """Return (core, u) with letters = u * core * u^-1 and core cyclically reduced."""
    core = list(letters)
    pre: list[int] = []
    while len(core) >= 2 and core[0] == -core[-1]:
        pre.append(core[0])
        core = core[1:-1]
    return tuple(core), tuple(pre)


def _letter_key(a: int) -> int:
    # order letters 1 < -1 < 2 < -2 < ... so positive generators come first
    return 2 * abs(a) - (1 if a > 0 else 0)


def _canonical_cyclic(letters: Letters) -> Letters:
    """Least rotation of the cyclic word or its inverse, letters ordered
    1 < -1 < 2 < -2 < ..."""
    if not letters:
        return ()
    best = None
    best_key = None
    for seq in (letters, invert(letters)):
        for k in range(len(seq)):
            rot = seq[k:] + seq[:k]
            key = tuple(_letter_key(a) for a in rot)
            if best_key is None or key < best_key:
                best, best_key = rot, key
    return best


@dataclass(frozen=True)
class Word:
    """A freely reduced word in F_rank."""

    letters: Letters
    rank: int

    def __post_init__(self):
        for a in self.letters:
            if a == 0 or abs(a) > self.rank:
                raise IndexOutOfRange(f"letter {a} invalid at rank {self.rank}")
        if free_reduce(self.letters) != self.letters:
            raise ValueError("letters not freely reduced; use reduce()")

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "Word":
        return Word(invert(self.letters), self.rank)

    def __mul__(self, other: "Word") -> "Word":
        if other.rank != self.rank:
            raise IndexOutOfRange("rank mismatch")
        return Word(free_reduce(self.letters + other.letters), self.rank)

    def is_trivial(self) -> bool:
        return not self.letters

    def __str__(self):
        if not self.letters:
            return "1"
        names = "xyzuvw"

        def nm(a):
            i = abs(a) - 1
            s = names[i] if i < len(names) else f"x{i + 1}"
            return s if a > 0 else s + "^-1"

        return " ".join(nm(a) for a in self.letters)


def reduce(letters, rank: int) -> Word:
    """Freely reduce a raw letter sequence into a Word of the given rank."""
    for a in letters:
        if a == 0 or abs(a) > rank:
            raise IndexOutOfRange(f"letter {a} invalid at rank {rank}")
    return Word(free_reduce(tuple(letters)), rank)


def generator(i: int, rank: int) -> Word:
    return Word((i,), rank)


@dataclass(frozen=True)
class ConjClass:
    """Canonical representative of an unoriented conjugacy class."""

    rep: Word
    rank: int

    def is_trivial(self) -> bool:
        return self.rep.is_trivial()

    def __len__(self):
        return len(self.rep)

    def __str__(self):
        return str(self.rep)


def conj_normal_form(w: Word) -> ConjClass:
    """Canonical unoriented conjugacy class of w.

    Invariant under conjugation and inversion: the representative is the
    lexicographically least rotation of the cyclic reduction or its inverse.
    """
    core, _ = cyclic_reduce(w.letters)
    return ConjClass(Word(_canonical_cyclic(core), w.rank), w.rank)


def conj_class(letters, rank: int) -> ConjClass:
    return conj_normal_form(reduce(letters, rank))


def apply_endomorphism(w: Word, images: list[Word]) -> Word:
    """Substitute images[i-1] for generator i and freely reduce."""
    out: list[int] = []
    for a in w.letters:
        img = images[abs(a) - 1].letters
        out.extend(img if a > 0 else invert(img))
    rank = images[0].rank if images else w.rank
    return reduce(out, rank)


def abelianize(w: Word) -> tuple[int, ...]:
    """Signed letter counts, one entry per generator."""
    v = [0] * w.rank
    for a in w.letters:
        v[abs(a) - 1] += 1 if a > 0 else -1
    return tuple(v)


# ---------------------------------------------------------------------------
# Rewriting in a basis (Nielsen reduction with recorded coordinates).
# ---------------------------------------------------------------------------

_PLATEAU_CAP = 50_000


def _is_standard(cur) -> bool:
    if any(len(t) != 1 for t in cur):
        return False
    mags = sorted(abs(t[0]) for t in cur)
    return mags == list(range(1, len(cur) + 1))


def _nielsen_standardize(words: tuple[Letters, ...]):
    """Carry the tuple to (+-x_sigma(i)) by Nielsen moves, tracking coordinates.

    Returns (cur, expr) where expr[i] is a word in basis letters evaluating to
    cur[i], or None when the tuple is not a basis of F_n.
    """
    n = len(words)
    cur = tuple(words)
    expr = tuple((i + 1,) for i in range(n))

    def neighbors(state):
        scur, sexpr = state
        out = []
        for i in range(n):
            c = list(scur)
            e = list(sexpr)
            c[i] = invert(c[i])
            e[i] = invert(e[i])
            out.append((tuple(c), tuple(e)))
            for j in range(n):
                if i == j:
                    continue
                for s in (1, -1):
                    wj = scur[j] if s > 0 else invert(scur[j])
                    ej = sexpr[j] if s > 0 else invert(sexpr[j])
                    for left in (False, True):
                        c = list(scur)
                        e = list(sexpr)
                        if left:
                            c[i] = free_reduce(wj + c[i])
                            e[i] = free_reduce(ej + e[i])
                        else:
                            c[i] = free_reduce(c[i] + wj)
                            e[i] = free_reduce(e[i] + ej)
                        out.append((tuple(c), tuple(e)))
        return out

    def total(scur):
        return sum(len(t) for t in scur)

    state = (cur, expr)
    while True:
        scur, _ = state
        if any(len(t) == 0 for t in scur):
            return None
        if _is_standard(scur):
            return state
        base = total(scur)
        # greedy strict descent
        best = None
        for nb in neighbors(state):
            if any(len(t) == 0 for t in nb[0]):
                return None
            t = total(nb[0])
            if t < base and (best is None or t < total(best[0])):
                best = nb
        if best is not None:
            state = best
            continue
        # plateau search at constant total length
        seen = {scur}
        queue = deque([state])
        jumped = False
        while queue:
            if len(seen) > _PLATEAU_CAP:
                return None
            st = queue.popleft()
            for nb in neighbors(st):
                ncur = nb[0]
                if any(len(t) == 0 for t in ncur):
                    return None
                t = total(ncur)
                if t < base:
                    state = nb
                    jumped = True
                    break
                if t == base and ncur not in seen:
                    if _is_standard(ncur):
                        return nb
                    seen.add(ncur)
                    queue.append(nb)
            if jumped:
                break
        if not jumped:
            return None


@lru_cache(maxsize=256)
def _basis_inverse(basis_letters: tuple[Letters, ...], rank: int) -> tuple[Letters, ...]:
    """For a basis (b_1..b_n) return c_1..c_n with c_m(b) = x_m, in b-letters."""
    n = len(basis_letters)
    res = _nielsen_standardize(basis_letters)
    if res is None:
        raise NotABasis(f"{basis_letters} is not a basis of F_{rank}")
    cur, expr = res
    c: list[Letters] = [()] * n
    for i in range(n):
        (a,) = cur[i]
        c[abs(a) - 1] = expr[i] if a > 0 else invert(expr[i])
    return tuple(c)


def is_basis(basis: list[Word], rank: int) -> bool:
    if len(basis) != rank:
        return False
    try:
        _basis_inverse(tuple(b.letters for b in basis), rank)
    except NotABasis:
        return False
    return True


def rewrite_in_basis(w: Word, basis: list[Word]) -> Word:
    """Express w in the given basis; letter i of the result stands for basis[i-1].

    Raises NotABasis when the words do not form a basis of F_n.
    """
    n = len(basis)
    if n != w.rank:
        raise NotABasis(f"need {w.rank} basis words, got {n}")
    c = _basis_inverse(tuple(b.letters for b in basis), w.rank)
    out: list[int] = []
    for a in w.letters:
        img = c[abs(a) - 1]
        out.extend(img if a > 0 else invert(img))
    return reduce(out, n)


# ---------------------------------------------------------------------------
# Whitehead machinery: primitivity and basis extension.
# ---------------------------------------------------------------------------

_WHITEHEAD_RANK_CAP = 3


@lru_cache(maxsize=8)
def whitehead_automorphisms(rank: int) -> tuple[tuple[Word, ...], ...]:
    """All Whitehead automorphisms of type II as image tuples."""
    autos = set()
    for a in [s * m for m in range(1, rank + 1) for s in (1, -1)]:
        others = [g for g in range(1, rank + 1) if g != abs(a)]
        for forms in itertools.product(range(4), repeat=len(others)):
            images: list[Letters] = [()] * rank
            images[abs(a) - 1] = (abs(a),)
            for g, f in zip(others, forms):
                if f == 0:
                    images[g - 1] = (g,)
                elif f == 1:
                    images[g - 1] = (g, a)
                elif f == 2:
                    images[g - 1] = (-a, g)
                else:
                    images[g - 1] = (-a, g, a)
            autos.add(tuple(images))
    return tuple(
        tuple(Word(img, rank) for img in images) for images in sorted(autos)
    )


def _cyclic_len(w: Word) -> int:
    core, _ = cyclic_reduce(w.letters)
    return len(core)


def extend_to_basis(w: Word) -> list[Word]:
    """Extend a primitive element to a basis whose first entry is conjugate to w.

    Whitehead reduction: repeatedly apply the length-reducing type II
    automorphism until the cyclic length is minimal.  Primitive iff the
    minimum is 1.  Rank capped at 3 (exhaustive search only).
    """
    if w.rank > _WHITEHEAD_RANK_CAP:
        raise Unsupported(f"rank {w.rank} > {_WHITEHEAD_RANK_CAP}")
    if not w.letters:
        raise NotPrimitive("trivial word")
    rank = w.rank
    autos = whitehead_automorphisms(rank)
    psi = [generator(i, rank) for i in range(1, rank + 1)]  # composed images
    cur = conj_normal_form(w).rep
    improved = True
    while improved and len(cur) > 1:
        improved = False
        for images in autos:
            cand = conj_normal_form(apply_endomorphism(cur, list(images))).rep
            if len(cand) < len(cur):
                cur = cand
                psi = [apply_endomorphism(p, list(images)) for p in psi]
                improved = True
                break
    if len(cur) != 1:
        raise NotPrimitive(f"{w} has minimal cyclic length {len(cur)}")
    (a,) = cur.letters
    m, s = abs(a), (1 if a > 0 else -1)
    # invert the composed automorphism via rewriting in its image basis
    inv_images = []
    for i in range(1, rank + 1):
        u = rewrite_in_basis(generator(i, rank), psi)
        inv_images.append(Word(u.letters, rank))
    first = inv_images[m - 1] if s > 0 else inv_images[m - 1].inverse()
    basis = [first] + [inv_images[i - 1] for i in range(1, rank + 1) if i != m]
    for i in range(1, rank + 1):  # sanity: result is a basis
        rewrite_in_basis(generator(i, rank), basis)
    return basis


def is_primitive(w: Word) -> bool:
    try:
        extend_to_basis(w)
    except NotPrimitive:
        return False
    return True


# ---------------------------------------------------------------------------
# Enumeration of short conjugacy classes (brute-force oracles).
# ---------------------------------------------------------------------------


def conjugacy_classes_up_to(rank: int, max_len: int):
    """Yield every nontrivial unoriented conjugacy class of length <= max_len.

    Each class appears exactly once, via its canonical representative.
    """
    alphabet = [s * m for m in range(1, rank + 1) for s in (1, -1)]
    for length in range(1, max_len + 1):
        for tup in itertools.product(alphabet, repeat=length):
            ok = all(tup[i] != -tup[i + 1] for i in range(length - 1))
            if not ok or tup[-1] == -tup[0]:
                continue
            if _canonical_cyclic(tup) != tup:
                continue
            yield ConjClass(Word(tup, rank), rank)
