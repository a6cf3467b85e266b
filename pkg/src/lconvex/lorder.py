"""Finite L-ordered sets: suprema, infima, completeness, isomorphism search."""
from __future__ import annotations

from collections import Counter
from itertools import product
from typing import Optional, Sequence

from .errors import (
    CarrierMismatch,
    E1Violation,
    E2Violation,
    E3Violation,
    SizeLimitExceeded,
)
from .lfuzz import LSet, sub
from .quantale import Quantale

DEFAULT_COMPLETENESS_CAP = 2 ** 20


class LOrderedSet:
    """A carrier ``0 .. size-1`` with an L-valued order table ``e``.

    ``elements`` optionally records what each point stands for (for
    example the convex sets of a space); it does not take part in equality.
    """

    def __init__(self, quantale: Quantale, e, elements=None):
        self.quantale = quantale
        self.e = tuple(tuple(row) for row in e)
        self.size = len(self.e)
        self.elements = tuple(elements) if elements is not None else None

    def __eq__(self, other):
        if not isinstance(other, LOrderedSet):
            return NotImplemented
        return self.quantale == other.quantale and self.e == other.e

    def __hash__(self):
        return hash((self.quantale, self.e))

    def __repr__(self):
        return f"LOrderedSet(size={self.size})"


def check_lorder(q: Quantale, e: Sequence[Sequence[int]], elements=None) -> LOrderedSet:
    """Verify reflexivity (E1), transitivity (E2) and antisymmetry (E3)."""
    n = len(e)
    if any(len(row) != n for row in e):
        raise CarrierMismatch("order table must be square")
    for x in range(n):
        if e[x][x] != q.top:
            raise E1Violation(f"e({x},{x}) is not top", witness=(x,))
    t, leq = q.tensor, q.leq
    for x, y, z in product(range(n), repeat=3):
        if not leq[t[e[x][y]][e[y][z]]][e[x][z]]:
            raise E2Violation(f"e({x},{y}) (x) e({y},{z}) > e({x},{z})", witness=(x, y, z))
    for x, y in product(range(n), repeat=2):
        if x != y and e[x][y] == q.top and e[y][x] == q.top:
            raise E3Violation(f"e({x},{y}) = e({y},{x}) = top for distinct points", witness=(x, y))
    return LOrderedSet(q, e, elements)


def inclusion_order(q: Quantale, family: Sequence[LSet]) -> LOrderedSet:
    """``(family, sub)`` as a validated L-ordered set."""
    e = [[sub(A, B) for B in family] for A in family]
    return check_lorder(q, e, elements=family)


def up(P: LOrderedSet, x: int) -> LSet:
    return LSet(P.quantale, tuple(P.e[x][y] for y in range(P.size)))


def down(P: LOrderedSet, x: int) -> LSet:
    return LSet(P.quantale, tuple(P.e[y][x] for y in range(P.size)))


def _check_over(P: LOrderedSet, A: LSet) -> None:
    if A.size != P.size or A.quantale != P.quantale:
        raise CarrierMismatch(f"{A!r} is not an L-subset of {P!r}")


def _matches(P: LOrderedSet, target: tuple[int, ...], columns: bool) -> list[int]:
    e = P.e
    if columns:
        return [x for x in range(P.size) if all(e[y][x] == target[y] for y in range(P.size))]
    return [x for x in range(P.size) if e[x] == target]


def _sup_profile(P: LOrderedSet, A: LSet) -> tuple[int, ...]:
    # sub(A, down(y)) for every y
    q = P.quantale
    res, meet, e = q.residuum, q.meet, P.e
    n = P.size
    out = []
    for y in range(n):
        acc = q.top
        for x in range(n):
            acc = meet[acc][res[A.degrees[x]][e[x][y]]]
        out.append(acc)
    return tuple(out)


def _inf_profile(P: LOrderedSet, A: LSet) -> tuple[int, ...]:
    # sub(A, up(y)) for every y
    q = P.quantale
    res, meet, e = q.residuum, q.meet, P.e
    n = P.size
    out = []
    for y in range(n):
        acc = q.top
        for x in range(n):
            acc = meet[acc][res[A.degrees[x]][e[y][x]]]
        out.append(acc)
    return tuple(out)


def sup(P: LOrderedSet, A: LSet) -> Optional[int]:
    """The point ``x0`` with ``e(x0, y) = sub(A, down(y))`` for all ``y``, or None."""
    _check_over(P, A)
    found = _matches(P, _sup_profile(P, A), columns=False)
    assert len(found) <= 1, f"supremum not unique: {found}"
    return found[0] if found else None


def inf(P: LOrderedSet, A: LSet) -> Optional[int]:
    """The point ``x0`` with ``e(y, x0) = sub(A, up(y))`` for all ``y``, or None."""
    _check_over(P, A)
    found = _matches(P, _inf_profile(P, A), columns=True)
    assert len(found) <= 1, f"infimum not unique: {found}"
    return found[0] if found else None


class _SupTable:
    """Fast repeated suprema on one L-ordered set (row lookup by profile)."""

    def __init__(self, P: LOrderedSet):
        self.P = P
        self.rows = {row: x for x, row in enumerate(P.e)}

    def __call__(self, A: LSet) -> Optional[int]:
        return self.rows.get(_sup_profile(self.P, A))


class _InfTable:
    def __init__(self, P: LOrderedSet):
        self.P = P
        n = P.size
        self.cols = {tuple(P.e[y][x] for y in range(n)): x for x in range(n)}

    def __call__(self, A: LSet) -> Optional[int]:
        return self.cols.get(_inf_profile(self.P, A))


def _enumeration_size(P: LOrderedSet) -> int:
    return P.quantale.size ** P.size


def is_complete(P: LOrderedSet, cap: int = DEFAULT_COMPLETENESS_CAP) -> bool:
    """True iff every L-subset of ``P`` has a supremum (exhaustive)."""
    total = _enumeration_size(P)
    if total > cap:
        raise SizeLimitExceeded(f"{total} L-subsets exceed the cap {cap}", witness=total)
    find = _SupTable(P)
    q = P.quantale
    for degrees in product(range(q.size), repeat=P.size):
        if find(LSet(q, degrees)) is None:
            return False
    return True


def is_order_preserving(f: Sequence[int], P: LOrderedSet, Q: LOrderedSet) -> bool:
    leq = P.quantale.leq
    return all(leq[P.e[x][y]][Q.e[f[x]][f[y]]] for x, y in product(range(P.size), repeat=2))


def is_order_iso(f: Sequence[int], P: LOrderedSet, Q: LOrderedSet) -> bool:
    if P.size != Q.size or sorted(f) != list(range(Q.size)):
        return False
    return all(P.e[x][y] == Q.e[f[x]][f[y]] for x, y in product(range(P.size), repeat=2))


def _signature(P: LOrderedSet, x: int):
    row = Counter(P.e[x])
    col = Counter(P.e[y][x] for y in range(P.size))
    return tuple(sorted(row.items())), tuple(sorted(col.items()))


def find_order_iso(P: LOrderedSet, Q: LOrderedSet, cap: int = 10 ** 6) -> Optional[tuple[int, ...]]:
    """First order-isomorphism ``P -> Q`` in lexicographic order, or None.

    Backtracking over bijections; candidates are pruned by the multiset of
    row and column values of each point.  ``cap`` bounds the number of
    visited search nodes.
    """
    if P.quantale != Q.quantale or P.size != Q.size:
        return None
    n = P.size
    sig_p = [_signature(P, x) for x in range(n)]
    sig_q = [_signature(Q, y) for y in range(n)]
    if sorted(sig_p) != sorted(sig_q):
        return None
    cands = [[y for y in range(n) if sig_q[y] == sig_p[x]] for x in range(n)]
    assign: list[int] = []
    used = [False] * n
    visited = 0

    def consistent(x, y):
        for x2, y2 in enumerate(assign):
            if P.e[x][x2] != Q.e[y][y2] or P.e[x2][x] != Q.e[y2][y]:
                return False
        return P.e[x][x] == Q.e[y][y]

    def extend(x):
        nonlocal visited
        if x == n:
            return True
        for y in cands[x]:
            if used[y]:
                continue
            visited += 1
            if visited > cap:
                raise SizeLimitExceeded(f"order-iso search exceeded {cap} nodes", witness=cap)
            if consistent(x, y):
                assign.append(y)
                used[y] = True
                if extend(x + 1):
                    return True
                assign.pop()
                used[y] = False
        return False

    return tuple(assign) if extend(0) else None


def sup_preserving(f: Sequence[int], P: LOrderedSet, Q: LOrderedSet,
                   cap: int = DEFAULT_COMPLETENESS_CAP) -> bool:
    """``f(sup A) = sup f->(A)`` for every L-subset ``A`` of complete ``P``."""
    return _preserves(f, P, Q, _SupTable, cap)


def inf_preserving(f: Sequence[int], P: LOrderedSet, Q: LOrderedSet,
                   cap: int = DEFAULT_COMPLETENESS_CAP) -> bool:
    return _preserves(f, P, Q, _InfTable, cap)


def _preserves(f, P, Q, table, cap) -> bool:
    total = _enumeration_size(P)
    if total > cap:
        raise SizeLimitExceeded(f"{total} L-subsets exceed the cap {cap}", witness=total)
    in_p, in_q = table(P), table(Q)
    q = P.quantale
    join = q.join
    for degrees in product(range(q.size), repeat=P.size):
        s = in_p(LSet(q, degrees))
        image = [q.bottom] * Q.size
        for x, d in enumerate(degrees):
            image[f[x]] = join[image[f[x]]][d]
        t = in_q(LSet(q, tuple(image)))
        if s is None or t is None:
            raise ValueError("sup/inf preservation is only defined between complete L-ordered sets")
        if f[s] != t:
            return False
    return True
