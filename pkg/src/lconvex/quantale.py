"""Finite commutative integral quantales stored as dense index tables.

Elements are the integers ``0 .. size-1``.  Every operation is a table
lookup; the residuum is always derived from the tensor, never supplied.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

from .errors import (
    NotALattice,
    NotAssociative,
    NotCommutative,
    NotJoinDistributive,
    UnitNotTop,
    QuantaleError,
)

Table = tuple[tuple[int, ...], ...]

FLAVORS = ("godel", "lukasiewicz")


def _freeze(rows) -> Table:
    return tuple(tuple(int(v) for v in row) for row in rows)


class Quantale:
    """A validated finite commutative integral quantale.

    Build instances with :func:`build_from_tables` or
    :func:`build_chain_quantale`; the constructor trusts its input.
    Equality and hashing use the order and tensor tables only (labels and
    name are cosmetic).
    """

    __slots__ = ("size", "leq", "join", "meet", "tensor", "residuum",
                 "bottom", "top", "labels", "name", "_hash")

    def __init__(self, leq, join, meet, tensor, residuum, bottom, top,
                 labels=None, name=None):
        self.size = len(leq)
        self.leq = leq
        self.join = join
        self.meet = meet
        self.tensor = tensor
        self.residuum = residuum
        self.bottom = bottom
        self.top = top
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.size))
        self.name = name
        self._hash = hash((leq, tensor))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Quantale):
            return NotImplemented
        return self.leq == other.leq and self.tensor == other.tensor

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Quantale({self.name or self.size})"

    @property
    def elements(self) -> range:
        return range(self.size)

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def join_all(self, values: Iterable[int]) -> int:
        join = self.join
        acc = self.bottom
        for v in values:
            acc = join[acc][v]
        return acc

    def meet_all(self, values: Iterable[int]) -> int:
        meet = self.meet
        acc = self.top
        for v in values:
            acc = meet[acc][v]
        return acc

    def to_document(self) -> dict:
        return {
            "size": self.size,
            "leq": [[int(v) for v in row] for row in self.leq],
            "tensor": [list(row) for row in self.tensor],
            "labels": list(self.labels),
        }


def residuum(q: Quantale, a: int, b: int) -> int:
    """``a -> b``: the largest ``c`` with ``c (x) a <= b``."""
    return q.residuum[a][b]


def _lattice_tables(leq: Sequence[Sequence[bool]]):
    n = len(leq)
    for a in range(n):
        if not leq[a][a]:
            raise NotALattice(f"order is not reflexive at {a}", witness=(a,))
    for a, b in product(range(n), repeat=2):
        if a != b and leq[a][b] and leq[b][a]:
            raise NotALattice(f"order is not antisymmetric at {a}, {b}", witness=(a, b))
    for a, b, c in product(range(n), repeat=3):
        if leq[a][b] and leq[b][c] and not leq[a][c]:
            raise NotALattice(f"order is not transitive at {a}, {b}, {c}", witness=(a, b, c))

    def least(cands):
        for c in cands:
            if all(leq[c][d] for d in cands):
                return c
        return None

    def greatest(cands):
        for c in cands:
            if all(leq[d][c] for d in cands):
                return c
        return None

    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for a, b in product(range(n), repeat=2):
        j = least([c for c in range(n) if leq[a][c] and leq[b][c]])
        m = greatest([c for c in range(n) if leq[c][a] and leq[c][b]])
        if j is None:
            raise NotALattice(f"no join of {a} and {b}", witness=(a, b))
        if m is None:
            raise NotALattice(f"no meet of {a} and {b}", witness=(a, b))
        join[a][b] = j
        meet[a][b] = m
    bottom = least(list(range(n)))
    top = greatest(list(range(n)))
    if bottom is None or top is None:
        raise NotALattice("no bottom or no top element")
    return _freeze(join), _freeze(meet), bottom, top


def _check_tensor(leq, join, tensor, bottom, top):
    n = len(leq)
    for a, b in product(range(n), repeat=2):
        if tensor[a][b] != tensor[b][a]:
            raise NotCommutative(f"{a}*{b} != {b}*{a}", witness=(a, b))
    for a in range(n):
        if tensor[top][a] != a:
            raise UnitNotTop(f"top*{a} = {tensor[top][a]}", witness=(top, a))
    for a, b, c in product(range(n), repeat=3):
        if tensor[tensor[a][b]][c] != tensor[a][tensor[b][c]]:
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", witness=(a, b, c))
    for a in range(n):
        if tensor[a][bottom] != bottom:
            raise NotJoinDistributive(f"{a}*bottom != bottom", witness=(a, bottom))
    for a, b, c in product(range(n), repeat=3):
        if tensor[a][join[b][c]] != join[tensor[a][b]][tensor[a][c]]:
            raise NotJoinDistributive(f"{a}*({b} v {c}) != {a}*{b} v {a}*{c}", witness=(a, b, c))


def _derive_residuum(leq, join, tensor, bottom) -> Table:
    n = len(leq)
    res = [[0] * n for _ in range(n)]
    for b, c in product(range(n), repeat=2):
        acc = bottom
        for a in range(n):
            if leq[tensor[a][b]][c]:
                acc = join[acc][a]
        res[b][c] = acc
    return _freeze(res)


def _check_adjunction(leq, tensor, res):
    n = len(leq)
    for a, b, c in product(range(n), repeat=3):
        if bool(leq[tensor[a][b]][c]) != bool(leq[a][res[b][c]]):
            raise QuantaleError(f"adjunction fails at {a}, {b}, {c}", witness=(a, b, c))


def build_from_tables(leq, tensor, labels=None, name=None) -> Quantale:
    """Validate an order table and a tensor table, derive the residuum.

    Raises one of the :class:`QuantaleError` subclasses naming a witness.
    """
    n = len(leq)
    if n == 0 or any(len(row) != n for row in leq):
        raise NotALattice("order table must be a non-empty square")
    if len(tensor) != n or any(len(row) != n for row in tensor):
        raise QuantaleError("tensor table must be square and match the order table")
    if labels is not None and len(labels) != n:
        raise QuantaleError("labels must have one entry per element")
    leq_t = tuple(tuple(bool(v) for v in row) for row in leq)
    tensor_t = _freeze(tensor)
    for a, b in product(range(n), repeat=2):
        if not 0 <= tensor_t[a][b] < n:
            raise QuantaleError(f"tensor value out of range at {a}, {b}", witness=(a, b))
    join, meet, bottom, top = _lattice_tables(leq_t)
    _check_tensor(leq_t, join, tensor_t, bottom, top)
    res = _derive_residuum(leq_t, join, tensor_t, bottom)
    _check_adjunction(leq_t, tensor_t, res)
    return Quantale(leq_t, join, meet, tensor_t, res, bottom, top, labels=labels, name=name)


def chain_labels(n: int) -> list[str]:
    return [str(Fraction(i, n - 1)) for i in range(n)]


def build_chain_quantale(n: int, flavor: str = "godel") -> Quantale:
    """The ``n``-element chain with the Goedel (min) or Lukasiewicz tensor."""
    if n < 2:
        raise ValueError(f"a chain quantale needs at least 2 elements, got {n}")
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")
    leq = [[i <= j for j in range(n)] for i in range(n)]
    if flavor == "godel":
        tensor = [[min(i, j) for j in range(n)] for i in range(n)]
    else:
        tensor = [[max(0, i + j - (n - 1)) for j in range(n)] for i in range(n)]
    return build_from_tables(leq, tensor, labels=chain_labels(n), name=f"{flavor}-{n}")


def diamond_frame() -> Quantale:
    """``{0, a, b, 1}`` with ``a`` and ``b`` incomparable and tensor = meet."""
    leq = [
        [1, 1, 1, 1],
        [0, 1, 0, 1],
        [0, 0, 1, 1],
        [0, 0, 0, 1],
    ]
    meet = [
        [0, 0, 0, 0],
        [0, 1, 0, 1],
        [0, 0, 2, 2],
        [0, 1, 2, 3],
    ]
    return build_from_tables(leq, meet, labels=["0", "a", "b", "1"], name="diamond")


def from_document(doc: dict, name: Optional[str] = None) -> Quantale:
    """Build a quantale from its JSON document (tables or a chain builder)."""
    if "chain" in doc:
        spec = doc["chain"]
        return build_chain_quantale(int(spec["n"]), spec.get("flavor", "godel"))
    if doc.get("builtin") == "diamond":
        return diamond_frame()
    leq = doc["leq"]
    if "size" in doc and int(doc["size"]) != len(leq):
        raise QuantaleError(f"size {doc['size']} does not match the {len(leq)}-row order table")
    return build_from_tables(leq, doc["tensor"], labels=doc.get("labels"), name=name)


def law_violations(q: Quantale) -> list[str]:
    """Re-check every quantale law by exhaustive table scans.

    Returns a list of human-readable violations (empty when all hold).
    Used by the tests and the acceptance suite as an independent audit of a
    constructed instance.
    """
    out = []
    n = q.size
    E = range(n)
    for a, b, c in product(E, repeat=3):
        t = q.tensor
        if t[t[a][b]][c] != t[a][t[b][c]]:
            out.append(f"associativity {a},{b},{c}")
        if t[a][q.join[b][c]] != q.join[t[a][b]][t[a][c]]:
            out.append(f"distributivity {a},{b},{c}")
        if q.leq[t[a][b]][c] != q.leq[a][q.residuum[b][c]]:
            out.append(f"adjunction {a},{b},{c}")
    for a, b in product(E, repeat=2):
        if q.tensor[a][b] != q.tensor[b][a]:
            out.append(f"commutativity {a},{b}")
        if not q.leq[q.tensor[a][q.residuum[a][b]]][b]:
            out.append(f"modus ponens {a},{b}")
    for a in E:
        if q.tensor[q.top][a] != a:
            out.append(f"unit {a}")
        if q.residuum[a][a] != q.top or q.residuum[q.top][a] != a:
            out.append(f"residuum identities {a}")
    # residuum: antitone in the first argument, monotone in the second
    for a, a2, b in product(E, repeat=3):
        if q.leq[a][a2]:
            if not q.leq[q.residuum[a2][b]][q.residuum[a][b]]:
                out.append(f"residuum antitone {a},{a2},{b}")
            if not q.leq[q.residuum[b][a]][q.residuum[b][a2]]:
                out.append(f"residuum monotone {b},{a},{a2}")
    return out
