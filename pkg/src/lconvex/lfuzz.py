"""L-subsets of finite carriers and their pointwise algebra."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import CarrierMismatch, EmptySubcarrier, IndexOutOfRange
from .quantale import Quantale


@dataclass(frozen=True, slots=True)
class LSet:
    """An L-subset: one quantale element (index) per carrier point."""

    quantale: Quantale
    degrees: tuple[int, ...]

    def __post_init__(self):
        n = self.quantale.size
        for d in self.degrees:
            if not 0 <= d < n:
                raise IndexOutOfRange(f"degree {d} is not an element of {self.quantale!r}", witness=d)

    @property
    def size(self) -> int:
        return len(self.degrees)

    def __getitem__(self, x: int) -> int:
        return self.degrees[x]

    def __len__(self):
        return len(self.degrees)

    def __iter__(self) -> Iterator[int]:
        return iter(self.degrees)

    def __le__(self, other: "LSet") -> bool:
        """Pointwise (crisp) inclusion."""
        _same(self, other)
        leq = self.quantale.leq
        return all(leq[a][b] for a, b in zip(self.degrees, other.degrees))

    def meet(self, other: "LSet") -> "LSet":
        _same(self, other)
        m = self.quantale.meet
        return LSet(self.quantale, tuple(m[a][b] for a, b in zip(self.degrees, other.degrees)))

    def join(self, other: "LSet") -> "LSet":
        _same(self, other)
        j = self.quantale.join
        return LSet(self.quantale, tuple(j[a][b] for a, b in zip(self.degrees, other.degrees)))

    def height(self) -> int:
        """Join of all degrees."""
        return self.quantale.join_all(self.degrees)

    def to_document(self) -> dict:
        return {"degrees": list(self.degrees)}

    def __repr__(self):
        labels = self.quantale.labels
        return "LSet(" + ", ".join(labels[d] for d in self.degrees) + ")"


def _same(a: LSet, b: LSet) -> None:
    if len(a.degrees) != len(b.degrees) or a.quantale != b.quantale:
        raise CarrierMismatch(f"{a!r} and {b!r} live on different carriers or quantales")


def lset(q: Quantale, degrees: Iterable[int]) -> LSet:
    return LSet(q, tuple(degrees))


def sub(a: LSet, b: LSet) -> int:
    """Inclusion degree: meet over points of ``a(x) -> b(x)``."""
    _same(a, b)
    q = a.quantale
    res, meet = q.residuum, q.meet
    acc = q.top
    for x, y in zip(a.degrees, b.degrees):
        acc = meet[acc][res[x][y]]
    return acc


def constant(q: Quantale, size: int, a: int) -> LSet:
    if not 0 <= a < q.size:
        raise IndexOutOfRange(f"{a} is not an element", witness=a)
    return LSet(q, (a,) * size)


def characteristic(q: Quantale, size: int, x: int) -> LSet:
    if not 0 <= x < size:
        raise IndexOutOfRange(f"point {x} outside carrier of size {size}", witness=x)
    return LSet(q, tuple(q.top if i == x else q.bottom for i in range(size)))


def scale(a: int, A: LSet) -> LSet:
    """``(a (x) A)(x) = a (x) A(x)``."""
    q = A.quantale
    if not 0 <= a < q.size:
        raise IndexOutOfRange(f"{a} is not an element", witness=a)
    t = q.tensor
    return LSet(q, tuple(t[a][d] for d in A.degrees))


def implies(p: int, A: LSet) -> LSet:
    """Pointwise ``p -> A(x)``; the stratification operation."""
    q = A.quantale
    r = q.residuum
    return LSet(q, tuple(r[p][d] for d in A.degrees))


def restrict(A: LSet, points: Sequence[int]) -> LSet:
    if len(points) == 0:
        raise EmptySubcarrier("restriction to an empty set of points")
    for y in points:
        if not 0 <= y < A.size:
            raise IndexOutOfRange(f"point {y} outside carrier of size {A.size}", witness=y)
    return LSet(A.quantale, tuple(A.degrees[y] for y in points))


def _check_map(points: Sequence[int], source_size: int, target_size: int) -> None:
    if len(points) != source_size:
        raise CarrierMismatch(f"map has {len(points)} images for a carrier of size {source_size}")
    for y in points:
        if not 0 <= y < target_size:
            raise IndexOutOfRange(f"image {y} outside target of size {target_size}", witness=y)


def zadeh_forward(points: Sequence[int], A: LSet, target_size: int) -> LSet:
    """Image of ``A``: the degree at ``y`` is the join over the fiber of ``y``.

    Empty fibers get the bottom element.
    """
    _check_map(points, A.size, target_size)
    q = A.quantale
    join = q.join
    out = [q.bottom] * target_size
    for x, y in enumerate(points):
        out[y] = join[out[y]][A.degrees[x]]
    return LSet(q, tuple(out))


def zadeh_backward(points: Sequence[int], B: LSet) -> LSet:
    """Preimage of ``B``: ``B`` composed with the map."""
    _check_map(points, len(points), B.size)
    return LSet(B.quantale, tuple(B.degrees[y] for y in points))


def all_lsets(q: Quantale, size: int) -> Iterator[LSet]:
    """Every L-subset of a carrier of ``size`` points, lexicographically."""
    for degrees in product(range(q.size), repeat=size):
        yield LSet(q, degrees)


def pointwise_meet(q: Quantale, size: int, family: Iterable[LSet]) -> LSet:
    meet = q.meet
    acc = [q.top] * size
    for A in family:
        acc = [meet[a][b] for a, b in zip(acc, A.degrees)]
    return LSet(q, tuple(acc))


def pointwise_join(q: Quantale, size: int, family: Iterable[LSet]) -> LSet:
    join = q.join
    acc = [q.bottom] * size
    for A in family:
        acc = [join[a][b] for a, b in zip(acc, A.degrees)]
    return LSet(q, tuple(acc))
