"""Bit-indexed vertex sets, colex subset streams, and induced edge counts.

Vertices carry 1-based labels and live in a fixed-width machine word: label v
occupies bit v-1.  That caps the ground set at 64 vertices (override with the
RAMSEY024_CAPACITY environment variable if you know what you are doing), which
is plenty for instances where full enumeration of all r-subsets is the point.

Subset streams are colexicographic: S precedes T exactly when the largest
element of the symmetric difference lies in T.  Colex ranks do not move when
the ground set grows, so an index range [lo, hi) names the same subsets for
every N, and that is what makes sharded sweeps and per-subset random streams
reproducible.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator

DEFAULT_CAPACITY = 64
_CAPACITY_ENV = "RAMSEY024_CAPACITY"


class CapacityError(ValueError):
    """Ground-set size exceeds the configured bit-width profile."""


def capacity() -> int:
    """Current ground-set capacity (bits per vertex word)."""
    raw = os.environ.get(_CAPACITY_ENV)
    return int(raw) if raw else DEFAULT_CAPACITY


def check_ground_size(n: int) -> int:
    if n < 0:
        raise ValueError(f"ground size must be nonnegative, got {n}")
    if n > capacity():
        raise CapacityError(f"ground size {n} exceeds capacity {capacity()}")
    return n


# ── vertex sets ──────────────────────────────────────────────────────────────


@dataclass(frozen=True, order=True)
class VertexSet:
    """An unordered set of 1-based vertex labels packed into an int.

    Ordering by the packed word is exactly colex order on subsets, so sorting
    VertexSets sorts them the same way enumerate_subsets emits them.
    """

    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0:
            raise ValueError("negative bit pattern")

    @staticmethod
    def of(*vertices: int) -> "VertexSet":
        return VertexSet.from_iterable(vertices)

    @staticmethod
    def from_iterable(vertices: Iterable[int]) -> "VertexSet":
        bits = 0
        for v in vertices:
            if v < 1:
                raise ValueError(f"vertex labels are 1-based, got {v}")
            bits |= 1 << (v - 1)
        return VertexSet(bits)

    @property
    def cardinality(self) -> int:
        return self.bits.bit_count()

    @property
    def members(self) -> tuple[int, ...]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length())
            b ^= low
        return tuple(out)

    def __contains__(self, v: int) -> bool:
        return v >= 1 and (self.bits >> (v - 1)) & 1 == 1

    def __len__(self) -> int:
        return self.bits.bit_count()

    def issubset(self, other: "VertexSet") -> bool:
        return self.bits & ~other.bits == 0

    def union(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.bits | other.bits)

    def intersection(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.bits & other.bits)

    def difference(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.bits & ~other.bits)

    def remove(self, *vertices: int) -> "VertexSet":
        return self.difference(VertexSet.of(*vertices))

    def __str__(self) -> str:
        return "{" + ",".join(str(v) for v in self.members) + "}"


@dataclass(frozen=True)
class OrderedTuple:
    """Strictly increasing vertex labels; positions (ranks) are 1-based."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        vs = self.vertices
        if any(v < 1 for v in vs):
            raise ValueError("vertex labels are 1-based")
        if any(a >= b for a, b in zip(vs, vs[1:])):
            raise ValueError(f"labels must be strictly increasing, got {vs}")

    @staticmethod
    def from_vertex_set(s: VertexSet) -> "OrderedTuple":
        return OrderedTuple(s.members)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def rank_of(self, v: int) -> int:
        """1-based position of label v, ValueError if absent."""
        try:
            return self.vertices.index(v) + 1
        except ValueError:
            raise ValueError(f"vertex {v} not in tuple {self.vertices}") from None

    def to_vertex_set(self) -> VertexSet:
        return VertexSet.from_iterable(self.vertices)


# ── colex enumeration and ranking ────────────────────────────────────────────


def colex_rank(t: tuple[int, ...]) -> int:
    """Rank of a strictly increasing label tuple in the colex stream."""
    return sum(comb(a - 1, i + 1) for i, a in enumerate(t))


def colex_unrank(rank: int, r: int) -> tuple[int, ...]:
    """The r-subset at a given colex rank (no ground-set bound needed)."""
    if rank < 0:
        raise ValueError("rank must be nonnegative")
    out: list[int] = []
    rem = rank
    for i in range(r, 0, -1):
        a = i
        while comb(a, i) <= rem:
            a += 1
        rem -= comb(a - 1, i)
        out.append(a)
    return tuple(reversed(out))


def _colex_successor(t: list[int], n: int) -> bool:
    """Advance t to the next r-subset of [n] in colex order, in place."""
    r = len(t)
    for i in range(r):
        cap = t[i + 1] - 1 if i + 1 < r else n
        if t[i] + 1 <= cap:
            t[i] += 1
            for j in range(i):
                t[j] = j + 1
            return True
    return False


def iter_subset_tuples(
    n: int, r: int, start: int = 0, stop: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Increasing label tuples of r-subsets of [n], colex ranks [start, stop)."""
    check_ground_size(n)
    if r < 0 or r > n:
        raise ValueError(f"need 0 <= r <= n, got r={r} n={n}")
    total = comb(n, r)
    if stop is None or stop > total:
        stop = total
    if start < 0 or start > stop:
        raise ValueError(f"bad index range [{start}, {stop})")
    if start == stop:
        return
    cur = list(colex_unrank(start, r))
    if cur and cur[-1] > n:
        return
    yield tuple(cur)
    for _ in range(stop - start - 1):
        if not _colex_successor(cur, n):
            return
        yield tuple(cur)


def enumerate_subsets(
    n: int, r: int, start: int = 0, stop: int | None = None
) -> Iterator[VertexSet]:
    """All r-subsets of [n] as VertexSets, in colex order."""
    for t in iter_subset_tuples(n, r, start, stop):
        yield VertexSet.from_iterable(t)


# ── edge sets ────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class EdgeSet:
    """An r-uniform set system on ground set [N], duplicate-free.

    Edge order is preserved as given (builders emit colex order); membership
    tests go through a packed-word set.
    """

    uniformity: int
    ground_size: int
    edges: tuple[VertexSet, ...]
    _masks: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        check_ground_size(self.ground_size)
        if self.uniformity < 0 or self.uniformity > self.ground_size:
            raise ValueError(
                f"uniformity {self.uniformity} out of range for N={self.ground_size}"
            )
        full = (1 << self.ground_size) - 1
        masks = set()
        for e in self.edges:
            if e.cardinality != self.uniformity:
                raise ValueError(f"edge {e} is not {self.uniformity}-uniform")
            if e.bits & ~full:
                raise ValueError(f"edge {e} leaves ground set [{self.ground_size}]")
            if e.bits in masks:
                raise ValueError(f"duplicate edge {e}")
            masks.add(e.bits)
        object.__setattr__(self, "_masks", frozenset(masks))

    @staticmethod
    def from_members(
        uniformity: int, ground_size: int, members: Iterable[Iterable[int]]
    ) -> "EdgeSet":
        edges = tuple(VertexSet.from_iterable(m) for m in members)
        return EdgeSet(uniformity, ground_size, edges)

    def __contains__(self, s: VertexSet) -> bool:
        return s.bits in self._masks

    def __len__(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


def induced_count(edge_set: EdgeSet, subset: VertexSet) -> int:
    """Number of edges entirely inside the subset (0 when it is too small)."""
    sbits = subset.bits
    return sum(1 for e in edge_set.edges if e.bits & ~sbits == 0)


# ── edge-list text format ────────────────────────────────────────────────────
#
# First line: "r N m"; then m lines of r increasing space-separated labels.
# Round-trips must be byte-exact, so the writer is the format definition.


def format_edge_set(es: EdgeSet) -> str:
    lines = [f"{es.uniformity} {es.ground_size} {len(es.edges)}"]
    for e in es.edges:
        lines.append(" ".join(str(v) for v in e.members))
    return "\n".join(lines) + "\n"


def parse_edge_set(text: str) -> EdgeSet:
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise ValueError("empty edge-list file")
    head = lines[0].split()
    if len(head) != 3:
        raise ValueError(f"bad edge-list header: {lines[0]!r}")
    r, n, m = (int(x) for x in head)
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != m:
        raise ValueError(f"header claims {m} edges, found {len(body)}")
    edges = []
    for ln in body:
        labels = tuple(int(x) for x in ln.split())
        if len(labels) != r:
            raise ValueError(f"edge line {ln!r} is not {r}-uniform")
        if any(a >= b for a, b in zip(labels, labels[1:])):
            raise ValueError(f"edge line {ln!r} not strictly increasing")
        edges.append(VertexSet.from_iterable(labels))
    return EdgeSet(r, n, tuple(edges))


def save_edge_set(es: EdgeSet, path: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_edge_set(es))


def load_edge_set(path: str) -> EdgeSet:
    with open(path, "r") as fh:
        return parse_edge_set(fh.read())
