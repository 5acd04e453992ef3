"""Random pair-colorings and the two hypergraphs they induce.

A coloring assigns every (k-3)-subset of [N] an unordered pair of positions
drawn from {1, ..., k-1}.  A (k-1)-subset f = (v_1 < ... < v_{k-1}) is a link
edge when each of its (k-3)-subsets carries exactly the color that names the
positions of the two missing vertices: for every pair of positions i < j, the
color of f minus {v_i, v_j} must be {i, j}.  The parity hypergraph then
collects the k-subsets of [N] containing an odd number of link edges.

Sampling is fully indexed: the (k-3)-subset of colex rank t gets color
(word_at(seed, t) * C(k-1,2)) >> 64, so a coloring is a pure function of
(k, N, seed, rng-id) and any slice of it can be regenerated independently.

k = 4 is accepted here because the link condition then constrains only the
three singleton colors of f, which makes nontrivial small instances cheap to
hit in tests; the CLI treats k = 4 as an explicit override.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .hypergraph import (
    EdgeSet,
    OrderedTuple,
    VertexSet,
    check_ground_size,
    colex_rank,
    iter_subset_tuples,
)
from .rng import RNG_ID, bounded_at


@dataclass(frozen=True)
class Params:
    """Instance parameters; k = 4 allowed, ground set must fit the word."""

    k: int
    N: int
    seed: int

    def __post_init__(self) -> None:
        if self.k < 4:
            raise ValueError(f"need k >= 4, got {self.k}")
        if self.N < self.k + 1:
            raise ValueError(f"need N >= k+1, got N={self.N} k={self.k}")
        check_ground_size(self.N)
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


@dataclass(frozen=True, order=True)
class PairColor:
    """Unordered pair of 1-based positions, stored as i < j."""

    i: int
    j: int

    def __post_init__(self) -> None:
        if not 1 <= self.i < self.j:
            raise ValueError(f"need 1 <= i < j, got ({self.i}, {self.j})")


def color_count(k: int) -> int:
    return comb(k - 1, 2)


def pair_color_from_index(index: int, k: int) -> PairColor:
    """The index-th color in colex order over pairs of [k-1]."""
    if not 0 <= index < color_count(k):
        raise ValueError(f"color index {index} out of range for k={k}")
    j = 2
    while comb(j, 2) <= index:
        j += 1
    return PairColor(index - comb(j - 1, 2) + 1, j)


def pair_color_index(color: PairColor, k: int) -> int:
    if color.j > k - 1:
        raise ValueError(f"color {color} out of range for k={k}")
    return comb(color.j - 1, 2) + color.i - 1


@dataclass(frozen=True)
class Coloring:
    """A total map from (k-3)-subsets of [N] to pair colors.

    The table is authoritative; seed and rng_id are provenance so a file can
    say where its entries came from (rng_id "manual" marks hand-built ones).
    """

    k: int
    N: int
    seed: int
    rng_id: str
    table: dict[VertexSet, PairColor] = field(compare=False)

    def __post_init__(self) -> None:
        t = self.k - 3
        expected = comb(self.N, t)
        if len(self.table) != expected:
            raise ValueError(
                f"table has {len(self.table)} entries, needs all {expected} "
                f"{t}-subsets of [{self.N}]"
            )
        top = color_count(self.k)
        for sub, color in self.table.items():
            if sub.cardinality != t:
                raise ValueError(f"table key {sub} is not a {t}-subset")
            if sub.bits >> self.N:
                raise ValueError(f"table key {sub} leaves ground set [{self.N}]")
            if color.j > self.k - 1:
                raise ValueError(f"color {color} has no index below {top} for k={self.k}")

    def color_of(self, subset: VertexSet) -> PairColor:
        return self.table[subset]


def sample_coloring(params: Params) -> Coloring:
    """The coloring determined by (k, N, seed) under the indexed stream."""
    k, n, seed = params.k, params.N, params.seed
    bound = color_count(k)
    table: dict[VertexSet, PairColor] = {}
    for rank, t in enumerate(iter_subset_tuples(n, k - 3)):
        idx = bounded_at(seed, rank, bound)
        table[VertexSet.from_iterable(t)] = pair_color_from_index(idx, k)
    return Coloring(k, n, seed, RNG_ID, table)


# ── link membership ──────────────────────────────────────────────────────────


def removed_positions(f: OrderedTuple, sub: VertexSet) -> PairColor:
    """Positions within f of the two vertices of f not in sub."""
    fs = f.to_vertex_set()
    if not sub.issubset(fs):
        raise ValueError(f"{sub} is not a subset of {f.vertices}")
    gone = fs.difference(sub).members
    if len(gone) != 2:
        raise ValueError(f"need exactly two removed vertices, got {len(gone)}")
    return PairColor(f.rank_of(gone[0]), f.rank_of(gone[1]))


def is_link_edge(coloring: Coloring, f: OrderedTuple) -> bool:
    """Does every co-pair subset of f carry the color naming its positions?"""
    if len(f) != coloring.k - 1:
        raise ValueError(f"need a {coloring.k - 1}-tuple, got {len(f)} labels")
    verts = f.vertices
    fbits = f.to_vertex_set().bits
    table = coloring.table
    for i, j in combinations(range(len(verts)), 2):
        sub = VertexSet(fbits & ~(1 << (verts[i] - 1)) & ~(1 << (verts[j] - 1)))
        c = table[sub]
        if c.i != i + 1 or c.j != j + 1:
            return False
    return True


@dataclass(frozen=True)
class LinkHypergraph:
    """The (k-1)-uniform system of link edges for one coloring."""

    edge_set: EdgeSet
    coloring: Coloring

    @property
    def k(self) -> int:
        return self.coloring.k


@dataclass(frozen=True)
class ParityHypergraph:
    """The k-uniform system of k-subsets holding an odd number of link edges."""

    edge_set: EdgeSet
    link: LinkHypergraph | None = None


def build_link_hypergraph(coloring: Coloring) -> LinkHypergraph:
    edges = []
    for t in iter_subset_tuples(coloring.N, coloring.k - 1):
        if is_link_edge(coloring, OrderedTuple(t)):
            edges.append(VertexSet.from_iterable(t))
    es = EdgeSet(coloring.k - 1, coloring.N, tuple(edges))
    return LinkHypergraph(es, coloring)


def build_parity_hypergraph(link: LinkHypergraph | EdgeSet) -> ParityHypergraph:
    """k-subsets with an odd induced link count, in colex order."""
    link_obj = link if isinstance(link, LinkHypergraph) else None
    es = link.edge_set if isinstance(link, LinkHypergraph) else link
    k = es.uniformity + 1
    n = es.ground_size
    masks = [e.bits for e in es.edges]
    edges = []
    if masks:
        for t in iter_subset_tuples(n, k):
            ebits = VertexSet.from_iterable(t).bits
            cnt = sum(1 for m in masks if m & ~ebits == 0)
            if cnt & 1:
                edges.append(VertexSet(ebits))
    return ParityHypergraph(EdgeSet(k, n, tuple(edges)), link_obj)


# ── coloring text format ─────────────────────────────────────────────────────
#
# Header "coloring k N seed rng-id", then one line per (k-3)-subset in colex
# order: "v1 ... v_{k-3} : i j".  The writer defines the canonical bytes; the
# content hash is the sha256 of exactly those bytes.


def format_coloring(c: Coloring) -> str:
    lines = [f"coloring {c.k} {c.N} {c.seed} {c.rng_id}"]
    for t in iter_subset_tuples(c.N, c.k - 3):
        color = c.table[VertexSet.from_iterable(t)]
        left = " ".join(str(v) for v in t)
        lines.append(f"{left} : {color.i} {color.j}")
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> Coloring:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("coloring "):
        raise ValueError("missing coloring header")
    head = lines[0].split()
    if len(head) != 5:
        raise ValueError(f"bad coloring header: {lines[0]!r}")
    k, n, seed = int(head[1]), int(head[2]), int(head[3])
    rng_id = head[4]
    table: dict[VertexSet, PairColor] = {}
    ranks = []
    for ln in lines[1:]:
        if not ln.strip():
            continue
        try:
            left, right = ln.split(":")
            labels = tuple(int(x) for x in left.split())
            i, j = (int(x) for x in right.split())
        except ValueError:
            raise ValueError(f"bad coloring line: {ln!r}") from None
        table[VertexSet.from_iterable(labels)] = PairColor(i, j)
        ranks.append(colex_rank(labels))
    if ranks != sorted(ranks):
        raise ValueError("coloring lines are not in colex order")
    return Coloring(k, n, seed, rng_id, table)


def coloring_content_hash(c: Coloring) -> str:
    return hashlib.sha256(format_coloring(c).encode()).hexdigest()


def save_coloring(c: Coloring, path: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_coloring(c))


def load_coloring(path: str) -> Coloring:
    with open(path, "r") as fh:
        return parse_coloring(fh.read())
