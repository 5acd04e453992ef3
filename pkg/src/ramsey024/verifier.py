"""Executable checks for the structural facts behind the 0/2/4 property.

For a (k-1)-uniform link system G and its k-uniform parity system H, every
(k+1)-subset S of the ground set is examined through three checks and one
classification:

  parity      |H[S]| is even, witnessed by the double count
              2 |G[S]| = sum over the k-subsets e of S of |G[e]|
              (each (k-1)-subset of S lies in exactly two such e).
  degree      |G[e]| <= 2 for every k-subset e, swept globally.
  matching    no three pairwise disjoint pairs of S whose complements are
              all in G; equivalently the complement graph below has no
              3-matching.
  structure   the link graph G' on S joins x and y when S minus {x, y} is
              in G.  Then |G[S minus {x}]| = deg(x), so the parity members
              inside S correspond exactly to odd-degree vertices of G'.
              With max degree <= 2 the components are paths and cycles and
              the odd-degree count is twice the number of path components
              with at least one edge; a 3-matching-free G' therefore pins
              |H[S]| to {0, 2, 4}.

The structural count is always compared against direct counting of H inside
S.  A mismatch means the two systems do not belong together (or the code is
wrong) and raises InternalInconsistencyError, which is distinct from a check
returning a refutation witness.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .hypergraph import (
    EdgeSet,
    VertexSet,
    colex_rank,
    enumerate_subsets,
    induced_count,
)

ALLOWED_COUNTS = (0, 2, 4)


class InternalInconsistencyError(RuntimeError):
    """The inputs contradict their own definitions; not a claim refutation."""


# ── single-subset checks ─────────────────────────────────────────────────────


@dataclass(frozen=True)
class ParityCheck:
    subset: VertexSet
    h_count: int
    g_count: int
    split_sum: int

    @property
    def even(self) -> bool:
        return self.h_count % 2 == 0


def check_parity(link: EdgeSet, parity: EdgeSet, subset: VertexSet) -> ParityCheck:
    """Evenness of |H[S]| plus the double-count identity as a self-check."""
    g = induced_count(link, subset)
    split = sum(
        induced_count(link, subset.remove(x)) for x in subset.members
    )
    if split != 2 * g:
        raise InternalInconsistencyError(
            f"double count broken on {subset}: sum {split} != 2*{g}"
        )
    h = induced_count(parity, subset)
    return ParityCheck(subset, h, g, split)


@dataclass(frozen=True)
class DegreeCheck:
    edge_subset: VertexSet
    count: int

    @property
    def ok(self) -> bool:
        return self.count <= 2


def check_degree_bound(link: EdgeSet, edge_subset: VertexSet) -> DegreeCheck:
    """|G[e]| <= 2 for a single k-subset e."""
    return DegreeCheck(edge_subset, induced_count(link, edge_subset))


@dataclass(frozen=True)
class MatchingWitness:
    subset: VertexSet
    pairs: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class LinkGraph:
    """The pair graph G' on S: {x, y} is an edge when S minus {x, y} is in G."""

    subset: VertexSet
    edges: tuple[tuple[int, int], ...]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


def build_link_graph(link: EdgeSet, subset: VertexSet) -> LinkGraph:
    edges = []
    for x, y in combinations(subset.members, 2):
        if subset.remove(x, y) in link:
            edges.append((x, y))
    lg = LinkGraph(subset, tuple(edges))
    # complements of G' edges are exactly the induced link edges
    if len(lg.edges) != induced_count(link, subset):
        raise InternalInconsistencyError(
            f"link graph on {subset} has {len(lg.edges)} edges, "
            f"induced count says {induced_count(link, subset)}"
        )
    return lg


def check_matching_free(link: EdgeSet, subset: VertexSet) -> MatchingWitness | None:
    """Search for three pairwise disjoint G' edges; None means none exist."""
    if subset.cardinality < 6:
        raise ValueError("need at least six vertices to seat three disjoint pairs")
    lg = build_link_graph(link, subset)
    for a, b, c in combinations(lg.edges, 3):
        used = set(a) | set(b) | set(c)
        if len(used) == 6:
            return MatchingWitness(subset, (a, b, c))
    return None


# ── structure classification ─────────────────────────────────────────────────


def link_graph_components(lg: LinkGraph) -> list[tuple[str, int]]:
    """Component descriptors: ("path", edge count) or ("cycle", length).

    Requires max degree <= 2; an isolated vertex is a path with 0 edges.
    """
    adj: dict[int, list[int]] = {v: [] for v in lg.subset.members}
    for x, y in lg.edges:
        adj[x].append(y)
        adj[y].append(x)
    if any(len(nb) > 2 for nb in adj.values()):
        raise ValueError("degree above 2, not a path/cycle graph")
    seen: set[int] = set()
    out: list[tuple[str, int]] = []
    for v in lg.subset.members:
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        queue = [v]
        while queue:
            u = queue.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        ec = sum(len(adj[u]) for u in comp) // 2
        if ec == len(comp):
            out.append(("cycle", ec))
        else:
            out.append(("path", ec))
    return out


def structure_label(components: list[tuple[str, int]]) -> str:
    descs = sorted(components)
    return "+".join(
        ("c" if kind == "cycle" else "p") + str(size) for kind, size in descs
    )


@dataclass(frozen=True)
class InducedProfile:
    subset: VertexSet
    g_count: int
    h_count: int
    structure: str
    ok: bool


def classify_profile(link: EdgeSet, parity: EdgeSet, subset: VertexSet) -> InducedProfile:
    """Profile of one (k+1)-subset, with the structural parity cross-check.

    The direct count of H inside S must equal the number of odd-degree
    vertices of G' whatever the degrees are; that identity is definitional,
    so a mismatch is a hard error, never a refutation.
    """
    h = induced_count(parity, subset)
    g = induced_count(link, subset)
    lg = build_link_graph(link, subset)
    degrees = [lg.degree(v) for v in subset.members]
    odd = sum(1 for d in degrees if d % 2 == 1)
    if odd != h:
        raise InternalInconsistencyError(
            f"{subset}: direct |H[S]| = {h} but G' has {odd} odd-degree vertices"
        )
    if max(degrees, default=0) > 2:
        label = "overfull"
        ok = False
    else:
        label = structure_label(link_graph_components(lg))
        ok = h in ALLOWED_COUNTS
    return InducedProfile(subset, g, h, label, ok)


# ── sweeps ───────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class SweepFailure:
    kind: str      # "degree" | "parity" | "spectrum" | "matching"
    phase: str     # "e" for k-subset scan, "S" for (k+1)-subset scan
    members: tuple[int, ...]
    detail: str

    @property
    def line(self) -> str:
        labels = " ".join(str(v) for v in self.members)
        return f"fail {self.kind} {self.phase} {labels} {self.detail}"

    @property
    def sort_key(self) -> tuple[int, int]:
        return (0 if self.phase == "e" else 1, colex_rank(self.members))


@dataclass
class SweepReport:
    k: int
    N: int
    seed: int | None
    verdict: bool
    h_counts: dict[int, int]
    structure_counts: dict[str, int]
    failures: list[SweepFailure]
    subsets_checked: int
    edges_checked: int
    profiles: list[InducedProfile] = field(default_factory=list, repr=False)


def _shard_range(total: int, shard: tuple[int, int] | None) -> tuple[int, int]:
    if shard is None:
        return 0, total
    i, w = shard
    if not (w >= 1 and 0 <= i < w):
        raise ValueError(f"bad shard {shard}")
    return i * total // w, (i + 1) * total // w


def full_sweep(
    link: EdgeSet,
    parity: EdgeSet,
    seed: int | None = None,
    shard: tuple[int, int] | None = None,
    collect_profiles: bool = False,
) -> SweepReport:
    """Run every check over every k-subset and (k+1)-subset (or one shard).

    Shards slice both colex streams by index range; merging shard reports
    reproduces the unsharded report byte for byte.
    """
    k = parity.uniformity
    n = parity.ground_size
    if link.uniformity != k - 1 or link.ground_size != n:
        raise ValueError(
            f"mismatched systems: link is {link.uniformity}-uniform on "
            f"[{link.ground_size}], parity {k}-uniform on [{n}]"
        )
    if n < k + 1:
        raise ValueError(f"need N >= k+1 for the sweep, got N={n} k={k}")

    failures: list[SweepFailure] = []
    h_counts: dict[int, int] = {}
    structure_counts: dict[str, int] = {}
    profiles: list[InducedProfile] = []

    lo, hi = _shard_range(comb(n, k), shard)
    edges_checked = hi - lo
    for e in enumerate_subsets(n, k, lo, hi):
        dc = check_degree_bound(link, e)
        if not dc.ok:
            failures.append(SweepFailure("degree", "e", e.members, f"count {dc.count}"))
        if (e in parity) != (dc.count % 2 == 1):
            raise InternalInconsistencyError(
                f"parity membership of {e} contradicts link count {dc.count}"
            )

    lo, hi = _shard_range(comb(n, k + 1), shard)
    subsets_checked = hi - lo
    for s in enumerate_subsets(n, k + 1, lo, hi):
        pc = check_parity(link, parity, s)
        h_counts[pc.h_count] = h_counts.get(pc.h_count, 0) + 1
        if not pc.even:
            failures.append(SweepFailure("parity", "S", s.members, f"h {pc.h_count}"))
        elif pc.h_count not in ALLOWED_COUNTS:
            failures.append(SweepFailure("spectrum", "S", s.members, f"h {pc.h_count}"))
        if k + 1 >= 6:
            witness = check_matching_free(link, s)
            if witness is not None:
                pairs = " ".join(f"{a},{b}" for a, b in witness.pairs)
                failures.append(
                    SweepFailure("matching", "S", s.members, f"pairs {pairs}")
                )
        prof = classify_profile(link, parity, s)
        structure_counts[prof.structure] = structure_counts.get(prof.structure, 0) + 1
        if collect_profiles:
            profiles.append(prof)

    return SweepReport(
        k=k,
        N=n,
        seed=seed,
        verdict=not failures,
        h_counts=h_counts,
        structure_counts=structure_counts,
        failures=failures,
        subsets_checked=subsets_checked,
        edges_checked=edges_checked,
        profiles=profiles,
    )


def induced_value_sweep(
    edge_set: EdgeSet,
    subset_size: int,
    allowed: tuple[int, ...] = ALLOWED_COUNTS,
) -> tuple[dict[int, int], bool, list[VertexSet]]:
    """Tally induced edge counts over all subsets of one size.

    This is the piece of the sweep that needs no link system; geometric
    hypergraphs reuse it to confirm their (d+3)-subset spectra.
    """
    counts: dict[int, int] = {}
    offenders: list[VertexSet] = []
    for s in enumerate_subsets(edge_set.ground_size, subset_size):
        c = induced_count(edge_set, s)
        counts[c] = counts.get(c, 0) + 1
        if c not in allowed:
            offenders.append(s)
    return counts, not offenders, offenders


# ── report text format ───────────────────────────────────────────────────────
#
# Failure lines (sorted: k-subset scan first, then colex rank), one summary
# line "sweep k N seed verdict h0 h2 h4", then "structure <label> <count>"
# lines sorted by label.  merge(parse(...)) of shard files must reproduce the
# unsharded bytes, so nothing unstable may appear here.


def format_report(r: SweepReport) -> str:
    lines = [f.line for f in sorted(r.failures, key=lambda f: f.sort_key)]
    seed_txt = "-" if r.seed is None else str(r.seed)
    verdict = "pass" if r.verdict else "fail"
    h0, h2, h4 = (r.h_counts.get(v, 0) for v in (0, 2, 4))
    lines.append(f"sweep {r.k} {r.N} {seed_txt} {verdict} {h0} {h2} {h4}")
    for label in sorted(r.structure_counts):
        lines.append(f"structure {label} {r.structure_counts[label]}")
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> SweepReport:
    failures: list[SweepFailure] = []
    summary: list[str] | None = None
    structure_counts: dict[str, int] = {}
    for ln in text.splitlines():
        if not ln.strip():
            continue
        tok = ln.split()
        if tok[0] == "fail":
            kind, phase = tok[1], tok[2]
            rest = tok[3:]
            cut = 0
            while cut < len(rest) and rest[cut].isdigit():
                cut += 1
            members = tuple(int(x) for x in rest[:cut])
            failures.append(SweepFailure(kind, phase, members, " ".join(rest[cut:])))
        elif tok[0] == "sweep":
            if len(tok) != 8:
                raise ValueError(f"bad summary line: {ln!r}")
            summary = tok
        elif tok[0] == "structure":
            if len(tok) != 3:
                raise ValueError(f"bad structure line: {ln!r}")
            structure_counts[tok[1]] = int(tok[2])
        else:
            raise ValueError(f"unrecognized report line: {ln!r}")
    if summary is None:
        raise ValueError("report has no summary line")
    k, n = int(summary[1]), int(summary[2])
    seed = None if summary[3] == "-" else int(summary[3])
    verdict = summary[4] == "pass"
    h_counts = {v: int(c) for v, c in zip((0, 2, 4), summary[5:8]) if int(c)}
    for f in failures:
        if f.kind in ("parity", "spectrum"):
            h = int(f.detail.split()[-1])
            if h not in (0, 2, 4):
                h_counts[h] = h_counts.get(h, 0) + 1
    return SweepReport(
        k=k,
        N=n,
        seed=seed,
        verdict=verdict,
        h_counts=h_counts,
        structure_counts=structure_counts,
        failures=failures,
        subsets_checked=sum(h_counts.values()),
        edges_checked=-1,
    )


def merge_reports(reports: list[SweepReport]) -> SweepReport:
    if not reports:
        raise ValueError("nothing to merge")
    first = reports[0]
    h_counts: dict[int, int] = {}
    structure_counts: dict[str, int] = {}
    failures: list[SweepFailure] = []
    subsets = edges = 0
    for r in reports:
        if (r.k, r.N, r.seed) != (first.k, first.N, first.seed):
            raise ValueError(
                f"shard mismatch: ({r.k}, {r.N}, {r.seed}) vs "
                f"({first.k}, {first.N}, {first.seed})"
            )
        for v, c in r.h_counts.items():
            h_counts[v] = h_counts.get(v, 0) + c
        for s, c in r.structure_counts.items():
            structure_counts[s] = structure_counts.get(s, 0) + c
        failures.extend(r.failures)
        subsets += r.subsets_checked
        edges += r.edges_checked
    return SweepReport(
        k=first.k,
        N=first.N,
        seed=first.seed,
        verdict=all(r.verdict for r in reports),
        h_counts=h_counts,
        structure_counts=structure_counts,
        failures=failures,
        subsets_checked=subsets,
        edges_checked=edges,
    )


def report_hash(r: SweepReport) -> str:
    return hashlib.sha256(format_report(r).encode()).hexdigest()
