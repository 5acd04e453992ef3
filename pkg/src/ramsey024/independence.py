"""Exact independence numbers, edge probabilities, packings, and certificates.

The pieces here assemble the counting side of the lower-bound argument at
desk scale: the exact probability p that a fixed k-subset lands in the parity
hypergraph, a maximal pair-disjoint packing supplying m positions where that
event is sampled independently, and the first-moment bound C(N,n)(1-p)^m on
the expected number of independent n-subsets, evaluated in log space so the
astronomically large N regime stays finite arithmetic.

A LowerBoundCertificate freezes one concrete instance: the coloring (inline,
content-hashed), the sweep verdict hash, and the exact independence number.
Verification rebuilds everything from the embedded bytes, so any mutation is
caught either by the hash or by the recomputed numbers.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, log2

import numpy as np

from .construction import (
    Coloring,
    LinkHypergraph,
    Params,
    ParityHypergraph,
    build_link_hypergraph,
    build_parity_hypergraph,
    coloring_content_hash,
    format_coloring,
    parse_coloring,
    sample_coloring,
)
from .hypergraph import EdgeSet, VertexSet, iter_subset_tuples
from .rng import GOLDEN, MASK64, RNG_ID, derive_seed
from .verifier import SweepReport, full_sweep, report_hash


class NodeBudgetExceeded(RuntimeError):
    """Search ran out of nodes; carries the best lower bound found so far."""

    def __init__(self, best_size: int, nodes: int):
        super().__init__(f"node budget exhausted after {nodes} nodes (best {best_size})")
        self.best_size = best_size
        self.nodes = nodes


@dataclass(frozen=True)
class AlphaResult:
    alpha: int
    witness: VertexSet
    nodes: int


def alpha_exact(
    hypergraph: EdgeSet | ParityHypergraph, node_budget: int | None = None
) -> AlphaResult:
    """Maximum independent set by branch and bound over packed vertex words.

    Vertices are branched in decreasing parity-degree order (ties by label),
    include branch first, so the witness is deterministic.  The bound is
    |chosen| + |remaining|; with a node budget the search raises instead of
    ever returning an unproven value.
    """
    es = hypergraph.edge_set if isinstance(hypergraph, ParityHypergraph) else hypergraph
    n = es.ground_size
    order = sorted(range(1, n + 1), key=lambda v: (-es.degree(v), v))
    edges_with: list[list[int]] = [[] for _ in range(n + 1)]
    for e in es.edges:
        for v in e.members:
            edges_with[v].append(e.bits)

    best_size = 0
    best_mask = 0
    nodes = 0

    def dfs(i: int, chosen: int, count: int) -> None:
        nonlocal best_size, best_mask, nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise NodeBudgetExceeded(best_size, nodes)
        if count > best_size:
            best_size = count
            best_mask = chosen
        if i == n or count + (n - i) <= best_size:
            return
        v = order[i]
        grown = chosen | (1 << (v - 1))
        if all(e & ~grown for e in edges_with[v]):
            dfs(i + 1, grown, count + 1)
        dfs(i + 1, chosen, count)

    dfs(0, 0, 0)
    return AlphaResult(best_size, VertexSet(best_mask), nodes)


# ── exact and sampled edge probability ───────────────────────────────────────


@dataclass(frozen=True)
class EdgeProbability:
    k: int
    p: Fraction
    method: str                 # "exhaustive" | "monte-carlo"
    samples: int | None = None
    hits: int | None = None


def _membership_demands(k: int) -> tuple[int, int, list[dict[int, int]]]:
    """Color demands for each (k-1)-subset of the fixed k-set e = (1..k).

    Returns (#variables, #colors, demands) where variable t is the
    (k-3)-subset of [k] at colex rank t and demands[x] maps variable index
    to the color index it must carry for e minus {x+1} to be a link edge.
    """
    t = k - 3
    variables = list(iter_subset_tuples(k, t))
    var_index = {v: i for i, v in enumerate(variables)}
    demands: list[dict[int, int]] = []
    for x in range(1, k + 1):
        f = tuple(v for v in range(1, k + 1) if v != x)
        want: dict[int, int] = {}
        for sub in combinations(f, t):
            gone = [v for v in f if v not in sub]
            i, j = (f.index(g) + 1 for g in gone)
            # colex rank of the position pair {i, j} among pairs of [k-1]
            want[var_index[sub]] = comb(j - 1, 2) + i - 1
        demands.append(want)
    return len(variables), comb(k - 1, 2), demands


def edge_probability_exact(k: int, max_assignments: int = 10**9) -> EdgeProbability:
    """Exact p by exhausting every coloring of the (k-3)-subsets of a k-set.

    The assignment space has C(k-1,2) ** C(k,k-3) points (81 for k = 4,
    6**10 = 60466176 for k = 5); beyond the cap the space is genuinely out
    of reach and the caller should sample instead.
    """
    nvars, ncolors, demands = _membership_demands(k)
    total = ncolors**nvars
    if total > max_assignments:
        raise ValueError(
            f"k={k} needs {total} assignments, beyond the exhaustive cap; "
            "use edge_probability_monte_carlo"
        )
    if total <= 10**6:
        hits = 0
        for assign in product(range(ncolors), repeat=nvars):
            members = sum(
                1
                for want in demands
                if all(assign[v] == c for v, c in want.items())
            )
            hits += members & 1
        return EdgeProbability(k, Fraction(hits, total), "exhaustive")

    # big case: enumerate an outer block in python, a vectorized inner block
    # in numpy; every assignment is still visited exactly once.
    inner_vars = min(nvars, 6)
    outer_vars = nvars - inner_vars
    inner_total = ncolors**inner_vars
    idx = np.arange(inner_total, dtype=np.int64)
    inner_color = [
        ((idx // (ncolors**a)) % ncolors).astype(np.uint8) for a in range(inner_vars)
    ]
    inner_ok = []
    outer_want = []
    for want in demands:
        ok = np.ones(inner_total, dtype=bool)
        outer: list[tuple[int, int]] = []
        for v, c in want.items():
            if v < inner_vars:
                ok &= inner_color[v] == c
            else:
                outer.append((v - inner_vars, c))
        inner_ok.append(ok)
        outer_want.append(outer)
    hits = 0
    for outer_assign in product(range(ncolors), repeat=outer_vars):
        acc = np.zeros(inner_total, dtype=bool)
        for ok, outer in zip(inner_ok, outer_want):
            if all(outer_assign[v] == c for v, c in outer):
                acc ^= ok
        hits += int(np.count_nonzero(acc))
    return EdgeProbability(k, Fraction(hits, total), "exhaustive")


def _words_vec(seed: int, start: int, count: int) -> np.ndarray:
    """Vectorized splitmix64 words, bit-identical to rng.word_at."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = (np.uint64(seed & MASK64) + idx * np.uint64(GOLDEN)) & np.uint64(MASK64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def _bounded_vec(words: np.ndarray, bound: int) -> np.ndarray:
    """(word * bound) >> 64 without 128-bit ints: split into 32-bit halves."""
    b = np.uint64(bound)
    hi = words >> np.uint64(32)
    lo = words & np.uint64(0xFFFFFFFF)
    return (hi * b + ((lo * b) >> np.uint64(32))) >> np.uint64(32)


def edge_probability_monte_carlo(k: int, samples: int, seed: int) -> EdgeProbability:
    """Estimate p by sampling colorings of the (k-3)-subsets of a k-set."""
    if samples < 1:
        raise ValueError("need at least one sample")
    nvars, ncolors, demands = _membership_demands(k)
    parity = np.zeros(samples, dtype=bool)
    colors = np.empty((nvars, samples), dtype=np.uint8)
    chunk = 1 << 20
    # sample s consumes stream words [s*nvars, (s+1)*nvars), one per variable
    for lo in range(0, samples, chunk):
        hi = min(lo + chunk, samples)
        words = _words_vec(seed, lo * nvars, (hi - lo) * nvars)
        drawn = _bounded_vec(words, ncolors).reshape(hi - lo, nvars)
        colors[:, lo:hi] = drawn.T.astype(np.uint8)
    for want in demands:
        ok = np.ones(samples, dtype=bool)
        for v, c in want.items():
            ok &= colors[v] == c
        parity ^= ok
    hits = int(np.count_nonzero(parity))
    return EdgeProbability(k, Fraction(hits, samples), "monte-carlo", samples, hits)


def edge_probability(
    k: int, mc_samples: int = 10**6, seed: int = 0
) -> EdgeProbability:
    """Exact when the space is exhaustible (k <= 5), sampled otherwise."""
    try:
        return edge_probability_exact(k)
    except ValueError:
        return edge_probability_monte_carlo(k, mc_samples, seed)


# ── greedy packing ───────────────────────────────────────────────────────────


@dataclass(frozen=True)
class SteinerPacking:
    n: int
    k: int
    t: int
    blocks: tuple[VertexSet, ...]


def greedy_steiner_packing(n: int, k: int) -> SteinerPacking:
    """First-fit packing of k-blocks over [n] with pairwise-distinct t-subsets.

    Blocks are scanned in colex order and taken whenever all their
    t-subsets (t = k-3) are still unused, so distinct blocks share at most
    k-4 vertices and the result is maximal and deterministic.
    """
    if k < 4:
        raise ValueError(f"need k >= 4, got {k}")
    if n < k:
        raise ValueError(f"need n >= k, got n={n} k={k}")
    t = k - 3
    used: set[tuple[int, ...]] = set()
    blocks: list[VertexSet] = []
    for cand in iter_subset_tuples(n, k):
        subs = list(combinations(cand, t))
        if any(s in used for s in subs):
            continue
        used.update(subs)
        blocks.append(VertexSet.from_iterable(cand))
    return SteinerPacking(n, k, t, tuple(blocks))


def packing_is_valid(p: SteinerPacking) -> bool:
    """Every t-subset covered at most once (recounted from scratch)."""
    seen: set[tuple[int, ...]] = set()
    for b in p.blocks:
        for s in combinations(b.members, p.t):
            if s in seen:
                return False
            seen.add(s)
    return True


def packing_is_maximal(p: SteinerPacking) -> bool:
    """No k-subset of [n] could still be added."""
    used: set[tuple[int, ...]] = set()
    for b in p.blocks:
        used.update(combinations(b.members, p.t))
    for cand in iter_subset_tuples(p.n, p.k):
        if all(s not in used for s in combinations(cand, p.t)):
            return False
    return True


# ── first-moment bound ───────────────────────────────────────────────────────


@dataclass(frozen=True)
class UnionBoundResult:
    k: int
    n: int
    N: int
    m: int
    log2_value: float
    feasible: bool              # value < 1
    max_feasible_N: int | None  # largest N with value < 1, None if capped
    max_feasible_log2_N: float


_N_CAP_BITS = 4096


def union_bound(k: int, n: int, N: int, p: Fraction, m: int) -> UnionBoundResult:
    """log2 of C(N,n) (1-p)^m, its verdict, and the largest feasible N.

    p must lie strictly inside (0,1); m = 0 is allowed and makes the bound
    C(N,n) itself.  All logs are base 2 and exact up to float rounding of
    exact integer/rational inputs.
    """
    if not 0 < p < 1:
        raise ValueError(f"need 0 < p < 1, got {p}")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if N < n or n < 1:
        raise ValueError(f"need N >= n >= 1, got N={N} n={n}")
    per_block = log2(float(Fraction(1, 1) - p))
    value = _log2_comb(N, n) + m * per_block

    budget = -m * per_block
    cap = 1 << _N_CAP_BITS
    best: int | None = None
    capped = False
    if _log2_comb(n, n) < budget:
        # bracket by doubling so desk-scale answers never touch huge combs
        lo_n, hi_n = n, n + 1
        while hi_n <= cap and _log2_comb(hi_n, n) < budget:
            lo_n, hi_n = hi_n, hi_n * 2
        if hi_n > cap:
            if _log2_comb(cap, n) < budget:
                capped = True
            hi_n = cap
        if not capped:
            while lo_n + 1 < hi_n:
                mid = (lo_n + hi_n) // 2
                if _log2_comb(mid, n) < budget:
                    lo_n = mid
                else:
                    hi_n = mid
            best = lo_n
    return UnionBoundResult(
        k=k,
        n=n,
        N=N,
        m=m,
        log2_value=value,
        feasible=value < 0,
        max_feasible_N=best,
        max_feasible_log2_N=float("inf") if capped else (log2(best) if best else float("-inf")),
    )


def _log2_comb(N: int, n: int) -> float:
    return log2(comb(N, n))


# ── certificates ─────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class LowerBoundCertificate:
    """One instance pinned down: growing k-systems on [N] with alpha < n."""

    k: int
    N: int
    n: int
    alpha: int
    seed: int
    rng_id: str
    coloring: Coloring | None
    coloring_hash: str
    sweep_hash: str


@dataclass(frozen=True)
class CertVerdict:
    ok: bool
    code: str       # pass | coloring-hash-mismatch | sweep-hash-mismatch |
                    # sweep-failed | alpha-mismatch | alpha-not-below-n
    detail: str


def make_certificate(
    coloring: Coloring, n: int, alpha: int, report: SweepReport
) -> LowerBoundCertificate:
    return LowerBoundCertificate(
        k=coloring.k,
        N=coloring.N,
        n=n,
        alpha=alpha,
        seed=coloring.seed,
        rng_id=coloring.rng_id,
        coloring=coloring,
        coloring_hash=coloring_content_hash(coloring),
        sweep_hash=report_hash(report),
    )


def verify_certificate(
    cert: LowerBoundCertificate, coloring: Coloring | None = None
) -> CertVerdict:
    """Rebuild the instance from the certificate and recheck every field."""
    c = cert.coloring if cert.coloring is not None else coloring
    if c is None:
        return CertVerdict(False, "malformed", "no coloring embedded or supplied")
    got = coloring_content_hash(c)
    if got != cert.coloring_hash:
        return CertVerdict(
            False, "coloring-hash-mismatch", f"stored {cert.coloring_hash}, got {got}"
        )
    if (c.k, c.N) != (cert.k, cert.N):
        return CertVerdict(
            False, "malformed", f"coloring is ({c.k}, {c.N}), certificate says "
            f"({cert.k}, {cert.N})"
        )
    link = build_link_hypergraph(c)
    parity = build_parity_hypergraph(link)
    report = full_sweep(link.edge_set, parity.edge_set, seed=c.seed)
    if not report.verdict:
        first = report.failures[0].line if report.failures else "unknown"
        return CertVerdict(False, "sweep-failed", first)
    got = report_hash(report)
    if got != cert.sweep_hash:
        return CertVerdict(
            False, "sweep-hash-mismatch", f"stored {cert.sweep_hash}, got {got}"
        )
    result = alpha_exact(parity)
    if result.alpha != cert.alpha:
        return CertVerdict(
            False, "alpha-mismatch", f"claimed {cert.alpha}, computed {result.alpha}"
        )
    if not result.alpha < cert.n:
        return CertVerdict(
            False, "alpha-not-below-n", f"alpha {result.alpha} >= n {cert.n}"
        )
    return CertVerdict(True, "pass", f"alpha {result.alpha} < n {cert.n}")


# ── certificate text format ──────────────────────────────────────────────────
#
# Self-describing key-value lines; the coloring block reuses the coloring
# format verbatim so its sha256 can be recomputed from the embedded bytes.


def format_certificate(cert: LowerBoundCertificate) -> str:
    lines = [
        "cert v1",
        f"k {cert.k}",
        f"N {cert.N}",
        f"n {cert.n}",
        f"alpha {cert.alpha}",
        f"seed {cert.seed}",
        f"rng {cert.rng_id}",
    ]
    if cert.coloring is not None:
        lines.append(f"coloring inline sha256:{cert.coloring_hash}")
        lines.append(format_coloring(cert.coloring).rstrip("\n"))
    else:
        lines.append(f"coloring external sha256:{cert.coloring_hash}")
    lines.append(f"sweep sha256:{cert.sweep_hash}")
    return "\n".join(lines) + "\n"


class MalformedCertificateError(ValueError):
    pass


def parse_certificate(text: str) -> LowerBoundCertificate:
    lines = text.splitlines()
    if not lines or lines[0] != "cert v1":
        raise MalformedCertificateError("missing 'cert v1' header")
    fields: dict[str, int] = {}
    pos = 1
    for key in ("k", "N", "n", "alpha", "seed"):
        if pos >= len(lines):
            raise MalformedCertificateError(f"missing field {key}")
        name, _, value = lines[pos].partition(" ")
        if name != key:
            raise MalformedCertificateError(f"expected field {key}, got {lines[pos]!r}")
        try:
            fields[key] = int(value)
        except ValueError:
            raise MalformedCertificateError(f"bad integer in {lines[pos]!r}") from None
        pos += 1
    if pos >= len(lines) or not lines[pos].startswith("rng "):
        raise MalformedCertificateError("missing rng field")
    rng_id = lines[pos].split(" ", 1)[1]
    pos += 1
    if pos >= len(lines) or not lines[pos].startswith("coloring "):
        raise MalformedCertificateError("missing coloring field")
    tok = lines[pos].split()
    if len(tok) != 3 or tok[1] not in ("inline", "external") or not tok[2].startswith("sha256:"):
        raise MalformedCertificateError(f"bad coloring field: {lines[pos]!r}")
    coloring_hash = tok[2][len("sha256:"):]
    pos += 1
    coloring = None
    if tok[1] == "inline":
        if pos >= len(lines) or not lines[pos].startswith("coloring "):
            raise MalformedCertificateError("inline coloring block missing")
        block = [lines[pos]]
        pos += 1
        while pos < len(lines) and not lines[pos].startswith("sweep "):
            block.append(lines[pos])
            pos += 1
        try:
            coloring = parse_coloring("\n".join(block) + "\n")
        except ValueError as exc:
            raise MalformedCertificateError(f"bad coloring block: {exc}") from None
    if pos >= len(lines) or not lines[pos].startswith("sweep sha256:"):
        raise MalformedCertificateError("missing sweep hash")
    sweep_hash = lines[pos][len("sweep sha256:"):]
    return LowerBoundCertificate(
        k=fields["k"],
        N=fields["N"],
        n=fields["n"],
        alpha=fields["alpha"],
        seed=fields["seed"],
        rng_id=rng_id,
        coloring=coloring,
        coloring_hash=coloring_hash,
        sweep_hash=sweep_hash,
    )


def save_certificate(cert: LowerBoundCertificate, path: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_certificate(cert))


def load_certificate(path: str) -> LowerBoundCertificate:
    with open(path, "r") as fh:
        return parse_certificate(fh.read())


# ── seed search ──────────────────────────────────────────────────────────────


class SweepFailureError(RuntimeError):
    """A sampled instance failed its sweep; the construction has a bug."""


@dataclass(frozen=True)
class SearchResult:
    best: LowerBoundCertificate
    trial_seeds: tuple[int, ...]
    alphas: tuple[int, ...]


def search_colorings(params: Params, trials: int, n: int) -> SearchResult:
    """Sample `trials` derived seeds, keep the minimum-alpha instance.

    Trial i uses seed derive_seed(params.seed, i).  Every instance must pass
    its sweep (anything else is a hard error).  Ties on alpha go to the
    numerically smallest derived seed so the winner never depends on scan
    order.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    seeds = tuple(derive_seed(params.seed, i) for i in range(trials))
    alphas: list[int] = []
    best_key: tuple[int, int] | None = None
    for ts in seeds:
        coloring = sample_coloring(Params(params.k, params.N, ts))
        link = build_link_hypergraph(coloring)
        parity = build_parity_hypergraph(link)
        report = full_sweep(link.edge_set, parity.edge_set, seed=ts)
        if not report.verdict:
            first = report.failures[0].line if report.failures else "unknown"
            raise SweepFailureError(f"seed {ts}: {first}")
        alpha = alpha_exact(parity).alpha
        alphas.append(alpha)
        if best_key is None or (alpha, ts) < best_key:
            best_key = (alpha, ts)
    assert best_key is not None
    best_alpha, best_seed = best_key
    coloring = sample_coloring(Params(params.k, params.N, best_seed))
    link = build_link_hypergraph(coloring)
    parity = build_parity_hypergraph(link)
    report = full_sweep(link.edge_set, parity.edge_set, seed=best_seed)
    cert = make_certificate(coloring, n, best_alpha, report)
    return SearchResult(cert, seeds, tuple(alphas))
