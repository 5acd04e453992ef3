"""Exact convex-position predicates and the non-convexity hypergraph.

Points live on an integer grid (coordinates are integer numerators over one
common positive denominator), so every predicate reduces to the sign of an
integer determinant and nothing here ever touches floating point.

A set is in general position when no d+1 points share a hyperplane, i.e. the
lifted determinant det[1 | x] is nonzero for every (d+1)-subset.  A subset S
is in convex position when no point of it lies in the convex hull of the
others; in general position that hull test reduces, via Caratheodory, to
point-in-simplex tests over all (d+1)-subsets, and each simplex test is d+2
orientation signs.  For |S| = d+2 this specializes to the classical one-test
dichotomy: either all d+2 points are extreme or exactly one sits inside the
simplex of the remaining d+1.

The (d+2)-uniform hypergraph of non-convex tuples ties the module to the rest
of the package: independent sets of that hypergraph are exactly the subsets in
convex position, and every (d+3)-subset induces 0, 2, or 4 of its edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .hypergraph import EdgeSet, VertexSet, check_ground_size
from .rng import bounded_at
from .verifier import induced_value_sweep


def det_int(rows: list[list[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    m = [row[:] for row in rows]
    size = len(m)
    sign = 1
    prev = 1
    for i in range(size - 1):
        if m[i][i] == 0:
            for r in range(i + 1, size):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, size):
            for c in range(i + 1, size):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = m[i][i]
    return sign * m[-1][-1]


@dataclass(frozen=True)
class PointConfiguration:
    """Labeled points 1..P in R^d with exact rational coordinates.

    Coordinates are stored as integer numerators; dividing all of them by
    `denom` gives the actual points.  Signs of lifted determinants do not
    depend on a positive common denominator, so predicates work on the
    numerators directly.
    """

    d: int
    points: tuple[tuple[int, ...], ...]
    denom: int = 1
    _gp_cache: dict = field(init=False, default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("dimension must be positive")
        if self.denom < 1:
            raise ValueError("denominator must be positive")
        check_ground_size(len(self.points))
        for p in self.points:
            if len(p) != self.d:
                raise ValueError(f"point {p} is not {self.d}-dimensional")

    @property
    def size(self) -> int:
        return len(self.points)

    def point(self, label: int) -> tuple[int, ...]:
        if not 1 <= label <= self.size:
            raise ValueError(f"no point labeled {label}")
        return self.points[label - 1]


def orientation(config: PointConfiguration, labels: tuple[int, ...]) -> int:
    """Sign of the lifted determinant of d+1 points (0 means degenerate)."""
    if len(labels) != config.d + 1:
        raise ValueError(f"need {config.d + 1} labels, got {len(labels)}")
    rows = [[1, *config.point(v)] for v in labels]
    value = det_int(rows)
    return (value > 0) - (value < 0)


def is_general_position(
    config: PointConfiguration,
) -> tuple[bool, tuple[int, ...] | None]:
    """No d+1 points on a common hyperplane; returns a witness tuple if any."""
    cached = config._gp_cache.get("gp")
    if cached is None:
        cached = (True, None)
        for labels in combinations(range(1, config.size + 1), config.d + 1):
            if orientation(config, labels) == 0:
                cached = (False, labels)
                break
        config._gp_cache["gp"] = cached
    return cached


def _point_in_simplex(
    config: PointConfiguration, p: int, simplex: tuple[int, ...]
) -> bool:
    """Exact closed-simplex membership via orientation agreement."""
    base = orientation(config, simplex)
    if base == 0:
        raise ValueError(f"degenerate simplex {simplex}")
    verts = list(simplex)
    for i in range(len(verts)):
        swapped = tuple(verts[:i] + [p] + verts[i + 1 :])
        side = orientation(config, swapped)
        if side == 0:
            raise ValueError(f"point {p} on a facet hyperplane of {simplex}")
        if side != base:
            return False
    return True


def is_convex_position(
    config: PointConfiguration, labels: tuple[int, ...] | VertexSet
) -> tuple[bool, int | None]:
    """Is the labeled subset in convex position?  Witness: an interior point.

    Requires the whole configuration in general position (degenerate inputs
    raise).  Any subset of at most d+1 points is trivially convex; larger
    subsets are checked point against simplex over all (d+1)-subsets of the
    rest, which by Caratheodory decides hull membership exactly.
    """
    if isinstance(labels, VertexSet):
        labels = labels.members
    gp, witness = is_general_position(config)
    if not gp:
        raise ValueError(f"configuration is degenerate on {witness}")
    if len(set(labels)) != len(labels):
        raise ValueError("repeated labels")
    if len(labels) <= config.d + 1:
        return True, None
    for p in labels:
        others = [v for v in labels if v != p]
        for simplex in combinations(others, config.d + 1):
            if _point_in_simplex(config, p, simplex):
                return False, p
    return True, None


def motzkin_count(
    config: PointConfiguration, labels: tuple[int, ...] | VertexSet
) -> tuple[int, bool]:
    """Non-convex (d+2)-subsets of a (d+3)-point set, and the 0/2/4 verdict."""
    if isinstance(labels, VertexSet):
        labels = labels.members
    if len(labels) != config.d + 3:
        raise ValueError(f"need exactly {config.d + 3} labels, got {len(labels)}")
    count = 0
    for sub in combinations(labels, config.d + 2):
        convex, _ = is_convex_position(config, sub)
        if not convex:
            count += 1
    return count, count in (0, 2, 4)


@dataclass(frozen=True)
class GeometricHypergraph:
    """(d+2)-uniform system of the non-convex tuples of a configuration."""

    edge_set: EdgeSet
    config: PointConfiguration


def build_geometric_hypergraph(config: PointConfiguration) -> GeometricHypergraph:
    """Edges are exactly the (d+2)-subsets not in convex position.

    Independent sets of the result are the convex-position subsets: a set
    with no non-convex (d+2)-tuple is itself convex by Caratheodory, and a
    convex set never contains one.
    """
    gp, witness = is_general_position(config)
    if not gp:
        raise ValueError(f"configuration is degenerate on {witness}")
    r = config.d + 2
    edges = []
    for labels in combinations(range(1, config.size + 1), r):
        convex, _ = is_convex_position(config, labels)
        if not convex:
            edges.append(VertexSet.from_iterable(labels))
    edges.sort()
    return GeometricHypergraph(EdgeSet(r, config.size, tuple(edges)), config)


def induced_convexity_sweep(
    gh: GeometricHypergraph,
) -> tuple[dict[int, int], bool, list[VertexSet]]:
    """Reuse the verifier sweep: every (d+3)-subset must induce 0, 2, or 4."""
    return induced_value_sweep(gh.edge_set, gh.config.d + 3)


# ── seeded sampling ──────────────────────────────────────────────────────────


def sample_configuration(
    d: int,
    n_points: int,
    seed: int,
    coord_range: int = 10**4,
    max_attempts: int = 10_000,
) -> tuple[PointConfiguration, int]:
    """Integer grid points, resampled until general position holds.

    Coordinate slot j of attempt a reads stream word a * n_points * d + j,
    so the accepted configuration is a pure function of (d, n_points, seed,
    coord_range).  Returns the configuration and the rejection count; a grid
    too cramped to ever be in general position errors out instead of
    spinning (duplicates alone make tiny grids hopeless).
    """
    if n_points < 1:
        raise ValueError("need at least one point")
    if coord_range < 2:
        raise ValueError("coordinate range too small")
    rejections = 0
    for attempt in range(max_attempts):
        base = attempt * n_points * d
        pts = tuple(
            tuple(
                bounded_at(seed, base + i * d + j, coord_range) for j in range(d)
            )
            for i in range(n_points)
        )
        config = PointConfiguration(d, pts)
        gp, _ = is_general_position(config)
        if gp:
            return config, rejections
        rejections += 1
    raise ValueError(
        f"no general-position configuration after {max_attempts} attempts; "
        f"grid range {coord_range} is too small for {n_points} points"
    )


# ── point-set text format ────────────────────────────────────────────────────
#
# Header "points d P denom D", then P lines of d space-separated integer
# numerators (actual coordinates are numerator / D).


def format_points(config: PointConfiguration) -> str:
    lines = [f"points {config.d} {config.size} denom {config.denom}"]
    for p in config.points:
        lines.append(" ".join(str(x) for x in p))
    return "\n".join(lines) + "\n"


def parse_points(text: str) -> PointConfiguration:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("points "):
        raise ValueError("missing points header")
    head = lines[0].split()
    if len(head) != 5 or head[3] != "denom":
        raise ValueError(f"bad points header: {lines[0]!r}")
    d, p_count, denom = int(head[1]), int(head[2]), int(head[4])
    body = lines[1:]
    if len(body) != p_count:
        raise ValueError(f"header claims {p_count} points, found {len(body)}")
    pts = []
    for ln in body:
        coords = tuple(int(x) for x in ln.split())
        if len(coords) != d:
            raise ValueError(f"point line {ln!r} is not {d}-dimensional")
        pts.append(coords)
    return PointConfiguration(d, tuple(pts), denom)


def save_points(config: PointConfiguration, path: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_points(config))


def load_points(path: str) -> PointConfiguration:
    with open(path, "r") as fh:
        return parse_points(fh.read())
