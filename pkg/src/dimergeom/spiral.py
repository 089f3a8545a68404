"""Spirals fixed by the pentagram map: seed windows, forward/backward
recursions, and the torus-graph realization.

A point seed is a window of n+1 points [P_i, ..., P_{i+n}] with the
collinearity conditions: P_{i+l}, P_{i+n-k+1+l}, P_{i+n-k+l} collinear
for 0 <= l <= k-1, and P_i, P_{i+k}, P_{i+n} collinear.  A line seed is
the window [q_j, ..., q_{j+n}] with the dual concurrency conditions.

The graph is the pentagram template on n+1 index slots with the edges
q_j P_{j+k} removed for the k+1 values j = i-k-1, ..., i-1 (mod n+1);
each removal merges a d-tile with an s-tile into a hexagon.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .config import DoubleCircuitConfig
from .errors import BadParameters, SeedInvalid, SizeMismatch
from .geometry import HomogeneousElement, join_points, line_through, meet_hyperplanes
from .moves import MoveScript, MoveStep, apply_script, relabel, rename_faces_like
from .pentagram import _edge_h
from .torusgraph import Edge, Face, TorusGraph, with_basis_cycles


@dataclass(frozen=True)
class SpiralSeed:
    k: int
    n: int
    base: int  # absolute index of the first point
    points: tuple  # n+1 points [P_base, ..., P_{base+n}]

    def __post_init__(self):
        if not (self.k >= 2 and self.n > self.k + 2):
            raise BadParameters(f"need k >= 2 and n > k+2, got k={self.k}, n={self.n}")
        if len(self.points) != self.n + 1:
            raise BadParameters(f"seed window must hold n+1 = {self.n + 1} points")

    def point(self, j: int):
        """Point with absolute index j (must lie in the window)."""
        if not self.base <= j <= self.base + self.n:
            raise IndexError(f"index {j} outside window [{self.base}, {self.base + self.n}]")
        return self.points[j - self.base]


@dataclass(frozen=True)
class LineSeed:
    k: int
    n: int
    base: int
    lines: tuple  # n+1 lines [q_base, ..., q_{base+n}]

    def __post_init__(self):
        if not (self.k >= 2 and self.n > self.k + 2):
            raise BadParameters(f"need k >= 2 and n > k+2, got k={self.k}, n={self.n}")
        if len(self.lines) != self.n + 1:
            raise BadParameters(f"seed window must hold n+1 = {self.n + 1} lines")

    def line(self, j: int):
        if not self.base <= j <= self.base + self.n:
            raise IndexError(f"index {j} outside window [{self.base}, {self.base + self.n}]")
        return self.lines[j - self.base]


def _collinear(a, b, c) -> bool:
    return linalg.rank([list(a.coords), list(b.coords), list(c.coords)]) <= 2


def validate_spiral_seed(s: SpiralSeed):
    """List of failing seed conditions (empty means valid)."""
    p = s.points
    n, k = s.n, s.k
    bad = []
    for l in range(k):
        if not _collinear(p[l], p[n - k + 1 + l], p[n - k + l]):
            bad.append(f"P_{s.base + l}, P_{s.base + n - k + 1 + l}, P_{s.base + n - k + l} not collinear")
    if not _collinear(p[0], p[k], p[n]):
        bad.append(f"P_{s.base}, P_{s.base + k}, P_{s.base + n} not collinear")
    return bad


def validate_line_seed(s: LineSeed):
    q = s.lines
    n, k = s.n, s.k
    bad = []
    for l in range(k):
        if not _collinear(q[l], q[l + 1], q[n - k + l + 1]):
            bad.append(f"q_{s.base + l}, q_{s.base + l + 1}, q_{s.base + n - k + l + 1} not concurrent")
    if not _collinear(q[0], q[n - k], q[n]):
        bad.append(f"q_{s.base}, q_{s.base + n - k}, q_{s.base + n} not concurrent")
    return bad


def _require_valid(seed):
    bad = validate_spiral_seed(seed) if isinstance(seed, SpiralSeed) else validate_line_seed(seed)
    if bad:
        raise SeedInvalid("; ".join(bad))


def spiral_extend(s: SpiralSeed, steps: int) -> SpiralSeed:
    """Shift the window by the signed number of steps using
    P_{i+n+1} = P_{i+1} P_{i+k+1} ^ P_{i+n} P_{i+k}  (forward) and
    P_{i-1} = P_{i+n-k-1} P_{i+n-k} ^ P_{i+n-1} P_{i+k-1}  (backward)."""
    _require_valid(s)
    cur = s
    for _ in range(abs(steps)):
        p, n, k = cur.points, cur.n, cur.k
        if steps > 0:
            new = meet_hyperplanes(
                [line_through(p[1], p[k + 1]), line_through(p[n], p[k])]
            )
            cur = SpiralSeed(k, n, cur.base + 1, tuple(p[1:]) + (new,))
        else:
            new = meet_hyperplanes(
                [line_through(p[n - k - 1], p[n - k]), line_through(p[n - 1], p[k - 1])]
            )
            cur = SpiralSeed(k, n, cur.base - 1, (new,) + tuple(p[:-1]))
    return cur


def line_seed_extend(s: LineSeed, steps: int) -> LineSeed:
    """Dual recursions:
    q_{j+n+1} = <q_{j+1} ^ q_{j+n-k+1}, q_{j+k+1} ^ q_{j+k}>  (forward),
    q_{j-1} = <q_j ^ q_{j+n-k}, q_{j+n-1} ^ q_{j+n-k-1}>  (backward)."""
    _require_valid(s)
    cur = s
    for _ in range(abs(steps)):
        q, n, k = cur.lines, cur.n, cur.k
        if steps > 0:
            new = join_points(
                [meet_hyperplanes([q[1], q[n - k + 1]]), meet_hyperplanes([q[k + 1], q[k]])]
            )
            cur = LineSeed(k, n, cur.base + 1, tuple(q[1:]) + (new,))
        else:
            new = join_points(
                [meet_hyperplanes([q[0], q[n - k]]), meet_hyperplanes([q[n - 1], q[n - k - 1]])]
            )
            cur = LineSeed(k, n, cur.base - 1, (new,) + tuple(q[:-1]))
    return cur


def sample_spiral_seed(k: int, n: int, base: int, free_points, params) -> SpiralSeed:
    """Seed from free data: n-k+1 free points, then for each parameter t_l
    the point on the line of condition l at affine parameter t_l, and the
    final point as the intersection forced by the last two conditions."""
    if len(free_points) != n - k + 1:
        raise BadParameters(f"need n-k+1 = {n - k + 1} free points")
    if len(params) != k - 1:
        raise BadParameters(f"need k-1 = {k - 1} parameters")
    pts = list(free_points)
    # condition l: P_{i+n-k+1+l} on line(P_{i+l}, P_{i+n-k+l}); choose it at
    # parameter t_l along that line (affine combination of representatives)
    for l in range(k - 1):
        a, b = pts[l], pts[n - k + l]
        t = params[l]
        coords = tuple(x + t * (y - x) for x, y in zip(a.coords, b.coords))
        pts.append(HomogeneousElement(coords, a.kind))
    last = meet_hyperplanes(
        [line_through(pts[k - 1], pts[n - 1]), line_through(pts[0], pts[k])]
    )
    pts.append(last)
    seed = SpiralSeed(k, n, base, tuple(pts))
    _require_valid(seed)
    return seed


# ------------------------------------------------------------ the template


def removed_js(k: int, n: int, i: int):
    """Slots j with the edge q_j P_{j+k} removed: j = i-k-1, ..., i-1 (mod n+1)."""
    N = n + 1
    return [(i - k - 1 + m) % N for m in range(k + 1)]


def build_spiral_graph(k: int, n: int, i: int) -> TorusGraph:
    N = n + 1
    removed = set(removed_js(k, n, i))
    deltas = (0, -1, -k, -k - 1)
    edges = []
    eidx = {}
    for s in range(N):
        for delta in deltas:
            j = (s + delta) % N
            if delta == -k and j in removed:
                continue  # removed edge (q_j, P_{j+k}) seen from white slot s = j+k
            eidx[(s, delta)] = len(edges)
            edges.append(Edge(f"P{s}", f"q{j}", _edge_h(s, delta, k, N)))
    faces = []
    for s in range(N):
        if s in removed:
            continue
        sk = (s + k) % N
        faces.append(
            Face(f"d{s}", (eidx[(s, 0)], eidx[(sk, -k)], eidx[(sk, -k - 1)], eidx[(s, -1)]))
        )
    for s in range(N):
        if (s - k) % N in removed:
            continue
        s1 = (s + 1) % N
        faces.append(
            Face(f"s{s}", (eidx[(s1, -1)], eidx[(s, 0)], eidx[(s, -k)], eidx[(s1, -k - 1)]))
        )
    for j in sorted(removed):
        jk = (j + k) % N
        jk1 = (j + k + 1) % N
        faces.append(
            Face(
                f"h{j}",
                (
                    eidx[(j, 0)],
                    eidx[(jk1, -k - 1)],
                    eidx[(jk1, -1)],
                    eidx[(jk, 0)],
                    eidx[(jk, -k - 1)],
                    eidx[(j, -1)],
                ),
            )
        )
    g = TorusGraph(
        tuple(f"P{s}" for s in range(N)),
        tuple(f"q{s}" for s in range(N)),
        tuple(edges),
        tuple(faces),
    )
    return with_basis_cycles(g)


def build_spiral_config(sP: SpiralSeed, sq: LineSeed) -> DoubleCircuitConfig:
    """Labels from matched seeds: the point window based at i and the line
    window based at i-1."""
    if (sP.k, sP.n) != (sq.k, sq.n):
        raise SizeMismatch("seed shapes differ")
    if sq.base != sP.base - 1:
        raise BadParameters(f"line seed must be based at {sP.base - 1}, got {sq.base}")
    k, n, i = sP.k, sP.n, sP.base
    N = n + 1
    g = build_spiral_graph(k, n, i)
    white = {f"P{(i + m) % N}": sP.points[m] for m in range(N)}
    black = {f"q{(i - 1 + m) % N}": sq.lines[m] for m in range(N)}
    return DoubleCircuitConfig(g, 2, white, black)


def spiral_step_script(k: int, n: int, i: int) -> MoveScript:
    """One urban renewal at the tile P_i q_i P_{i+k} q_{i-1} followed by the
    two forced degree-two removals; shifts the seed window by one."""
    N = n + 1
    s = i % N
    return MoveScript(
        (
            MoveStep("urban", f"d{s}"),
            MoveStep("remove2", f"P{s}"),
            MoveStep("remove2", f"q{(s - 1) % N}"),
        )
    )


def spiral_step_on_config(c: DoubleCircuitConfig, k: int, n: int, i: int) -> DoubleCircuitConfig:
    """Apply the step script and rename so the result is slot-comparable to
    build_spiral_config of the shifted seeds."""
    from .moves import spoke_rename_map

    N = n + 1
    s = i % N
    mid = apply_script(c, MoveScript((MoveStep("urban", f"d{s}"),)))
    vmap = spoke_rename_map(
        c,
        mid,
        lambda qid: f"P{int(qid[1:])}",
        lambda pid: f"q{(int(pid[1:]) - k - 1) % N}",
    )
    removals = MoveScript(
        (MoveStep("remove2", f"P{s}"), MoveStep("remove2", f"q{(s - 1) % N}"))
    )
    stepped = apply_script(mid, removals)
    renamed = relabel(stepped, vmap)
    return rename_faces_like(renamed, build_spiral_graph(k, n, i + 1))


def inscribed_points(sq: LineSeed):
    """Q_j = q_j ^ q_{j-k} for all j available in the window, as a dict."""
    out = {}
    for j in range(sq.base + sq.k, sq.base + sq.n + 1):
        out[j] = meet_hyperplanes([sq.line(j), sq.line(j - sq.k)])
    return out
