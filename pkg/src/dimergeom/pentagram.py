"""Pentagram maps T_k on polygons and their torus-graph realization.

The template graph has white vertices P0..P{n-1} and black q0..q{n-1},
with P_i adjacent to q_i, q_{i-1}, q_{i-k}, q_{i-k-1} (mod n).  Faces:

* ``d{i}``: P_i, q_i, P_{i+k}, q_{i-1}  (diagonal tiles; the step script
  renews these), and
* ``s{i}``: P_{i+1}, q_i, P_i, q_{i-k}  (side tiles).

The h data comes from the square-lattice cover: whites at even lattice
positions parametrized by (s, t) with index ks + t, deck basis
gamma_1 = (0, n), gamma_2 = (1, -k).
"""
from __future__ import annotations

from dataclasses import dataclass

from .config import DoubleCircuitConfig
from .errors import BadParameters, DegenerateIntersection, SizeMismatch
from .geometry import join_points, line_through, meet_hyperplanes, pairing
from .moves import MoveScript, MoveStep, apply_script, relabel
from .torusgraph import Edge, Face, TorusGraph, with_basis_cycles


@dataclass(frozen=True)
class Polygon:
    vertices: tuple  # points of P^2, cyclic

    def __len__(self):
        return len(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i % len(self.vertices)]


@dataclass(frozen=True)
class LineList:
    lines: tuple  # hyperplanes of P^2, cyclic

    def __len__(self):
        return len(self.lines)

    def __getitem__(self, i):
        return self.lines[i % len(self.lines)]


def _check_k(n: int, k: int) -> None:
    if not 2 <= k <= n - 2:
        raise BadParameters(f"need 2 <= k <= n-2, got k={k}, n={n}")


def pentagram_map(P: Polygon, k: int) -> Polygon:
    """P'_i = P_i P_{i+k} ^ P_{i+1} P_{i+k+1}."""
    n = len(P)
    _check_k(n, k)
    out = []
    for i in range(n):
        try:
            l1 = line_through(P[i], P[i + k])
            l2 = line_through(P[i + 1], P[i + k + 1])
            out.append(meet_hyperplanes([l1, l2]))
        except DegenerateIntersection as exc:
            raise DegenerateIntersection(f"vertex {i}: {exc}") from exc
    return Polygon(tuple(out))


def dual_pentagram_map(q: LineList, k: int) -> LineList:
    """q'_i = <q_i ^ q_{i+1}, q_{i+k} ^ q_{i+k+1}>."""
    n = len(q)
    _check_k(n, k)
    out = []
    for i in range(n):
        try:
            x = meet_hyperplanes([q[i], q[i + 1]])
            y = meet_hyperplanes([q[i + k], q[i + k + 1]])
            out.append(join_points([x, y]))
        except DegenerateIntersection as exc:
            raise DegenerateIntersection(f"line {i}: {exc}") from exc
    return LineList(tuple(out))


def vertices_from_lines(q: LineList, k: int) -> Polygon:
    """Q_i = q_i ^ q_{i-k}."""
    n = len(q)
    return Polygon(tuple(meet_hyperplanes([q[i], q[i - k]]) for i in range(n)))


def lines_from_vertices(Q: Polygon, k: int) -> LineList:
    """q_i = Q_i Q_{i+k} (inverse of vertices_from_lines for generic data)."""
    n = len(Q)
    return LineList(tuple(line_through(Q[i], Q[i + k]) for i in range(n)))


def is_inscribed(Q: Polygon, P: Polygon) -> bool:
    """Consecutive vertices of Q lie on consecutive sides of P (exactly)."""
    if len(Q) != len(P):
        raise SizeMismatch(f"polygon sizes differ: {len(Q)} vs {len(P)}")
    from .scalars import is_zero

    for i in range(len(P)):
        side = line_through(P[i], P[i + 1])
        val = pairing(side, Q[i])
        scale = max(abs(a * b) for a, b in zip(side.coords, Q[i].coords))
        if not is_zero(val, scale=scale):
            return False
    return True


# ------------------------------------------------------------ the template


def _neighbor_st(i: int, delta: int, k: int):
    """(s, t) position of the black neighbor q_{i+delta} of white P_i at (0, i)."""
    if delta == 0:
        return (0, i + 1)
    if delta == -1:
        return (0, i)
    if delta == -k:
        return (-1, i + 1)
    if delta == -k - 1:
        return (-1, i)
    raise AssertionError(delta)


def _edge_h(i: int, delta: int, k: int, n: int):
    s, t = _neighbor_st(i, delta, k)
    j = (i + delta) % n
    off_s, off_t = s, t - (j + 1)
    b = off_s
    a, rem = divmod(off_t + b * k, n)
    assert rem == 0
    return (a, b)


def build_pentagram_graph(n: int, k: int) -> TorusGraph:
    if n < 5:
        raise BadParameters("template needs n >= 5")
    _check_k(n, k)
    deltas = (0, -1, -k, -k - 1)
    edges = []
    eidx = {}
    for i in range(n):
        for delta in deltas:
            j = (i + delta) % n
            eidx[(i, delta)] = len(edges)
            edges.append(Edge(f"P{i}", f"q{j}", _edge_h(i, delta, k, n)))
    faces = []
    for i in range(n):
        ik = (i + k) % n
        faces.append(
            Face(
                f"d{i}",
                (eidx[(i, 0)], eidx[(ik, -k)], eidx[(ik, -k - 1)], eidx[(i, -1)]),
            )
        )
    for i in range(n):
        i1 = (i + 1) % n
        faces.append(
            Face(
                f"s{i}",
                (eidx[(i1, -1)], eidx[(i, 0)], eidx[(i, -k)], eidx[(i1, -k - 1)]),
            )
        )
    g = TorusGraph(
        tuple(f"P{i}" for i in range(n)),
        tuple(f"q{i}" for i in range(n)),
        tuple(edges),
        tuple(faces),
    )
    return with_basis_cycles(g)


def build_pentagram_config(P: Polygon, q: LineList, k: int) -> DoubleCircuitConfig:
    if len(P) != len(q):
        raise SizeMismatch("polygon and line list sizes differ")
    n = len(P)
    g = build_pentagram_graph(n, k)
    white = {f"P{i}": P[i] for i in range(n)}
    black = {f"q{i}": q[i] for i in range(n)}
    return DoubleCircuitConfig(g, 2, white, black)


def pentagram_step_script(n: int, k: int) -> MoveScript:
    """Urban renewal at every diagonal tile, then removal of the old
    degree-two vertices.  Applying it to the template advances the labels
    by one T_k step (up to the renaming done by pentagram_step_on_config).
    """
    steps = [MoveStep("urban", f"d{i}") for i in range(n)]
    steps += [MoveStep("remove2", f"P{i}") for i in range(n)]
    steps += [MoveStep("remove2", f"q{i}") for i in range(n)]
    return MoveScript(tuple(steps))


def pentagram_step_on_config(c: DoubleCircuitConfig, k: int) -> DoubleCircuitConfig:
    """Apply the step script and rename vertices and faces back to the
    template ids, so labels can be compared slot-by-slot with the
    direct-formula dynamics and the step can be iterated.

    A new white spoke-adjacent to the old black q_j carries the advanced
    point P'_j; a new black spoke-adjacent to the old white P_i carries
    the advanced line q'_{i-k-1}.
    """
    from .moves import rename_faces_like, spoke_rename_map

    n = len(c.graph.white_ids)
    renew = MoveScript(tuple(MoveStep("urban", f"d{i}") for i in range(n)))
    mid = apply_script(c, renew)
    vmap = spoke_rename_map(
        c,
        mid,
        lambda qid: f"P{int(qid[1:])}",
        lambda pid: f"q{(int(pid[1:]) - k - 1) % n}",
    )
    removals = MoveScript(
        tuple(MoveStep("remove2", f"P{i}") for i in range(n))
        + tuple(MoveStep("remove2", f"q{i}") for i in range(n))
    )
    stepped = apply_script(mid, removals)
    renamed = relabel(stepped, vmap)
    return rename_faces_like(renamed, build_pentagram_graph(n, k))


def polygon_from_config(c: DoubleCircuitConfig) -> Polygon:
    n = len(c.graph.white_ids)
    return Polygon(tuple(c.white_labels[f"P{i}"] for i in range(n)))


def lines_from_config(c: DoubleCircuitConfig) -> LineList:
    n = len(c.graph.black_ids)
    return LineList(tuple(c.black_labels[f"q{i}"] for i in range(n)))
