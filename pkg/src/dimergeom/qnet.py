"""Q-nets in P^3: checkerboard windows of points (or planes), Laplace
transforms, the point/plane transition, F-transforms, and the torus-grid
realization.

A point window lives on one parity class of Z^2; the net condition says
the four lattice neighbors of every opposite-parity site are coplanar.
The Laplace transform

    f'(i,j) = <f(i-1,j), f(i,j-1)> ^ <f(i+1,j), f(i,j+1)>

produces a window on the other parity (domains shrink by one ring).  The
transposed transform pairs the other diagonal, <f(i-1,j), f(i,j+1)> ^
<f(i+1,j), f(i,j-1)>; the step script realizes one or the other
depending on which half of the tiles is renewed.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .config import DoubleCircuitConfig
from .errors import (
    BadParameters,
    CoincidentLines,
    NotQNet,
    NotQStarNet,
    SizeMismatch,
)
from .geometry import (
    HYPERPLANE,
    POINT,
    HomogeneousElement,
    meet,
    normalize_coords,
    proj_equal,
    span,
    subspace_element,
)
from .moves import MoveScript, MoveStep, apply_script, relabel, rename_faces_like
from .torusgraph import Edge, Face, TorusGraph, with_basis_cycles


@dataclass(frozen=True)
class QNetWindow:
    values: dict  # (i, j) -> point or hyperplane of P^3, keys of one parity

    def __post_init__(self):
        parities = {(i + j) % 2 for i, j in self.values}
        if len(parities) > 1:
            raise BadParameters("window keys must share one parity class")

    @property
    def parity(self) -> int:
        return next(iter((i + j) % 2 for i, j in self.values))

    @property
    def kind(self) -> str:
        return next(iter(self.values.values())).kind

    def __getitem__(self, key):
        return self.values[key]

    def __contains__(self, key):
        return key in self.values

    def sites(self):
        return sorted(self.values)


def _interior_sites(w: QNetWindow):
    """Opposite-parity sites whose four neighbors all lie in the window."""
    out = []
    for i, j in w.sites():
        for ci, cj in ((i + 1, j), (i, j + 1)):
            if (
                (ci - 1, cj) in w
                and (ci + 1, cj) in w
                and (ci, cj - 1) in w
                and (ci, cj + 1) in w
            ):
                out.append((ci, cj))
    return sorted(set(out))


def is_qnet(w: QNetWindow):
    """Failing opposite-parity sites (neighbors not coplanar/concurrent)."""
    bad = []
    for ci, cj in _interior_sites(w):
        quad = [w[ci - 1, cj], w[ci, cj - 1], w[ci + 1, cj], w[ci, cj + 1]]
        if linalg.rank([list(p.coords) for p in quad]) > 3:
            bad.append((ci, cj))
    return bad


is_qstar_net = is_qnet  # same rank condition, covectors instead of vectors


def _laplace_sites(w: QNetWindow, pairing: str):
    bad = is_qnet(w)
    if bad:
        raise (NotQNet if w.kind == POINT else NotQStarNet)(f"net condition fails at {bad}")
    out = {}
    for ci, cj in _interior_sites(w):
        W, S = w[ci - 1, cj], w[ci, cj - 1]
        E, N = w[ci + 1, cj], w[ci, cj + 1]
        if pairing == "ws-en":
            s1, s2 = span([W, S]), span([E, N])
        else:
            s1, s2 = span([W, N]), span([E, S])
        if s1.rank != 2 or s2.rank != 2:
            raise CoincidentLines(f"site ({ci},{cj}): degenerate side points")
        m = meet(s1, s2)
        if m.rank != 1:
            raise CoincidentLines(f"site ({ci},{cj}): the two lines coincide")
        out[(ci, cj)] = subspace_element(m)
    if not out:
        raise BadParameters("window too small: no interior sites")
    return QNetWindow(out)


def laplace(w: QNetWindow) -> QNetWindow:
    """Point Laplace transform; output parity is the opposite of the input."""
    if w.kind != POINT:
        raise BadParameters("laplace acts on point windows; use dual_laplace for planes")
    return _laplace_sites(w, "ws-en")


def laplace_transposed(w: QNetWindow) -> QNetWindow:
    if w.kind != POINT:
        raise BadParameters("laplace_transposed acts on point windows")
    return _laplace_sites(w, "wn-es")


def dual_laplace(G: QNetWindow) -> QNetWindow:
    """Plane Laplace transform G' = <G_W ^ G_N, G_E ^ G_S>, computed in the
    dual space (covector spans)."""
    if G.kind != HYPERPLANE:
        raise BadParameters("dual_laplace acts on plane windows")
    return _laplace_sites(G, "wn-es")


def dual_laplace_transposed(G: QNetWindow) -> QNetWindow:
    if G.kind != HYPERPLANE:
        raise BadParameters("dual_laplace_transposed acts on plane windows")
    return _laplace_sites(G, "ws-en")


def qstar_points(G: QNetWindow) -> QNetWindow:
    """g(i,j) = common point of the four neighbor planes."""
    if G.kind != HYPERPLANE:
        raise BadParameters("qstar_points acts on plane windows")
    out = {}
    for ci, cj in _interior_sites(G):
        quad = [G[ci - 1, cj], G[ci, cj - 1], G[ci + 1, cj], G[ci, cj + 1]]
        ker = linalg.nullspace([list(p.coords) for p in quad])
        if len(ker) != 1:
            raise NotQStarNet(f"site ({ci},{cj}): planes do not meet in one point")
        out[(ci, cj)] = HomogeneousElement(normalize_coords(tuple(ker[0])), POINT)
    if not out:
        raise BadParameters("window too small: no interior sites")
    return QNetWindow(out)


def plane_of_quad(g: QNetWindow, base) -> HomogeneousElement:
    """Plane spanned by g at the four neighbors of an opposite-parity site."""
    ci, cj = base
    quad = [g[ci - 1, cj], g[ci, cj - 1], g[ci + 1, cj], g[ci, cj + 1]]
    ker = linalg.nullspace([list(p.coords) for p in quad])
    if len(ker) != 1:
        raise NotQNet(f"site {base}: neighbor points do not span a plane")
    return HomogeneousElement(normalize_coords(tuple(ker[0])), HYPERPLANE)


def is_f_transform(f: QNetWindow, g: QNetWindow) -> bool:
    """For every site and both signs, f(i,j), g(i,j), f(i+1,j+-1),
    g(i+1,j+-1) are coplanar."""
    if f.parity != g.parity or f.kind != POINT or g.kind != POINT:
        raise SizeMismatch("F-transform needs two point windows of equal parity")
    checked = 0
    for i, j in f.sites():
        if (i, j) not in g:
            continue
        for dj in (1, -1):
            o = (i + 1, j + dj)
            if o in f and o in g:
                quad = [f[i, j], g[i, j], f[o], g[o]]
                if linalg.rank([list(p.coords) for p in quad]) > 3:
                    return False
                checked += 1
    if checked == 0:
        raise SizeMismatch("windows do not overlap enough to compare")
    return True


# ----------------------------------------------------------- torus quotient


def _site_id(prefix: str, i: int, j: int) -> str:
    return f"{prefix}{i}x{j}"


def build_qnet_graph(a: int, b: int, white_parity: int = 0) -> TorusGraph:
    """Square-grid torus: whites at sites with (i+j) % 2 == white_parity."""
    if a < 4 or b < 4 or a % 2 or b % 2:
        raise BadParameters("fundamental domain needs even a, b >= 4")
    edges = []
    eidx = {}
    for i in range(a):
        for j in range(b):
            if (i + j) % 2 != white_parity:
                continue
            for drn, (di, dj) in (("E", (1, 0)), ("N", (0, 1)), ("W", (-1, 0)), ("S", (0, -1))):
                ni, nj = i + di, j + dj
                fi, fj = ni % a, nj % b
                h = ((ni - fi) // a, (nj - fj) // b)
                eidx[(i, j, drn)] = len(edges)
                edges.append(Edge(_site_id("W", i, j), _site_id("B", fi, fj), h))
    faces = []
    for i in range(a):
        for j in range(b):
            i1, j1 = (i + 1) % a, (j + 1) % b
            if (i + j) % 2 == white_parity:
                es = (
                    eidx[(i, j, "E")],
                    eidx[(i1, j1, "S")],
                    eidx[(i1, j1, "W")],
                    eidx[(i, j, "N")],
                )
            else:
                es = (
                    eidx[(i1, j, "N")],
                    eidx[(i, j1, "E")],
                    eidx[(i, j1, "S")],
                    eidx[(i1, j, "W")],
                )
            faces.append(Face(f"F{i}x{j}", es))
    whites = tuple(
        _site_id("W", i, j) for i in range(a) for j in range(b) if (i + j) % 2 == white_parity
    )
    blacks = tuple(
        _site_id("B", i, j) for i in range(a) for j in range(b) if (i + j) % 2 != white_parity
    )
    return with_basis_cycles(TorusGraph(whites, blacks, tuple(edges), tuple(faces)))


def _periodic_lookup(w: QNetWindow, a: int, b: int, i: int, j: int):
    """Window value at (i, j) modulo the (a, b) lattice, validating that all
    in-window representatives agree projectively."""
    found = None
    for (ki, kj), v in w.values.items():
        if (ki - i) % a == 0 and (kj - j) % b == 0:
            if found is None:
                found = v
            elif not proj_equal(found, v):
                raise BadParameters(f"window is not ({a},{b})-periodic at ({ki},{kj})")
    if found is None:
        raise BadParameters(f"window does not cover site ({i},{j}) mod ({a},{b})")
    return found


def build_qnet_config(f: QNetWindow, G: QNetWindow, a: int, b: int) -> DoubleCircuitConfig:
    """Torus config with point labels f (white) and plane labels G (black);
    labels repeat (a, b)-periodically from the windows."""
    if f.kind != POINT or G.kind != HYPERPLANE:
        raise BadParameters("need a point window and a plane window")
    if f.parity == G.parity:
        raise BadParameters("point and plane windows must have opposite parities")
    g = build_qnet_graph(a, b, white_parity=f.parity)
    white = {}
    black = {}
    for i in range(a):
        for j in range(b):
            if (i + j) % 2 == f.parity:
                white[_site_id("W", i, j)] = _periodic_lookup(f, a, b, i, j)
            else:
                black[_site_id("B", i, j)] = _periodic_lookup(G, a, b, i, j)
    return DoubleCircuitConfig(g, 3, white, black)


def qnet_step_script(a: int, b: int, base_parity: int, white_parity: int = 0) -> MoveScript:
    """Urban renewal at all faces whose base has the given parity, then
    removal of every old vertex.  base_parity == 1 - white_parity renews
    the tiles whose script output realizes the plain Laplace transforms;
    the other parity realizes the transposed ones."""
    steps = [
        MoveStep("urban", f"F{i}x{j}")
        for i in range(a)
        for j in range(b)
        if (i + j) % 2 == base_parity
    ]
    for i in range(a):
        for j in range(b):
            prefix = "W" if (i + j) % 2 == white_parity else "B"
            steps.append(MoveStep("remove2", _site_id(prefix, i, j)))
    return MoveScript(tuple(steps))


def qnet_step_on_config(c: DoubleCircuitConfig, a: int, b: int, base_parity: int) -> DoubleCircuitConfig:
    """Apply the step script and rename sites; the output's whites sit on
    the old black parity.  Every new vertex takes the site of its spoke's
    old endpoint with the color prefix flipped."""
    from .moves import MoveStep, spoke_rename_map

    white_parity = _config_white_parity(c)
    full = qnet_step_script(a, b, base_parity, white_parity)
    renew = MoveScript(tuple(s for s in full.steps if s.op == "urban"))
    removals = MoveScript(tuple(s for s in full.steps if s.op == "remove2"))
    mid = apply_script(c, renew)
    vmap = spoke_rename_map(
        c,
        mid,
        lambda bid: "W" + bid[1:],
        lambda wid: "B" + wid[1:],
    )
    stepped = apply_script(mid, removals)
    renamed = relabel(stepped, vmap)
    return rename_faces_like(renamed, build_qnet_graph(a, b, 1 - white_parity))


def _config_white_parity(c: DoubleCircuitConfig) -> int:
    w = c.graph.white_ids[0]
    i, j = w[1:].split("x")
    return (int(i) + int(j)) % 2


def config_point_window(c: DoubleCircuitConfig) -> QNetWindow:
    return QNetWindow(
        {tuple(map(int, v[1:].split("x"))): c.white_labels[v] for v in c.graph.white_ids}
    )


def config_plane_window(c: DoubleCircuitConfig) -> QNetWindow:
    return QNetWindow(
        {tuple(map(int, v[1:].split("x"))): c.black_labels[v] for v in c.graph.black_ids}
    )


def periodic_extension(w: QNetWindow, a: int, b: int, pad: int = 2) -> QNetWindow:
    """Extend a one-period window periodically by pad periods in each
    direction, for computing transforms of torus label data."""
    out = {}
    for (i, j), v in w.values.items():
        for s in range(-pad, pad + 1):
            for t in range(-pad, pad + 1):
                out[(i + s * a, j + t * b)] = v
    return QNetWindow(out)
