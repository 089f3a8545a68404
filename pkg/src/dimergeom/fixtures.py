"""Canonical reproducible fixtures.

* pentagram: polygon pairs from the conic construction (any n >= 5 and
  k not in {n/2} -- at k = n/2 the chord lines q_i = Q_i Q_{i+k} coincide
  in pairs and the line list degenerates);
* spiral: white seed with frozen parameters whose spectral curve carries
  exact rational points; black data comes from reconstruction at the
  frozen curve point;
* qnet: a periodically repeating net on the quadric z = xy paired with
  its image under a central collineation (every mixed quadrilateral then
  contains the center and is coplanar), planes from the mate's squares;
* grid_minus_edge: square-grid torus minus one edge with the forced
  collinearity at the degree-three black vertex; reconstruction at any
  curve point is underdetermined there.
"""
from __future__ import annotations

from fractions import Fraction as F

from .errors import BadParameters, GeometryError
from .geometry import POINT, HomogeneousElement, affine_point, circumscribed_pair, point
from .pentagram import Polygon, build_pentagram_config, lines_from_vertices
from .qnet import QNetWindow, build_qnet_config, build_qnet_graph, plane_of_quad
from .spectral import fiber_polynomial, kasteleyn_weights, rational_roots, reconstruct_black, spectral_polynomial
from .spiral import LineSeed, SpiralSeed, build_spiral_graph, sample_spiral_seed
from .torusgraph import TorusGraph, delete_edge


def default_pentagram_params(n: int, seed: int = 0):
    """n distinct rational conic parameters, deterministic in the seed."""
    import random

    rng = random.Random(seed)
    params: list = []
    while len(params) < n:
        t = F(rng.randint(-12, 12), rng.randint(1, 6))
        if t not in params:
            params.append(t)
    return params


def make_pentagram_fixture(n: int, k: int, params=None, seed: int = 0):
    """(P, Q, q, config): conic-inscribed pair plus the labeled template."""
    if params is None:
        params = default_pentagram_params(n, seed)
    if len(params) != n:
        raise BadParameters(f"need {n} parameters")
    if 2 * k == n:
        raise BadParameters(
            "the conic construction degenerates at k = n/2 (chord lines repeat)"
        )
    Pl, Ql = circumscribed_pair(params)
    P, Q = Polygon(tuple(Pl)), Polygon(tuple(Ql))
    q = lines_from_vertices(Q, k)
    return P, Q, q, build_pentagram_config(P, q, k)


# frozen spiral seed: free points, interpolation parameter, and the curve
# points found by exact fiber search (all verified at build time)
SPIRAL_K, SPIRAL_N, SPIRAL_BASE = 2, 5, 1
SPIRAL_FREE = ((0, 0), (5, -2), (7, 2), (3, -1))
SPIRAL_T0 = F(2)
SPIRAL_CLASS_POINT = (F(1, 5), F(2))
SPIRAL_EXTRA_POINTS = ((F(128, 135), F(-3, 4)), (F(24, 5), F(1, 2)))


def make_spiral_white_seed() -> SpiralSeed:
    free = [affine_point(*xy) for xy in SPIRAL_FREE]
    return sample_spiral_seed(SPIRAL_K, SPIRAL_N, SPIRAL_BASE, free, [SPIRAL_T0])


def make_spiral_fixture():
    """(point seed, line seed, config) for the coherent spiral pair."""
    sP = make_spiral_white_seed()
    g = build_spiral_graph(SPIRAL_K, SPIRAL_N, SPIRAL_BASE)
    N = SPIRAL_N + 1
    white = {f"P{(SPIRAL_BASE + m) % N}": sP.points[m] for m in range(N)}
    lam, mu = SPIRAL_CLASS_POINT
    res = reconstruct_black(g, 2, white, lam, mu)
    if res.status != "unique":
        raise GeometryError(f"frozen spiral fixture failed to reconstruct: {res.status}")
    c = res.config
    sq = LineSeed(
        SPIRAL_K,
        SPIRAL_N,
        SPIRAL_BASE - 1,
        tuple(c.black_labels[f"q{(SPIRAL_BASE - 1 + m) % N}"] for m in range(N)),
    )
    return sP, sq, c


# qnet fixture: periodic sequences on the quadric plus a central collineation
QNET_A = QNET_B = 4
QNET_XS = (F(1), F(2), F(4), F(-1))
QNET_YS = (F(1), F(3), F(6), F(-2))
QNET_AXIS = (F(1, 7), F(2, 7), F(3, 7), F(5, 7))


def _separable_point(x, y) -> HomogeneousElement:
    return point(x, y, x * y, 1)


def _collineate(p: HomogeneousElement) -> HomogeneousElement:
    s = sum(w * c for w, c in zip(QNET_AXIS, p.coords))
    coords = list(p.coords)
    coords[3] = coords[3] + s
    return HomogeneousElement(tuple(coords), POINT)


def make_qnet_windows(span_i=range(-3, 8), span_j=range(-3, 8), periodic: bool = True):
    """(f, g) point windows forming an exact F-transform pair: a net on the
    quadric z = xy and its central-collineation image."""

    def x_of(i):
        return QNET_XS[i % QNET_A] if periodic else F(i)

    def y_of(j):
        return QNET_YS[j % QNET_B] if periodic else F(j)

    f = QNetWindow(
        {
            (i, j): _separable_point(x_of(i), y_of(j))
            for i in span_i
            for j in span_j
            if (i + j) % 2 == 0
        }
    )
    g = QNetWindow({k: _collineate(v) for k, v in f.values.items()})
    return f, g


def make_qnet_fixture():
    """(f window, G window, config) for the coherent torus quotient."""
    a, b = QNET_A, QNET_B
    f, g_mate = make_qnet_windows(range(-1, a + 1), range(-1, b + 1))
    f_one = QNetWindow(
        {(i, j): f[(i, j)] for i in range(a) for j in range(b) if (i + j) % 2 == 0}
    )
    G = QNetWindow(
        {
            (i, j): plane_of_quad(g_mate, (i, j))
            for i in range(a)
            for j in range(b)
            if (i + j) % 2 == 1
        }
    )
    return f_one, G, build_qnet_config(f_one, G, a, b)


def _window_x(i: int):
    # arithmetic on 0..2 (parallel tangent lines there force one Laplace
    # point at infinity), generic elsewhere
    if 0 <= i <= 2:
        return F(i + 1)
    return F(i + 1) + F(1, i + 20)


def _window_y(j: int):
    if 1 <= j <= 3:
        return F(2 * j - 1)
    return F(2 * j - 1) + F(1, 2 * j + 31)


def make_window_fixture(half: int = 7):
    """Non-periodic two-layer 3D fixture for Laplace iteration.  The sequence
    spots chosen arithmetic make the transform at site (1, 2) land at
    infinity; everything else stays generic through four steps."""
    span = range(-half, half + 1)
    f = QNetWindow(
        {
            (i, j): _separable_point(_window_x(i), _window_y(j))
            for i in span
            for j in span
            if (i + j) % 2 == 0
        }
    )
    g = QNetWindow({k: _collineate(v) for k, v in f.values.items()})
    return f, g


# grid minus one edge: frozen white data (the degree-3 black vertex B1x0
# sees the collinear triple W2x0, W1x1, W1x3)
GRID_A = GRID_B = 4
GRID_WHITE = {
    "W0x0": (3, 4),
    "W0x2": (-8, -1),
    "W1x1": (7, 6),
    "W1x3": (13, 30),
    "W2x0": (6, 2),
    "W2x2": (9, -3),
    "W3x1": (7, -5),
    "W3x3": (0, -5),
}


def make_grid_minus_edge():
    """(graph, white labels): torus grid minus the W0x0--B1x0 edge."""
    g0 = build_qnet_graph(GRID_A, GRID_B, 0)
    ei = next(i for i, e in enumerate(g0.edges) if e.w == "W0x0" and e.b == "B1x0")
    g = delete_edge(g0, ei, "hole")
    white = {v: affine_point(*GRID_WHITE[v]) for v in g.white_ids}
    return g, white


def grid_minus_edge_curve_point(g: TorusGraph, white: dict):
    """Deterministic rational point on the grid fixture's curve: the first
    non-unit rational root of the lambda = 1 fiber."""
    kw = kasteleyn_weights(g, white)
    poly = spectral_polynomial(g, kw)
    for mu in rational_roots(fiber_polynomial(poly, "lam", F(1))):
        if mu not in (0, 1):
            return (F(1), mu)
    raise GeometryError("frozen grid fixture lost its curve point")
