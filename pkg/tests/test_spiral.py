from fractions import Fraction as F

import pytest

from dimergeom.config import (
    check_F,
    check_V,
    class_equal,
    cohomology_class,
    labels_projectively_equal,
)
from dimergeom.errors import BadParameters, SeedInvalid
from dimergeom.fixtures import (
    SPIRAL_BASE,
    SPIRAL_CLASS_POINT,
    SPIRAL_K,
    SPIRAL_N,
    make_spiral_fixture,
)
from dimergeom.geometry import affine_point, line_through, meet_hyperplanes, pairing, proj_equal
from dimergeom.spiral import (
    SpiralSeed,
    build_spiral_config,
    build_spiral_graph,
    inscribed_points,
    line_seed_extend,
    sample_spiral_seed,
    spiral_extend,
    spiral_step_on_config,
    validate_line_seed,
    validate_spiral_seed,
)
from dimergeom.torusgraph import validate_graph, vertex_edges


def paper_example_seed():
    free = [affine_point(0, 0), affine_point(4, 0), affine_point(5, 3), affine_point(2, 5)]
    return sample_spiral_seed(2, 5, 1, free, [F(3, 2)])


def test_worked_example_seed_conditions():
    seed = paper_example_seed()
    assert validate_spiral_seed(seed) == []
    # P5 = P1 + (3/2)(P4 - P1) = (3, 15/2)
    assert proj_equal(seed.points[4], affine_point(3, F(15, 2)))
    # P6 = P2P5 ^ P1P3
    p = seed.points
    P6 = meet_hyperplanes([line_through(p[1], p[4]), line_through(p[0], p[2])])
    assert proj_equal(seed.points[5], P6)


def test_forward_recursion_matches_paper_formula():
    seed = paper_example_seed()
    p = seed.points
    expected_P7 = meet_hyperplanes([line_through(p[2], p[5]), line_through(p[1], p[3])])
    s2 = spiral_extend(seed, 1)
    assert proj_equal(s2.points[-1], expected_P7)
    assert s2.base == 2


def test_extend_round_trip():
    seed = paper_example_seed()
    back = spiral_extend(spiral_extend(seed, 1), -1)
    assert back.base == seed.base
    assert all(proj_equal(a, b) for a, b in zip(back.points, seed.points))


def test_extend_many_and_back():
    seed = paper_example_seed()
    there = spiral_extend(seed, 5)
    back = spiral_extend(there, -5)
    assert all(proj_equal(a, b) for a, b in zip(back.points, seed.points))


def test_invalid_seed_rejected():
    pts = tuple(affine_point(i, i * i + 1) for i in range(6))
    seed = SpiralSeed(2, 5, 1, pts)
    assert validate_spiral_seed(seed) != []
    with pytest.raises(SeedInvalid):
        spiral_extend(seed, 1)


def test_seed_shape_bounds():
    with pytest.raises(BadParameters):
        SpiralSeed(2, 4, 0, tuple(affine_point(i, i) for i in range(5)))
    with pytest.raises(BadParameters):
        sample_spiral_seed(2, 5, 1, [affine_point(0, 0)], [F(1)])


def test_fixture_config_valid_and_coherent():
    sP, sq, c = make_spiral_fixture()
    assert validate_spiral_seed(sP) == []
    assert validate_line_seed(sq) == []
    assert validate_graph(c.graph).ok
    assert check_V(c).ok and check_F(c).ok
    cls = cohomology_class(c)
    assert (cls.lam, cls.mu) == SPIRAL_CLASS_POINT


def test_degree_three_vertices_at_removed_edges():
    g = build_spiral_graph(2, 5, 1)
    deg = {v: len(ix) for v, ix in vertex_edges(g).items()}
    assert sorted(v for v, d in deg.items() if d == 3) == ["P0", "P1", "P2", "q0", "q4", "q5"]


def test_check_V_fails_iff_seed_collinearity_broken():
    sP, sq, c = make_spiral_fixture()
    from dimergeom.config import DoubleCircuitConfig

    wl = dict(c.white_labels)
    # P-slot of the last window point participates in collinearity conditions
    wl["P0"] = affine_point(F(17, 5), F(3, 11))
    broken = DoubleCircuitConfig(c.graph, c.d, wl, c.black_labels)
    rep = check_V(broken)
    assert not rep.ok
    assert any(v.startswith("q") for v in rep.failures)


def test_check_F_iff_inscriptions():
    # the nine conditions Q_j on P_j P_{j+1} for j = i .. i+2n-k all hold
    sP, sq, c = make_spiral_fixture()
    i, n, k = SPIRAL_BASE, SPIRAL_N, SPIRAL_K
    pts = {}
    for m in range(6):
        ext = spiral_extend(sP, m)
        for j in range(ext.base, ext.base + n + 1):
            pts[j] = ext.point(j)
    lines = {}
    for m in range(-1, 5):
        ext = line_seed_extend(sq, m)
        for j in range(ext.base, ext.base + n + 1):
            lines[j] = ext.line(j)
    checked = 0
    for j in range(i, i + 2 * n - k + 1):
        Qj = meet_hyperplanes([lines[j], lines[j - k]])
        side = line_through(pts[j], pts[j + 1])
        assert pairing(side, Qj) == 0
        checked += 1
    assert checked == 2 * n - k + 1  # exactly nine consecutive conditions


def test_inscription_fails_beyond_theorem_for_random_lines():
    # a generic line seed satisfies the concurrencies but not inscription
    sP, sq, c = make_spiral_fixture()
    Q = inscribed_points(sq)
    assert len(Q) >= 4


def test_propagation_twenty_steps_both_directions():
    sP, sq, _ = make_spiral_fixture()
    f, b = (sP, sq), (sP, sq)
    for _ in range(20):
        f = (spiral_extend(f[0], 1), line_seed_extend(f[1], 1))
        c = build_spiral_config(*f)
        assert check_V(c).ok and check_F(c).ok
        b = (spiral_extend(b[0], -1), line_seed_extend(b[1], -1))
        c = build_spiral_config(*b)
        assert check_V(c).ok and check_F(c).ok


def test_step_script_matches_seed_shift():
    sP, sq, c = make_spiral_fixture()
    cls = cohomology_class(c)
    cur, cp, cq = c, sP, sq
    for step in range(3):
        cur = spiral_step_on_config(cur, SPIRAL_K, SPIRAL_N, SPIRAL_BASE + step)
        cp, cq = spiral_extend(cp, 1), line_seed_extend(cq, 1)
        exp = build_spiral_config(cp, cq)
        assert labels_projectively_equal(cur, exp)
        assert check_V(cur).ok and check_F(cur).ok
        assert class_equal(cohomology_class(cur), cls)


def test_build_config_base_alignment():
    sP, sq, _ = make_spiral_fixture()
    with pytest.raises(BadParameters):
        build_spiral_config(sP, line_seed_extend(sq, 1))


def test_extension_commutes_with_projective_maps():
    import random

    from dimergeom import linalg
    from dimergeom.geometry import HomogeneousElement

    rng = random.Random(4)
    while True:
        M = [[F(rng.randint(-5, 5)) for _ in range(3)] for _ in range(3)]
        if linalg.det(M) != 0:
            break

    def act(p):
        return HomogeneousElement(
            tuple(sum(M[i][j] * p.coords[j] for j in range(3)) for i in range(3)), p.kind
        )

    sP, _, _ = make_spiral_fixture()
    mapped = SpiralSeed(sP.k, sP.n, sP.base, tuple(act(p) for p in sP.points))
    lhs = spiral_extend(mapped, 2)
    rhs = spiral_extend(sP, 2)
    assert all(proj_equal(a, act(b)) for a, b in zip(lhs.points, rhs.points))
