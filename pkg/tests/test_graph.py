import itertools

import numpy as np
import pytest

from bentlab.carry import genwi_check, random_disjoint_pattern, uvz_constants
from bentlab.graph import (
    CARRIES,
    DIGITS,
    GraphError,
    Walk,
    arcs_attaining,
    build_generalized_graph,
    build_graph,
    canonical_pattern,
    collapses_to_standard,
    generalized_walk,
    instance_to_walk,
    prove,
    verify_arcs_nonpositive,
    verify_generalized,
    walk_to_computation,
)


@pytest.fixture(scope="module")
def g():
    return build_graph()


def test_vertex_count(g):
    assert len(g.vertices) == 3 * 3 * 3 * 3 * 2 == 162


def test_specific_arcs(g):
    src = (0, 0, 0, 0, 0)
    targets = [(a2, b2, 0, 0, 2) for a2 in DIGITS for b2 in DIGITS]
    assert all(g.has_arc(src, t) and g.arc_weight(src, t) == 0 for t in targets)
    # from (0, 0, -2, ., 2) a target carry of -1 forces a digit 3 in the first chain
    for d1, d2 in itertools.product(CARRIES, CARRIES):
        for a2, b2 in itertools.product(DIGITS, DIGITS):
            assert not g.has_arc((0, 0, -2, d1, 2), (a2, b2, -1, d2, 0))


def test_arc_bounds(g):
    ok, top = verify_arcs_nonpositive(g)
    assert ok and top == 0
    assert arcs_attaining(g, 0)
    for f, _, w in g.arcs:
        a1, b1 = g.vertices[f][:2]
        if a1 + b1 in (0, 4):
            assert w <= 0


def test_enumeration_is_stable(g):
    again = build_graph()
    assert again.vertices == g.vertices and again.arcs == g.arcs


def test_prove_summary():
    res = prove()
    assert res["vertices"] == 162
    assert res["max_arc_weight"] == 0
    assert res["verdict"] == "pass"


def test_zero_instance_walk(g):
    walk = instance_to_walk(0, 0, 1, g)
    assert len(walk) == 2 and walk.total == 0


def test_random_walks_round_trip(g, rng):
    k = 3
    m = 3 ** (2 * k) - 1
    for a, b in rng.integers(0, m, (200, 2)):
        walk = instance_to_walk(int(a), int(b), k, g)
        assert walk.total == 4 * k - genwi_check(int(a), int(b), k) <= 0
        comp = walk_to_computation(walk, g)
        assert comp["u"] % m == uvz_constants(k).u


def test_broken_walk_rejected(g):
    walk = instance_to_walk(1, 2, 1, g)
    bad = Walk(walk.vertices[:-1] + [walk.vertices[1]], walk.weights)
    with pytest.raises(GraphError):
        walk_to_computation(bad, g)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_period_two_pattern_collapses(k):
    assert collapses_to_standard(k)


def test_generalized_zero_u(rng):
    n = 4
    gg = build_generalized_graph((0,) * n, (2, 0, 1, 0))
    assert verify_generalized(gg, [tuple(map(int, p)) for p in rng.integers(0, 80, (20, 2))])


def test_generalized_random_patterns(rng):
    for _ in range(10):
        n = int(rng.integers(2, 6))
        u, v = random_disjoint_pattern(n, rng)
        gg = build_generalized_graph(u, v)
        m = 3**n - 1
        pairs = [tuple(map(int, p)) for p in rng.integers(0, m, (30, 2))]
        assert verify_generalized(gg, pairs)
        for a, b in pairs[:3]:
            assert len(generalized_walk(a, b, gg)) == n


def test_canonical_pattern_all_twos():
    assert canonical_pattern((0, 0), (2, 2)) == ((0, 0), (0, 0))
    assert canonical_pattern((1, 0), (0, 2)) == ((1, 0), (0, 2))


def test_overlapping_pattern_rejected():
    with pytest.raises(ValueError):
        build_generalized_graph((1, 0), (1, 0))


def test_dot_export(g):
    dot = g.to_dot()
    assert dot.startswith("digraph") and dot.count("->") == len(g.arcs)


def test_weight_cases_match_genwi(g):
    # walk weights of every pair for k = 1 reproduce 4 - LHS
    for a in range(8):
        for b in range(8):
            assert instance_to_walk(a, b, 1, g).total == 4 - genwi_check(a, b, 1)
    assert np.all(np.array([w for _, _, w in g.arcs]) <= 0)
