import json
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from bcast.broadcast import (
    Broadcast,
    BroadcastError,
    NoAnchorError,
    a_sets_and_b_sets,
    cost,
    dominated_set,
    dominated_set_formula,
    from_independent_set,
    from_witness_json,
    independence_violations,
    is_ell_bounded,
    is_independent,
    is_valid_broadcast,
    to_witness_json,
)
from bcast.constructions import random_independent_broadcast
from bcast.graph_core import GraphError, build_circulant

C21 = build_circulant(21, [1, 2])
TRIPLE = Broadcast.from_mapping(C21, {0: 3, 7: 3, 14: 3})


@st.composite
def random_broadcast(draw, n_max=30, bound=None):
    n = draw(st.integers(7, n_max))
    a = draw(st.integers(2, n // 2))
    g = build_circulant(n, [1, a])
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    b = random_independent_broadcast(g, rng)
    if bound is not None:
        b = Broadcast(g, tuple(min(f, bound) for f in b.values))
    return b


def test_zero_broadcast():
    z = Broadcast.zero(C21)
    assert is_valid_broadcast(z) and is_independent(z)
    assert cost(z) == 0
    assert is_ell_bounded(z, 1)


def test_triple_three_broadcast():
    assert is_valid_broadcast(TRIPLE)
    assert is_independent(TRIPLE)
    assert cost(TRIPLE) == 9
    assert not is_ell_bounded(TRIPLE, 2)


def test_value_above_diameter_is_invalid():
    b = Broadcast.from_mapping(build_circulant(9, [1, 2]), {0: 3})
    assert not is_valid_broadcast(b)
    with pytest.raises(BroadcastError):
        is_independent(b)


def test_single_vertex_is_independent():
    g = build_circulant(13, [1, 4])
    for f in range(1, g.oracle.diameter + 1):
        assert is_independent(Broadcast.from_mapping(g, {5: f}))


def test_adjacent_ones_are_dependent():
    b = Broadcast.from_mapping(build_circulant(10, [1, 5]), {0: 1, 1: 1})
    assert not is_independent(b)
    assert independence_violations(b) == [(0, 1)]


@pytest.mark.parametrize("values", [(1, 0), (0,) * 21 + (1,), (0, -1) + (0,) * 19])
def test_malformed_values_rejected(values):
    with pytest.raises(BroadcastError):
        Broadcast(C21, values)


def test_from_independent_set():
    g6 = build_circulant(6, [1, 3])
    assert from_independent_set(g6, {0, 2, 4}).cost == 3
    assert from_independent_set(g6, set()).cost == 0
    b = from_independent_set(build_circulant(8, [1, 4]), {0, 2, 5})
    assert b.cost == 3 and is_independent(b) and is_ell_bounded(b, 1)
    with pytest.raises(BroadcastError):
        from_independent_set(g6, {0, 1})


def test_ell_bound_must_be_positive():
    with pytest.raises(BroadcastError):
        is_ell_bounded(TRIPLE, 0)


def test_closed_neighbourhood_for_value_one():
    n, a = 20, 6
    g = build_circulant(n, [1, a])
    b = Broadcast.from_mapping(g, {4: 1})
    assert dominated_set(b, 4) == {(4 + s) % n for s in (-a, -1, 0, 1, a)}


def test_value_two_pattern_a6():
    g = build_circulant(26, [1, 6])
    b = Broadcast.from_mapping(g, {0: 2})
    ball = dominated_set(b, 0)
    assert ball == {s % 26 for s in (0, 1, -1, 2, -2, 6, -6, 12, -12, 5, 7, -5, -7)}
    assert len(ball) == 13


def test_dominated_set_rejects_non_broadcast_vertex_and_other_graphs():
    with pytest.raises(BroadcastError):
        dominated_set(TRIPLE, 1)
    g = build_circulant(12, [1, 2, 3])
    with pytest.raises(GraphError):
        dominated_set(Broadcast.from_mapping(g, {0: 1}), 0)


@pytest.mark.parametrize("n", range(5, 31))
def test_interval_formula_is_metric_ball(n):
    for a in range(2, n // 2 + 1):
        g = build_circulant(n, [1, a])
        d = oracle.distance_matrix(n, (1, a))
        for f in range(1, g.oracle.diameter + 1):
            ball = {j for j in range(n) if d[0][j] <= f}
            assert dominated_set_formula(g, 0, f) == ball, (n, a, f)
            shifted = dominated_set_formula(g, 3 % n, f)
            assert shifted == {(j + 3) % n for j in ball}


def test_run_set_along_one_edges():
    g = build_circulant(20, [1, 9])
    b = Broadcast.from_mapping(g, {2: 1, 4: 1, 6: 1})
    rep = a_sets_and_b_sets(b, 1)
    assert rep.a_sets == {2: (2, 3, 4, 5, 6, 7, 8)}
    assert rep.a_sizes[2] == 2 * 3 + 1


def test_b_set_has_five_vertices():
    g = build_circulant(24, [1, 6])
    b = Broadcast.from_mapping(g, {10: 2})
    for axis in (1, "a"):
        rep = a_sets_and_b_sets(b, axis)
        assert rep.b_sizes == {10: 5}


def test_alternating_cycle_has_no_anchor():
    g = build_circulant(14, [1, 7])
    b = Broadcast(g, tuple(1 - i % 2 for i in range(14)))
    with pytest.raises(NoAnchorError):
        a_sets_and_b_sets(b, 1)


def test_partition_rejects_unbounded_or_dependent():
    with pytest.raises(BroadcastError):
        a_sets_and_b_sets(TRIPLE, 1)
    with pytest.raises(BroadcastError):
        a_sets_and_b_sets(Broadcast.from_mapping(C21, {0: 1, 1: 1}), 1)
    with pytest.raises(BroadcastError):
        a_sets_and_b_sets(Broadcast.zero(C21), 5)


def _partition_ok(b, axis):
    try:
        rep = a_sets_and_b_sets(b, axis)
    except NoAnchorError:
        return True
    if rep.total_size > b.n:
        return False
    # at n = 2a the two ends of a B-set coincide, see test_b_set_degenerates_at_n_2a
    return rep.pairwise_disjoint or b.n == 2 * b.graph.a


def test_b_set_degenerates_at_n_2a():
    for a in range(3, 10):
        g = build_circulant(2 * a, [1, a])
        b = Broadcast.from_mapping(g, {0: 2})
        for axis in (1, "a"):
            rep = a_sets_and_b_sets(b, axis)
            assert rep.b_sizes == {0: 4}
            assert not rep.pairwise_disjoint


@pytest.mark.parametrize("n", range(5, 15))
def test_partition_on_all_two_bounded(n):
    for a in range(2, n // 2 + 1):
        g = build_circulant(n, [1, a])
        for vals in oracle.independent_broadcasts(n, (1, a), 2):
            b = Broadcast(g, vals)
            assert _partition_ok(b, 1) and _partition_ok(b, "a"), b


def test_partition_sizes_on_random_two_bounded():
    rng = random.Random(7)
    checked = 0
    while checked < 200:
        n = rng.randint(9, 40)
        a = rng.randint(2, n // 2)
        g = build_circulant(n, [1, a])
        b = random_independent_broadcast(g, rng)
        b = Broadcast(g, tuple(min(f, 2) for f in b.values))
        assert _partition_ok(b, 1) and _partition_ok(b, "a"), b
        checked += 1


@settings(max_examples=80, deadline=None)
@given(random_broadcast(), st.data())
def test_lowering_a_value_keeps_independence(b, data):
    assert is_independent(b)
    sup = b.support()
    if not sup:
        return
    i = data.draw(st.sampled_from(sup))
    lowered = list(b.values)
    lowered[i] = data.draw(st.integers(0, lowered[i]))
    assert is_independent(Broadcast(b.graph, tuple(lowered)))


@settings(max_examples=80, deadline=None)
@given(random_broadcast())
def test_independence_matches_reference(b):
    g = b.graph.generators
    assert oracle.is_independent(b.n, g, b.values)
    # raise one value by one; the result may or may not stay independent
    if b.support():
        i = b.support()[0]
        vals = list(b.values)
        vals[i] = min(vals[i] + 1, b.graph.oracle.diameter)
        bumped = Broadcast(b.graph, tuple(vals))
        assert is_independent(bumped) == oracle.is_independent(b.n, g, bumped.values)


@settings(max_examples=50, deadline=None)
@given(st.sets(st.integers(0, 29)))
def test_characteristic_broadcast_of_independent_set(S):
    g = build_circulant(30, [1, 7])
    indep = set()
    for v in sorted(S):
        if not any(g.adjacent(v, w) for w in indep):
            indep.add(v)
    b = from_independent_set(g, indep)
    assert is_independent(b) and b.cost == len(indep)


def test_witness_json_round_trip():
    text = to_witness_json(TRIPLE)
    assert text.endswith("\n")
    assert list(json.loads(text)) == ["n", "generators", "values", "cost"]
    assert from_witness_json(text) == TRIPLE


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        '{"n": 5, "generators": [1, 2], "values": [1, 0, 0, 0, 0], "cost": 2}',
        '{"n": 5, "generators": [1, 2], "values": [1, 0, 0, 0], "cost": 1}',
        '{"n": 5, "generators": [1, 2]}',
    ],
)
def test_witness_json_rejects_bad_input(text):
    with pytest.raises((BroadcastError, GraphError)):
        from_witness_json(text)
