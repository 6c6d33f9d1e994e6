import pytest
from hypothesis import given, settings, strategies as st

import oracle
from golden import LEXMIN, VALUES
from bcast.broadcast import is_ell_bounded, is_independent, is_valid_broadcast
from bcast.exact_solver import (
    ENV_LIMIT,
    ExactLimits,
    broadcast_independence,
    max_independent_set,
    verify_lower_bound_mu,
)
from bcast.graph_core import SizeLimitError, antipodal_number, build_circulant

PAIRS = sorted(VALUES)


def _check_witness(res, bound=None):
    w = res.witness
    assert is_valid_broadcast(w) and is_independent(w)
    assert w.cost == res.value
    if bound is not None:
        assert is_ell_bounded(w, bound)


@pytest.mark.parametrize("n, a", PAIRS)
def test_matches_frozen_values(n, a):
    alpha, beta, beta2 = VALUES[(n, a)]
    g = build_circulant(n, [1, a])
    r1, r, r2 = max_independent_set(g), broadcast_independence(g), broadcast_independence(g, 2)
    assert (r1.value, r.value, r2.value) == (alpha, beta, beta2)
    _check_witness(r1, 1)
    _check_witness(r)
    _check_witness(r2, 2)


@pytest.mark.parametrize("n", range(4, 12))
def test_frozen_values_rederive(n):
    for a in range(2, n // 2 + 1):
        g = (1, a)
        assert VALUES[(n, a)] == (oracle.alpha(n, g), oracle.beta(n, g), oracle.beta(n, g, 2))


@pytest.mark.parametrize("n, a", sorted(LEXMIN))
def test_witness_is_lexicographically_smallest(n, a):
    assert broadcast_independence(build_circulant(n, [1, a])).witness.values == LEXMIN[(n, a)]


@pytest.mark.parametrize(
    "n, gens, bound, value",
    [
        (6, [1, 3], 1, 3),
        (8, [1, 4], 1, 3),
        (10, [1, 2], 1, 3),
        (21, [1, 2], None, 9),
        (21, [1, 2], 2, 8),
        (4, [1, 2], None, 1),
    ],
)
def test_examples(n, gens, bound, value):
    g = build_circulant(n, gens)
    res = max_independent_set(g) if bound == 1 else broadcast_independence(g, bound)
    assert res.value == value
    _check_witness(res, bound)


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 12), st.data())
def test_arbitrary_generator_sets(n, data):
    gens = data.draw(st.sets(st.integers(1, n // 2), min_size=1, max_size=3))
    gens = tuple(sorted(gens | {1}))
    g = build_circulant(n, gens)
    assert broadcast_independence(g).value == oracle.beta(n, gens)
    assert broadcast_independence(g, 2).value == oracle.beta(n, gens, 2)
    assert max_independent_set(g).value == oracle.alpha(n, gens)


@pytest.mark.parametrize("n", [9, 12, 15, 18])
def test_bound_monotone_and_saturates(n):
    for a in range(2, n // 2 + 1):
        g = build_circulant(n, [1, a])
        diam = g.oracle.diameter
        vals = [broadcast_independence(g, ell).value for ell in range(1, diam + 2)]
        assert vals == sorted(vals)
        assert vals[0] == max_independent_set(g).value
        assert vals[diam - 1] == vals[-1] == broadcast_independence(g).value


@pytest.mark.parametrize("n", range(8, 23))
def test_two_bounded_optimum_reaches_beta(n):
    for a in range(3, n // 2 + 1):
        if n == 2 * a + 1 or (n == 2 * a and a % 2 == 0):
            continue
        g = build_circulant(n, [1, a])
        assert broadcast_independence(g, 2).value == broadcast_independence(g).value, (n, a)


@pytest.mark.parametrize("n", range(6, 23))
def test_alpha_at_most_beta(n):
    for a in range(2, n // 2 + 1):
        g = build_circulant(n, [1, a])
        assert max_independent_set(g).value <= broadcast_independence(g).value


def test_parallel_matches_serial():
    for n, a in [(17, 4), (20, 6), (21, 2)]:
        g = build_circulant(n, [1, a])
        serial = broadcast_independence(g)
        par = broadcast_independence(g, workers=2)
        assert (par.value, par.witness) == (serial.value, serial.witness)


def test_size_limits(monkeypatch):
    monkeypatch.delenv(ENV_LIMIT, raising=False)
    with pytest.raises(SizeLimitError):
        broadcast_independence(build_circulant(25, [1, 3]))
    with pytest.raises(SizeLimitError):
        broadcast_independence(build_circulant(41, [1, 3]), 2)
    with pytest.raises(SizeLimitError):
        max_independent_set(build_circulant(65, [1, 3]))
    assert broadcast_independence(build_circulant(40, [1, 9]), 2).value > 0
    assert max_independent_set(build_circulant(64, [1, 3])).value == 32


def test_env_override(monkeypatch):
    monkeypatch.setenv(ENV_LIMIT, "10")
    assert ExactLimits.from_env() == ExactLimits(10, 10, 10)
    with pytest.raises(SizeLimitError):
        broadcast_independence(build_circulant(12, [1, 3]))
    monkeypatch.setenv(ENV_LIMIT, "lots")
    with pytest.raises(ValueError):
        ExactLimits.from_env()


def test_explicit_limits_win():
    g = build_circulant(26, [1, 3])
    res = broadcast_independence(g, limits=ExactLimits(unbounded=26))
    assert res.value == 13


def test_bad_bound():
    with pytest.raises(ValueError):
        broadcast_independence(build_circulant(8, [1, 3]), 0)


def test_result_fields():
    res = broadcast_independence(build_circulant(21, [1, 2]), 2)
    assert res.bounded_by == 2 and res.nodes_explored > 0
    assert res.independent_set == res.witness.support()


@pytest.mark.parametrize("n, gens", [(12, [1, 2]), (4, [1, 2]), (14, [1, 7]), (19, [1, 5])])
def test_lower_bound_mu(n, gens):
    assert verify_lower_bound_mu(build_circulant(n, gens))


def test_lower_bound_mu_values():
    g = build_circulant(12, [1, 2])
    assert broadcast_independence(g).value == 4 >= antipodal_number(g) * (g.oracle.diameter - 1)
    g = build_circulant(14, [1, 7])
    assert broadcast_independence(g).value == 7 >= 2 * (g.oracle.diameter - 1)
