"""Explicit optimal broadcasts for the covered classes, and the reduction of
an arbitrary independent broadcast on C(n;1,a) to a 2-bounded one.

Every builder validates its output (valid, independent, expected cost)
before returning it; a failure raises ``ConstructionError`` rather than
returning a silently repaired pattern.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from bcast.broadcast import Broadcast, BroadcastError, is_independent, is_valid_broadcast
from bcast.formulas import (
    RULES_BY_ID,
    decompose_segments,
    predict_beta,
    segment_cost,
)
from bcast.graph_core import CirculantGraph, GraphError, build_circulant


class ConstructionError(ValueError):
    """A builder produced something that is not the promised broadcast."""


class NoConstructionError(ValueError):
    """No construction is known for these parameters."""


class ReductionNotApplicable(ValueError):
    """The 2-bounded reduction does not cover these parameters."""


@dataclass(frozen=True)
class WitnessRecipe:
    theorem_id: str
    n: int
    a: int
    params: dict = field(default_factory=dict)

    def build(self) -> Broadcast:
        return construct_witness(self.n, self.a)


def _graph(n: int, a: int) -> CirculantGraph:
    return build_circulant(n, [1, a])


def _ones(g: CirculantGraph, members) -> Broadcast:
    return Broadcast.from_mapping(g, {i: 1 for i in members})


def _validated(b: Broadcast, expected: int, what: str) -> Broadcast:
    if not is_valid_broadcast(b):
        raise ConstructionError(f"{what}: value above the diameter in {b}")
    if not is_independent(b):
        raise ConstructionError(f"{what}: not independent: {b}")
    if b.cost != expected:
        raise ConstructionError(f"{what}: cost {b.cost}, expected {expected}")
    return b


# --- C(n;1,2) ----------------------------------------------------------------------


def antipodal_pair_witness(g: CirculantGraph) -> Broadcast:
    """v_0 and the first vertex at distance diam, both at value diam - 1."""
    row = g.oracle.row
    diam = g.oracle.diameter
    j = row.index(diam)
    return Broadcast.from_mapping(g, {0: diam - 1, j: diam - 1})


def witness_a2(n: int) -> Broadcast:
    g = _graph(n, 2)
    if n in (4, 5):
        return Broadcast.from_mapping(g, {0: 1})
    if n % 12 == 9:
        val = (n - 3) // 6
        return Broadcast.from_mapping(g, {0: val, n // 3: val, 2 * n // 3: val})
    return antipodal_pair_witness(g)


# --- C(2a;1,a) ---------------------------------------------------------------------


def witness_2a(a: int) -> Broadcast:
    n = 2 * a
    g = _graph(n, a)
    if a % 2:
        return _ones(g, range(0, n, 2))
    k = (a & -a).bit_length() - 1  # a = odd * 2^k
    if a == 1 << k:
        evens = [i for i in range(0, a - 1, 2)]
        odds = [i for i in range(a + 1, 2 * a - 2, 2)]
        return _ones(g, evens + odds)
    step = 1 << (k + 1)
    return Broadcast.from_mapping(g, {i: 1 << k for i in range(0, n, step)})


# --- C(2a+1;1,a) ---------------------------------------------------------------------


def witness_2a_plus_1(a: int) -> Broadcast:
    """Image of the C(2a+1;1,2) witness under v_i -> v_{a i}."""
    n = 2 * a + 1
    src = witness_a2(n)
    g = _graph(n, a) if a >= 2 else src.graph
    return Broadcast.from_mapping(g, {(a * i) % n: f for i, f in enumerate(src.values) if f})


# --- C(3a;1,a) -----------------------------------------------------------------------


def witness_3a(a: int) -> Broadcast:
    n = 3 * a
    g = _graph(n, a)
    if a % 2:
        return _ones(g, [i for i in range(n) if i % 2 == 0 and i < 2 * a])
    return _ones(g, [i for i in range(n) if (i % (a + 1)) % 2 == 1 and i <= 2 * a])


# --- fixed small a -----------------------------------------------------------------


def witness_a3(n: int) -> Broadcast:
    g = _graph(n, 3)
    if n % 2 == 0:
        return _ones(g, range(0, n, 2))
    return _ones(g, [i for i in range(n) if i % 2 == 0 and i <= n - 5])


def witness_a4(n: int) -> Broadcast:
    g = _graph(n, 4)
    r = n % 5
    odd = [i for i in range(n) if (i % 5) % 2 == 1]
    if r in (0, 3):
        members = odd
    elif r == 2:
        members = [i for i in odd if i <= n - 3]
    else:
        # r = 1 and r = 4 share the same tail: n-2 and n-5
        members = [i for i in odd if i <= n - 7] + [n - 2, n - 5]
    return _ones(g, members)


def witness_n_even_a_odd(n: int, a: int) -> Broadcast:
    return _ones(_graph(n, a), range(0, n, 2))


def witness_multiple_of_a_plus_1(n: int, a: int) -> Broadcast:
    return _ones(_graph(n, a), [i for i in range(n) if (i % (a + 1)) % 2 == 1])


# --- segment pattern ---------------------------------------------------------------


def segment_order_policy() -> str:
    return (
        "all (a+1)-segments first, then all (a-1)-segments, laid end to end "
        "from v_0; each segment reads 1010...10100"
    )


def segment_starts(a: int, k1: int, k2: int) -> list[int]:
    starts, pos = [], 0
    for length in [a + 1] * k1 + [a - 1] * k2:
        starts.append(pos)
        pos += length
    return starts


def segment_pattern(n: int, a: int, k1: int, k2: int) -> Broadcast:
    """Segments 1010...10100 of lengths a+1 (k1 times) then a-1 (k2 times)."""
    if a % 2 or a < 6:
        raise GraphError(f"segment pattern needs even a >= 6, got {a}")
    if k1 < 0 or k2 < 0 or k1 * (a + 1) + k2 * (a - 1) != n:
        raise GraphError(f"{k1}*{a + 1} + {k2}*{a - 1} != {n}")
    if a > n // 2:
        raise GraphError(f"a={a} exceeds n/2 for n={n}")
    g = _graph(n, a)
    members = []
    for start, length in zip(segment_starts(a, k1, k2), [a + 1] * k1 + [a - 1] * k2):
        members += [start + x for x in range(0, length - 2, 2)]
    return _validated(_ones(g, members), segment_cost(a, k1, k2), f"segment pattern {g}")


# --- C(qa;1,a) -------------------------------------------------------------------------


def qa_cycle_sets(q: int, a: int, odd_start_for_even_k: bool = True) -> list[list[int]]:
    """The sets S_0..S_{a-1} on the a cycles v_k, v_{k+a}, ... of C(qa;1,a).

    For a even and q odd with q <= a-1. Cycle k for k <= q uses the offsets
    t = k, k+2, ... (mod q), (q-1)/2 of them. The remaining 2l = a-1-q cycles
    alternate between even t and odd t; ``odd_start_for_even_k`` chooses
    which parity the even-indexed cycles get. Only True keeps cycle q+1
    clear of cycle q.
    """
    if a % 2 or q % 2 == 0 or q > a - 1 or q < 3:
        raise GraphError(f"cycle sets need a even, q odd, 3 <= q <= a-1; got q={q}, a={a}")
    n = q * a
    half = (q - 1) // 2
    sets = []
    for k in range(a):
        if k <= q:
            ts = [(k + 2 * j) % q for j in range(half)]
        else:
            start = 1 if (k % 2 == 0) == odd_start_for_even_k else 0
            ts = [start + 2 * j for j in range(half)]
        sets.append(sorted((k + t * a) % n for t in ts))
    return sets


def witness_qa(q: int, a: int) -> Broadcast:
    n = q * a
    g = _graph(n, a)
    expected = RULES_BY_ID["n_multiple_of_a"].beta(n, a)[0]
    if a % 2:
        if q % 2 == 0:
            return _ones(g, range(0, n, 2))
        return _ones(g, [i for i in range(n) if i % 2 == 0 and i <= (q - 1) * a - 1])
    if q % 2 and q <= a - 1:
        members = [v for s in qa_cycle_sets(q, a) for v in s]
        return _validated(_ones(g, members), expected, f"cycle sets on {g}")
    split = decompose_segments(n, a)
    if split is None:
        raise ConstructionError(f"no segment decomposition for {g}")
    return segment_pattern(n, a, *split)


def witness_qa_plus_r(n: int, a: int) -> Broadcast:
    split = decompose_segments(n, a)
    if split is None:
        raise ConstructionError(f"no segment decomposition for C({n};1,{a})")
    return segment_pattern(n, a, *split)


# --- dispatcher ---------------------------------------------------------------------


_BUILDERS: dict[str, Callable[[int, int], Broadcast]] = {
    "complete_graph": lambda n, a: witness_a2(n),
    "a_equals_2": lambda n, a: witness_a2(n),
    "n_equals_2a": lambda n, a: witness_2a(a),
    "n_equals_2a_plus_1": lambda n, a: witness_2a_plus_1(a),
    "n_equals_3a": lambda n, a: witness_3a(a),
    "a_equals_3": lambda n, a: witness_a3(n),
    "a_equals_4": lambda n, a: witness_a4(n),
    "n_even_a_odd": witness_n_even_a_odd,
    "n_multiple_of_a_plus_1": witness_multiple_of_a_plus_1,
    "n_multiple_of_a": lambda n, a: witness_qa(n // a, a),
    "n_equals_qa_plus_r": witness_qa_plus_r,
}


def witness_recipe(n: int, a: int) -> WitnessRecipe:
    pred = predict_beta(n, a)
    if not pred.is_exact:
        raise NoConstructionError(f"no construction known for C({n};1,{a}) ({pred.note})")
    q, r = divmod(n, a)
    params: dict = {"q": q, "r": r}
    if a % 2 == 0 and a >= 6:
        split = decompose_segments(n, a)
        if split is not None:
            params["k1"], params["k2"] = split
    return WitnessRecipe(pred.theorem_id, n, a, params)


def construct_witness(n: int, a: int) -> Broadcast:
    """An independent broadcast on C(n;1,a) of the predicted optimal cost."""
    pred = predict_beta(n, a)
    if not pred.is_exact:
        raise NoConstructionError(f"no construction known for C({n};1,{a}) ({pred.note})")
    b = _BUILDERS[pred.theorem_id](n, a)
    return _validated(b, pred.value, f"{pred.theorem_id} witness for C({n};1,{a})")


# --- reduction to a 2-bounded broadcast ------------------------------------------------


@dataclass(frozen=True)
class Replacement:
    """One broadcast vertex with value > 2 and the 1-vertices replacing it."""

    source: int
    value: int
    rule: str
    targets: tuple[int, ...]


def _p(f: int) -> int:
    return f - 3 if f % 2 else f - 4


def _offsets_short(n: int, a: int, f: int) -> tuple[str, list[int]]:
    """Offsets for n = 2a + r, 2 <= r < a."""
    r = n - 2 * a
    p = _p(f)
    if f <= r:
        offs = [-a] + [x for x in range(-1, p + 2) if (x + 1) % 2 == 0]
        offs += [a + y for y in range(0, p + 1) if y % 2 == 0]
        return "short_small", offs
    if r % 2 == 0:
        if f < -(-a // 2):
            offs = [x for x in range(-1, p + 2) if (x + 1) % 2 == 0]
            offs += [a + y for y in range(0, r + p + 1) if y % 2 == 0]
            return "short_even_r", offs
        raise ReductionNotApplicable(
            f"no replacement rule for f={f} on C({n};1,{a}) (r={r} even, f >= ceil(a/2))"
        )
    d = f - (r + 1)
    hi0 = ((d + 2) // 2) * r + d % 2
    hi1 = (-(-(d + 2) // 2)) * r + 1 - d % 2
    offs = [x for x in range(-2, hi0 + 1) if ((x + 2) % (r + 2)) % 2 == 1]
    offs += [a + y for y in range(0, hi1 + 1) if ((y + 3) % (r + 2)) % 2 == 1]
    return "short_odd_r", offs


def _offsets_triple(n: int, a: int, f: int) -> tuple[str, list[int]]:
    """Offsets for n = 3a (three rows i+x, i+a+x, i-a+x)."""
    if f == 4:
        return "triple_four", [-2, 2, a - 1, a + 1, -a]
    offs = [x for x in range(-(f - 2), f - 1) if x % 2]
    offs += [a + x for x in range(0, f - 2) if x % 2 == 0]
    offs += [-a + x for x in range(-(f - 3), -1) if x % 2 == 0]
    return "triple", offs


def _offsets_long(n: int, a: int, f: int) -> tuple[str, list[int]]:
    """Offsets for n > 3a."""
    if f <= a:
        p = _p(f)
        offs = [x for x in range(-1, p + 2) if (x + 1) % 2 == 0]
        offs += [-a + y for y in range(0, p + 1) if y % 2 == 0]
        offs += [a + y for y in range(0, p + 1) if y % 2 == 0]
        return "long_small", offs
    d = f - (a + 1)
    if a % 2:
        return "long_odd_a", [x for x in range(-a, (1 + d) * a + 1) if (x + a) % 2 == 0]
    return "long_even_a", [
        x for x in range(-a - 1, (2 + d) * a + 1) if ((x + a + 1) % (a + 1)) % 2 == 1
    ]


def replacement_for(g: CirculantGraph, i: int, f: int) -> Replacement:
    n, a = g.n, g.a
    if n >= 3 * a + 1:
        rule, offs = _offsets_long(n, a, f)
    elif n == 3 * a:
        rule, offs = _offsets_triple(n, a, f)
    else:
        rule, offs = _offsets_short(n, a, f)
    targets = sorted({(i + x) % n for x in offs})
    if i in targets:
        raise ConstructionError(f"replacement for v_{i} (f={f}) on {g} hits the source")
    return Replacement(i, f, rule, tuple(targets))


def _check_reducible(b: Broadcast) -> None:
    g = b.graph
    if not g.is_two_generator:
        raise ReductionNotApplicable(f"reduction needs C(n;1,a), got {g}")
    n, a = g.n, g.a
    if a < 3:
        raise ReductionNotApplicable(f"reduction needs a >= 3, got a={a}")
    if n <= 2 * a + 1:
        raise ReductionNotApplicable(
            f"reduction not applicable to C({n};1,{a}): needs n >= 2a+2"
        )
    if not is_independent(b):
        raise BroadcastError(f"reduction needs an independent broadcast: {b}")


def published_plan(b: Broadcast) -> list[Replacement | None]:
    """Per-vertex replacements from the fixed offset rules (None where no rule).

    Each replacement depends only on the vertex position and value, so the
    result does not depend on processing order. It can still be unusable as
    a whole; ``reduce_to_2bounded`` checks that.
    """
    _check_reducible(b)
    plan: list[Replacement | None] = []
    for i, f in enumerate(b.values):
        if f > 2:
            try:
                plan.append(replacement_for(b.graph, i, f))
            except ReductionNotApplicable:
                plan.append(None)
    return plan


def apply_plan(b: Broadcast, plan: list[Replacement]) -> Broadcast:
    vals = list(b.values)
    for rep in plan:
        vals[rep.source] = 0
    for rep in plan:
        for j in rep.targets:
            if b.values[j]:
                raise ConstructionError(
                    f"replacement for v_{rep.source} lands on broadcast vertex v_{j}"
                )
            vals[j] = 1
    return Broadcast(b.graph, tuple(vals))


def _plan_is_sound(b: Broadcast, plan: list[Replacement | None]) -> bool:
    if any(rep is None for rep in plan):
        return False
    try:
        out = apply_plan(b, plan)  # type: ignore[arg-type]
    except ConstructionError:
        return False
    return out.cost >= b.cost and is_independent(out)


def _joint_replacement(b: Broadcast) -> list[Replacement]:
    """One maximum independent set over the union of all (f-2)-balls.

    Every vertex in such a ball is at distance >= 3 from the kept broadcast
    vertices (values <= 2), so only the chosen 1-vertices can clash with
    each other. Each chosen vertex is credited to its closest source.
    """
    from bcast._clique import max_weight_clique

    g = b.graph
    sources = [i for i, f in enumerate(b.values) if f > 2]
    region_set: set[int] = set()
    for i in sources:
        region_set |= g.oracle.ball(i, b.values[i] - 2)
    region = sorted(region_set - set(sources))
    idx = {v: k for k, v in enumerate(region)}
    adj = []
    for v in region:
        mask = 0
        for w in region:
            if w != v and not g.adjacent(v, w):
                mask |= 1 << idx[w]
        adj.append(mask)
    _, members = max_weight_clique(adj, [1] * len(region), (1 << len(region)) - 1)
    chosen = [v for k, v in enumerate(region) if members is not None and members >> k & 1]
    credit: dict[int, list[int]] = {i: [] for i in sources}
    for v in chosen:
        owner = min(
            (i for i in sources if g.oracle.distance(i, v) <= b.values[i] - 2),
            key=lambda i: (g.oracle.distance(i, v), i),
        )
        credit[owner].append(v)
    return [Replacement(i, b.values[i], "joint_mis", tuple(credit[i])) for i in sources]


def reduction_plan(b: Broadcast) -> list[Replacement]:
    """Replacements for every vertex with value > 2, in increasing index order.

    The fixed offset rules are used when, taken together, they yield an
    independent broadcast of no smaller cost. Otherwise all sources are
    replaced at once by a maximum independent set of the union of their
    (f-2)-balls.
    """
    plan = published_plan(b)
    if _plan_is_sound(b, plan):
        return plan  # type: ignore[return-value]
    return _joint_replacement(b)


def reduce_to_2bounded(b: Broadcast) -> Broadcast:
    """A 2-bounded independent broadcast of cost >= cost(b).

    Vertices with value <= 2 keep it; each vertex with a larger value is
    cleared and replaced by 1-vertices within distance value-2 of it.
    """
    out = apply_plan(b, reduction_plan(b))
    if not is_independent(out):
        raise ConstructionError(f"reduction of {b} is not independent: {out}")
    if out.cost < b.cost:
        raise ConstructionError(f"reduction of {b} lost cost: {out.cost} < {b.cost}")
    return out


# --- random inputs ---------------------------------------------------------------------


def random_independent_broadcast(g: CirculantGraph, rng: random.Random,
                                 high_bias: float = 0.6) -> Broadcast:
    """Greedy random independent broadcast, biased toward large values."""
    n = g.n
    oracle = g.oracle
    diam = oracle.diameter
    vals = [0] * n
    placed: list[int] = []
    for v in rng.sample(range(n), n):
        if rng.random() < high_bias:
            f = rng.randint(max(1, diam // 2), diam)
        else:
            f = rng.randint(1, diam)
        while f > 0:
            if all(oracle.distance(u, v) > max(f, vals[u]) for u in placed):
                break
            f -= 1
        if f:
            vals[v] = f
            placed.append(v)
    return Broadcast(g, tuple(vals))
