"""Exact alpha(G) and beta_b(G) for circulant graphs by branch and bound.

An independent broadcast is a clique in the compatibility graph whose nodes
are (vertex, value) pairs: (u, f) and (v, g) are compatible iff u != v and
d(u, v) > max(f, g). The cost of the broadcast is the clique weight, so
beta_b is a maximum-weight clique search (see ``bcast._clique``).

Rotations act transitively, so any non-empty broadcast can be rotated until
one of its largest values sits on v_0. The optimum is searched that way, one
sub-search per value of v_0. The returned witness is then replaced by the
lexicographically smallest optimal values array (no rotation assumed), so
the output does not depend on search order or worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from bcast._clique import SearchStats, max_weight_clique
from bcast.broadcast import Broadcast
from bcast.graph_core import CirculantGraph, SizeLimitError, build_circulant

ENV_LIMIT = "BCAST_EXACT_LIMIT"


@dataclass(frozen=True)
class ExactLimits:
    """Largest n each search accepts."""

    independent_set: int = 64
    unbounded: int = 24
    bounded2: int = 40

    @classmethod
    def from_env(cls) -> "ExactLimits":
        raw = os.environ.get(ENV_LIMIT)
        if not raw:
            return cls()
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"{ENV_LIMIT} must be an integer, got {raw!r}") from None
        return cls(n, n, n)

    def for_bound(self, bound: int | None) -> int:
        if bound is not None and bound <= 1:
            return self.independent_set
        if bound is not None and bound <= 2:
            return self.bounded2
        return self.unbounded


@dataclass
class SolveResult:
    value: int
    witness: Broadcast
    nodes_explored: int = 0
    bounded_by: int | None = None

    @property
    def independent_set(self) -> list[int]:
        return self.witness.support()


@dataclass
class _Model:
    """Compatibility graph over (vertex, value) items, value in 1..maxval."""

    graph: CirculantGraph
    maxval: int
    compat: list[int] = field(default_factory=list)
    weights: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        n, m = self.graph.n, self.maxval
        row = self.graph.oracle.row
        # below[v][t]: items (v, g) with g < t
        below = []
        for v in range(n):
            masks = [0] * (max(row) + 2)
            acc = 0
            for t in range(1, len(masks)):
                if t - 1 >= 1 and t - 1 <= m:
                    acc |= 1 << self.item(v, t - 1)
                masks[t] = acc
            below.append(masks)
        for u in range(n):
            for f in range(1, m + 1):
                mask = 0
                for v in range(n):
                    d = row[(v - u) % n]
                    if v != u and d > f:
                        mask |= below[v][d]
                self.compat.append(mask)
                self.weights.append(f)

    def item(self, v: int, f: int) -> int:
        return v * self.maxval + f - 1

    def decode(self, members: int) -> list[int]:
        vals = [0] * self.graph.n
        while members:
            low = members & -members
            k = low.bit_length() - 1
            vals[k // self.maxval] = k % self.maxval + 1
            members ^= low
        return vals

    def items_at_most(self, f: int) -> int:
        mask = 0
        for v in range(self.graph.n):
            for g in range(1, min(f, self.maxval) + 1):
                mask |= 1 << self.item(v, g)
        return mask

    def items_from(self, start: int) -> int:
        """All items on vertices start..n-1."""
        return ((1 << (self.graph.n * self.maxval)) - 1) >> (start * self.maxval) << (start * self.maxval)


def _anchored_search(model: _Model, f0: int, floor: int, stats: SearchStats) -> tuple[int, list[int] | None]:
    """Best broadcast with f(v_0) = f0 and every value <= f0, if it beats ``floor``."""
    anchor = model.item(0, f0)
    cand = model.compat[anchor] & model.items_at_most(f0)
    w, members = max_weight_clique(model.compat, model.weights, cand, floor=floor - f0, stats=stats)
    if members is not None:
        return f0 + w, model.decode(members | (1 << anchor))
    if f0 > floor:
        return f0, model.decode(1 << anchor)
    return floor, None


def _anchored_task(args: tuple[int, tuple[int, ...], int, int]) -> tuple[int, list[int] | None, int]:
    n, gens, maxval, f0 = args
    model = _Model(build_circulant(n, gens), maxval)
    stats = SearchStats()
    val, vals = _anchored_search(model, f0, 0, stats)
    return val, vals, stats.nodes


def _complete_prefix(model: _Model, prefix: list[int], target: int, stats: SearchStats) -> list[int] | None:
    """An independent broadcast extending ``prefix`` with cost >= target, or None."""
    n = model.graph.n
    need = target - sum(prefix)
    forced = [model.item(i, f) for i, f in enumerate(prefix) if f]
    cand = model.items_from(len(prefix))
    for k, x in enumerate(forced):
        for y in forced[k + 1:]:
            if not (model.compat[x] >> y) & 1:
                return None
        cand &= model.compat[x]
    if need <= 0:
        return list(prefix) + [0] * (n - len(prefix))
    _, members = max_weight_clique(
        model.compat, model.weights, cand, floor=need - 1, stop_at=need, stats=stats
    )
    if members is None:
        return None
    tail = model.decode(members)
    return list(prefix) + tail[len(prefix):]


def _lexmin(model: _Model, target: int, witness: list[int], stats: SearchStats) -> list[int]:
    """Lexicographically smallest values array of cost ``target``."""
    w = list(witness)
    fixed: list[int] = []
    for i in range(model.graph.n):
        for val in range(w[i]):
            trial = _complete_prefix(model, fixed + [val], target, stats)
            if trial is not None:
                w = trial
                break
        fixed.append(w[i])
    return w


def _check_size(g: CirculantGraph, limit: int, what: str) -> None:
    if g.n > limit:
        raise SizeLimitError(what, g.n, limit)


def broadcast_independence(
    g: CirculantGraph,
    bound: int | None = None,
    *,
    limits: ExactLimits | None = None,
    workers: int = 1,
) -> SolveResult:
    """beta_b(g), or the best ``bound``-bounded independent broadcast cost."""
    if bound is not None and bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    limits = limits or ExactLimits.from_env()
    _check_size(g, limits.for_bound(bound), "broadcast independence")
    diam = g.oracle.diameter
    maxval = diam if bound is None else min(bound, diam)
    model = _Model(g, maxval)
    stats = SearchStats()

    best, best_vals = 0, [0] * g.n
    if workers > 1:
        tasks = [(g.n, g.generators, maxval, f0) for f0 in range(maxval, 0, -1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for val, vals, nodes in pool.map(_anchored_task, tasks):
                stats.nodes += nodes
                if vals is not None and val > best:
                    best, best_vals = val, vals
    else:
        for f0 in range(maxval, 0, -1):
            val, vals = _anchored_search(model, f0, best, stats)
            if vals is not None and val > best:
                best, best_vals = val, vals

    best_vals = _lexmin(model, best, best_vals, stats)
    return SolveResult(best, Broadcast(g, tuple(best_vals)), stats.nodes, bound)


def max_independent_set(g: CirculantGraph, *, limits: ExactLimits | None = None) -> SolveResult:
    """alpha(g) with a lexicographically smallest characteristic vector."""
    limits = limits or ExactLimits.from_env()
    _check_size(g, limits.independent_set, "independence number")
    model = _Model(g, 1)
    stats = SearchStats()
    full = (1 << g.n) - 1
    w, members = max_weight_clique(model.compat, model.weights, full, stats=stats)
    vals = model.decode(members) if members is not None else [0] * g.n
    vals = _lexmin(model, w, vals, stats)
    return SolveResult(w, Broadcast(g, tuple(vals)), stats.nodes, 1)


def verify_lower_bound_mu(g: CirculantGraph, *, limits: ExactLimits | None = None) -> bool:
    """Check beta_b >= mu(G) (diam - 1) >= 2 (diam - 1) on ``g``."""
    from bcast.graph_core import antipodal_number

    beta = broadcast_independence(g, limits=limits).value
    diam = g.oracle.diameter
    mu = antipodal_number(g)
    return beta >= mu * (diam - 1) and mu * (diam - 1) >= 2 * (diam - 1)
