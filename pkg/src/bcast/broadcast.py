"""Broadcasts f: V -> {0..diam} on circulant graphs and their predicates."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from bcast.graph_core import CirculantGraph, GraphError, build_circulant


class BroadcastError(ValueError):
    """Malformed or inadmissible broadcast for the requested operation."""


class NoAnchorError(BroadcastError):
    """A 1-valued run wraps its whole cycle, so no A-set anchor exists."""


@dataclass(frozen=True)
class Broadcast:
    graph: CirculantGraph
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.graph.n:
            raise BroadcastError(
                f"values has length {len(self.values)}, graph has {self.graph.n} vertices"
            )
        for v in self.values:
            if not isinstance(v, int) or v < 0:
                raise BroadcastError(f"broadcast values must be non-negative ints, got {v!r}")

    @classmethod
    def zero(cls, graph: CirculantGraph) -> "Broadcast":
        return cls(graph, (0,) * graph.n)

    @classmethod
    def from_mapping(cls, graph: CirculantGraph, assignment: Mapping[int, int]) -> "Broadcast":
        vals = [0] * graph.n
        for i, f in assignment.items():
            vals[i % graph.n] = f
        return cls(graph, tuple(vals))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def cost(self) -> int:
        return sum(self.values)

    def support(self) -> list[int]:
        """Broadcast vertices V_f^+ in index order."""
        return [i for i, f in enumerate(self.values) if f > 0]

    def level(self, value: int) -> list[int]:
        return [i for i, f in enumerate(self.values) if f == value]

    def __getitem__(self, i: int) -> int:
        return self.values[i % self.n]

    def __str__(self) -> str:
        return f"{self.graph}: " + "".join(str(f) if f < 10 else f"[{f}]" for f in self.values)


def cost(b: Broadcast) -> int:
    return b.cost


def is_valid_broadcast(b: Broadcast) -> bool:
    ecc = b.graph.oracle.diameter  # every eccentricity equals the diameter
    return all(f <= ecc for f in b.values)


def is_independent(b: Broadcast) -> bool:
    if not is_valid_broadcast(b):
        raise BroadcastError(f"not a broadcast: value above eccentricity in {b}")
    return not independence_violations(b, first_only=True)


def independence_violations(b: Broadcast, first_only: bool = False) -> list[tuple[int, int]]:
    """Pairs (u, v) of broadcast vertices with d(u, v) <= max(f(u), f(v))."""
    oracle = b.graph.oracle
    sup = b.support()
    bad = []
    for x, u in enumerate(sup):
        fu = b.values[u]
        for v in sup[x + 1:]:
            if oracle.distance(u, v) <= max(fu, b.values[v]):
                bad.append((u, v))
                if first_only:
                    return bad
    return bad


def is_ell_bounded(b: Broadcast, ell: int) -> bool:
    if ell < 1:
        raise BroadcastError(f"bound must be >= 1, got {ell}")
    return max(b.values) <= ell


def from_independent_set(g: CirculantGraph, S: Iterable[int]) -> Broadcast:
    members = sorted({i % g.n for i in S})
    for x, u in enumerate(members):
        for v in members[x + 1:]:
            if g.adjacent(u, v):
                raise BroadcastError(f"{{{u}, {v}}} is an edge; set is not independent")
    return Broadcast.from_mapping(g, {i: 1 for i in members})


def dominated_set_formula(g: CirculantGraph, i: int, radius: int) -> frozenset[int]:
    """Vertices i +- (r-k)a + x with |x| <= k, for k = 0..r (interval form)."""
    n, a = g.n, g.a
    out = set()
    for k in range(radius + 1):
        for sign in (-1, 1):
            centre = i + sign * (radius - k) * a
            for j in range(centre - k, centre + k + 1):
                out.add(j % n)
    return frozenset(out)


def dominated_set(b: Broadcast, i: int) -> frozenset[int]:
    """D_f(v_i): the vertices within distance f(v_i) of broadcast vertex v_i."""
    g = b.graph
    if not g.is_two_generator:
        raise GraphError(f"dominated-set formula needs C(n;1,a), got {g}")
    f = b.values[i % b.n]
    if f <= 0:
        raise BroadcastError(f"v_{i} is not a broadcast vertex")
    ball = g.oracle.ball(i % b.n, f)
    if __debug__:
        formula = dominated_set_formula(g, i % b.n, f)
        assert formula == ball, f"interval form disagrees with metric ball at v_{i}, f={f}"
    return ball


# --- analysis sets used by the counting bounds ---------------------------------


@dataclass(frozen=True)
class PartitionReport:
    axis: int
    a_sets: dict[int, tuple[int, ...]]
    b_sets: dict[int, tuple[int, ...]]

    @property
    def a_sizes(self) -> dict[int, int]:
        return {i: len(s) for i, s in self.a_sets.items()}

    @property
    def b_sizes(self) -> dict[int, int]:
        return {j: len(set(s)) for j, s in self.b_sets.items()}

    @property
    def total_size(self) -> int:
        return sum(self.a_sizes.values()) + sum(self.b_sizes.values())

    @property
    def pairwise_disjoint(self) -> bool:
        seen: set[int] = set()
        for members in list(self.a_sets.values()) + list(self.b_sets.values()):
            s = set(members)
            if len(s) != len(members) or seen & s:
                return False
            seen |= s
        return True


def a_sets_and_b_sets(b: Broadcast, axis: str | int = 1) -> PartitionReport:
    """Split a 2-bounded independent broadcast into its A- and B-sets.

    ``axis=1`` walks 1-edges; ``axis="a"`` walks a-edges (the primed sets).
    An A-set starts at a 1-vertex whose two predecessors along the axis are
    0 and covers the run 1 0 1 0 ... 1 0 0; a B-set surrounds each 2-vertex.
    """
    g = b.graph
    a = g.a
    if axis in (1, "1"):
        step = 1
    elif axis in ("a", a):
        step = a
    else:
        raise BroadcastError(f"axis must be 1 or 'a', got {axis!r}")
    if not is_ell_bounded(b, 2):
        raise BroadcastError("A/B analysis needs a 2-bounded broadcast")
    if not is_independent(b):
        raise BroadcastError("A/B analysis needs an independent broadcast")

    n, f = b.n, b.values
    a_sets: dict[int, tuple[int, ...]] = {}
    covered: set[int] = set()
    for i in range(n):
        if f[i] != 1 or f[(i - step) % n] or f[(i - 2 * step) % n]:
            continue
        members = []
        k = 0
        while f[(i + 2 * k * step) % n] == 1:
            members += [(i + 2 * k * step) % n, (i + (2 * k + 1) * step) % n]
            k += 1
        members.append((i + 2 * k * step) % n)
        a_sets[i] = tuple(members)
        covered.update(m for m in members if f[m] == 1)
    stray = [i for i in range(n) if f[i] == 1 and i not in covered]
    if stray:
        raise NoAnchorError(
            f"1-vertices {stray} lie on a fully alternating cycle along step {step}; no anchor"
        )

    b_sets: dict[int, tuple[int, ...]] = {}
    for j in b.level(2):
        if step == 1:
            offsets = (-a + 1, 0, 1, 2, a + 1)
        else:
            offsets = (0, a - 1, a, a + 1, 2 * a)
        b_sets[j] = tuple((j + o) % n for o in offsets)
    return PartitionReport(step, a_sets, b_sets)


# --- witness files ---------------------------------------------------------------


def to_witness_json(b: Broadcast) -> str:
    payload = {
        "n": b.n,
        "generators": list(b.graph.generators),
        "values": list(b.values),
        "cost": b.cost,
    }
    return json.dumps(payload) + "\n"


def from_witness_json(text: str) -> Broadcast:
    try:
        data = json.loads(text)
        g = build_circulant(int(data["n"]), [int(x) for x in data["generators"]])
        b = Broadcast(g, tuple(int(x) for x in data["values"]))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise BroadcastError(f"malformed witness JSON: {exc}") from exc
    if "cost" in data and int(data["cost"]) != b.cost:
        raise BroadcastError(f"witness cost {data['cost']} != sum of values {b.cost}")
    return b
