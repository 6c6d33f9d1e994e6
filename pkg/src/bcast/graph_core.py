"""Circulant graphs C(n; a_1, ..., a_k) and their distance tables.

Circulants are vertex-transitive, so the whole metric is captured by the
distance row from v_0: d(v_i, v_j) = row[(j - i) mod n].
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from bcast._clique import max_weight_clique

#: largest n for which the antipodal clique search is attempted
ANTIPODAL_EXACT_LIMIT = 64


class GraphError(ValueError):
    """Invalid circulant parameters."""


class SizeLimitError(RuntimeError):
    """Instance exceeds the configured exact limit."""

    def __init__(self, what: str, n: int, limit: int):
        super().__init__(f"{what}: n={n} exceeds exact limit {limit}")
        self.n = n
        self.limit = limit


@dataclass(frozen=True)
class CirculantGraph:
    n: int
    generators: tuple[int, ...]

    def __post_init__(self) -> None:
        n, gens = self.n, self.generators
        if not isinstance(n, int) or n < 3:
            raise GraphError(f"n must be an integer >= 3, got {n!r}")
        if not gens:
            raise GraphError("at least one generator is required")
        if len(set(gens)) != len(gens):
            raise GraphError(f"duplicated generator in {list(gens)}")
        for g in gens:
            if not 1 <= g <= n // 2:
                raise GraphError(f"generator {g} outside [1, {n // 2}]")
        if list(gens) != sorted(gens):
            raise GraphError(f"generators must be increasing, got {list(gens)}")

    @property
    def is_two_generator(self) -> bool:
        """True for graphs of the form C(n; 1, a)."""
        return len(self.generators) == 2 and self.generators[0] == 1

    @property
    def a(self) -> int:
        if not self.is_two_generator:
            raise GraphError(f"{self} is not of the form C(n;1,a)")
        return self.generators[1]

    @cached_property
    def steps(self) -> tuple[int, ...]:
        """Distinct residues s with v_i ~ v_{i+s}."""
        out = set()
        for g in self.generators:
            out.add(g % self.n)
            out.add(-g % self.n)
        return tuple(sorted(out))

    def neighbors(self, i: int) -> list[int]:
        return sorted((i + s) % self.n for s in self.steps)

    def degree(self) -> int:
        # generator n/2 gives a single neighbour, not two
        return len(self.steps)

    def adjacent(self, i: int, j: int) -> bool:
        return (j - i) % self.n in self.steps

    def edges(self) -> list[tuple[int, int]]:
        return sorted(
            {(min(i, (i + s) % self.n), max(i, (i + s) % self.n))
             for i in range(self.n) for s in self.steps}
        )

    @cached_property
    def oracle(self) -> "DistanceOracle":
        return distances_from_origin(self)

    def __str__(self) -> str:
        return f"C({self.n};{','.join(map(str, self.generators))})"


def build_circulant(n: int, generators: Iterable[int]) -> CirculantGraph:
    gens = list(generators)
    if len(set(gens)) != len(gens):
        raise GraphError(f"duplicated generator in {gens}")
    return CirculantGraph(n, tuple(sorted(gens)))


@dataclass(frozen=True)
class DistanceOracle:
    graph: CirculantGraph
    row: tuple[int, ...] = field(repr=False)

    def distance(self, i: int, j: int) -> int:
        return self.row[(j - i) % self.graph.n]

    @property
    def diameter(self) -> int:
        return max(self.row)

    def ball(self, i: int, radius: int) -> frozenset[int]:
        n = self.graph.n
        return frozenset((i + s) % n for s in range(n) if self.row[s] <= radius)

    def sphere_offsets(self, radius: int) -> list[int]:
        return [s for s in range(self.graph.n) if self.row[s] == radius]


def distances_from_origin(g: CirculantGraph) -> DistanceOracle:
    n = g.n
    row = [-1] * n
    row[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for s in g.steps:
            w = (v + s) % n
            if row[w] < 0:
                row[w] = row[v] + 1
                queue.append(w)
    if min(row) < 0:
        raise GraphError(f"{g} is disconnected")
    return DistanceOracle(g, tuple(row))


def diameter(g: CirculantGraph) -> int:
    return g.oracle.diameter


def eccentricity(g: CirculantGraph, i: int) -> int:
    if not 0 <= i < g.n:
        raise GraphError(f"vertex {i} not in 0..{g.n - 1}")
    # vertex-transitive: every vertex sees the same row up to rotation
    return max(g.oracle.distance(i, j) for j in range(g.n))


def radius(g: CirculantGraph) -> int:
    return min(eccentricity(g, i) for i in range(g.n))


def closed_form_diameter_1_2(n: int) -> int:
    """diam C(n;1,2) = ceil((n-1)/4)."""
    if n < 4:
        raise GraphError(f"closed form needs n >= 4, got {n}")
    return -(-(n - 1) // 4)


def antipodal_number(g: CirculantGraph, limit: int = ANTIPODAL_EXACT_LIMIT) -> int:
    """Largest set of pairwise antipodal vertices (max clique at distance diam)."""
    if g.n > limit:
        raise SizeLimitError("antipodal number", g.n, limit)
    n = g.n
    far = g.oracle.sphere_offsets(g.oracle.diameter)
    adj = []
    for i in range(n):
        mask = 0
        for s in far:
            mask |= 1 << ((i + s) % n)
        adj.append(mask)
    weight, _ = max_weight_clique(adj, [1] * n, (1 << n) - 1)
    return weight


def connection_set_equivalent(n: int, a: int, b: int) -> bool:
    """Is there a unit u with u*{+-1, +-a} = {+-1, +-b} (mod n)?

    A multiplier certificate: when it exists, i -> u*i is an isomorphism
    C(n;1,a) -> C(n;1,b). Absence does not prove non-isomorphism.
    """
    half = n // 2
    for x in (a, b):
        if not 1 <= x <= half:
            raise GraphError(f"generator {x} outside [1, {half}]")
    target = {1 % n, -1 % n, b % n, -b % n}
    for u in range(1, n):
        if math.gcd(u, n) != 1:
            continue
        if {u % n, -u % n, u * a % n, -u * a % n} == target:
            return True
    return False


def isomorphism_multiplier(n: int, a: int, b: int) -> int | None:
    """Smallest unit u mapping the connection set of C(n;1,a) onto C(n;1,b)."""
    target = {1 % n, -1 % n, b % n, -b % n}
    for u in range(1, n):
        if math.gcd(u, n) == 1 and {u % n, -u % n, u * a % n, -u * a % n} == target:
            return u
    return None
