"""Maximum-weight clique search on small graphs held as int bitsets.

Branch and bound with a greedy weighted-colouring bound: candidates are
split into classes of pairwise non-adjacent vertices, and a clique takes at
most one vertex per class, so the sum of class maxima bounds what is left.
"""

from __future__ import annotations

from typing import Sequence


class _Found(Exception):
    pass


class SearchStats:
    __slots__ = ("nodes",)

    def __init__(self) -> None:
        self.nodes = 0


def max_weight_clique(
    adj: Sequence[int],
    weights: Sequence[int],
    candidates: int,
    floor: int = 0,
    stop_at: int | None = None,
    stats: SearchStats | None = None,
) -> tuple[int, int | None]:
    """Return ``(weight, members)`` of a heaviest clique inside ``candidates``.

    Only cliques heavier than ``floor`` are reported; if none exists the
    result is ``(floor, None)``. With ``stop_at`` the search returns the first
    clique reaching that weight instead of proving optimality.
    ``members`` is a bitmask in the caller's vertex numbering.
    """
    verts = []
    c = candidates
    while c:
        low = c & -c
        verts.append(low.bit_length() - 1)
        c ^= low
    if not verts:
        return floor, None
    # heaviest first, so the first member of each colour class is its max
    verts.sort(key=lambda v: (-weights[v], v))
    pos = {v: k for k, v in enumerate(verts)}
    w = [weights[v] for v in verts]
    padj = []
    for v in verts:
        m = 0
        nb = adj[v] & candidates
        while nb:
            low = nb & -nb
            m |= 1 << pos[low.bit_length() - 1]
            nb ^= low
        padj.append(m)

    best_w = floor
    best_set = 0
    nodes = 0

    def expand(cur_w: int, cur_set: int, P: int) -> None:
        nonlocal best_w, best_set, nodes
        nodes += 1
        order = []
        bounds = []
        total = 0
        U = P
        while U:
            Q = U
            low = Q & -Q
            v = low.bit_length() - 1
            total += w[v]
            while True:
                order.append(v)
                bounds.append(total)
                U ^= low
                Q &= ~padj[v]
                Q ^= low
                if not Q:
                    break
                low = Q & -Q
                v = low.bit_length() - 1
        for k in range(len(order) - 1, -1, -1):
            if cur_w + bounds[k] <= best_w:
                return
            v = order[k]
            bit = 1 << v
            nw = cur_w + w[v]
            nP = P & padj[v]
            if nP:
                expand(nw, cur_set | bit, nP)
            elif nw > best_w:
                best_w = nw
                best_set = cur_set | bit
                if stop_at is not None and best_w >= stop_at:
                    raise _Found
            P ^= bit

    try:
        expand(0, 0, (1 << len(verts)) - 1)
    except _Found:
        pass
    if stats is not None:
        stats.nodes += nodes
    if best_set == 0:
        return floor, None
    members = 0
    m = best_set
    while m:
        low = m & -m
        members |= 1 << verts[low.bit_length() - 1]
        m ^= low
    return best_w, members
