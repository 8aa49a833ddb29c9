"""Bipartite instance generators for tests, demos, and benchmarks.

All generators return graphs that pass full validation: both sides
non-empty, no isolated vertices.  Random generators take an explicit
:class:`random.Random` so callers control reproducibility; module-level
:func:`generate` is a string-keyed dispatch used by the command line and the
batch harness, and returns a descriptor naming the instance.
"""

from __future__ import annotations

import random
from typing import Iterator

from .graph import BipartiteGraph


def complete_bipartite(a: int, b: int) -> BipartiteGraph:
    """All a*b cross edges; the classic tight family for the mod-k problem."""
    edges = [(u, a + w) for u in range(a) for w in range(b)]
    return BipartiteGraph.from_edges(a, b, edges)


def matching(pairs: int) -> BipartiteGraph:
    """``pairs`` disjoint edges; every degree is already 1."""
    edges = [(i, pairs + i) for i in range(pairs)]
    return BipartiteGraph.from_edges(pairs, pairs, edges)


def star(leaves: int, center_side: int = 1) -> BipartiteGraph:
    """One vertex joined to ``leaves`` others.

    ``center_side`` picks which side holds the hub; the two orientations
    exercise different branches of the constructive search.
    """
    if leaves < 1:
        raise ValueError(f"need at least one leaf, got {leaves}")
    if center_side == 1:
        return BipartiteGraph.from_edges(1, leaves, [(0, 1 + j) for j in range(leaves)])
    if center_side == 2:
        return BipartiteGraph.from_edges(
            leaves, 1, [(j, leaves) for j in range(leaves)]
        )
    raise ValueError(f"center_side must be 1 or 2, got {center_side}")


def random_bipartite(
    n1: int, n2: int, p: float, rng: random.Random
) -> BipartiteGraph:
    """Each cross pair appears independently with probability ``p``.

    Isolated vertices are repaired afterwards with one random edge each
    (side 1 first, then whatever remains isolated on side 2), so the result
    always validates.  Draw order is fixed: pairs in ascending (u, w) order,
    then repairs in ascending id order.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    present = [[rng.random() < p for _ in range(n2)] for _ in range(n1)]
    for u in range(n1):
        if not any(present[u]):
            present[u][rng.randrange(n2)] = True
    for w in range(n2):
        if not any(present[u][w] for u in range(n1)):
            present[rng.randrange(n1)][w] = True
    edges = [
        (u, n1 + w) for u in range(n1) for w in range(n2) if present[u][w]
    ]
    return BipartiteGraph.from_edges(n1, n2, edges)


def random_regularish(
    n1: int, n2: int, degree: int, rng: random.Random
) -> BipartiteGraph:
    """Every side-1 vertex picks ``degree`` distinct side-2 partners.

    Side-2 degrees are whatever the draws produce; isolated side-2 vertices
    get one random partner afterwards.  Useful for large sparse instances
    where an edge-probability model would be dense or disconnected.
    """
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    if degree > n2:
        raise ValueError(f"degree {degree} exceeds opposite side size {n2}")
    chosen = [rng.sample(range(n2), degree) for _ in range(n1)]
    covered = {w for row in chosen for w in row}
    extra = [
        (rng.randrange(n1), w) for w in range(n2) if w not in covered
    ]
    edges = [(u, n1 + w) for u, row in enumerate(chosen) for w in row]
    edges.extend((u, n1 + w) for u, w in extra)
    return BipartiteGraph.from_edges(n1, n2, edges)


def enumerate_connected_bipartite(
    max_n: int, min_n: int = 2
) -> Iterator[BipartiteGraph]:
    """Every connected bipartite graph with min_n..max_n vertices.

    Exhaustive over labelled side splits: for each (n1, n2) with
    n1 + n2 in range and each of the 2**(n1*n2) cross-adjacency patterns,
    yields the graph when every vertex has a neighbour and the graph is
    connected.  Each isomorphism class therefore appears many times; that is
    deliberate, worst-case scans want raw coverage, not canonical forms.
    Feasible up to about 9 vertices.
    """
    if min_n < 2:
        raise ValueError(f"min_n must be >= 2, got {min_n}")
    for total in range(min_n, max_n + 1):
        for n1 in range(1, total):
            n2 = total - n1
            full = (1 << n2) - 1
            for pattern in range(1 << (n1 * n2)):
                rows = [(pattern >> (u * n2)) & full for u in range(n1)]
                if any(row == 0 for row in rows):
                    continue
                union = 0
                for row in rows:
                    union |= row
                if union != full:
                    continue
                if not _rows_connected(rows, n1, n2):
                    continue
                edges = [
                    (u, n1 + w)
                    for u in range(n1)
                    for w in range(n2)
                    if rows[u] >> w & 1
                ]
                yield BipartiteGraph.from_edges(n1, n2, edges)


def _rows_connected(rows: list[int], n1: int, n2: int) -> bool:
    """Breadth-first reachability from side-1 vertex 0 over the row masks."""
    seen1 = 1
    seen2 = 0
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            fresh = rows[u] & ~seen2
            seen2 |= fresh
            while fresh:
                low = fresh & -fresh
                w = low.bit_length() - 1
                fresh ^= low
                for v in range(n1):
                    if rows[v] >> w & 1 and not seen1 >> v & 1:
                        seen1 |= 1 << v
                        nxt.append(v)
        frontier = nxt
    return seen1 == (1 << n1) - 1 and seen2 == (1 << n2) - 1


GENERATORS = {
    "complete": complete_bipartite,
    "matching": matching,
    "star": star,
    "random": random_bipartite,
    "regularish": random_regularish,
}

_SEEDED = {"random", "regularish"}


def generate(kind: str, seed: int | None = None, **params) -> tuple[BipartiteGraph, str]:
    """Build an instance by family name; returns (graph, descriptor).

    The descriptor encodes the family, its parameters, and the seed when one
    was used, so batch reports can name every instance unambiguously.
    """
    if kind not in GENERATORS:
        known = ", ".join(sorted(GENERATORS))
        raise ValueError(f"unknown generator {kind!r}; known kinds: {known}")
    label = ",".join(f"{key}={params[key]}" for key in sorted(params))
    try:
        if kind in _SEEDED:
            graph = GENERATORS[kind](**params, rng=random.Random(seed))
            return graph, f"{kind}({label},seed={seed})"
        graph = GENERATORS[kind](**params)
        return graph, f"{kind}({label})"
    except TypeError as exc:
        # wrong or missing parameter names are a usage error, not a crash
        raise ValueError(f"bad parameters for {kind!r}: {exc}") from exc
