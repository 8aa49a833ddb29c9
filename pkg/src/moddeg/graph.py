"""Immutable bipartite graphs over integer bitsets, with modular-degree checks.

Vertex ids are dense 0-based integers: ids ``0..n1-1`` form side 1 and ids
``n1..n1+n2-1`` form side 2.  Every neighbourhood is stored as one Python int
used as a bitmask, so set intersections and degree counts are popcounts.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Invalid graph input: bad format, bad structure, or failed validation."""


class NotBipartiteError(GraphError):
    """The input admits no two-sided structure (odd cycle or self-loop)."""


class IsolatedVertexError(GraphError):
    """A vertex with no incident edge; all algorithms here require degree >= 1."""


class DuplicateEdgeWarning(UserWarning):
    """An edge appeared more than once in the input and was deduplicated."""


class VertexSet:
    """A set of vertex ids backed by a single int bitmask.

    Treated as immutable: every operation returns a new set.  Cardinality is
    computed once at construction, so ``len`` is O(1).
    """

    __slots__ = ("mask", "size")

    def __init__(self, mask: int = 0):
        if mask < 0:
            raise ValueError("bitmask must be non-negative")
        self.mask = mask
        self.size = mask.bit_count()

    @classmethod
    def from_ids(cls, ids: Iterable[int]) -> "VertexSet":
        mask = 0
        for v in ids:
            mask |= 1 << v
        return cls(mask)

    @classmethod
    def single(cls, v: int) -> "VertexSet":
        return cls(1 << v)

    def __len__(self) -> int:
        return self.size

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, v: int) -> bool:
        return (self.mask >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        """Yield member ids in ascending order."""
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask | other.mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & other.mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & ~other.mask)

    def __le__(self, other: "VertexSet") -> bool:
        return self.mask & ~other.mask == 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VertexSet) and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def add(self, v: int) -> "VertexSet":
        return VertexSet(self.mask | (1 << v))

    def remove(self, v: int) -> "VertexSet":
        return VertexSet(self.mask & ~(1 << v))

    def isdisjoint(self, other: "VertexSet") -> bool:
        return self.mask & other.mask == 0

    def ids(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"VertexSet({self.ids()!r})"


@dataclass(frozen=True)
class ResidueSpec:
    """A target congruence: induced degrees must be ``residue`` mod ``modulus``."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(
                f"residue must lie in [0, {self.modulus}), got {self.residue}"
            )


@dataclass(frozen=True)
class ResidueCheck:
    """Outcome of a residue verification; truthy iff every vertex passed."""

    ok: bool
    witness: int | None = None
    witness_residue: int | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class BipartiteGraph:
    """A bipartite graph, immutable after construction.

    ``adj[v]`` is the neighbour bitmask of vertex ``v``; every neighbour lies
    on the opposite side.  Build instances through :meth:`from_edges`,
    :func:`parse_graph`, or the generators module so validation always runs.
    """

    n1: int
    n2: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(
        cls,
        n1: int,
        n2: int,
        edges: Iterable[tuple[int, int]],
        *,
        on_duplicate: str = "warn",
    ) -> "BipartiteGraph":
        """Validate and build a graph from (side-1 id, side-2 id) pairs.

        Edges may be given in either endpoint order.  Duplicates are handled
        per ``on_duplicate``: "warn" (dedupe with a warning), "ignore"
        (dedupe silently), or "error".  Raises if any edge fails to cross
        sides or any vertex ends up isolated.
        """
        if n1 < 1 or n2 < 1:
            raise GraphError(f"both sides must be non-empty, got n1={n1}, n2={n2}")
        n = n1 + n2
        masks = [0] * n
        seen: set[tuple[int, int]] = set()
        duplicates = 0
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"edge ({a}, {b}) out of range for {n} vertices")
            if b < a:
                a, b = b, a
            if not (a < n1 <= b):
                raise GraphError(f"edge ({a}, {b}) does not join side 1 to side 2")
            if (a, b) in seen:
                duplicates += 1
                continue
            seen.add((a, b))
            masks[a] |= 1 << b
            masks[b] |= 1 << a
        if duplicates:
            if on_duplicate == "error":
                raise GraphError(f"{duplicates} duplicate edge(s) in input")
            if on_duplicate == "warn":
                warnings.warn(
                    f"deduplicated {duplicates} repeated edge(s)",
                    DuplicateEdgeWarning,
                    stacklevel=2,
                )
            elif on_duplicate != "ignore":
                raise ValueError(f"unknown on_duplicate policy: {on_duplicate!r}")
        for v, m in enumerate(masks):
            if m == 0:
                raise IsolatedVertexError(f"vertex {v} has no incident edge")
        return cls(n1=n1, n2=n2, adj=tuple(masks))

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    @property
    def side1(self) -> VertexSet:
        return VertexSet((1 << self.n1) - 1)

    @property
    def side2(self) -> VertexSet:
        return VertexSet(((1 << self.n2) - 1) << self.n1)

    @property
    def vertices(self) -> VertexSet:
        return VertexSet((1 << self.n) - 1)

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degree_in(self, v: int, subset: VertexSet) -> int:
        """Number of neighbours of ``v`` inside ``subset``."""
        return (self.adj[v] & subset.mask).bit_count()

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (side-1 id, side-2 id), sorted."""
        out = []
        for u in range(self.n1):
            m = self.adj[u]
            while m:
                low = m & -m
                out.append((u, low.bit_length() - 1))
                m ^= low
        return out


def degree_in(graph: BipartiteGraph, v: int, subset: VertexSet) -> int:
    """Module-level alias for :meth:`BipartiteGraph.degree_in`."""
    return graph.degree_in(v, subset)


def verify_residue(
    graph: BipartiteGraph, subset: VertexSet, spec: ResidueSpec
) -> ResidueCheck:
    """Check that every vertex of ``subset`` has the required induced degree.

    Returns a truthy :class:`ResidueCheck` when ``deg(v) mod modulus ==
    residue`` holds inside the induced subgraph for every member, and
    otherwise reports the smallest offending vertex id with its residue.
    An empty subset passes vacuously.
    """
    mask = subset.mask
    for v in subset:
        r = (graph.adj[v] & mask).bit_count() % spec.modulus
        if r != spec.residue:
            return ResidueCheck(ok=False, witness=v, witness_residue=r)
    return ResidueCheck(ok=True)


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append((lineno, line))
    return out


def _parse_int_pair(line: str, lineno: int) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise GraphError(f"line {lineno}: expected two integers, got {line!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphError(f"line {lineno}: expected two integers, got {line!r}") from None


def parse_graph(
    text: str, *, permissive: bool = False, on_duplicate: str = "warn"
) -> BipartiteGraph:
    """Parse an edge-list document into a validated :class:`BipartiteGraph`.

    Labeled format (default): the first non-comment line is the header
    ``n1 n2``; each following line is an edge ``u v`` with ``0 <= u < n1`` and
    ``n1 <= v < n1+n2``.  Lines starting with ``#`` are comments.

    Permissive format (``permissive=True``): every line is an edge ``u v``
    over arbitrary vertex ids; the bipartition is computed by 2-coloring and
    ids are compacted.  Raises :class:`NotBipartiteError` if no 2-coloring
    exists (a self-loop counts as non-bipartite structure and is a hard
    error).

    In both formats the result is relabeled so side 1 is the side of larger
    cardinality; on ties, the side containing the smallest original vertex id
    stays side 1.  Duplicate edges follow ``on_duplicate`` ("warn", "ignore",
    or "error").
    """
    lines = _content_lines(text)
    if permissive:
        return _parse_permissive(lines, on_duplicate)
    if not lines:
        raise GraphError("empty document: missing 'n1 n2' header")
    header_no, header = lines[0]
    n1, n2 = _parse_int_pair(header, header_no)
    if n1 < 1 or n2 < 1:
        raise GraphError(f"line {header_no}: sides must be positive, got {n1} {n2}")
    edges = []
    for lineno, line in lines[1:]:
        u, v = _parse_int_pair(line, lineno)
        if not (0 <= u < n1):
            raise GraphError(f"line {lineno}: vertex {u} outside side 1 range [0, {n1})")
        if not (n1 <= v < n1 + n2):
            raise GraphError(
                f"line {lineno}: vertex {v} outside side 2 range [{n1}, {n1 + n2})"
            )
        edges.append((u, v))
    if n2 > n1:
        # Relabel so side 1 is the larger side: old side 2 becomes 0..n2-1.
        edges = [(v - n1, n2 + u) for (u, v) in edges]
        n1, n2 = n2, n1
    return BipartiteGraph.from_edges(n1, n2, edges, on_duplicate=on_duplicate)


def _parse_permissive(
    lines: list[tuple[int, str]], on_duplicate: str
) -> BipartiteGraph:
    if not lines:
        raise GraphError("empty document: no edges")
    raw_edges = []
    adjacency: dict[int, set[int]] = {}
    for lineno, line in lines:
        u, v = _parse_int_pair(line, lineno)
        if u == v:
            raise NotBipartiteError(f"line {lineno}: self-loop at vertex {u}")
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex id")
        raw_edges.append((u, v))
        adjacency.setdefault(u, set()).add(v)
        adjacency.setdefault(v, set()).add(u)

    # 2-color each component; the class holding the component's smallest id
    # goes to group A so the split is deterministic.
    color: dict[int, int] = {}
    group_a: set[int] = set()
    group_b: set[int] = set()
    for start in sorted(adjacency):
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        component = {0: [start], 1: []}
        while queue:
            x = queue.pop()
            for y in adjacency[x]:
                if y not in color:
                    color[y] = 1 - color[x]
                    component[color[y]].append(y)
                    queue.append(y)
                elif color[y] == color[x]:
                    raise NotBipartiteError(
                        f"vertices {x} and {y} are adjacent but forced to one side"
                    )
        group_a.update(component[0])
        group_b.update(component[1])

    if len(group_b) > len(group_a) or (
        len(group_b) == len(group_a) and min(group_b) < min(group_a)
    ):
        group_a, group_b = group_b, group_a
    side1 = sorted(group_a)
    side2 = sorted(group_b)
    relabel = {v: i for i, v in enumerate(side1)}
    relabel.update({v: len(side1) + i for i, v in enumerate(side2)})
    edges = []
    for u, v in raw_edges:
        a, b = relabel[u], relabel[v]
        edges.append((a, b) if a < b else (b, a))
    return BipartiteGraph.from_edges(
        len(side1), len(side2), edges, on_duplicate=on_duplicate
    )


def serialize_graph(graph: BipartiteGraph) -> str:
    """Emit the labeled canonical form: header line, then sorted edges."""
    lines = [f"{graph.n1} {graph.n2}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"
