"""Finite graphs as symmetric digraphs with a canonical arc order.

A graph is simple apart from at most one loop per vertex.  Each of the
``m0`` non-loop edges contributes the arc pair ``(u, v), (v, u)``; each
of the ``m1`` loops contributes a single self-inverse arc.  The arc
order is canonical: edge ``r`` (0-based, input order) yields arcs
``2r`` and ``2r + 1`` with ``arc[2r+1] = inverse(arc[2r])``, and the
loops follow in input order.  The inversion permutation ``J0`` is then
``m0`` swap blocks ``[[0, 1], [1, 0]]`` followed by an identity block
of size ``m1``; it is symmetric and squares to the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

__all__ = ["Arc", "Graph", "build_graph"]


@dataclass(frozen=True, slots=True)
class Arc:
    """A directed arc with its position in the canonical order."""

    origin: int
    terminus: int
    index: int

    @property
    def is_loop(self) -> bool:
        return self.origin == self.terminus

    @property
    def key(self) -> tuple[int, int]:
        return (self.origin, self.terminus)


@dataclass(frozen=True)
class Graph:
    """An undirected graph with loops, exposed through its arc set."""

    n: int
    edges: tuple[tuple[int, int], ...]
    loops: tuple[int, ...]
    arcs: tuple[Arc, ...] = field(repr=False)
    _arc_lookup: dict = field(repr=False, hash=False, compare=False)
    _out_arcs: tuple = field(repr=False, hash=False, compare=False)

    @property
    def m0(self) -> int:
        return len(self.edges)

    @property
    def m1(self) -> int:
        return len(self.loops)

    @property
    def m_prime(self) -> int:
        """Number of arcs: 2*m0 + m1."""
        return 2 * self.m0 + self.m1

    def arc(self, index: int) -> Arc:
        return self.arcs[index]

    def arc_index(self, origin: int, terminus: int) -> int:
        try:
            return self._arc_lookup[(origin, terminus)]
        except KeyError:
            raise ValidationError(
                f"({origin},{terminus}) is not an arc of the graph"
            ) from None

    def has_arc(self, origin: int, terminus: int) -> bool:
        return (origin, terminus) in self._arc_lookup

    def inverse_index(self, index: int) -> int:
        """Index of the inverse arc; loops are self-inverse."""
        if index < 2 * self.m0:
            return index ^ 1
        return index

    def out_arcs(self, vertex: int) -> tuple[Arc, ...]:
        """Arcs leaving ``vertex``, in canonical order."""
        return self._out_arcs[vertex]

    def j0_matrix(self) -> np.ndarray:
        """The arc-inversion permutation as a complex matrix."""
        m = self.m_prime
        j0 = np.zeros((m, m), dtype=complex)
        for arc in self.arcs:
            j0[arc.index, self.inverse_index(arc.index)] = 1.0
        return j0

    def adjacency(self) -> np.ndarray:
        """0/1 adjacency matrix over non-loop edges."""
        a = np.zeros((self.n, self.n), dtype=complex)
        for u, v in self.edges:
            a[u, v] = 1.0
            a[v, u] = 1.0
        return a

    def arc_mask(self) -> np.ndarray:
        """Boolean n x n mask that is True exactly on arcs."""
        mask = np.zeros((self.n, self.n), dtype=bool)
        for arc in self.arcs:
            mask[arc.origin, arc.terminus] = True
        return mask

    def degrees(self) -> np.ndarray:
        """Vertex degrees; a loop contributes 2 as usual."""
        deg = np.zeros(self.n, dtype=int)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        for u in self.loops:
            deg[u] += 2
        return deg

    def is_connected(self) -> bool:
        """Connectivity of the underlying loopless graph.

        Loops never join components, so this answers for the full graph
        as well.
        """
        if self.n <= 1:
            return True
        seen = [False] * self.n
        stack = [0]
        seen[0] = True
        neighbors: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        while stack:
            u = stack.pop()
            for v in neighbors[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        return all(seen)

    def is_tree_core(self) -> bool:
        """True when the loopless graph is a tree."""
        return self.m0 == self.n - 1 and self.is_connected()

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "edges": [list(e) for e in self.edges],
            "loops": list(self.loops),
        }


def build_graph(n: int, edges, loops=()) -> Graph:
    """Validate and build a graph with its canonical arc order.

    Parameters
    ----------
    n : int
        Number of vertices, labelled ``0 .. n-1``.
    edges : iterable of (int, int)
        Non-loop edges; order fixes the arc order.  Duplicates (in
        either orientation) are rejected.
    loops : iterable of int
        Vertices carrying a loop, at most one each.

    Raises
    ------
    ValidationError
        On out-of-range ids, duplicate edges or loops, or an edge of the
        form ``(u, u)`` (loops must be declared via ``loops``).
    """
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"vertex count must be a positive int, got {n!r}")

    def check_vertex(v, what):
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
            raise ValidationError(f"{what}: vertex {v!r} not in 0..{n - 1}")

    edge_list: list[tuple[int, int]] = []
    seen_pairs: set[frozenset] = set()
    for pos, edge in enumerate(edges):
        edge = tuple(edge)
        if len(edge) != 2:
            raise ValidationError(f"edge #{pos}: expected a pair, got {edge!r}")
        u, v = edge
        check_vertex(u, f"edge #{pos}")
        check_vertex(v, f"edge #{pos}")
        if u == v:
            raise ValidationError(
                f"edge #{pos} is ({u},{v}); declare loops via the loops list"
            )
        pair = frozenset((u, v))
        if pair in seen_pairs:
            raise ValidationError(f"duplicate edge ({u},{v})")
        seen_pairs.add(pair)
        edge_list.append((u, v))

    loop_list: list[int] = []
    seen_loops: set[int] = set()
    for pos, u in enumerate(loops):
        check_vertex(u, f"loop #{pos}")
        if u in seen_loops:
            raise ValidationError(f"duplicate loop at vertex {u}")
        seen_loops.add(u)
        loop_list.append(u)

    arcs: list[Arc] = []
    for u, v in edge_list:
        arcs.append(Arc(u, v, len(arcs)))
        arcs.append(Arc(v, u, len(arcs)))
    for u in loop_list:
        arcs.append(Arc(u, u, len(arcs)))

    lookup = {arc.key: arc.index for arc in arcs}
    out: list[list[Arc]] = [[] for _ in range(n)]
    for arc in arcs:
        out[arc.origin].append(arc)

    return Graph(
        n=n,
        edges=tuple(edge_list),
        loops=tuple(loop_list),
        arcs=tuple(arcs),
        _arc_lookup=lookup,
        _out_arcs=tuple(tuple(row) for row in out),
    )
