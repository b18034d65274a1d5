"""Weighted dual graphs of curve configurations.

A vertex is a rational curve carrying its integer self-intersection as a
weight; an edge is one transversal intersection point of two curves, so a
pair of vertices may be joined by several parallel edges.  Self-loops are
forbidden: a component crossing itself is outside this category.

Graphs are immutable.  Vertex ids are stable small integers; the canonical
vertex order is insertion order and never changes under derived-graph
construction.  Ids of removed vertices are never handed out again.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DuplicateId, SelfLoop, UnknownEndpoint, UnknownVertex

VertexId = int
Edge = Tuple[int, int]


def _norm_edge(a: int, b: int) -> Edge:
    return (a, b) if a <= b else (b, a)


class WeightedGraph:
    """Immutable weighted multigraph without self-loops.

    Do not call the constructor directly; use build_graph or the move
    operations, which maintain the fresh-id counter.
    """

    __slots__ = ("_order", "_weight", "_edges", "_next_id")

    def __init__(self, order, weight, edges, next_id):
        self._order: Tuple[int, ...] = tuple(order)
        self._weight: Dict[int, int] = dict(weight)
        self._edges: Tuple[Edge, ...] = tuple(sorted(_norm_edge(a, b) for a, b in edges))
        self._next_id: int = next_id

    @property
    def vertices(self) -> Tuple[int, ...]:
        """Vertex ids in canonical (insertion) order."""
        return self._order

    @property
    def edges(self) -> Tuple[Edge, ...]:
        """Sorted multiset of normalized (low, high) pairs."""
        return self._edges

    @property
    def next_id(self) -> int:
        return self._next_id

    def has_vertex(self, v: int) -> bool:
        return v in self._weight

    def weight(self, v: int) -> int:
        try:
            return self._weight[v]
        except KeyError:
            raise UnknownVertex(f"no vertex {v!r}") from None

    def require_vertex(self, v: int) -> None:
        if v not in self._weight:
            raise UnknownVertex(f"no vertex {v!r}")

    def edge_multiplicity(self, a: int, b: int) -> int:
        e = _norm_edge(a, b)
        return sum(1 for x in self._edges if x == e)

    def has_edge(self, a: int, b: int) -> bool:
        return self.edge_multiplicity(a, b) > 0

    def neighbors(self, v: int) -> Tuple[int, ...]:
        """Adjacent ids, one entry per incident edge, in canonical order."""
        self.require_vertex(v)
        out: List[int] = []
        for a, b in self._edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        pos = {u: i for i, u in enumerate(self._order)}
        out.sort(key=pos.__getitem__)
        return tuple(out)

    def degree(self, v: int) -> int:
        self.require_vertex(v)
        return sum(1 for a, b in self._edges if v in (a, b))

    def position(self, v: int) -> int:
        """Index of v in the canonical order."""
        self.require_vertex(v)
        return self._order.index(v)

    def __len__(self) -> int:
        return len(self._order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        # the fresh-id counter is bookkeeping, not graph data
        return (
            self._order == other._order
            and self._weight == other._weight
            and self._edges == other._edges
        )

    __hash__ = None

    def __repr__(self) -> str:
        ws = ", ".join(f"{v}:{self._weight[v]}" for v in self._order)
        es = ", ".join(f"{a}-{b}" for a, b in self._edges)
        return f"<WeightedGraph [{ws}] edges [{es}]>"


def build_graph(
    vertex_weights: Iterable[Tuple[int, int]],
    edges: Iterable[Tuple[int, int]] = (),
) -> WeightedGraph:
    """Construct a graph from (id, weight) pairs and id-pair edges.

    A mapping of id to weight works too.  Ids must be unique integers; edge
    endpoints must be declared; edges may repeat (parallel intersection
    points) but may not join a vertex to itself.
    """
    if isinstance(vertex_weights, Mapping):
        vertex_weights = vertex_weights.items()
    order: List[int] = []
    weight: Dict[int, int] = {}
    for v, w in vertex_weights:
        if not isinstance(v, int) or isinstance(v, bool):
            raise TypeError(f"vertex id must be an int, got {v!r}")
        if v in weight:
            raise DuplicateId(f"vertex {v} declared twice")
        order.append(v)
        weight[v] = w
    edge_list: List[Edge] = []
    for a, b in edges:
        if a not in weight:
            raise UnknownEndpoint(f"edge endpoint {a!r} is not a vertex")
        if b not in weight:
            raise UnknownEndpoint(f"edge endpoint {b!r} is not a vertex")
        if a == b:
            raise SelfLoop(f"edge {a}-{b} joins a vertex to itself")
        edge_list.append(_norm_edge(a, b))
    next_id = max(order, default=0) + 1
    return WeightedGraph(order, weight, edge_list, next_id)


def with_vertex(
    g: WeightedGraph, weight: int, neighbors: Iterable[int] = ()
) -> Tuple[WeightedGraph, int]:
    """Append one fresh vertex, optionally wired to existing vertices.

    This covers assembly steps that fall outside the blow-up calculus,
    such as gluing a resolved germ onto its exceptional locus.  Returns
    the new graph and the id it assigned.
    """
    vid = g.next_id
    w = dict(g._weight)
    w[vid] = weight
    edge_list = list(g.edges)
    for u in neighbors:
        g.require_vertex(u)
        edge_list.append(_norm_edge(vid, u))
    return WeightedGraph(g.vertices + (vid,), w, edge_list, vid + 1), vid


class SubDivisor:
    """A vertex selection of a parent graph, with induced-subgraph semantics."""

    __slots__ = ("_parent", "_selected")

    def __init__(self, parent: WeightedGraph, selected: Iterable[int]):
        sel = frozenset(selected)
        for v in sel:
            if not parent.has_vertex(v):
                raise UnknownVertex(f"selection contains unknown vertex {v!r}")
        self._parent = parent
        self._selected = sel

    @property
    def parent(self) -> WeightedGraph:
        return self._parent

    @property
    def selected(self) -> frozenset:
        return self._selected

    def order(self) -> Tuple[int, ...]:
        return tuple(v for v in self._parent.vertices if v in self._selected)

    def induced_edges(self) -> Tuple[Edge, ...]:
        return tuple(
            (a, b) for a, b in self._parent.edges if a in self._selected and b in self._selected
        )

    def degree(self, v: int) -> int:
        if v not in self._selected:
            raise UnknownVertex(f"vertex {v!r} not in selection")
        return sum(1 for a, b in self.induced_edges() if v in (a, b))

    def neighbors(self, v: int) -> Tuple[int, ...]:
        if v not in self._selected:
            raise UnknownVertex(f"vertex {v!r} not in selection")
        out: List[int] = []
        for a, b in self.induced_edges():
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        pos = {u: i for i, u in enumerate(self._parent.vertices)}
        out.sort(key=pos.__getitem__)
        return tuple(out)

    def complement(self) -> "SubDivisor":
        return SubDivisor(self._parent, set(self._parent.vertices) - self._selected)

    def __contains__(self, v: int) -> bool:
        return v in self._selected

    def __iter__(self):
        return iter(self.order())

    def __len__(self) -> int:
        return len(self._selected)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubDivisor):
            return NotImplemented
        return self._parent == other._parent and self._selected == other._selected

    __hash__ = None

    def __repr__(self) -> str:
        return f"<SubDivisor {sorted(self._selected)} of {len(self._parent)}-vertex graph>"


Selection = Union[SubDivisor, Iterable[int], None]


def subdivisor(g: WeightedGraph, selection: Selection = None) -> SubDivisor:
    """Coerce a selection (None = everything) to a SubDivisor of g."""
    if selection is None:
        return SubDivisor(g, g.vertices)
    if isinstance(selection, SubDivisor):
        if selection.parent is not g and selection.parent != g:
            raise UnknownVertex("selection belongs to a different graph")
        return selection
    return SubDivisor(g, selection)


def intersection_matrix(g: WeightedGraph, selection: Selection = None) -> List[List[int]]:
    """Symmetric matrix Q: weights on the diagonal, edge counts off it.

    Row order is the canonical vertex order restricted to the selection.
    """
    s = subdivisor(g, selection)
    verts = s.order()
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    q = [[0] * n for _ in range(n)]
    for i, v in enumerate(verts):
        q[i][i] = g.weight(v)
    for a, b in s.induced_edges():
        q[idx[a]][idx[b]] += 1
        q[idx[b]][idx[a]] += 1
    return q


@dataclass(frozen=True)
class ShapeReport:
    """Connectivity and branching facts about a selection."""

    is_forest: bool
    is_tree: bool
    is_chain: bool
    components: Tuple[Tuple[int, ...], ...]
    tips: Tuple[int, ...]
    branching: Tuple[int, ...]


def classify_shape(g: WeightedGraph, selection: Selection = None) -> ShapeReport:
    """Report forest/tree/chain structure, components, tips, branch vertices.

    Degrees count parallel edges, so a double edge is a cycle and spoils
    forestness.  Tips are vertices of degree <= 1 (isolated ones included);
    branching vertices have degree >= 3.
    """
    s = subdivisor(g, selection)
    verts = s.order()
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    is_forest = True
    for a, b in s.induced_edges():
        ra, rb = find(a), find(b)
        if ra == rb:
            is_forest = False
        else:
            parent[ra] = rb
    groups: Dict[int, List[int]] = {}
    for v in verts:
        groups.setdefault(find(v), []).append(v)
    components = tuple(tuple(vs) for vs in groups.values())
    components = tuple(sorted(components, key=lambda c: verts.index(c[0])))
    deg = {v: s.degree(v) for v in verts}
    tips = tuple(v for v in verts if deg[v] <= 1)
    branching = tuple(v for v in verts if deg[v] >= 3)
    is_tree = is_forest and len(components) == 1
    is_chain = is_tree and all(deg[v] <= 2 for v in verts)
    return ShapeReport(is_forest, is_tree, is_chain, components, tips, branching)
