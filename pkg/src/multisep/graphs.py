"""Graph container shared by the path, packing and spanning-tree code.

Vertices are 0-based internally.  Parallel edges and self-loops are legal at
the container level: walk solvers happily traverse a loop (it just repeats
the vertex), while the spanning-tree operations demand a simple graph and
validate that themselves.  Vertex weights feed the path solvers, edge
weights feed the weighted reductions.
"""

from dataclasses import dataclass

from .errors import ParameterError


@dataclass(frozen=True)
class Graph:
    n: int
    directed: bool
    edges: tuple  # (u, v) pairs
    vweights: tuple | None = None
    eweights: tuple | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("graph needs at least one vertex")
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ParameterError("edge (%d, %d) out of range" % (u, v))
        if self.vweights is not None and len(self.vweights) != self.n:
            raise ParameterError("vertex weight count != n")
        if self.eweights is not None and len(self.eweights) != len(self.edges):
            raise ParameterError("edge weight count != m")

    @property
    def m(self):
        return len(self.edges)

    def vertex_weight(self, v: int) -> int:
        return 0 if self.vweights is None else self.vweights[v]

    def edge_weight(self, e: int) -> int:
        return 0 if self.eweights is None else self.eweights[e]

    def out_arcs(self):
        """adjacency[u] = list of (v, edge_index); both directions when
        undirected."""
        adj = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            adj[u].append((v, e))
            if not self.directed and u != v:
                adj[v].append((u, e))
        for lst in adj:
            lst.sort()
        return adj

    def undirected_degrees(self, edge_subset):
        deg = [0] * self.n
        for e in edge_subset:
            u, v = self.edges[e]
            deg[u] += 1
            deg[v] += 1
        return deg


def check_simple_undirected(g: Graph):
    """Raise unless g is undirected with no loops and no repeated edges.

    The Laplacian and spanning-tree operations are only defined on simple
    graphs; everything walk-shaped tolerates loops and parallel edges.
    """
    if g.directed:
        raise ParameterError("expected an undirected graph")
    seen = set()
    for u, v in g.edges:
        if u == v:
            raise ParameterError("self-loop at %d; need a simple graph" % u)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParameterError("parallel edge {%d, %d}; need a simple graph" % key)
        seen.add(key)


def graph(n, edges, directed=False, vweights=None, eweights=None) -> Graph:
    return Graph(
        n,
        directed,
        tuple((int(u), int(v)) for u, v in edges),
        None if vweights is None else tuple(int(w) for w in vweights),
        None if eweights is None else tuple(int(w) for w in eweights),
    )
