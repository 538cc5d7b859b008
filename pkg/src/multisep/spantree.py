"""Spanning trees through symbolic determinants.

The spanning-tree generating polynomial of a simple undirected graph is any
first cofactor of its symbolic Laplacian: one variable per edge, one
monomial per spanning tree.  Substituting x_u * x_v for the edge variable of
(u, v) turns each tree monomial into the vertex-degree vector of that tree,
and since all coefficients are positive nothing cancels.  A spanning tree
with maximum degree at most d therefore exists exactly when the substituted
cofactor, computed in the ring truncated at per-variable degree d, keeps a
term of total degree 2(n-1).
"""

from dataclasses import dataclass, field

from .circuits import TruncatedPolynomial
from .errors import ParameterError
from .graphs import Graph, check_simple_undirected, graph


def symbolic_determinant(mat):
    """Determinant of a square matrix of TruncatedPolynomial entries by
    memoized expansion over column subsets.

    The truncated ring has zero divisors, so elimination schemes that divide
    are out; cofactor expansion stays inside the ring.
    """
    n = len(mat)
    if n == 0:
        raise ParameterError("empty matrix has no ring to live in")
    proto = mat[0][0]
    one = TruncatedPolynomial.constant(
        proto.n, 1, proto.var_cap, proto.total_cap
    )
    memo = {0: one}

    def det(mask):
        if mask in memo:
            return memo[mask]
        cols = [c for c in range(n) if mask & (1 << c)]
        row = len(cols) - 1
        acc = None
        for pos, c in enumerate(cols):
            entry = mat[row][c]
            if not entry:
                continue
            sub = det(mask & ~(1 << c))
            term = entry * sub
            if (row + pos) % 2:
                term = -term
            acc = term if acc is None else acc + term
        if acc is None:
            acc = one * 0
        memo[mask] = acc
        return acc

    return det((1 << n) - 1)


@dataclass(frozen=True)
class SymbolicLaplacian:
    """n x n matrix over the edge variables y_e: degree sums on the
    diagonal, -y_e off it.  Symmetric with zero row and column sums."""

    n: int
    matrix: tuple  # tuple of tuples of TruncatedPolynomial


def build_laplacian(g: Graph) -> SymbolicLaplacian:
    nvars = max(g.m, 1)
    check_simple_undirected(g)
    zero = TruncatedPolynomial.zero(nvars)
    mat = [[zero for _ in range(g.n)] for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        ye = TruncatedPolynomial.variable(nvars, e)
        mat[u][v] = mat[u][v] - ye
        mat[v][u] = mat[v][u] - ye
        mat[u][u] = mat[u][u] + ye
        mat[v][v] = mat[v][v] + ye
    return SymbolicLaplacian(g.n, tuple(tuple(row) for row in mat))


def _laplacian_minor(g: Graph, root: int, entry):
    """(n-1)x(n-1) minor with the root row and column removed; ``entry(e)``
    supplies the ring element standing for edge e."""
    keep = [v for v in range(g.n) if v != root]
    pos = {v: i for i, v in enumerate(keep)}
    size = len(keep)
    proto = entry(0) if g.m else None
    if proto is None:
        raise ParameterError("graph with no edges has a zero minor; handle upstream")
    zero = proto * 0
    mat = [[zero for _ in range(size)] for _ in range(size)]
    for e, (u, v) in enumerate(g.edges):
        ye = entry(e)
        if u != root and v != root:
            mat[pos[u]][pos[v]] = mat[pos[u]][pos[v]] - ye
            mat[pos[v]][pos[u]] = mat[pos[v]][pos[u]] - ye
        if u != root:
            mat[pos[u]][pos[u]] = mat[pos[u]][pos[u]] + ye
        if v != root:
            mat[pos[v]][pos[v]] = mat[pos[v]][pos[v]] + ye
    return mat


def kirchhoff_polynomial(g: Graph, root: int = 0) -> TruncatedPolynomial:
    """First cofactor of the symbolic Laplacian (row and column ``root``
    deleted): one squarefree degree-(n-1) monomial per spanning tree.  The
    choice of deleted row/column does not matter, which is separately
    checkable by varying ``root``."""
    check_simple_undirected(g)
    if not (0 <= root < g.n):
        raise ParameterError("root out of range")
    if g.n == 1:
        return TruncatedPolynomial.constant(max(g.m, 1), 1)
    if g.m == 0:
        return TruncatedPolynomial.zero(1)

    def entry(e):
        return TruncatedPolynomial.variable(g.m, e)

    return symbolic_determinant(_laplacian_minor(g, root, entry))


def degree_cofactor(g: Graph, d: int) -> TruncatedPolynomial:
    """Cofactor with y_e replaced by x_u * x_v, truncated at per-vertex
    degree d and total degree 2(n-1): the surviving degree-2(n-1) terms are
    the degree vectors of the spanning trees with maximum degree <= d."""
    check_simple_undirected(g)
    if g.n == 1:
        return TruncatedPolynomial.constant(1, 1, d, 0)
    if g.m == 0:
        return TruncatedPolynomial.zero(g.n, d, 2 * (g.n - 1))
    caps = dict(var_cap=d, total_cap=2 * (g.n - 1))

    def entry(e):
        u, v = g.edges[e]
        return TruncatedPolynomial.variable(g.n, u, **caps) * \
            TruncatedPolynomial.variable(g.n, v, **caps)

    return symbolic_determinant(_laplacian_minor(g, 0, entry))


@dataclass
class DBSTResult:
    found: bool
    tree: tuple | None  # edge indices into the input graph
    stats: dict = field(default_factory=dict)


def _connected(g: Graph) -> bool:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = g.n
    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps == 1


# Full-cap cofactors keyed by (n, edges).  Truncating the uncapped cofactor
# to per-vertex degree d is the same quotient as computing at cap d, so one
# determinant serves every d for the graph.
_COFACTOR_CACHE: dict = {}
_COFACTOR_CACHE_MAX = 1 << 16


def _tree_degree_polynomial(g: Graph) -> TruncatedPolynomial:
    key = (g.n, g.edges)
    poly = _COFACTOR_CACHE.get(key)
    if poly is None:
        poly = degree_cofactor(g, g.n - 1)
        if len(_COFACTOR_CACHE) >= _COFACTOR_CACHE_MAX:
            _COFACTOR_CACHE.clear()
        _COFACTOR_CACHE[key] = poly
    return poly


def _has_bounded_tree(g: Graph, d: int) -> bool:
    if g.m < g.n - 1 or not _connected(g):
        return False
    poly = _tree_degree_polynomial(g).truncate(d, 2 * (g.n - 1))
    target = 2 * (g.n - 1)
    return any(sum(key) == target for key in poly.terms)


def solve_degree_bounded_spanning_tree(g: Graph, d: int,
                                       want_witness: bool = True) -> DBSTResult:
    """Spanning tree with maximum degree at most d, or a certified no.

    The witness comes by self-reduction: walk the edges in input order and
    delete any edge whose removal keeps the truncated cofactor alive.  When
    no edge is deletable, every remaining edge lies in every remaining
    bounded tree, so exactly n-1 edges are left and they are one.
    """
    check_simple_undirected(g)
    if d < 1:
        raise ParameterError("degree bound must be positive")
    if g.n == 1:
        return DBSTResult(True, (), {"terms": 1})
    if not _has_bounded_tree(g, d):
        return DBSTResult(False, None, {"terms": 0})
    stats = {"terms": len(_tree_degree_polynomial(g).truncate(d, 2 * (g.n - 1)).terms)}
    if not want_witness:
        return DBSTResult(True, None, stats)

    alive = list(range(g.m))
    for e in range(g.m):
        trial = [x for x in alive if x != e]
        sub = graph(
            g.n,
            [g.edges[x] for x in trial],
            directed=False,
        )
        if _has_bounded_tree(sub, d):
            alive = trial
    assert len(alive) == g.n - 1
    deg = g.undirected_degrees(alive)
    assert max(deg) <= d
    return DBSTResult(True, tuple(alive), stats)


def hardness_gadget(g: Graph, d: int) -> Graph:
    """Attach d-2 pendant leaves to every vertex, giving (d-1)*n vertices.

    The result has a spanning tree of maximum degree <= d exactly when the
    original graph has a Hamiltonian path: the forced leaf edges eat all but
    2 of each vertex's degree budget."""
    check_simple_undirected(g)
    if d < 2:
        raise ParameterError("degree bound below 2 leaves no room for a path")
    extra = d - 2
    edges = list(g.edges)
    nxt = g.n
    for v in range(g.n):
        for _ in range(extra):
            edges.append((v, nxt))
            nxt += 1
    return graph(nxt, edges, directed=False)
