"""Brute-force reference implementations.

Everything here answers by exhaustive enumeration and never touches the
separator machinery or the solver DP code, so agreement between a solver and
its oracle is meaningful evidence.  Budgets are explicit; an oracle that
cannot afford its enumeration refuses loudly instead of guessing.
"""

from itertools import combinations
from math import comb

from .budget import charge, resolve_budget
from .circuits import symbolic_expand
from .errors import ParameterError
from .graphs import Graph


# ---------------------------------------------------------------------------
# walks with bounded vertex multiplicity

def _walk_budget(g: Graph, k: int, budget):
    deg = max((len(a) for a in g.out_arcs()), default=0)
    cases = g.n * max(1, deg) ** (k - 1)
    charge(min(cases, 1 << 62), resolve_budget(budget), "walk enumeration")


def oracle_r_simple_k_path(g: Graph, r: int, k: int,
                           weight_mode: str = "vertex", budget=None):
    """Optimal weight of a walk on k vertices visiting no vertex more than
    r times, by depth-first enumeration of all such walks; None if no such
    walk exists.

    weight_mode "vertex" sums vertex weights with multiplicity, "arc" sums
    arc weights along the walk.
    """
    if k < 1 or r < 1:
        raise ParameterError("need k >= 1 and r >= 1")
    if weight_mode not in ("vertex", "arc"):
        raise ParameterError("weight_mode must be 'vertex' or 'arc'")
    _walk_budget(g, k, budget)
    adj = g.out_arcs()
    counts = [0] * g.n
    best = [None]

    def step_weight(v, e):
        if weight_mode == "vertex":
            return g.vertex_weight(v)
        return g.edge_weight(e)

    def dfs(v, depth, w):
        if depth == k:
            if best[0] is None or w < best[0]:
                best[0] = w
            return
        for u, e in adj[v]:
            if counts[u] < r:
                counts[u] += 1
                dfs(u, depth + 1, w + step_weight(u, e))
                counts[u] -= 1

    for v in range(g.n):
        counts[v] = 1
        w0 = g.vertex_weight(v) if weight_mode == "vertex" else 0
        dfs(v, 1, w0)
        counts[v] = 0
    return best[0]


def oracle_r_simple_k_path_dp(g: Graph, r: int, k: int, budget=None):
    """Same optimum by a different route: layered state map keyed on
    (last vertex, full visit-count vector), vertex weights only."""
    if k < 1 or r < 1:
        raise ParameterError("need k >= 1 and r >= 1")
    charge((r + 1) ** g.n * g.n * k, resolve_budget(budget), "state-map DP")
    adj = g.out_arcs()
    level = {}
    for v in range(g.n):
        key = (v, tuple(1 if i == v else 0 for i in range(g.n)))
        w = g.vertex_weight(v)
        if key not in level or w < level[key]:
            level[key] = w
    for _ in range(k - 1):
        nxt = {}
        for (v, cnt), w in level.items():
            for u, _e in adj[v]:
                if cnt[u] < r:
                    c2 = list(cnt)
                    c2[u] += 1
                    key = (u, tuple(c2))
                    w2 = w + g.vertex_weight(u)
                    if key not in nxt or w2 < nxt[key]:
                        nxt[key] = w2
        level = nxt
    if not level:
        return None
    return min(level.values())


def oracle_simple_kpath_min(g: Graph, k: int, weight_mode: str = "arc"):
    """Minimum-weight simple path on exactly k vertices via subset DP."""
    if k < 1:
        raise ParameterError("need k >= 1")
    if g.n > 20:
        raise ParameterError("subset DP limited to 20 vertices")
    if k == 1:
        if weight_mode == "vertex":
            return (True, min(g.vertex_weight(v) for v in range(g.n)))
        return (True, 0)
    adj = g.out_arcs()
    dp = {}
    for v in range(g.n):
        w0 = g.vertex_weight(v) if weight_mode == "vertex" else 0
        dp[(1 << v, v)] = w0
    for _ in range(k - 1):
        nxt = {}
        for (mask, v), w in dp.items():
            for u, e in adj[v]:
                if mask & (1 << u):
                    continue
                step = g.vertex_weight(u) if weight_mode == "vertex" else g.edge_weight(e)
                key = (mask | (1 << u), u)
                w2 = w + step
                if key not in nxt or w2 < nxt[key]:
                    nxt[key] = w2
        dp = nxt
    if not dp:
        return (False, None)
    return (True, min(dp.values()))


# ---------------------------------------------------------------------------
# packings

def oracle_packing(inst, budget=None):
    """Optimal weight over all size-p subfamilies meeting the overlap cap,
    or None.  The weight of a subfamily is the sum of covered element
    weights (with multiplicity) plus any set weights."""
    sets, p, r, n = inst.sets, inst.p, inst.r, inst.n
    ew = inst.universe.weights
    sw = inst.set_weights
    charge(comb(len(sets), p) * p * inst.q if len(sets) >= p else 0,
           resolve_budget(budget), "packing enumeration")
    best = None
    for combo in combinations(range(len(sets)), p):
        counts = [0] * n
        ok = True
        for i in combo:
            for x in sets[i]:
                counts[x] += 1
                if counts[x] > r:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        w = sum(c * ew[i] for i, c in enumerate(counts) if c)
        if sw is not None:
            w += sum(sw[i] for i in combo)
        if best is None or w < best:
            best = w
    return best


def oracle_packing_subfamily(inst, budget=None):
    """Like oracle_packing but also returns the first optimal index combo."""
    sets, p, r, n = inst.sets, inst.p, inst.r, inst.n
    ew = inst.universe.weights
    sw = inst.set_weights
    charge(comb(len(sets), p) * p * inst.q if len(sets) >= p else 0,
           resolve_budget(budget), "packing enumeration")
    best, best_combo = None, None
    for combo in combinations(range(len(sets)), p):
        counts = [0] * n
        ok = True
        for i in combo:
            for x in sets[i]:
                counts[x] += 1
                if counts[x] > r:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        w = sum(c * ew[i] for i, c in enumerate(counts) if c)
        if sw is not None:
            w += sum(sw[i] for i in combo)
        if best is None or w < best:
            best, best_combo = w, combo
    return best, best_combo


# ---------------------------------------------------------------------------
# spanning trees

def _is_spanning_tree(g: Graph, combo) -> bool:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in combo:
        u, v = g.edges[e]
        if u == v:
            return False
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def oracle_spanning_trees(g: Graph, budget=None):
    """All spanning trees as (edge-index tuple, degree vector) pairs,
    lexicographically by edge tuple, via edge-subset filtering."""
    if g.directed:
        raise ParameterError("spanning trees need an undirected graph")
    if g.n == 1:
        return [((), (0,))]
    if g.m < g.n - 1:
        return []
    charge(comb(g.m, g.n - 1) * g.n, resolve_budget(budget), "tree enumeration")
    out = []
    for combo in combinations(range(g.m), g.n - 1):
        if _is_spanning_tree(g, combo):
            out.append((combo, tuple(g.undirected_degrees(combo))))
    return out


def oracle_tree_count(g: Graph, budget=None) -> int:
    return len(oracle_spanning_trees(g, budget))


def oracle_degree_bounded_tree(g: Graph, d: int, budget=None):
    """(found, first spanning tree with max degree <= d)."""
    if d < 1:
        raise ParameterError("degree bound must be positive")
    for combo, degs in oracle_spanning_trees(g, budget):
        if max(degs, default=0) <= d:
            return (True, combo)
    return (False, None)


def oracle_hamiltonian_path(g: Graph, budget=None) -> bool:
    """Does the graph have a path visiting every vertex exactly once?"""
    charge((1 << g.n) * g.n * g.n, resolve_budget(budget), "Hamiltonian path")
    if g.n == 1:
        return True
    adj = g.out_arcs()
    reach = [set() for _ in range(1 << g.n)]
    for v in range(g.n):
        reach[1 << v].add(v)
    full = (1 << g.n) - 1
    for mask in range(1, full + 1):
        for v in list(reach[mask]):
            for u, _e in adj[v]:
                if not (mask & (1 << u)):
                    reach[mask | (1 << u)].add(u)
    return bool(reach[full])


# ---------------------------------------------------------------------------
# circuit monomials

def oracle_monomial_witness(circuit, r: int, k: int):
    """Lexicographically first degree vector with every entry <= r and total
    exactly k present in the output polynomial, else None.

    Expansion caps each variable's degree at r; monomials past the cap can
    never shrink back, so the cap loses nothing relevant.
    """
    if r < 1 or k < 1:
        raise ParameterError("need r >= 1 and k >= 1")
    poly = symbolic_expand(circuit, r_cap=r)
    for key in sorted(poly.terms):
        if sum(key) == k:
            return key
    return None


def oracle_monomial_min_weight(circuit, r: int, k: int, weights):
    """(weight, degree vector) of the minimum-weight degree-k monomial with
    per-variable degree <= r, lexicographically first among ties; None if
    the polynomial has no such monomial."""
    if r < 1 or k < 1:
        raise ParameterError("need r >= 1 and k >= 1")
    poly = symbolic_expand(circuit, r_cap=r, k_cap=k)
    best = None
    for key in sorted(poly.terms):
        if sum(key) != k:
            continue
        w = sum(d * weights[i] for i, d in enumerate(key))
        if best is None or w < best[0]:
            best = (w, key)
    return best
