"""Exact solvers built on representative families.

Each solver runs a layered dynamic program whose state families are trimmed
against a multiset separator after every extension, keeping family sizes
bounded by k times the separator size while preserving some minimum-weight
completion of every partial solution.  Witnesses come from provenance links
recorded alongside each surviving member, never from a second search.

- walks visiting no vertex more than r times (vertex weights native, arc
  weights via the midpoint-subdivision reduction);
- packings of p equal-size sets with element multiplicity capped at r
  (set weights via the private-element reduction);
- detection of a degree-k monomial with per-variable degree at most r in a
  subtraction-free circuit, minimum weight under optional variable weights.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .circuits import Circuit
from .errors import ParameterError
from .graphs import Graph, graph
from .multiset import WeightedUniverse
from .repsets import (
    family_bullet,
    family_bullet_element,
    make_family,
    representative_separator,
    trim,
)


@dataclass
class RSimplePathResult:
    found: bool
    weight: int | None
    witness: tuple | None
    stats: dict = field(default_factory=dict)


@dataclass
class PackingResult:
    found: bool
    weight: int | None
    witness: tuple | None
    stats: dict = field(default_factory=dict)


@dataclass
class MonomialResult:
    found: bool
    weight: int | None
    witness: tuple | None
    stats: dict = field(default_factory=dict)


def _base_stats(sep):
    return {
        "separator_kind": sep.kind,
        "separator_size": len(sep),
        "backend": kernels.backend_name(),
        "max_family": 0,
        "layer_sizes": [],
    }


# ---------------------------------------------------------------------------
# walks with bounded vertex multiplicity

def _in_arcs(g: Graph):
    adj = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        adj[v].append((u, e))
        if not g.directed and u != v:
            adj[u].append((v, e))
    for lst in adj:
        lst.sort()
    return adj


def _shortest_kwalk(g: Graph, k: int):
    """Plain layered DP; correct whenever the multiplicity cap cannot bind."""
    big = None
    dist = [g.vertex_weight(v) for v in range(g.n)]
    parent = []
    inn = _in_arcs(g)
    for _ in range(k - 1):
        nd = [big] * g.n
        back = [None] * g.n
        for v in range(g.n):
            for u, _e in inn[v]:
                if dist[u] is None:
                    continue
                cand = dist[u] + g.vertex_weight(v)
                if nd[v] is None or cand < nd[v]:
                    nd[v], back[v] = cand, u
        dist = nd
        parent.append(back)
    best_v, best_w = None, None
    for v in range(g.n):
        if dist[v] is not None and (best_w is None or dist[v] < best_w):
            best_v, best_w = v, dist[v]
    if best_v is None:
        return RSimplePathResult(False, None, None, {"mode": "plain-walk"})
    walk = [best_v]
    for back in reversed(parent):
        walk.append(back[walk[-1]])
    walk.reverse()
    return RSimplePathResult(True, best_w, tuple(walk), {"mode": "plain-walk"})


def solve_r_simple_k_path(g: Graph, r: int, k: int, provider: str = "auto",
                          keep_families: bool = False) -> RSimplePathResult:
    """Minimum vertex-weight walk on exactly k vertices, each vertex used at
    most r times.

    r >= k degenerates to an ordinary shortest-k-walk DP (the cap cannot
    bind there).
    """
    if k < 1:
        raise ParameterError("need k >= 1")
    if r < 1:
        raise ParameterError("need r >= 1")
    r_eff = min(r, k)
    if r_eff >= k:
        return _shortest_kwalk(g, k)

    universe = WeightedUniverse(
        tuple(g.vertex_weight(v) for v in range(g.n))
    )
    sep = representative_separator(g.n, r_eff, k, provider)
    stats = _base_stats(sep)
    inn = _in_arcs(g)

    unit = np.zeros((1, g.n), dtype=np.uint8)
    fams = {}
    parents = {}
    for v in range(g.n):
        unit[0, :] = 0
        unit[0, v] = 1
        fams[(1, v)] = make_family(universe, r_eff, k, unit.copy())
        parents[(1, v)] = None
    empty = make_family(universe, r_eff, k, [])
    stats["layer_sizes"].append(g.n)

    for depth in range(2, k + 1):
        layer = 0
        for v in range(g.n):
            rows, wts, orig = [], [], []
            for u, _e in inn[v]:
                fam_u = fams[(depth - 1, u)]
                if len(fam_u) == 0:
                    continue
                bul, ia = family_bullet_element(fam_u, v, return_origin=True)
                if len(bul) == 0:
                    continue
                rows.append(bul.counts)
                wts.append(bul.weights)
                orig.extend((u, int(i)) for i in ia)
            if not rows:
                fams[(depth, v)] = empty
                parents[(depth, v)] = []
                continue
            combined = make_family(
                universe, r_eff, k,
                np.concatenate(rows, axis=0),
                member_weights=np.concatenate(wts),
            )
            trimmed, idx = trim(combined, sep, return_indices=True)
            fams[(depth, v)] = trimmed
            parents[(depth, v)] = [orig[int(j)] for j in idx]
            layer += len(trimmed)
            stats["max_family"] = max(stats["max_family"], len(trimmed))
        stats["layer_sizes"].append(layer)

    if keep_families:
        stats["families"] = fams

    best = None  # (weight, v, member index)
    for v in range(g.n):
        fam = fams[(k, v)]
        if len(fam) == 0:
            continue
        j = int(np.argmin(fam.weights))
        w = int(fam.weights[j])
        if best is None or w < best[0]:
            best = (w, v, j)
    if best is None:
        return RSimplePathResult(False, None, None, stats)

    w, v, j = best
    walk = [v]
    for depth in range(k, 1, -1):
        v, j = parents[(depth, v)][j]
        walk.append(v)
    walk.reverse()
    return RSimplePathResult(True, w, tuple(walk), stats)


def reduce_edge_weighted_path(g: Graph, k: int):
    """Arc-weight to vertex-weight reduction by midpoint subdivision.

    Every arc (u, v) becomes a fresh vertex carrying the arc's weight, with
    arcs u -> mid -> v; original vertices get weight 0.  Walks of k arcs in
    g correspond weight-preservingly to walks on 2k+1 vertices of the result
    that start and end on original vertices.  Returns (reduced graph, 2k+1).
    """
    if k < 1:
        raise ParameterError("need k >= 1")
    if g.eweights is None:
        raise ParameterError("arc weights required for the reduction")
    arcs = []
    for e, (u, v) in enumerate(g.edges):
        w = g.edge_weight(e)
        arcs.append((u, v, w))
        if not g.directed and u != v:
            arcs.append((v, u, w))
    n2 = g.n + len(arcs)
    vw = [0] * g.n + [w for _, _, w in arcs]
    edges = []
    for i, (u, v, _w) in enumerate(arcs):
        mid = g.n + i
        edges.append((u, mid))
        edges.append((mid, v))
    return graph(n2, edges, directed=True, vweights=vw), 2 * k + 1


def _penalize_originals(g2: Graph, n_orig: int, m_big: int) -> Graph:
    vw = list(g2.vweights)
    for v in range(n_orig):
        vw[v] = -m_big
    return Graph(g2.n, g2.directed, g2.edges, tuple(vw), g2.eweights)


def solve_r_simple_k_path_edge_weighted(g: Graph, r: int, k: int,
                                        provider: str = "auto") -> RSimplePathResult:
    """Minimum arc-weight walk on exactly k original vertices (k-1 arcs),
    each vertex used at most r times, via the subdivision reduction.

    A (2k-1)-vertex walk in the reduced graph alternates original and
    midpoint vertices; a uniform penalty on originals makes any walk
    containing k of them cheaper than every walk containing only k-1, so a
    midpoint-endpoint optimum certifies that no proper walk exists.
    """
    if k < 1 or r < 1:
        raise ParameterError("need k >= 1 and r >= 1")
    if k == 1:
        return RSimplePathResult(True, 0, (0,), {"mode": "trivial"})
    g2, _k2 = reduce_edge_weighted_path(g, k - 1)
    span = max((abs(w) for w in g2.vweights[g.n:]), default=0)
    m_big = 1 + 2 * k * (1 + span)
    res = solve_r_simple_k_path(_penalize_originals(g2, g.n, m_big),
                                r, 2 * k - 1, provider)
    stats = dict(res.stats)
    stats["reduction"] = "arc-subdivision"
    stats["penalty"] = m_big
    if not res.found:
        return RSimplePathResult(False, None, None, stats)
    originals = tuple(x for x in res.witness if x < g.n)
    if len(originals) < k:
        return RSimplePathResult(False, None, None, stats)
    return RSimplePathResult(True, res.weight + k * m_big, originals, stats)


# ---------------------------------------------------------------------------
# packings

@dataclass(frozen=True)
class SetFamilyInstance:
    """(r,p,q)-packing instance: pick p of the q-element sets so that no
    universe element is covered more than r times.

    The objective is the sum of covered element weights; set-level weights
    ride on zero-weighted universes and move onto private elements via
    reduce_set_weighted_packing.
    """

    universe: WeightedUniverse
    sets: tuple
    r: int
    p: int
    q: int
    set_weights: tuple | None = None

    def __post_init__(self):
        n = self.universe.n
        if n < 1 or self.p < 1 or self.r < 1 or self.q < 1:
            raise ParameterError("need n, p, q, r >= 1")
        if not self.sets:
            raise ParameterError("empty set list")
        for s in self.sets:
            if len(s) != self.q:
                raise ParameterError("every set must have exactly q=%d elements" % self.q)
            if len(set(s)) != len(s):
                raise ParameterError("sets cannot repeat an element")
            if any(x < 0 or x >= n for x in s):
                raise ParameterError("set element out of range")
        if self.set_weights is not None:
            if len(self.set_weights) != len(self.sets):
                raise ParameterError("one weight per set required")
            if any(w != 0 for w in self.universe.weights):
                raise ParameterError(
                    "set-weighted instances carry zero element weights; "
                    "the reduction moves set weights onto private elements"
                )

    @property
    def n(self) -> int:
        return self.universe.n

    @property
    def m(self) -> int:
        return len(self.sets)


def set_family_instance(n, sets, r, p, element_weights=None,
                        set_weights=None) -> SetFamilyInstance:
    sets = tuple(tuple(int(x) for x in s) for s in sets)
    if not sets:
        raise ParameterError("empty set list")
    ew = (0,) * n if element_weights is None else tuple(int(w) for w in element_weights)
    if len(ew) != n:
        raise ParameterError("element weight count != n")
    sw = None if set_weights is None else tuple(int(w) for w in set_weights)
    return SetFamilyInstance(WeightedUniverse(ew), sets, r, p, len(sets[0]), sw)


def reduce_set_weighted_packing(inst: SetFamilyInstance) -> SetFamilyInstance:
    """Give set j a fresh universe element carrying the set's weight.

    Packings correspond one-to-one (privates never collide) and set weights
    become plain element-weight sums; q grows by one.
    """
    if inst.set_weights is None:
        raise ParameterError("instance has no set weights to reduce")
    n = inst.n
    big_sets = tuple(tuple(s) + (n + j,) for j, s in enumerate(inst.sets))
    eweights = (0,) * n + tuple(inst.set_weights)
    return SetFamilyInstance(
        WeightedUniverse(eweights), big_sets, inst.r, inst.p, inst.q + 1
    )


def _packing_dp(inst: SetFamilyInstance, provider: str, keep_families: bool):
    n, m, p = inst.n, inst.m, inst.p
    k = inst.p * inst.q
    r_eff = min(inst.r, k)
    if p > m:
        return PackingResult(False, None, None, {"mode": "too-few-sets"})

    universe = inst.universe
    sep = representative_separator(n, r_eff, k, provider)
    stats = _base_stats(sep)

    set_rows = np.zeros((m, n), dtype=np.uint8)
    for j, s in enumerate(inst.sets):
        set_rows[j, list(s)] = 1
    singles = [
        make_family(universe, r_eff, k, set_rows[j : j + 1]) for j in range(m)
    ]
    empty = make_family(universe, r_eff, k, [])

    fams = {}     # ("P", i, j) and ("U", i, j) -> family
    origins = {}  # parallel provenance entries

    for i in range(1, p + 1):
        running = empty
        running_key = None
        for j in range(m):
            if i == 1:
                pfam = singles[j]
                porig = [("set", j, None)]
            else:
                prev = fams.get(("U", i - 1, j - 1), empty)
                bul = empty
                pr = None
                if len(prev):
                    bul, pr = family_bullet(prev, singles[j], return_origin=True)
                if len(bul):
                    tr, idx = trim(bul, sep, return_indices=True)
                    pfam = tr
                    porig = [("set", j, int(pr[int(x), 0])) for x in idx]
                else:
                    pfam, porig = empty, []
            fams[("P", i, j)] = pfam
            origins[("P", i, j)] = porig

            rows = np.concatenate([running.counts, pfam.counts], axis=0)
            wts = np.concatenate([running.weights, pfam.weights])
            tags = [("U", i, running_key, t) for t in range(len(running))] + [
                ("Pf", i, j, t) for t in range(len(pfam))
            ]
            if rows.shape[0]:
                comb = make_family(universe, r_eff, k, rows, member_weights=wts)
                tru, idx = trim(comb, sep, return_indices=True)
                fams[("U", i, j)] = tru
                origins[("U", i, j)] = [tags[int(x)] for x in idx]
            else:
                fams[("U", i, j)] = empty
                origins[("U", i, j)] = []
            running = fams[("U", i, j)]
            running_key = j
            stats["max_family"] = max(stats["max_family"], len(running))
        stats["layer_sizes"].append(len(running))

    if keep_families:
        stats["families"] = fams

    final = fams.get(("U", p, m - 1), empty)
    if len(final) == 0:
        return PackingResult(False, None, None, stats)
    best = int(np.argmin(final.weights))

    def resolve(kind, i, j, t):
        if kind == "U":
            tag = origins[("U", i, j)][t]
            if tag[0] == "U":
                return resolve("U", tag[1], tag[2], tag[3])
            return resolve("P", tag[1], tag[2], tag[3])
        entry = origins[("P", i, j)][t]
        _lbl, set_j, back = entry
        if back is None:
            return [set_j]
        return resolve("U", i - 1, set_j - 1, back) + [set_j]

    chosen = tuple(resolve("U", p, m - 1, best))

    # the chosen sets must reproduce the winning member exactly
    check = np.zeros(n, dtype=np.int64)
    for j in chosen:
        check[list(inst.sets[j])] += 1
    assert (check == final.counts[best].astype(np.int64)).all()
    return PackingResult(True, int(final.weights[best]), chosen, stats)


def solve_rpq_packing(inst: SetFamilyInstance, provider: str = "auto",
                      keep_families: bool = False) -> PackingResult:
    """Minimum-weight choice of p distinct sets whose combined element
    multiplicities stay within r.

    The DP walks set indices in order; a state family at (i, j) holds
    multiset unions of i sets all of index at most j, so no set is ever
    reused.  Set-weighted instances run through the private-element
    reduction first; chosen indices carry over unchanged.
    """
    if inst.set_weights is not None:
        red = reduce_set_weighted_packing(inst)
        res = _packing_dp(red, provider, keep_families)
        res.stats["reduction"] = "private-elements"
        return res
    return _packing_dp(inst, provider, keep_families)


# ---------------------------------------------------------------------------
# monomial detection

def solve_monomial_detection(c: Circuit, r: int, k: int, variable_weights=None,
                             provider: str = "auto",
                             keep_families: bool = False) -> MonomialResult:
    """Does the circuit's polynomial contain a monomial of total degree
    exactly k with every variable degree at most r?

    Gate families track the supports of the truncated gate polynomials:
    addition is family union, multiplication is the bullet product, and a
    trim after every gate keeps sizes bounded.  Subtraction-free circuits
    cannot cancel a monomial, so support arithmetic is exact.  With variable
    weights the returned monomial has minimum weight (sum of degree times
    variable weight); the witness is its exponent vector, which the winning
    family member itself encodes, so no provenance chain is needed.
    """
    if r < 1 or k < 1:
        raise ParameterError("need r >= 1 and k >= 1")
    if variable_weights is None:
        variable_weights = (0,) * c.n
    variable_weights = tuple(int(w) for w in variable_weights)
    if len(variable_weights) != c.n:
        raise ParameterError("one weight per variable required")
    r_eff = min(r, k)
    universe = WeightedUniverse(variable_weights)
    sep = representative_separator(c.n, r_eff, k, provider)
    stats = _base_stats(sep)
    empty = make_family(universe, r_eff, k, [])

    polys = []
    unit = np.zeros((1, c.n), dtype=np.uint8)
    for gate in c.gates:
        if gate[0] == "var":
            unit[0, :] = 0
            unit[0, gate[1]] = 1
            fam = make_family(universe, r_eff, k, unit.copy())
        elif gate[0] == "add":
            a, b = polys[gate[1]], polys[gate[2]]
            if len(a) == 0:
                fam = b
            elif len(b) == 0:
                fam = a
            else:
                rows = np.concatenate([a.counts, b.counts], axis=0)
                wts = np.concatenate([a.weights, b.weights])
                fam = make_family(universe, r_eff, k, rows, member_weights=wts)
        else:
            a, b = polys[gate[1]], polys[gate[2]]
            fam = family_bullet(a, b) if len(a) and len(b) else empty
        if len(fam):
            fam = trim(fam, sep)
        polys.append(fam)
        stats["max_family"] = max(stats["max_family"], len(fam))
        stats["layer_sizes"].append(len(fam))

    if keep_families:
        stats["families"] = polys

    out = polys[c.output]
    hits = np.nonzero(out.sizes == k)[0]
    if len(hits) == 0:
        return MonomialResult(False, None, None, stats)
    best_w = int(out.weights[hits].min())
    ties = hits[out.weights[hits] == best_w]
    wit = min(tuple(int(v) for v in out.counts[i]) for i in ties)
    return MonomialResult(True, best_w, wit, stats)
