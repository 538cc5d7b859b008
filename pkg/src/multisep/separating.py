"""Minimal separating families and lopsided universal sets.

A (t, k)-minimal separating family over [n] assigns each point one of t
buckets or a reject value.  For every size-t set C and every disjoint set D
with at most k - t points, some member maps C one-to-one onto the buckets
while rejecting all of D.

Construction is staged: an injectivity-preserving compression of the domain,
a perfect hash into the t buckets, and per-bucket one-versus-many separators
chosen through a rectangle hitting set so that a working combination always
survives.  ``explain_separation`` replays those stages for a concrete (C, D)
and returns the member each stage picked, which is how callers extract
witnesses without search.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb

import numpy as np

from .budget import charge, resolve_budget
from .errors import BudgetExceeded, ParameterError
from .families import (
    FunctionFamily,
    build_one_vs_many_separator,
    build_perfect_hash,
    build_perfect_hash_small_range,
    build_rectangle_hitting_set,
)

_BUILD_CAP = 2_000_000


@dataclass(frozen=True, eq=False)
class MinimalSeparatingFamily:
    n: int
    t: int
    k: int
    family: FunctionFamily  # range t+1; value t means reject
    stages: dict

    def __len__(self):
        return len(self.family)

    @property
    def tables(self):
        return self.family.tables


def compositions_upto(parts: int, total: int):
    """All tuples of ``parts`` nonnegative ints summing to at most ``total``,
    lexicographically."""
    if parts == 0:
        yield ()
        return
    for head in range(total + 1):
        for rest in compositions_upto(parts - 1, total - head):
            yield (head,) + rest


def _bucket_tables(buckets, dom, comp, point):
    rows = np.empty((len(comp), dom), dtype=np.int64)
    for i, ki in enumerate(comp):
        if ki == 0:
            rows[i] = 0
        else:
            rows[i] = buckets[min(ki, dom)].tables[point[i]]
    return rows


def build_minimal_separating(n: int, t: int, k: int) -> MinimalSeparatingFamily:
    if n < 1:
        raise ParameterError("empty universe")
    if t < 1 or t > min(n, k):
        raise ParameterError("need 1 <= t <= min(n, k), got t=%d n=%d k=%d" % (t, n, k))

    # domain compression: skip it entirely when [n] already fits
    if n <= k * k:
        dom, h0 = n, None
    else:
        dom, h0 = k * k, build_perfect_hash(n, k)

    h1 = build_perfect_hash_small_range(dom, t)
    comps = tuple(compositions_upto(t, k - t))

    buckets = {}
    for comp in comps:
        for ki in comp:
            if ki >= 1:
                kc = min(ki, dom)
                if kc not in buckets:
                    buckets[kc] = build_one_vs_many_separator(dom, kc)

    hitting = {}
    comp_meta = []
    per_h1 = 0
    for comp in comps:
        sides = tuple(
            len(buckets[min(ki, dom)]) if ki >= 1 else 1 for ki in comp
        )
        if sides not in hitting:
            hitting[sides] = build_rectangle_hitting_set(sides, Fraction(1, 2))
        jcount = 1
        for ki in comp:
            jcount *= max(4 * ki, 1)
        comp_meta.append((comp, sides, jcount))
        per_h1 += len(hitting[sides].points) * jcount
    est = len(h1) * per_h1 * (len(h0) if h0 is not None else 1)
    charge(est, _BUILD_CAP, "separating family build")

    idx = np.arange(dom)
    g_tables = []
    for f1 in h1.tables:
        f1a = np.asarray(f1, dtype=np.int64)
        for comp, sides, _ in comp_meta:
            for point in hitting[sides].points:
                rows = _bucket_tables(buckets, dom, comp, point)
                vals = rows[f1a, idx]  # value of the chosen per-bucket map at x
                jranges = [range(max(4 * ki, 1)) for ki in comp]
                for jt in product(*jranges):
                    jv = np.asarray(jt, dtype=np.int64)
                    g = np.where(vals == jv[f1a], f1a, t)
                    g_tables.append(g)

    gs = np.stack(g_tables) if g_tables else np.empty((0, dom), dtype=np.int64)
    if h0 is None:
        members = gs[:, :n]
    else:
        parts = [gs[:, np.asarray(f0, dtype=np.int64)] for f0 in h0.tables]
        members = np.concatenate(parts, axis=0)
    members = np.unique(members, axis=0)

    tables = tuple(tuple(int(v) for v in row) for row in members)
    fam = FunctionFamily(n, t + 1, tables, kind="staged")
    stages = {
        "dom": dom,
        "h0": h0,
        "h1": h1,
        "buckets": buckets,
        "hitting": hitting,
        "compositions": comps,
        "index": {tab: i for i, tab in enumerate(tables)},
    }
    return MinimalSeparatingFamily(n, t, k, fam, stages)


def _is_bucket_bijection(table, C, t):
    return {table[c] for c in C} == set(range(t))


def find_separating_violation(msf: MinimalSeparatingFamily, budget=None):
    """First (C, D) pair no member separates; C lex, then D by size then lex."""
    budget = resolve_budget(budget)
    n, t, k = msf.n, msf.t, msf.k
    d_cases = sum(comb(n - t, d) for d in range(k - t + 1))
    charge(comb(n, t) * d_cases * max(len(msf), 1), budget, "separating verification")

    arr = np.asarray(msf.tables, dtype=np.int64).reshape(len(msf.tables), n)
    for C in combinations(range(n), t):
        cols = arr[:, C]
        bij = (np.sort(cols, axis=1) == np.arange(t)).all(axis=1)
        sub = arr[bij]
        rest = [x for x in range(n) if x not in C]
        for d in range(k - t + 1):
            for D in combinations(rest, d):
                if sub.shape[0] == 0:
                    return (C, D)
                if d == 0:
                    break
                if not (sub[:, D] == t).all(axis=1).any():
                    return (C, D)
    return None


def verify_minimal_separating(msf: MinimalSeparatingFamily, budget=None) -> bool:
    return find_separating_violation(msf, budget) is None


def explain_separation(msf: MinimalSeparatingFamily, C, D) -> dict:
    """Replay the staged construction on a concrete pair.

    Returns the per-stage choices and the separating member's index.  Raises
    if the inputs break the preconditions; an internal failure to find a
    member would mean the construction itself is broken.
    """
    n, t, k = msf.n, msf.t, msf.k
    C = tuple(sorted(C))
    D = tuple(sorted(D))
    if len(C) != t or len(set(C)) != t:
        raise ParameterError("C must have exactly %d distinct points" % t)
    if len(D) > k - t:
        raise ParameterError("D may have at most %d points" % (k - t))
    if set(C) & set(D):
        raise ParameterError("C and D must be disjoint")
    if any(x < 0 or x >= n for x in C + D):
        raise ParameterError("points must lie in [0, %d)" % n)

    st = msf.stages
    dom, h0, h1 = st["dom"], st["h0"], st["h1"]
    all_pts = C + D
    if h0 is None:
        f0 = tuple(range(n))
    else:
        f0 = next(
            tab for tab in h0.tables
            if len({tab[x] for x in all_pts}) == len(all_pts)
        )
    ci = [f0[c] for c in C]
    di = [f0[d] for d in D]

    f1 = next(tab for tab in h1.tables if len({tab[x] for x in ci}) == t)
    rep = {f1[x]: x for x in ci}  # bucket -> compressed C point
    comp = tuple(sum(1 for x in di if f1[x] == i) for i in range(t))
    groups = [[x for x in di if f1[x] == i] for i in range(t)]

    buckets, hitting = st["buckets"], st["hitting"]
    sides = tuple(len(buckets[min(ki, dom)]) if ki >= 1 else 1 for ki in comp)
    hs = hitting[sides]

    def separates(i, pi):
        if comp[i] == 0:
            return True
        tab = buckets[min(comp[i], dom)].tables[pi]
        return all(tab[rep[i]] != tab[x] for x in groups[i])

    point = next(
        pt for pt in hs.points if all(separates(i, pt[i]) for i in range(t))
    )
    jt = tuple(
        buckets[min(comp[i], dom)].tables[point[i]][rep[i]] if comp[i] >= 1 else 0
        for i in range(t)
    )

    rows = _bucket_tables(buckets, dom, comp, point)
    idx = np.arange(dom)
    f1a = np.asarray(f1, dtype=np.int64)
    vals = rows[f1a, idx]
    jv = np.asarray(jt, dtype=np.int64)
    g = np.where(vals == jv[f1a], f1a, t)
    table = tuple(int(g[f0[x]]) for x in range(n))

    member_index = st["index"][table]
    assert _is_bucket_bijection(table, C, t)
    assert all(table[d] == t for d in D)
    return {
        "f0": f0,
        "f1": f1,
        "composition": comp,
        "point": point,
        "bucket_values": jt,
        "member_index": member_index,
        "table": table,
    }


# ---------------------------------------------------------------------------
# lopsided universal sets

@dataclass(frozen=True, eq=False)
class UniversalSetFamily:
    n: int
    p: int
    q: int
    sets: tuple  # sorted element tuples, lexicographic, deduplicated
    base: MinimalSeparatingFamily

    def __len__(self):
        return len(self.sets)


def build_lopsided_universal(n: int, p: int, q: int) -> UniversalSetFamily:
    """Sets F over [n]: any p points can be covered while any other q points
    are avoided.  Derived from a separating family by keeping the
    non-rejected part of each member."""
    if p < 1 or q < 0:
        raise ParameterError("need p >= 1 and q >= 0")
    if p + q > n:
        raise ParameterError("need p + q <= n, got %d + %d > %d" % (p, q, n))
    msf = build_minimal_separating(n, p, p + q)
    seen = {}
    for i, tab in enumerate(msf.tables):
        fs = tuple(x for x in range(n) if tab[x] != p)
        if fs not in seen:
            seen[fs] = i
    sets = tuple(sorted(seen))
    return UniversalSetFamily(n, p, q, sets, msf)


def find_universal_violation(usf: UniversalSetFamily, budget=None):
    budget = resolve_budget(budget)
    n, p, q = usf.n, usf.p, usf.q
    charge(
        comb(n, p) * comb(n - p, q) * max(len(usf), 1),
        budget,
        "universal set verification",
    )
    for A in combinations(range(n), p):
        rest = [x for x in range(n) if x not in A]
        for B in combinations(rest, q):
            sa, sb = set(A), set(B)
            if not any(
                sa <= set(F) and not (sb & set(F)) for F in usf.sets
            ):
                return (A, B)
    return None


def verify_lopsided(usf: UniversalSetFamily, budget=None) -> bool:
    return find_universal_violation(usf, budget) is None


def choose_universal_set(usf: UniversalSetFamily, A, B):
    """Replay: a family set covering A and avoiding B, without search."""
    A = tuple(sorted(A))
    B = tuple(sorted(B))
    if len(A) != usf.p or len(B) != usf.q:
        raise ParameterError("need |A| = %d and |B| = %d" % (usf.p, usf.q))
    info = explain_separation(usf.base, A, B)
    tab = info["table"]
    F = tuple(x for x in range(usf.n) if tab[x] != usf.p)
    assert set(A) <= set(F) and not (set(B) & set(F))
    return F
