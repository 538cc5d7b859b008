"""Weighted multiset families and representative subfamilies.

A family holds multisets over a weighted universe, all under the same caps
(per-element cap r, total size cap k).  ``trim`` shrinks a family against a
separator while preserving the representation property: for every query
multiset Q, if some member completes Q exactly to size k within the caps,
then a minimum-weight such member survives.  The trimmed size is at most
k times the separator size, independent of the input family.

Families are immutable once built.  Members always have size between 1 and
k; the empty multiset is rejected at construction because trimming keeps one
member per (separator vector, size) slot for sizes 1..k only.
"""

from collections import Counter
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import kernels
from .budget import charge, resolve_budget
from .errors import DimensionMismatch, ParameterError
from .multiset import MultisetVector, WeightedUniverse
from .separator import (
    CUBE_CAP,
    MultisetSeparator,
    build_cube_separator,
    build_multiset_separator,
)

_CUBE_TRIM_WSPAN = 1 << 41
_CUBE_TRIM_MEMBERS = (1 << 21) - 1


@dataclass(eq=False)
class WeightedMultisetFamily:
    universe: WeightedUniverse
    r: int
    k: int
    counts: np.ndarray   # (M, n) uint8
    sizes: np.ndarray    # (M,) int64
    weights: np.ndarray  # (M,) int64; default derived from the universe

    def __len__(self):
        return self.counts.shape[0]

    @property
    def n(self):
        return len(self.universe.weights)

    def vector(self, i: int) -> MultisetVector:
        return MultisetVector(tuple(int(v) for v in self.counts[i]), self.r)

    def row(self, i: int):
        return tuple(int(v) for v in self.counts[i])

    def as_tuples(self):
        return [self.row(i) for i in range(len(self))]


def make_family(universe: WeightedUniverse, r: int, k: int, rows,
                member_weights=None) -> WeightedMultisetFamily:
    """member_weights overrides the universe-derived weights; trimming only
    needs weights to be fixed per member and additive under bullet, which
    callers with non-element weights (set-weighted packing) arrange
    themselves."""
    if r < 1 or k < 1:
        raise ParameterError("need caps r >= 1 and k >= 1")
    n = len(universe.weights)
    counts = np.asarray(rows, dtype=np.int64)
    if counts.size == 0:
        counts = counts.reshape(0, n)
    if counts.ndim != 2 or counts.shape[1] != n:
        raise DimensionMismatch("rows must be (M, %d)" % n)
    if counts.size and (counts.min() < 0 or counts.max() > r):
        raise ParameterError("member counts must lie in 0..%d" % r)
    sizes = counts.sum(axis=1)
    if counts.size and (sizes.min() < 1 or sizes.max() > k):
        raise ParameterError("member sizes must lie in 1..%d" % k)
    if member_weights is None:
        wts = np.asarray(universe.weights, dtype=np.int64)
        weights = counts @ wts
    else:
        weights = np.asarray(member_weights, dtype=np.int64).reshape(-1)
        if weights.shape[0] != counts.shape[0]:
            raise DimensionMismatch("one weight per member required")
    return WeightedMultisetFamily(
        universe, r, k, counts.astype(np.uint8), sizes.astype(np.int64), weights
    )


def family_from_vectors(universe, r, k, vectors) -> WeightedMultisetFamily:
    return make_family(universe, r, k, [v.counts for v in vectors])


def _check_caps(a: WeightedMultisetFamily, b) -> None:
    if isinstance(b, WeightedMultisetFamily):
        same = (
            a.universe.weights == b.universe.weights
            and a.r == b.r
            and a.k == b.k
        )
    else:  # separator
        same = a.n == b.n and a.r == b.r and a.k == b.k
    if not same:
        raise DimensionMismatch("family shapes do not agree")


def _subfamily(fam: WeightedMultisetFamily, idx: np.ndarray) -> WeightedMultisetFamily:
    return WeightedMultisetFamily(
        fam.universe, fam.r, fam.k,
        fam.counts[idx], fam.sizes[idx], fam.weights[idx],
    )


# ---------------------------------------------------------------------------
# trimming

def _cube_trim_indices(fam: WeightedMultisetFamily, r: int) -> np.ndarray:
    """Representative indices against the full cube without touching each
    (vector, member) pair: scatter members into the (r+1)^n grid, then a
    running minimum along every axis turns cell values into minima over all
    dominated members."""
    n, k = fam.n, fam.k
    wmin = int(fam.weights.min())
    span = int(fam.weights.max()) - wmin
    if span >= _CUBE_TRIM_WSPAN or len(fam) > _CUBE_TRIM_MEMBERS:
        raise ParameterError("cube trim shortcut out of range")
    comp = ((fam.weights.astype(np.int64) - wmin) << 21) | np.arange(len(fam))
    strides = (r + 1) ** np.arange(n)
    lin = fam.counts.astype(np.int64) @ strides
    full = np.iinfo(np.int64).max
    grid = np.full((k, (r + 1) ** n), full, dtype=np.int64)
    for s in range(1, k + 1):
        rows = np.nonzero(fam.sizes == s)[0]
        if len(rows):
            np.minimum.at(grid[s - 1], lin[rows], comp[rows])
    shaped = grid.reshape((k,) + (r + 1,) * n)
    for axis in range(1, n + 1):
        np.minimum.accumulate(shaped, axis=axis, out=shaped)
    vals = shaped.reshape(k, -1)
    picked = np.unique(vals[vals != full] & _CUBE_TRIM_MEMBERS)
    return picked.astype(np.int64)


def trim(fam: WeightedMultisetFamily, sep: MultisetSeparator, return_indices: bool = False):
    """Keep, for every separator vector F and size 1..k, the first
    minimum-weight member of that size dominated by F."""
    _check_caps(fam, sep)
    if len(fam) == 0:
        return (fam, np.empty(0, dtype=np.int64)) if return_indices else fam
    if sep.kind == "cube":
        try:
            idx = _cube_trim_indices(fam, sep.r)
        except ParameterError:
            idx = None
    else:
        idx = None
    if idx is None:
        sel = kernels.trim_select(
            fam.counts, fam.sizes, fam.weights, sep.counts, fam.k, fam.r
        )
        idx = np.unique(sel[sel >= 0])
    sub = _subfamily(fam, idx)
    assert len(sub) <= fam.k * len(sep)
    if return_indices:
        return sub, idx
    return sub


# Separators are pure functions of (n, r, k, provider); DP loops trim
# thousands of families against the same one, so build each shape once.
_SEPARATOR_CACHE: dict = {}


def representative_separator(n: int, r: int, k: int,
                             provider: str = "auto") -> MultisetSeparator:
    """Separator used by compute_representative, cached per (n, r, k).

    provider "auto" takes the cube while (r+1)^n stays small and the
    structured build otherwise; "cube" and "structured" force the choice.
    """
    if provider == "auto":
        use_cube = (r + 1) ** n <= CUBE_CAP
    elif provider == "cube":
        use_cube = True
    elif provider == "structured":
        use_cube = False
    else:
        raise ParameterError("unknown provider %r" % provider)
    key = (n, r, k, use_cube)
    sep = _SEPARATOR_CACHE.get(key)
    if sep is None:
        sep = (
            build_cube_separator(n, r, k)
            if use_cube
            else build_multiset_separator(n, min(r, k), k)
        )
        _SEPARATOR_CACHE[key] = sep
    return sep


def compute_representative(fam: WeightedMultisetFamily, sep: MultisetSeparator | None = None,
                           provider: str = "auto", return_indices: bool = False):
    """Trim against a separator, building (or reusing a cached) one if not
    supplied.  Returns the representative subfamily; with return_indices,
    also the positions kept from ``fam``."""
    if sep is None:
        sep = representative_separator(fam.n, fam.r, fam.k, provider)
    if return_indices:
        return trim(fam, sep, return_indices=True)
    return trim(fam, sep)


# ---------------------------------------------------------------------------
# verification

def find_representation_violation(orig: WeightedMultisetFamily,
                                  trimmed: WeightedMultisetFamily,
                                  budget=None):
    """First query Q (lexicographic) whose best completion in ``orig`` is
    missed or beaten in ``trimmed``; also rejects non-subfamilies."""
    budget = resolve_budget(budget)
    _check_caps(orig, trimmed)
    have = Counter(map(tuple, orig.counts.tolist()))
    want = Counter(map(tuple, trimmed.counts.tolist()))
    if want - have:
        raise ParameterError("trimmed family is not a subfamily")

    n, r, k = orig.n, orig.r, orig.k
    charge((r + 1) ** n * (len(orig) + len(trimmed) + 1), budget,
           "representation verification")
    oc = orig.counts.astype(np.int64)
    tc = trimmed.counts.astype(np.int64)
    for Q in product(range(r + 1), repeat=n):
        q = np.asarray(Q, dtype=np.int64)
        sq = int(q.sum())
        if sq > k:
            continue
        need = k - sq
        if need < 1:
            continue
        ok_o = (orig.sizes == need)
        if ok_o.any():
            ok_o &= ((oc + q) <= r).all(axis=1)
        if not ok_o.any():
            continue
        best = orig.weights[ok_o].min()
        ok_t = (trimmed.sizes == need)
        if ok_t.any():
            ok_t &= ((tc + q) <= r).all(axis=1)
        if not ok_t.any() or trimmed.weights[ok_t].min() > best:
            return Q
    return None


def verify_representative(orig, trimmed, budget=None) -> bool:
    return find_representation_violation(orig, trimmed, budget) is None


# ---------------------------------------------------------------------------
# family algebra

def family_union(a: WeightedMultisetFamily, b: WeightedMultisetFamily,
                 return_origin: bool = False):
    """Members of either family; a duplicated vector keeps its minimum-weight
    occurrence, earliest (a-side first) on ties.  Origin rows are
    (side, index) with side 0 for a."""
    _check_caps(a, b)
    rows = np.concatenate([a.counts, b.counts], axis=0).astype(np.int64)
    if rows.shape[0] == 0:
        fam = _subfamily(a, np.empty(0, dtype=np.int64))
        origin = np.empty((0, 2), dtype=np.int64)
        return (fam, origin) if return_origin else fam
    wts = np.concatenate([a.weights, b.weights])
    keep = _dedup_min_weight(rows, wts, np.arange(rows.shape[0]))
    fam = make_family(a.universe, a.r, a.k, rows[keep], member_weights=wts[keep])
    if not return_origin:
        return fam
    na = len(a)
    origin = np.stack(
        [(keep >= na).astype(np.int64), np.where(keep >= na, keep - na, keep)],
        axis=1,
    )
    return fam, origin


def _dedup_min_weight(rows, weights, pos):
    """Indices into ``rows`` keeping per-vector minimum weight, first wins."""
    order = np.lexsort((pos, weights) + tuple(rows.T[::-1]))
    sorted_rows = rows[order]
    new = np.empty(len(order), dtype=bool)
    new[0] = True
    new[1:] = (sorted_rows[1:] != sorted_rows[:-1]).any(axis=1)
    chosen = order[new]
    return np.sort(chosen)


def family_bullet(a: WeightedMultisetFamily, b: WeightedMultisetFamily,
                  return_origin: bool = False):
    """All pairwise sums that respect both caps.  Duplicate result vectors
    keep a minimum-weight pair (earliest pair on ties)."""
    _check_caps(a, b)
    if len(a) == 0 or len(b) == 0:
        fam = _subfamily(a, np.empty(0, dtype=np.int64))
        origin = np.empty((0, 2), dtype=np.int64)
        return (fam, origin) if return_origin else fam
    ia, ib, sums = kernels.bullet_pairs(
        a.counts, a.sizes, b.counts, b.sizes, a.k, a.r
    )
    if len(ia) == 0:
        fam = _subfamily(a, np.empty(0, dtype=np.int64))
        origin = np.empty((0, 2), dtype=np.int64)
        return (fam, origin) if return_origin else fam
    weights = a.weights[ia] + b.weights[ib]
    keep = _dedup_min_weight(sums.astype(np.int64), weights, np.arange(len(ia)))
    fam = make_family(a.universe, a.r, a.k, sums[keep], member_weights=weights[keep])
    if not return_origin:
        return fam
    origin = np.stack([ia[keep], ib[keep]], axis=1)
    return fam, origin


def family_bullet_element(a: WeightedMultisetFamily, x: int, return_origin: bool = False):
    """Append one copy of universe element x to every member that can take it."""
    if x < 0 or x >= a.n:
        raise ParameterError("element %d outside universe [0, %d)" % (x, a.n))
    unit = np.zeros((1, a.n), dtype=np.uint8)
    unit[0, x] = 1
    b = make_family(a.universe, a.r, a.k, unit)
    if return_origin:
        fam, origin = family_bullet(a, b, return_origin=True)
        return fam, origin[:, 0]
    return family_bullet(a, b)
