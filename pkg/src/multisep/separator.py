"""Separators for bounded multisets.

A separator for caps (r, k) is a list of count vectors F in {0..r}^n such
that whenever two multisets A, B fit together exactly (componentwise sum is
capped by r and has total size k), some F lies above A and below the
componentwise complement of B.  Solvers only ever keep family members
dominated by some F, so the separator's job is to protect at least one
optimal completion partner for every future query.

Three providers:

- the staged route (r >= 2): each member of a minimal separating family is
  combined with every bucket-value vector w in {0..r}^t;
- the indicator route (r = 1): unions of lopsided universal set families,
  one slice per way of splitting k between covered and avoided points;
- the cube (every vector), exact but exponential, useful when (r+1)^n is
  small enough that enumeration beats the structured build.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .budget import charge, resolve_budget
from .errors import ParameterError
from .multiset import MultisetVector
from .separating import (
    build_lopsided_universal,
    build_minimal_separating,
    choose_universal_set,
    explain_separation,
)

CUBE_CAP = 20_000
_STAGED_ROW_CAP = 2_000_000


@dataclass(eq=False)
class MultisetSeparator:
    n: int
    r: int
    k: int
    counts: np.ndarray  # (S, n) uint8, deduplicated, lexicographic
    pre_dedup_count: int
    kind: str
    t: int | None = None
    base: object = None
    _index: dict | None = None

    def __len__(self):
        return self.counts.shape[0]

    def vector(self, i: int) -> MultisetVector:
        return MultisetVector(tuple(int(v) for v in self.counts[i]), self.r)

    def as_tuples(self):
        return [tuple(int(v) for v in row) for row in self.counts]

    def index_of(self, row) -> int:
        if self._index is None:
            self._index = {
                tuple(int(v) for v in r): i for i, r in enumerate(self.counts)
            }
        return self._index[tuple(int(v) for v in row)]


def _dedup_rows(rows: np.ndarray) -> np.ndarray:
    if rows.size == 0:
        return rows.reshape(0, rows.shape[1] if rows.ndim == 2 else 0)
    return np.unique(rows, axis=0)


def build_multiset_separator(n: int, r: int, k: int) -> MultisetSeparator:
    if n < 1 or k < 1:
        raise ParameterError("need n >= 1 and k >= 1")
    if r < 1:
        raise ParameterError("cap r must be at least 1")
    if r > k:
        raise ParameterError(
            "cap r=%d above k=%d adds nothing; clamp r to k first" % (r, k)
        )

    if r == 1:
        slices = {}
        blocks = [np.zeros((1, n), dtype=np.uint8)]
        pre = 1
        for p in range(1, k + 1):
            q = k - p
            if p + q > n:
                continue
            usf = build_lopsided_universal(n, p, q)
            slices[p] = usf
            block = np.zeros((len(usf), n), dtype=np.uint8)
            for i, F in enumerate(usf.sets):
                block[i, list(F)] = 1
            blocks.append(block)
            pre += len(usf)
        counts = _dedup_rows(np.concatenate(blocks, axis=0))
        return MultisetSeparator(n, 1, k, counts, pre, "indicator", None, slices)

    t = (2 * k) // r
    npad = max(n, t)
    msf = build_minimal_separating(npad, t, k)
    charge(len(msf) * (r + 1) ** t, _STAGED_ROW_CAP, "staged separator rows")
    w_all = np.array(list(product(range(r + 1), repeat=t)), dtype=np.int64)
    # column t holds the fill value for rejected points
    w_ext = np.concatenate(
        [w_all, np.full((w_all.shape[0], 1), r // 2, dtype=np.int64)], axis=1
    )
    h_arr = np.asarray(msf.tables, dtype=np.int64)
    parts = [w_ext[:, h] for h in h_arr]
    rows = np.concatenate(parts, axis=0)
    pre = rows.shape[0]
    assert pre == len(msf) * (r + 1) ** t
    counts = _dedup_rows(rows[:, :n].astype(np.uint8))
    return MultisetSeparator(n, r, k, counts, pre, "staged", t, msf)


def build_cube_separator(n: int, r: int, k: int) -> MultisetSeparator:
    """Every vector of {0..r}^n.  Trivially a separator: the exact sum A+B
    itself is always a member dominating A and complementing B."""
    if n < 1 or k < 1 or r < 1:
        raise ParameterError("need n, r, k >= 1")
    total = (r + 1) ** n
    charge(total, CUBE_CAP, "cube separator")
    rows = np.array(list(product(range(r + 1), repeat=n)), dtype=np.uint8)
    return MultisetSeparator(n, r, k, rows, total, "cube")


def _as_counts(x, n, r):
    if isinstance(x, MultisetVector):
        if x.n != n or x.cap_r != r:
            raise ParameterError("vector shape (%d, r=%d) does not match separator" % (x.n, x.cap_r))
        return np.asarray(x.counts, dtype=np.int64)
    arr = np.asarray(x, dtype=np.int64)
    if arr.shape != (n,):
        raise ParameterError("expected a length-%d count vector" % n)
    return arr


def find_separator_violation(sep: MultisetSeparator, budget=None):
    """First compatible pair (A, B) with no member between A and r - B."""
    budget = resolve_budget(budget)
    n, r, k = sep.n, sep.r, sep.k
    pairs = (r + 1) ** (2 * n)
    charge(pairs * max(len(sep), 1), budget, "separator verification")
    V = sep.counts.astype(np.int64)
    for A in product(range(r + 1), repeat=n):
        a = np.asarray(A, dtype=np.int64)
        above = (V >= a).all(axis=1)
        VA = V[above]
        for B in product(range(r + 1), repeat=n):
            b = np.asarray(B, dtype=np.int64)
            s = a + b
            if (s > r).any() or s.sum() != k:
                continue
            if VA.shape[0] == 0 or not (VA <= r - b).all(axis=1).any():
                return (A, B)
    return None


def verify_multiset_separator(sep: MultisetSeparator, budget=None) -> bool:
    return find_separator_violation(sep, budget) is None


def choose_separator_witness(sep: MultisetSeparator, A, B) -> dict:
    """Replay a member F with A <= F <= r - B for a compatible pair.

    No search over the family: the staged construction is replayed stage by
    stage, so this doubles as an executable soundness argument.
    """
    n, r, k = sep.n, sep.r, sep.k
    a = _as_counts(A, n, r)
    b = _as_counts(B, n, r)
    s = a + b
    if (s > r).any() or s.sum() != k:
        raise ParameterError("pair is not compatible for caps (r=%d, k=%d)" % (r, k))

    if sep.kind == "cube":
        F = s.copy()
        return {"row": tuple(int(v) for v in F), "index": sep.index_of(F)}

    if sep.kind == "indicator":
        p = int(a.sum())
        if p == 0:
            F = np.zeros(n, dtype=np.int64)
            return {"slice": 0, "row": tuple(int(v) for v in F), "index": sep.index_of(F)}
        usf = sep.base[p]
        supp_a = [i for i in range(n) if a[i] > 0]
        supp_b = [i for i in range(n) if b[i] > 0]
        Fset = choose_universal_set(usf, supp_a, supp_b)
        F = np.zeros(n, dtype=np.int64)
        F[list(Fset)] = 1
        return {"slice": p, "set": Fset, "row": tuple(int(v) for v in F), "index": sep.index_of(F)}

    t, msf = sep.t, sep.base
    npad = msf.n
    ap = np.zeros(npad, dtype=np.int64)
    bp = np.zeros(npad, dtype=np.int64)
    ap[:n] = a
    bp[:n] = b
    support = [i for i in range(npad) if ap[i] + bp[i] > 0]
    heavy = [i for i in support if 2 * ap[i] > r or 2 * bp[i] > r]
    assert len(heavy) <= t, "more than t heavy coordinates is impossible"
    C = list(heavy)
    for i in support:
        if len(C) >= t:
            break
        if i not in heavy:
            C.append(i)
    for i in range(npad):
        if len(C) >= t:
            break
        if i not in support:
            C.append(i)
    C = sorted(C)
    D = sorted(set(support) - set(C))

    info = explain_separation(msf, C, D)
    h = info["table"]
    w = [0] * t
    for c in C:
        w[h[c]] = int(ap[c])
    F_full = np.array(
        [w[h[i]] if h[i] < t else r // 2 for i in range(npad)], dtype=np.int64
    )
    F = F_full[:n]
    assert (a <= F).all() and (F <= r - b).all()
    return {
        "C": tuple(C),
        "D": tuple(D),
        "bucket_values": tuple(w),
        "separation": info,
        "row": tuple(int(v) for v in F),
        "index": sep.index_of(F),
    }
