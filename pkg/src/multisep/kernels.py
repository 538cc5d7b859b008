"""Kernel selection and packed-encoding helpers.

At import time the compiled extension is preferred; the numpy fallback is
used when it is missing or when MULTISEP_NO_EXT is set.  Universes too wide
for a 64-bit packed word take an unpacked numpy path.
"""

import os

import numpy as np

from .multiset import PACK_MAX_BITS, packed_width

if os.environ.get("MULTISEP_NO_EXT"):
    from . import _packedops_py as _impl
else:
    try:
        from . import _packedops_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _packedops_py as _impl

BACKEND = _impl.BACKEND

_I64MAX = np.iinfo(np.int64).max


def backend_name() -> str:
    return BACKEND


def fits_packed(n: int, r: int) -> bool:
    return n * packed_width(r) <= PACK_MAX_BITS


def guard_mask(n: int, r: int) -> int:
    w = packed_width(r)
    return sum(1 << (i * w + w - 1) for i in range(n))


def rcap_mask(n: int, r: int) -> int:
    w = packed_width(r)
    return sum(r << (i * w) for i in range(n))


def pack_rows(counts, r: int):
    """(M, n) count matrix -> (M,) uint64 packed words."""
    counts = np.asarray(counts, dtype=np.uint64)
    m, n = counts.shape
    w = packed_width(r)
    out = np.zeros(m, dtype=np.uint64)
    for i in range(n):
        out |= counts[:, i] << np.uint64(i * w)
    return out


def unpack_words(words, n: int, r: int):
    """(M,) packed words -> (M, n) uint8 count matrix."""
    words = np.asarray(words, dtype=np.uint64)
    w = packed_width(r)
    field = np.uint64((1 << w) - 1)
    out = np.empty((len(words), n), dtype=np.uint8)
    for i in range(n):
        out[:, i] = (words >> np.uint64(i * w)) & field
    return out


def trim_select(counts, sizes, weights, fam_counts, k: int, r: int):
    """Slot selection for trimming: counts (M, n), fam_counts (S, n).

    Returns (S, k) member indices, -1 for empty slots; within a slot the
    first member attaining the minimum weight wins.
    """
    counts = np.asarray(counts, dtype=np.uint8)
    fam_counts = np.asarray(fam_counts, dtype=np.uint8)
    n = counts.shape[1]
    if fits_packed(n, r):
        return _impl.trim_select(
            pack_rows(counts, r), sizes, weights,
            pack_rows(fam_counts, r), k, guard_mask(n, r),
        )
    return _trim_select_unpacked(counts, sizes, weights, fam_counts, k)


def _trim_select_unpacked(counts, sizes, weights, fam_counts, k):
    sizes = np.asarray(sizes, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.int64)
    out = np.full((len(fam_counts), k), -1, dtype=np.int64)
    by_size = []
    for i in range(1, k + 1):
        idx = np.nonzero(sizes == i)[0]
        by_size.append((idx, counts[idx], weights[idx]))
    for s in range(len(fam_counts)):
        f = fam_counts[s]
        for i in range(k):
            idx, cs, wt = by_size[i]
            if len(idx) == 0:
                continue
            ok = (cs <= f).all(axis=1)
            if not ok.any():
                continue
            j = int(np.argmin(np.where(ok, wt, _I64MAX)))
            out[s, i] = idx[j]
    return out


def bullet_pairs(counts_a, sizes_a, counts_b, sizes_b, k: int, r: int):
    """All cap- and size-respecting pairwise sums.

    Returns (ia, ib, sum_counts) with sum_counts an (L, n) uint8 matrix.
    """
    counts_a = np.asarray(counts_a, dtype=np.uint8)
    counts_b = np.asarray(counts_b, dtype=np.uint8)
    n = counts_a.shape[1]
    if fits_packed(n, r):
        ia, ib, ps = _impl.bullet_pairs(
            pack_rows(counts_a, r), sizes_a,
            pack_rows(counts_b, r), sizes_b,
            k, rcap_mask(n, r), guard_mask(n, r),
        )
        return ia, ib, unpack_words(ps, n, r)
    sums = counts_a[:, None, :].astype(np.int16) + counts_b[None, :, :]
    ok = (sums <= r).all(axis=2)
    ok &= (np.asarray(sizes_a, dtype=np.int64)[:, None]
           + np.asarray(sizes_b, dtype=np.int64)[None, :]) <= k
    ia, ib = np.nonzero(ok)
    return ia.astype(np.int64), ib.astype(np.int64), sums[ia, ib].astype(np.uint8)
