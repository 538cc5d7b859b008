"""Pure (numpy) implementations of the packed-vector hot loops.

Count vectors are packed little-endian into uint64 words, one field of
`width` bits per coordinate, values < 2^(width-1); the spare top bit of each
field is the guard bit that makes SWAR compare/add safe:

    member <= F   coordinate-wise   iff   ((F | G) - member) & G == G

where G masks the guard bit of every field.  Field sums in a bullet product
stay below 2^width, so packed addition never carries across fields.

The compiled module `_packedops_cy` exposes the same two entry points.
"""

import numpy as np

BACKEND = "python"

_I64MAX = np.iinfo(np.int64).max


def trim_select(packed, sizes, weights, fam, k, guard):
    """For each separator word fam[s] and size slot i in 1..k, the index of
    the first minimum-weight member with sizes == i dominated by fam[s].

    Returns an (S, k) int64 array of member indices, -1 for empty slots.
    """
    packed = np.ascontiguousarray(packed, dtype=np.uint64)
    fam = np.ascontiguousarray(fam, dtype=np.uint64)
    sizes = np.asarray(sizes, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.int64)
    guard = np.uint64(guard)
    out = np.full((len(fam), k), -1, dtype=np.int64)

    by_size = []
    for i in range(1, k + 1):
        idx = np.nonzero(sizes == i)[0]
        by_size.append((idx, packed[idx], weights[idx]))

    for s in range(len(fam)):
        word = fam[s] | guard
        for i in range(k):
            idx, pk, wt = by_size[i]
            if len(idx) == 0:
                continue
            ok = ((word - pk) & guard) == guard
            if not ok.any():
                continue
            masked = np.where(ok, wt, _I64MAX)
            j = int(np.argmin(masked))
            out[s, i] = idx[j]
    return out


def bullet_pairs(packed_a, sizes_a, packed_b, sizes_b, k, rmask, guard):
    """All pairs (i, j) whose packed sum respects the per-field cap and has
    total size <= k.  Returns (ia, ib, packed_sum) arrays."""
    packed_a = np.ascontiguousarray(packed_a, dtype=np.uint64)
    packed_b = np.ascontiguousarray(packed_b, dtype=np.uint64)
    sizes_a = np.asarray(sizes_a, dtype=np.int64)
    sizes_b = np.asarray(sizes_b, dtype=np.int64)
    rmask_g = np.uint64(rmask) | np.uint64(guard)
    guard = np.uint64(guard)

    sums = packed_a[:, None] + packed_b[None, :]
    ok = ((rmask_g - sums) & guard) == guard
    ok &= (sizes_a[:, None] + sizes_b[None, :]) <= k
    ia, ib = np.nonzero(ok)
    return ia.astype(np.int64), ib.astype(np.int64), sums[ia, ib]
