"""Multisets over [n] with a per-element multiplicity cap.

A multiset A with at most r copies of each element is stored as its count
vector, A[i] in {0..r}.  |A| denotes the total count.  Throughout the package
these are the objects being separated, trimmed and composed:

    complement(A)[i] = r - A[i]
    union(A, B)[i]   = A[i] + B[i]          (may exceed the cap; flagged)
    A <= B           coordinate-wise        (dominance)

Compatibility of a pair (A, B) against a target size k comes in two strengths:
`is_rk_compatible` requires the union to be an exact size-k multiset that still
respects the cap; `is_rk_consistent` only requires it not to overshoot.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, ParameterError

# Packed fixed-width count encoding (used by the bulk kernels) fits
# n * (bits(r) + 1) <= PACK_MAX_BITS; larger universes take the unpacked path.
PACK_MAX_BITS = 64


@dataclass(frozen=True)
class MultisetVector:
    """Count vector of a multiset over universe {0..n-1} with cap `cap_r`.

    Counts are allowed to exceed the cap (a union result can overshoot);
    `is_r_set` reports whether the vector is a genuine r-set.
    """

    counts: tuple
    cap_r: int

    def __post_init__(self):
        if self.cap_r < 0:
            raise ParameterError("cap_r must be non-negative")
        if any(c < 0 for c in self.counts):
            raise ParameterError("negative count in multiset vector")

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def size(self) -> int:
        return sum(self.counts)

    @property
    def is_r_set(self) -> bool:
        return all(c <= self.cap_r for c in self.counts)

    def __le__(self, other: "MultisetVector") -> bool:
        _check_same_universe(self, other)
        return all(a <= b for a, b in zip(self.counts, other.counts))


def r_set(counts, r: int) -> MultisetVector:
    """Strict constructor: rejects counts above the cap."""
    v = MultisetVector(tuple(counts), r)
    if not v.is_r_set:
        raise ParameterError("count exceeds cap r=%d" % r)
    return v


def _check_same_universe(a: MultisetVector, b: MultisetVector):
    if a.n != b.n:
        raise DimensionMismatch("universe sizes differ: %d vs %d" % (a.n, b.n))
    if a.cap_r != b.cap_r:
        raise DimensionMismatch("caps differ: %d vs %d" % (a.cap_r, b.cap_r))


def size(a: MultisetVector) -> int:
    return a.size


def complement(a: MultisetVector) -> MultisetVector:
    """r - A[i] per coordinate.  Requires A to be an r-set."""
    if not a.is_r_set:
        raise ParameterError("complement of a non-r-set is undefined")
    return MultisetVector(tuple(a.cap_r - c for c in a.counts), a.cap_r)


def union(a: MultisetVector, b: MultisetVector) -> MultisetVector:
    """Multiset union A + B.  The result may exceed the cap per coordinate;
    check `.is_r_set` on the result."""
    _check_same_universe(a, b)
    return MultisetVector(tuple(x + y for x, y in zip(a.counts, b.counts)), a.cap_r)


def is_rk_compatible(a: MultisetVector, b: MultisetVector, k: int) -> bool:
    """A + B is an r-set of size exactly k."""
    _check_same_universe(a, b)
    total = 0
    for x, y in zip(a.counts, b.counts):
        s = x + y
        if s > a.cap_r:
            return False
        total += s
    return total == k


def is_rk_consistent(a: MultisetVector, b: MultisetVector, k: int) -> bool:
    """A + B respects the cap and |A + B| <= k (the bullet-product guard)."""
    _check_same_universe(a, b)
    total = 0
    for x, y in zip(a.counts, b.counts):
        s = x + y
        if s > a.cap_r:
            return False
        total += s
    return total <= k


def dominates(big: MultisetVector, small: MultisetVector) -> bool:
    """small <= big coordinate-wise."""
    return small <= big


@dataclass(frozen=True)
class WeightedUniverse:
    """Universe {0..n-1} with integer element weights."""

    weights: tuple

    @property
    def n(self) -> int:
        return len(self.weights)


def weight(a: MultisetVector, universe: WeightedUniverse) -> int:
    """wt(A) = sum_i A[i] * wt(i)."""
    if a.n != universe.n:
        raise DimensionMismatch(
            "vector has %d coordinates, universe %d" % (a.n, universe.n)
        )
    return sum(c * w for c, w in zip(a.counts, universe.weights))


def packed_width(r: int) -> int:
    """Field width in bits for packing counts 0..r plus a guard bit."""
    return max(r, 1).bit_length() + 1


def fits_packed(n: int, r: int) -> bool:
    return n * packed_width(r) <= PACK_MAX_BITS
