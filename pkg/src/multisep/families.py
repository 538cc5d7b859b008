"""Small explicit function families with verifiable combinatorial contracts.

Four builders live here:

- perfect hash families (range t*t, and the tight range-t variant) built by
  the method of conditional expectations;
- approximately pairwise-independent families from affine maps over a prime
  field, with an exactly-computed deviation bound;
- one-versus-many separators: for every point a and every small set D missing
  a, at least half the family maps a outside the image of D;
- hitting sets for combinatorial rectangles of a given density.

Everything is deterministic.  Contracts are checked by ``verify_family``,
which enumerates exhaustively and refuses (raises) past its case budget.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, product
from math import comb

import numpy as np

from .budget import charge, resolve_budget
from .errors import BudgetExceeded, ParameterError
from .fields import field, is_prime, next_prime, prime_power


@dataclass(frozen=True)
class FunctionFamily:
    """A finite list of functions [n] -> [s], kept as value tables.

    Duplicates are allowed and meaningful: fraction-based contracts count
    members with multiplicity.
    """

    n: int
    s: int
    tables: tuple
    kind: str = ""

    def __post_init__(self):
        if self.n < 0 or self.s < 1:
            raise ParameterError("bad family dimensions (%d, %d)" % (self.n, self.s))
        for tab in self.tables:
            if len(tab) != self.n:
                raise ParameterError("table length %d != domain %d" % (len(tab), self.n))
            if any(v < 0 or v >= self.s for v in tab):
                raise ParameterError("table value out of range [0, %d)" % self.s)

    def __len__(self):
        return len(self.tables)

    def __iter__(self):
        return iter(self.tables)

    def member(self, i: int):
        return self.tables[i]


@dataclass(frozen=True)
class RectanglePointSet:
    """Points hitting every rectangle of per-side density >= ``density``."""

    sides: tuple
    density: Fraction
    points: tuple

    def __len__(self):
        return len(self.points)


# contracts for verify_family

@dataclass(frozen=True)
class TPerfectContract:
    t: int


@dataclass(frozen=True)
class PairwiseContract:
    eps: Fraction


@dataclass(frozen=True)
class OneVsManyContract:
    k: int
    d_max: int | None = None  # default k - 1; the builders actually achieve k


@dataclass(frozen=True)
class HittingContract:
    density: Fraction


# ---------------------------------------------------------------------------
# greedy construction by conditional expectations

_GREEDY_CONSTRAINT_CAP = 200_000


def _greedy_injective_cover(d: int, t: int, s: int):
    """Tables [d] -> [s] such that every t-subset of [d] is injective under
    at least one table.

    Coordinates are fixed one at a time; each value choice maximizes the
    expected number of constraints a uniformly random completion would still
    cover.  The expectation never drops, so every round covers at least one
    new constraint and the loop terminates.
    """
    if s > 64:
        raise BudgetExceeded("greedy cover: range %d exceeds bitmask width" % s)
    n_cons = comb(d, t)
    if n_cons > _GREEDY_CONSTRAINT_CAP:
        raise BudgetExceeded(
            "greedy cover: %d constraints exceed cap %d" % (n_cons, _GREEDY_CONSTRAINT_CAP)
        )
    cons = np.array(list(combinations(range(d), t)), dtype=np.int64)
    by_coord = [np.nonzero((cons == x).any(axis=1))[0] for x in range(d)]
    # pot[j]: chance that j still-unset slots end up all-distinct
    pot = np.ones(t + 1)
    for j in range(1, t + 1):
        pot[j] = pot[j - 1] * (s - (t - j)) / s
    shifts = np.arange(s, dtype=np.uint64)[:, None]

    uncovered = np.ones(n_cons, dtype=bool)
    tables = []
    while uncovered.any():
        f = np.zeros(d, dtype=np.int64)
        used = np.zeros(n_cons, dtype=np.uint64)
        cnt = np.zeros(n_cons, dtype=np.int64)
        alive = uncovered.copy()
        for x in range(d):
            rows = by_coord[x]
            act = rows[alive[rows]]
            if len(act) == 0:
                continue
            collide = ((used[act][None, :] >> shifts) & np.uint64(1)).astype(bool)
            gain = np.where(collide, 0.0, pot[t - cnt[act] - 1][None, :]).sum(axis=1)
            v = int(np.argmax(gain))  # argmax keeps the lowest value on ties
            f[x] = v
            hit = collide[v]
            alive[act[hit]] = False
            ok = act[~hit]
            used[ok] |= np.uint64(1 << v)
            cnt[ok] += 1
        if not alive.any():
            raise ParameterError("greedy cover stalled; range %d too small" % s)
        uncovered &= ~alive
        tables.append(tuple(int(v) for v in f))
    return tables


def build_perfect_hash(n: int, t: int) -> FunctionFamily:
    """Family [n] -> [t*t] mapping every t-subset injectively somewhere."""
    if t < 1 or t > n:
        raise ParameterError("need 1 <= t <= n, got t=%d n=%d" % (t, n))
    s = t * t
    if n <= s:
        return FunctionFamily(n, s, (tuple(range(n)),), kind="identity")
    return FunctionFamily(n, s, tuple(_greedy_injective_cover(n, t, s)), kind="greedy")


def build_perfect_hash_small_range(d: int, t: int) -> FunctionFamily:
    """Like build_perfect_hash but with tight range [t]."""
    if t < 1 or t > d:
        raise ParameterError("need 1 <= t <= d, got t=%d d=%d" % (t, d))
    if d == t:
        return FunctionFamily(d, t, (tuple(range(d)),), kind="identity")
    return FunctionFamily(d, t, tuple(_greedy_injective_cover(d, t, t)), kind="greedy")


# ---------------------------------------------------------------------------
# pairwise independence

_FULL_SPACE_CAP = 65_536


def _affine_deviation(p: int, m: int) -> Fraction:
    # residue classes of [p] mod m have size floor or ceil of p/m
    lo, rem = divmod(p, m)
    hi = lo + (1 if rem else 0)
    target = Fraction(1, m * m)
    up = Fraction(hi * hi, p * p) - target
    down = target - Fraction(lo * lo, p * p)
    return max(up, down)


def build_pairwise_independent(n: int, m: int, eps) -> FunctionFamily:
    """Family [n] -> [m] with every pair of inputs landing on every value
    pair with probability within eps of 1/m^2.

    eps = 0 demands exact pairwise independence: affine maps over GF(m) when
    n == m is prime, otherwise the full function space while it stays small.
    eps > 0 compresses affine maps over a slightly larger prime field; the
    field size is grown until the exactly-computed deviation fits.
    """
    if n < 1:
        raise ParameterError("empty domain")
    if m < 1 or m > n:
        raise ParameterError("need 1 <= m <= n, got m=%d n=%d" % (m, n))
    eps = Fraction(eps)
    if eps < 0:
        raise ParameterError("eps must be nonnegative")

    if eps == 0:
        if n == m and is_prime(m):
            tables = tuple(
                tuple((a * x + b) % m for x in range(n))
                for a in range(m)
                for b in range(m)
            )
            return FunctionFamily(n, m, tables, kind="affine")
        if m**n <= _FULL_SPACE_CAP:
            tables = tuple(product(range(m), repeat=n))
            return FunctionFamily(n, m, tables, kind="full-space")
        raise BudgetExceeded(
            "exact pairwise independence needs %d^%d functions here" % (m, n)
        )

    p = next_prime(max(n, m))
    while _affine_deviation(p, m) > eps:
        p = next_prime(p + 1)
    tables = tuple(
        tuple(((a * x + b) % p) % m for x in range(n))
        for a in range(p)
        for b in range(p)
    )
    return FunctionFamily(n, m, tables, kind="affine-mod")


# ---------------------------------------------------------------------------
# one-versus-many separators

def _evaluation_plan(n: int, k: int):
    # smallest member count first; q is a prime power with room for both the
    # evaluation points (2ek of them) and the value range cap 4k
    for e in (1, 2):
        size = 2 * e * k
        for q in range(max(size, 2), 4 * k + 1):
            if prime_power(q) is None:
                continue
            if q ** (e + 1) >= n:
                return q, e, size
    return None


def build_one_vs_many_separator(n: int, k: int, provider: str = "evaluation") -> FunctionFamily:
    """Family [n] -> [4k]: for any a and any D not containing a with
    |D| <= k, at least half the members give a a value used by nobody in D.

    The default encodes each input as a low-degree polynomial over a small
    field and evaluates it at 2ek points; two inputs agree on at most e
    points, so at most |D|*e <= ek members can fail a.  The pairwise
    provider reaches the same bound through an approximately pairwise
    independent family and is kept as a fallback for domains too large for
    the evaluation plan.
    """
    if k > n:
        raise ParameterError("need k <= n (got k=%d, n=%d)" % (k, n))
    if n < 1 or k < 1:
        raise ParameterError("need n >= 1 and k >= 1")
    if provider not in ("evaluation", "pairwise"):
        raise ParameterError("unknown provider %r" % provider)

    plan = _evaluation_plan(n, k) if provider == "evaluation" else None
    if plan is not None:
        q, e, size = plan
        fld = field(q)
        tables = []
        for j in range(size):
            tab = []
            for x in range(n):
                coeffs = [(x // q**i) % q for i in range(e + 1)]
                tab.append(fld.poly_eval(coeffs, j))
            tables.append(tuple(tab))
        return FunctionFamily(n, 4 * k, tuple(tables), kind="evaluation")

    # fallback: collision probability <= 2/m per pair gives failure fraction
    # <= k * 2/(4k) = 1/2
    m = 4 * k
    dom = max(n, m)
    base = build_pairwise_independent(dom, m, Fraction(1, m * m))
    tables = tuple(tab[:n] for tab in base.tables)
    return FunctionFamily(n, m, tables, kind="pairwise-derived")


# ---------------------------------------------------------------------------
# rectangle hitting sets

_GREEDY_RECT_CAP = 2_000
_GREEDY_GRID_CAP = 512
_LIFT_POINT_CAP = 200_000


def _greedy_hitting_points(sides, thresholds):
    rects = [
        tuple(frozenset(c) for c in choice)
        for choice in product(
            *(combinations(range(m), g) for m, g in zip(sides, thresholds))
        )
    ]
    unhit = set(range(len(rects)))
    grid = list(product(*(range(m) for m in sides)))
    points = []
    while unhit:
        best, best_cover = None, None
        for pt in grid:
            cover = {
                ri
                for ri in unhit
                if all(pt[i] in rects[ri][i] for i in range(len(sides)))
            }
            if best is None or len(cover) > len(best_cover):
                best, best_cover = pt, cover
        if not best_cover:
            raise ParameterError("unhittable rectangle")  # unreachable
        points.append(best)
        unhit -= best_cover
    return points


def two_thirds_grid(side: int, t: int):
    """Default uniform-side point source: the t-fold product of the prefix
    {0..floor(2*side/3)}.  Any subset of [side] of size > side/3 meets the
    prefix, so the product hits every rectangle of density >= 1/3."""
    return ("product", tuple(tuple(range(2 * side // 3 + 1)) for _ in range(t)))


def build_rectangle_hitting_set(sides, density=Fraction(1, 2), uniform_provider=None) -> RectanglePointSet:
    """Point set meeting every rectangle R1 x .. x Rt with |Ri| >= density*mi.

    Tiny instances are solved greedily against the explicit list of minimal
    rectangles.  Otherwise points for a uniform-sided cube come from
    ``uniform_provider`` and are pushed down coordinatewise by value mod side.
    """
    sides = tuple(int(m) for m in sides)
    if not sides or any(m < 1 for m in sides):
        raise ParameterError("sides must be positive, got %r" % (sides,))
    density = Fraction(density)
    if density <= 0 or density > 1:
        raise ParameterError("density must lie in (0, 1]")
    thresholds = tuple(-((-m * density.numerator) // density.denominator) for m in sides)

    if density == 1:
        return RectanglePointSet(sides, density, (tuple(0 for _ in sides),))

    n_rects = 1
    for m, g in zip(sides, thresholds):
        n_rects *= comb(m, g)
    grid_size = 1
    for m in sides:
        grid_size *= m
    if uniform_provider is None and n_rects <= _GREEDY_RECT_CAP and grid_size <= _GREEDY_GRID_CAP:
        pts = _greedy_hitting_points(sides, thresholds)
        return RectanglePointSet(sides, density, tuple(pts))

    if density < Fraction(1, 3):
        raise ParameterError("uniform-side route needs density >= 1/3")
    provider = uniform_provider or two_thirds_grid
    side = 3 * max(sides)
    raw = provider(side, len(sides))
    if isinstance(raw, tuple) and len(raw) == 2 and raw[0] == "product":
        per_axis = [
            tuple(sorted({x % m for x in axis}))
            for m, axis in zip(sides, raw[1])
        ]
        total = 1
        for ax in per_axis:
            total *= len(ax)
        charge(total, _LIFT_POINT_CAP, "lifted hitting set")
        pts = tuple(product(*per_axis))
    else:
        seen = {tuple(x % m for x, m in zip(pt, sides)) for pt in raw}
        pts = tuple(sorted(seen))
    return RectanglePointSet(sides, density, pts)


# ---------------------------------------------------------------------------
# contract verification

def find_family_violation(obj, contract, budget=None):
    """First violated constraint in lexicographic order, or None.

    Enumerates every constraint of the contract; raises BudgetExceeded
    instead of checking a subset.
    """
    budget = resolve_budget(budget)

    if isinstance(contract, TPerfectContract):
        fam, t = obj, contract.t
        if not isinstance(fam, FunctionFamily):
            raise ParameterError("t-perfect contract applies to a FunctionFamily")
        charge(comb(fam.n, t) * max(len(fam), 1), budget, "t-perfect verification")
        for sub in combinations(range(fam.n), t):
            if not any(len({tab[x] for x in sub}) == t for tab in fam.tables):
                return ("t_perfect", sub)
        return None

    if isinstance(contract, PairwiseContract):
        fam = obj
        eps = Fraction(contract.eps)
        m = fam.s
        size = len(fam)
        charge(comb(fam.n, 2) * (size + m * m), budget, "pairwise verification")
        for x, y in combinations(range(fam.n), 2):
            counts = np.zeros((m, m), dtype=np.int64)
            for tab in fam.tables:
                counts[tab[x], tab[y]] += 1
            # exact: |c/size - 1/m^2| <= eps
            for a in range(m):
                for b in range(m):
                    dev = abs(Fraction(int(counts[a, b]), size) - Fraction(1, m * m))
                    if dev > eps:
                        return ("pairwise", (x, y), (a, b), dev)
        return None

    if isinstance(contract, OneVsManyContract):
        fam, k = obj, contract.k
        d_max = contract.d_max if contract.d_max is not None else k - 1
        d_max = min(d_max, fam.n - 1)
        cases = sum(
            fam.n * comb(fam.n - 1, d) for d in range(d_max + 1)
        )
        charge(cases * max(len(fam), 1), budget, "one-vs-many verification")
        size = len(fam)
        for a in range(fam.n):
            others = [x for x in range(fam.n) if x != a]
            for d in range(d_max + 1):
                for D in combinations(others, d):
                    good = sum(
                        1
                        for tab in fam.tables
                        if all(tab[a] != tab[b] for b in D)
                    )
                    if 2 * good < size:
                        return ("one_vs_many", a, D, good)
        return None

    if isinstance(contract, HittingContract):
        hs = obj
        if not isinstance(hs, RectanglePointSet):
            raise ParameterError("hitting contract applies to a RectanglePointSet")
        density = Fraction(contract.density)
        thresholds = [
            -((-m * density.numerator) // density.denominator) for m in hs.sides
        ]
        n_rects = 1
        for m, g in zip(hs.sides, thresholds):
            n_rects *= comb(m, g)
        charge(n_rects * max(len(hs.points), 1), budget, "hitting verification")
        t = len(hs.sides)
        for choice in product(
            *(combinations(range(m), g) for m, g in zip(hs.sides, thresholds))
        ):
            rect = [frozenset(c) for c in choice]
            if not any(
                all(pt[i] in rect[i] for i in range(t)) for pt in hs.points
            ):
                return ("hitting", tuple(choice))
        return None

    raise ParameterError("unknown contract %r" % (contract,))


def verify_family(obj, contract, budget=None) -> bool:
    return find_family_violation(obj, contract, budget) is None
