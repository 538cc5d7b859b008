"""Arithmetic in small finite fields GF(q), q a prime power.

Elements are integers 0..q-1.  For prime q this is arithmetic mod q; for
q = p^e an element's base-p digits are the coefficients of a polynomial over
GF(p), reduced modulo a monic irreducible found by search.  Fields here stay
tiny (q <= a few dozen), so multiplication tables are precomputed.
"""

from functools import lru_cache

from .errors import ParameterError


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def next_prime(m: int) -> int:
    m = max(m, 2)
    while not is_prime(m):
        m += 1
    return m


def prime_power(q: int):
    """(p, e) with q = p^e, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if not is_prime(p):
            continue
        e, m = 0, q
        while m % p == 0:
            m //= p
            e += 1
        if m == 1:
            return (p, e)
        if p * p > q:
            break
    return None


def _poly_mul_mod(a, b, mod_poly, p):
    # coefficient lists, little-endian; reduce by the monic mod_poly
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    e = len(mod_poly) - 1
    for i in range(len(res) - 1, e - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(e):
                res[i - e + j] = (res[i - e + j] - c * mod_poly[j]) % p
    return res[:e]


def _find_irreducible(p: int, e: int):
    """Monic irreducible of degree e over GF(p), little-endian with leading 1."""

    def poly_from_int(x, deg):
        return [(x // p**i) % p for i in range(deg)]

    def divides(d, f):
        # trial division of f by monic d
        f = list(f)
        while len(f) >= len(d) and any(f):
            while f and f[-1] == 0:
                f.pop()
            if len(f) < len(d):
                break
            c = f[-1]
            off = len(f) - len(d)
            for i, di in enumerate(d):
                f[off + i] = (f[off + i] - c * di) % p
        return not any(f)

    lower = []
    for deg in range(1, e // 2 + 1):
        for x in range(p**deg):
            lower.append(poly_from_int(x, deg) + [1])
    for x in range(p**e):
        cand = poly_from_int(x, e) + [1]
        if cand[0] == 0:
            continue
        if not any(divides(d, cand) for d in lower):
            return cand
    raise ParameterError("no irreducible polynomial found")  # unreachable


class Field:
    """GF(q) with table-based multiplication."""

    def __init__(self, q: int):
        pe = prime_power(q)
        if pe is None:
            raise ParameterError("%d is not a prime power" % q)
        self.q = q
        self.p, self.e = pe
        if self.e == 1:
            self._mul = [[(a * b) % q for b in range(q)] for a in range(q)]
            self._add = [[(a + b) % q for b in range(q)] for a in range(q)]
        else:
            p, e = self.p, self.e
            mod_poly = _find_irreducible(p, e)

            def digs(x):
                return [(x // p**i) % p for i in range(e)]

            def undigs(c):
                return sum(ci * p**i for i, ci in enumerate(c))

            self._add = [
                [undigs([(x + y) % p for x, y in zip(digs(a), digs(b))])
                 for b in range(q)]
                for a in range(q)
            ]
            self._mul = [
                [undigs(_poly_mul_mod(digs(a), digs(b), mod_poly, p))
                 for b in range(q)]
                for a in range(q)
            ]

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def poly_eval(self, coeffs, x: int) -> int:
        """Evaluate a polynomial (little-endian coefficients) at x."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc


@lru_cache(maxsize=None)
def field(q: int) -> Field:
    return Field(q)
