"""Fan-in-2 arithmetic circuits and truncated polynomial expansion.

Circuits are built from variable leaves and binary add/mul gates only.
No constants and no subtraction: every expanded coefficient is then a
positive integer, so a monomial present in any gate's expansion can never
cancel away later.  That property is what lets a multiset of variable
degrees stand in for a monomial downstream.

The text form, one gate per line, 1-based ids::

    # comment
    g1 = var x1
    g2 = var x2
    g3 = add g1 g2
    g4 = mul g3 g3
    output g4

``TruncatedPolynomial`` is the ring Z[x1..xn] optionally quotiented by
per-variable degree > r or total degree > k (such monomials are dropped).
Dropping is done inside every product, which is sound because the dropped
monomials form an ideal: they can never contribute back to a kept monomial.
"""

from dataclasses import dataclass

from .budget import resolve_budget
from .errors import BudgetExceeded, CircuitError, ParameterError


@dataclass(frozen=True)
class Circuit:
    n: int        # variable count; leaves reference x0..x(n-1) internally
    gates: tuple  # ("var", i) or ("add", a, b) or ("mul", a, b)
    output: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("circuit needs at least one variable")
        for g, gate in enumerate(self.gates):
            op = gate[0]
            if op == "var":
                if not (0 <= gate[1] < self.n):
                    raise ParameterError("gate %d: variable out of range" % g)
            elif op in ("add", "mul"):
                a, b = gate[1], gate[2]
                if not (0 <= a < g and 0 <= b < g):
                    raise ParameterError("gate %d: inputs must precede it" % g)
            else:
                raise ParameterError("gate %d: unknown op %r" % (g, op))
        if not (0 <= self.output < len(self.gates)):
            raise ParameterError("output gate out of range")

    @property
    def size(self):
        return len(self.gates)


def parse_circuit(text: str) -> Circuit:
    """Parse the text form.  Gate ids may be declared in any numbering but
    every use must refer to an id already defined."""
    gates = {}
    order = []
    output_id = None
    n = 0
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "output":
            if output_id is not None:
                raise CircuitError("second output line", line=ln, code="output")
            if len(toks) != 2:
                raise CircuitError("output takes one gate", line=ln, code="output")
            output_id = toks[1]
            if output_id not in gates:
                raise CircuitError("output names undefined gate %s" % output_id,
                                   line=ln, code="output")
            continue
        if len(toks) < 3 or toks[1] != "=" or not toks[0].startswith("g"):
            raise CircuitError("expected 'g<id> = <op> ...'", line=ln, code="syntax")
        gid = toks[0]
        if gid in gates:
            raise CircuitError("gate %s redefined" % gid, line=ln, code="duplicate")
        op = toks[2]
        args = toks[3:]
        if op == "var":
            if len(args) != 1 or not args[0].startswith("x"):
                raise CircuitError("var takes one x<i>", line=ln, code="syntax")
            try:
                vi = int(args[0][1:])
            except ValueError:
                raise CircuitError("bad variable %r" % args[0], line=ln, code="syntax")
            if vi < 1:
                raise CircuitError("variables are numbered from x1", line=ln,
                                   code="variable")
            n = max(n, vi)
            gate = ("var", vi - 1)
        elif op in ("add", "mul"):
            if len(args) != 2:
                raise CircuitError("%s takes two gates" % op, line=ln, code="fanin")
            ins = []
            for aid in args:
                if aid not in gates:
                    raise CircuitError("gate %s used before definition" % aid,
                                       line=ln, code="undefined")
                ins.append(gates[aid])
            gate = (op, ins[0], ins[1])
        elif op in ("const", "lit"):
            raise CircuitError("constants are not allowed", line=ln, code="constant")
        elif op in ("sub", "neg"):
            raise CircuitError("subtraction is not allowed", line=ln,
                               code="subtraction")
        else:
            raise CircuitError("unknown op %r" % op, line=ln, code="syntax")
        gates[gid] = len(order)
        order.append(gate)
    if output_id is None:
        raise CircuitError("missing output line", line=None, code="output")
    return Circuit(n, tuple(order), gates[output_id])


def print_circuit(c: Circuit) -> str:
    lines = []
    for g, gate in enumerate(c.gates):
        if gate[0] == "var":
            lines.append("g%d = var x%d" % (g + 1, gate[1] + 1))
        else:
            lines.append("g%d = %s g%d g%d" % (g + 1, gate[0], gate[1] + 1, gate[2] + 1))
    lines.append("output g%d" % (c.output + 1))
    return "\n".join(lines) + "\n"


def evaluate(c: Circuit, values, modulus: int | None = None) -> int:
    """Exact big-integer value of the circuit at the given assignment."""
    if len(values) != c.n:
        raise ParameterError("need %d variable values" % c.n)
    vals = []
    for gate in c.gates:
        if gate[0] == "var":
            v = values[gate[1]]
        elif gate[0] == "add":
            v = vals[gate[1]] + vals[gate[2]]
        else:
            v = vals[gate[1]] * vals[gate[2]]
        if modulus is not None:
            v %= modulus
        vals.append(v)
    return vals[c.output]


# ---------------------------------------------------------------------------

class TruncatedPolynomial:
    """Integer multivariate polynomial, monomials as degree tuples.

    var_cap / total_cap of None mean no truncation on that axis.
    """

    __slots__ = ("n", "var_cap", "total_cap", "terms")

    def __init__(self, n, terms=None, var_cap=None, total_cap=None):
        self.n = n
        self.var_cap = var_cap
        self.total_cap = total_cap
        self.terms = {}
        if terms:
            for key, coef in terms.items():
                if coef == 0:
                    continue
                if self._keeps(key):
                    self.terms[key] = self.terms.get(key, 0) + coef

    def _keeps(self, key) -> bool:
        if self.var_cap is not None and any(d > self.var_cap for d in key):
            return False
        if self.total_cap is not None and sum(key) > self.total_cap:
            return False
        return True

    @classmethod
    def zero(cls, n, var_cap=None, total_cap=None):
        return cls(n, None, var_cap, total_cap)

    @classmethod
    def constant(cls, n, c, var_cap=None, total_cap=None):
        return cls(n, {(0,) * n: c}, var_cap, total_cap)

    @classmethod
    def variable(cls, n, i, var_cap=None, total_cap=None):
        if not (0 <= i < n):
            raise ParameterError("variable %d outside [0, %d)" % (i, n))
        key = tuple(1 if j == i else 0 for j in range(n))
        return cls(n, {key: 1}, var_cap, total_cap)

    def _like(self, terms):
        out = TruncatedPolynomial(self.n, None, self.var_cap, self.total_cap)
        out.terms = {k: v for k, v in terms.items() if v != 0}
        return out

    def _check(self, other):
        if self.n != other.n:
            raise ParameterError("mixed variable counts")
        if (self.var_cap, self.total_cap) != (other.var_cap, other.total_cap):
            raise ParameterError("mixed truncation caps")

    def __add__(self, other):
        if isinstance(other, int):
            other = TruncatedPolynomial.constant(self.n, other, self.var_cap, self.total_cap)
        self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = TruncatedPolynomial.constant(self.n, other, self.var_cap, self.total_cap)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._like({k: v * other for k, v in self.terms.items()})
        self._check(other)
        out = {}
        vc, tc = self.var_cap, self.total_cap
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                key = tuple(x + y for x, y in zip(ka, kb))
                if vc is not None and any(d > vc for d in key):
                    continue
                if tc is not None and sum(key) > tc:
                    continue
                out[key] = out.get(key, 0) + va * vb
        return self._like(out)

    __rmul__ = __mul__

    def coefficient(self, key) -> int:
        return self.terms.get(tuple(key), 0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedPolynomial)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.terms.values())

    def truncate(self, var_cap=None, total_cap=None):
        return TruncatedPolynomial(self.n, self.terms, var_cap, total_cap)

    def substitute_eval(self, values, modulus=None) -> int:
        total = 0
        for key, coef in self.terms.items():
            v = coef
            for i, d in enumerate(key):
                for _ in range(d):
                    v *= values[i]
            total += v
            if modulus is not None:
                total %= modulus
        return total

    def __repr__(self):
        parts = []
        for key in sorted(self.terms):
            parts.append("%+d*%s" % (self.terms[key], key))
        return "Poly(%s)" % " ".join(parts) if parts else "Poly(0)"


def symbolic_expand(c: Circuit, r_cap=None, k_cap=None,
                    term_budget=None) -> TruncatedPolynomial:
    """Gate-by-gate polynomial expansion, truncating as it goes.

    r_cap bounds each variable's degree, k_cap the total degree; either may
    be None for no truncation on that axis.  Truncation commutes with the
    gate arithmetic (the dropped monomials form an ideal), so the result
    equals truncating a full expansion.  A gate whose term map outgrows the
    budget aborts with the offending gate id.
    """
    term_budget = resolve_budget(term_budget)
    polys = []
    for gi, gate in enumerate(c.gates):
        if gate[0] == "var":
            p = TruncatedPolynomial.variable(c.n, gate[1], r_cap, k_cap)
        elif gate[0] == "add":
            p = polys[gate[1]] + polys[gate[2]]
        else:
            p = polys[gate[1]] * polys[gate[2]]
        if len(p.terms) > term_budget:
            raise BudgetExceeded(
                "gate g%d expands to %d terms, budget is %d"
                % (gi + 1, len(p.terms), term_budget)
            )
        polys.append(p)
    return polys[c.output]
