"""Line-based text formats for every artifact the CLI consumes or emits.

Conventions shared by all formats:

  * one record per line, tokens separated by single spaces;
  * `#` starts a comment, blank lines are ignored;
  * vertices and universe elements are 1-based in files, 0-based in memory;
  * count-vector entries are multiplicities, never indices, and stay 0-based.

Every writer emits a canonical form and every reader accepts exactly what the
matching writer produces (plus comments/blank lines and the documented
optional lines), so print -> parse -> print is the identity.
"""

from fractions import Fraction

import numpy as np

from .errors import FormatError
from .families import FunctionFamily
from .graphs import Graph, graph
from .multiset import WeightedUniverse
from .repsets import WeightedMultisetFamily, make_family
from .separating import UniversalSetFamily
from .separator import MultisetSeparator
from .solvers import SetFamilyInstance, set_family_instance


def _lines(text):
    """Significant lines with their 1-based numbers."""
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line))
    return out


def _ints(tokens, lineno, what="value"):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError("bad %s %r" % (what, tokens), lineno)


def _header(lines, tag):
    if not lines:
        raise FormatError("empty input, expected a %r header" % tag)
    lineno, line = lines[0]
    toks = line.split()
    if toks[0] != tag:
        raise FormatError("expected %r header, got %r" % (tag, toks[0]), lineno)
    return lineno, toks[1:], lines[1:]


def _kv_header(lines, tag, keys):
    lineno, toks, rest = _header(lines, tag)
    if len(toks) != len(keys):
        raise FormatError("%s header needs %s" % (tag, " ".join(k + "=<%s>" % k for k in keys)), lineno)
    vals = []
    for tok, key in zip(toks, keys):
        if not tok.startswith(key + "="):
            raise FormatError("expected %s=<int>, got %r" % (key, tok), lineno)
        vals.extend(_ints([tok[len(key) + 1:]], lineno, key))
    return lineno, vals, rest


# ---------------------------------------------------------------------------
# function families:  family n=<n> s=<s> count=<c>, one table per line


def write_function_family(fam: FunctionFamily) -> str:
    out = ["family n=%d s=%d count=%d" % (fam.n, fam.s, len(fam))]
    for tab in fam.tables:
        out.append(" ".join(str(v + 1) for v in tab))
    return "\n".join(out) + "\n"


def read_function_family(text: str) -> FunctionFamily:
    lineno, (n, s, count), rest = _kv_header(_lines(text), "family", ("n", "s", "count"))
    if len(rest) != count:
        raise FormatError("header promises %d tables, found %d" % (count, len(rest)), lineno)
    tables = []
    for lno, line in rest:
        vals = _ints(line.split(), lno, "table entry")
        if len(vals) != n:
            raise FormatError("table has %d entries, n=%d" % (len(vals), n), lno)
        if any(v < 1 or v > s for v in vals):
            raise FormatError("table value outside 1..%d" % s, lno)
        tables.append(tuple(v - 1 for v in vals))
    return FunctionFamily(n, s, tuple(tables), kind="file")


# ---------------------------------------------------------------------------
# universal set families: one sorted subset per line, `-` for the empty set


def write_universal_family(usf: UniversalSetFamily) -> str:
    out = ["universal n=%d p=%d q=%d count=%d" % (usf.n, usf.p, usf.q, len(usf.sets))]
    for fs in usf.sets:
        out.append(" ".join(str(x + 1) for x in fs) if fs else "-")
    return "\n".join(out) + "\n"


def read_universal_family(text: str) -> UniversalSetFamily:
    lineno, (n, p, q, count), rest = _kv_header(
        _lines(text), "universal", ("n", "p", "q", "count"))
    if len(rest) != count:
        raise FormatError("header promises %d sets, found %d" % (count, len(rest)), lineno)
    sets = []
    for lno, line in rest:
        if line == "-":
            sets.append(())
            continue
        vals = _ints(line.split(), lno, "element")
        if any(v < 1 or v > n for v in vals):
            raise FormatError("element outside 1..%d" % n, lno)
        fs = tuple(v - 1 for v in vals)
        if list(fs) != sorted(set(fs)):
            raise FormatError("set must be strictly increasing", lno)
        sets.append(fs)
    return UniversalSetFamily(n, p, q, tuple(sets), None)


# ---------------------------------------------------------------------------
# multiset separators:  msep n=<n> r=<r> k=<k>, one count vector per line


def write_msep(sep: MultisetSeparator) -> str:
    out = ["msep n=%d r=%d k=%d" % (sep.n, sep.r, sep.k)]
    for row in sep.counts:
        out.append(" ".join(str(int(v)) for v in row))
    return "\n".join(out) + "\n"


def read_msep(text: str) -> MultisetSeparator:
    lineno, (n, r, k), rest = _kv_header(_lines(text), "msep", ("n", "r", "k"))
    rows = []
    for lno, line in rest:
        vals = _ints(line.split(), lno, "count")
        if len(vals) != n:
            raise FormatError("vector has %d entries, n=%d" % (len(vals), n), lno)
        if any(v < 0 or v > r for v in vals):
            raise FormatError("count outside 0..%d" % r, lno)
        rows.append(vals)
    counts = np.asarray(rows, dtype=np.uint8).reshape(len(rows), n)
    return MultisetSeparator(n, r, k, counts, len(rows), "file")


# ---------------------------------------------------------------------------
# weighted multiset families:
#   wmsfam <n> <r> <k> / weights line / `<vector> <weight>` lines


def write_wmsfam(fam: WeightedMultisetFamily) -> str:
    out = ["wmsfam %d %d %d" % (fam.n, fam.r, fam.k)]
    out.append("weights " + " ".join(str(int(w)) for w in fam.universe.weights))
    for i in range(len(fam)):
        row = " ".join(str(int(v)) for v in fam.counts[i])
        out.append("%s %d" % (row, int(fam.weights[i])))
    return "\n".join(out) + "\n"


def read_wmsfam(text: str) -> WeightedMultisetFamily:
    lineno, toks, rest = _header(_lines(text), "wmsfam")
    if len(toks) != 3:
        raise FormatError("wmsfam header needs <n> <r> <k>", lineno)
    n, r, k = _ints(toks, lineno, "header value")
    if not rest or not rest[0][1].startswith("weights"):
        raise FormatError("wmsfam needs a weights line", lineno)
    wlno, wline = rest[0]
    wvals = _ints(wline.split()[1:], wlno, "weight")
    if len(wvals) != n:
        raise FormatError("weights line has %d entries, n=%d" % (len(wvals), n), wlno)
    rows, member_weights = [], []
    for lno, line in rest[1:]:
        vals = _ints(line.split(), lno, "entry")
        if len(vals) != n + 1:
            raise FormatError("member line needs %d counts + weight" % n, lno)
        rows.append(vals[:n])
        member_weights.append(vals[n])
    universe = WeightedUniverse(tuple(wvals))
    return make_family(universe, r, k, rows, member_weights=member_weights)


# ---------------------------------------------------------------------------
# graphs:  graph <n> <m> <directed|undirected>
#          optional vweights/aweights lines, then `<u> <v> [w]` edge lines


def write_graph(g: Graph) -> str:
    out = ["graph %d %d %s" % (g.n, g.m, "directed" if g.directed else "undirected")]
    if g.vweights is not None:
        out.append("vweights " + " ".join(str(w) for w in g.vweights))
    for e, (u, v) in enumerate(g.edges):
        if g.eweights is not None:
            out.append("%d %d %d" % (u + 1, v + 1, g.eweights[e]))
        else:
            out.append("%d %d" % (u + 1, v + 1))
    return "\n".join(out) + "\n"


def read_graph(text: str) -> Graph:
    lineno, toks, rest = _header(_lines(text), "graph")
    if len(toks) != 3 or toks[2] not in ("directed", "undirected"):
        raise FormatError("graph header needs <n> <m> <directed|undirected>", lineno)
    n, m = _ints(toks[:2], lineno, "header value")
    vweights = None
    aweights = None
    while rest and rest[0][1].split()[0] in ("vweights", "aweights"):
        lno, line = rest.pop(0)
        key, vals = line.split()[0], _ints(line.split()[1:], lno, "weight")
        if key == "vweights":
            if vweights is not None:
                raise FormatError("duplicate vweights line", lno)
            if len(vals) != n:
                raise FormatError("vweights has %d entries, n=%d" % (len(vals), n), lno)
            vweights = vals
        else:
            if aweights is not None:
                raise FormatError("duplicate aweights line", lno)
            if len(vals) != m:
                raise FormatError("aweights has %d entries, m=%d" % (len(vals), m), lno)
            aweights = vals
    edges = []
    inline = []
    for lno, line in rest:
        vals = _ints(line.split(), lno, "edge")
        if len(vals) not in (2, 3):
            raise FormatError("edge line needs <u> <v> [w]", lno)
        u, v = vals[0], vals[1]
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError("endpoint outside 1..%d" % n, lno)
        edges.append((u - 1, v - 1))
        inline.append(vals[2] if len(vals) == 3 else None)
    if len(edges) != m:
        raise FormatError("header promises %d edges, found %d" % (m, len(edges)), lineno)
    eweights = None
    if aweights is not None or any(w is not None for w in inline):
        base = aweights if aweights is not None else [0] * m
        # inline third columns override the aweights line
        eweights = [inline[e] if inline[e] is not None else base[e] for e in range(m)]
    return graph(n, edges, directed=(toks[2] == "directed"),
                 vweights=vweights, eweights=eweights)


# ---------------------------------------------------------------------------
# set-family instances:  setfam <n> <count> <q>
#   optional eweights/sweights lines, then one q-set per line


def write_setfam(inst: SetFamilyInstance) -> str:
    n = len(inst.universe.weights)
    out = ["setfam %d %d %d" % (n, len(inst.sets), inst.q)]
    if any(inst.universe.weights):
        out.append("eweights " + " ".join(str(w) for w in inst.universe.weights))
    if inst.set_weights is not None:
        out.append("sweights " + " ".join(str(w) for w in inst.set_weights))
    for s in inst.sets:
        out.append(" ".join(str(x + 1) for x in s))
    return "\n".join(out) + "\n"


def read_setfam(text: str, r: int, p: int) -> SetFamilyInstance:
    """r and p come from the caller (CLI flags); the file pins n, q and the
    sets themselves."""
    lineno, toks, rest = _header(_lines(text), "setfam")
    if len(toks) != 3:
        raise FormatError("setfam header needs <n> <count> <q>", lineno)
    n, count, q = _ints(toks, lineno, "header value")
    eweights = None
    sweights = None
    while rest and rest[0][1].split()[0] in ("eweights", "sweights"):
        lno, line = rest.pop(0)
        key, vals = line.split()[0], _ints(line.split()[1:], lno, "weight")
        if key == "eweights":
            if eweights is not None:
                raise FormatError("duplicate eweights line", lno)
            if len(vals) != n:
                raise FormatError("eweights has %d entries, n=%d" % (len(vals), n), lno)
            eweights = vals
        else:
            if sweights is not None:
                raise FormatError("duplicate sweights line", lno)
            if len(vals) != count:
                raise FormatError("sweights has %d entries, count=%d" % (len(vals), count), lno)
            sweights = vals
    sets = []
    for lno, line in rest:
        vals = _ints(line.split(), lno, "element")
        if len(vals) != q:
            raise FormatError("set has %d elements, q=%d" % (len(vals), q), lno)
        if any(v < 1 or v > n for v in vals):
            raise FormatError("element outside 1..%d" % n, lno)
        sets.append(tuple(v - 1 for v in vals))
    if len(sets) != count:
        raise FormatError("header promises %d sets, found %d" % (count, len(sets)), lineno)
    return set_family_instance(n, sets, r, p,
                               element_weights=eweights, set_weights=sweights)


def parse_fraction(text: str) -> Fraction:
    """CLI helper: '1/2', '0.25' and '0' all work."""
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise FormatError("bad fraction %r" % text)
