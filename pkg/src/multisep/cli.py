"""Command-line frontend, exit-status mapping, and the benchmark harness.

Exit statuses (part of the tested contract):

  0  success, including found=false / verified=false answers
  1  internal failure
  2  usage error (unknown command, bad flag, out-of-range parameter)
  3  input file failed to parse
  4  an exhaustive check or enumeration refused to exceed its budget

Every run ends with a single machine-readable summary line on stdout,
`SUMMARY {json}`, with sorted keys.  The wall_time_ms field is the only one
allowed to differ between identical runs.
"""

import argparse
import hashlib
import json
import math
import sys
import time

import numpy as np

from . import formats, kernels
from .budget import resolve_budget
from .circuits import parse_circuit
from .errors import BudgetExceeded, FormatError, MultisepError
from .multiset import packed_width
from .oracles import (
    oracle_degree_bounded_tree,
    oracle_monomial_min_weight,
    oracle_monomial_witness,
    oracle_packing,
    oracle_r_simple_k_path,
)
from .repsets import compute_representative, representative_separator, verify_representative
from .separating import (
    build_lopsided_universal,
    build_minimal_separating,
    verify_lopsided,
    verify_minimal_separating,
)
from .separator import build_multiset_separator, verify_multiset_separator
from .solvers import (
    solve_monomial_detection,
    solve_r_simple_k_path,
    solve_r_simple_k_path_edge_weighted,
    solve_rpq_packing,
)
from .spantree import hardness_gadget, solve_degree_bounded_spanning_tree

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_BUDGET = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so dispatch controls status."""

    def error(self, message):
        raise _UsageError(message)


def _digest(parts) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(part.encode() if isinstance(part, str) else part)
        h.update(b"\0")
    return h.hexdigest()[:16]


def _summary(command, parameters, digest, answer, witness=None, layer_sizes=None,
             wall_time_ms=0.0, extra=None):
    doc = {
        "command": command,
        "parameters": parameters,
        "digest": digest,
        "answer": answer,
        "witness": witness,
        "layer_sizes": layer_sizes,
        "wall_time_ms": round(wall_time_ms, 3),
    }
    if extra:
        doc.update(extra)
    return doc


def _emit(out, artifact, doc):
    if artifact is not None:
        if out:
            with open(out, "w") as fh:
                fh.write(artifact)
        else:
            sys.stdout.write(artifact)
    sys.stdout.write("SUMMARY " + json.dumps(doc, sort_keys=True) + "\n")


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _csv_ints(text):
    return [int(t) for t in text.split(",") if t != ""]


def _build_parser() -> _Parser:
    top = _Parser(prog="multisep", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sepfam", help="build a minimal separating family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("universal", help="build a lopsided universal set family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("msep", help="build a multiset separator")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("repset", help="trim a weighted multiset family")
    p.add_argument("--family", required=True, help="wmsfam file")
    p.add_argument("--sep", help="msep file; defaults to a built separator")
    p.add_argument("--out")

    p = sub.add_parser("rpath", help="r-simple k-path")
    p.add_argument("--graph", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--weights", choices=("vertex", "edge"), default="vertex")

    p = sub.add_parser("rpack", help="(r,p,q) set packing")
    p.add_argument("--setfam", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("monomial", help="(r,k)-monomial detection")
    p.add_argument("--circuit", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--weights", help="comma-separated per-variable weights")

    p = sub.add_parser("dbst", help="degree-bounded spanning tree")
    p.add_argument("--graph", required=True)
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("gadget", help="degree-d hardness gadget graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("verify", help="run an exhaustive checker")
    vs = p.add_subparsers(dest="subject", required=True)
    v = vs.add_parser("sepfam")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--t", type=int, required=True)
    v.add_argument("--k", type=int, required=True)
    v = vs.add_parser("universal")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--q", type=int, required=True)
    v = vs.add_parser("msep")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--r", type=int, required=True)
    v.add_argument("--k", type=int, required=True)
    v = vs.add_parser("repset")
    v.add_argument("--family", required=True)

    p = sub.add_parser("oracle", help="run a brute-force reference solver")
    os_ = p.add_subparsers(dest="subject", required=True)
    o = os_.add_parser("rpath")
    o.add_argument("--graph", required=True)
    o.add_argument("--r", type=int, required=True)
    o.add_argument("--k", type=int, required=True)
    o.add_argument("--weights", choices=("vertex", "edge"), default="vertex")
    o = os_.add_parser("rpack")
    o.add_argument("--setfam", required=True)
    o.add_argument("--r", type=int, required=True)
    o.add_argument("--p", type=int, required=True)
    o = os_.add_parser("monomial")
    o.add_argument("--circuit", required=True)
    o.add_argument("--r", type=int, required=True)
    o.add_argument("--k", type=int, required=True)
    o.add_argument("--weights")
    o = os_.add_parser("dbst")
    o.add_argument("--graph", required=True)
    o.add_argument("--d", type=int, required=True)

    p = sub.add_parser("bench", help="separator-size sweep + kernel timing")
    p.add_argument("--points", help="semicolon list of n,r,k triples")
    p.add_argument("--quick", action="store_true", help="smallest grid only")
    p.add_argument("--no-kernels", action="store_true")

    return top


# ---------------------------------------------------------------------------
# command handlers: return (parameters, digest, answer, witness, layers, artifact)


def _run_sepfam(a):
    msf = build_minimal_separating(a.n, a.t, a.k)
    art = formats.write_function_family(msf.family)
    params = {"n": a.n, "t": a.t, "k": a.k}
    return params, _digest([repr(sorted(params.items()))]), {"size": len(msf)}, None, None, art


def _run_universal(a):
    usf = build_lopsided_universal(a.n, a.p, a.q)
    params = {"n": a.n, "p": a.p, "q": a.q}
    return (params, _digest([repr(sorted(params.items()))]),
            {"size": len(usf.sets)}, None, None, formats.write_universal_family(usf))


def _run_msep(a):
    sep = build_multiset_separator(a.n, a.r, a.k)
    params = {"n": a.n, "r": a.r, "k": a.k}
    answer = {"size": len(sep), "pre_dedup": sep.pre_dedup_count, "kind": sep.kind}
    return params, _digest([repr(sorted(params.items()))]), answer, None, None, formats.write_msep(sep)


def _run_repset(a):
    text = _read(a.family)
    fam = formats.read_wmsfam(text)
    material = [text]
    if a.sep:
        sep_text = _read(a.sep)
        sep = formats.read_msep(sep_text)
        material.append(sep_text)
    else:
        sep = representative_separator(fam.n, fam.r, fam.k)
    trimmed = compute_representative(fam, sep)
    params = {"family": a.family, "sep": a.sep}
    answer = {"orig": len(fam), "trimmed": len(trimmed), "sep_size": len(sep)}
    return params, _digest(material), answer, None, None, formats.write_wmsfam(trimmed)


def _run_rpath(a):
    text = _read(a.graph)
    g = formats.read_graph(text)
    if a.weights == "edge":
        res = solve_r_simple_k_path_edge_weighted(g, a.r, a.k)
    else:
        res = solve_r_simple_k_path(g, a.r, a.k)
    params = {"graph": a.graph, "r": a.r, "k": a.k, "weights": a.weights}
    answer = {"found": res.found, "weight": res.weight}
    witness = None if res.witness is None else [v + 1 for v in res.witness]
    return params, _digest([text]), answer, witness, res.stats.get("layer_sizes"), None


def _run_rpack(a):
    text = _read(a.setfam)
    inst = formats.read_setfam(text, a.r, a.p)
    res = solve_rpq_packing(inst)
    params = {"setfam": a.setfam, "r": a.r, "p": a.p}
    answer = {"found": res.found, "weight": res.weight}
    witness = None if res.witness is None else [j + 1 for j in res.witness]
    return params, _digest([text]), answer, witness, res.stats.get("layer_sizes"), None


def _run_monomial(a):
    text = _read(a.circuit)
    c = parse_circuit(text)
    weights = _csv_ints(a.weights) if a.weights else None
    res = solve_monomial_detection(c, a.r, a.k, variable_weights=weights)
    params = {"circuit": a.circuit, "r": a.r, "k": a.k, "weights": a.weights}
    answer = {"found": res.found, "weight": res.weight}
    witness = None if res.witness is None else list(res.witness)
    return params, _digest([text]), answer, witness, res.stats.get("layer_sizes"), None


def _run_dbst(a):
    text = _read(a.graph)
    g = formats.read_graph(text)
    res = solve_degree_bounded_spanning_tree(g, a.d)
    params = {"graph": a.graph, "d": a.d}
    answer = {"found": res.found}
    witness = None
    if res.tree is not None:
        witness = [[g.edges[e][0] + 1, g.edges[e][1] + 1] for e in res.tree]
    return params, _digest([text]), answer, witness, None, None


def _run_gadget(a):
    text = _read(a.graph)
    g = formats.read_graph(text)
    g2 = hardness_gadget(g, a.d)
    params = {"graph": a.graph, "d": a.d}
    answer = {"n": g2.n, "m": g2.m}
    return params, _digest([text]), answer, None, None, formats.write_graph(g2)


def _run_verify(a):
    budget = resolve_budget(None)
    if a.subject == "sepfam":
        obj = build_minimal_separating(a.n, a.t, a.k)
        ok = verify_minimal_separating(obj, budget)
        params = {"subject": "sepfam", "n": a.n, "t": a.t, "k": a.k}
    elif a.subject == "universal":
        obj = build_lopsided_universal(a.n, a.p, a.q)
        ok = verify_lopsided(obj, budget)
        params = {"subject": "universal", "n": a.n, "p": a.p, "q": a.q}
    elif a.subject == "msep":
        obj = build_multiset_separator(a.n, a.r, a.k)
        ok = verify_multiset_separator(obj, budget)
        params = {"subject": "msep", "n": a.n, "r": a.r, "k": a.k}
    else:
        text = _read(a.family)
        fam = formats.read_wmsfam(text)
        trimmed = compute_representative(fam)
        ok = verify_representative(fam, trimmed, budget)
        params = {"subject": "repset", "family": a.family}
    return params, _digest([repr(sorted(params.items()))]), {"verified": bool(ok)}, None, None, None


def _run_oracle(a):
    if a.subject == "rpath":
        text = _read(a.graph)
        g = formats.read_graph(text)
        mode = "arc" if a.weights == "edge" else "vertex"
        w = oracle_r_simple_k_path(g, a.r, a.k, weight_mode=mode)
        params = {"subject": "rpath", "graph": a.graph, "r": a.r, "k": a.k,
                  "weights": a.weights}
        return params, _digest([text]), {"found": w is not None, "weight": w}, None, None, None
    if a.subject == "rpack":
        text = _read(a.setfam)
        inst = formats.read_setfam(text, a.r, a.p)
        w = oracle_packing(inst)
        params = {"subject": "rpack", "setfam": a.setfam, "r": a.r, "p": a.p}
        return params, _digest([text]), {"found": w is not None, "weight": w}, None, None, None
    if a.subject == "monomial":
        text = _read(a.circuit)
        c = parse_circuit(text)
        params = {"subject": "monomial", "circuit": a.circuit, "r": a.r, "k": a.k,
                  "weights": a.weights}
        if a.weights:
            got = oracle_monomial_min_weight(c, a.r, a.k, _csv_ints(a.weights))
            answer = {"found": got is not None,
                      "weight": None if got is None else got[0]}
            witness = None if got is None else list(got[1])
        else:
            key = oracle_monomial_witness(c, a.r, a.k)
            answer = {"found": key is not None, "weight": None}
            witness = None if key is None else list(key)
        return params, _digest([text]), answer, witness, None, None
    text = _read(a.graph)
    g = formats.read_graph(text)
    found, combo = oracle_degree_bounded_tree(g, a.d)
    params = {"subject": "dbst", "graph": a.graph, "d": a.d}
    witness = None
    if combo is not None:
        witness = [[g.edges[e][0] + 1, g.edges[e][1] + 1] for e in combo]
    return params, _digest([text]), {"found": found}, witness, None, None


# ---------------------------------------------------------------------------
# benchmark harness


DEFAULT_GRID = (
    (8, 3, 5), (8, 5, 5), (8, 4, 6), (8, 5, 6),
    (12, 3, 5), (12, 5, 5), (12, 4, 6), (12, 5, 6),
)
QUICK_GRID = ((8, 3, 5), (8, 5, 5))


def _fit_constant(points):
    """Least-squares c in log2(size) = (6k/r)log2(r) + c(k/r) + log2(log2 n)."""
    num = den = 0.0
    for n, r, k, size in points:
        b = k / r
        a = math.log2(size) - (6 * k / r) * math.log2(r) - math.log2(math.log2(max(n, 2)))
        num += a * b
        den += b * b
    return num / den if den else 0.0


def _bench_separators(grid):
    rows = []
    for n, r, k in grid:
        t0 = time.perf_counter()
        sep = build_multiset_separator(n, r, k)
        ms = (time.perf_counter() - t0) * 1000.0
        rows.append({
            "n": n, "r": r, "k": k, "t": 2 * k // r,
            "size": len(sep), "pre_dedup": sep.pre_dedup_count,
            "build_ms": round(ms, 3),
        })
    c = _fit_constant([(row["n"], row["r"], row["k"], row["size"]) for row in rows])
    for row in rows:
        n, r, k = row["n"], row["r"], row["k"]
        model = (r ** (6 * k / r)) * (2 ** (c * k / r)) * math.log2(max(n, 2))
        row["model"] = round(model, 1)
        row["ratio"] = round(row["size"] / model, 4)
    by_nk = {}
    for row in rows:
        by_nk.setdefault((row["n"], row["k"]), []).append(row)
    monotone = True
    for pts in by_nk.values():
        pts.sort(key=lambda row: row["r"])
        for prev, cur in zip(pts, pts[1:]):
            if cur["size"] > prev["size"]:
                monotone = False
    return rows, c, monotone


def _bench_kernels(rng):
    """Same packed workload through every available low-level backend."""
    from . import _packedops_py
    impls = [("python", _packedops_py)]
    try:
        from . import _packedops_cy
        impls.append(("cython", _packedops_cy))
    except ImportError:
        pass
    n, r, k = 8, 3, 6
    w = packed_width(r)
    counts = rng.integers(0, r + 1, size=(600, n))
    sizes = counts.sum(axis=1).astype(np.int64)
    keep = (sizes >= 1) & (sizes <= k)
    counts, sizes = counts[keep], sizes[keep]
    weights = rng.integers(0, 50, size=len(counts)).astype(np.int64)
    fam = rng.integers(0, r + 1, size=(200, n))
    packed = kernels.pack_rows(counts, r)
    packed_fam = kernels.pack_rows(fam, r)
    guard = kernels.guard_mask(n, r)
    rmask = kernels.rcap_mask(n, r)
    out = {"active_backend": kernels.backend_name()}
    baseline = None
    for name, impl in impls:
        t0 = time.perf_counter()
        sel = impl.trim_select(packed, sizes, weights, packed_fam, k, guard)
        ia, ib, ps = impl.bullet_pairs(packed, sizes, packed, sizes, k, rmask, guard)
        ms = (time.perf_counter() - t0) * 1000.0
        if baseline is None:
            baseline = (np.asarray(sel).tolist(), np.asarray(ia).tolist(),
                        np.asarray(ib).tolist(), np.asarray(ps).tolist())
        else:
            got = (np.asarray(sel).tolist(), np.asarray(ia).tolist(),
                   np.asarray(ib).tolist(), np.asarray(ps).tolist())
            out["backends_agree"] = got == baseline
        out[name + "_ms"] = round(ms, 3)
    return out


def _run_bench(a):
    if a.points:
        grid = []
        for part in a.points.split(";"):
            n, r, k = _csv_ints(part)
            grid.append((n, r, k))
        grid = tuple(grid)
    else:
        grid = QUICK_GRID if a.quick else DEFAULT_GRID
    rows, c, monotone = _bench_separators(grid)
    extra = {
        "separator_sweep": rows,
        "fitted_c": round(c, 4),
        "size_non_increasing_in_r": monotone,
    }
    if not a.no_kernels:
        extra["kernels"] = _bench_kernels(np.random.default_rng(20240817))
    params = {"points": a.points, "quick": a.quick}
    answer = {"grid": len(grid), "fitted_c": extra["fitted_c"],
              "size_non_increasing_in_r": monotone}
    return params, _digest([repr(grid)]), answer, None, None, None, extra


_HANDLERS = {
    "sepfam": _run_sepfam,
    "universal": _run_universal,
    "msep": _run_msep,
    "repset": _run_repset,
    "rpath": _run_rpath,
    "rpack": _run_rpack,
    "monomial": _run_monomial,
    "dbst": _run_dbst,
    "gadget": _run_gadget,
    "verify": _run_verify,
    "oracle": _run_oracle,
    "bench": _run_bench,
}


def cli_dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write("usage error: %s\n" % exc)
        return EXIT_USAGE

    t0 = time.perf_counter()
    try:
        result = _HANDLERS[args.command](args)
    except FormatError as exc:
        sys.stderr.write("parse error: %s\n" % exc)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        sys.stderr.write("budget refused: %s\n" % exc)
        return EXIT_BUDGET
    except OSError as exc:
        sys.stderr.write("parse error: cannot read input: %s\n" % exc)
        return EXIT_PARSE
    except MultisepError as exc:
        sys.stderr.write("usage error: %s\n" % exc)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - defensive
        sys.stderr.write("internal error: %r\n" % exc)
        return EXIT_INTERNAL
    wall = (time.perf_counter() - t0) * 1000.0

    params, digest, answer, witness, layers, artifact = result[:6]
    extra = result[6] if len(result) > 6 else None
    doc = _summary(args.command, params, digest, answer, witness, layers, wall, extra)
    _emit(getattr(args, "out", None), artifact, doc)
    return EXIT_OK


def main():
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
