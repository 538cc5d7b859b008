"""Release gate: one test per acceptance criterion, one pass/fail line each.

Every criterion builds its own corpus, runs the library side and an
independent brute-force side, and prints a single summary line.  Corpus
seeds are frozen so reruns see the same instances.
"""

import itertools
import json
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from multisep.circuits import Circuit, symbolic_expand
from multisep.cli import DEFAULT_GRID, _bench_separators, cli_dispatch
from multisep.graphs import graph
from multisep.multiset import WeightedUniverse
from multisep.oracles import (
    oracle_degree_bounded_tree,
    oracle_hamiltonian_path,
    oracle_monomial_min_weight,
    oracle_monomial_witness,
    oracle_packing,
    oracle_r_simple_k_path,
    oracle_spanning_trees,
)
from multisep.repsets import (
    compute_representative,
    family_bullet,
    family_union,
    make_family,
    representative_separator,
    trim,
    verify_representative,
)
from multisep.separating import build_minimal_separating, verify_minimal_separating
from multisep.separator import build_multiset_separator, verify_multiset_separator
from multisep.solvers import (
    set_family_instance,
    solve_monomial_detection,
    solve_r_simple_k_path,
    solve_r_simple_k_path_edge_weighted,
    solve_rpq_packing,
)
from multisep.spantree import (
    hardness_gadget,
    kirchhoff_polynomial,
    solve_degree_bounded_spanning_tree,
)


def _report(num, slug, violations, detail, elapsed, limit):
    status = "PASS" if not violations else "FAIL"
    print("[criterion %02d] %s  %s  (%s, %.1fs)" % (num, status, slug, detail, elapsed))
    assert not violations, violations[:5]
    assert elapsed < limit, "exceeded %ds budget: %.1fs" % (limit, elapsed)


# ---------------------------------------------------------------------------
# corpus generators (shared shapes with the unit suites)


def random_digraph(rng, n, p=0.4, wspan=9, arc_weights=False):
    edges = [(u, v) for u in range(n) for v in range(n)
             if u != v and rng.random() < p]
    vw = rng.integers(0, wspan, size=n).tolist()
    ew = rng.integers(0, wspan, size=len(edges)).tolist() if arc_weights else None
    return graph(n, edges, directed=True, vweights=vw, eweights=ew)


def random_family(rng, n, r, k, max_members=50):
    m = int(rng.integers(1, max_members + 1))
    rows = []
    for _ in range(m):
        while True:
            row = rng.integers(0, r + 1, size=n)
            if 1 <= row.sum() <= k:
                rows.append(row)
                break
    weights = rng.integers(0, 12, size=m)
    return make_family(WeightedUniverse((0,) * n), r, k, np.array(rows), weights)


def random_setfam(rng, set_weighted=False):
    n = int(rng.integers(2, 9))
    q = int(rng.integers(1, min(n, 3) + 1))
    m = int(rng.integers(1, 7))
    sets = [tuple(sorted(rng.choice(n, size=q, replace=False).tolist()))
            for _ in range(m)]
    r = int(rng.integers(1, 3))
    p = int(rng.integers(1, 4))
    if set_weighted:
        # keep the private-element reduction inside separator range
        if n + m > {1: 14, 2: 9}[r]:
            return None
        return set_family_instance(n, sets, r, p,
                                   set_weights=rng.integers(0, 9, size=m).tolist())
    return set_family_instance(n, sets, r, p,
                               element_weights=rng.integers(0, 9, size=n).tolist())


def random_circuit(rng, n_vars, extra):
    gates = [("var", i) for i in range(n_vars)]
    for _ in range(extra):
        op = "add" if rng.random() < 0.5 else "mul"
        gates.append((op, int(rng.integers(0, len(gates))),
                      int(rng.integers(0, len(gates)))))
    return Circuit(n_vars, tuple(gates), len(gates) - 1)


def all_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield mask, pairs, [pairs[i] for i in range(len(pairs)) if mask >> i & 1]


# ---------------------------------------------------------------------------


def test_criterion_01_minimal_separating_families():
    t0 = time.perf_counter()
    bad = []
    combos = 0
    for n in range(1, 9):
        for t in range(1, 4):
            for k in range(t, 6):
                if t > n:
                    continue
                msf = build_minimal_separating(n, t, k)
                if not verify_minimal_separating(msf):
                    bad.append((n, t, k))
                combos += 1
    _report(1, "minimal separating families exhaustive", bad,
            "%d (n,t,k) combos" % combos, time.perf_counter() - t0, 120)


def test_criterion_02_multiset_separators():
    t0 = time.perf_counter()
    bad = []
    staged = indicator = 0
    for n in range(1, 4):
        for r in (2, 3):
            for k in range(r, 5):
                sep = build_multiset_separator(n, r, k)
                H = build_minimal_separating(max(n, sep.t), sep.t, k)
                if sep.pre_dedup_count != len(H) * (r + 1) ** sep.t:
                    bad.append(("pre-dedup", n, r, k))
                if not verify_multiset_separator(sep):
                    bad.append(("verify", n, r, k))
                staged += 1
    for n in range(1, 7):
        for k in range(1, 5):
            sep = build_multiset_separator(n, 1, k)
            if not verify_multiset_separator(sep):
                bad.append(("verify", n, 1, k))
            indicator += 1
    _report(2, "multiset separators exhaustive + exact pre-dedup count", bad,
            "%d staged, %d indicator builds" % (staged, indicator),
            time.perf_counter() - t0, 300)


def test_criterion_03_representative_families():
    t0 = time.perf_counter()
    rng = np.random.default_rng(303)
    bad = []
    with_full = 0
    for trial in range(200):
        n = int(rng.integers(1, 4))
        r = int(rng.integers(1, 3))
        k = int(rng.integers(1, 5))
        sep = representative_separator(n, r, k)
        p = random_family(rng, n, r, k)
        out = trim(p, sep)
        if not verify_representative(p, out):
            bad.append(("represent", trial))
        if len(out) > k * len(sep):
            bad.append(("size-bound", trial))
        full = p.sizes == k
        if full.any():
            with_full += 1
            kept = out.sizes == k
            if not kept.any() or int(out.weights[kept].min()) > int(p.weights[full].min()):
                bad.append(("size-k-member", trial))
    _report(3, "trim represents, size bound, size-k member survives", bad,
            "200 families, %d with a full-size member" % with_full,
            time.perf_counter() - t0, 300)


def test_criterion_04_union_and_bullet_lemmas():
    t0 = time.perf_counter()
    rng = np.random.default_rng(404)
    bad = []
    for trial in range(200):
        n = int(rng.integers(1, 4))
        r = int(rng.integers(1, 3))
        k = int(rng.integers(1, 5))
        a = random_family(rng, n, r, k)
        b = random_family(rng, n, r, k)
        ra, rb = compute_representative(a), compute_representative(b)
        if not verify_representative(family_union(a, b), family_union(ra, rb)):
            bad.append(("union", trial))
        if not verify_representative(family_bullet(a, b), family_bullet(ra, rb)):
            bad.append(("bullet", trial))
    _report(4, "rep(A) u rep(B) represents A u B; same for the bullet product",
            bad, "200 family pairs", time.perf_counter() - t0, 300)


def _check_path_witness(g, r, k, res, bad, tag):
    wit = res.witness
    if wit is None or len(wit) != k:
        bad.append((tag, "witness-shape"))
        return
    arcs = {(u, v): e for e, (u, v) in enumerate(g.edges)}
    if not g.directed:
        arcs.update({(v, u): e for e, (u, v) in enumerate(g.edges)})
    w = 0
    for a, b in zip(wit, wit[1:]):
        if (a, b) not in arcs:
            bad.append((tag, "not-an-arc"))
            return
        if g.eweights is not None:
            w += g.edge_weight(arcs[(a, b)])
    if any(wit.count(v) > r for v in set(wit)):
        bad.append((tag, "multiplicity"))
    if g.eweights is None:
        w = sum(g.vertex_weight(v) for v in wit)
    if k > 1 and w != res.weight:
        bad.append((tag, "weight-mismatch"))


def test_criterion_05_r_simple_k_path():
    t0 = time.perf_counter()
    rng = np.random.default_rng(50151)
    bad = []
    found = 0
    for trial in range(100):
        n = int(rng.integers(2, 8))
        g = random_digraph(rng, n, p=float(rng.choice([0.3, 0.45, 0.6])))
        r = int(rng.integers(1, 4))
        k = int(rng.integers(1, 9))
        want = oracle_r_simple_k_path(g, r, k)
        res = solve_r_simple_k_path(g, r, k)
        if res.found != (want is not None):
            bad.append(("decision", trial, n, r, k))
            continue
        if res.found:
            found += 1
            if res.weight != want:
                bad.append(("weight", trial))
            _check_path_witness(g, r, k, res, bad, ("vertex", trial))
    done = 0
    while done < 50:
        n = int(rng.integers(2, 5))
        g = random_digraph(rng, n, p=0.5, arc_weights=True)
        r = int(rng.integers(1, 3))
        if n + 2 * g.m > {1: 14, 2: 9}[r]:
            continue
        k = int(rng.integers(2, 5))
        want = oracle_r_simple_k_path(g, r, k, weight_mode="arc")
        res = solve_r_simple_k_path_edge_weighted(g, r, k)
        if res.found != (want is not None):
            bad.append(("ew-decision", done, n, r, k))
        elif res.found:
            if res.weight != want:
                bad.append(("ew-weight", done))
            _check_path_witness(g, r, k, res, bad, ("arc", done))
        done += 1
    _report(5, "path solver equals walk oracle, witnesses re-validate", bad,
            "100 digraphs (%d found) + 50 arc-weighted" % found,
            time.perf_counter() - t0, 600)


def test_criterion_06_rpq_packing():
    t0 = time.perf_counter()
    rng = np.random.default_rng(606)
    bad = []
    found = 0
    for trial in range(100):
        inst = random_setfam(rng)
        want = oracle_packing(inst)
        res = solve_rpq_packing(inst)
        if res.found != (want is not None):
            bad.append(("decision", trial))
        elif res.found:
            found += 1
            if res.weight != want:
                bad.append(("weight", trial))
            cover = [0] * inst.n
            for j in res.witness:
                for x in inst.sets[j]:
                    cover[x] += 1
            if len(set(res.witness)) != inst.p or max(cover) > inst.r:
                bad.append(("witness", trial))
    done = 0
    while done < 50:
        inst = random_setfam(rng, set_weighted=True)
        if inst is None:
            continue
        want = oracle_packing(inst)
        res = solve_rpq_packing(inst)
        if res.found != (want is not None):
            bad.append(("sw-decision", done))
        elif res.found and res.weight != want:
            bad.append(("sw-weight", done))
        done += 1
    _report(6, "packing solver equals subset oracle incl. set weights", bad,
            "100 instances (%d found) + 50 set-weighted" % found,
            time.perf_counter() - t0, 600)


def test_criterion_07_monomial_detection():
    t0 = time.perf_counter()
    rng = np.random.default_rng(707)
    bad = []
    found = 0
    for trial in range(200):
        nv = int(rng.integers(1, 5))
        c = random_circuit(rng, nv, int(rng.integers(0, 11 - nv)))
        r = int(rng.integers(1, 3))
        k = int(rng.integers(1, 5))
        want = oracle_monomial_witness(c, r, k)
        res = solve_monomial_detection(c, r, k)
        if res.found != (want is not None):
            bad.append(("decision", trial))
            continue
        if res.found:
            found += 1
            poly = symbolic_expand(c, r_cap=r)
            if sum(res.witness) != k or max(res.witness) > r \
                    or poly.coefficient(res.witness) <= 0:
                bad.append(("witness", trial))
        weights = rng.integers(0, 9, size=nv).tolist()
        wat = oracle_monomial_min_weight(c, r, k, weights)
        wres = solve_monomial_detection(c, r, k, variable_weights=weights)
        if wres.found != (wat is not None):
            bad.append(("w-decision", trial))
        elif wres.found and wres.weight != wat[0]:
            bad.append(("w-weight", trial))
        # truncating a coarser expansion must equal expanding at the caps
        hi = symbolic_expand(c, r_cap=2, k_cap=6)
        if hi.truncate(r, k) != symbolic_expand(c, r_cap=r, k_cap=k):
            bad.append(("homomorphism", trial))
    _report(7, "monomial detection equals expansion, truncation homomorphism",
            bad, "200 circuits (%d found)" % found, time.perf_counter() - t0, 600)


def test_criterion_08_matrix_tree_theorem():
    t0 = time.perf_counter()
    bad = []
    count = 0
    for n in range(1, 6):
        for mask, _pairs, edges in all_graphs(n):
            g = graph(n, edges, directed=False)
            poly = kirchhoff_polynomial(g)
            want = {}
            for combo, _deg in oracle_spanning_trees(g):
                key = [0] * max(g.m, 1)
                for e in combo:
                    key[e] = 1
                want[tuple(key)] = 1
            if n == 1:
                want = {(0,): 1}
            if poly.terms != want:
                bad.append(("terms", n, mask))
            for root in range(1, n):
                if kirchhoff_polynomial(g, root) != poly:
                    bad.append(("cofactor", n, mask, root))
            count += 1
    _report(8, "Kirchhoff polynomial matches tree enumeration, all cofactors",
            bad, "%d graphs on <= 5 vertices" % count, time.perf_counter() - t0, 300)


def test_criterion_09_degree_bounded_spanning_tree():
    t0 = time.perf_counter()
    bad = []
    checks = 0
    for n in range(3, 7):
        pairs = list(itertools.combinations(range(n), 2))
        pos = {pq: i for i, pq in enumerate(pairs)}
        kn = graph(n, pairs, directed=False)
        catalog = oracle_spanning_trees(kn)
        tree_masks = np.array(
            [sum(1 << e for e in combo) for combo, _ in catalog], dtype=np.int64)
        tree_maxdeg = np.array([max(deg) for _, deg in catalog], dtype=np.int64)
        for mask, _pairs, edges in all_graphs(n):
            sub = np.bitwise_and(tree_masks, mask) == tree_masks
            best = int(tree_maxdeg[sub].min()) if sub.any() else None
            g = graph(n, edges, directed=False)
            want_witness = n <= 5
            for d in range(2, n):
                res = solve_degree_bounded_spanning_tree(
                    g, d, want_witness=want_witness)
                if res.found != (best is not None and best <= d):
                    bad.append(("decision", n, mask, d))
                    continue
                if want_witness and res.found:
                    deg = g.undirected_degrees(res.tree)
                    tm = sum(1 << pos[g.edges[e]] for e in res.tree)
                    if len(res.tree) != n - 1 or max(deg) > d \
                            or tm not in set(tree_masks[sub].tolist()):
                        bad.append(("witness", n, mask, d))
                checks += 1
    eq = 0
    for n in range(1, 6):
        for mask, _pairs, edges in all_graphs(n):
            g = graph(n, edges, directed=False)
            ham = oracle_hamiltonian_path(g)
            for d in (2, 3, 4):
                lhs, _ = oracle_degree_bounded_tree(hardness_gadget(g, d), d)
                if lhs != ham:
                    bad.append(("gadget", n, mask, d))
                eq += 1
    _report(9, "spanning-tree solver vs catalog, gadget equals Hamiltonian path",
            bad, "%d solver checks + %d gadget checks" % (checks, eq),
            time.perf_counter() - t0, 600)


# ---------------------------------------------------------------------------
# determinism (fresh interpreters, forced distinct hash seeds)


def _scrub(doc):
    if isinstance(doc, dict):
        return {k: _scrub(v) for k, v in sorted(doc.items())
                if not k.endswith("_ms")}
    if isinstance(doc, list):
        return [_scrub(v) for v in doc]
    return doc


def _cli_subprocess(argv, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    out = subprocess.run([sys.executable, "-m", "multisep.cli"] + argv,
                         capture_output=True, text=True, env=env)
    assert out.returncode == 0, (argv, out.stderr)
    text = out.stdout
    i = text.index("SUMMARY ")
    return text[:i], _scrub(json.loads(text[i + len("SUMMARY "):]))


def test_criterion_10_determinism(tmp_path):
    t0 = time.perf_counter()
    gfile = tmp_path / "g.txt"
    gfile.write_text("graph 2 2 directed\nvweights 1 1\n1 2\n2 1\n")
    ffile = tmp_path / "fam.txt"
    ffile.write_text("wmsfam 2 2 3\nweights 0 0\n2 0 5\n1 1 4\n0 2 3\n1 0 9\n")
    battery = [
        ["msep", "--n", "3", "--r", "2", "--k", "4"],
        ["sepfam", "--n", "5", "--t", "2", "--k", "3"],
        ["universal", "--n", "5", "--p", "2", "--q", "2"],
        ["repset", "--family", str(ffile)],
        ["rpath", "--graph", str(gfile), "--r", "2", "--k", "4"],
        ["bench", "--quick", "--no-kernels"],
    ]
    bad = []
    for argv in battery:
        art1, sum1 = _cli_subprocess(argv, hashseed=1)
        art2, sum2 = _cli_subprocess(argv, hashseed=2)
        if art1 != art2:
            bad.append(("artifact", argv[0]))
        if sum1 != sum2:
            bad.append(("summary", argv[0]))
    _report(10, "re-runs byte-identical modulo timing fields", bad,
            "%d commands, two interpreters each" % len(battery),
            time.perf_counter() - t0, 300)


def test_criterion_11_benchmark_report(capsys):
    t0 = time.perf_counter()
    rows, c, monotone = _bench_separators(DEFAULT_GRID)
    bad = []
    if len(rows) != len(DEFAULT_GRID):
        bad.append("grid")
    for row in rows:
        if not all(key in row for key in ("size", "pre_dedup", "model", "ratio", "t")):
            bad.append(("fields", row.get("n"), row.get("r"), row.get("k")))
        if row["ratio"] <= 0:
            bad.append(("ratio", row))
    if not np.isfinite(c):
        bad.append("fitted-constant")
    if not monotone:
        bad.append("size-increases-in-r")
    status = cli_dispatch(["bench", "--no-kernels"])
    out = capsys.readouterr().out
    if status != 0 or "separator_sweep" not in out:
        bad.append("cli-report")
    _report(11, "bench report fits model, size non-increasing in r", bad,
            "grid of %d points, fitted c=%.2f" % (len(rows), c),
            time.perf_counter() - t0, 600)
