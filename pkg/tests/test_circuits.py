"""Circuit parsing, evaluation, and the truncated-polynomial ring."""

import numpy as np
import pytest

from multisep.circuits import (
    Circuit,
    TruncatedPolynomial,
    evaluate,
    parse_circuit,
    print_circuit,
    symbolic_expand,
)
from multisep.errors import BudgetExceeded, CircuitError, ParameterError

SQUARE = "g1 = var x1\ng2 = var x2\ng3 = add g1 g2\ng4 = mul g3 g3\noutput g4\n"


def test_parse_three_gate_example():
    c = parse_circuit("g1 = var x1\ng2 = var x2\ng3 = add g1 g2\noutput g3")
    assert c.n == 2 and c.size == 3
    assert c.gates == (("var", 0), ("var", 1), ("add", 0, 1))
    assert c.output == 2


def test_subtraction_and_self_reference_rejected():
    with pytest.raises(CircuitError) as ei:
        parse_circuit("g1 = sub g1 g1\noutput g1")
    assert ei.value.code == "subtraction"


def test_error_codes():
    cases = [
        ("g1 = add g7 g7\noutput g1", "undefined"),
        ("g1 = var x1\ng1 = var x1\noutput g1", "duplicate"),
        ("g1 = const 3\noutput g1", "constant"),
        ("g1 = var x1\ng2 = add g1\noutput g2", "fanin"),
        ("g1 = var x1\n", "output"),
        ("g1 = var x0\noutput g1", "variable"),
        ("nonsense\n", "syntax"),
    ]
    for text, code in cases:
        with pytest.raises(CircuitError) as ei:
            parse_circuit(text)
        assert ei.value.code == code, text


def test_comments_and_blank_lines():
    c = parse_circuit("# a comment\n\ng1 = var x1  # trailing\noutput g1\n")
    assert c.size == 1


def random_circuit(rng, n_vars=3, extra_gates=6):
    gates = [("var", int(rng.integers(0, n_vars))) for _ in range(n_vars)]
    # make sure every variable appears
    for i in range(n_vars):
        gates[i] = ("var", i)
    for _ in range(extra_gates):
        op = "add" if rng.random() < 0.5 else "mul"
        a = int(rng.integers(0, len(gates)))
        b = int(rng.integers(0, len(gates)))
        gates.append((op, a, b))
    return Circuit(n_vars, tuple(gates), len(gates) - 1)


def test_round_trip_thousand_gates():
    rng = np.random.default_rng(1)
    c = random_circuit(rng, n_vars=4, extra_gates=996)
    assert c.size == 1000
    text = print_circuit(c)
    c2 = parse_circuit(text)
    assert c2 == c
    assert print_circuit(c2) == text


def test_round_trip_corpus():
    rng = np.random.default_rng(2)
    for _ in range(30):
        c = random_circuit(rng, n_vars=int(rng.integers(1, 5)),
                           extra_gates=int(rng.integers(0, 9)))
        assert parse_circuit(print_circuit(c)) == c


def test_evaluate_square():
    c = parse_circuit(SQUARE)
    assert evaluate(c, (1, 2)) == 9
    assert evaluate(c, (1, 2), modulus=5) == 4


def test_evaluate_single_leaf():
    c = parse_circuit("g1 = var x1\noutput g1")
    assert evaluate(c, (42,)) == 42


def test_evaluate_matches_expansion():
    rng = np.random.default_rng(9)
    for _ in range(100):
        c = random_circuit(rng, n_vars=3, extra_gates=int(rng.integers(0, 7)))
        vals = tuple(int(v) for v in rng.integers(-3, 4, size=3))
        poly = symbolic_expand(c)
        assert evaluate(c, vals) == poly.substitute_eval(vals)


def test_expand_square():
    c = parse_circuit(SQUARE)
    poly = symbolic_expand(c)
    assert poly.terms == {(2, 0): 1, (1, 1): 2, (0, 2): 1}


def test_expand_with_caps():
    c = parse_circuit(SQUARE)
    poly = symbolic_expand(c, r_cap=1, k_cap=2)
    assert poly.terms == {(1, 1): 2}


def test_expand_term_budget_names_gate():
    c = parse_circuit(SQUARE)
    with pytest.raises(BudgetExceeded) as ei:
        symbolic_expand(c, term_budget=1)
    assert "gate g" in str(ei.value)


def test_truncation_is_a_homomorphism():
    # expanding with caps gate-wise equals truncating the full expansion
    rng = np.random.default_rng(33)
    for _ in range(60):
        c = random_circuit(rng, n_vars=3, extra_gates=int(rng.integers(0, 7)))
        full = symbolic_expand(c)
        for r_cap, k_cap in ((1, 2), (2, 3), (1, 4), (2, None)):
            gatewise = symbolic_expand(c, r_cap=r_cap, k_cap=k_cap)
            assert gatewise.terms == full.truncate(r_cap, k_cap).terms


def test_non_canceling_coefficients_positive():
    rng = np.random.default_rng(44)
    for _ in range(40):
        c = random_circuit(rng, n_vars=3, extra_gates=int(rng.integers(0, 8)))
        poly = symbolic_expand(c)
        assert poly.is_nonnegative()
        assert all(v > 0 for v in poly.terms.values())
        # evaluating at all-ones counts monomials with multiplicity
        assert evaluate(c, (1, 1, 1)) == sum(poly.terms.values())


def test_polynomial_ring_basics():
    x = TruncatedPolynomial.variable(2, 0, var_cap=2, total_cap=3)
    y = TruncatedPolynomial.variable(2, 1, var_cap=2, total_cap=3)
    p = (x + y) * (x + y)
    assert p.coefficient((1, 1)) == 2
    q = p * x  # x^3 dies at var_cap 2, x^2 y and x y^2 survive
    assert q.terms == {(2, 1): 2, (1, 2): 1}
    z = TruncatedPolynomial.zero(2, var_cap=2, total_cap=3)
    assert not z and (p + z).terms == p.terms


def test_polynomial_cap_mismatch():
    a = TruncatedPolynomial.variable(2, 0, var_cap=1)
    b = TruncatedPolynomial.variable(2, 0, var_cap=2)
    with pytest.raises(ParameterError):
        a + b


def test_circuit_structural_validation():
    with pytest.raises(ParameterError):
        Circuit(1, (("add", 0, 0),), 0)  # input does not precede gate
    with pytest.raises(ParameterError):
        Circuit(1, (("var", 0),), 3)  # bad output index
