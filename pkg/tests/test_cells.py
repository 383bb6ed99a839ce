from itertools import permutations
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from ginfty.cells import (Cell, Chain, ParseError, UnsupportedArity, act, act_chain, boundary, boundary_chain,
                          check_d_squared, check_equivariance, check_leibniz, compose, compose_chains,
                          enumerate_cells, parse_cell, parse_chain, print_cell)
from ginfty.core import InvalidArgument


def catalan(n):
    return comb(2 * n, n) // (n + 1)


# -- parsing and printing

def test_parse_corollas():
    assert parse_cell("d3;1|23").root == ((1,), (2, 3))
    assert parse_cell("d3;21|3").root == ((2, 1), (3,))
    assert parse_cell("d2;12").dim == 0
    assert parse_cell("d2;1|2").dim == 1


def test_parse_composite_and_tau():
    c = parse_cell("(d2 o1 d2);(1|2)o1(12)")
    assert c.root == ((((1, 2),),), (3,))
    assert c.dim == 1
    assert parse_cell("tau(1,2)(d2 o2 d2);(12)o2(1|2)").root == ((2, ((1,), (3,))),)


@pytest.mark.parametrize("text", ["d3;12|", "d3;1|1|3", "d2 12", "d2;1", "d3;1|2"])
def test_parse_errors_report_a_position(text):
    with pytest.raises(ParseError) as e:
        parse_cell(text)
    assert e.value.pos >= 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_print_parse_round_trip(n):
    for c in enumerate_cells(n):
        assert parse_cell(print_cell(c)) == c


def test_parse_chain_round_trip():
    ch = boundary(parse_cell("d3;1|2|3"))
    assert parse_chain(str(ch)) == ch


# -- counting (independent formulas)

@pytest.mark.parametrize("n", [2, 3, 4])
def test_cell_counts(n):
    # corollas: ordered set partitions into nonempty ordered blocks
    assert sum(c.is_corolla for c in enumerate_cells(n)) == factorial(n) * 2 ** (n - 1)
    # 0-cells: planar binary trees with labelled leaves
    assert len(enumerate_cells(n, 0)) == catalan(n - 1) * factorial(n)
    # top cells: all points on distinct lines
    assert len(enumerate_cells(n, 2 * n - 3)) == factorial(n)


def test_cell_totals_regression():
    assert [len(enumerate_cells(n)) for n in (2, 3, 4)] == [4, 72, 2112]
    assert [len(enumerate_cells(4, d)) for d in range(6)] == [120, 480, 744, 552, 192, 24]


def test_arity_limit():
    with pytest.raises(UnsupportedArity):
        enumerate_cells(5)
    with pytest.raises(UnsupportedArity):
        boundary(parse_cell("d5;12345"))
    with pytest.raises(InvalidArgument):
        enumerate_cells(1)


# -- frozen boundaries (cross-checked by the incidence oracle in test_oracle.py)

FROZEN = {
    "d2;1|2": "+1*(d2;12) -1*(d2;21)",
    "d2;12": "0",
    "d3;123": "-1*((d2 o1 d2);(12)o1(12)) +1*((d2 o2 d2);(12)o2(12))",
    "d3;1|2|3": ("+1*(d3;12|3) -1*(d3;21|3) -1*(d3;1|23) +1*(d3;1|32) "
                 "-1*((d2 o1 d2);(1|2)o1(1|2)) -1*((d2 o2 d2);(1|2)o2(1|2))"),
    "d3;1|23": ("-1*(d3;123) +1*(d3;213) -1*(d3;231) -1*((d2 o1 d2);(12)o1(1|2)) "
                "-1*(tau(1,2)(d2 o2 d2);(12)o2(1|2)) +1*((d2 o2 d2);(1|2)o2(12))"),
    "d3;12|3": ("-1*(d3;123) +1*(d3;132) -1*(d3;312) -1*((d2 o1 d2);(1|2)o1(12)) "
                "+1*(tau(2,3)(d2 o1 d2);(12)o1(1|2)) +1*((d2 o2 d2);(12)o2(1|2))"),
}


@pytest.mark.parametrize("cell", sorted(FROZEN))
def test_frozen_boundaries(cell):
    assert str(boundary(parse_cell(cell))) == FROZEN[cell]


def test_boundary_of_composite_by_leibniz():
    c = parse_cell("(d2 o1 d2);(1|2)o1(12)")
    assert str(boundary(c)) == "+1*((d2 o1 d2);(12)o1(12)) -1*(tau(1,2)tau(1,3)(d2 o2 d2);(12)o2(12))"


def test_boundary_of_top_arity4_has_11_terms():
    assert len(boundary(parse_cell("d4;1|2|3|4")).terms) == 11


# -- structural properties

@pytest.mark.parametrize("n", [2, 3, 4])
def test_d_squared(n):
    assert check_d_squared(n).ok


def test_equivariance_and_leibniz_reports():
    assert check_equivariance(3).ok
    assert check_leibniz(4).ok


cells3 = enumerate_cells(3)
cells4 = enumerate_cells(4)


@given(st.sampled_from(cells4), st.permutations([1, 2, 3, 4]))
def test_equivariance_hypothesis(c, p):
    assert boundary(act(p, c)) == act_chain(p, boundary(c))


@given(st.sampled_from(enumerate_cells(2)), st.sampled_from(cells3), st.integers(1, 2))
def test_leibniz_hypothesis(c1, c2, i):
    lhs = boundary_chain(compose(c1, i, c2))
    rhs = compose_chains(boundary(c1), i, Chain.of(c2)).add(
        compose_chains(Chain.of(c1), i, boundary(c2)), (-1) ** c1.dim)
    assert lhs == rhs


def test_action_is_a_left_action():
    c = parse_cell("d3;1|23")
    p, q = [2, 3, 1], [3, 1, 2]
    pq = [p[q[j] - 1] for j in range(3)]
    assert act(p, act(q, c)) == act(pq, c)


def test_corrupted_sign_breaks_d_squared():
    # negative control: flip one face sign and d^2 stops vanishing
    c = parse_cell("d3;1|2|3")
    bad = boundary(c).scale(1)
    face = parse_cell("d3;1|23")
    bad.add_term(face, -2 * bad.terms[face])
    assert not boundary_chain(bad).is_zero()


def test_chain_arithmetic():
    a = Chain.of(parse_cell("d2;12"))
    b = Chain.of(parse_cell("d2;21"))
    assert (a - a).is_zero()
    assert (a + b) - b == a
    with pytest.raises(InvalidArgument):
        a.add(Chain.of(parse_cell("d2;1|2")))
