from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import load_lie
from ginfty.core import InvalidArgument, MultiOp
from ginfty.galgebras import (DegreeOverflow, GAlgebraInstance, LieAlgebraPresentation, Polyvector,
                              check_g_algebra, check_poisson, exterior_bracket, find_non_poisson,
                              parse_polyvector, poisson_bracket, polyvector_basis, polyvector_instance,
                              sigma_P, sn_bracket, wedge)
from ginfty.hochschild import InvalidPresentation
from ginfty.core import pm


def pv(text, n=2, D=4):
    return parse_polyvector(text, n, D)


# -- polyvectors by hand

def test_parse_and_print():
    P = pv("x1*d1^d2 - 2*x2^2*d1 + 3")
    assert str(P) == "3 - 2*x2^2*d1 + x1*d1^d2"
    assert pv("d2^d1") == pv("d1^d2").scale(-1)
    assert pv("d1^d1").is_zero()
    with pytest.raises(InvalidArgument):
        pv("y1")


def test_truncation():
    with pytest.raises(DegreeOverflow):
        pv("x1^5")
    with pytest.raises(DegreeOverflow):
        wedge(pv("x1^3"), pv("x2^2"))


def test_vector_field_on_function():
    assert sn_bracket(pv("d1"), pv("x1")) == pv("1")
    assert sn_bracket(pv("x1*d1"), pv("x1^2")) == pv("2*x1^2")


def test_commutator_of_vector_fields():
    # [x1 d2, x2 d1] = x1 d1 - x2 d2
    assert sn_bracket(pv("x1*d2"), pv("x2*d1")) == pv("x1*d1 - x2*d2")


def test_bracket_of_bivector_with_function():
    # the derivative in d1 is taken from the right, so d1 first moves past d2
    assert sn_bracket(pv("d1^d2"), pv("x1")) == pv("-d2")
    assert sn_bracket(pv("d1^d2"), pv("x2")) == pv("d1")


def test_poisson_bracket_convention():
    # the leftmost d pairs with the leftmost one-form
    assert poisson_bracket(pv("x1"), pv("x2"), pv("d1^d2")) == pv("1")
    assert poisson_bracket(pv("x2"), pv("x1"), pv("d1^d2")) == pv("-1")
    with pytest.raises(InvalidArgument):
        poisson_bracket(pv("d1"), pv("x2"), pv("d1^d2"))


def test_wedge_graded_commutative():
    a, b = pv("x1*d1"), pv("d2")
    assert wedge(a, b) == wedge(b, a).scale(-1)


small = polyvector_basis(2, 4, 2)


@settings(max_examples=60)
@given(st.sampled_from(small), st.sampled_from(small))
def test_sn_antisymmetry(P, Q):
    p, q = P.degree, Q.degree
    assert sn_bracket(P, Q) == sn_bracket(Q, P).scale(-pm((p - 1) * (q - 1)))


@settings(max_examples=60)
@given(st.sampled_from(polyvector_basis(2, 4, 1)), st.sampled_from(polyvector_basis(2, 4, 1)),
       st.sampled_from(polyvector_basis(2, 4, 1)))
def test_sn_leibniz(P, Q, R):
    p, q = P.degree, Q.degree
    lhs = sn_bracket(P, wedge(Q, R))
    rhs = wedge(sn_bracket(P, Q), R) + wedge(Q, sn_bracket(P, R)).scale(pm((p - 1) * q))
    assert lhs == rhs


# -- Poisson structures

def test_constant_bivector_is_poisson():
    P = pv("d1^d2")
    assert sn_bracket(P, P).is_zero()
    rep = check_poisson(P)
    assert rep.ok, rep.text()
    assert [e.identity for e in rep] == ["poisson.sigma_squared_zero", "poisson.jacobi"]


def test_non_poisson_found_with_witness():
    P = find_non_poisson(3)
    assert str(P) == "d1^d3 + x1*d1^d2"
    assert sn_bracket(P, P) == parse_polyvector("-2*d1^d2^d3", 3)
    Q = parse_polyvector("x3", 3)
    assert not sigma_P(P, sigma_P(P, Q)).is_zero()
    rep = check_poisson(P)
    assert rep.ok
    assert rep["poisson.jacobi_violated"].detail == "violating triple ['x3', 'x2', 'x1']"


# -- Lie algebras and exterior algebras

def test_lie_fixtures():
    g = load_lie("sl2")
    assert g.names == ["e", "f", "h"]
    assert g.br(g.e(0), g.e(1)) == g.e(2)


def test_lie_presentation_rejects_bad_bracket():
    with pytest.raises(InvalidPresentation):
        LieAlgebraPresentation(["a", "b"], [[[0, 0], [1, 0]], [[1, 0], [0, 0]]])


@pytest.mark.parametrize("name", ["sl2", "heisenberg3", "abelian2"])
def test_exterior_algebra_is_a_g_algebra(name):
    inst = exterior_bracket(load_lie(name))
    assert inst.space.dim == 2 ** load_lie(name).dim
    rep = check_g_algebra(inst)
    assert rep.ok, rep.text()


def test_exterior_bracket_on_generators():
    inst = exterior_bracket(load_lie("sl2"))
    sp = inst.space
    e, f, h = (sp.index[n] for n in "efh")
    assert inst.bracket({e: Fraction(1)}, {f: Fraction(1)}) == {h: Fraction(1)}
    # [e, f^h] = [e, f]^h + f^[e, h] = h^h - 2 f^e = 2 e^f
    assert inst.bracket({e: Fraction(1)}, {sp.index["f^h"]: Fraction(1)}) == {sp.index["e^f"]: Fraction(2)}


@pytest.mark.parametrize("n", [1, 2])
def test_polyvectors_are_a_g_algebra(n):
    rep = check_g_algebra(polyvector_instance(n, 4))
    assert rep.ok, rep.text()


def test_check_detects_a_corrupted_bracket():
    inst = exterior_bracket(load_lie("heisenberg3"))
    entries = dict(inst.bracket.entries)
    k = next(iter(sorted(entries)))
    entries[k] = {i: 2 * c for i, c in entries[k].items()}
    broken = GAlgebraInstance(inst.space, inst.dot, MultiOp(2, -1, entries, inst.space), name="broken")
    assert not check_g_algebra(broken).ok
