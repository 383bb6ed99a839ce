import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import ALGEBRAS, DATA, load
from ginfty.core import InvalidArgument, Unsupported, pm, vadd
from ginfty.hochschild import (D_BRACKET_SIGN, ORACLE_SIGN, AlgebraPresentation, Cochain, HochschildComplex,
                               InvalidPresentation, braces, circle, coderivation_bracket_oracle, dot,
                               gerst_bracket, hh_cohomology, hochschild_d, induced_structure_on_hh,
                               verify_braces_identities)

F = Fraction


def e(k):
    return {k: F(1)}


def naive_braces(x, ys):
    """Direct recursion over the ways of threading the y's through the slots of x."""
    A = x.algebra
    if not ys:
        return x
    m = x.arity + sum(y.arity for y in ys) - len(ys)
    if x.arity < len(ys):
        return Cochain.zero(A, m)
    out = {}
    for t in product(range(A.dim), repeat=m):
        acc = {}

        def walk(slot, used, before, args, sign):
            if slot == x.arity:
                if used == len(ys) and before == m:
                    vadd(acc, x(*args), sign)
                return
            if used < len(ys) and before + ys[used].arity <= m:
                y = ys[used]
                val = y(*[e(i) for i in t[before:before + y.arity]])
                if val:
                    walk(slot + 1, used + 1, before + y.arity, args + [val],
                         sign * pm((y.arity - 1) * before))
            if before < m:
                walk(slot + 1, used, before + 1, args + [e(t[before])], sign)

        walk(0, 0, 0, [], 1)
        if acc:
            out[t] = acc
    return Cochain(A, m, out)


# -- presentations

def test_fixtures_load():
    for name in ALGEBRAS:
        A = load(name)
        assert A.name == name
        assert A.dim <= 3


def test_nonassociative_rejected_with_witness():
    with pytest.raises(InvalidPresentation) as exc:
        load("nonassociative")
    assert exc.value.witness == ("a", "a", "a")


def test_bad_unit_rejected():
    with pytest.raises(InvalidPresentation):
        AlgebraPresentation(["1", "x"], [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [0, 1])


def test_round_trip_dict(dual):
    B = AlgebraPresentation.from_dict(dual.to_dict())
    assert B.table == dual.table and B.unit == dual.unit
    assert dual.is_commutative()
    assert not load("upper_triangular").is_commutative()


# -- hand computations

def test_dot_on_elements(dual):
    one, x = Cochain.element(dual, e(0)), Cochain.element(dual, e(1))
    assert dot(one, x) == x
    assert dot(x, x).is_zero()


def test_dot_sign_on_derivations():
    A = load("truncated_cubic")
    D = Cochain.from_function(A, 1, lambda t: {t[0]: F(t[0])} if t[0] else {})  # x^k -> k x^k
    # (D . D)(x, x) = (-1)^{1*1} D(x) D(x) = -x^2
    assert dot(D, D).at((1, 1)) == {2: F(-1)}
    assert circle(D, D) == Cochain.from_function(A, 1, lambda t: {t[0]: F(t[0]) ** 2} if t[0] else {})


def test_derivation_is_a_cocycle(dual):
    D = Cochain(dual, 1, {(1,): e(1)})
    assert hochschild_d(D).is_zero()
    m = dual.multiplication()
    assert gerst_bracket(m, D).is_zero()


def test_differential_on_elements():
    A = load("upper_triangular")
    E12 = Cochain.element(A, e(1))
    # (d a)(b) = b a - a b ... with the convention d x(a) = a x - x a
    dE = hochschild_d(E12)
    for i in range(A.dim):
        want = {}
        vadd(want, A.mul(e(i), e(1)))
        vadd(want, A.mul(e(1), e(i)), -1)
        assert dE.at((i,)) == want


def test_d_is_minus_bracket_with_m():
    A = load("upper_triangular")
    m = A.multiplication()
    assert D_BRACKET_SIGN == -1
    rng = random.Random(3)
    for n in range(4):
        x = Cochain.random(A, n, rng)
        assert hochschild_d(x) == gerst_bracket(m, x).scale(D_BRACKET_SIGN)


def test_m_circle_m_vanishes():
    for name in ALGEBRAS:
        m = load(name).multiplication()
        assert circle(m, m).is_zero()


def test_braces_with_no_arguments(dual):
    x = Cochain.random(dual, 2, random.Random(0))
    assert braces(x, []) == x


def test_braces_too_many_arguments_vanish(dual):
    x = Cochain.random(dual, 1, random.Random(0))
    ys = [Cochain.random(dual, 1, random.Random(1))] * 2
    assert braces(x, ys).is_zero()
    assert braces(x, ys).arity == 1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2), st.lists(st.integers(0, 2), min_size=1, max_size=2), st.integers(0, 10 ** 6))
def test_braces_match_naive_recursion(ax, ays, seed):
    A = load("truncated_cubic") if seed % 2 else load("dual_numbers")
    rng = random.Random(seed)
    x = Cochain.random(A, ax, rng)
    ys = [Cochain.random(A, a, rng) for a in ays]
    if sum(ays) + ax - len(ays) > 4:
        return
    assert braces(x, ys) == naive_braces(x, ys)


@pytest.mark.parametrize("name", ALGEBRAS)
def test_d_squared(name):
    A = load(name)
    rng = random.Random(1)
    for n in range(4):
        assert hochschild_d(hochschild_d(Cochain.random(A, n, rng))).is_zero()


def test_d_squared_fails_without_associativity():
    # negative control: the corrupted algebra loaded without its check
    import json
    d = json.loads((DATA / "nonassociative.json").read_text())
    A = AlgebraPresentation(d["basis"], d["c"], d["unit"], check=False)
    bad = [x for x in Cochain.basis(A, 1) if not hochschild_d(hochschild_d(x)).is_zero()]
    assert bad


# -- bracket oracle

def test_bracket_oracle_dual_numbers(dual):
    basis = [b for n in range(3) for b in Cochain.basis(dual, n)]
    assert len(basis) == 2 + 4 + 8
    for x in basis:
        for y in basis:
            assert coderivation_bracket_oracle(x, y) == gerst_bracket(x, y).scale(ORACLE_SIGN)


def test_bracket_oracle_detects_a_wrong_sign(dual):
    x = Cochain(dual, 2, {(1, 1): e(1)})
    y = Cochain(dual, 1, {(1,): e(0)})
    wrong = circle(x, y) + circle(y, x)
    assert coderivation_bracket_oracle(x, y) != wrong


def test_bracket_oracle_truncation(dual):
    x = Cochain.basis(dual, 4)[0]
    with pytest.raises(InvalidArgument):
        coderivation_bracket_oracle(x, x, max_length=5)


# -- the three identities

@pytest.mark.parametrize("name", ["rationals", "dual_numbers", "group_algebra_z2"])
def test_brace_identities_small(name):
    rep = verify_braces_identities(load(name), max_arity=2, max_inputs=5)
    assert rep.ok, rep.text()


@pytest.mark.slow
@pytest.mark.parametrize("name", ["truncated_cubic", "upper_triangular"])
def test_brace_identities_dim3(name):
    rep = verify_braces_identities(load(name), max_arity=2, max_inputs=5)
    assert rep.ok, rep.text()


def test_brace_identities_catch_a_sign_error(dual, monkeypatch):
    # negative control: drop the Koszul sign from the cup product
    import ginfty.hochschild as hh
    honest = hh.dot

    def unsigned(x, y):
        return honest(x, y).scale(pm(x.arity * y.arity))

    monkeypatch.setattr(hh, "dot", unsigned)
    rep = verify_braces_identities(dual, max_arity=2, max_inputs=4)
    assert not rep["braces.d_braces"].passed
    assert not rep["braces.distributivity"].passed


# -- cohomology (dimensions frozen from the exact rank computation; they agree with
#    the textbook values HH^0 = A for commutative A, HH^n = 0 for n > 0 on separable algebras)

HH_DIMS = {
    ("rationals", 4): [1, 0, 0, 0, 0],
    ("dual_numbers", 4): [2, 1, 1, 1, 1],
    ("truncated_cubic", 3): [3, 2, 2, 2],
    ("upper_triangular", 3): [1, 0, 0, 0],
    ("group_algebra_z2", 4): [2, 0, 0, 0, 0],
}


@pytest.mark.parametrize("name, bound", sorted(HH_DIMS))
def test_hh_dimensions(name, bound):
    assert hh_cohomology(load(name), bound).dims() == HH_DIMS[(name, bound)]


def test_hh_scale_limits(dual):
    with pytest.raises(Unsupported):
        hh_cohomology(dual, 5)


def test_induced_structure_dual_numbers(dual):
    rep = induced_structure_on_hh(dual, 4)
    assert rep.ok, rep.text()
    assert len(rep) == 8


def test_coboundary_membership(dual):
    H = hh_cohomology(dual, 2)
    x = Cochain.random(dual, 1, random.Random(5))
    assert H.is_coboundary(hochschild_d(x))
    assert H.is_cocycle(hochschild_d(x))
    # the derivation x -> x is a cocycle that is not a coboundary
    D = Cochain(dual, 1, {(1,): e(1)})
    assert H.is_cocycle(D) and not H.is_coboundary(D)


# -- the complex as a graded space

def test_complex_dimensions(dual):
    H = HochschildComplex(dual, 5)
    assert H.space.dim == sum(2 ** n * 2 for n in range(6))
    v = H.to_vector(Cochain.random(dual, 2, random.Random(0)))
    assert H.to_vector(H.to_cochain(v)) == v
    with pytest.raises(Unsupported):
        H.to_vector(Cochain.basis(dual, 6)[0])
