from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qkwhitney.polyring import (
    CharElem,
    NovikovPoly,
    QKClass,
    elementary_symmetric,
    elementary_symmetric_char,
    geometric_factor,
    q_monomial_of_coroot,
    qk_equal,
    sum_classes,
)
from qkwhitney.rootsys import Coroot, SignedPerm

N = 2


def chars(n=N):
    exps = st.tuples(*[st.integers(-2, 2)] * n)
    return st.dictionaries(exps, st.integers(-3, 3), max_size=4).map(lambda t: CharElem(n, t))


def novikovs(n=N, D=3):
    qs = st.tuples(*[st.integers(0, 2)] * n)
    return st.dictionaries(qs, chars(n), max_size=3).map(lambda t: NovikovPoly(n, D, t))


def evaluate(c: CharElem, point) -> Fraction:
    total = Fraction(0)
    for e, k in c.terms.items():
        term = Fraction(k)
        for x, p in zip(point, e):
            term *= Fraction(x) ** p
        total += term
    return total


POINTS = [(2, 3), (Fraction(1, 2), 5), (-3, Fraction(2, 7))]


@given(chars(), chars(), chars())
def test_char_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * 1 == a


@given(chars(), chars())
def test_char_product_matches_evaluation(a, b):
    # evaluation at a torus point is a ring homomorphism
    for pt in POINTS:
        assert evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt)
        assert evaluate(a + b, pt) == evaluate(a, pt) + evaluate(b, pt)


@given(chars())
def test_dual_is_involutive_and_multiplicative(a):
    assert a.dual().dual() == a
    assert (a * a).dual() == a.dual() * a.dual()


def test_char_render():
    x1, x2 = CharElem.var(1, 2), CharElem.var(2, 2)
    assert (x1 * x2 - x1 ** 2 + 1).render() == "-x1^2 + x1*x2 + 1"
    assert CharElem.var(1, 2, -1).render() == "x1^-1"
    assert CharElem.zero(2).render() == "0"


@given(novikovs(), novikovs(), novikovs())
def test_novikov_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(novikovs(), novikovs(), st.integers(0, 3))
def test_truncation_is_a_homomorphism(a, b, d):
    assert (a * b).truncate(d) == a.truncate(d) * b.truncate(d)
    assert (a + b).truncate(d) == a.truncate(d) + b.truncate(d)


@given(novikovs())
def test_at_q_zero_is_a_homomorphism(a):
    assert (a * a).at_q_zero() == a.at_q_zero() * a.at_q_zero()


@pytest.mark.parametrize("D", [0, 1, 3, 5])
def test_geometric_factor_inverts(D):
    n = 3
    for j in range(0, n + 1):
        g = geometric_factor(j, n, D)
        assert g * (1 - NovikovPoly.Q(j, n, D)) == NovikovPoly.one(n, D)
    assert NovikovPoly.Q(0, n, D).is_zero()


def test_mixed_truncation_rejected():
    with pytest.raises(ValueError):
        NovikovPoly.one(2, 2) + NovikovPoly.one(2, 3)
    with pytest.raises(ValueError):
        qk_equal(QKClass.unit(2, 2), QKClass.unit(2, 3))


def test_truncation_drops_high_degree():
    p = NovikovPoly(1, 2, {(3,): CharElem.one(1), (1,): CharElem.one(1)})
    assert p == NovikovPoly.Q(1, 1, 2)
    assert (NovikovPoly.Q(1, 1, 2) ** 3).is_zero()


def test_q_monomial_of_coroot():
    D = 4
    assert q_monomial_of_coroot(Coroot((1, 0, 0)), D) == NovikovPoly.q_power((1, 1, 1), 3, D)
    assert q_monomial_of_coroot(Coroot((0, 0, 1)), D) == NovikovPoly.Q(3, 3, D)
    with pytest.raises(ValueError):
        q_monomial_of_coroot(Coroot((-1, 1, 0)), D)


def test_render_novikov():
    n, D = 2, 3
    p = (1 - NovikovPoly.Q(1, n, D)) * (1 - NovikovPoly.Q(2, n, D))
    assert p.render() == "1 - Q1 - Q2 + Q1*Q2"
    assert (NovikovPoly.Q(1, n, D).shifted((0, 0), (1, -1), -2)).render() == "-2*x1*x2^-1*Q1"


@given(novikovs(), novikovs())
def test_class_scaling_is_linear(a, b):
    n, D = N, 3
    Z = QKClass.unit(n, D) + QKClass.schubert(SignedPerm((2, -1)), D).scale(CharElem.var(1, n))
    assert Z.scale(a + b) == Z.scale(a) + Z.scale(b)
    assert Z.scale(a).scale(b) == Z.scale(a * b)


def test_class_algebra():
    D = 2
    e, s = QKClass.unit(2, D), QKClass.schubert(SignedPerm((1, -2)), D)
    assert (e + s - e) == s
    assert (e - e).is_zero()
    assert sum_classes([e, s, -s], 2, D) == e
    assert s.support() == [SignedPerm((1, -2))]
    assert e.render() == "O^[1,2]: 1"
    assert e.truncate(0).D == 0


def test_elementary_symmetric_char():
    n = 2
    x1, x2 = CharElem.var(1, n), CharElem.var(2, n)
    assert elementary_symmetric_char(0, n) == 1
    assert elementary_symmetric_char(1, n) == x1 + x2 + x1.dual() + x2.dual()
    assert elementary_symmetric_char(4, n) == 1
    # e_2 of {x1, x2, 1/x2, 1/x1} by hand
    assert elementary_symmetric_char(2, n) == x1 * x2 + x1 * x2.dual() + x2 * x1.dual() + x1.dual() * x2.dual() + 2
    with pytest.raises(ValueError):
        elementary_symmetric_char(5, n)
    assert elementary_symmetric(3, [x1, x2], n) == 0
