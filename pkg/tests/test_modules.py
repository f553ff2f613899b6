import pytest
from hypothesis import given, strategies as st

from gradedfmod.errors import NotHomogeneousError, ParseError
from gradedfmod.field import get_field
from gradedfmod.modules import (
    EElt,
    RxElt,
    SumElt,
    e_act,
    e_frobenius_power,
    e_from_fraction,
    e_is_zero_cech,
    format_e,
    parse_e,
    rx_normalize,
)
from gradedfmod.poly import Poly, parse_poly

F2, F3 = get_field(2), get_field(3)


def inv(F, a, b, c=1):
    return EElt.inverse_monomial(F, a, b, c)


def test_e_act_examples():
    x, y = Poly.x(F3), Poly.y(F3)
    assert e_act(x, inv(F3, 2, 1)) == inv(F3, 1, 1)
    assert e_act(x, inv(F3, 1, 1)).is_zero()
    assert e_act(y * y, inv(F3, 1, 3) + inv(F3, 2, 1)) == inv(F3, 1, 1)


def test_e_from_fraction_examples():
    assert e_from_fraction(Poly.constant(F3, 1), 1, 1) == inv(F3, 1, 1)
    assert e_from_fraction(Poly.x(F3), 1, 2).is_zero()
    h = parse_poly("y + x", F2)
    assert e_from_fraction(h, 2, 3) == inv(F2, 2, 2) + inv(F2, 1, 3)
    with pytest.raises(ValueError):
        e_from_fraction(h, 0, 3)


def test_cech_examples():
    assert e_is_zero_cech(Poly.x(F3), 1, 1, r_max=0)
    x, y = Poly.x(F3), Poly.y(F3)
    for t in range(3):
        c = F3.sub(F3.pow(t, 3), t)
        h = x.scale(c) + y
        assert not e_is_zero_cech(h, 2, 2)
        assert not e_is_zero_cech(h, 2, 2, r_max=20)
    assert e_is_zero_cech(x * x, 2, 1)
    assert not e_is_zero_cech(x, 2, 1)


def test_frobenius_power_examples():
    assert e_frobenius_power(inv(F2, 1, 1)) == inv(F2, 2, 2)
    assert e_frobenius_power(EElt.zero(F2)).is_zero()
    assert e_frobenius_power(inv(F3, 2, 1, 2)) == inv(F3, 6, 3, 2)


def test_rx_normalize_examples():
    F = F3
    assert rx_normalize(parse_poly("x^2*y", F), 3) == (Poly.y(F), 1)
    assert rx_normalize(Poly.x(F), 1) == (Poly.constant(F, 1), 0)
    s = parse_poly("y + x", F)
    assert rx_normalize(s, 2) == (s, 2)


def test_rx_arithmetic():
    F = F3
    a = RxElt(Poly.y(F), 1)
    b = RxElt(Poly.x(F), 2)
    assert a + b == RxElt(parse_poly("x*y + x", F), 2)
    assert (a - a).is_zero()
    assert (a * b).degree() == 0 + (-1)
    assert RxElt(Poly.constant(F, 1), -2) == RxElt(Poly.monomial(F, 2, 0), 0)
    assert a.frobenius_power() == RxElt(Poly.monomial(F, 0, 3), 3)


def test_e_degree():
    assert inv(F3, 2, 3).degree() == -5
    assert EElt.zero(F3).degree() is None
    with pytest.raises(NotHomogeneousError):
        (inv(F3, 1, 1) + inv(F3, 1, 2)).degree()
    with pytest.raises(ValueError):
        EElt(F3, {(0, 2): 1})


def test_sum_degree():
    v = SumElt(RxElt(Poly.y(F3), 1), Poly.constant(F3, 1))
    assert v.degree() == 0
    with pytest.raises(NotHomogeneousError):
        SumElt(RxElt(Poly.y(F3), 2), Poly.constant(F3, 1)).degree()


def test_e_grammar():
    e = parse_e("1/(x^2*y) + 2/(x*y^4)", F3)
    assert e == inv(F3, 2, 1) + inv(F3, 1, 4, 2)
    assert parse_e(format_e(e), F3) == e
    assert format_e(inv(F3, 1, 1)) == "1/(x*y)"
    assert parse_e("-1/(x*y)", F3) == inv(F3, 1, 1, 2)
    for bad in ["x/(x*y)", "1/(y)", "1/(x^0*y)", "1*x*y"]:
        with pytest.raises((ParseError, ValueError)):
            parse_e(bad, F3)


FIELDS = [get_field(2), get_field(3), get_field(5), get_field(2, 2)]


@st.composite
def e_elts(draw, F):
    terms = draw(
        st.dictionaries(st.tuples(st.integers(1, 6), st.integers(1, 6)), st.integers(0, F.q - 1), max_size=5)
    )
    return EElt(F, terms)


@st.composite
def small_polys(draw, F):
    terms = draw(
        st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(0, F.q - 1), max_size=4)
    )
    return Poly(F, terms)


@given(st.data())
def test_e_is_an_r_module(data):
    F = data.draw(st.sampled_from(FIELDS))
    r, s = data.draw(small_polys(F)), data.draw(small_polys(F))
    e, f = data.draw(e_elts(F)), data.draw(e_elts(F))
    assert e_act(r * s, e) == e_act(r, e_act(s, e))
    assert e_act(r + s, e) == e_act(r, e) + e_act(s, e)
    assert e_act(r, e + f) == e_act(r, e) + e_act(r, f)
    assert e_act(Poly.constant(F, 1), e) == e


@given(st.data())
def test_fraction_zero_tests_agree(data):
    F = data.draw(st.sampled_from(FIELDS))
    h = data.draw(small_polys(F))
    A, B = data.draw(st.integers(1, 5)), data.draw(st.integers(1, 5))
    assert e_from_fraction(h, A, B).is_zero() == e_is_zero_cech(h, A, B)


@given(st.data())
def test_fraction_is_well_defined(data):
    # h/(x^A y^B) = (xy h)/(x^(A+1) y^(B+1)) in E
    F = data.draw(st.sampled_from(FIELDS))
    h = data.draw(small_polys(F))
    A, B = data.draw(st.integers(1, 5)), data.draw(st.integers(1, 5))
    assert e_from_fraction(h, A, B) == e_from_fraction(Poly.monomial(F, 1, 1) * h, A + 1, B + 1)


@given(st.data())
def test_frobenius_power_is_p_linear(data):
    F = data.draw(st.sampled_from(FIELDS))
    r = data.draw(small_polys(F))
    e = data.draw(e_elts(F))
    assert e_frobenius_power(e_act(r, e)) == e_act(r.frobenius_power(), e_frobenius_power(e))
