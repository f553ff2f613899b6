import random

import pytest

from gradedfmod.errors import StructureError
from gradedfmod.field import get_field
from gradedfmod.frobenius import (
    StructureMapN,
    TensorElt,
    theta_e,
    theta_e_inv,
    theta_r,
    theta_r_inv,
    theta_rx,
    theta_rx_inv,
    twist_y_over_x,
)
from gradedfmod.modules import EElt, RxElt, SumElt
from gradedfmod.poly import Poly, parse_poly
from gradedfmod.sampling import random_e, random_homogeneous_poly, random_n, random_rx

F2, F3 = get_field(2), get_field(3)
ONE2 = Poly.constant(F2, 1)


def rx(F, text, n):
    return RxElt(parse_poly(text, F), n)


def test_normalize_examples():
    x3 = Poly.monomial(F2, 3, 0)
    assert TensorElt.normalize(x3, RxElt.inverse_x(F2, 1)) == TensorElt(F2, {(1, 0): RxElt(ONE2, 0)})
    y2 = Poly.monomial(F2, 0, 2)
    assert TensorElt.normalize(y2, RxElt.inverse_x(F2, 1)) == TensorElt(F2, {(0, 0): rx(F2, "y", 1)})
    t = TensorElt.normalize(Poly.monomial(F3, 4, 3), EElt.inverse_monomial(F3, 1, 1))
    assert t.is_zero()


def test_slot_validation():
    with pytest.raises(ValueError):
        TensorElt(F2, {(2, 0): ONE2})


def test_tensor_degree_and_scalars():
    F4 = get_field(2, 2)
    g = F4.generator
    t = TensorElt.normalize(Poly.constant(F4, g), RxElt.inverse_x(F4, 1))
    # g (x) m = 1 (x) g^(1/2) m
    assert t == TensorElt(F4, {(0, 0): RxElt.inverse_x(F4, 1, F4.pth_root(g))})
    assert theta_rx_inv(t) == RxElt.inverse_x(F4, 2, g)
    assert TensorElt.normalize(Poly.monomial(F3, 1, 1), RxElt.inverse_x(F3, 1)).degree() == 2 - 3


def test_theta_rx_examples():
    assert theta_rx(RxElt.inverse_x(F2, 1)) == TensorElt(F2, {(1, 0): RxElt.inverse_x(F2, 1)})
    assert theta_rx(RxElt(ONE2, 0)) == TensorElt(F2, {(0, 0): RxElt(ONE2, 0)})
    for F in (F2, F3):
        probe = TensorElt(F, {(0, 0): RxElt.inverse_x(F, 1)})
        assert theta_rx_inv(probe) == RxElt.inverse_x(F, F.p)


def test_theta_r_examples():
    assert theta_r(ONE2) == TensorElt(F2, {(0, 0): ONE2})
    for F in (F2, F3):
        t = TensorElt(F, {(1, 0): Poly.y(F)})
        assert theta_r_inv(t) == Poly.monomial(F, 1, F.p)
    assert theta_r(Poly.monomial(F2, 2, 0)) == TensorElt(F2, {(0, 0): Poly.x(F2)})


def test_theta_e_examples():
    for F in (F2, F3):
        p = F.p
        e = EElt.inverse_monomial(F, 1, 1)
        expected = TensorElt.normalize(Poly.monomial(F, p - 1, p - 1), e)
        assert theta_e(e) == expected
        assert theta_e_inv(TensorElt(F, {(0, 0): e})) == EElt.inverse_monomial(F, p, p)


def test_theta_n_examples():
    N = StructureMapN(twist_y_over_x(F2))
    zero_rx = RxElt.zero(F2)
    got = N.theta_inv(TensorElt(F2, {(0, 0): SumElt(zero_rx, ONE2)}))
    assert got == SumElt(rx(F2, "y", 1), ONE2)  # -y/x = y/x in characteristic 2
    N3 = StructureMapN(twist_y_over_x(F3))
    got = N3.theta_inv(TensorElt(F3, {(0, 0): SumElt(RxElt.zero(F3), Poly.constant(F3, 1))}))
    assert got == SumElt(rx(F3, "-y", 1), Poly.constant(F3, 1))
    # theta_N(0, 1) = yx (x) (1/x, 0) + 1 (x) (0, 1) for p = 2
    expected = TensorElt(
        F2, {(1, 1): SumElt(RxElt.inverse_x(F2, 1), Poly.zero(F2)), (0, 0): SumElt(zero_rx, ONE2)}
    )
    assert N.theta(SumElt(zero_rx, ONE2)) == expected


def test_theta_n_split_case_is_componentwise():
    rng = random.Random(3)
    N = StructureMapN(RxElt.zero(F3))
    for _ in range(50):
        v = random_n(rng, F3, rng.randint(-5, 5))
        t = N.theta(v)
        assert t.component(0) == theta_rx(v.first)
        assert t.component(1) == theta_r(v.second)


def test_theta_n_rejects_bad_twist():
    with pytest.raises(StructureError):
        StructureMapN(RxElt(Poly.y(F2), 2))


@pytest.mark.parametrize("F", [F2, F3, get_field(5), get_field(2, 2)])
def test_structure_maps_roundtrip_and_preserve_degree(F):
    rng = random.Random(11)
    N = StructureMapN(twist_y_over_x(F))
    for _ in range(100):
        d = rng.randint(0, 8)
        r = random_homogeneous_poly(rng, F, d)
        t = theta_r(r)
        assert theta_r_inv(t) == r
        assert r.is_zero() or t.degree() == d

        d = rng.randint(-8, 4)
        m = random_rx(rng, F, d)
        t = theta_rx(m)
        assert theta_rx_inv(t) == m
        assert m.is_zero() or t.degree() == d

        d = rng.randint(-10, -2)
        e = random_e(rng, F, d)
        t = theta_e(e)
        assert theta_e_inv(t) == e
        assert e.is_zero() or t.degree() == d

        v = random_n(rng, F, rng.randint(-6, 4))
        t = N.theta(v)
        assert N.theta_inv(t) == v
        assert v.is_zero() or t.degree() == v.degree()


def test_structure_maps_are_p_linear():
    rng = random.Random(5)
    F = F3
    for _ in range(50):
        r = random_homogeneous_poly(rng, F, rng.randint(0, 4))
        e = random_e(rng, F, rng.randint(-8, -2))
        # the structure maps are R-linear
        assert theta_e(e.rmul(r)) == theta_e(e).rmul(r)
        m = random_rx(rng, F, rng.randint(-4, 2))
        assert theta_rx(m.rmul(r)) == theta_rx(m).rmul(r)
