"""Seeded random generators for homogeneous elements (used by property checks and the CLI)."""
from __future__ import annotations

import random

from .field import GF
from .frobenius import TensorElt
from .hom import HomFRxE, HomRxE
from .modules import EElt, RxElt, SumElt
from .poly import Poly


def random_scalar(rng: random.Random, field: GF, nonzero: bool = False) -> int:
    return rng.randrange(1, field.q) if nonzero else rng.randrange(field.q)


def random_poly(rng: random.Random, field: GF, max_deg: int = 6, terms: int = 4) -> Poly:
    out = {}
    for _ in range(rng.randint(0, terms)):
        a = rng.randint(0, max_deg)
        b = rng.randint(0, max_deg - a)
        out[(a, b)] = random_scalar(rng, field)
    return Poly(field, out)


def random_homogeneous_poly(rng: random.Random, field: GF, degree: int, density: float = 0.5) -> Poly:
    if degree < 0:
        return Poly.zero(field)
    out = {}
    for a in range(degree + 1):
        if rng.random() < density:
            out[(a, degree - a)] = random_scalar(rng, field)
    return Poly(field, out)


def random_e(rng: random.Random, field: GF, degree: int, density: float = 0.5) -> EElt:
    """Homogeneous element of E of the given degree (<= -2)."""
    out = {}
    total = -degree
    for a in range(1, total):
        if rng.random() < density:
            out[(a, total - a)] = random_scalar(rng, field)
    return EElt(field, out)


def random_rx(rng: random.Random, field: GF, degree: int, max_den: int = 4) -> RxElt:
    n = rng.randint(max(0, -degree), max(0, -degree) + max_den)
    return RxElt(random_homogeneous_poly(rng, field, degree + n), n)


def random_hom_rx(rng: random.Random, field: GF, degree: int, precision: int) -> HomRxE:
    return HomRxE(field, degree, [random_scalar(rng, field) for _ in range(precision)])


def random_hom_frx(rng: random.Random, field: GF, degree: int, precision: int) -> HomFRxE:
    beta = HomFRxE._beta_for(field, degree)
    forced = max(0, 1 - beta)
    coeffs = [0 if i < forced else random_scalar(rng, field) for i in range(precision)]
    return HomFRxE(field, degree, coeffs)


def random_hom_tensor(rng: random.Random, field: GF, degree: int, precision: int) -> TensorElt:
    """Homogeneous element of F(*Hom(R_x, E)) of the given degree.

    A slot ``x^a y^b`` can only carry maps of degree ``(d - a - b)/p``, so for each
    ``b`` there is one admissible ``a``.
    """
    p = field.p
    slots = {}
    for b in range(p):
        if rng.random() < 0.25:
            continue
        a = (degree - b) % p
        slots[(a, b)] = random_hom_rx(rng, field, (degree - a - b) // p, precision)
    return TensorElt(field, slots)


def random_e_tensor(rng: random.Random, field: GF, degree: int) -> TensorElt:
    """Homogeneous element of F(E); slot degrees must be <= -2."""
    p = field.p
    slots = {}
    for b in range(p):
        a = (degree - b) % p
        d = (degree - a - b) // p
        if d <= -2 and rng.random() < 0.75:
            slots[(a, b)] = random_e(rng, field, d)
    return TensorElt(field, slots)


def random_me(rng: random.Random, field: GF, degree: int, precision: int) -> SumElt:
    e = random_e(rng, field, degree) if degree <= -2 else EElt.zero(field)
    return SumElt(random_hom_rx(rng, field, degree, precision), e)


def random_me_tensor(rng: random.Random, field: GF, degree: int, precision: int) -> TensorElt:
    t_hom = random_hom_tensor(rng, field, degree, precision)
    t_e = random_e_tensor(rng, field, degree)
    slots = {}
    for k in set(t_hom.slots) | set(t_e.slots):
        f = t_hom.slots.get(k)
        e = t_e.slots.get(k)
        if f is None:
            f = HomRxE.zero(field, e.degree())
        if e is None:
            e = EElt.zero(field)
        slots[k] = SumElt(f, e)
    return TensorElt(field, slots)


def random_n(rng: random.Random, field: GF, degree: int) -> SumElt:
    """Homogeneous element of ``N = R_x + R``."""
    r = random_homogeneous_poly(rng, field, degree) if degree >= 0 else Poly.zero(field)
    return SumElt(random_rx(rng, field, degree), r)


def random_twist(rng: random.Random, field: GF, max_alpha: int = 3) -> RxElt:
    """Random degree-0 element ``t/x^alpha`` of R_x."""
    alpha = rng.randint(0, max_alpha)
    return RxElt(random_homogeneous_poly(rng, field, alpha), alpha)
