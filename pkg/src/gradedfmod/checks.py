"""Seeded property runs: duality roundtrips, structure-map roundtrips and the zero-test cross-check.

Each run returns a :class:`CheckResult`; the first failing trial is kept as a witness.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .extension import CandidateSplitting, ExtensionL, square_defect
from .field import GF
from .frobenius import (
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
from .hom import phi, psi, theta_hom, theta_hom_inv
from .modules import RxElt, e_from_fraction, e_is_zero_cech
from .poly import Poly, format_poly
from .sampling import (
    random_e,
    random_hom_frx,
    random_hom_rx,
    random_hom_tensor,
    random_homogeneous_poly,
    random_me,
    random_me_tensor,
    random_n,
    random_rx,
    random_scalar,
)

DEGREE_RANGE = (-10, 2)


@dataclass
class CheckResult:
    name: str
    trials: int
    failures: int = 0
    witness: str | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, witness: Callable[[], str]) -> None:
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = witness()

    def as_dict(self) -> dict:
        out = {"name": self.name, "status": "pass" if self.passed else "fail", "trials": self.trials}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _pick_degree(rng: random.Random, degree: int | None) -> int:
    return rng.randint(*DEGREE_RANGE) if degree is None else degree


def _guard(fn: Callable[[], bool]) -> tuple[bool, str | None]:
    try:
        return fn(), None
    except Exception as exc:  # a crash counts as a failed trial
        return False, f"{type(exc).__name__}: {exc}"


def _run(name: str, trials: int, rng: random.Random, trial: Callable[[random.Random], tuple[bool, str]]) -> CheckResult:
    res = CheckResult(name, trials)
    for _ in range(trials):
        holder: dict[str, str] = {}

        def body() -> bool:
            ok, wit = trial(rng)
            holder["w"] = wit
            return ok

        ok, err = _guard(body)
        res.record(ok, lambda: err or holder.get("w", ""))
    return res


# -- duality between Hom(F(R_x), E) and F(Hom(R_x, E)) ---------------------------


def psi_phi_roundtrip(field: GF, trials: int, seed: int, degree: int | None = None, precision: int = 40) -> CheckResult:
    def trial(rng):
        h = random_hom_frx(rng, field, _pick_degree(rng, degree), precision)
        t = phi(h)
        back = psi(t, h.deg)
        ok = back == h and (t.is_zero() or t.degree() == h.deg)
        return ok, f"h = {h.render()}; psi(phi(h)) = {back.render()}"

    return _run("psi o phi = id", trials, random.Random(seed), trial)


def phi_psi_roundtrip(field: GF, trials: int, seed: int, degree: int | None = None, precision: int = 40) -> CheckResult:
    def trial(rng):
        d = _pick_degree(rng, degree)
        t = random_hom_tensor(rng, field, d, precision)
        h = psi(t, d)
        back = phi(h)
        ok = back == t and h.deg == d
        return ok, f"t = {t}; phi(psi(t)) = {back}"

    return _run("phi o psi = id", trials, random.Random(seed), trial)


# -- structure maps ------------------------------------------------------------


def _tensor_of(rng: random.Random, field: GF, degree: int, make) -> TensorElt:
    """Random homogeneous element of F(M) from a sampler ``make(rng, field, slot_degree)``."""
    p = field.p
    slots = {}
    for b in range(p):
        a = (degree - b) % p
        m = make(rng, field, (degree - a - b) // p)
        if m is not None:
            slots[(a, b)] = m
    return TensorElt(field, slots)


def _both_ways(name, trials, seed, forward, backward, sample_m, sample_t, degrees=DEGREE_RANGE) -> CheckResult:
    """``backward(forward(m)) == m``, ``forward(backward(t)) == t``, and both preserve degree."""

    def trial(rng):
        d = rng.randint(*degrees)
        m = sample_m(rng, d)
        t = forward(m)
        ok = backward(t, d) == m and (t.is_zero() or t.degree() == d)
        if not ok:
            return False, f"m = {m}; theta(m) = {t}"
        s = sample_t(rng, d)
        back = backward(s, d)
        ok = forward(back) == s and (s.is_zero() or back.is_zero() or back.degree() == d)
        return ok, f"t = {s}; theta(theta^-1(t)) = {forward(back)}"

    return _run(name, trials, random.Random(seed), trial)


def structure_roundtrips(field: GF, trials: int, seed: int, precision: int = 40, u=None) -> list[CheckResult]:
    """Roundtrips for theta_R, theta_Rx, theta_E, theta_N(u), theta_hom and theta_L."""
    hp = random_homogeneous_poly
    poly_or_none = lambda rng, F, d: hp(rng, F, d) if d >= 0 else None  # noqa: E731
    e_or_none = lambda rng, F, d: random_e(rng, F, d) if d <= -2 else None  # noqa: E731
    twist = twist_y_over_x(field) if u is None else u
    n_map = StructureMapN(twist)
    ext = ExtensionL(field)

    return [
        _both_ways(
            "theta_R", trials, seed,
            theta_r, lambda t, d: theta_r_inv(t),
            lambda rng, d: hp(rng, field, d),
            lambda rng, d: _tensor_of(rng, field, d, poly_or_none),
            degrees=(0, 12),
        ),
        _both_ways(
            "theta_Rx", trials, seed + 1,
            theta_rx, lambda t, d: theta_rx_inv(t),
            lambda rng, d: random_rx(rng, field, d),
            lambda rng, d: _tensor_of(rng, field, d, lambda r, F, k: random_rx(r, F, k)),
        ),
        _both_ways(
            "theta_E", trials, seed + 2,
            theta_e, lambda t, d: theta_e_inv(t),
            lambda rng, d: random_e(rng, field, d),
            lambda rng, d: _tensor_of(rng, field, d, e_or_none),
            degrees=(-14, -2),
        ),
        _both_ways(
            f"theta_N(u = {twist})", trials, seed + 3,
            n_map.theta, lambda t, d: n_map.theta_inv(t),
            lambda rng, d: random_n(rng, field, d),
            lambda rng, d: _tensor_of(rng, field, d, random_n),
        ),
        _both_ways(
            "theta_hom", trials, seed + 4,
            theta_hom, theta_hom_inv,
            lambda rng, d: random_hom_rx(rng, field, d, precision),
            lambda rng, d: random_hom_tensor(rng, field, d, precision),
        ),
        _both_ways(
            "theta_L", trials, seed + 5,
            ext.theta, ext.theta_inv,
            lambda rng, d: random_me(rng, field, d, precision),
            lambda rng, d: random_me_tensor(rng, field, d, precision),
        ),
    ]


# -- zero test ---------------------------------------------------------------


def random_fraction(rng: random.Random, field: GF) -> tuple[Poly, int, int]:
    """Random ``h/(x^A y^B)``; about half the monomials of h are pushed into (x^A, y^B)."""
    A, B = rng.randint(1, 6), rng.randint(1, 6)
    terms = {}
    for _ in range(rng.randint(0, 5)):
        if rng.random() < 0.5:
            i, j = rng.randint(0, A - 1), rng.randint(0, B - 1)
        elif rng.random() < 0.5:
            i, j = rng.randint(A, A + 3), rng.randint(0, B + 3)
        else:
            i, j = rng.randint(0, A + 3), rng.randint(B, B + 3)
        terms[(i, j)] = random_scalar(rng, field)
    return Poly(field, terms), A, B


def zero_test_agreement(field: GF, trials: int, seed: int) -> CheckResult:
    def trial(rng):
        h, A, B = random_fraction(rng, field)
        normal = e_from_fraction(h, A, B).is_zero()
        cech = e_is_zero_cech(h, A, B)
        return normal == cech, f"h = {format_poly(h)}, A = {A}, B = {B}: normal form {normal}, Cech {cech}"

    return _run("normal form zero <=> Cech membership", trials, random.Random(seed), trial)


# -- split control -------------------------------------------------------------


def split_control(field: GF, trials: int, seed: int, precision: int = 40) -> CheckResult:
    """With ``u = 0`` the identity splitting commutes with the structure maps."""
    ext = ExtensionL(field, RxElt.zero(field))
    ident = CandidateSplitting(0, Poly.zero(field))

    def trial(rng):
        v = random_me(rng, field, rng.randint(*DEGREE_RANGE), precision)
        defect = square_defect(ext, ident, v)
        return defect.is_zero(), f"v = {v}; defect = {defect}"

    return _run("u = 0: identity splitting has zero defect", trials, random.Random(seed), trial)
