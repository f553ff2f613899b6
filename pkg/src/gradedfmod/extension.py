"""The extension 0 -> E -> L -> M -> 0 with M = (R_x)^vee, its candidate splittings,
and the exhaustive search showing none of them is a map of graded F-modules.

L is ``M + E`` as an R-module; its F-module structure is induced from the
structure on ``N = R_x + R`` twisted by a degree-0 element ``u`` of R_x.
"""
from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .errors import NotHomogeneousError
from .field import GF, get_field
from .frobenius import StructureMapN, TensorElt, combine, theta_e, theta_e_inv, twist_y_over_x
from .hom import HomFRxE, HomRxE, homFR_to_FE, homFR_to_FE_inv, phi, psi, theta_hom, theta_hom_inv
from .modules import EElt, RxElt, SumElt, e_from_fraction
from .poly import Poly, format_poly


def _zero_hom_like(e: EElt) -> HomRxE:
    return HomRxE.zero(e.field, e.degree())


def _zero_e_like(f) -> EElt:
    return EElt.zero(f.field)


def combine_me(t_hom: TensorElt, t_e: TensorElt) -> TensorElt:
    """F(M) + F(E) -> F(M + E)."""
    return combine(t_hom, t_e, _zero_hom_like, _zero_e_like)


def theta_split(v: SumElt) -> TensorElt:
    """Structure map of the direct sum ``M + E`` (the trivial extension)."""
    return combine_me(theta_hom(v.first), theta_e(v.second))


def theta_split_inv(t: TensorElt, degree: int | None = None) -> SumElt:
    if degree is None:
        degree = t.degree()
    f = theta_hom_inv(t.component(0), degree)
    return SumElt(f, theta_e_inv(t.component(1)))


# -- the six-map chain ----------------------------------------------------------


@dataclass
class HomNE:
    """Element of *Hom(R_x + R, E) assembled from ``(f, m)``: ``(s/x^n, r) -> f(s/x^n) + r m``."""

    f: HomRxE
    m: EElt

    def __call__(self, v: SumElt) -> EElt:
        return self.f(v.first) + self.m.rmul(v.second)


@dataclass
class HomFNE:
    """Element of *Hom(F(R_x + R), E) as a pair: ``h1`` on F(R_x), value ``v`` of ``h2`` at ``1 (x) 1``."""

    h1: HomFRxE
    v: EElt

    def __call__(self, t: TensorElt) -> EElt:
        total = self.h1(t.component(0))
        for (a, b), r in t.component(1).slots.items():
            total = total + self.v.rmul(r.frobenius_power().shift(a, b))
        return total


@dataclass
class ThetaLTrace:
    hom_n: HomNE
    dual_fn: Callable[[TensorElt], EElt]
    split: tuple[HomFRxE, EElt]
    frobenius_pair: tuple[TensorElt, TensorElt]
    result: TensorElt


class ExtensionL:
    """L = M + E with structure map induced by ``theta_N(u)``; ``u = y/x`` is the non-split one."""

    def __init__(self, field: GF, u: RxElt | None = None):
        self.field = field
        self.structure = StructureMapN(twist_y_over_x(field) if u is None else u)

    @property
    def u(self) -> RxElt:
        return self.structure.u

    def __repr__(self) -> str:
        return f"ExtensionL(u={self.u})"

    def trace(self, v: SumElt) -> ThetaLTrace:
        f, e = v.first, v.second
        F, p, d = self.field, self.field.p, f.deg
        if not e.is_zero() and e.degree() != d:
            raise NotHomogeneousError(f"components of degrees {d} and {e.degree()}")
        # *Hom(R_x, E) + E -> *Hom(R_x + R, E)
        g = HomNE(f, e)
        # -> *Hom(F(R_x + R), E), precomposing with theta_N^-1
        structure = self.structure

        def h(t: TensorElt) -> EElt:
            return g(structure.theta_inv(t))

        # -> *Hom(F(R_x), E) + *Hom(F(R), E)
        one = Poly.constant(F, 1)
        zero_rx, zero_r = RxElt.zero(F), Poly.zero(F)
        if f.exact:
            level = -((-(f._support_max() + d + 1)) // p)
        else:
            level = (f.ymax + d + 1) // p
        at_level = TensorElt.normalize(one, SumElt(RxElt.inverse_x(F, level), zero_r))
        h1 = HomFRxE.from_level_value(F, d, level, h(at_level), exact=f.exact)
        v2 = h(TensorElt.normalize(one, SumElt(zero_rx, one)))
        # -> F(*Hom(R_x, E)) + F(E)
        t_hom, t_e = phi(h1), homFR_to_FE(v2)
        # -> F(*Hom(R_x, E) + E)
        return ThetaLTrace(g, h, (h1, v2), (t_hom, t_e), combine_me(t_hom, t_e))

    def theta(self, v: SumElt) -> TensorElt:
        return self.trace(v).result

    def theta_inv(self, t: TensorElt, degree: int | None = None) -> SumElt:
        F = self.field
        if degree is None:
            degree = t.degree()
            if degree is None:
                raise ValueError("degree required to invert the zero tensor")
        h = HomFNE(psi(t.component(0), degree), homFR_to_FE_inv(t.component(1)))
        structure = self.structure

        def g(v: SumElt) -> EElt:
            return h(structure.theta(v))

        zero_r = Poly.zero(F)
        n = (h.h1._support_max() if h.h1.exact else h.h1.ymax) + degree + 1
        f = HomRxE.from_level_value(F, degree, n, g(SumElt(RxElt.inverse_x(F, n), zero_r)), exact=h.h1.exact)
        e = g(SumElt(RxElt.zero(F), Poly.constant(F, 1)))
        return SumElt(f, e)


# -- candidate splittings ---------------------------------------------------------


@dataclass(frozen=True)
class CandidateSplitting:
    """``g(f, e) = (f, e + f(t/x^alpha))``; ``t = 0`` is the identity."""

    alpha: int
    t: Poly

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.t.is_zero():
            return
        if self.t.degree() != self.alpha:
            raise ValueError(f"t = {self.t} must be homogeneous of degree {self.alpha}")
        if self.t.coefficient(0, self.alpha) == 0:
            raise ValueError(f"t = {self.t} needs a nonzero y^{self.alpha} term")

    @property
    def fraction(self) -> RxElt:
        return RxElt(self.t, self.alpha)

    def label(self) -> str:
        return f"alpha={self.alpha}, t={format_poly(self.t)}"


def candidate_g(c: CandidateSplitting, v: SumElt) -> SumElt:
    f, e = v.first, v.second
    if c.t.is_zero():
        return SumElt(f, e)
    return SumElt(f, e + f(c.fraction))


def square_defect(ext: ExtensionL, c: CandidateSplitting, test: SumElt) -> SumElt:
    """``theta^-1(theta_L(g(v))) - theta^-1((id (x) g)(theta(v)))`` with theta the split structure."""
    degree = test.degree()
    lhs = ext.theta(candidate_g(c, test))
    rhs = theta_split(test).map_slots(lambda s: candidate_g(c, s))
    return theta_split_inv(lhs, degree) - theta_split_inv(rhs, degree)


def standard_test_element(field: GF, alpha: int, precision: int) -> SumElt:
    """``(phi, 1/(x y^(alpha p + 2)))`` with ``phi(1/x^n) = 1/(x^(n+1) y^(alpha p + 2))``."""
    b = alpha * field.p + 2
    if precision < b:
        raise ValueError(f"precision {precision} too small for a test element at alpha={alpha}")
    f = HomRxE.from_ycoeffs(field, -b - 1, {b: 1}, precision)
    return SumElt(f, EElt.inverse_monomial(field, 1, b))


def obstruction(c: CandidateSplitting) -> EElt:
    """``-1/(x^2 y^(ap+1)) + t/(x^(a+1) y^(ap+2)) - t^p/(x^(ap+1) y^(ap+2))`` for the twist u = y/x."""
    t = c.t
    F = t.field
    p, a = F.p, c.alpha
    out = -EElt.inverse_monomial(F, 2, a * p + 1)
    out = out + e_from_fraction(t, a + 1, a * p + 2)
    return out - e_from_fraction(t.frobenius_power(), a * p + 1, a * p + 2)


def obstruction_numerator(c: CandidateSplitting) -> tuple[Poly, int, int]:
    """``(t^p - t x^(a(p-1)) + y x^(ap-1), ap+1, ap+2)``: the obstruction is minus this fraction.

    For ``alpha = 0`` the fraction is brought to denominator ``x^2 y^2``.
    """
    t = c.t
    F = t.field
    p, a = F.p, c.alpha
    if a == 0:
        x = Poly.x(F)
        return (t.frobenius_power() - t) * x + Poly.y(F), 2, 2
    num = t.frobenius_power() - t.shift(a * (p - 1), 0) + Poly.monomial(F, a * p - 1, 1)
    return num, a * p + 1, a * p + 2


def surviving_term(c: CandidateSplitting) -> tuple[tuple[int, int], int]:
    """The inverse monomial of the obstruction that no other term can cancel, with its coefficient.

    ``alpha = 0``: ``-1/(x^2 y)``.  ``alpha > 0``: the y-top term ``-c^p/(x^(ap+1) y^2)`` of ``t^p``.
    """
    F = c.t.field
    p, a = F.p, c.alpha
    if a == 0 or c.t.is_zero():
        return (2, a * p + 1), F.neg(1)
    top = c.t.coefficient(0, a)
    return (a * p + 1, 2), F.neg(F.frobenius(top))


def enumerate_candidates(field: GF, alpha_max: int):
    """``t = 0`` first, then every t of degree alpha <= alpha_max with nonzero y^alpha coefficient."""
    yield CandidateSplitting(0, Poly.zero(field))
    for alpha in range(alpha_max + 1):
        for lead in range(1, field.q):
            for rest in itertools.product(field.elements(), repeat=alpha):
                terms = {(0, alpha): lead}
                for i, c in enumerate(rest, start=1):
                    if c:
                        terms[(i, alpha - i)] = c
                yield CandidateSplitting(alpha, Poly(field, terms))


def default_precision(p: int, alpha_max: int) -> int:
    return max(4 * p * (alpha_max + 2), 64)


@dataclass
class CandidateResult:
    alpha: int
    t: str
    defect: str
    defect_zero: bool
    obstruction: str | None = None
    consistent: bool | None = None

    def as_dict(self) -> dict:
        out = {"alpha": self.alpha, "t": self.t, "defect": self.defect, "defect_zero": self.defect_zero}
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction
            out["consistent"] = self.consistent
        return out


@dataclass
class SearchReport:
    p: int
    e: int
    alpha_max: int
    precision: int
    twist: str
    candidates: list[CandidateResult] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def certified(self) -> bool:
        """Every candidate has nonzero defect, i.e. no splitting in the family exists."""
        return all(not c.defect_zero for c in self.candidates)

    @property
    def consistent(self) -> bool:
        return all(c.consistent is not False for c in self.candidates)

    @property
    def splitting_witnesses(self) -> list[CandidateResult]:
        return [c for c in self.candidates if c.defect_zero]


def evaluate_candidate(ext: ExtensionL, c: CandidateSplitting, precision: int, closed_form: bool) -> CandidateResult:
    test = standard_test_element(ext.field, c.alpha, precision)
    defect = square_defect(ext, c, test)
    result = CandidateResult(c.alpha, format_poly(c.t), str(defect.second), defect.is_zero())
    if closed_form:
        obs = obstruction(c)
        result.obstruction = str(obs)
        result.consistent = defect.first.is_zero() and defect.second == obs
    return result


def _worker(args) -> list[CandidateResult]:
    p, e, u_terms, u_n, precision, batch = args
    F = get_field(p, e)
    u = RxElt(Poly(F, u_terms), u_n)
    ext = ExtensionL(F, u)
    closed = u == twist_y_over_x(F)
    return [evaluate_candidate(ext, CandidateSplitting(a, Poly(F, t)), precision, closed) for a, t in batch]


def splitting_search(
    p: int,
    e: int = 1,
    alpha_max: int = 3,
    u: RxElt | None = None,
    precision: int | None = None,
    workers: int = 1,
) -> SearchReport:
    """Test every candidate splitting with ``alpha <= alpha_max`` against the square of F-structures."""
    F = get_field(p, e)
    if alpha_max < 0:
        raise ValueError("alpha_max must be >= 0")
    if precision is None:
        precision = default_precision(p, alpha_max)
    ext = ExtensionL(F, u)
    closed = ext.u == twist_y_over_x(F)
    report = SearchReport(p, e, alpha_max, precision, str(ext.u))
    start = time.perf_counter()
    candidates = list(enumerate_candidates(F, alpha_max))
    if workers <= 1:
        report.candidates = [evaluate_candidate(ext, c, precision, closed) for c in candidates]
    else:
        payload = [(c.alpha, dict(c.t.terms)) for c in candidates]
        size = max(1, len(payload) // (4 * workers))
        batches = [payload[i : i + size] for i in range(0, len(payload), size)]
        args = [(p, e, dict(ext.u.num.terms), ext.u.n, precision, b) for b in batches]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(_worker, args):
                report.candidates.extend(chunk)
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


# -- walkthrough of the worked computation -------------------------------------------


class WalkthroughMismatch(AssertionError):
    def __init__(self, stage: str, computed, expected):
        super().__init__(f"stage {stage!r}: computed {computed}, expected {expected}")
        self.stage = stage


@dataclass
class Stage:
    name: str
    computed: str
    expected: str
    match: bool


@dataclass
class Walkthrough:
    p: int
    alpha: int
    t: str
    stages: list[Stage] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.match for s in self.stages)

    def check(self) -> "Walkthrough":
        for s in self.stages:
            if not s.match:
                raise WalkthroughMismatch(s.name, s.computed, s.expected)
        return self


def walkthrough(p: int, alpha: int, t: Poly | None = None, e: int = 1, precision: int | None = None) -> Walkthrough:
    """Recompute every intermediate of the worked computation for ``(phi, 1/(x y^(ap+2)))``
    and compare each with its closed form."""
    F = get_field(p, e)
    if t is None:
        t = Poly.monomial(F, 0, alpha)
    c = CandidateSplitting(alpha, t)
    if precision is None:
        precision = default_precision(p, max(alpha, 1))
    B = alpha * p + 2
    one = Poly.constant(F, 1)
    mono = lambda a, b: Poly.monomial(F, a, b)  # noqa: E731
    inv = lambda a, b: EElt.inverse_monomial(F, a, b)  # noqa: E731
    zero_r = Poly.zero(F)

    test = standard_test_element(F, alpha, precision)
    phi_ = test.first
    e0 = test.second
    t_frac = e_from_fraction(t, alpha + 1, B)
    e1 = e0 + t_frac
    cross = -inv(2, B - 1) + e0 + t_frac

    walk = Walkthrough(p, alpha, format_poly(t))

    def record(name, computed, expected):
        walk.stages.append(Stage(name, str(computed), str(expected), computed == expected))

    g_image = candidate_g(c, test)
    record("g(phi, 1/(x*y^B))", g_image, SumElt(phi_, e1))

    ext = ExtensionL(F)
    tr = ext.trace(g_image)
    for n in range(4):
        record(f"phi'(1/x^{n}, 0)", tr.hom_n(SumElt(RxElt.inverse_x(F, n), zero_r)), inv(n + 1, B))
    record("phi'(0, 1)", tr.hom_n(SumElt(RxElt.zero(F), one)), e1)
    for n in range(4):
        probe = TensorElt.normalize(one, SumElt(RxElt.inverse_x(F, n), zero_r))
        record(f"psi(1 (x) (1/x^{n}, 0))", tr.dual_fn(probe), inv(p * n + 1, B))
    record("psi(1 (x) (0, 1))", tr.dual_fn(TensorElt.normalize(one, SumElt(RxElt.zero(F), one))), cross)
    h1, v2 = tr.split
    for n in range(4):
        record(f"psi_1(1 (x) 1/x^{n})", h1.eval_level(n), inv(p * n + 1, B))
    record("psi_2(1 (x) 1)", v2, cross)

    lead = mono(1, B) ** (p - 1)
    mid = mono(2, B - 1) ** (p - 1)
    tail = (mono(alpha + 1, B) ** (p - 1)) * t
    t_hom, t_e = tr.frobenius_pair
    record("F(Hom) component", t_hom, TensorElt.normalize(lead, phi_))
    expected_fe = (
        TensorElt.normalize(lead, e0) - TensorElt.normalize(mid, inv(2, B - 1)) + TensorElt.normalize(tail, inv(alpha + 1, B))
    )
    record("F(E) component", t_e, expected_fe)

    zh = lambda e_: SumElt(HomRxE.zero(F, e_.degree()), e_)  # noqa: E731
    lhs_expected = (
        TensorElt.normalize(lead, SumElt(phi_, e0))
        - TensorElt.normalize(mid, zh(inv(2, B - 1)))
        + TensorElt.normalize(tail, zh(inv(alpha + 1, B)))
    )
    record("theta_L(g(v))", tr.result, lhs_expected)

    rhs_computed = theta_split(test).map_slots(lambda s: candidate_g(c, s))
    rhs_expected = (
        TensorElt.normalize(lead, SumElt(phi_, EElt.zero(F)))
        + TensorElt.normalize(lead, zh(e0))
        + TensorElt.normalize(lead, zh(t_frac))
    )
    record("(1 (x) g)(theta(v))", rhs_computed, rhs_expected)

    d = phi_.deg
    inv1 = theta_split_inv(tr.result, d)
    inv2 = theta_split_inv(rhs_computed, d)
    record("theta^-1 of theta_L(g(v))", inv1, SumElt(phi_, e0 - inv(2, B - 1) + t_frac))
    tp_frac = e_from_fraction(t.frobenius_power(), alpha * p + 1, B)
    record("theta^-1 of (1 (x) g)(theta(v))", inv2, SumElt(phi_, e0 + tp_frac))
    record("defect", inv1 - inv2, SumElt(HomRxE.zero(F, d), obstruction(c)))
    return walk
