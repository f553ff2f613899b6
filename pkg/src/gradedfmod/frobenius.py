"""The Frobenius functor F(M) = F_*R (x)_R M and the structure maps of R, R_x, E and N = R_x + R.

Since F_*R is free over R on ``x^a y^b`` (``0 <= a, b < p``), every element of
F(M) has a unique normal form ``sum x^a y^b (x) m_ab``; that is what
:class:`TensorElt` stores.  ``deg(x^a y^b (x) m) = a + b + p deg(m)``.
"""
from __future__ import annotations

from typing import Callable, Iterator, Mapping

from .errors import NotHomogeneousError, StructureError
from .field import GF
from .modules import EElt, RxElt, SumElt
from .poly import Monomial, Poly, format_monomial, frobenius_decompose


class TensorElt:
    """Normal-form element of F(M): ``{(a, b): m_ab}`` with ``0 <= a, b < p``."""

    __slots__ = ("field", "slots")

    def __init__(self, field: GF, slots: Mapping[Monomial, object] | None = None):
        self.field = field
        self.slots: dict[Monomial, object] = {}
        p = field.p
        for (a, b), m in (slots or {}).items():
            if not (0 <= a < p and 0 <= b < p):
                raise ValueError(f"x^{a} y^{b} is not a normal-form first factor for p={p}")
            if not m.is_zero():
                self.slots[(a, b)] = m

    @classmethod
    def zero(cls, field: GF) -> "TensorElt":
        return cls(field)

    @classmethod
    def normalize(cls, r: Poly, m) -> "TensorElt":
        """Normal form of ``r (x) m``: ``r = sum x^a y^b r_ab^p`` gives ``sum x^a y^b (x) r_ab m``."""
        return cls(r.field, {ab: m.rmul(part) for ab, part in frobenius_decompose(r).items()})

    def __iter__(self) -> Iterator[tuple[Monomial, object]]:
        return iter(sorted(self.slots.items()))

    def __len__(self) -> int:
        return len(self.slots)

    def __bool__(self) -> bool:
        return bool(self.slots)

    def is_zero(self) -> bool:
        return not self.slots

    def __eq__(self, other) -> bool:
        if isinstance(other, TensorElt):
            if self.slots.keys() != other.slots.keys():
                return False
            return all(self.slots[k] == other.slots[k] for k in self.slots)
        if other == 0:
            return not self.slots
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TensorElt({self})"

    def __str__(self) -> str:
        return format_tensor(self)

    def __add__(self, other: "TensorElt") -> "TensorElt":
        out = dict(self.slots)
        for k, m in other.slots.items():
            out[k] = out[k] + m if k in out else m
        return TensorElt(self.field, out)

    def __neg__(self) -> "TensorElt":
        return TensorElt(self.field, {k: -m for k, m in self.slots.items()})

    def __sub__(self, other: "TensorElt") -> "TensorElt":
        return self + (-other)

    def scale(self, c: int) -> "TensorElt":
        # k is perfect, so c (x) m = 1 (x) c^(1/p) m
        root = self.field.pth_root(c)
        return TensorElt(self.field, {k: m.scale(root) for k, m in self.slots.items()})

    def rmul(self, r: Poly) -> "TensorElt":
        """R acts on the first factor."""
        total = TensorElt.zero(self.field)
        for (a, b), m in self.slots.items():
            total = total + TensorElt.normalize(r.shift(a, b), m)
        return total

    def degree(self) -> int | None:
        degs = set()
        p = self.field.p
        for (a, b), m in self.slots.items():
            d = m.degree()
            if d is not None:
                degs.add(a + b + p * d)
        if len(degs) > 1:
            raise NotHomogeneousError(f"tensor has terms in degrees {sorted(degs)}")
        return degs.pop() if degs else None

    def map_slots(self, fn: Callable) -> "TensorElt":
        """Apply an R-linear map ``M -> M'`` slotwise (i.e. ``id (x) fn``)."""
        return TensorElt(self.field, {k: fn(m) for k, m in self.slots.items()})

    def component(self, index: int) -> "TensorElt":
        """Project a tensor over a direct sum onto one summand."""
        return TensorElt(self.field, {k: (m.first if index == 0 else m.second) for k, m in self.slots.items()})


def inject(t: TensorElt, index: int, zero_other: Callable[[object], object]) -> TensorElt:
    """Include F(M_i) into F(M_0 + M_1); ``zero_other(m)`` builds the matching zero."""
    slots = {}
    for k, m in t.slots.items():
        slots[k] = SumElt(m, zero_other(m)) if index == 0 else SumElt(zero_other(m), m)
    return TensorElt(t.field, slots)


def combine(t_first: TensorElt, t_second: TensorElt, zero_first, zero_second) -> TensorElt:
    """``(r1 (x) f, r2 (x) m) -> r1 (x) (f, 0) + r2 (x) (0, m)``."""
    return inject(t_first, 0, zero_second) + inject(t_second, 1, zero_first)


def frobenius_contract(t: TensorElt):
    """``sum x^a y^b (x) m_ab -> sum x^a y^b m_ab^[p]`` for M in {R, R_x, E}."""
    total = None
    for (a, b), m in t.slots.items():
        term = m.frobenius_power().rmul(Poly.monomial(t.field, a, b))
        total = term if total is None else total + term
    return total


def format_tensor(t: TensorElt) -> str:
    if not t.slots:
        return "0"
    out = []
    for (a, b), m in sorted(t.slots.items()):
        out.append(f"{format_monomial(a, b) or '1'} (x) {m}")
    return " + ".join(out)


# -- structure maps -----------------------------------------------------------


def theta_r(r: Poly) -> TensorElt:
    return TensorElt.normalize(r, Poly.constant(r.field, 1))


def theta_r_inv(t: TensorElt) -> Poly:
    out = frobenius_contract(t)
    return Poly.zero(t.field) if out is None else out


def theta_rx(m: RxElt) -> TensorElt:
    """``r/x^n -> r x^(n(p-1)) (x) 1/x^n``."""
    F = m.field
    return TensorElt.normalize(m.num.shift(m.n * (F.p - 1), 0), RxElt.inverse_x(F, m.n))


def theta_rx_inv(t: TensorElt) -> RxElt:
    """``r (x) s/x^n -> r s^p / x^(pn)``."""
    out = frobenius_contract(t)
    return RxElt.zero(t.field) if out is None else out


def theta_e(e: EElt) -> TensorElt:
    """``sum c/(x^a y^b) -> sum c (x^a y^b)^(p-1) (x) 1/(x^a y^b)``."""
    F = e.field
    p = F.p
    total = TensorElt.zero(F)
    for (a, b), c in e.terms.items():
        r = Poly.monomial(F, a * (p - 1), b * (p - 1), c)
        total = total + TensorElt.normalize(r, EElt.inverse_monomial(F, a, b))
    return total


def theta_e_inv(t: TensorElt) -> EElt:
    """``x^a y^b (x) 1/(x^c y^d) -> 1/(x^(pc-a) y^(pd-b))``."""
    out = frobenius_contract(t)
    return EElt.zero(t.field) if out is None else out


def _zero_rx(m) -> RxElt:
    return RxElt.zero(m.field)


def _zero_poly(m) -> Poly:
    return Poly.zero(m.field)


class StructureMapN:
    """Graded F-module structure on ``N = R_x + R`` given by a degree-0 twist ``u``.

    ``(theta_Rx^-1 + theta_R^-1) o theta_N (m, r) = (m + r u, r)``.
    """

    def __init__(self, u: RxElt):
        if not u.is_zero() and u.degree() != 0:
            raise StructureError(f"invalid structure parameter {u}: twist must have degree 0")
        self.u = u

    @property
    def field(self) -> GF:
        return self.u.field

    def __repr__(self) -> str:
        return f"StructureMapN(u={self.u})"

    def theta(self, v: SumElt) -> TensorElt:
        m, r = v.first, v.second
        first = theta_rx(m + self.u.rmul(r))
        second = theta_r(r)
        return combine(first, second, _zero_rx, _zero_poly)

    def theta_inv(self, t: TensorElt) -> SumElt:
        shifted = theta_rx_inv(t.component(0))
        r = theta_r_inv(t.component(1))
        return SumElt(shifted - self.u.rmul(r), r)


def twist_y_over_x(field: GF) -> RxElt:
    return RxElt(Poly.y(field), 1)
