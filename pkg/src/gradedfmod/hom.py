"""Graded homomorphisms R_x -> E and F(R_x) -> E, and the isomorphisms between them.

A homogeneous map of degree ``d`` out of R_x (or F(R_x)) is pinned down by one
coefficient ``C_b`` per y-exponent ``b >= 1``: on an input whose "x-budget" is
``X`` (``X = n - d`` at ``1/x^n``, ``X = p*m - d`` at ``1 (x) 1/x^m``) it returns
``sum_b C_b / (x^(X-b) y^b)``, terms with ``X - b < 1`` being zero.  The two
classes differ only in how that sequence is anchored in a coefficient vector.

Coefficient vectors are truncations: ``precision`` is the number of stored
coefficients and anything beyond is unknown, unless the map is ``exact``, in
which case everything beyond is zero.  Equality compares on the shared window.
"""
from __future__ import annotations

from typing import NamedTuple, Sequence

from .errors import NotHomogeneousError, PrecisionError
from .field import GF
from .frobenius import TensorElt, theta_e_inv, theta_rx, theta_rx_inv
from .modules import EElt, RxElt, e_act
from .poly import Poly


class _GradedDual:
    __slots__ = ("field", "deg", "coeffs", "exact")

    def __init__(self, field: GF, degree: int, coeffs: Sequence[int], exact: bool = False):
        self.field = field
        self.deg = degree
        coeffs = tuple(coeffs)
        if exact:
            while coeffs and coeffs[-1] == 0:
                coeffs = coeffs[:-1]
        self.coeffs = coeffs
        self.exact = exact
        beta = self.beta
        for i, c in enumerate(coeffs[: max(0, 1 - beta)]):
            if c:
                raise ValueError(
                    f"coefficient c_{i} = {c} sits at y-exponent {beta + i} < 1 and must vanish"
                )

    # anchoring ----------------------------------------------------------

    @property
    def beta(self) -> int:
        raise NotImplementedError

    def degree(self) -> int:
        return self.deg

    @property
    def precision(self) -> int | None:
        return None if self.exact else len(self.coeffs)

    @property
    def ymax(self) -> int | None:
        """Largest y-exponent whose coefficient is known (``None``: all known)."""
        return None if self.exact else self.beta + len(self.coeffs) - 1

    def _support_max(self) -> int:
        return self.beta + len(self.coeffs) - 1

    def known(self, b: int) -> bool:
        return self.exact or b <= self.beta + len(self.coeffs) - 1

    def ycoeff(self, b: int) -> int:
        i = b - self.beta
        if i < 0:
            return 0
        if i >= len(self.coeffs):
            if self.exact:
                return 0
            raise PrecisionError(
                f"coefficient at y^{b} is beyond the precision {len(self.coeffs)} of this map"
            )
        return self.coeffs[i]

    def ycoeffs(self) -> dict[int, int]:
        beta = self.beta
        return {beta + i: c for i, c in enumerate(self.coeffs) if c}

    @classmethod
    def from_ycoeffs(cls, field: GF, degree: int, ycoeffs: dict[int, int], ymax: int | None):
        """Build from ``{b: C_b}``; ``ymax=None`` means exact."""
        obj = cls.__new__(cls)
        beta = obj._beta_for(field, degree)
        if ymax is None:
            top = max((b for b, c in ycoeffs.items() if c), default=beta - 1)
        else:
            top = ymax
        n = max(0, top - beta + 1)
        coeffs = [0] * n
        for b, c in ycoeffs.items():
            if c and beta <= b <= top:
                coeffs[b - beta] = c
            elif c and b > top:
                raise ValueError(f"y^{b} coefficient beyond requested window {top}")
        return cls(field, degree, coeffs, exact=ymax is None)

    @classmethod
    def _beta_for(cls, field: GF, degree: int) -> int:
        raise NotImplementedError

    def truncate(self, ymax: int | None):
        if ymax is None or (self.ymax is not None and ymax >= self.ymax):
            return self
        keep = {b: c for b, c in self.ycoeffs().items() if b <= ymax}
        return type(self).from_ycoeffs(self.field, self.deg, keep, ymax)

    # evaluation ----------------------------------------------------------

    def _value(self, X: int, r: Poly) -> EElt:
        """``r * sum_b C_b/(x^(X-b) y^b)``, touching only coefficients that survive."""
        F = self.field
        out: dict[tuple[int, int], int] = {}
        top = self._support_max() if self.exact else None
        for (i, j), rc in r.terms.items():
            hi = X - i - 1
            if top is not None:
                hi = min(hi, top)
            for b in range(j + 1, hi + 1):
                c = self.ycoeff(b)
                if not c:
                    continue
                m = (X - b - i, b - j)
                s = F.add(out.get(m, 0), F.mul(rc, c))
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return EElt._raw(F, out)

    # module structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _window(self, other) -> int | None:
        a, b = self.ymax, other.ymax
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        if self.deg != other.deg:
            return self.is_zero() and other.is_zero()
        top = self._window(other)
        if top is None:
            return self.ycoeffs() == other.ycoeffs()
        return all(self.ycoeff(b) == other.ycoeff(b) for b in range(1, top + 1))

    __hash__ = None  # type: ignore[assignment]

    def _combine(self, other, sign: int):
        if type(other) is not type(self):
            raise TypeError(f"cannot add {type(self).__name__} and {type(other).__name__}")
        top = self._window(other)
        if self.deg != other.deg:
            if other.is_zero():
                return self.truncate(top)
            if self.is_zero():
                return (other if sign > 0 else -other).truncate(top)
            raise NotHomogeneousError(f"adding maps of degrees {self.deg} and {other.deg}")
        F = self.field
        ys = dict(self.ycoeffs())
        for b, c in other.ycoeffs().items():
            if top is not None and b > top:
                continue
            ys[b] = F.add(ys.get(b, 0), c if sign > 0 else F.neg(c))
        ys = {b: c for b, c in ys.items() if c and (top is None or b <= top)}
        return type(self).from_ycoeffs(F, self.deg, ys, top)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        F = self.field
        return type(self)(F, self.deg, [F.neg(c) for c in self.coeffs], self.exact)

    def scale(self, c: int):
        F = self.field
        return type(self)(F, self.deg, [F.mul(c, v) for v in self.coeffs], self.exact)

    def rmul(self, r: Poly):
        """``(x^a y^b . f)`` has degree ``d + a + b`` and ``C'_B = C_(B+b)``."""
        F = self.field
        if r.is_zero():
            return type(self).from_ycoeffs(F, self.deg, {}, None)
        deg = r.degree()
        new_deg = self.deg + deg
        ys: dict[int, int] = {}
        top = self.ymax
        new_top = None
        for (a, b), rc in r.terms.items():
            if top is not None:
                new_top = top - b if new_top is None else min(new_top, top - b)
            for B, c in self.ycoeffs().items():
                if B - b >= 1:
                    ys[B - b] = F.add(ys.get(B - b, 0), F.mul(rc, c))
        if new_top is not None:
            new_top = max(new_top, 0)
            ys = {B: c for B, c in ys.items() if B <= new_top}
        return type(self).from_ycoeffs(F, new_deg, ys, new_top)

    def render(self) -> str:
        if self.is_zero():
            return f"deg {self.deg}; 0" + ("" if self.exact else f" through y^{self.ymax}")
        cs = ", ".join(str(c) for c in self.coeffs)
        tail = "" if self.exact else ", ..."
        return f"deg {self.deg}; beta {self.beta}; c = [{cs}{tail}]"

    def __str__(self) -> str:
        return self.render()


class HomRxE(_GradedDual):
    """Degree-``d`` element of *Hom(R_x, E) = (R_x)^vee.

    Canonically anchored with ``beta = 1`` (so ``c_i`` is the coefficient of
    ``y^(i+1)``) and anchor level ``alpha = d + 2``:
    ``f(1/x^(alpha+n)) = sum_{i<=n} c_i / (x^(n-i+1) y^(1+i))``.
    """

    __slots__ = ()

    @property
    def beta(self) -> int:
        return 1

    @property
    def alpha(self) -> int:
        return self.deg + 2

    @classmethod
    def _beta_for(cls, field: GF, degree: int) -> int:
        return 1

    @classmethod
    def zero(cls, field: GF, degree: int) -> "HomRxE":
        return cls(field, degree, (), exact=True)

    def __repr__(self) -> str:
        return f"HomRxE({self.render()})"

    def __call__(self, m: RxElt) -> EElt:
        return self._value(m.n - self.deg, m.num)

    def eval_level(self, n: int) -> EElt:
        return self._value(n - self.deg, Poly.constant(self.field, 1))

    @classmethod
    def from_level_value(cls, field: GF, degree: int, n: int, value: EElt, exact: bool = False) -> "HomRxE":
        """Recover the map from its value at ``1/x^n`` (all ``C_b`` with ``b < n - d``)."""
        return cls.from_ycoeffs(field, degree, _read_level(value, n - degree), None if exact else n - degree - 1)


class HomFRxE(_GradedDual):
    """Degree-``d`` element of *Hom(F(R_x), E).

    Anchored as ``d = (alpha-1)p - beta`` with ``-p+2 <= beta <= 1``:
    ``h(1 (x) 1/x^(alpha+n)) = sum_{i<(n+1)p} c_i / (x^((n+1)p-i) y^(beta+i))``.
    """

    __slots__ = ()

    @classmethod
    def _beta_for(cls, field: GF, degree: int) -> int:
        return 1 - (degree + 1) % field.p

    @property
    def beta(self) -> int:
        return self._beta_for(self.field, self.deg)

    @property
    def alpha(self) -> int:
        return (self.deg + self.beta) // self.field.p + 1

    @classmethod
    def zero(cls, field: GF, degree: int) -> "HomFRxE":
        return cls(field, degree, (), exact=True)

    def __repr__(self) -> str:
        return f"HomFRxE({self.render()})"

    def eval_level(self, m: int) -> EElt:
        """Value at ``1 (x) 1/x^m``."""
        return self._value(self.field.p * m - self.deg, Poly.constant(self.field, 1))

    def __call__(self, t: TensorElt) -> EElt:
        total = EElt.zero(self.field)
        for (a, b), m in t.slots.items():
            total = total + homF_eval(self, Poly.monomial(self.field, a, b), m)
        return total

    @classmethod
    def from_level_value(cls, field: GF, degree: int, m: int, value: EElt, exact: bool = False) -> "HomFRxE":
        X = field.p * m - degree
        return cls.from_ycoeffs(field, degree, _read_level(value, X), None if exact else X - 1)


def _read_level(value: EElt, X: int) -> dict[int, int]:
    ys = {}
    for (a, b), c in value.terms.items():
        if a + b != X:
            raise NotHomogeneousError(f"term 1/(x^{a} y^{b}) is not in the expected degree {-X}")
        ys[b] = c
    return ys


def hom_eval(f: HomRxE, n: int) -> EElt:
    """``f(1/x^n)``."""
    return f.eval_level(n)


def homF_eval(h: HomFRxE, r: Poly, m: RxElt) -> EElt:
    """``h(r (x) s/x^n) = r s^p . h(1 (x) 1/x^n)``."""
    return h._value(h.field.p * m.n - h.deg, r * m.num.frobenius_power())


class SplitIndices(NamedTuple):
    m: int
    n: int
    k: int
    l: int


def split_indices(i: int, alpha: int, beta: int, p: int) -> SplitIndices:
    """Exponents with ``f_i(x^m y^n (x) y^k / x^l) = c_i/(xy)`` for the i-th coefficient.

    ``i = qp + r`` with ``0 <= r < p``.
    """
    if i < 0:
        raise ValueError("coefficient index must be >= 0")
    q, r = divmod(i, p)
    n = (beta + r - 1) % p
    return SplitIndices(m=p - 1 - r, n=n, k=(beta + i - 1 - n) // p, l=alpha + q)


# -- the duality maps ---------------------------------------------------------


def dual_precompose_theta(f: HomRxE) -> HomFRxE:
    """``f -> f o theta_Rx^-1``, read off from its value at ``1 (x) 1/x^m`` for the deepest known m."""
    F, p, d = f.field, f.field.p, f.deg
    if f.exact:
        m = -((-(f._support_max() + d + 1)) // p)
    else:
        m = (f.ymax + d + 1) // p
    probe = TensorElt.normalize(Poly.constant(F, 1), RxElt.inverse_x(F, m))
    value = f(theta_rx_inv(probe))
    return HomFRxE.from_level_value(F, d, m, value, exact=f.exact)


def dual_precompose_theta_inv(h: HomFRxE) -> HomRxE:
    """``h -> h o theta_Rx``."""
    F, d = h.field, h.deg
    n = (h._support_max() if h.exact else h.ymax) + d + 1
    value = h(theta_rx(RxElt.inverse_x(F, n)))
    return HomRxE.from_level_value(F, d, n, value, exact=h.exact)


def phi(h: HomFRxE) -> TensorElt:
    """*Hom(F(R_x), E) -> F(*Hom(R_x, E)): ``h -> sum_i x^(p-m_i-1) y^(p-n_i-1) (x) hat f_i``.

    ``hat f_i`` has degree ``l_i - k_i - 2`` and sends ``1/x^(l_i+n)`` to
    ``c_i^(1/p) / (x^(n+1) y^(k_i+1))``; the hats in one residue class of i mod p
    share their first factor and are summed into one map.
    """
    F, p = h.field, h.field.p
    alpha, beta = h.alpha, h.beta
    groups: dict[tuple[int, int], tuple[int, dict[int, int], int]] = {}
    n_coeffs = len(h.coeffs)
    for r in range(p):
        idx = split_indices(r, alpha, beta, p)
        slot = (p - idx.m - 1, p - idx.n - 1)
        deg = idx.l - idx.k - 2
        ys: dict[int, int] = {}
        last_b = idx.k  # y-exponent just below the first one in this class
        for i in range(r, n_coeffs, p):
            si = split_indices(i, alpha, beta, p)
            last_b = si.k + 1
            c = h.coeffs[i]
            if c:
                ys[si.k + 1] = F.pth_root(c)
        groups[slot] = (deg, ys, last_b)
    slots = {}
    for slot, (deg, ys, last_b) in groups.items():
        slots[slot] = HomRxE.from_ycoeffs(F, deg, ys, None if h.exact else max(last_b, 0))
    return TensorElt(F, slots)


def psi(t: TensorElt, degree: int | None = None) -> HomFRxE:
    """F(*Hom(R_x, E)) -> *Hom(F(R_x), E): ``r (x) f -> (1 (x) 1/x^l -> r f(1/x^l)^p)``."""
    F = t.field
    d = t.degree()
    if d is None:
        if degree is None:
            raise ValueError("degree required to map the zero tensor")
        return HomFRxE.zero(F, degree)
    if degree is not None and degree != d:
        raise NotHomogeneousError(f"tensor has degree {d}, expected {degree}")
    truncated = [g for g in t.slots.values() if not g.exact]
    if truncated:
        level = min(g.ymax + g.deg + 1 for g in truncated)
    else:
        level = max(g._support_max() + g.deg + 1 for g in t.slots.values())
    value = EElt.zero(F)
    for (a, b), g in t.slots.items():
        value = value + e_act(Poly.monomial(F, a, b), g.eval_level(level).frobenius_power())
    return HomFRxE.from_level_value(F, d, level, value, exact=not truncated)


def theta_hom(f: HomRxE) -> TensorElt:
    """Graded F-module structure on (R_x)^vee: ``phi o (precompose theta_Rx^-1)``."""
    return phi(dual_precompose_theta(f))


def theta_hom_inv(t: TensorElt, degree: int | None = None) -> HomRxE:
    return dual_precompose_theta_inv(psi(t, degree))


def homFR_to_FE(value: EElt) -> TensorElt:
    """*Hom(F(R), E) -> F(E) for the map with ``f(1 (x) 1) = sum c_i/(x^(n_i) y^(m_i))``:
    ``f -> sum c_i (x^(n_i) y^(m_i))^(p-1) (x) 1/(x^(n_i) y^(m_i))``."""
    F, p = value.field, value.field.p
    slots: dict[tuple[int, int], EElt] = {}
    for (n, m), c in value.terms.items():
        qa, ra = divmod(n * (p - 1), p)
        qb, rb = divmod(m * (p - 1), p)
        moved = e_act(Poly.monomial(F, qa, qb, F.pth_root(c)), EElt.inverse_monomial(F, n, m))
        slots[(ra, rb)] = slots[(ra, rb)] + moved if (ra, rb) in slots else moved
    return TensorElt(F, slots)


def homFR_to_FE_inv(t: TensorElt) -> EElt:
    return theta_e_inv(t)


__all__ = [
    "HomRxE",
    "HomFRxE",
    "SplitIndices",
    "split_indices",
    "hom_eval",
    "homF_eval",
    "dual_precompose_theta",
    "dual_precompose_theta_inv",
    "phi",
    "psi",
    "theta_hom",
    "theta_hom_inv",
    "homFR_to_FE",
    "homFR_to_FE_inv",
]
