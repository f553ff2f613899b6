"""The base graded R-modules: E = H^2_(x,y)(R), the localization R_x, and direct sums.

E is stored intrinsically as finite sums of inverse monomials ``c/(x^a y^b)``
with ``a, b >= 1``; the socle ``1/(xy)`` sits in degree -2.
"""
from __future__ import annotations

from typing import Iterator, Mapping

from .errors import NotHomogeneousError, ParseError
from .field import GF
from .poly import (
    Monomial,
    Poly,
    format_monomial,
    parse_monomial_factors,
    signed_coefficient,
    split_terms,
)


class EElt:
    """Element of E: ``{(a, b): c}`` meaning ``sum c / (x^a y^b)``."""

    __slots__ = ("field", "terms")

    def __init__(self, field: GF, terms: Mapping[Monomial, int] | None = None):
        self.field = field
        self.terms: dict[Monomial, int] = {}
        if terms:
            for (a, b), c in terms.items():
                if a < 1 or b < 1:
                    raise ValueError(f"inverse monomial 1/(x^{a} y^{b}) needs exponents >= 1")
                if c:
                    self.terms[(a, b)] = c

    @classmethod
    def _raw(cls, field: GF, terms: dict[Monomial, int]) -> "EElt":
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, field: GF) -> "EElt":
        return cls._raw(field, {})

    @classmethod
    def inverse_monomial(cls, field: GF, a: int, b: int, c: int = 1) -> "EElt":
        return cls(field, {(a, b): c})

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self.terms.items())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, a: int, b: int) -> int:
        return self.terms.get((a, b), 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, EElt):
            return self.field == other.field and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"EElt({self})"

    def __str__(self) -> str:
        return format_e(self)

    def __add__(self, other: "EElt") -> "EElt":
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = F.add(out.get(m, 0), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return EElt._raw(F, out)

    def __neg__(self) -> "EElt":
        F = self.field
        return EElt._raw(F, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "EElt") -> "EElt":
        return self + (-other)

    def scale(self, c: int) -> "EElt":
        F = self.field
        if c == 0:
            return EElt.zero(F)
        return EElt._raw(F, {m: F.mul(c, v) for m, v in self.terms.items()})

    def rmul(self, r: Poly) -> "EElt":
        return e_act(r, self)

    def degree(self) -> int | None:
        if not self.terms:
            return None
        degs = {-(a + b) for a, b in self.terms}
        if len(degs) != 1:
            raise NotHomogeneousError(f"{self} is not homogeneous")
        return degs.pop()

    def frobenius_power(self) -> "EElt":
        return e_frobenius_power(self)


def e_act(r: Poly, e: EElt) -> EElt:
    """``x^c y^d . 1/(x^a y^b) = 1/(x^(a-c) y^(b-d))``, zero once an exponent drops below 1."""
    F = e.field
    out: dict[Monomial, int] = {}
    for (c, d), rc in r.terms.items():
        for (a, b), ec in e.terms.items():
            na, nb = a - c, b - d
            if na < 1 or nb < 1:
                continue
            m = (na, nb)
            s = F.add(out.get(m, 0), F.mul(rc, ec))
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return EElt._raw(F, out)


def e_from_fraction(h: Poly, A: int, B: int) -> EElt:
    """Normal form of the fraction ``h / (x^A y^B)`` in E."""
    if A < 1 or B < 1:
        raise ValueError("denominator exponents must be >= 1")
    return e_act(h, EElt.inverse_monomial(h.field, A, B))


def _in_monomial_ideal(h: Poly, A: int, B: int) -> bool:
    return all(i >= A or j >= B for (i, j) in h.terms)


def e_is_zero_cech(h: Poly, A: int, B: int, r_max: int | None = None) -> bool:
    """Does ``(xy)^r h`` lie in ``(x^(A+r), y^(B+r))`` for some ``r <= r_max``?"""
    if r_max is None:
        r_max = (max(i + j for i, j in h.terms) if h else 0) + A + B
    if r_max < 0:
        raise ValueError("r_max must be >= 0")
    xy = Poly.monomial(h.field, 1, 1)
    cur = h
    for r in range(r_max + 1):
        if _in_monomial_ideal(cur, A + r, B + r):
            return True
        cur = xy * cur
    return False


def e_frobenius_power(e: EElt) -> EElt:
    """``sum c/(x^a y^b) -> sum c^p/(x^(pa) y^(pb))``."""
    F = e.field
    p = F.p
    return EElt._raw(F, {(p * a, p * b): F.frobenius(c) for (a, b), c in e.terms.items()})


class RxElt:
    """Element ``s / x^n`` of R_x kept in lowest terms."""

    __slots__ = ("num", "n")

    def __init__(self, num: Poly, n: int = 0):
        if n < 0:
            num, n = num.shift(-n, 0), 0
        if num.is_zero():
            n = 0
        elif n > 0:
            k = min(num.min_x(), n)
            if k:
                num, n = num.shift(-k, 0), n - k
        self.num = num
        self.n = n

    @property
    def field(self) -> GF:
        return self.num.field

    @classmethod
    def zero(cls, field: GF) -> "RxElt":
        return cls(Poly.zero(field), 0)

    @classmethod
    def inverse_x(cls, field: GF, n: int, c: int = 1) -> "RxElt":
        return cls(Poly.constant(field, c), n)

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RxElt):
            return self.n == other.n and self.num == other.num
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.n))

    def __repr__(self) -> str:
        return f"RxElt({self})"

    def __str__(self) -> str:
        if self.n == 0:
            return str(self.num)
        den = "x" if self.n == 1 else f"x^{self.n}"
        return f"({self.num})/{den}"

    def __add__(self, other: "RxElt") -> "RxElt":
        n = max(self.n, other.n)
        return RxElt(self.num.shift(n - self.n, 0) + other.num.shift(n - other.n, 0), n)

    def __neg__(self) -> "RxElt":
        return RxElt(-self.num, self.n)

    def __sub__(self, other: "RxElt") -> "RxElt":
        return self + (-other)

    def scale(self, c: int) -> "RxElt":
        return RxElt(self.num.scale(c), self.n)

    def rmul(self, r: Poly) -> "RxElt":
        return RxElt(r * self.num, self.n)

    def __mul__(self, other: "RxElt") -> "RxElt":
        return RxElt(self.num * other.num, self.n + other.n)

    def degree(self) -> int | None:
        d = self.num.degree()
        return None if d is None else d - self.n

    def frobenius_power(self) -> "RxElt":
        return RxElt(self.num.frobenius_power(), self.field.p * self.n)


def rx_normalize(s: Poly, n: int) -> tuple[Poly, int]:
    """Cancel common powers of x so that x does not divide the numerator when n > 0."""
    r = RxElt(s, n)
    return r.num, r.n


class SumElt:
    """Element ``(first, second)`` of a direct sum of two graded modules."""

    __slots__ = ("first", "second")

    def __init__(self, first, second):
        self.first = first
        self.second = second

    def __iter__(self):
        return iter((self.first, self.second))

    @property
    def field(self) -> GF:
        return self.second.field

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_zero(self) -> bool:
        return self.first.is_zero() and self.second.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, SumElt):
            return self.first == other.first and self.second == other.second
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"SumElt({self.first!r}, {self.second!r})"

    def __str__(self) -> str:
        return f"({self.first}, {self.second})"

    def __add__(self, other: "SumElt") -> "SumElt":
        return SumElt(self.first + other.first, self.second + other.second)

    def __neg__(self) -> "SumElt":
        return SumElt(-self.first, -self.second)

    def __sub__(self, other: "SumElt") -> "SumElt":
        return SumElt(self.first - other.first, self.second - other.second)

    def scale(self, c: int) -> "SumElt":
        return SumElt(self.first.scale(c), self.second.scale(c))

    def rmul(self, r: Poly) -> "SumElt":
        return SumElt(self.first.rmul(r), self.second.rmul(r))

    def degree(self) -> int | None:
        d1 = None if self.first.is_zero() else self.first.degree()
        d2 = self.second.degree()
        if d1 is not None and d2 is not None and d1 != d2:
            raise NotHomogeneousError(f"components of {self} have degrees {d1} and {d2}")
        return d1 if d1 is not None else d2


# -- text grammar -----------------------------------------------------------


def format_e(e: EElt) -> str:
    if not e.terms:
        return "0"
    out = []
    for a, b in sorted(e.terms, key=lambda m: (m[0] + m[1], m[0])):
        out.append(f"{e.terms[(a, b)]}/({format_monomial(a, b)})")
    return " + ".join(out)


def parse_e(text: str, field: GF) -> EElt:
    """Parse ``"1/(x^2*y) + 2/(x*y^4)"`` into an :class:`EElt`."""
    total = EElt.zero(field)
    for sign, term in split_terms(text):
        if "/" not in term:
            raise ParseError(f"E-term {term!r} must look like c/(x^a*y^b)")
        num, den = term.split("/", 1)
        if not (den.startswith("(") and den.endswith(")")):
            if "*" in den:
                raise ParseError(f"denominator {den!r} must be parenthesized")
        den = den.strip("()")
        if not num.isdigit():
            raise ParseError(f"numerator {num!r} must be a decimal residue")
        _, a, b = parse_monomial_factors(den.split("*"))
        c = signed_coefficient(field, sign, int(num))
        total = total + EElt.inverse_monomial(field, a, b, c)
    return total
