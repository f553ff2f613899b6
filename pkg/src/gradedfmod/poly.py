"""Sparse polynomials in k[x, y] over GF(p^e), graded by total degree."""
from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

from .errors import NotHomogeneousError, ParseError
from .field import GF

Monomial = tuple[int, int]


class Poly:
    """Immutable sparse polynomial ``{(a, b): c}`` meaning ``sum c x^a y^b``."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field: GF, terms: Mapping[Monomial, int] | None = None):
        self.field = field
        self.terms: dict[Monomial, int] = {}
        if terms:
            for (a, b), c in terms.items():
                if a < 0 or b < 0:
                    raise ValueError(f"negative exponent in monomial x^{a} y^{b}")
                if c:
                    self.terms[(a, b)] = c
        self._hash = None

    @classmethod
    def _raw(cls, field: GF, terms: dict[Monomial, int]) -> "Poly":
        # terms must already be zero-free
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, field: GF) -> "Poly":
        return cls._raw(field, {})

    @classmethod
    def constant(cls, field: GF, c: int) -> "Poly":
        return cls.monomial(field, 0, 0, c)

    @classmethod
    def monomial(cls, field: GF, a: int, b: int, c: int = 1) -> "Poly":
        return cls(field, {(a, b): c})

    @classmethod
    def x(cls, field: GF) -> "Poly":
        return cls.monomial(field, 1, 0)

    @classmethod
    def y(cls, field: GF) -> "Poly":
        return cls.monomial(field, 0, 1)

    # -- container protocol -------------------------------------------------

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, a: int, b: int) -> int:
        return self.terms.get((a, b), 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.field == other.field and self.terms == other.terms
        if isinstance(other, int):
            return self.terms == ({(0, 0): other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return Poly.constant(self.field, signed_coefficient(self.field, 1 if other >= 0 else -1, abs(other)))
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = F.add(out.get(m, 0), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(F, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly._raw(F, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        out: dict[Monomial, int] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                m = (a1 + a2, b1 + b2)
                s = F.add(out.get(m, 0), F.mul(c1, c2))
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly._raw(F, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> "Poly":
        F = self.field
        if c == 0:
            return Poly.zero(F)
        return Poly._raw(F, {m: F.mul(c, v) for m, v in self.terms.items()})

    def shift(self, da: int, db: int) -> "Poly":
        """Multiply by the monomial ``x^da y^db``."""
        return Poly._raw(self.field, {(a + da, b + db): c for (a, b), c in self.terms.items()})

    def rmul(self, r: "Poly") -> "Poly":
        """R-module action (R acting on itself)."""
        return r * self

    def frobenius_power(self) -> "Poly":
        """``r^p``: coefficients raised to ``p`` and exponents multiplied by ``p``."""
        F = self.field
        p = F.p
        return Poly._raw(F, {(p * a, p * b): F.frobenius(c) for (a, b), c in self.terms.items()})

    def min_x(self) -> int:
        return min(a for a, _ in self.terms)

    def degree(self) -> int | None:
        """Degree of a homogeneous polynomial, ``None`` for zero."""
        if not self.terms:
            return None
        degs = {a + b for a, b in self.terms}
        if len(degs) != 1:
            raise NotHomogeneousError(f"{self} is not homogeneous")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({a + b for a, b in self.terms}) <= 1


def poly_degree(r: Poly) -> tuple[int, bool]:
    """Return ``(max monomial degree, homogeneous?)``; zero has no degree."""
    if r.is_zero():
        raise ValueError("undefined degree: the zero polynomial has no degree")
    degs = {a + b for a, b in r.terms}
    return max(degs), len(degs) == 1


def frobenius_decompose(r: Poly) -> dict[Monomial, Poly]:
    """Write ``r = sum x^a y^b (r_ab)^p`` with ``0 <= a, b < p``.

    The decomposition is unique since ``F_*R`` is free over ``R`` on these
    monomials; coefficients of ``r_ab`` are p-th roots of those of ``r``.
    """
    F = r.field
    p = F.p
    parts: dict[Monomial, dict[Monomial, int]] = {}
    for (a, b), c in r.terms.items():
        qa, ra = divmod(a, p)
        qb, rb = divmod(b, p)
        parts.setdefault((ra, rb), {})[(qa, qb)] = F.pth_root(c)
    return {k: Poly._raw(F, v) for k, v in parts.items()}


def recompose(parts: Mapping[Monomial, Poly], field: GF) -> Poly:
    total = Poly.zero(field)
    for (a, b), part in parts.items():
        total = total + part.frobenius_power().shift(a, b)
    return total


# -- text grammar -----------------------------------------------------------

_FACTOR = re.compile(r"^([xy])(?:\^(\d+))?$")


def format_monomial(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("x" if a == 1 else f"x^{a}")
    if b:
        parts.append("y" if b == 1 else f"y^{b}")
    return "*".join(parts)


def _term_order(m: Monomial) -> tuple[int, int]:
    return (-(m[0] + m[1]), -m[0])


def format_poly(r: Poly) -> str:
    if not r.terms:
        return "0"
    out = []
    for (a, b) in sorted(r.terms, key=_term_order):
        c = r.terms[(a, b)]
        mono = format_monomial(a, b)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


def split_terms(text: str) -> list[tuple[int, str]]:
    """Split ``"a + b - c"`` into signed term strings (sign inside parentheses ignored)."""
    text = text.replace(" ", "")
    if not text:
        raise ParseError("empty expression")
    terms: list[tuple[int, str]] = []
    depth = 0
    sign = 1
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0 and text[i - 1] not in "^*/":
            terms.append((sign, text[start:i]))
            sign = 1 if ch == "+" else -1
            start = i + 1
    terms.append((sign, text[start:]))
    out = []
    for s, t in terms:
        if t.startswith("-"):
            s, t = -s, t[1:]
        if not t:
            if s == 1 and not out:
                continue
            raise ParseError(f"dangling sign in {text!r}")
        out.append((s, t))
    return out


def signed_coefficient(field: GF, sign: int, value: int) -> int:
    if field.e == 1:
        value %= field.p
    elif not 0 <= value < field.q:
        raise ParseError(f"coefficient {value} is not an element code of {field}")
    return value if sign > 0 else field.neg(value)


def parse_monomial_factors(factors: Iterable[str]) -> tuple[int | None, int, int]:
    coef = None
    a = b = 0
    for f in factors:
        if f.isdigit():
            if coef is not None:
                raise ParseError("two coefficients in one term")
            coef = int(f)
            continue
        m = _FACTOR.match(f)
        if not m:
            raise ParseError(f"bad factor {f!r}")
        k = int(m.group(2)) if m.group(2) is not None else 1
        if m.group(1) == "x":
            a += k
        else:
            b += k
    return coef, a, b


def parse_poly(text: str, field: GF) -> Poly:
    """Parse ``"y^2 + 2*x*y"``-style text into a :class:`Poly`."""
    total = Poly.zero(field)
    for sign, term in split_terms(text):
        coef, a, b = parse_monomial_factors(term.split("*"))
        c = signed_coefficient(field, sign, 1 if coef is None else coef)
        total = total + Poly.monomial(field, a, b, c)
    return total
