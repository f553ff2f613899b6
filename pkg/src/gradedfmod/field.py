"""Finite fields GF(p^e).

Elements are plain ints ``0 <= a < p**e``.  For ``e > 1`` the base-``p``
digits of ``a`` are the coordinates of the element in the power basis
``1, g, ..., g^(e-1)`` where ``g`` is a root of the lexicographically first
primitive polynomial of degree ``e`` over GF(p).
"""
from __future__ import annotations

from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _digits(a: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        a, d = divmod(a, p)
        out.append(d)
    return out


def _undigits(ds, p: int) -> int:
    a = 0
    for d in reversed(ds):
        a = a * p + d
    return a


def _times_generator(ds: list[int], low: list[int], p: int) -> list[int]:
    # multiply by g where g^e = -(low[0] + low[1] g + ...)
    top = ds[-1]
    shifted = [0] + ds[:-1]
    return [(s - top * c) % p for s, c in zip(shifted, low)]


def _primitive_modulus(p: int, e: int) -> list[int]:
    """Lower coefficients of the first monic primitive polynomial of degree e."""
    q = p**e
    for code in range(1, q):
        low = _digits(code, p, e)
        if low[0] == 0:
            continue
        cur = _digits(1, p, e)
        seen = 0
        for k in range(1, q):
            cur = _times_generator(cur, low, p)
            if all(d == 0 for d in cur):
                break
            if cur == _digits(1, p, e):
                seen = k
                break
        if seen == q - 1:
            return low
    raise ValueError(f"no primitive polynomial of degree {e} over GF({p})")


class GF:
    """The field with ``p**e`` elements.  Use :func:`get_field` to obtain instances."""

    def __init__(self, p: int, e: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError(f"extension degree must be >= 1, got {e}")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus: list[int] | None = None
        self._exp: list[int] = []
        self._log: dict[int, int] = {}
        if e > 1:
            self.modulus = _primitive_modulus(p, e)
            cur = _digits(1, p, e)
            for k in range(self.q - 1):
                a = _undigits(cur, p)
                self._exp.append(a)
                self._log[a] = k
                cur = _times_generator(cur, self.modulus, p)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self) -> int:
        return hash((self.p, self.e))

    def __reduce__(self):
        return (get_field, (self.p, self.e))

    @property
    def generator(self) -> int:
        return self.p if self.e > 1 else _prime_generator(self.p)

    def elements(self) -> range:
        return range(self.q)

    def element(self, value: int) -> int:
        if not 0 <= value < self.q:
            if self.e == 1:
                return value % self.p
            raise ValueError(f"{value} does not encode an element of {self}")
        return value

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        return _undigits([(x + y) % p for x, y in zip(_digits(a, p, self.e), _digits(b, p, self.e))], p)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        p = self.p
        return _undigits([-x % p for x in _digits(a, p, self.e)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self._exp[-self._log[a] % (self.q - 1)]

    def pow(self, a: int, k: int) -> int:
        if self.e == 1:
            if k < 0:
                a, k = self.inv(a), -k
            return pow(a, k, self.p)
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if k == 0 else 0
        return self._exp[self._log[a] * k % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return a if self.e == 1 else self.pow(a, self.p)

    def pth_root(self, a: int) -> int:
        """The unique ``b`` with ``b**p == a``; equals ``a**(p**(e-1))``."""
        return a if self.e == 1 else self.pow(a, self.p ** (self.e - 1))


@lru_cache(maxsize=None)
def _prime_generator(p: int) -> int:
    if p == 2:
        return 1
    factors = [f for f in range(2, p) if (p - 1) % f == 0 and is_prime(f)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise AssertionError("unreachable")


@lru_cache(maxsize=None)
def get_field(p: int, e: int = 1) -> GF:
    return GF(p, e)


def pth_root(field: GF, c: int) -> int:
    return field.pth_root(c)
