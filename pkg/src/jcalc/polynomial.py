"""Exact integer polynomials in one variable t.

Poincare polynomials of cell structures are the bookkeeping currency of
this package: coefficients count Tate twists, so all arithmetic is exact
over the integers and division failures are meaningful domain signals,
never numerical noise.

A polynomial is stored as a tuple of coefficients indexed by degree,
with no trailing zeros; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import functools
from typing import Iterable, Iterator

from .errors import NotDivisible


class Poly:
    """Immutable integer polynomial.

    >>> Poly([1, 1]) * Poly([1, -1])
    Poly([1, 0, -1])
    >>> (Poly([1, 0, -1])).exact_div(Poly([1, 1]))
    Poly([1, -1])
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        for x in c:
            if not isinstance(x, int):
                raise TypeError("integer coefficients required, got %r" % (x,))
        self._c = tuple(c)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "Poly":
        """coeff * t^degree."""
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        return cls((0,) * degree + (coeff,))

    @classmethod
    def geometric(cls, step: int, terms: int) -> "Poly":
        """1 + t^step + t^(2 step) + ... with the given number of terms.

        Equals (1 - t^(step*terms)) / (1 - t^step) as an exact quotient.
        """
        if step <= 0 or terms <= 0:
            raise ValueError("step and terms must be positive")
        c = [0] * (step * (terms - 1) + 1)
        for i in range(terms):
            c[step * i] = 1
        return cls(c)

    # -- basic accessors ----------------------------------------------

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self._c) - 1

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, i: int) -> int:
        return self._c[i] if 0 <= i < len(self._c) else 0

    def __iter__(self) -> Iterator[int]:
        return iter(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == (() if other == 0 else (other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return "Poly(%s)" % (list(self._c),)

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for i, c in enumerate(self._c):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("t" if c == 1 else "%d*t" % c)
            else:
                parts.append("t^%d" % i if c == 1 else "%d*t^%d" % (c, i))
        return " + ".join(parts).replace("+ -", "- ")

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-x for x in self._c))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(tuple(other * x for x in self._c))
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._c or not other._c:
            return Poly.zero()
        out = [0] * (len(self._c) + len(other._c) - 1)
        for i, x in enumerate(self._c):
            if x == 0:
                continue
            for j, y in enumerate(other._c):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def shift(self, n: int) -> "Poly":
        """Multiply by t^n."""
        if not self._c:
            return self
        return Poly((0,) * n + self._c)

    # -- division ------------------------------------------------------

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Exact quotient self / divisor over the integers.

        Synthetic division from the top degree down, aborting on the
        first coefficient that fails to divide; raises NotDivisible if
        any remainder survives.
        """
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._c:
            return Poly.zero()
        dd = divisor.degree
        if self.degree < dd:
            raise NotDivisible("degree %d < %d" % (self.degree, dd))
        lead = divisor._c[-1]
        rem = list(self._c)
        q = [0] * (self.degree - dd + 1)
        for i in range(len(q) - 1, -1, -1):
            c = rem[i + dd]
            if c == 0:
                continue
            if c % lead:
                raise NotDivisible("coefficient %d not divisible by %d" % (c, lead))
            f = c // lead
            q[i] = f
            for j, y in enumerate(divisor._c):
                rem[i + j] -= f * y
        if any(rem):
            raise NotDivisible("nonzero remainder")
        return Poly(q)

    def divides(self, other: "Poly") -> bool:
        try:
            other.exact_div(self)
        except NotDivisible:
            return False
        return True

    # -- predicates -----------------------------------------------------

    @property
    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._c)

    @property
    def is_palindromic(self) -> bool:
        """Coefficient sequence reads the same in both directions."""
        return self._c == tuple(reversed(self._c))


@functools.lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """The n-th cyclotomic polynomial, by exact division of t^n - 1.

    >>> str(cyclotomic(6))
    '1 - t + t^2'
    """
    if n < 1:
        raise ValueError("n must be positive")
    num = Poly.monomial(n, 1) - Poly.one()
    for d in range(1, n):
        if n % d == 0:
            num = num.exact_div(cyclotomic(d))
    return num
