"""Scalar fields: exact Gaussian rationals and double-precision complex numbers.

Everything downstream is written against plain arithmetic operators, so the
same code runs on :class:`GaussianRational` (exact) and on Python ``complex``
(approximate).  ``int`` and ``Fraction`` values mix freely with the exact field.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction

__all__ = [
    "GaussianRational",
    "I",
    "exact",
    "is_exact",
    "conj",
    "is_zero",
    "approx_equal",
    "scalar_abs",
    "to_complex",
    "scalar_to_json",
    "scalar_from_json",
    "parse_rational",
    "DEFAULT_RTOL",
]

DEFAULT_RTOL = 1e-9


class GaussianRational:
    """Exact complex rational ``(a + b i) / d``.

    Stored with a single positive denominator and ``gcd(a, b, d) == 1`` so the
    representation is canonical and equality is structural.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // math.gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def _set(self, a, b, d):
        if d == 0:
            raise ZeroDivisionError("GaussianRational with zero denominator")
        if d < 0:
            a, b, d = -a, -b, -d
        g = math.gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a, self._b, self._d = a, b, d

    @classmethod
    def _raw(cls, a, b, d):
        obj = cls.__new__(cls)
        obj._set(a, b, d)
        return obj

    @property
    def real(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def imag(self) -> Fraction:
        return Fraction(self._b, self._d)

    def conjugate(self) -> GaussianRational:
        return GaussianRational._raw(self._a, -self._b, self._d)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __abs__(self) -> float:
        return math.hypot(self._a / self._d, self._b / self._d) if self else 0.0

    def __complex__(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other._a, other._b, other._d
        if isinstance(other, numbers.Rational):
            return other.numerator, 0, other.denominator
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, d = o
        if d == self._d:
            return GaussianRational._raw(self._a + a, self._b + b, d)
        return GaussianRational._raw(self._a * d + a * self._d, self._b * d + b * self._d, self._d * d)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, d = o
        return GaussianRational._raw(self._a * d - a * self._d, self._b * d - b * self._d, self._d * d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, d = o
        return GaussianRational._raw(a * self._d - self._a * d, b * self._d - self._b * d, self._d * d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, d = o
        return GaussianRational._raw(
            self._a * a - self._b * b, self._a * b + self._b * a, self._d * d
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, d = o
        n2 = a * a + b * b
        if n2 == 0:
            raise ZeroDivisionError("division by zero in GaussianRational")
        # (x/dx) / ((a+bi)/d) = x d (a - bi) / (dx (a^2 + b^2))
        return GaussianRational._raw(
            (self._a * a + self._b * b) * d, (self._b * a - self._a * b) * d, self._d * n2
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(*o) / self

    def __pow__(self, k):
        if not isinstance(k, numbers.Integral):
            return NotImplemented
        if k < 0:
            return (1 / self) ** (-k)
        result = GaussianRational._raw(1, 0, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        a, b, d = o
        return self._a * d == a * self._d and self._b * d == b * self._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __repr__(self):
        return f"GaussianRational({self.real}, {self.imag})"

    def __str__(self):
        re, im = self.real, self.imag
        if im == 0:
            return str(re)
        if re == 0:
            return f"{im}i"
        sign = "+" if im > 0 else "-"
        return f"{re}{sign}{abs(im)}i"


I = GaussianRational(0, 1)


def exact(x) -> GaussianRational:
    """Lift an int, Fraction, decimal string ``"p/q"`` or GaussianRational into the exact field."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return GaussianRational(parse_rational(x))
    if isinstance(x, numbers.Rational):
        return GaussianRational(x)
    raise TypeError(f"cannot lift {x!r} into the exact field")


def is_exact(x) -> bool:
    return isinstance(x, (GaussianRational, numbers.Rational))


def conj(x):
    return x.conjugate()


def scalar_abs(x) -> float:
    return abs(complex(x))


def to_complex(x) -> complex:
    return complex(x)


def is_zero(x, tol: float = 0.0, scale: float = 1.0) -> bool:
    """Exact scalars: ``x == 0``.  Floats: ``|x| <= tol * max(1, scale)``."""
    if is_exact(x):
        return x == 0
    return abs(x) <= tol * max(1.0, scale)


def approx_equal(a, b, tol: float = DEFAULT_RTOL) -> bool:
    """Compare two scalars.

    Exact scalars compare bit-exactly and ``tol`` is ignored.  Otherwise
    ``|a - b| <= tol * max(1, |a|, |b|)``.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    if is_exact(a) and is_exact(b):
        return a == b
    a, b = complex(a), complex(b)
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` with decimal-integer components."""
    text = text.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        return Fraction(int(p), int(q))
    return Fraction(int(text))


def _fraction_text(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def scalar_to_json(x) -> dict:
    if is_exact(x):
        x = exact(x)
        return {"re": _fraction_text(x.real), "im": _fraction_text(x.imag)}
    x = complex(x)
    return {"re": x.real, "im": x.imag}


def scalar_from_json(obj):
    """Inverse of :func:`scalar_to_json`.

    Also accepts a bare ``"p/q"`` string or an integer (exact) and a bare
    float (approximate).
    """
    if isinstance(obj, bool):
        raise ValueError(f"not a scalar: {obj!r}")
    if isinstance(obj, str):
        return exact(obj)
    if isinstance(obj, int):
        return GaussianRational(obj)
    if isinstance(obj, float):
        return complex(obj)
    if isinstance(obj, dict) and set(obj) <= {"re", "im"} and "re" in obj:
        re, im = obj["re"], obj.get("im", "0/1" if isinstance(obj["re"], str) else 0.0)
        if isinstance(re, str) and isinstance(im, str):
            return GaussianRational(parse_rational(re), parse_rational(im))
        if isinstance(re, (int, float)) and isinstance(im, (int, float)) and not isinstance(re, bool):
            return complex(re, im)
    raise ValueError(f"not a scalar encoding: {obj!r}")
