"""Laurent polynomials with exact or floating coefficients."""

from __future__ import annotations

from typing import Iterable, Mapping

from .scalars import approx_equal, conj, is_exact, scalar_from_json, scalar_to_json, DEFAULT_RTOL


def _nonzero(c) -> bool:
    # floating zeros are kept only if they are literally 0.0
    return c != 0


class LaurentPolynomial:
    """Finite sum ``sum_k c_k z^k`` over integer exponents ``k``.

    Exact zero coefficients are dropped on construction, so two exact
    polynomials are equal iff their coefficient tables are equal.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] | Iterable[tuple[int, object]] | None = None):
        items = coeffs.items() if isinstance(coeffs, Mapping) else (coeffs or ())
        c = {}
        for k, v in items:
            c[int(k)] = c.get(int(k), 0) + v
        self._c = {k: v for k, v in c.items() if _nonzero(v)}

    @classmethod
    def monomial(cls, k: int, coeff=1) -> LaurentPolynomial:
        return cls({k: coeff})

    @classmethod
    def constant(cls, coeff) -> LaurentPolynomial:
        return cls({0: coeff})

    @classmethod
    def zero(cls) -> LaurentPolynomial:
        return cls()

    # inspection -----------------------------------------------------------

    def coeff(self, k: int):
        return self._c.get(k, 0)

    __getitem__ = coeff

    def items(self):
        return sorted(self._c.items())

    def exponents(self) -> list[int]:
        return sorted(self._c)

    def support(self) -> tuple[int, int] | None:
        """``(lowest, highest)`` exponent with a nonzero coefficient, or None."""
        if not self._c:
            return None
        return min(self._c), max(self._c)

    def __bool__(self):
        return bool(self._c)

    def is_zero(self, tol: float = 0.0, scale: float = 1.0) -> bool:
        if not self._c:
            return True
        if tol == 0.0:
            return False
        return all(is_exact(v) and v == 0 or abs(complex(v)) <= tol * max(1.0, scale) for v in self._c.values())

    def max_abs(self) -> float:
        return max((abs(complex(v)) for v in self._c.values()), default=0.0)

    # algebra --------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial.constant(other)
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return LaurentPolynomial(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPolynomial):
            c = {}
            for i, a in self._c.items():
                for j, b in other._c.items():
                    c[i + j] = c.get(i + j, 0) + a * b
            return LaurentPolynomial(c)
        return LaurentPolynomial({k: v * other for k, v in self._c.items()})

    def __rmul__(self, other):
        return LaurentPolynomial({k: other * v for k, v in self._c.items()})

    def __truediv__(self, scalar):
        return LaurentPolynomial({k: v / scalar for k, v in self._c.items()})

    def shift(self, s: int) -> LaurentPolynomial:
        """Multiply by ``z**s``."""
        return LaurentPolynomial({k + s: v for k, v in self._c.items()})

    def reflect(self) -> LaurentPolynomial:
        """``P(1/z)``."""
        return LaurentPolynomial({-k: v for k, v in self._c.items()})

    def sharp(self) -> LaurentPolynomial:
        """``conj(P(1/conj(z)))``: conjugate the coefficients and reflect the exponents."""
        return LaurentPolynomial({-k: conj(v) for k, v in self._c.items()})

    def map_coefficients(self, f) -> LaurentPolynomial:
        return LaurentPolynomial({k: f(v) for k, v in self._c.items()})

    def to_float(self) -> LaurentPolynomial:
        return self.map_coefficients(complex)

    def __call__(self, z):
        if not self._c:
            return 0
        lo, hi = self.support()
        if lo < 0 and z == 0:
            raise ZeroDivisionError("evaluating negative powers at z = 0")
        # Horner on z^{-lo} P(z), then rescale
        acc = 0
        for k in range(hi, lo - 1, -1):
            acc = acc * z + self._c.get(k, 0)
        return acc * z**lo if lo >= 0 else acc / z ** (-lo)

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self._c == other._c
        return self._c == LaurentPolynomial.constant(other)._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def approx_equal(self, other: LaurentPolynomial, tol: float = DEFAULT_RTOL) -> bool:
        keys = set(self._c) | set(other._c)
        return all(approx_equal(self.coeff(k), other.coeff(k), tol) for k in keys)

    def __repr__(self):
        if not self._c:
            return "LaurentPolynomial(0)"
        terms = " + ".join(f"({v})*z^{k}" for k, v in self.items())
        return f"LaurentPolynomial({terms})"

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {str(k): scalar_to_json(v) for k, v in self.items()}

    @classmethod
    def from_json(cls, obj: Mapping[str, object]) -> LaurentPolynomial:
        return cls({int(k): scalar_from_json(v) for k, v in obj.items()})


Z = LaurentPolynomial.monomial(1)
ONE = LaurentPolynomial.constant(1)


class LaurentVector(tuple):
    """An r-tuple of Laurent polynomials (the type I objects).

    Supports componentwise addition, scalar multiplication and
    multiplication by a scalar Laurent polynomial such as ``z``.
    """

    def __new__(cls, components: Iterable[LaurentPolynomial]):
        return super().__new__(cls, tuple(components))

    @classmethod
    def zeros(cls, r: int) -> LaurentVector:
        return cls(LaurentPolynomial() for _ in range(r))

    def __add__(self, other):
        return LaurentVector(a + b for a, b in zip(self, other, strict=True))

    def __sub__(self, other):
        return LaurentVector(a - b for a, b in zip(self, other, strict=True))

    def __neg__(self):
        return LaurentVector(-a for a in self)

    def __mul__(self, other):
        return LaurentVector(a * other for a in self)

    def __rmul__(self, other):
        return LaurentVector(other * a for a in self)

    def shift(self, s: int) -> LaurentVector:
        return LaurentVector(a.shift(s) for a in self)

    def sharp(self) -> LaurentVector:
        return LaurentVector(a.sharp() for a in self)

    def reflect(self) -> LaurentVector:
        return LaurentVector(a.reflect() for a in self)

    def __call__(self, z) -> tuple:
        return tuple(a(z) for a in self)

    def is_zero(self, tol: float = 0.0, scale: float = 1.0) -> bool:
        return all(a.is_zero(tol, scale) for a in self)

    def max_abs(self) -> float:
        return max((a.max_abs() for a in self), default=0.0)

    def approx_equal(self, other, tol: float = DEFAULT_RTOL) -> bool:
        return all(a.approx_equal(b, tol) for a, b in zip(self, other, strict=True))

    def to_float(self) -> LaurentVector:
        return LaurentVector(a.to_float() for a in self)

    def to_json(self) -> list:
        return [a.to_json() for a in self]
