"""Moment functionals on Laurent polynomials and on ordinary polynomials.

A Laurent functional ``L`` is determined by its moments ``c_k = L[w^{-k}]``
for ``k`` in the integers; a real-line functional ``M`` by ``m_k = M[x^k]``
for ``k >= 0``.  Moments are produced lazily by a rule and cached.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

from .errors import InvalidInput, MomentUnavailable, NotSymmetric
from .laurent import LaurentPolynomial
from .scalars import GaussianRational, conj, exact, is_exact

__all__ = [
    "LaurentMomentFunctional",
    "RealMomentFunctional",
    "FunctionalSystem",
    "CircleAtom",
    "FormalSeriesPair",
    "MINUS_ONE",
    "circle_point",
    "from_atoms",
    "from_moment_table",
    "lebesgue",
    "geometric",
    "sharp",
    "shift",
    "caratheodory_series",
    "real_from_atoms",
    "real_from_moments",
    "szego_map",
    "szego_inverse",
]

MINUS_ONE = "minus_one"


class _MomentCache:
    """Memoizing wrapper: each key is computed at most once, even across threads."""

    def __init__(self, rule):
        self._rule = rule
        self._values = {}
        self._lock = threading.RLock()

    def get(self, k):
        try:
            return self._values[k]
        except KeyError:
            pass
        with self._lock:
            if k not in self._values:
                self._values[k] = self._rule(k)
            return self._values[k]

    def values(self):
        return list(self._values.values())


class LaurentMomentFunctional:
    """Linear functional on Laurent polynomials given by ``c_k = L[w^{-k}]``."""

    kind = "laurent"

    def __init__(
        self,
        rule: Callable[[int], object],
        *,
        exact: bool = True,
        hermitian: bool = False,
        symmetric: bool = False,
        description: str = "",
    ):
        self._cache = _MomentCache(rule)
        self.exact = exact
        self.hermitian = hermitian
        self.symmetric = symmetric
        self.description = description

    def moment(self, k: int):
        return self._cache.get(int(k))

    def __call__(self, k: int):
        return self.moment(k)

    def moments(self, ks: Iterable[int]) -> list:
        return [self.moment(k) for k in ks]

    def apply(self, p: LaurentPolynomial):
        """``L[p(w)] = sum_s p_s c_{-s}``."""
        total = 0
        for s, a in p.items():
            total = total + a * self.moment(-s)
        return total

    def max_abs_moment(self) -> float:
        return max((abs(complex(v)) for v in self._cache.values()), default=0.0)

    def to_float(self) -> LaurentMomentFunctional:
        return LaurentMomentFunctional(
            lambda k: complex(self.moment(k)),
            exact=False,
            hermitian=self.hermitian,
            symmetric=self.symmetric,
            description=self.description,
        )

    def __repr__(self):
        return f"LaurentMomentFunctional({self.description or '...'})"


class RealMomentFunctional:
    """Linear functional on polynomials given by ``m_k = M[x^k]``, ``k >= 0``."""

    kind = "real"

    def __init__(self, rule: Callable[[int], object], *, exact: bool = True, description: str = ""):
        self._cache = _MomentCache(rule)
        self.exact = exact
        self.description = description

    def moment(self, k: int):
        if k < 0:
            raise InvalidInput(f"real moments are indexed by k >= 0, got {k}")
        return self._cache.get(int(k))

    def __call__(self, k: int):
        return self.moment(k)

    def apply(self, coeffs: Sequence) -> object:
        """``M[p(x)]`` for ``p`` given by ascending coefficients."""
        total = 0
        for k, a in enumerate(coeffs):
            if a != 0:
                total = total + a * self.moment(k)
        return total

    def max_abs_moment(self) -> float:
        return max((abs(complex(v)) for v in self._cache.values()), default=0.0)

    def to_float(self) -> RealMomentFunctional:
        return RealMomentFunctional(lambda k: complex(self.moment(k)), exact=False, description=self.description)

    def __repr__(self):
        return f"RealMomentFunctional({self.description or '...'})"


class FunctionalSystem:
    """An ordered tuple ``(L_1, ..., L_r)`` of functionals sharing one scalar field.

    The system also owns the memo tables used by :mod:`mopuc.core`, which is
    why it is passed around instead of a bare tuple.
    """

    def __init__(self, functionals: Iterable, description: str = ""):
        self.functionals = tuple(functionals)
        if not self.functionals:
            raise InvalidInput("a functional system needs r >= 1 functionals")
        kinds = {f.kind for f in self.functionals}
        fields = {f.exact for f in self.functionals}
        if len(kinds) != 1 or len(fields) != 1:
            raise InvalidInput("all functionals of a system must share kind and scalar field")
        self.kind = kinds.pop()
        self.exact = fields.pop()
        self.description = description or ", ".join(f.description for f in self.functionals)
        self.memo = {}
        self.memo_lock = threading.RLock()

    @property
    def r(self) -> int:
        return len(self.functionals)

    def __len__(self):
        return len(self.functionals)

    def __iter__(self):
        return iter(self.functionals)

    def __getitem__(self, j):
        return self.functionals[j]

    @property
    def hermitian(self) -> bool:
        return all(getattr(f, "hermitian", False) for f in self.functionals)

    @property
    def symmetric(self) -> bool:
        return all(getattr(f, "symmetric", False) for f in self.functionals)

    def scale(self) -> float:
        """Largest moment modulus seen so far, the conditioning proxy for the float path."""
        return max(1.0, max(f.max_abs_moment() for f in self.functionals))

    def sharp(self) -> FunctionalSystem:
        return FunctionalSystem((sharp(f) for f in self.functionals), f"sharp({self.description})")

    def shifted(self, s: int) -> FunctionalSystem:
        return FunctionalSystem((shift(f, s) for f in self.functionals), f"w^{s}({self.description})")

    def to_float(self) -> FunctionalSystem:
        return FunctionalSystem((f.to_float() for f in self.functionals), self.description)

    def __repr__(self):
        return f"FunctionalSystem(r={self.r}, {self.description})"


# -- circle atoms -----------------------------------------------------------


def circle_point(t) -> GaussianRational:
    """Rational point ``((1 - t^2) + 2 i t) / (1 + t^2)`` of the unit circle; ``MINUS_ONE`` gives -1."""
    if t == MINUS_ONE:
        return GaussianRational(-1)
    t = Fraction(t)
    return GaussianRational((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


@dataclass(frozen=True)
class CircleAtom:
    """Point mass ``weight * delta_w`` on the unit circle.

    ``t`` is a rational parameter (or ``MINUS_ONE``) for the exact field.
    ``point`` may instead carry an arbitrary unimodular complex number, in
    which case the functional is float-only.
    """

    t: object = None
    weight: object = 1
    point: complex | None = None

    def __post_init__(self):
        if self.point is None:
            if self.t is None:
                raise InvalidInput("CircleAtom needs a parameter t or a point")
            if self.t != MINUS_ONE:
                object.__setattr__(self, "t", Fraction(self.t))

    @property
    def exact(self) -> bool:
        return self.point is None and is_exact(self.weight)

    def location(self):
        return circle_point(self.t) if self.point is None else complex(self.point)

    def mirrored_key(self):
        if self.point is not None:
            return ("p", complex(self.point).conjugate())
        return ("t", self.t if self.t == MINUS_ONE else -self.t)

    def key(self):
        if self.point is not None:
            return ("p", complex(self.point))
        return ("t", self.t)


def _is_real_nonneg(x) -> bool:
    if is_exact(x):
        x = exact(x)
        return x.imag == 0 and x.real >= 0
    x = complex(x)
    return x.imag == 0 and x.real >= 0


def from_atoms(atoms: Sequence[CircleAtom], description: str = "") -> LaurentMomentFunctional:
    """Functional of the discrete measure ``sum_a weight_a delta_{w_a}``: ``c_k = sum_a weight_a w_a^{-k}``."""
    atoms = list(atoms)
    if not atoms:
        raise InvalidInput("from_atoms needs at least one atom")
    is_ex = all(a.exact for a in atoms)
    locs = [a.location() for a in atoms]
    weights = [exact(a.weight) if is_ex else complex(a.weight) for a in atoms]
    if not is_ex:
        locs = [complex(w) for w in locs]

    def rule(k):
        total = 0
        for w, wt in zip(locs, weights):
            # |w| = 1, so w^{-k} = conj(w)^k
            total = total + wt * (conj(w) ** k if k >= 0 else w ** (-k))
        return total

    hermitian = all(_is_real_nonneg(wt) for wt in weights)
    mass = {}
    for a, wt in zip(atoms, weights):
        mass[a.key()] = mass.get(a.key(), 0) + wt
    symmetric = all(
        (mass.get(a.mirrored_key(), 0) == mass[a.key()]) for a in atoms
    )
    desc = description or "atoms(" + ", ".join(
        f"{a.t if a.point is None else a.point}:{a.weight}" for a in atoms
    ) + ")"
    return LaurentMomentFunctional(rule, exact=is_ex, hermitian=hermitian, symmetric=symmetric, description=desc)


def from_moment_table(
    table: Mapping[int, object], default="zero", description: str = ""
) -> LaurentMomentFunctional:
    """Functional from explicit moments ``{k: c_k}`` plus an extension rule.

    ``default`` is ``"zero"``, ``("geometric", a)`` meaning ``c_k = a^{|k|}``,
    or ``"error"`` (missing moments raise :class:`MomentUnavailable`).
    """
    table = {int(k): v for k, v in table.items()}
    values = list(table.values())
    if isinstance(default, tuple) and default[0] == "geometric":
        values.append(default[1])
    is_ex = all(is_exact(v) for v in values)
    table = {k: (exact(v) if is_ex else complex(v)) for k, v in table.items()}
    desc = description

    if default == "zero":
        fallback = lambda k: 0  # noqa: E731
        rule_hermitian = rule_symmetric = True
        desc = desc or f"moments({len(table)} entries, zero)"
    elif default == "error":
        def fallback(k):
            raise MomentUnavailable(k, desc)
        rule_hermitian = rule_symmetric = True
        desc = desc or f"moments({len(table)} entries, error)"
    elif isinstance(default, tuple) and default[0] == "geometric":
        a = exact(default[1]) if is_ex else complex(default[1])
        fallback = lambda k: a ** abs(k)  # noqa: E731
        rule_symmetric = True
        rule_hermitian = (a.imag == 0) if is_ex else (complex(a).imag == 0)
        desc = desc or f"geometric({default[1]})"
    else:
        raise InvalidInput(f"unknown moment extension rule {default!r}")

    def rule(k):
        if k in table:
            return table[k]
        return fallback(k)

    def lookup(k):
        if k in table:
            return table[k], True
        if default == "error":
            return None, False
        return fallback(k), True

    hermitian, symmetric = rule_hermitian, rule_symmetric
    for k in table:
        here, _ = lookup(k)
        there, known = lookup(-k)
        if not known:
            hermitian = symmetric = False
            continue
        if there != conj(here):
            hermitian = False
        if there != here:
            symmetric = False
    return LaurentMomentFunctional(rule, exact=is_ex, hermitian=hermitian, symmetric=symmetric, description=desc)


def lebesgue() -> LaurentMomentFunctional:
    """Normalized arc-length measure: ``c_k = delta_{k0}``."""
    return from_moment_table({0: 1}, "zero", description="lebesgue")


def geometric(a) -> LaurentMomentFunctional:
    """``c_k = a^{|k|}``; for real ``|a| < 1`` the Poisson-kernel (Bernstein-Szego) measure."""
    return from_moment_table({}, ("geometric", a), description=f"geometric({a})")


def sharp(L: LaurentMomentFunctional) -> LaurentMomentFunctional:
    """``L#[w^{-k}] = conj(L[w^{k}])``."""
    return LaurentMomentFunctional(
        lambda k: conj(L.moment(-k)),
        exact=L.exact,
        hermitian=L.hermitian,
        symmetric=L.symmetric,
        description=f"sharp({L.description})",
    )


def shift(L: LaurentMomentFunctional, s: int) -> LaurentMomentFunctional:
    """Christoffel shift ``(w^s L)[w^{-k}] = L[w^{-k+s}]``."""
    if s == 0:
        return L
    return LaurentMomentFunctional(
        lambda k: L.moment(k - s), exact=L.exact, description=f"w^{s}*{L.description}"
    )


@dataclass(frozen=True)
class FormalSeriesPair:
    """Truncated expansions of ``F(z) = L[(w+z)/(w-z)]`` at 0 and at infinity.

    ``at_zero[k]`` is the ``z^k`` coefficient and ``at_infinity[k]`` the
    ``z^{-k}`` coefficient, ``0 <= k <= depth``.
    """

    at_zero: tuple
    at_infinity: tuple
    depth: int


def caratheodory_series(L: LaurentMomentFunctional, depth: int) -> FormalSeriesPair:
    if depth < 0:
        raise InvalidInput("depth must be nonnegative")
    c0 = L.moment(0)
    at0 = [c0] + [2 * L.moment(k) for k in range(1, depth + 1)]
    atinf = [-c0] + [-2 * L.moment(-k) for k in range(1, depth + 1)]
    return FormalSeriesPair(tuple(at0), tuple(atinf), depth)


# -- real line ----------------------------------------------------------------


def real_from_atoms(atoms: Sequence[tuple[object, object]], description: str = "") -> RealMomentFunctional:
    """``m_k = sum_a weight_a x_a^k`` from ``(x, weight)`` pairs."""
    atoms = list(atoms)
    if not atoms:
        raise InvalidInput("real_from_atoms needs at least one atom")
    is_ex = all(is_exact(x) and is_exact(w) for x, w in atoms)
    conv = exact if is_ex else complex
    pts = [(conv(x), conv(w)) for x, w in atoms]

    def rule(k):
        total = 0
        for x, w in pts:
            total = total + w * x**k
        return total

    desc = description or "real_atoms(" + ", ".join(f"{x}:{w}" for x, w in atoms) + ")"
    return RealMomentFunctional(rule, exact=is_ex, description=desc)


def real_from_moments(moments: Sequence, description: str = "") -> RealMomentFunctional:
    """Finite list of real-line moments; asking beyond the list raises MomentUnavailable."""
    is_ex = all(is_exact(v) for v in moments)
    vals = [exact(v) if is_ex else complex(v) for v in moments]

    def rule(k):
        if k >= len(vals):
            raise MomentUnavailable(k, description)
        return vals[k]

    return RealMomentFunctional(rule, exact=is_ex, description=description or f"moments[{len(vals)}]")


def szego_map(M: RealMomentFunctional) -> LaurentMomentFunctional:
    """The symmetric Laurent functional ``L`` with ``L[(w + 1/w)^k] = M[x^k]``.

    Solved degree by degree: the ``(w + 1/w)^k`` expansion contributes
    ``2 c_k`` plus lower symmetric moments.
    """
    lock = threading.RLock()
    cs = []

    def extend(k):
        with lock:
            while len(cs) <= k:
                j = len(cs)
                if j == 0:
                    cs.append(M.moment(0))
                    continue
                acc = M.moment(j)
                for i in range(1, j):
                    acc = acc - comb(j, i) * cs[abs(j - 2 * i)]
                cs.append(acc / 2)
            return cs[k]

    hermitian = False
    return LaurentMomentFunctional(
        lambda k: extend(abs(k)),
        exact=M.exact,
        hermitian=hermitian,
        symmetric=True,
        description=f"Sz({M.description})",
    )


def szego_inverse(L: LaurentMomentFunctional) -> RealMomentFunctional:
    """``M = Sz^{-1}(L)``: ``m_k = sum_j C(k, j) c_{|k - 2j|}``; ``L`` must be symmetric."""
    if not L.symmetric:
        raise NotSymmetric(f"{L.description} is not flagged symmetric")

    def rule(k):
        total = 0
        for j in range(k + 1):
            e = k - 2 * j
            ce = L.moment(e)
            if e != 0 and L.moment(-e) != ce:
                raise NotSymmetric(f"c_{e} != c_{-e} for {L.description}")
            total = total + comb(k, j) * ce
        return total

    return RealMomentFunctional(rule, exact=L.exact, description=f"Sz^-1({L.description})")
