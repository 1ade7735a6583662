"""Laurent multiple orthogonal polynomials: the moment matrix, the four
polynomial families and their recurrence coefficients.

Indices are 0-based in code: ``j`` ranges over ``0..r-1``.

Two independent routes are provided.  The *solve* route writes the
orthogonality conditions as a linear system in ``T`` (or its transpose).  The
*determinant* route evaluates bordered determinants and ratios of ``det T``
over neighbouring indices.  Tests compare the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import linalg
from .errors import DivisionByZero, IndexClash, InvalidIndex, NotNormal
from .laurent import LaurentPolynomial, LaurentVector
from .moments import FunctionalSystem
from .scalars import exact, is_exact, scalar_to_json

__all__ = [
    "MultiIndexPair",
    "SolveResult",
    "HeineRecord",
    "build_T",
    "det_T",
    "is_normal",
    "type_ii",
    "type_ii_star",
    "type_i",
    "type_i_star",
    "alpha",
    "beta",
    "rho",
    "sigma",
    "gamma",
    "eta",
    "gamma_or_zero",
    "eta_or_zero",
    "kappa_ell",
    "functional_value",
    "heine_type_ii",
    "heine_type_ii_star",
    "heine_coefficients",
]


@dataclass(frozen=True, order=True)
class MultiIndexPair:
    """The pair ``(n; m)`` of integer vectors of equal length ``r``."""

    n: tuple
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if len(self.n) != len(self.m) or not self.n:
            raise InvalidIndex(f"n and m must be nonempty and of equal length: {self.n}, {self.m}")

    @classmethod
    def of(cls, n, m) -> MultiIndexPair:
        if isinstance(n, int):
            n = (n,)
        if isinstance(m, int):
            m = (m,)
        return cls(tuple(n), tuple(m))

    @property
    def r(self) -> int:
        return len(self.n)

    @property
    def abs_n(self) -> int:
        return sum(self.n)

    @property
    def abs_m(self) -> int:
        return sum(self.m)

    @property
    def size(self) -> int:
        return self.abs_n + self.abs_m

    def in_domain(self) -> bool:
        return all(a + b >= 0 for a, b in zip(self.n, self.m))

    def check(self) -> MultiIndexPair:
        if not self.in_domain():
            raise InvalidIndex(f"{self} has some n_j + m_j < 0")
        return self

    def is_boundary(self) -> bool:
        """``n = -m``: the degenerate corner where every block of ``T`` is empty."""
        return all(a + b == 0 for a, b in zip(self.n, self.m))

    def dn(self, j: int, d: int = 1) -> MultiIndexPair:
        n = list(self.n)
        n[j] += d
        return MultiIndexPair(tuple(n), self.m)

    def dm(self, j: int, d: int = 1) -> MultiIndexPair:
        m = list(self.m)
        m[j] += d
        return MultiIndexPair(self.n, tuple(m))

    def swapped(self) -> MultiIndexPair:
        return MultiIndexPair(self.m, self.n)

    def __str__(self):
        def fmt(v):
            return ",".join(str(x) for x in v)

        return f"({fmt(self.n)};{fmt(self.m)})"

    def to_json(self) -> dict:
        return {"n": list(self.n), "m": list(self.m)}


def _idx(idx) -> MultiIndexPair:
    if isinstance(idx, MultiIndexPair):
        return idx
    n, m = idx
    return MultiIndexPair.of(n, m)


# -- the moment matrix ----------------------------------------------------------


def _extended_rows(system: FunctionalSystem, idx: MultiIndexPair, width: int, offset: int = 0):
    """Rows ``c_{|m| - m_j + p - q + offset, j}`` for ``q < width``, block by block."""
    rows = []
    M = idx.abs_m
    for j, L in enumerate(system):
        h = idx.n[j] + idx.m[j]
        for p in range(h):
            base = M - idx.m[j] + p + offset
            rows.append([L.moment(base - q) for q in range(width)])
    return rows


def build_T(system: FunctionalSystem, idx) -> list[list]:
    """The square moment matrix of size ``|n| + |m|``; ``[[1]]`` when ``n = -m``."""
    idx = _idx(idx).check()
    if idx.r != system.r:
        raise InvalidIndex(f"index {idx} has r={idx.r} but the system has r={system.r}")
    if idx.is_boundary():
        return [[1]]
    return _extended_rows(system, idx, idx.size)


def _memo(system: FunctionalSystem, key, compute):
    with system.memo_lock:
        if key in system.memo:
            return system.memo[key]
    value = compute()
    with system.memo_lock:
        return system.memo.setdefault(key, value)


def _one(system):
    return exact(1) if system.exact else 1.0 + 0j


def _is_zero(system, x) -> bool:
    if is_exact(x):
        return x == 0
    return abs(x) <= linalg.FLOAT_DET_RTOL * system.scale()


def _solve_T(system: FunctionalSystem, idx: MultiIndexPair):
    """One elimination of ``T`` for both type II families: ``(det, Phi, Phi*)``."""

    def compute():
        if idx.is_boundary():
            # every family sits at the single exponent |n| = -|m|
            mono = LaurentPolynomial.monomial(idx.abs_n, _one(system))
            return _one(system), mono, mono
        T = build_T(system, idx)
        N, M = idx.size, idx.abs_m
        # Phi: unknown exponents -|m|..|n|-1, monic at |n|
        rhs_phi = [-row[0] for row in _extended_rows(system, idx, 1, offset=-N)]
        # Phi*: unknown exponents -|m|+1..|n|, unit coefficient at -|m|
        rhs_star = [-row[0] for row in _extended_rows(system, idx, 1, offset=1)]
        d, (x, y) = linalg.solve(T, [rhs_phi, rhs_star], system.scale())
        if x is None:
            return d, None, None
        phi = LaurentPolynomial({-M + q: x[q] for q in range(N)})
        phi = phi + LaurentPolynomial.monomial(idx.abs_n, _one(system))
        star = LaurentPolynomial({-M + 1 + q: y[q] for q in range(N)})
        star = star + LaurentPolynomial.monomial(-M, _one(system))
        return d, phi, star

    return _memo(system, ("T", idx), compute)


def _solve_TT(system: FunctionalSystem, idx: MultiIndexPair):
    """One elimination of ``T^t`` for both type I families: ``(det, Xi, Xi*)``."""

    def compute():
        if idx.is_boundary():
            z = LaurentVector.zeros(idx.r)
            return _one(system), z, z
        T = build_T(system, idx)
        N = idx.size
        TT = [[T[p][q] for p in range(N)] for q in range(N)]
        zero = 0 if system.exact else 0j
        e_last = [zero] * N
        e_last[N - 1] = _one(system)
        e_first = [zero] * N
        e_first[0] = _one(system)
        d, (x, y) = linalg.solve(TT, [e_last, e_first], system.scale())
        if x is None:
            return d, None, None
        xi, xi_star, pos = [], [], 0
        for j in range(idx.r):
            h = idx.n[j] + idx.m[j]
            mj = idx.m[j]
            xi.append(LaurentPolynomial({mj - 1 - p: x[pos + p] for p in range(h)}))
            xi_star.append(LaurentPolynomial({mj - p: y[pos + p] for p in range(h)}))
            pos += h
        return d, LaurentVector(xi), LaurentVector(xi_star)

    return _memo(system, ("TT", idx), compute)


def det_T(system: FunctionalSystem, idx):
    idx = _idx(idx).check()
    return _solve_T(system, idx)[0]


def is_normal(system: FunctionalSystem, idx) -> bool:
    """Exact field: ``det T != 0``.  Float field: ``|det T|`` above the tolerance floor."""
    idx = _idx(idx)
    if not idx.in_domain():
        return False
    return _solve_T(system, idx)[1] is not None


@dataclass(frozen=True)
class SolveResult:
    """Output of one of the four solves.

    ``polynomial`` is a LaurentPolynomial (type II families) or a
    LaurentVector (type I families) and is None when the index is not normal.
    ``alpha``/``beta`` are the extremal coefficients of ``Phi``/``Phi*`` at the
    same index, reported for convenience with every family.
    """

    idx: MultiIndexPair
    family: str
    polynomial: object
    alpha: object
    beta: object
    normal: bool
    det_T: object

    def to_json(self) -> dict:
        return {
            "index": self.idx.to_json(),
            "family": self.family,
            "normal": self.normal,
            "det_T": scalar_to_json(self.det_T),
            "alpha": None if self.alpha is None else scalar_to_json(self.alpha),
            "beta": None if self.beta is None else scalar_to_json(self.beta),
            "polynomial": None if self.polynomial is None else self.polynomial.to_json(),
        }


def _result(system, idx, family, strict) -> SolveResult:
    idx = _idx(idx).check()
    if idx.r != system.r:
        raise InvalidIndex(f"index {idx} has r={idx.r} but the system has r={system.r}")
    d, phi, star = _solve_T(system, idx)
    if phi is None:
        if strict:
            raise NotNormal(idx, f"det T = {d}")
        return SolveResult(idx, family, None, None, None, False, d)
    a = phi.coeff(-idx.abs_m)
    b = star.coeff(idx.abs_n)
    poly = {"phi": phi, "phi_star": star}.get(family)
    if poly is None:
        _, xi, xi_star = _solve_TT(system, idx)
        if xi is None:
            # the transpose has the same determinant; only reachable in floats
            if strict:
                raise NotNormal(idx, "transposed system singular")
            return SolveResult(idx, family, None, None, None, False, d)
        poly = xi if family == "xi" else xi_star
    return SolveResult(idx, family, poly, a, b, True, d)


def type_ii(system, idx, strict: bool = True) -> SolveResult:
    """``Phi_{n;m}``: monic at ``z^{|n|}``, supported in ``[-|m|, |n|]``."""
    return _result(system, idx, "phi", strict)


def type_ii_star(system, idx, strict: bool = True) -> SolveResult:
    """``Phi*_{n;m}``: unit coefficient at ``z^{-|m|}``, supported in ``[-|m|, |n|]``."""
    return _result(system, idx, "phi_star", strict)


def type_i(system, idx, strict: bool = True) -> SolveResult:
    """``Xi_{n;m}``: component ``j`` supported in ``[-n_j, m_j - 1]``."""
    return _result(system, idx, "xi", strict)


def type_i_star(system, idx, strict: bool = True) -> SolveResult:
    """``Xi*_{n;m}``: component ``j`` supported in ``[-n_j + 1, m_j]``."""
    return _result(system, idx, "xi_star", strict)


def phi(system, idx) -> LaurentPolynomial:
    return type_ii(system, idx).polynomial


def phi_star(system, idx) -> LaurentPolynomial:
    return type_ii_star(system, idx).polynomial


def xi(system, idx) -> LaurentVector:
    return type_i(system, idx).polynomial


def xi_star(system, idx) -> LaurentVector:
    return type_i_star(system, idx).polynomial


def alpha(system, idx):
    return type_ii(system, idx).alpha


def beta(system, idx):
    return type_ii(system, idx).beta


# -- recurrence coefficients ------------------------------------------------------


def functional_value(system, j: int, p: LaurentPolynomial, power: int = 0):
    """``L_j[p(w) w^power]``."""
    return system[j].apply(p.shift(power))


def _ratio(system, num, den, what, idx):
    if _is_zero(system, den):
        raise DivisionByZero(f"{what} at {idx}: denominator functional value is zero")
    return num / den


def _zero(system):
    return 0 if system.exact else 0j


def rho(system, idx, j: int):
    """``rho_{n;m,j} = L_j[Phi_{n;m} w^{-n_j}] / L_j[Phi_{n-e_j;m} w^{-n_j+1}]``.

    Zero by convention when ``(n - e_j; m)`` leaves the admissible set.
    """
    idx = _idx(idx).check()
    lower = idx.dn(j, -1)
    if not lower.in_domain():
        return _zero(system)
    num = functional_value(system, j, phi(system, idx), -idx.n[j])
    den = functional_value(system, j, phi(system, lower), -idx.n[j] + 1)
    return _ratio(system, num, den, "rho", idx)


def sigma(system, idx, j: int):
    """``sigma_{n;m,j} = L_j[Phi*_{n;m} w^{m_j}] / L_j[Phi*_{n;m-e_j} w^{m_j-1}]``.

    Zero by convention when ``(n; m - e_j)`` leaves the admissible set.
    """
    idx = _idx(idx).check()
    lower = idx.dm(j, -1)
    if not lower.in_domain():
        return _zero(system)
    num = functional_value(system, j, phi_star(system, idx), idx.m[j])
    den = functional_value(system, j, phi_star(system, lower), idx.m[j] - 1)
    return _ratio(system, num, den, "sigma", idx)


def gamma(system, idx, k: int, l: int):
    """``gamma^{kl}_{n;m} = L_l[Phi_{n+e_k;m} w^{-n_l}] / L_l[Phi_{n;m} w^{-n_l}]``, ``k != l``."""
    if k == l:
        raise IndexClash("gamma needs k != l")
    idx = _idx(idx).check()
    num = functional_value(system, l, phi(system, idx.dn(k)), -idx.n[l])
    den = functional_value(system, l, phi(system, idx), -idx.n[l])
    if _is_zero(system, den):
        raise NotNormal(idx.dn(l), "needed for the gamma denominator")
    return num / den


def eta(system, idx, k: int, l: int):
    """``eta^{kl}_{n;m} = L_l[Phi*_{n;m+e_k} w^{m_l}] / L_l[Phi*_{n;m} w^{m_l}]``, ``k != l``."""
    if k == l:
        raise IndexClash("eta needs k != l")
    idx = _idx(idx).check()
    num = functional_value(system, l, phi_star(system, idx.dm(k)), idx.m[l])
    den = functional_value(system, l, phi_star(system, idx), idx.m[l])
    if _is_zero(system, den):
        raise NotNormal(idx.dm(l), "needed for the eta denominator")
    return num / den


def gamma_or_zero(system, idx, k, l):
    """``gamma`` with the diagonal ``gamma^{kk} = 0`` used inside sums."""
    return _zero(system) if k == l else gamma(system, idx, k, l)


def eta_or_zero(system, idx, k, l):
    return _zero(system) if k == l else eta(system, idx, k, l)


def kappa_ell(system, idx, j: int):
    """``(kappa_{n+e_j;m,j}, ell_{n;m+e_j,j})`` from functional values at ``(n;m)``.

    ``kappa`` is the ``z^{-n_j-1}`` coefficient of ``Xi_{n+e_j;m,j}`` and
    equals ``1 / L_j[Phi_{n;m} w^{-n_j}]``.  ``ell`` is the ``z^{m_j+1}``
    coefficient of ``Xi*_{n;m+e_j,j}`` and equals ``1 / L_j[Phi*_{n;m} w^{m_j}]``.
    """
    idx = _idx(idx).check()
    a = functional_value(system, j, phi(system, idx), -idx.n[j])
    b = functional_value(system, j, phi_star(system, idx), idx.m[j])
    if _is_zero(system, a) or _is_zero(system, b):
        raise DivisionByZero(f"kappa/ell at {idx}, j={j}: a neighbouring index is not normal")
    return 1 / a, 1 / b


# -- determinant route ------------------------------------------------------------


def _cofactor_expansion(rows, idx, system):
    """Expand the bordered determinant with last row ``z^{-|m|}..z^{|n|}``."""
    N, M = idx.size, idx.abs_m
    coeffs = {}
    for q in range(N + 1):
        minor = [row[:q] + row[q + 1 :] for row in rows]
        d = linalg.det(minor, system.scale()) if N else 1
        coeffs[-M + q] = d if (N + q) % 2 == 0 else -d
    return LaurentPolynomial(coeffs)


def heine_type_ii(system, idx) -> LaurentPolynomial:
    """``Phi_{n;m}`` as a bordered determinant divided by ``det T``."""
    idx = _idx(idx).check()
    if idx.is_boundary():
        return LaurentPolynomial.monomial(idx.abs_n, _one(system))
    d = linalg.det(build_T(system, idx), system.scale())
    if _is_zero(system, d):
        raise NotNormal(idx)
    rows = _extended_rows(system, idx, idx.size + 1)
    return _cofactor_expansion(rows, idx, system) / d


def heine_type_ii_star(system, idx) -> LaurentPolynomial:
    """``Phi*_{n;m}``: rows shifted by one, overall sign ``(-1)^{|n|+|m|}``."""
    idx = _idx(idx).check()
    if idx.is_boundary():
        return LaurentPolynomial.monomial(idx.abs_n, _one(system))
    d = linalg.det(build_T(system, idx), system.scale())
    if _is_zero(system, d):
        raise NotNormal(idx)
    rows = _extended_rows(system, idx, idx.size + 1, offset=1)
    sign = -1 if idx.size % 2 else 1
    return _cofactor_expansion(rows, idx, system) * sign / d


@dataclass
class HeineRecord:
    """Recurrence coefficients from determinant ratios.

    Entries whose constituent determinants are unavailable (an index outside
    the admissible set or a zero denominator) are left out of the mappings,
    except ``rho``/``sigma`` which are 0 when the lower neighbour leaves the set.
    """

    idx: MultiIndexPair
    det_T: object
    alpha: object = None
    beta: object = None
    rho: dict = field(default_factory=dict)
    sigma: dict = field(default_factory=dict)
    gamma: dict = field(default_factory=dict)
    eta: dict = field(default_factory=dict)
    one_minus_ab: dict = field(default_factory=dict)


def _det_or_none(system, idx):
    if not idx.in_domain():
        return None
    if idx.size == 0:
        # the empty determinant, kept in the system's own field
        return _one(system)
    return linalg.det(build_T(system, idx), system.scale())


def heine_coefficients(system, idx) -> HeineRecord:
    idx = _idx(idx).check()
    D = lambda i: _det_or_none(system, i)  # noqa: E731
    d0 = D(idx)
    if _is_zero(system, d0):
        raise NotNormal(idx)
    rec = HeineRecord(idx, d0)
    sign = -1 if idx.size % 2 else 1
    rec.alpha = sign * _det_or_none(system.shifted(1), idx) / d0
    rec.beta = sign * _det_or_none(system.shifted(-1), idx) / d0
    z = _zero(system)
    for j in range(idx.r):
        lo = D(idx.dn(j, -1))
        rec.rho[j] = z if lo is None else D(idx.dn(j)) * lo / (d0 * d0)
        lo = D(idx.dm(j, -1))
        rec.sigma[j] = z if lo is None else D(idx.dm(j)) * lo / (d0 * d0)
    for k in range(idx.r):
        for l in range(k + 1, idx.r):
            dk, dl = D(idx.dn(k)), D(idx.dn(l))
            if not (_is_zero(system, dk) or _is_zero(system, dl)):
                g = D(idx.dn(k).dn(l)) * d0 / (dk * dl)
                rec.gamma[(k, l)] = g
                rec.gamma[(l, k)] = -g
            dk, dl = D(idx.dm(k)), D(idx.dm(l))
            if not (_is_zero(system, dk) or _is_zero(system, dl)):
                # the row order of T puts block k above block l, which makes
                # the m-direction ratio pick up a sign the n-direction one lacks
                h = -D(idx.dm(k).dm(l)) * d0 / (dk * dl)
                rec.eta[(k, l)] = h
                rec.eta[(l, k)] = -h
    for k in range(idx.r):
        dn_, dm_ = D(idx.dn(k)), D(idx.dm(k))
        if not (_is_zero(system, dn_) or _is_zero(system, dm_)):
            rec.one_minus_ab[k] = D(idx.dn(k).dm(k)) * d0 / (dn_ * dm_)
    return rec
