"""Verification of the recurrence, compatibility and Christoffel-Darboux
identities satisfied by the Laurent multiple orthogonal polynomials.

Every identity is checked as ``lhs - rhs`` with both sides expanded as
Laurent polynomials (or r-vectors of them, or scalars).  An identity whose
prerequisite indices are not normal is reported as skipped, never failed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import core
from .core import MultiIndexPair, functional_value, is_normal
from .errors import DivisionByZero, InvalidInput, NotNormal, SingularEvaluation
from .laurent import LaurentPolynomial, LaurentVector, Z
from .scalars import DEFAULT_RTOL, GaussianRational, is_exact, scalar_to_json

__all__ = [
    "VerificationReport",
    "IndexPath",
    "verify_szego_n",
    "verify_szego_m",
    "verify_compatibility",
    "verify_consequences",
    "verify_biorthogonality",
    "verify_coefficient_formulas",
    "christoffel_darboux",
    "enumerate_paths",
    "random_points",
    "verify_index",
]

ZINV = LaurentPolynomial.monomial(-1)


@dataclass
class VerificationReport:
    """Outcome of one identity at one index.

    ``status`` is ``"pass"``, ``"fail"`` or ``"skip"``; ``residual`` is
    ``lhs - rhs`` (absent for skips).
    """

    name: str
    index: dict
    status: str
    residual: object = None
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def skipped(self) -> bool:
        return self.status == "skip"

    @property
    def failed(self) -> bool:
        return self.status == "fail"

    def to_json(self) -> dict:
        out = {"identity": self.name, "index": self.index, "status": self.status}
        if self.reason:
            out["reason"] = self.reason
        if self.status == "fail":
            out["residual"] = _residual_json(self.residual)
        return out


def _residual_json(x):
    if x is None:
        return None
    if isinstance(x, (LaurentPolynomial, LaurentVector)):
        return x.to_json()
    if isinstance(x, (tuple, list)):
        return [_residual_json(v) for v in x]
    return scalar_to_json(x)


def _magnitude(x) -> float:
    if isinstance(x, (LaurentPolynomial, LaurentVector)):
        return x.max_abs()
    if isinstance(x, (tuple, list)):
        return max((_magnitude(v) for v in x), default=0.0)
    if isinstance(x, bool):
        return 0.0
    return abs(complex(x))


def _all_exact_zero(x) -> bool:
    if isinstance(x, (LaurentPolynomial, LaurentVector)):
        return x.is_zero()
    if isinstance(x, (tuple, list)):
        return all(_all_exact_zero(v) for v in x)
    return x == 0


def _holds(lhs, rhs, exact: bool, tol: float):
    if isinstance(lhs, (tuple, list)):
        residual = tuple(a - b for a, b in zip(lhs, rhs))
    else:
        residual = lhs - rhs
    if exact:
        return _all_exact_zero(residual), residual
    scale = max(1.0, _magnitude(lhs), _magnitude(rhs))
    return _magnitude(residual) <= tol * scale, residual


def _index_data(idx: MultiIndexPair, **extra) -> dict:
    d = idx.to_json()
    d.update(extra)
    return d


class _Checker:
    """Collects reports for one (system, index) sweep."""

    def __init__(self, system, idx: MultiIndexPair, tol: float = DEFAULT_RTOL, **extra):
        self.system = system
        self.idx = idx
        self.tol = tol
        self.data = _index_data(idx, **extra)
        self.reports: list[VerificationReport] = []

    def _prereq(self, requires, optional):
        for i in requires:
            if not i.in_domain():
                return f"{i} lies outside the admissible set"
            if not is_normal(self.system, i):
                return f"{i} is not normal"
        for i in optional:
            if i.in_domain() and not is_normal(self.system, i):
                return f"{i} is not normal"
        return None

    def check(self, name, requires, compute: Callable, optional=()):
        reason = self._prereq(list(requires), list(optional))
        if reason is None:
            try:
                lhs, rhs = compute()
            except (NotNormal, DivisionByZero) as e:
                reason = str(e)
        if reason is not None:
            self.reports.append(VerificationReport(name, self.data, "skip", reason=reason))
            return
        ok, residual = _holds(lhs, rhs, self.system.exact, self.tol)
        self.reports.append(VerificationReport(name, self.data, "pass" if ok else "fail", residual))

    def skip(self, name, reason):
        self.reports.append(VerificationReport(name, self.data, "skip", reason=reason))


# -- polynomial shorthands -----------------------------------------------------------


def _phi(S, i):
    return core.type_ii(S, i).polynomial


def _phis(S, i):
    return core.type_ii_star(S, i).polynomial


def _xi(S, i):
    return core.type_i(S, i).polynomial


def _xis(S, i):
    return core.type_i_star(S, i).polynomial


def _al(S, i):
    return core.type_ii(S, i).alpha


def _be(S, i):
    return core.type_ii(S, i).beta


def _zero_of(S):
    return 0 if S.exact else 0j


def _lower_n(i, j):
    lo = i.dn(j, -1)
    return lo if lo.in_domain() else None


def _lower_m(i, j):
    lo = i.dm(j, -1)
    return lo if lo.in_domain() else None


def _rho_sum_phi(S, i, shift=Z):
    """``sum_j rho_{i,j} z Phi_{i-e_j}`` with out-of-set neighbours dropped."""
    acc = LaurentPolynomial()
    for j in range(S.r):
        lo = _lower_n(i, j)
        if lo is not None:
            acc = acc + core.rho(S, i, j) * (shift * _phi(S, lo))
    return acc


def _sigma_sum_phis(S, i):
    acc = LaurentPolynomial()
    for j in range(S.r):
        lo = _lower_m(i, j)
        if lo is not None:
            acc = acc + core.sigma(S, i, j) * (ZINV * _phis(S, lo))
    return acc


def _lowers_n(i, r):
    return [i.dn(j, -1) for j in range(r)]


def _lowers_m(i, r):
    return [i.dm(j, -1) for j in range(r)]


# -- Szego recurrences -----------------------------------------------------------


def verify_szego_n(system, idx, k: int, tol: float = DEFAULT_RTOL) -> list[VerificationReport]:
    """The four recurrences stepping ``n`` (direction ``k`` where one is singled out)."""
    S, i = system, core._idx(idx).check()
    c = _Checker(S, i, tol, k=k)
    r = S.r
    c.check(
        "szego_n.phi_star",
        [i, i.dn(k, -1)],
        lambda: (_phis(S, i), _phis(S, i.dn(k, -1)) + _be(S, i) * (Z * _phi(S, i.dn(k, -1)))),
    )
    c.check(
        "szego_n.phi",
        [i],
        lambda: (_phi(S, i), _al(S, i) * _phis(S, i) + _rho_sum_phi(S, i)),
        optional=_lowers_n(i, r),
    )
    c.check(
        "szego_n.xi_star",
        [i, i.dn(k)],
        lambda: (_xis(S, i), _xis(S, i.dn(k)) - _al(S, i) * (_xi(S, i.dn(k)) * Z)),
    )

    def xi_rhs():
        acc = -_be(S, i) * _xis(S, i)
        for j in range(r):
            if _lower_n(i, j) is not None:
                acc = acc + core.rho(S, i, j) * (_xi(S, i.dn(j)) * Z)
        return _xi(S, i), acc

    c.check("szego_n.xi", [i] + [i.dn(j) for j in range(r)], xi_rhs, optional=_lowers_n(i, r))
    return c.reports


def verify_szego_m(system, idx, k: int, tol: float = DEFAULT_RTOL) -> list[VerificationReport]:
    """The four recurrences stepping ``m``; the mirror images of :func:`verify_szego_n`."""
    S, i = system, core._idx(idx).check()
    c = _Checker(S, i, tol, k=k)
    r = S.r
    c.check(
        "szego_m.phi",
        [i, i.dm(k, -1)],
        lambda: (_phi(S, i), _phi(S, i.dm(k, -1)) + _al(S, i) * (ZINV * _phis(S, i.dm(k, -1)))),
    )
    c.check(
        "szego_m.phi_star",
        [i],
        lambda: (_phis(S, i), _be(S, i) * _phi(S, i) + _sigma_sum_phis(S, i)),
        optional=_lowers_m(i, r),
    )
    c.check(
        "szego_m.xi",
        [i, i.dm(k)],
        lambda: (_xi(S, i), _xi(S, i.dm(k)) - _be(S, i) * (_xis(S, i.dm(k)) * ZINV)),
    )

    def xis_rhs():
        acc = -_al(S, i) * _xi(S, i)
        for j in range(r):
            if _lower_m(i, j) is not None:
                acc = acc + core.sigma(S, i, j) * (_xis(S, i.dm(j)) * ZINV)
        return _xis(S, i), acc

    c.check("szego_m.xi_star", [i] + [i.dm(j) for j in range(r)], xis_rhs, optional=_lowers_m(i, r))
    return c.reports


# -- coefficient formulas and biorthogonality ------------------------------------------


def verify_biorthogonality(system, idx, tol: float = DEFAULT_RTOL) -> list[VerificationReport]:
    """``sum_j L_j[Xi_j w^{-|m|}] = -beta`` and ``sum_j L_j[Xi*_j w^{|n|}] = -alpha``."""
    S, i = system, core._idx(idx).check()
    c = _Checker(S, i, tol)
    if i.is_boundary():
        # Xi vanishes at n = -m while beta = alpha = 1, so the pairing has no content there
        for name in ("biorthogonality.xi", "biorthogonality.xi_star"):
            c.skip(name, f"{i} has n = -m, where the type I vectors vanish")
        return c.reports

    def pair(vec, power, target):
        total = _zero_of(S)
        for j in range(S.r):
            total = total + functional_value(S, j, vec[j], power)
        return total, -target

    c.check("biorthogonality.xi", [i], lambda: pair(_xi(S, i), -i.abs_m, _be(S, i)))
    c.check("biorthogonality.xi_star", [i], lambda: pair(_xis(S, i), i.abs_n, _al(S, i)))
    return c.reports


def verify_coefficient_formulas(system, idx, tol: float = DEFAULT_RTOL) -> list[VerificationReport]:
    """``kappa``/``ell`` against the extremal type I coefficients, and the
    nonvanishing criteria ``rho != 0 <=> (n+e_j;m) normal`` (likewise ``sigma``,
    ``gamma``, ``eta``)."""
    S, i = system, core._idx(idx).check()
    c = _Checker(S, i, tol)
    for j in range(S.r):
        up_n, up_m = i.dn(j), i.dm(j)
        c.check(
            f"coefficients.kappa[{j}]",
            [i, up_n],
            lambda j=j, up=up_n: (
                _xi(S, up)[j].coeff(-up.n[j]),
                1 / functional_value(S, j, _phi(S, i), -i.n[j]),
            ),
        )
        c.check(
            f"coefficients.ell[{j}]",
            [i, up_m],
            lambda j=j, up=up_m: (
                _xis(S, up)[j].coeff(up.m[j]),
                1 / functional_value(S, j, _phis(S, i), i.m[j]),
            ),
        )
        if _lower_n(i, j) is not None:
            c.check(
                f"coefficients.rho_nonzero[{j}]",
                [i, i.dn(j, -1)],
                lambda j=j: (not _is_zero(S, core.rho(S, i, j)), is_normal(S, i.dn(j))),
            )
        if _lower_m(i, j) is not None:
            c.check(
                f"coefficients.sigma_nonzero[{j}]",
                [i, i.dm(j, -1)],
                lambda j=j: (not _is_zero(S, core.sigma(S, i, j)), is_normal(S, i.dm(j))),
            )
    for k, l in itertools.permutations(range(S.r), 2):
        c.check(
            f"coefficients.gamma_nonzero[{k},{l}]",
            [i, i.dn(k), i.dn(l)],
            lambda k=k, l=l: (not _is_zero(S, core.gamma(S, i, k, l)), is_normal(S, i.dn(k).dn(l))),
        )
        c.check(
            f"coefficients.eta_nonzero[{k},{l}]",
            [i, i.dm(k), i.dm(l)],
            lambda k=k, l=l: (not _is_zero(S, core.eta(S, i, k, l)), is_normal(S, i.dm(k).dm(l))),
        )
    return c.reports


def _is_zero(S, x) -> bool:
    return core._is_zero(S, x)


# -- compatibility --------------------------------------------------------------------


def verify_compatibility(system, idx, k: int, l: int, tol: float = DEFAULT_RTOL) -> list[VerificationReport]:
    """Polynomial-level difference relations in two directions ``k != l`` and the
    partial difference equations for ``alpha, beta, rho, sigma, gamma, eta``."""
    if k == l:
        raise InvalidInput("compatibility needs two distinct directions")
    S, i = system, core._idx(idx).check()
    c = _Checker(S, i, tol, k=k, l=l)
    r = S.r
    nk, nl, mk, ml = i.dn(k), i.dn(l), i.dm(k), i.dm(l)
    nkl, mkl = nk.dn(l), mk.dm(l)
    n_k, n_l, m_k, m_l = i.dn(k, -1), i.dn(l, -1), i.dm(k, -1), i.dm(l, -1)
    n_kl, m_kl = n_k.dn(l, -1), m_k.dm(l, -1)
    g = lambda at: core.gamma(S, at, k, l)  # noqa: E731
    h = lambda at: core.eta(S, at, k, l)  # noqa: E731

    c.check("compat.phi_n_step", [i, nk, nl], lambda: (_phi(S, nk) - _phi(S, nl), g(i) * _phi(S, i)))
    c.check(
        "compat.xi_n_step",
        [i, n_k, n_l, n_kl],
        lambda: (_xi(S, n_k) - _xi(S, n_l), _xi(S, i) * g(n_kl)),
    )
    c.check("compat.phi_star_m_step", [i, mk, ml], lambda: (_phis(S, mk) - _phis(S, ml), h(i) * _phis(S, i)))
    c.check(
        "compat.xi_star_m_step",
        [i, m_k, m_l, m_kl],
        lambda: (_xis(S, m_k) - _xis(S, m_l), _xis(S, i) * h(m_kl)),
    )

    def rho_sum():
        total = _al(S, i) * _be(S, i)
        for j in range(r):
            total = total + core.rho(S, i, j)
        return total, 1

    def sigma_sum():
        total = _al(S, i) * _be(S, i)
        for j in range(r):
            total = total + core.sigma(S, i, j)
        return total, 1

    c.check("compat.alpha_beta_rho_sum", [i], rho_sum, optional=_lowers_n(i, r))
    c.check("compat.alpha_gamma", [i, nk, nl], lambda: (_al(S, nk) - _al(S, nl), _al(S, i) * g(i)))
    c.check("compat.beta_gamma", [i, nk, nl, nkl], lambda: (_be(S, nl) - _be(S, nk), _be(S, nkl) * g(i)))
    c.check(
        "compat.rho_gamma",
        [i, n_k, nk, nl, nl.dn(k, -1)],
        lambda: (core.rho(S, i, k) * g(i), core.rho(S, nl, k) * g(n_k)),
    )
    c.check("compat.alpha_beta_sigma_sum", [i], sigma_sum, optional=_lowers_m(i, r))
    c.check("compat.alpha_eta", [i, mk, ml, mkl], lambda: (_al(S, ml) - _al(S, mk), _al(S, mkl) * h(i)))
    c.check("compat.beta_eta", [i, mk, ml], lambda: (_be(S, mk) - _be(S, ml), _be(S, i) * h(i)))
    c.check(
        "compat.sigma_eta",
        [i, m_k, mk, ml, ml.dm(k, -1)],
        lambda: (core.sigma(S, i, k) * h(i), core.sigma(S, ml, k) * h(m_k)),
    )
    return c.reports


# -- further consequences -------------------------------------------------------------


def verify_consequences(system, idx, k: int, tol: float = DEFAULT_RTOL) -> list[VerificationReport]:
    """Diagonal-step recurrences, the ``1 - alpha beta`` ratios and the
    normality criterion they give, the gamma/eta three-term forms and the
    gamma-free three-term relation."""
    S, i = system, core._idx(idx).check()
    c = _Checker(S, i, tol, k=k)
    r = S.r
    nk, mk, n_k, m_k = i.dn(k), i.dm(k), i.dn(k, -1), i.dm(k, -1)

    def omab(up_m, up_n):
        return 1 - _al(S, up_m) * _be(S, up_n)

    c.check(
        "conseq.phi_star_diag",
        [i, nk, mk],
        lambda: (_phis(S, nk), omab(mk, nk) * _phis(S, i) + _be(S, nk) * (Z * _phi(S, mk))),
    )
    c.check(
        "conseq.phi_diag",
        [i, nk, mk],
        lambda: (_phi(S, mk), omab(mk, nk) * _phi(S, i) + _al(S, mk) * (ZINV * _phis(S, nk))),
    )
    c.check(
        "conseq.xi_star_diag",
        [i, n_k, m_k],
        lambda: (_xis(S, n_k), _xis(S, i) * omab(n_k, m_k) - _al(S, n_k) * (_xi(S, m_k) * Z)),
    )
    c.check(
        "conseq.xi_diag",
        [i, n_k, m_k],
        lambda: (_xi(S, m_k), _xi(S, i) * omab(n_k, m_k) - _be(S, m_k) * (_xis(S, n_k) * ZINV)),
    )
    c.check(
        "conseq.ratio_phi",
        [i, mk, nk],
        lambda: (
            functional_value(S, k, _phi(S, mk), -i.n[k]) / functional_value(S, k, _phi(S, i), -i.n[k]),
            omab(mk, nk),
        ),
    )
    c.check(
        "conseq.ratio_phi_star",
        [i, mk, nk],
        lambda: (
            functional_value(S, k, _phis(S, nk), i.m[k]) / functional_value(S, k, _phis(S, i), i.m[k]),
            omab(mk, nk),
        ),
    )
    c.check(
        "conseq.diag_normality",
        [i, mk, nk],
        lambda: (not _is_zero(S, omab(mk, nk)), is_normal(S, nk.dm(k))),
    )

    def gamma_sum_phi():
        acc = _phi(S, nk) - _al(S, nk) * _phis(S, i)
        for j in range(r):
            lo = _lower_n(i, j)
            if lo is not None and j != k:
                acc = acc + core.rho(S, i, j) * core.gamma(S, i, j, k) * (Z * _phi(S, lo))
        return Z * _phi(S, i), acc

    c.check(
        "conseq.phi_three_term_gamma",
        [i] + [i.dn(j) for j in range(r)],
        gamma_sum_phi,
        optional=_lowers_n(i, r),
    )

    def eta_sum_phis():
        acc = _phis(S, mk) - _be(S, mk) * _phi(S, i)
        for j in range(r):
            lo = _lower_m(i, j)
            if lo is not None and j != k:
                acc = acc + core.sigma(S, i, j) * core.eta(S, i, j, k) * (ZINV * _phis(S, lo))
        return ZINV * _phis(S, i), acc

    c.check(
        "conseq.phi_star_three_term_eta",
        [i] + [i.dm(j) for j in range(r)],
        eta_sum_phis,
        optional=_lowers_m(i, r),
    )

    def gamma_sum_xi():
        acc = _xi(S, n_k) + _xis(S, i) * _be(S, n_k)
        for j in range(r):
            if j != k and _lower_n(i, j) is not None:
                acc = acc + _xi(S, i.dn(j)) * Z * (core.rho(S, i, j) * core.gamma(S, n_k.dn(j, -1), j, k))
        return _xi(S, i) * Z, acc

    c.check(
        "conseq.xi_three_term_gamma",
        [i, n_k] + [i.dn(j) for j in range(r)] + [n_k.dn(j, -1) for j in range(r) if j != k],
        gamma_sum_xi,
        optional=_lowers_n(i, r),
    )

    def eta_sum_xis():
        acc = _xis(S, m_k) + _xi(S, i) * _al(S, m_k)
        for j in range(r):
            if j != k and _lower_m(i, j) is not None:
                acc = acc + _xis(S, i.dm(j)) * ZINV * (core.sigma(S, i, j) * core.eta(S, m_k.dm(j, -1), j, k))
        return _xis(S, i) * ZINV, acc

    c.check(
        "conseq.xi_star_three_term_eta",
        [i, m_k] + [i.dm(j) for j in range(r)] + [m_k.dm(j, -1) for j in range(r) if j != k],
        eta_sum_xis,
        optional=_lowers_m(i, r),
    )

    def alpha_three_term():
        a = _al(S, i)
        acc = a * _phi(S, nk) - _al(S, nk) * _phi(S, i)
        for j in range(r):
            lo = _lower_n(i, j)
            if lo is not None:
                acc = acc + _al(S, i.dn(j)) * core.rho(S, i, j) * (Z * _phi(S, lo))
        return a * (Z * _phi(S, i)), acc

    c.check(
        "conseq.phi_three_term_alpha",
        [i] + [i.dn(j) for j in range(r)],
        alpha_three_term,
        optional=_lowers_n(i, r),
    )
    return c.reports


# -- Christoffel-Darboux ------------------------------------------------------------------


@dataclass(frozen=True)
class IndexPath:
    """Monotone path ``(n_0; m), ..., (n_N; m)`` with ``n_0 = -m`` and unit steps in ``n``."""

    m: tuple
    steps: tuple  # the sequence n_0, ..., n_N

    def __post_init__(self):
        m = tuple(self.m)
        steps = tuple(tuple(s) for s in self.steps)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "steps", steps)
        if not steps or steps[0] != tuple(-x for x in m):
            raise InvalidInput("a path must start at n_0 = -m")
        for a, b in zip(steps, steps[1:]):
            diff = [y - x for x, y in zip(a, b)]
            if sorted(diff) != [0] * (len(diff) - 1) + [1]:
                raise InvalidInput(f"path step {a} -> {b} is not a unit step")

    @property
    def length(self) -> int:
        return len(self.steps) - 1

    @property
    def end(self) -> tuple:
        return self.steps[-1]

    def indices(self) -> list[MultiIndexPair]:
        return [MultiIndexPair(s, self.m) for s in self.steps]

    def directions(self) -> list[int]:
        return [next(j for j, (x, y) in enumerate(zip(a, b)) if y != x) for a, b in zip(self.steps, self.steps[1:])]


def enumerate_paths(m: Sequence[int], target_n: Sequence[int]) -> list[IndexPath]:
    """Every monotone lattice path from ``(-m; m)`` to ``(target_n; m)``, in lexicographic step order."""
    m, target = tuple(m), tuple(target_n)
    start = tuple(-x for x in m)
    counts = [t - s for t, s in zip(target, start)]
    if any(cn < 0 for cn in counts):
        raise InvalidInput("target_n must satisfy target_n >= -m")
    moves = [j for j, cn in enumerate(counts) for _ in range(cn)]
    paths = []
    for perm in sorted(set(itertools.permutations(moves))):
        cur = list(start)
        steps = [tuple(cur)]
        for j in perm:
            cur[j] += 1
            steps.append(tuple(cur))
        paths.append(IndexPath(m, tuple(steps)))
    return paths


def random_points(count: int, seed: int, bound: int = 7) -> list[tuple]:
    """Deterministic pairs ``(z, xi)`` of nonzero small rationals ``p/q``, ``|p|, |q| <= bound``."""
    rng = random.Random(seed)

    def draw():
        p = 0
        while p == 0:
            p = rng.randint(-bound, bound)
        q = rng.randint(1, bound)
        return GaussianRational(Fraction(p, q))

    pts = []
    while len(pts) < count:
        z, x = draw(), draw()
        if z != x:
            pts.append((z, x))
    return pts


def _pairing(p_value, vec_value):
    return tuple(p_value * v for v in vec_value)


def _vsum(a, b):
    return tuple(x + y for x, y in zip(a, b))


def christoffel_darboux(system, path: IndexPath, z, xi, tol: float = DEFAULT_RTOL) -> list[VerificationReport]:
    """Both kernel identities along ``path`` evaluated at the point pair ``(z, xi)``.

    Products of a scalar polynomial with a type I vector are taken
    componentwise, so each side is an r-tuple.
    """
    if z == 0 or xi == 0:
        raise SingularEvaluation("kernel identities are evaluated at nonzero points only")
    if not system.exact:
        z, xi = complex(z), complex(xi)
    S, r = system, system.r
    path_idx = path.indices()
    end = path_idx[-1]
    data = {"m": list(path.m), "path": [list(s) for s in path.steps], "z": scalar_to_json(z), "xi": scalar_to_json(xi)}
    zero_vec = tuple(_zero_of(S) for _ in range(r))
    reports = []

    def run(name, requires, optional, compute):
        c = _Checker(S, end, tol)
        c.data = data
        c.check(name, requires, compute, optional)
        reports.extend(c.reports)

    def first():
        lhs = zero_vec
        for a, b in zip(path_idx, path_idx[1:]):
            lhs = _vsum(lhs, _pairing(_phi(S, a)(z), _xi(S, b)(xi)))
        lhs = tuple((xi - z) * v for v in lhs)
        rhs = _pairing(_phis(S, end)(z), _xis(S, end)(xi))
        for j in range(r):
            lo = _lower_n(end, j)
            if lo is None:
                continue
            term = _pairing(core.rho(S, end, j) * _phi(S, lo)(z), _xi(S, end.dn(j))(xi))
            rhs = tuple(x - z * xi * t for x, t in zip(rhs, term))
        return lhs, rhs

    run(
        "christoffel_darboux.first",
        path_idx + [end.dn(j) for j in range(r)],
        _lowers_n(end, r),
        first,
    )

    swapped = [p.swapped() for p in path_idx]
    send = swapped[-1]

    def second():
        lhs = zero_vec
        for a, b in zip(swapped, swapped[1:]):
            lhs = _vsum(lhs, _pairing(_phis(S, a)(z), _xis(S, b)(xi)))
        lhs = tuple((z - xi) * v for v in lhs)
        rhs = tuple(z * xi * v for v in _pairing(_phi(S, send)(z), _xi(S, send)(xi)))
        for j in range(r):
            lo = _lower_m(send, j)
            if lo is None:
                continue
            term = _pairing(core.sigma(S, send, j) * _phis(S, lo)(z), _xis(S, send.dm(j))(xi))
            rhs = tuple(x - t for x, t in zip(rhs, term))
        return lhs, rhs

    run(
        "christoffel_darboux.second",
        swapped + [send.dm(j) for j in range(r)],
        _lowers_m(send, r),
        second,
    )
    return reports


# -- sweeps ------------------------------------------------------------------------------


def verify_index(system, idx, tol: float = DEFAULT_RTOL) -> list[VerificationReport]:
    """Every pointwise-in-index identity at ``idx``, over all directions."""
    idx = core._idx(idx).check()
    out = []
    for k in range(system.r):
        out += verify_szego_n(system, idx, k, tol)
        out += verify_szego_m(system, idx, k, tol)
        out += verify_consequences(system, idx, k, tol)
    for k, l in itertools.permutations(range(system.r), 2):
        out += verify_compatibility(system, idx, k, l, tol)
    out += verify_biorthogonality(system, idx, tol)
    out += verify_coefficient_formulas(system, idx, tol)
    return out
