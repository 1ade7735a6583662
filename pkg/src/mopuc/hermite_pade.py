"""Two-point Hermite-Pade companions of the Laurent orthogonal polynomials.

For a Laurent polynomial ``P`` the second-kind companions are built from the
kernel ``((w+z)/(w-z)) (P(w) - P(z))``, which is a Laurent polynomial in both
variables, so each functional can be applied termwise in ``w``.  Order
conditions at 0 and at infinity are then verified by explicit truncated
series products against the Caratheodory expansions ``F_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import core
from .core import MultiIndexPair
from .errors import DepthInsufficient, InvalidIndex, InvalidInput
from .laurent import LaurentPolynomial, LaurentVector
from .moments import caratheodory_series
from .scalars import is_zero

__all__ = [
    "KernelExpansion",
    "kernel_expansion",
    "delta",
    "psi_type_ii",
    "psi_type_ii_star",
    "upsilon",
    "upsilon_star",
    "ApproximantPair",
    "approximant",
    "OrderRecord",
    "OrderCertificate",
    "certify_orders",
    "default_depth",
    "second_kind_series",
    "r_series_residual",
    "FAMILIES",
]

FAMILIES = ("phi", "phi_star", "xi", "xi_star")


class KernelExpansion:
    """``((w+z)/(w-z)) (P(w) - P(z))`` stored as ``{z-exponent: poly in w}``."""

    def __init__(self, P: LaurentPolynomial):
        self.source = P
        acc: dict[int, dict[int, object]] = {}

        def add(ze, we, c):
            row = acc.setdefault(ze, {})
            row[we] = row.get(we, 0) + c

        for s, a in P.items():
            # (w^s - z^s)/(w - z) as a finite sum of w^p z^q
            if s > 0:
                quotient = [(s - 1 - i, i, a) for i in range(s)]
            elif s < 0:
                b = -s
                quotient = [(-1 - i, i - b, -a) for i in range(b)]
            else:
                quotient = []
            for we, ze, c in quotient:
                add(ze, we + 1, c)  # times w
                add(ze + 1, we, c)  # times z
        self.terms = {
            ze: LaurentPolynomial(row) for ze, row in sorted(acc.items()) if LaurentPolynomial(row)
        }

    def apply(self, functional) -> LaurentPolynomial:
        """Apply a functional in ``w``; the result is a Laurent polynomial in ``z``."""
        return LaurentPolynomial({ze: functional.apply(p) for ze, p in self.terms.items()})

    def __call__(self, z, w):
        total = 0
        for ze, p in self.terms.items():
            total = total + p(w) * z**ze
        return total


def kernel_expansion(P: LaurentPolynomial) -> KernelExpansion:
    return KernelExpansion(P)


def _nonneg(idx) -> MultiIndexPair:
    i = core._idx(idx).check()
    if any(x < 0 for x in i.n + i.m):
        raise InvalidIndex(f"Hermite-Pade problems need n, m >= 0; got {i}")
    return i


def delta(idx) -> int:
    """1 when only ``m`` vanishes, -1 when only ``n`` vanishes, else 0."""
    i = core._idx(idx)
    n_zero = not any(i.n)
    m_zero = not any(i.m)
    if m_zero and not n_zero:
        return 1
    if n_zero and not m_zero:
        return -1
    return 0


def _check_support(p: LaurentPolynomial, lo: int, hi: int, what: str):
    sup = p.support()
    if sup is not None and (sup[0] < lo or sup[1] > hi):
        raise InvalidInput(f"{what} has support {sup}, outside [{lo}, {hi}]")


def psi_type_ii(system, Phi: LaurentPolynomial, idx) -> list[LaurentPolynomial]:
    """``Psi_j = L_j[K(Phi)] + L_j[Phi(w)]`` for each functional."""
    i = _nonneg(idx)
    _check_support(Phi, -i.abs_m, i.abs_n, "Phi")
    K = KernelExpansion(Phi)
    return [K.apply(L) + LaurentPolynomial.constant(L.apply(Phi)) for L in system]


def psi_type_ii_star(system, Phi_star: LaurentPolynomial, idx) -> list[LaurentPolynomial]:
    """``Psi*_j = -L_j[K(Phi*)] + L_j[Phi*(w)]``; pairs with ``Phi* F_j - Psi*_j``."""
    i = _nonneg(idx)
    _check_support(Phi_star, -i.abs_m, i.abs_n, "Phi*")
    K = KernelExpansion(Phi_star)
    return [LaurentPolynomial.constant(L.apply(Phi_star)) - K.apply(L) for L in system]


def _type_i_companion(system, vec, idx, sign, lo_shift, d):
    i = _nonneg(idx)
    if len(vec) != system.r:
        raise InvalidInput(f"type I vector has {len(vec)} components, system has {system.r}")
    for j, p in enumerate(vec):
        _check_support(p, -i.n[j] + lo_shift, i.m[j] - 1 + lo_shift, f"component {j}")
    total = LaurentPolynomial.zero()
    for L, p in zip(system, vec):
        total = total + sign * KernelExpansion(p).apply(L)
        if d:
            total = total + LaurentPolynomial.constant(d * L.apply(p))
    return total


def upsilon(system, Xi: Sequence[LaurentPolynomial], idx) -> LaurentPolynomial:
    """``sum_j L_j[K(Xi_j)] + delta sum_j L_j[Xi_j(w)]``."""
    return _type_i_companion(system, Xi, idx, 1, 0, delta(idx))


def upsilon_star(system, Xi_star: Sequence[LaurentPolynomial], idx) -> LaurentPolynomial:
    """``sum_j (-L_j[K(Xi*_j)] - delta L_j[Xi*_j(w)])``; pairs with ``sum Xi*_j F_j - Upsilon*``.

    The constant enters with the opposite sign to ``upsilon``: at ``m = 0`` the
    normalization makes ``sum_j L_j[Xi*_j] = 1``, and the constant term of the
    expansion at infinity is ``-(1 + c) sum_j L_j[Xi*_j]`` for a constant ``c``,
    so only ``c = -1`` reaches the required order (symmetrically at ``n = 0``).
    """
    return _type_i_companion(system, Xi_star, idx, -1, 1, -delta(idx))


# -- approximant pairs ---------------------------------------------------------------


@dataclass(frozen=True)
class ApproximantPair:
    """A polynomial family member together with its second-kind companion.

    ``main`` is a LaurentPolynomial (``phi``, ``phi_star``) or a LaurentVector
    (``xi``, ``xi_star``); ``companion`` is a list of r polynomials for the
    type II families and a single polynomial for the type I families.
    """

    family: str
    main: object
    companion: object

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidInput(f"unknown family {self.family!r}")

    def replace_companion(self, companion) -> ApproximantPair:
        return ApproximantPair(self.family, self.main, companion)


def approximant(system, idx, family: str) -> ApproximantPair:
    """Solve for the family member at ``idx`` and attach its companion."""
    i = _nonneg(idx)
    if family == "phi":
        P = core.phi(system, i)
        return ApproximantPair(family, P, psi_type_ii(system, P, i))
    if family == "phi_star":
        P = core.phi_star(system, i)
        return ApproximantPair(family, P, psi_type_ii_star(system, P, i))
    if family == "xi":
        V = core.xi(system, i)
        return ApproximantPair(family, V, upsilon(system, V, i))
    if family == "xi_star":
        V = core.xi_star(system, i)
        return ApproximantPair(family, V, upsilon_star(system, V, i))
    raise InvalidInput(f"unknown family {family!r}")


# -- order certification -------------------------------------------------------------


@dataclass
class OrderRecord:
    """Vanishing window of one residual series.

    ``at0_achieved`` is the lowest exponent with a nonzero coefficient at 0;
    when none appears in the verified window it is one past the window and
    ``at0_exact`` is False (likewise at infinity, with the highest exponent).
    Orders are read as ``O(z^required)``: at 0 everything below
    ``at0_required`` vanishes, at infinity everything above
    ``atinf_required`` vanishes.
    """

    component: object
    at0_required: int
    at0_achieved: int
    at0_exact: bool
    atinf_required: int
    atinf_achieved: int
    atinf_exact: bool
    window0: tuple
    windowinf: tuple

    @property
    def passed(self) -> bool:
        return self.at0_achieved >= self.at0_required and self.atinf_achieved <= self.atinf_required

    def failure(self) -> str:
        parts = []
        if self.at0_achieved < self.at0_required:
            parts.append(f"nonzero z^{self.at0_achieved} at 0 (need O(z^{self.at0_required}))")
        if self.atinf_achieved > self.atinf_required:
            parts.append(f"nonzero z^{self.atinf_achieved} at infinity (need O(z^{self.atinf_required}))")
        return "; ".join(parts)

    def to_json(self) -> dict:
        return {
            "component": self.component,
            "at0_required": self.at0_required,
            "at0_achieved": self.at0_achieved,
            "atinf_required": self.atinf_required,
            "atinf_achieved": self.atinf_achieved,
            "pass": self.passed,
        }


@dataclass
class OrderCertificate:
    family: str
    index: MultiIndexPair
    depth: int
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(rec.passed for rec in self.records)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "index": self.index.to_json(),
            "depth": self.depth,
            "pass": self.passed,
            "records": [rec.to_json() for rec in self.records],
        }


def default_depth(idx) -> int:
    i = core._idx(idx)
    return i.abs_n + i.abs_m + 4


def _series_product(P: LaurentPolynomial, coeffs: Sequence, at_zero: bool) -> dict:
    """``P`` times ``sum_k coeffs[k] z^{+-k}``, keeping only complete coefficients."""
    sup = P.support()
    if sup is None:
        return {}
    D = len(coeffs) - 1
    out: dict[int, object] = {}
    if at_zero:
        for e in range(sup[0], sup[0] + D + 1):
            acc = 0
            for s, a in P.items():
                k = e - s
                if 0 <= k <= D:
                    acc = acc + a * coeffs[k]
            out[e] = acc
    else:
        for e in range(sup[1] - D, sup[1] + 1):
            acc = 0
            for s, a in P.items():
                k = s - e
                if 0 <= k <= D:
                    acc = acc + a * coeffs[k]
            out[e] = acc
    return out


def _window(products: list[dict], extra: LaurentPolynomial, at_zero: bool, default: int):
    """Combine truncated products; return (coefficients, lo, hi) of the verified window."""
    if at_zero:
        bound = min((max(p) for p in products if p), default=None)
    else:
        bound = max((min(p) for p in products if p), default=None)
    exps = set(extra.exponents())
    for p in products:
        exps.update(p)
    coeffs: dict[int, object] = {}
    for e in exps:
        if bound is not None and ((at_zero and e > bound) or (not at_zero and e < bound)):
            continue
        acc = extra.coeff(e)
        for p in products:
            if e in p:
                acc = acc + p[e]
        coeffs[e] = acc
    if bound is None:
        bound = default
    return coeffs, bound


def _first_nonzero(coeffs: dict, bound: int, at_zero: bool, tol: float, scale: float):
    keys = sorted(coeffs, reverse=not at_zero)
    for e in keys:
        if not is_zero(coeffs[e], tol, scale):
            return e, True
    return (bound + 1, False) if at_zero else (bound - 1, False)


def _record(component, products0, productsinf, extra, req0, reqinf, exact, scale):
    tol = 0.0 if exact else 1e-9
    c0, b0 = _window(products0, extra, True, default=req0 - 1)
    ci, bi = _window(productsinf, extra, False, default=reqinf + 1)
    a0, ex0 = _first_nonzero(c0, b0, True, tol, scale)
    ai, exi = _first_nonzero(ci, bi, False, tol, scale)
    # undecided: nothing nonzero found but the window stops short of the requirement
    if (not ex0 and b0 < req0 - 1) or (not exi and bi > reqinf + 1):
        raise DepthInsufficient(
            f"component {component}: verified window ends at z^{b0} (at 0) and z^{bi} (at infinity); "
            f"need z^{req0 - 1} and z^{reqinf + 1}"
        )
    lo0 = min(c0, default=b0)
    hiinf = max(ci, default=bi)
    return OrderRecord(component, req0, a0, ex0, reqinf, ai, exi, (lo0, b0), (bi, hiinf))


def certify_orders(system, pair: ApproximantPair, idx, depth: int | None = None) -> OrderCertificate:
    """Expand ``main * F_j +- companion`` at 0 and at infinity to ``depth`` terms
    and compare the vanishing orders with those the family must reach."""
    i = _nonneg(idx)
    D = default_depth(i) if depth is None else depth
    if D < 0:
        raise InvalidInput("depth must be nonnegative")
    series = [caratheodory_series(L, D) for L in system]
    exact = system.exact
    scale = max(1.0, system.scale())
    cert = OrderCertificate(pair.family, i, D)
    if pair.family in ("phi", "phi_star"):
        star = pair.family == "phi_star"
        sign = -1 if star else 1
        if len(pair.companion) != system.r:
            raise InvalidInput("companion must have one polynomial per functional")
        for j, (F, comp) in enumerate(zip(series, pair.companion)):
            p0 = _series_product(pair.main, F.at_zero, True)
            pi = _series_product(pair.main, F.at_infinity, False)
            req0 = i.n[j] + 1 if star else i.n[j]
            reqinf = -i.m[j] if star else -i.m[j] - 1
            cert.records.append(_record(j, [p0], [pi], sign * comp, req0, reqinf, exact, scale))
    else:
        star = pair.family == "xi_star"
        sign = -1 if star else 1
        if len(pair.main) != system.r:
            raise InvalidInput("type I vector must have one component per functional")
        p0 = [_series_product(p, F.at_zero, True) for p, F in zip(pair.main, series)]
        pi = [_series_product(p, F.at_infinity, False) for p, F in zip(pair.main, series)]
        cert.records.append(
            _record("sum", p0, pi, sign * pair.companion, i.abs_m, -i.abs_n, exact, scale)
        )
    return cert


# -- second-kind series by direct evaluation -----------------------------------------------


def second_kind_series(system, P: LaurentPolynomial, j: int, depth: int):
    """Direct evaluation of ``R^(0) = 2 L_j[P] + 2 sum_k z^k L_j[w^{-k} P]`` and
    ``R^(inf) = -2 sum_k z^{-k} L_j[w^k P]`` for ``1 <= k <= depth``.

    Exponent-keyed dicts; the constant at 0 is only forced to vanish by the
    order conditions when ``n_j > 0``, but the identity holds regardless."""
    L = system[j]
    at0 = {0: 2 * L.apply(P)}
    atinf = {}
    for k in range(1, depth + 1):
        at0[k] = 2 * L.apply(P.shift(-k))
        atinf[-k] = -2 * L.apply(P.shift(k))
    return at0, atinf


def r_series_residual(system, idx, depth: int | None = None) -> list[tuple[int, int]]:
    """Compare ``Phi F_j + Psi_j`` with the direct second-kind series on the
    common window.  Returns the list of ``(j, exponent)`` where they differ."""
    i = _nonneg(idx)
    D = default_depth(i) if depth is None else depth
    pair = approximant(system, i, "phi")
    Phi = pair.main
    bad = []
    tol = 0.0 if system.exact else 1e-9
    scale = max(1.0, system.scale())
    for j, L in enumerate(system):
        F = caratheodory_series(L, D)
        psi = pair.companion[j]
        p0 = _series_product(Phi, F.at_zero, True)
        pi = _series_product(Phi, F.at_infinity, False)
        top0 = max(p0, default=-1)
        bottom = min(pi, default=1)
        at0, atinf = second_kind_series(system, Phi, j, max(top0, -bottom, 0))
        for e in range(min(list(p0) + [0]), top0 + 1):
            lhs = p0.get(e, 0) + psi.coeff(e)
            if not is_zero(lhs - at0.get(e, 0), tol, scale):
                bad.append((j, e))
        for e in range(bottom, max(list(pi) + [0]) + 1):
            lhs = pi.get(e, 0) + psi.coeff(e)
            if not is_zero(lhs - atinf.get(e, 0), tol, scale):
                bad.append((j, e))
    return bad
