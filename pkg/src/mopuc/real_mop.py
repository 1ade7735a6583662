"""Multiple orthogonal polynomials on the real line and their bridge to the
circle through the Szego map.

Real-side objects come from block-Hankel solves on a system of real moment
functionals.  The bridge checks compare them with circle-side data computed
by :mod:`mopuc.core` on a symmetric Laurent system ``L`` with
``M_j = Sz^{-1}(L_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from . import core, linalg
from .core import MultiIndexPair
from .errors import HypothesisViolated, InvalidIndex, InvalidInput, NotNormal, QuasiDefiniteViolated
from .laurent import LaurentPolynomial
from .moments import FunctionalSystem, szego_inverse
from .relations import VerificationReport, _holds
from .scalars import DEFAULT_RTOL, exact, scalar_to_json

__all__ = [
    "RealPolynomial",
    "RealSolve",
    "NNCoefficients",
    "real_type_ii",
    "real_type_i",
    "nn_coefficients",
    "nn_table",
    "recurrence_residuals",
    "real_system_of",
    "szego_polynomial_check",
    "geronimus_prediction",
    "geronimus_check",
    "classical_geronimus_check",
]


class RealPolynomial:
    """Polynomial in ``x`` with coefficients listed by ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> RealPolynomial:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return RealPolynomial([self.coeff(k) + other.coeff(k) for k in range(n)])

    def __neg__(self):
        return RealPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RealPolynomial):
            out = [0] * max(0, len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return RealPolynomial(out)
        return RealPolynomial([c * other for c in self.coeffs])

    def __rmul__(self, other):
        return self * other

    def times_x(self) -> RealPolynomial:
        return RealPolynomial([0] + list(self.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def is_zero(self, tol: float = 0.0, scale: float = 1.0) -> bool:
        if tol == 0.0:
            return not self.coeffs
        return all(abs(complex(c)) <= tol * scale for c in self.coeffs)

    def max_abs(self) -> float:
        return max((abs(complex(c)) for c in self.coeffs), default=0.0)

    def joukowski(self) -> LaurentPolynomial:
        """``P(z + 1/z)`` expanded binomially into a Laurent polynomial."""
        out: dict[int, object] = {}
        for k, c in enumerate(self.coeffs):
            for i in range(k + 1):
                e = k - 2 * i
                out[e] = out.get(e, 0) + comb(k, i) * c
        return LaurentPolynomial(out)

    def __eq__(self, other):
        if isinstance(other, RealPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RealPolynomial({list(self.coeffs)!r})"

    def to_json(self) -> list:
        return [scalar_to_json(c) for c in self.coeffs]


@dataclass(frozen=True)
class RealSolve:
    n: tuple
    polynomial: object  # RealPolynomial, or a tuple of them for type I; None when not normal
    normal: bool
    det: object


def _multi(n, r) -> tuple:
    n = tuple(int(v) for v in n)
    if len(n) != r:
        raise InvalidIndex(f"multi-index {n} has length {len(n)}, system has r={r}")
    if any(v < 0 for v in n):
        raise InvalidIndex(f"real-line multi-indices must be nonnegative; got {n}")
    return n


def _hankel(M: FunctionalSystem, n: tuple):
    """Rows ``(j, k)`` for ``k < n_j``, columns ``i < |n|``, entry ``m_{j, i+k}``."""
    N = sum(n)
    return [[M[j].moment(i + k) for i in range(N)] for j in range(M.r) for k in range(n[j])]


def _solve_hankel(M: FunctionalSystem, n: tuple):
    def compute():
        N = sum(n)
        one = exact(1) if M.exact else 1.0 + 0j
        zero = exact(0) if M.exact else 0j
        if N == 0:
            return one, RealPolynomial([one]), ()
        H = _hankel(M, n)
        rhs2 = [-M[j].moment(N + k) for j in range(M.r) for k in range(n[j])]
        Ht = [[H[p][q] for p in range(N)] for q in range(N)]
        d, (p,) = linalg.solve(H, [rhs2], M.scale())
        if p is None:
            return d, None, None
        e_last = [zero] * N
        e_last[N - 1] = one
        _, (a,) = linalg.solve(Ht, [e_last], M.scale())
        P = RealPolynomial(list(p) + [one])
        A, pos = [], 0
        for j in range(M.r):
            A.append(RealPolynomial(a[pos : pos + n[j]]))
            pos += n[j]
        return d, P, tuple(A)

    return core._memo(M, ("hankel", n), compute)


def _require_real(M):
    if not isinstance(M, FunctionalSystem) or M.kind != "real":
        raise InvalidInput("expected a system of real-line moment functionals")


def real_type_ii(M: FunctionalSystem, n, strict: bool = True) -> RealSolve:
    """Monic ``P_n`` of degree ``|n|`` with ``M_j[P_n x^k] = 0`` for ``k < n_j``."""
    _require_real(M)
    n = _multi(n, M.r)
    d, P, _ = _solve_hankel(M, n)
    if P is None and strict:
        raise NotNormal(n, f"block Hankel determinant {d}")
    return RealSolve(n, P, P is not None, d)


def real_type_i(M: FunctionalSystem, n, strict: bool = True) -> RealSolve:
    """``A_n`` with ``deg A_{n,j} < n_j`` and ``sum_j M_j[A_{n,j} x^k] = [k = |n|-1]``."""
    _require_real(M)
    n = _multi(n, M.r)
    d, P, A = _solve_hankel(M, n)
    if P is None:
        if strict:
            raise NotNormal(n, f"block Hankel determinant {d}")
        return RealSolve(n, None, False, d)
    if sum(n) == 0:
        A = tuple(RealPolynomial() for _ in range(M.r))
    return RealSolve(n, A, True, d)


def _P(M, n):
    return real_type_ii(M, n).polynomial


def _real_normal(M, n) -> bool:
    if any(v < 0 for v in n):
        return False
    return real_type_ii(M, n, strict=False).normal


def _e(r, j, d=1):
    v = [0] * r
    v[j] = d
    return tuple(v)


def _add(n, v):
    return tuple(a + b for a, b in zip(n, v))


def _apply(Mj, P: RealPolynomial, power: int = 0):
    acc = 0
    for k, c in enumerate(P.coeffs):
        acc = acc + c * Mj.moment(k + power)
    return acc


# -- nearest neighbour recurrence -------------------------------------------------------


@dataclass
class NNCoefficients:
    """``a[(n, j)]`` and ``b[(n, j)]`` wherever they could be computed."""

    a: dict = field(default_factory=dict)
    b: dict = field(default_factory=dict)

    def to_json(self) -> list:
        keys = sorted(set(self.a) | set(self.b))
        return [
            {
                "n": list(n),
                "j": j,
                "a": scalar_to_json(self.a[(n, j)]) if (n, j) in self.a else None,
                "b": scalar_to_json(self.b[(n, j)]) if (n, j) in self.b else None,
            }
            for n, j in keys
        ]


def _a_coeff(M, n, j):
    if n[j] == 0:
        # P_{n-e_j} does not exist, so the term is absent from the recurrence
        return 0 if M.exact else 0j
    lower = _add(n, _e(M.r, j, -1))
    num = _apply(M[j], _P(M, n), n[j])
    den = _apply(M[j], _P(M, lower), n[j] - 1)
    return num / den


def _b_coeff(M, n, j):
    N = sum(n)
    return _P(M, n).coeff(N - 1) - _P(M, _add(n, _e(M.r, j))).coeff(N)


def nn_coefficients(M: FunctionalSystem, n, j: int, check: bool = True):
    """``(a_{n,j}, b_{n,j})`` from the moment ratios and leading coefficients.

    With ``check`` the recurrence residuals at ``n`` in direction ``j`` are
    verified too, and a nonzero residual raises ``ArithmeticError``.
    """
    _require_real(M)
    n = _multi(n, M.r)
    need = [n, _add(n, _e(M.r, j))] + [_add(n, _e(M.r, i, -1)) for i in range(M.r) if n[i] > 0]
    for k in need:
        if not _real_normal(M, k):
            raise NotNormal(k, "required real-line neighbour")
    a, b = _a_coeff(M, n, j), _b_coeff(M, n, j)
    if check:
        bad = [rep for rep in recurrence_residuals(M, n, j) if rep.failed]
        if bad:
            raise ArithmeticError(f"recurrence residual nonzero at n={n}, k={j}: {bad[0].name}")
    return a, b


def nn_table(M: FunctionalSystem, indices) -> NNCoefficients:
    """All computable ``(a, b)`` at the given multi-indices; non-normal neighbours are left out."""
    out = NNCoefficients()
    for n in indices:
        n = _multi(n, M.r)
        for j in range(M.r):
            try:
                a, b = nn_coefficients(M, n, j, check=False)
            except NotNormal:
                continue
            out.a[(n, j)] = a
            out.b[(n, j)] = b
    return out


def recurrence_residuals(M: FunctionalSystem, n, k: int, tol: float = DEFAULT_RTOL) -> list[VerificationReport]:
    """Type II recurrence at ``n`` and the type I recurrence at ``n`` in direction ``k``."""
    _require_real(M)
    n = _multi(n, M.r)
    r = M.r
    data = {"n": list(n), "k": k}
    reports = []

    def run(name, needs, compute):
        for i in needs:
            if not _real_normal(M, i):
                why = f"{i} is not normal" if min(i) >= 0 else f"{i} has a negative entry"
                reports.append(VerificationReport(name, data, "skip", reason=why))
                return
        lhs, rhs = compute()
        ok, res = _holds_poly(lhs, rhs, M.exact, tol)
        reports.append(VerificationReport(name, data, "pass" if ok else "fail", res))

    lowers = [_add(n, _e(r, j, -1)) for j in range(r) if n[j] > 0]
    up = _add(n, _e(r, k))

    def type_ii():
        rhs = _P(M, up) + _b_coeff(M, n, k) * _P(M, n)
        for j in range(r):
            if n[j] > 0:
                rhs = rhs + _a_coeff(M, n, j) * _P(M, _add(n, _e(r, j, -1)))
        return _P(M, n).times_x(), rhs

    run("real_recurrence.type_ii", [n, up] + lowers, type_ii)

    if n[k] > 0:
        down = _add(n, _e(r, k, -1))
        uppers = [_add(n, _e(r, j)) for j in range(r)]
        up_lowers = [_add(u, _e(r, i, -1)) for u in uppers for i in range(r) if u[i] > 0]

        def type_i():
            A = real_type_i(M, n).polynomial
            lhs = tuple(p.times_x() for p in A)
            rhs = real_type_i(M, down).polynomial
            bk = _b_coeff(M, down, k)
            rhs = tuple(x + bk * y for x, y in zip(rhs, A))
            for j in range(r):
                aj = _a_coeff(M, n, j)
                Aj = real_type_i(M, _add(n, _e(r, j))).polynomial
                rhs = tuple(x + aj * y for x, y in zip(rhs, Aj))
            return lhs, rhs

        run("real_recurrence.type_i", [n, down] + lowers + uppers + up_lowers, type_i)
    return reports


def _holds_poly(lhs, rhs, exact, tol):
    if isinstance(lhs, tuple):
        res = tuple(a - b for a, b in zip(lhs, rhs))
        polys = list(res)
        scale = max([1.0] + [p.max_abs() for p in lhs + rhs])
    else:
        res = lhs - rhs
        polys = [res]
        scale = max(1.0, lhs.max_abs(), rhs.max_abs())
    if exact:
        return all(p.is_zero() for p in polys), _poly_residual(res)
    return all(p.is_zero(tol, scale) for p in polys), _poly_residual(res)


def _poly_residual(res):
    # reports serialize Laurent objects; a real polynomial is one with exponents >= 0
    if isinstance(res, tuple):
        return tuple(LaurentPolynomial(dict(enumerate(p.coeffs))) for p in res)
    return LaurentPolynomial(dict(enumerate(res.coeffs)))


# -- Szego bridge --------------------------------------------------------------------------


def real_system_of(L: FunctionalSystem) -> FunctionalSystem:
    """``M = (Sz^{-1}(L_1), ..., Sz^{-1}(L_r))``, cached on ``L``."""
    if L.kind != "laurent":
        raise InvalidInput("expected a system of Laurent functionals")
    return core._memo(
        L, ("szego_inverse",), lambda: FunctionalSystem([szego_inverse(f) for f in L], f"Sz^-1({L.description})")
    )


def _pair(n, m):
    return MultiIndexPair.of(n, m)


def _circle_hypotheses(L, n):
    r = L.r
    need = [_pair(n, n)] + [_pair(_add(n, _e(r, j)), n) for j in range(r)]
    for i in need:
        if not core.is_normal(L, i):
            raise HypothesisViolated(f"circle index {i} is not normal")


def szego_polynomial_check(L: FunctionalSystem, n, j: int | None = None, tol: float = DEFAULT_RTOL) -> list[VerificationReport]:
    """``P_n(z+1/z)`` against ``(Phi_{n;n}(z) + Phi_{n;n}(1/z))/(1 + alpha_{n;n})``
    and, for each ``j`` with ``n_j > 0``, against ``Phi_{n;n-e_j}(z) + Phi_{n;n-e_j}(1/z)``.

    Also records that ``1 + alpha_{n;n}`` is nonzero, that it equals the
    ``z^{|n|}`` coefficient of ``Phi_{n;n}(z) + Phi_{n;n}(1/z)``, and that ``n``
    is normal for ``M = Sz^{-1}(L)``.
    """
    n = _multi(n, L.r)
    M = real_system_of(L)
    _circle_hypotheses(L, n)
    data = {"n": list(n)}
    is_ex = L.exact
    reports = []

    def add(name, ok, res=None, extra=None):
        d = dict(data, **(extra or {}))
        reports.append(VerificationReport(name, d, "pass" if ok else "fail", res))

    sol = real_type_ii(M, n, strict=False)
    add("szego_bridge.real_index_normal", sol.normal)
    i = _pair(n, n)
    Phi = core.phi(L, i)
    a = core.alpha(L, i)
    f = Phi + Phi.reflect()
    one_plus = 1 + a
    nonzero = one_plus != 0 if is_ex else abs(one_plus) > linalg.FLOAT_DET_RTOL
    add("szego_bridge.one_plus_alpha_nonzero", nonzero)
    ok, res = _holds(f.coeff(sum(n)), one_plus, is_ex, tol)
    add("szego_bridge.leading_coefficient", ok, res)
    if not sol.normal or not nonzero:
        return reports
    P = sol.polynomial.joukowski()
    ok, res = _holds(P, f / one_plus, is_ex, tol)
    add("szego_bridge.polynomial", ok, res)
    for k in range(L.r) if j is None else [j]:
        if n[k] == 0:
            reports.append(
                VerificationReport(
                    "szego_bridge.polynomial_lowered", dict(data, j=k), "skip", reason=f"n_{k} = 0 leaves the admissible set"
                )
            )
            continue
        low = _pair(n, _add(n, _e(L.r, k, -1)))
        g = core.phi(L, low)
        ok, res = _holds(P, g + g.reflect(), is_ex, tol)
        add("szego_bridge.polynomial_lowered", ok, res, {"j": k})
    return reports


def _alpha_or_zero(L, n, m):
    """``alpha`` at ``(n;m)``, with 0 outside the admissible set (the ``alpha_{-1} = 0`` convention)."""
    i = _pair(n, m)
    if not i.in_domain():
        return exact(0) if L.exact else 0j
    return core.alpha(L, i)


def geronimus_prediction(L: FunctionalSystem, n, j: int):
    """Circle-side ``(a_{n,j}, b_{n,j}, b_gamma_free)``; the last is None when ``alpha_{n;n} = 0``."""
    n = _multi(n, L.r)
    r = L.r
    i = _pair(n, n)
    dn = _add(n, _e(r, j, -1))
    up = _add(n, _e(r, j))
    a_nn = core.alpha(L, i)
    zero = exact(0) if L.exact else 0j
    if n[j] == 0:
        a_pred = zero
    else:
        a_pred = (1 + _alpha_or_zero(L, dn, dn)) * (1 - _alpha_or_zero(L, dn, n) ** 2) * core.rho(L, i, j) / (1 + a_nn)
    tail = _alpha_or_zero(L, n, dn) - _alpha_or_zero(L, up, n) - a_nn * _alpha_or_zero(L, dn, n)
    b_pred = zero
    for l in range(r):
        b_pred = b_pred + core.rho(L, i, l) * core.gamma_or_zero(L, i, l, j)
    b_pred = b_pred + tail - a_nn * _alpha_or_zero(L, up, n)
    b_free = None
    if not core._is_zero(L, a_nn):
        s = -_alpha_or_zero(L, up, n)
        for l in range(r):
            s = s + _alpha_or_zero(L, _add(n, _e(r, l)), n) * core.rho(L, i, l)
        b_free = s / a_nn + tail
    return a_pred, b_pred, b_free


def geronimus_check(L: FunctionalSystem, n, j: int, tol: float = DEFAULT_RTOL) -> list[VerificationReport]:
    """Circle-side formulas for ``a_{n,j}``, ``b_{n,j}`` against the real-side
    recurrence coefficients of ``Sz^{-1}(L)``."""
    n = _multi(n, L.r)
    _circle_hypotheses(L, n)
    if n[j] > 0:
        _circle_hypotheses(L, _add(n, _e(L.r, j, -1)))
    M = real_system_of(L)
    data = {"n": list(n), "j": j}
    is_ex = L.exact
    a_pred, b_pred, b_free = geronimus_prediction(L, n, j)
    try:
        a_real, b_real = nn_coefficients(M, n, j, check=False)
    except NotNormal as e:
        names = ("geronimus.a", "geronimus.b", "geronimus.b_gamma_free")
        return [VerificationReport(name, data, "skip", reason=str(e)) for name in names]
    reports = []
    ok, res = _holds(a_pred, a_real, is_ex, tol)
    reports.append(VerificationReport("geronimus.a", data, "pass" if ok else "fail", res))
    if n[j] == 0 and any(n):
        # alpha_{n;n-e_j} and alpha_{n-e_j;n} sit outside the admissible set; the
        # zero reading that works at n = 0 is not valid here
        why = f"n_{j} = 0 with n != 0: the b formula needs indices outside the admissible set"
        for name in ("geronimus.b", "geronimus.b_gamma_free"):
            reports.append(VerificationReport(name, data, "skip", reason=why))
        return reports
    ok, res = _holds(b_pred, b_real, is_ex, tol)
    reports.append(VerificationReport("geronimus.b", data, "pass" if ok else "fail", res))
    if b_free is None:
        reports.append(VerificationReport("geronimus.b_gamma_free", data, "skip", reason="alpha_{n;n} = 0"))
    else:
        ok, res = _holds(b_free, b_real, is_ex, tol)
        reports.append(VerificationReport("geronimus.b_gamma_free", data, "pass" if ok else "fail", res))
    return reports


def classical_geronimus_check(L: FunctionalSystem, depth: int, strict: bool = True, tol: float = DEFAULT_RTOL) -> list[VerificationReport]:
    """Scalar relations between ``alpha_k = Phi_k(0)`` (with ``alpha_0 = 1``,
    ``alpha_{-1} = 0``) and the monic Jacobi data of ``Sz^{-1}(L)``.

    The ``a`` side is matched against the monic recurrence coefficient
    ``M[P_n x^n] / M[P_{n-1} x^{n-1}]``.  Checks needing a non-quasi-definite
    degree raise ``QuasiDefiniteViolated`` unless ``strict`` is False, in which
    case they are skipped.
    """
    if L.r != 1:
        raise InvalidInput("the classical relations need r = 1")
    M = real_system_of(L)

    def circle_ok(k):
        return core.is_normal(L, _pair((k,), (0,)))

    def al(k):
        if k < 0:
            return exact(0) if L.exact else 0j
        return core.alpha(L, _pair((k,), (0,)))

    reports = []
    is_ex = L.exact

    def run(name, n, circle_top, real_top, compute):
        data = {"n": n}
        bad = [k for k in range(circle_top + 1) if not circle_ok(k)]
        bad_real = [k for k in range(real_top + 1) if not _real_normal(M, (k,))]
        if bad or bad_real:
            why = f"circle degree {bad[0]} not normal" if bad else f"real degree {bad_real[0]} not normal"
            if strict:
                raise QuasiDefiniteViolated(why)
            reports.append(VerificationReport(name, data, "skip", reason=why))
            return
        lhs, rhs = compute()
        ok, res = _holds(lhs, rhs, is_ex, tol)
        reports.append(VerificationReport(name, data, "pass" if ok else "fail", res))

    for n in range(depth + 1):
        if n >= 1:
            run(
                "classical_geronimus.a",
                n,
                2 * n,
                n,
                lambda n=n: (
                    _a_coeff(M, (n,), 0),
                    (1 + al(2 * n - 2)) * (1 - al(2 * n - 1) ** 2) * (1 - al(2 * n)),
                ),
            )
        run(
            "classical_geronimus.b",
            n,
            2 * n + 1,
            n + 1,
            lambda n=n: (
                _b_coeff(M, (n,), 0),
                (1 - al(2 * n)) * al(2 * n - 1) - (1 + al(2 * n)) * al(2 * n + 1),
            ),
        )
    return reports
