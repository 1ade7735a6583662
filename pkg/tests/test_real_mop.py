from fractions import Fraction
from math import comb

import pytest
import sympy as sp

import oracle
from mopuc import core
from mopuc import real_mop as rm
from mopuc.errors import HypothesisViolated, InvalidIndex, InvalidInput, QuasiDefiniteViolated
from mopuc.laurent import LaurentPolynomial as LP
from mopuc.moments import CircleAtom, FunctionalSystem, from_atoms, geometric, real_from_atoms, real_from_moments
from mopuc.scalars import exact
from mopuc.systems import geometric_system, lebesgue_system, symmetric_r2_system

H = Fraction(1, 2)
R = rm.RealPolynomial

ATOMS = [
    [(0, Fraction(1, 3)), (1, Fraction(1, 3)), (2, Fraction(1, 3))],
    [(-1, H), (H, Fraction(1, 4)), (3, Fraction(1, 4))],
]


@pytest.fixture
def arcsine():
    return FunctionalSystem([real_from_moments([comb(k, k // 2) if k % 2 == 0 else 0 for k in range(24)])])


@pytest.fixture
def pullback():
    return rm.real_system_of(geometric_system())


@pytest.fixture
def atomic2():
    return FunctionalSystem([real_from_atoms(a) for a in ATOMS])


def sympy_moments(atoms):
    return lambda k: sum(sp.Rational(w) * sp.Rational(x) ** k for x, w in atoms)


def test_real_polynomial_basics():
    p = R([1, 0, 0])
    assert p.degree == 0 and p == R([1])
    x = R.x()
    assert (x * x - R([2])) == R([-2, 0, 1])
    assert x.times_x() == R([0, 0, 1])
    assert R([-2, 0, 1]).joukowski() == LP({2: 1, -2: 1})
    assert R([1, 2, 3])(exact(2)) == 17


def test_arcsine_type_ii(arcsine):
    assert rm.real_type_ii(arcsine, [1]).polynomial == R([0, 1])
    assert rm.real_type_ii(arcsine, [2]).polynomial == R([-2, 0, 1])


def test_pullback_type_ii(pullback):
    assert rm.real_type_ii(pullback, [1]).polynomial == R([-1, 1])


def test_two_atomic_type_ii_and_i(atomic2):
    a, b = sp.symbols("a b")
    m1, m2 = (sympy_moments(x) for x in ATOMS)
    P = lambda k, mj: mj(k + 2) + a * mj(k + 1) + b * mj(k)  # noqa: E731
    sol = sp.solve([P(0, m1), P(0, m2)], [a, b], dict=True)[0]
    got = rm.real_type_ii(atomic2, [1, 1]).polynomial
    assert [oracle.to_sympy(c) for c in got.coeffs] == [sol[b], sol[a], 1]
    c1, c2 = sp.symbols("c1 c2")
    sol = sp.solve([c1 * m1(0) + c2 * m2(0), c1 * m1(1) + c2 * m2(1) - 1], [c1, c2], dict=True)[0]
    A = rm.real_type_i(atomic2, [1, 1]).polynomial
    assert [oracle.to_sympy(p.coeffs[0]) for p in A] == [sol[c1], sol[c2]]


def test_type_i_examples(arcsine, atomic2):
    assert all(p == R() for p in rm.real_type_i(atomic2, [0, 0]).polynomial)
    assert rm.real_type_i(arcsine, [1]).polynomial == (R([1]),)


def test_type_i_normalization(atomic2):
    for n in [(2, 1), (1, 2), (2, 2), (3, 1)]:
        A = rm.real_type_i(atomic2, n).polynomial
        N = sum(n)
        for k in range(N):
            s = sum(rm._apply(M, p, k) for M, p in zip(atomic2, A))
            assert s == (1 if k == N - 1 else 0)


def test_hankel_matches_sympy(pullback):
    moms = [oracle.to_sympy(pullback[0].moment(k)) for k in range(12)]
    for d in range(1, 6):
        ref = oracle.hankel_monic(moms, d)
        got = rm.real_type_ii(pullback, [d]).polynomial
        assert [oracle.to_sympy(c) for c in got.coeffs] == ref


def test_nn_arcsine(arcsine):
    a, b = rm.nn_coefficients(arcsine, [0], 0)
    assert a == 0 and b == 0
    assert rm.nn_coefficients(arcsine, [1], 0)[0] == 2
    for n in range(2, 6):
        a, b = rm.nn_coefficients(arcsine, [n], 0)
        assert a == 1 and b == 0


def test_nn_pullback(pullback):
    assert rm.nn_coefficients(pullback, [0], 0)[1] == 1
    a1, b1 = rm.nn_coefficients(pullback, [1], 0)
    assert b1 == -H and a1 == Fraction(3, 2)
    assert rm.nn_coefficients(pullback, [2], 0) == (1, 0)


def test_recurrence_residuals_atomic(atomic2):
    for n in [(0, 0), (1, 0), (1, 1), (2, 1), (1, 2)]:
        for k in range(2):
            reps = rm.recurrence_residuals(atomic2, n, k)
            assert reps and all(r.passed or r.skipped for r in reps)
            assert any(r.passed for r in reps)


def test_nn_table_json(atomic2):
    tab = rm.nn_table(atomic2, [(0, 0), (1, 1)])
    js = tab.to_json()
    assert {"n", "j", "a", "b"} <= set(js[0])
    assert len(js) == 4


def test_index_validation(atomic2):
    with pytest.raises(InvalidIndex):
        rm.real_type_ii(atomic2, [1])
    with pytest.raises(InvalidIndex):
        rm.real_type_ii(atomic2, [-1, 2])
    with pytest.raises(InvalidInput):
        rm.real_type_ii(lebesgue_system(), [1])


def test_szego_polynomial_lebesgue_n2():
    reps = rm.szego_polynomial_check(lebesgue_system(), [2])
    assert {r.name for r in reps} >= {"szego_bridge.polynomial", "szego_bridge.polynomial_lowered"}
    assert all(r.passed for r in reps)


def test_szego_polynomial_geometric_n1():
    L = geometric_system()

    phi = core.phi(L, ([1], [1]))
    assert phi + phi.reflect() == LP({1: 1, 0: -1, -1: 1})
    assert all(r.passed for r in rm.szego_polynomial_check(L, [1]))


def test_szego_polynomial_symmetric_r2():
    reps = rm.szego_polynomial_check(symmetric_r2_system(), [1, 1])
    assert all(r.passed for r in reps)


def test_szego_hypothesis_violated():
    two = FunctionalSystem([from_atoms([CircleAtom(0, H), CircleAtom("minus_one", H)])])
    with pytest.raises(HypothesisViolated):
        rm.szego_polynomial_check(two, [2])


def test_geronimus_lebesgue_and_geometric():
    for L in (lebesgue_system(), geometric_system()):
        for n in range(4):
            reps = rm.geronimus_check(L, [n], 0)
            assert all(r.passed or r.skipped for r in reps)
            assert [r.name for r in reps if r.passed][:2] == ["geronimus.a", "geronimus.b"]
    a, b, _ = rm.geronimus_prediction(geometric_system(), [1], 0)
    assert (a, b) == (Fraction(3, 2), -H)
    assert rm.geronimus_prediction(geometric_system(), [0], 0)[1] == 1


def test_geronimus_symmetric_r2():
    reps = rm.geronimus_check(symmetric_r2_system(), [1, 1], 0)
    assert [r.status for r in reps][:2] == ["pass", "pass"]


def test_geronimus_skips_zero_direction():
    reps = rm.geronimus_check(symmetric_r2_system(), [1, 0], 1)
    by = {r.name: r for r in reps}
    assert by["geronimus.a"].passed
    assert by["geronimus.b"].skipped


def test_classical_geronimus():
    for L in (lebesgue_system(), geometric_system()):
        reps = rm.classical_geronimus_check(L, 4)
        assert reps and all(r.passed for r in reps)


def test_classical_requires_r1():
    with pytest.raises(InvalidInput):
        rm.classical_geronimus_check(symmetric_r2_system(), 2)


def test_classical_two_atom_window():
    L = FunctionalSystem([from_atoms([CircleAtom(0, H), CircleAtom("minus_one", H)])])
    with pytest.raises(QuasiDefiniteViolated):
        rm.classical_geronimus_check(L, 3)
    reps = rm.classical_geronimus_check(L, 3, strict=False)
    assert any(r.passed for r in reps) and any(r.skipped for r in reps)
    assert not any(r.failed for r in reps)


def test_bridge_float_path():
    L = symmetric_r2_system().to_float()
    for n in [(1, 0), (1, 1), (2, 1)]:
        for r in rm.szego_polynomial_check(L, n):
            assert not r.failed


def test_geometric_other_parameter():
    L = FunctionalSystem([geometric(Fraction(1, 3))])
    for n in range(4):
        assert all(r.passed for r in rm.szego_polynomial_check(L, [n]) if not r.skipped)
