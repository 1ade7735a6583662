import itertools
from fractions import Fraction

import pytest

from conftest import nonneg_indices
from mopuc import core
from mopuc import relations as R
from mopuc.core import MultiIndexPair as MI
from mopuc.errors import InvalidInput, SingularEvaluation
from mopuc.moments import CircleAtom, FunctionalSystem, from_atoms
from mopuc.scalars import exact


def statuses(reports):
    return [r.status for r in reports]


def assert_clean(reports):
    bad = [(r.name, r.index, r.residual) for r in reports if r.failed]
    assert not bad, bad


def test_szego_n_examples(leb, geo, s2):
    reps = R.verify_szego_n(leb, ([2], [0]), 0)
    assert statuses(reps) == ["pass"] * 4
    assert_clean(R.verify_szego_n(geo, ([2], [1]), 0))
    assert statuses(R.verify_szego_n(s2, ([1, 1], [0, 0]), 0)) == ["pass"] * 4


def test_szego_m_examples(leb, geo, s2):
    assert statuses(R.verify_szego_m(leb, ([0], [2]), 0)) == ["pass"] * 4
    assert statuses(R.verify_szego_m(geo, ([1], [2]), 0)) == ["pass"] * 4
    assert statuses(R.verify_szego_m(s2, ([0, 0], [1, 1]), 1)) == ["pass"] * 4


def test_m_relations_on_symmetric_system(sym2):
    for idx in nonneg_indices(2, 3):
        if core.is_normal(sym2, idx):
            for k in range(2):
                assert_clean(R.verify_szego_m(sym2, idx, k))


def test_duality_m_vs_n(s2, r3):
    for S in (s2, r3):
        Ss = S.sharp()
        for idx in nonneg_indices(S.r, 3):
            if not core.is_normal(S, idx):
                continue
            for k in range(S.r):
                m_side = R.verify_szego_m(S, idx, k)
                n_side = R.verify_szego_n(Ss, idx.swapped(), k)
                assert statuses(m_side) == statuses(n_side), (idx, k)


def test_compatibility_examples(s2, r3):
    reps = R.verify_compatibility(s2, ([0, 0], [0, 0]), 0, 1)
    assert all(r.passed or "admissible" in r.reason for r in reps)
    assert sum(r.passed for r in reps) == 8
    assert_clean(R.verify_compatibility(r3, ([1, 1, 0], [0, 0, 0]), 0, 1))
    assert_clean(R.verify_compatibility(r3, ([1, 1, 0], [0, 0, 0]), 2, 0))


def test_compatibility_identical_functionals_skip():
    L = from_atoms([CircleAtom(0, Fraction(1, 2)), CircleAtom(1, Fraction(1, 4)), CircleAtom(2, Fraction(1, 4))])
    S = FunctionalSystem([L, L])
    reps = R.verify_compatibility(S, ([1, 0], [0, 0]), 0, 1)
    assert any(r.skipped for r in reps)
    assert_clean(reps)


def test_consequences_examples(leb, geo):
    for n in range(4):
        reps = R.verify_consequences(leb, ([n], [0]), 0)
        assert_clean(reps)
    reps = R.verify_consequences(geo, ([1], [1]), 0)
    assert_clean(reps)
    ratio = [r for r in reps if r.name.startswith("conseq.ratio")]
    assert ratio and all(r.passed for r in ratio)


def test_one_minus_alpha_beta_geometric(geo):
    lhs = 1 - core.alpha(geo, ([1], [2])) * core.beta(geo, ([2], [1]))
    rec = core.heine_coefficients(geo, ([1], [1]))
    assert rec.one_minus_ab[0] == lhs


def test_hermitian_alpha_not_unimodular(s2, r3):
    for S in (s2, r3):
        for n in itertools.product(range(2), repeat=S.r):
            for k in range(S.r):
                m = list(n)
                m[k] += 1
                idx = MI.of(n, m)
                if core.is_normal(S, idx):
                    assert core.alpha(S, idx).abs2() != 1


def test_biorthogonality(leb, geo):
    assert statuses(R.verify_biorthogonality(leb, ([1], [1]))) == ["pass", "pass"]
    assert statuses(R.verify_biorthogonality(geo, ([1], [1]))) == ["pass", "pass"]
    reps = R.verify_biorthogonality(geo, ([2], [-2]))
    assert all(r.skipped and "n = -m" in r.reason for r in reps)


def test_verifier_catches_a_wrong_coefficient(s2, monkeypatch):
    real_rho = core.rho
    monkeypatch.setattr(core, "rho", lambda S, i, j: real_rho(S, i, j) + 1)
    reps = R.verify_szego_n(s2, ([1, 1], [0, 0]), 0)
    assert any(r.failed for r in reps)
    failed = next(r for r in reps if r.failed)
    assert failed.residual is not None


def test_report_json(s2):
    rep = R.verify_szego_n(s2, ([1, 1], [0, 0]), 0)[0]
    js = rep.to_json()
    assert js["status"] == "pass" and js["identity"] == rep.name


def test_enumerate_paths():
    assert len(R.enumerate_paths([0], [3])) == 1
    assert len(R.enumerate_paths([0, 0], [1, 1])) == 2
    assert len(R.enumerate_paths([0, 0], [2, 1])) == 3
    p = R.enumerate_paths([1, 0], [0, 1])
    assert [x.steps[0] for x in p] == [(-1, 0)] * len(p)
    with pytest.raises(InvalidInput):
        R.enumerate_paths([0, 0], [-1, 0])


def test_path_validation():
    with pytest.raises(InvalidInput):
        R.IndexPath((0,), ((1,), (2,)))
    with pytest.raises(InvalidInput):
        R.IndexPath((0,), ((0,), (2,)))


def test_random_points_deterministic():
    a = R.random_points(8, 3)
    assert a == R.random_points(8, 3)
    assert all(z != 0 and x != 0 and z != x for z, x in a)
    assert all(abs(z.real.numerator) <= 7 and z.real.denominator <= 7 for z, _ in a)


def test_cd_base_and_classical(leb, s2):
    pts = R.random_points(8, 0)
    for path in [R.enumerate_paths([0], [1])[0], R.enumerate_paths([0], [2])[0]]:
        for z, x in pts:
            assert statuses(R.christoffel_darboux(leb, path, z, x)) == ["pass", "pass"]
    for path in R.enumerate_paths([0, 0], [1, 1]):
        for z, x in pts:
            assert_clean(R.christoffel_darboux(s2, path, z, x))


def test_cd_rejects_zero(leb):
    path = R.enumerate_paths([0], [1])[0]
    with pytest.raises(SingularEvaluation):
        R.christoffel_darboux(leb, path, exact(0), exact(1))


def test_cd_nonzero_m(r3):
    pts = R.random_points(3, 5)
    for path in R.enumerate_paths([1, 0, 0], [0, 1, 1]):
        for z, x in pts:
            assert_clean(R.christoffel_darboux(r3, path, z, x))


def test_negative_index_sweep(s2):
    for n in itertools.product(range(-2, 3), repeat=2):
        for m in itertools.product(range(-2, 3), repeat=2):
            idx = MI.of(n, m)
            if idx.in_domain() and idx.size <= 3 and core.is_normal(s2, idx):
                assert_clean(R.verify_index(s2, idx))
