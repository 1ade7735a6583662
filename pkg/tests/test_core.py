import itertools
from fractions import Fraction

import pytest

import oracle
from conftest import nonneg_indices, orthogonality_residuals, support_ok
from mopuc import core
from mopuc.core import MultiIndexPair as MI
from mopuc.errors import DivisionByZero, IndexClash, InvalidIndex, NotNormal
from mopuc.laurent import LaurentPolynomial as LP
from mopuc.moments import CircleAtom, FunctionalSystem, from_atoms, from_moment_table, lebesgue
from mopuc.scalars import GaussianRational, I

H = Fraction(1, 2)


def test_index_domain():
    i = MI.of([1, -1], [0, 2])
    assert i.abs_n == 0 and i.abs_m == 2 and i.in_domain()
    with pytest.raises(InvalidIndex):
        MI.of([-2], [1]).check()
    assert MI.of([2, -1], [-2, 1]).is_boundary()


def test_build_T_examples(leb, s2):
    assert core.build_T(leb, ([1], [0])) == [[1]]
    assert core.build_T(leb, ([2], [-2])) == [[1]]
    T = core.build_T(s2, ([1, 1], [0, 0]))
    assert T == [[1, GaussianRational(H, H)], [1, GaussianRational(-H, -H)]]


def test_build_T_entry_pattern(r3):
    idx = MI.of([1, 0, 2], [1, 1, 0])
    T = core.build_T(r3, idx)
    assert len(T) == idx.size and all(len(row) == idx.size for row in T)
    row = 0
    for j in range(3):
        for p in range(idx.n[j] + idx.m[j]):
            for q in range(idx.size):
                assert T[row][q] == r3[j].moment(idx.abs_m - idx.m[j] + p - q)
            row += 1


def test_build_T_rejects_bad_index(leb):
    with pytest.raises(InvalidIndex):
        core.build_T(leb, ([0], [-1]))


def test_normality_examples(leb, s2):
    for n in range(-3, 4):
        for m in range(-n, 5 - n):
            assert core.is_normal(leb, ([n], [m]))
    assert core.det_T(s2, ([1, 1], [0, 0])) == GaussianRational(-1, -1)
    two_atoms = FunctionalSystem([from_atoms([CircleAtom(0, H), CircleAtom(1, H)])])
    assert core.is_normal(two_atoms, ([2], [0]))
    assert not core.is_normal(two_atoms, ([2], [1]))
    assert not core.is_normal(two_atoms, ([3], [0]))


def test_type_ii_examples(leb, geo):
    assert core.phi(leb, ([2], [1])) == LP.monomial(2)
    assert core.alpha(leb, ([2], [1])) == 0
    assert core.phi(geo, ([1], [1])) == LP({1: 1, 0: -H})
    assert core.alpha(geo, ([1], [1])) == 0
    assert core.phi(geo, ([0], [1])) == LP({0: 1, -1: -H})
    assert core.alpha(geo, ([0], [1])) == -H


def test_type_ii_star_examples(leb, geo):
    assert core.phi_star(leb, ([2], [1])) == LP.monomial(-1)
    assert core.beta(leb, ([2], [1])) == 0
    assert core.phi_star(geo, ([1], [1])) == LP({-1: 1, 0: -H})
    assert core.beta(geo, ([1], [1])) == 0


def test_type_i_examples(leb, geo, s2):
    assert core.xi(leb, ([1], [1]))[0] == LP.monomial(-1)
    assert core.xi(geo, ([1], [1]))[0] == LP({-1: Fraction(4, 3), 0: Fraction(-2, 3)})
    assert core.xi_star(geo, ([1], [1]))[0] == LP({1: Fraction(4, 3), 0: Fraction(-2, 3)})
    # the defining conditions at Lebesgue (1;1) force Xi* = z
    assert core.xi_star(leb, ([1], [1]))[0] == LP.monomial(1)
    for S, idx in [(leb, ([2], [-2])), (s2, ([1, -1], [-1, 1]))]:
        assert core.xi(S, idx).is_zero() and core.xi_star(S, idx).is_zero()


def test_boundary_convention(s2):
    idx = MI.of([2, -1], [-2, 1])
    assert core.phi(s2, idx) == LP.monomial(1)
    assert core.phi_star(s2, idx) == LP.monomial(1)
    assert core.alpha(s2, idx) == 1 and core.beta(s2, idx) == 1
    assert core.det_T(s2, idx) == 1


def test_not_normal_raises():
    two_atoms = FunctionalSystem([from_atoms([CircleAtom(0, H), CircleAtom(1, H)])])
    with pytest.raises(NotNormal):
        core.type_ii(two_atoms, ([3], [0]))
    res = core.type_ii(two_atoms, ([3], [0]), strict=False)
    assert not res.normal and res.polynomial is None and res.det_T == 0


def test_index_length_mismatch(leb):
    with pytest.raises(InvalidIndex):
        core.type_ii(leb, ([1, 0], [0, 0]))


@pytest.mark.parametrize("name", ["geo", "s2"])
def test_families_match_sympy_oracle(name, request):
    S = request.getfixturevalue(name)
    Ls = [oracle.geometric("1/2")] if name == "geo" else oracle.s2()
    for idx in nonneg_indices(S.r, 3):
        ref = oracle.phi(Ls, idx.n, idx.m)
        assert (ref is not None) == core.is_normal(S, idx)
        if ref is None:
            continue
        assert oracle.same_poly(core.phi(S, idx), ref)
        assert oracle.same_poly(core.phi_star(S, idx), oracle.phi_star(Ls, idx.n, idx.m))
        for lib, ref in zip(core.xi(S, idx), oracle.xi(Ls, idx.n, idx.m)):
            assert oracle.same_poly(lib, ref)
        for lib, ref in zip(core.xi_star(S, idx), oracle.xi_star(Ls, idx.n, idx.m)):
            assert oracle.same_poly(lib, ref)


def test_negative_components_satisfy_conditions(s2, r3):
    for S in (s2, r3):
        for n in itertools.product(range(-2, 3), repeat=S.r):
            for m in itertools.product(range(-2, 3), repeat=S.r):
                idx = MI.of(n, m)
                if not idx.in_domain() or idx.is_boundary() or idx.size > 4 or not core.is_normal(S, idx):
                    continue
                for fam, get in [("phi", core.phi), ("phi_star", core.phi_star), ("xi", core.xi), ("xi_star", core.xi_star)]:
                    P = get(S, idx)
                    assert support_ok(idx, fam, P)
                    for label, value, target in orthogonality_residuals(S, idx, fam, P):
                        assert value == target, (idx, fam, label)


def test_reversal_symmetry(s2, r3):
    for S in (s2, r3):
        Ss = S.sharp()
        for idx in nonneg_indices(S.r, 3):
            sw = idx.swapped()
            if not core.is_normal(S, sw):
                continue
            assert core.phi(Ss, idx) == core.phi_star(S, sw).sharp()
            assert core.alpha(Ss, idx) == core.beta(S, sw).conjugate()


def test_hermitian_reversal(s2):
    assert s2.hermitian
    for idx in nonneg_indices(2, 3):
        if core.is_normal(s2, idx):
            assert core.phi(s2, idx).sharp() == core.phi_star(s2, idx.swapped())


def test_symmetric_identities(sym2):
    for idx in nonneg_indices(2, 3):
        if not (core.is_normal(sym2, idx) and core.is_normal(sym2, idx.swapped())):
            continue
        sw = idx.swapped()
        assert core.phi_star(sym2, idx) == core.phi(sym2, sw).reflect()
        assert core.alpha(sym2, idx) == core.beta(sym2, sw)
        for j in range(2):
            try:
                assert core.rho(sym2, idx, j) == core.sigma(sym2, sw, j)
            except (NotNormal, DivisionByZero):
                pass
        for k, l in itertools.permutations(range(2)):
            try:
                assert core.gamma(sym2, idx, k, l) == core.eta(sym2, sw, k, l)
            except NotNormal:
                pass


def test_rho_sigma_examples(leb, geo):
    assert core.rho(leb, ([1], [0]), 0) == 1
    assert core.sigma(leb, ([0], [1]), 0) == 1
    assert core.rho(geo, ([2], [0]), 0) == 1
    assert core.rho(geo, ([1], [0]), 0) == Fraction(3, 4)


def test_rho_out_of_domain_is_zero(geo):
    assert core.rho(geo, ([0], [0]), 0) == 0
    assert core.sigma(geo, ([0], [0]), 0) == 0


def test_hermitian_rho_sigma(s2):
    for idx in nonneg_indices(2, 3):
        sw = idx.swapped()
        for j in range(2):
            try:
                s, r = core.sigma(s2, idx, j), core.rho(s2, sw, j)
            except (NotNormal, DivisionByZero):
                continue
            assert s == r.conjugate()


def test_gamma_eta_examples(s2):
    z = MI.of([0, 0], [0, 0])
    assert core.gamma(s2, z, 0, 1) == GaussianRational(-1, -1)
    assert core.gamma(s2, z, 1, 0) == GaussianRational(1, 1)
    assert core.eta(s2, z, 0, 1) == GaussianRational(-1, 1)
    assert core.gamma(s2, z, 0, 1) == core.eta(s2, z, 0, 1).conjugate()


def test_gamma_clash(s2):
    with pytest.raises(IndexClash):
        core.gamma(s2, ([0, 0], [0, 0]), 1, 1)
    with pytest.raises(IndexClash):
        core.eta(s2, ([0, 0], [0, 0]), 0, 0)


def test_gamma_identical_functionals_degenerate():
    L = from_atoms([CircleAtom(0, H), CircleAtom(1, Fraction(1, 4)), CircleAtom(2, Fraction(1, 4))])
    S = FunctionalSystem([L, L])
    z = MI.of([0, 0], [0, 0])
    assert not core.is_normal(S, ([1, 1], [0, 0]))
    assert core.gamma(S, z, 0, 1) == 0


def test_kappa_ell(leb, geo, s2):
    assert core.kappa_ell(leb, ([0], [0]), 0) == (1, 1)
    kappa, _ = core.kappa_ell(geo, ([1], [0]), 0)
    assert kappa == Fraction(4, 3)
    assert core.xi(geo, ([2], [0]))[0].coeff(-2) == kappa
    for idx in nonneg_indices(2, 2):
        for j in range(2):
            try:
                kappa, ell = core.kappa_ell(s2, idx, j)
            except (NotNormal, DivisionByZero):
                continue
            up_n, up_m = idx.dn(j), idx.dm(j)
            assert core.xi(s2, up_n)[j].coeff(-up_n.n[j]) == kappa
            assert core.xi_star(s2, up_m)[j].coeff(up_m.m[j]) == ell


def test_kappa_zero_denominator():
    two_atoms = FunctionalSystem([from_atoms([CircleAtom(0, H), CircleAtom(1, H)])])
    with pytest.raises(DivisionByZero):
        core.kappa_ell(two_atoms, ([2], [0]), 0)


def test_heine_examples(leb, geo, s2):
    assert core.heine_type_ii(leb, ([2], [0])) == LP.monomial(2)
    assert core.heine_type_ii(geo, ([1], [1])) == LP({1: 1, 0: -H})
    assert core.heine_type_ii(s2, ([1, 1], [0, 0])) == core.phi(s2, ([1, 1], [0, 0]))
    assert core.heine_type_ii_star(geo, ([1], [1])) == core.phi_star(geo, ([1], [1]))


def test_heine_coefficient_examples(leb, geo):
    rec = core.heine_coefficients(leb, ([2], [1]))
    assert rec.alpha == 0 and rec.beta == 0 and rec.rho[0] == 1 and rec.sigma[0] == 1
    assert core.heine_coefficients(geo, ([1], [0])).alpha == -H


def test_heine_boundary_stays_exact(leb, s2):
    for S, idx in [(leb, ([0], [0])), (s2, ([0, 0], [0, 0])), (leb, ([-2], [2]))]:
        rec = core.heine_coefficients(S, idx)
        assert isinstance(rec.alpha, GaussianRational) and rec.alpha == core.alpha(S, idx) == 1
        assert isinstance(rec.beta, GaussianRational) and rec.beta == 1
    assert core.heine_coefficients(leb.to_float(), ([0], [0])).alpha == 1


def test_heine_not_normal():
    two_atoms = FunctionalSystem([from_atoms([CircleAtom(0, H), CircleAtom(1, H)])])
    with pytest.raises(NotNormal):
        core.heine_type_ii(two_atoms, ([3], [0]))


def test_complex_table_functional():
    L = from_moment_table({0: 1, 1: I, -1: Fraction(1, 3)}, "zero")
    S = FunctionalSystem([L, lebesgue()])
    idx = MI.of([1, 1], [1, 0])
    P = core.phi(S, idx)
    for label, value, target in orthogonality_residuals(S, idx, "phi", P):
        assert value == target


def test_float_path_refuses_singular():
    two_atoms = FunctionalSystem([from_atoms([CircleAtom(0, H), CircleAtom(1, H)])]).to_float()
    assert core.is_normal(two_atoms, ([2], [0]))
    assert not core.is_normal(two_atoms, ([3], [0]))
    with pytest.raises(NotNormal):
        core.phi(two_atoms, ([3], [0]))


def test_solve_result_json(geo):
    js = core.type_ii(geo, ([1], [1])).to_json()
    assert js["normal"] is True
    assert js["polynomial"] == {"0": {"re": "-1/2", "im": "0/1"}, "1": {"re": "1/1", "im": "0/1"}}
