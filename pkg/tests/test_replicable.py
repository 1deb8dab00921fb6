"""Replicability, replicates, reducing pairs and basis reconstruction."""

from fractions import Fraction
from math import gcd, lcm

import pytest

from replicaq.qseries import QSeries, j_oracle, j_int_coeffs
from replicaq.grunsky import GrunskyCalculator, grunsky_by_recursion
from replicaq.replicable import (NORTON_BASIS, IRREDUCIBLE_GRADES,
                                 ReplicationFamily, is_replicable, replicate,
                                 inverse_identity_check, mod_p_congruence,
                                 find_reducing_pair, exhaustive_reducing_pair,
                                 reconstruct_from_basis,
                                 odd_level_economy_experiment)
from replicaq.functions import fiction_series, tb2_family


def j_to(trunc):
    return QSeries(-1, 1, j_int_coeffs(trunc + 2), trunc)


class TestIsReplicable:
    def test_j_grade_24(self):
        J = j_to(60)
        a = [J.coeff(k) for k in range(1, 60)]
        rep = is_replicable(grunsky_by_recursion(a, 24))
        assert rep.ok and rep.counterexample is None and rep.checked_pairs > 0

    def test_perturbations_falsify(self):
        J = j_to(60)
        base = [J.coeff(k) for k in range(1, 60)]
        for i in range(6):
            a = base[:]
            a[i] += 1
            rep = is_replicable(grunsky_by_recursion(a, 24))
            assert not rep.ok, f"perturbing a_{i + 1} went undetected"
            assert rep.counterexample is not None

    def test_fiction_replicable(self):
        f = fiction_series(1, 40)
        a = [f.coeff(k) for k in range(1, 40)]
        assert is_replicable(grunsky_by_recursion(a, 16)).ok


class TestReplicate:
    def test_k1_identity(self):
        J = j_to(40)
        assert replicate(J, 1, 20) == J.truncate(20)

    def test_j_self_replicate(self):
        J = j_to(600)
        for k in (2, 3, 4):
            assert replicate(J, k, 30) == J.truncate(30)

    def test_prime_case_formula(self):
        # h_n^(p) = p h_{pn,p} - p a_{p^2 n}
        J = j_to(80)
        calc = GrunskyCalculator(lambda i: J.coeff(i))
        f2 = replicate(J, 2, 4)
        for n in (1, 2, 3):
            assert f2.coeff(n) == 2 * calc.h(2 * n, 2) - 2 * J.coeff(4 * n)

    def test_insufficient_truncation(self):
        from replicaq.qseries import TruncationError
        with pytest.raises(TruncationError):
            replicate(j_to(20), 3, 10)


class TestInverseIdentity:
    def test_j_family(self):
        J = j_to(80)
        fam = ReplicationFamily(J, {d: J for d in (2, 3, 4)})
        a = [J.coeff(k) for k in range(1, 80)]
        t = grunsky_by_recursion(a, 9)
        assert inverse_identity_check(fam, t, 4)

    def test_tampered_family(self):
        J = j_to(80)
        wrong = J + QSeries(2, 1, [1], 80)
        fam = ReplicationFamily(J, {2: wrong, 3: J, 4: J})
        a = [J.coeff(k) for k in range(1, 80)]
        t = grunsky_by_recursion(a, 9)
        assert not inverse_identity_check(fam, t, 4)

    def test_gcd_one_is_plain_coefficient(self):
        J = j_to(30)
        fam = ReplicationFamily(J, {})
        a = [J.coeff(k) for k in range(1, 30)]
        t = grunsky_by_recursion(a, 8)
        assert inverse_identity_check(fam, t, 1)


class TestModPCongruence:
    def test_equal_series(self):
        J = j_to(30)
        assert mod_p_congruence(J, J, 5, 25)

    def test_2b_family(self):
        fam = tb2_family(55)
        assert mod_p_congruence(fam.base, fam.power(2), 2, 50)

    def test_violation(self):
        J = j_to(30)
        assert not mod_p_congruence(J, J + QSeries(1, 1, [1], 30), 2, 10)


class TestReducingPairs:
    def test_known_cases(self):
        p16 = find_reducing_pair(16)
        assert (p16.from_pair, p16.to_pair) == ((1, 15), (3, 5))
        p40 = find_reducing_pair(40)
        assert (p40.from_pair, p40.to_pair) == ((1, 39), (3, 13))

    def test_irreducible_grades(self):
        got = tuple(N for N in range(2, 25) if find_reducing_pair(N) is None)
        assert got == (2, 3, 4, 5, 6, 8, 9, 10, 12, 18, 20, 24)
        assert got == IRREDUCIBLE_GRADES
        assert NORTON_BASIS == tuple(N - 1 for N in got)

    def test_agrees_with_exhaustive_oracle_to_500(self):
        for N in range(2, 501):
            mine = find_reducing_pair(N)
            oracle = exhaustive_reducing_pair(N)
            assert (mine is None) == (oracle is None), N
            if mine is not None:
                r, s = mine.from_pair
                rp, sp = mine.to_pair
                assert r + s == N and rp + sp < N
                assert gcd(r, s) == gcd(rp, sp) and lcm(r, s) == lcm(rp, sp)


class TestReconstruction:
    def test_j_from_basis_50_terms(self):
        J = j_to(60)
        basis = {k: J.coeff(k) for k in NORTON_BASIS}
        rebuilt = reconstruct_from_basis(basis, 50)
        for k in range(-1, 50):
            assert rebuilt.coeff(k) == J.coeff(k)

    def test_fiction_from_basis(self):
        basis = {k: Fraction(1 if k == 1 else 0) for k in NORTON_BASIS}
        rebuilt = reconstruct_from_basis(basis, 20)
        assert rebuilt == fiction_series(1, 20)

    def test_missing_value_rejected(self):
        with pytest.raises(ValueError):
            reconstruct_from_basis({1: Fraction(196884)}, 10)

    def test_grade_7_descent_matches_a6(self):
        J = j_to(60)
        basis = {k: J.coeff(k) for k in NORTON_BASIS}
        rebuilt = reconstruct_from_basis(basis, 8)
        assert rebuilt.coeff(6) == J.coeff(6)
        # and the descent value is h_{6,1} = h_{3,2} + corrections
        calc = GrunskyCalculator(lambda i: J.coeff(i))
        assert calc.h(6, 1) == J.coeff(6)

    def test_odd_level_experiment_reports_not_raises(self):
        J = j_to(40)
        basis = {k: J.coeff(k) for k in NORTON_BASIS}
        result = odd_level_economy_experiment(basis, 30)
        assert isinstance(result, dict) and "succeeded" in result
