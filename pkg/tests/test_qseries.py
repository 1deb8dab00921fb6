"""Core series arithmetic, truncation bookkeeping and the three oracles."""

import random
from fractions import Fraction

import pytest

from replicaq.qseries import (QSeries, GridError, TruncationError, eta,
                              eisenstein_e4, delta, delta_int_coeffs, j_oracle,
                              j_int_coeffs, euler_phi_int_coeffs,
                              qseries_to_json, qseries_from_json)


def random_series(rng, trunc=12):
    lead = rng.randint(-2, 1)
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4))
              for _ in range(trunc - lead)]
    return QSeries(lead, 1, coeffs, trunc)


class TestConstruction:
    def test_leading_zeros_trimmed(self):
        f = QSeries(-2, 1, [0, 0, 5], 10)
        assert f.lead_exp == 0 and f.coeffs == [5]

    def test_coeffs_at_or_past_trunc_dropped(self):
        f = QSeries(0, 1, [1, 2, 3, 4], 3)
        assert f.coeffs == [1, 2, 3]
        with pytest.raises(TruncationError):
            f.coeff(3)

    def test_grid_denominator_must_divide_24(self):
        QSeries(Fraction(1, 24), Fraction(1, 8), [1], 2)
        with pytest.raises(GridError):
            QSeries(Fraction(1, 5), 1, [1], 2)

    def test_extended_grid_allowed_when_flagged(self):
        f = QSeries(Fraction(1, 5), 1, [1], 2, extended=True)
        assert f.coeff(Fraction(1, 5)) == 1

    def test_unknown_is_not_zero(self):
        f = QSeries(0, 1, [1], 5)
        assert f.coeff(4) == 0
        with pytest.raises(TruncationError):
            f.coeff(5)
        with pytest.raises(TruncationError):
            f.coeff(7)


class TestArithmetic:
    def test_ring_axioms_random(self):
        rng = random.Random(7)
        for _ in range(25):
            a, b, c = (random_series(rng) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a

    def test_add_trunc_is_min(self):
        a = QSeries(0, 1, [1], 10)
        b = QSeries(0, 1, [1], 6)
        assert (a + b).trunc == 6

    def test_mul_trunc_propagation(self):
        a = QSeries(-1, 1, [1], 10)  # q^-1, known to q^10
        b = QSeries(2, 1, [1], 6)
        assert (a * b).trunc == min(Fraction(10) + 2, Fraction(6) + (-1))

    def test_invert_roundtrip_random_units(self):
        rng = random.Random(11)
        for _ in range(100):
            f = random_series(rng)
            if f.is_zero or f.coeffs[0] == 0:
                continue
            g = f.invert()
            prod = f * g
            assert prod.coeff(0) == 1
            for e in range(1, int(prod.trunc)):
                assert prod.coeff(e) == 0

    def test_pow(self):
        f = QSeries(-1, 1, [1, 0, 196884], 10)
        assert f ** 0 == QSeries(0, 1, [1], 11)
        assert f ** 3 == f * f * f

    def test_substitute(self):
        f = QSeries(-1, 1, [1, 0, 5], 4)
        g = f.substitute(3)
        assert g.coeff(-3) == 1 and g.coeff(3) == 5 and g.trunc == 12

    def test_truncation_soundness_under_ops(self):
        # reported coefficients are independent of the working truncation
        lo, hi = j_oracle(20), j_oracle(30)
        prod_lo, prod_hi = lo * lo - 2 * lo, hi * hi - 2 * hi
        for e in range(-2, int(prod_lo.trunc)):
            assert prod_lo.coeff(e) == prod_hi.coeff(e)


class TestOracles:
    def test_eta_pentagonal_leading_terms(self):
        f = eta(6)
        base = Fraction(1, 24)
        assert f.coeff(base) == 1
        assert f.coeff(base + 1) == -1
        assert f.coeff(base + 2) == -1
        assert f.coeff(base + 5) == 1
        assert f.coeff(base + 3) == 0

    def test_euler_phi_is_eta_without_prefactor(self):
        # brute-force product expansion oracle
        n = 40
        prod = [0] * n
        prod[0] = 1
        for k in range(1, n):
            new = prod[:]
            for i in range(n - k):
                new[i + k] -= prod[i]
            prod = new
        assert euler_phi_int_coeffs(n) == prod

    def test_delta_tau_values(self):
        tau = delta_int_coeffs(7)
        assert tau[:6] == [1, -24, 252, -1472, 4830, -6048]

    def test_delta_is_eta_24(self):
        d = delta(12)
        e = eta(Fraction(12) + Fraction(1, 24)) ** 24
        assert d == e

    def test_e4_leading(self):
        e4 = eisenstein_e4(4)
        assert e4.coeff(0) == 1 and e4.coeff(1) == 240 and e4.coeff(2) == 2160

    def test_j_first_coefficients(self):
        J = j_oracle(5)
        assert J.coeff(-1) == 1 and J.coeff(0) == 0
        assert [J.coeff(k) for k in range(1, 5)] == [
            196884, 21493760, 864299970, 20245856256]

    def test_j_small_coefficients_positive_integers(self):
        J = j_oracle(25)
        for k in range(1, 25):
            c = J.coeff(k)
            assert c.denominator == 1 and c > 0

    def test_j_int_coeffs_agrees(self):
        J = j_oracle(30)
        ints = j_int_coeffs(30)
        assert ints[0] == 1 and ints[1] == 0
        assert all(J.coeff(k) == ints[k + 1] for k in range(1, 29))


class TestJson:
    def test_roundtrip(self):
        f = eta(3)
        doc = qseries_to_json(f)
        assert doc["lead_exp"] == "1/24"
        assert qseries_from_json(doc) == f

    def test_decimal_strings(self):
        doc = qseries_to_json(j_oracle(3))
        assert "196884/1" in doc["coeffs"]
