import pytest

from thetaforms.series import Series, invert, mul
from thetaforms.theta import (EtaQuotient, euler, euler_power,
                              expand_eta_quotient, general_theta,
                              named_function)


def product_form(x, y, n):
    """Triple-product expansion (-q^x; q^{x+y}) (-q^y; q^{x+y}) (q^{x+y}; q^{x+y})."""
    step = x + y
    out = Series.one(n)
    j = 0
    while True:
        done = True
        for start in (x, y):
            e = start + j * step
            if e < n:
                out = mul(out, Series([1] + [0] * (e - 1) + [1] + [0] * (n - e - 1)))
                done = False
        e = (j + 1) * step
        if e < n:
            out = mul(out, Series([1] + [0] * (e - 1) + [-1] + [0] * (n - e - 1)))
            done = False
        if done:
            return out
        j += 1


class TestGeneralTheta:
    def test_phi(self):
        assert general_theta(1, 1, 10).coeffs == (1, 2, 0, 0, 2, 0, 0, 0, 0, 2)

    def test_psi(self):
        assert general_theta(1, 3, 11).coeffs == (1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1)

    def test_cubic_theta(self):
        assert general_theta(1, 2, 8).coeffs == (1, 1, 1, 0, 0, 1, 0, 1)

    def test_sextic_theta_support(self):
        out = general_theta(1, 5, 40)
        support = {i for i, c in enumerate(out.coeffs) if c}
        assert support == {k * (3 * k + 2) for k in range(-4, 4)
                           if 0 <= k * (3 * k + 2) < 40}

    def test_rejects_zero_pair(self):
        with pytest.raises(ValueError):
            general_theta(0, 0, 5)

    @pytest.mark.parametrize("x,y", [(1, 1), (1, 3), (1, 2), (1, 5)])
    def test_triple_product(self, x, y):
        n = 200
        assert general_theta(x, y, n) == product_form(x, y, n)

    def test_signed_arguments(self):
        # f(-q, -q^5) carries (-1)^{n^2} on exponent n(3n+2)
        n = 60
        signed = general_theta(1, 5, n, -1, -1)
        expected = [0] * n
        for k in range(-10, 11):
            e = k * (3 * k + 2)
            if 0 <= e < n:
                expected[e] += (-1) ** (k * k)
        assert signed.coeffs == tuple(expected)


class TestEuler:
    def test_small_expansion(self):
        assert euler(6).coeffs == (1, -1, -1, 0, 0, 1)

    def test_constant_coefficient(self):
        assert euler(50).coeffs[0] == 1

    def test_matches_explicit_product(self):
        n = 300
        explicit = Series.one(n)
        for j in range(1, n):
            factor = [0] * n
            factor[0] = 1
            factor[j] = -1
            explicit = mul(explicit, Series(factor))
        assert euler(n) == explicit

    def test_phi_product_formula(self):
        n = 300
        lhs = mul(named_function("phi", n),
                  mul(euler(n) ** 2, euler_power(4, n) ** 2))
        assert lhs == euler_power(2, n) ** 5


class TestNamedFunctions:
    def test_chi_decomposition(self):
        n = 300
        chi = named_function("chi", n)
        rhs = (named_function("phi", n, 4) * named_function("phi", n, 20)
               + 4 * Series.monomial(6, n) * named_function("psi", n, 8)
               * named_function("psi", n, 40))
        assert chi == rhs

    def test_u_decomposition(self):
        n = 300
        u = named_function("u", n)
        rhs = (named_function("phi", n, 3) * named_function("phi", n, 42)
               + 2 * Series.monomial(5, n) * general_theta(1, 5, n)
               * general_theta(14, 70, n))
        assert u == rhs

    def test_phi_dissection(self):
        n = 300
        phi = named_function("phi", n)
        rhs = (named_function("phi", n, 4)
               + 2 * Series.monomial(1, n) * named_function("psi", n, 8))
        assert phi == rhs

    def test_fourth_power_dissection(self):
        n = 300
        phi = named_function("phi", n)
        phin = named_function("phi", n, 1, True)
        lhs = phi ** 4 - phin ** 4
        rhs = 16 * Series.monomial(1, n) * named_function("psi", n, 2) ** 4
        assert lhs == rhs

    def test_negated_odd_power(self):
        # psi at -q^3 equals the alternate-sign base spread by 3
        from thetaforms.series import alternate_sign, compose_power
        n = 100
        direct = named_function("psi", n, 3, True)
        via_ops = compose_power(alternate_sign(named_function("psi", n)), 3)
        assert direct == via_ops

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            named_function("nope", 10)


# the two proved eta identities, as (exponent-map, theta-term) pairs
LEVEL84_QUOTIENTS = [
    ({14: 10, 4: 4, 1: 4, 28: -4, 7: -4, 2: -10},
     lambda n: named_function("psi", n) * named_function("phi", n, 7) ** 2,
     0),
    ({14: 7, 4: 6, 1: 5, 28: -2, 7: -3, 2: -13},
     lambda n: (named_function("psi", n, 2) * named_function("psi", n, 7)
                * named_function("phi", n, 7)),
     1),
    ({42: 5, 28: 2, 6: 2, 4: 4, 1: 5, 84: -2, 21: -2, 14: -1, 3: -1, 2: -12},
     lambda n: (named_function("psi", n, 3) * named_function("psi", n, 14)
                * named_function("phi", n, 21)),
     2),
    ({84: 1, 28: 1, 21: 1, 14: 1, 4: 4, 3: 2, 1: 4, 42: -1, 7: -1, 6: -1, 2: -11},
     lambda n: (named_function("psi", n, 14) * general_theta(1, 2, n)
                * general_theta(7, 35, n)),
     4),
]

LEVEL360_QUOTIENTS = [
    ({30: 10, 4: 4, 1: 4, 60: -4, 15: -4, 2: -10},
     lambda n: named_function("psi", n) * named_function("phi", n, 15) ** 2, 0),
    ({30: 2, 20: 2, 6: 5, 4: 4, 1: 5, 15: -1, 12: -2, 10: -1, 3: -2, 2: -12},
     lambda n: (named_function("psi", n, 10) * named_function("psi", n, 15)
                * named_function("phi", n, 3)), 3),
    ({60: 2, 10: 5, 6: 2, 4: 4, 1: 5, 30: -1, 20: -2, 5: -2, 3: -1, 2: -12},
     lambda n: (named_function("psi", n, 3) * named_function("psi", n, 30)
                * named_function("phi", n, 5)), 4),
    ({60: 2, 12: 2, 10: 2, 4: 4, 1: 5, 30: -1, 6: -1, 5: -1, 2: -12},
     lambda n: (named_function("psi", n, 5) * named_function("psi", n, 6)
                * named_function("psi", n, 30)), 5),
    ({90: 10, 18: 2, 4: 4, 1: 5, 180: -4, 45: -4, 9: -1, 2: -12},
     lambda n: named_function("psi", n, 9) * named_function("phi", n, 45) ** 2, 1),
    ({180: 2, 45: 2, 30: 4, 18: 2, 4: 4, 1: 5, 90: -2, 60: -2, 15: -2, 9: -1, 2: -12},
     lambda n: named_function("psi", n, 9) * general_theta(15, 75, n) ** 2, 11),
    ({90: 4, 30: 2, 9: 2, 6: 1, 4: 4, 1: 5, 180: -1, 60: -1, 45: -1, 18: -1,
      15: -1, 3: -1, 2: -12},
     lambda n: (named_function("phi", n, 45) * general_theta(3, 6, n)
                * general_theta(15, 75, n)), 5),
    ({180: 2, 45: 2, 30: 4, 9: 2, 6: 1, 4: 4, 1: 5, 90: -2, 60: -2, 18: -1,
      15: -2, 3: -1, 2: -12},
     lambda n: general_theta(3, 6, n) * general_theta(15, 75, n) ** 2, 10),
    ({30: 7, 4: 6, 1: 5, 60: -2, 15: -3, 2: -13},
     lambda n: (named_function("psi", n, 2) * named_function("psi", n, 15)
                * named_function("phi", n, 15)), 2),
    ({120: 2, 12: 5, 10: 2, 4: 4, 1: 5, 60: -1, 24: -2, 6: -2, 5: -1, 2: -12},
     lambda n: (named_function("psi", n, 5) * named_function("psi", n, 60)
                * named_function("phi", n, 6)), 8),
    ({60: 5, 24: 2, 10: 2, 4: 4, 1: 5, 120: -2, 30: -2, 12: -1, 5: -1, 2: -12},
     lambda n: (named_function("psi", n, 5) * named_function("psi", n, 12)
                * named_function("phi", n, 30)), 2),
]


class TestEtaQuotients:
    def test_requires_divisors_of_level(self):
        with pytest.raises(ValueError):
            EtaQuotient.from_dict(84, {5: 1, 1: -1})

    def test_trivial_quotient(self):
        offset, s = expand_eta_quotient(EtaQuotient.from_dict(6, {}), 8)
        assert offset == 0 and s == Series.one(8)

    def test_rejects_nonintegral_offset(self):
        with pytest.raises(ValueError):
            expand_eta_quotient(EtaQuotient.from_dict(2, {1: 1, 2: -1}), 10)

    def test_leading_unit(self):
        eq = EtaQuotient.from_dict(84, LEVEL84_QUOTIENTS[0][0])
        offset, s = expand_eta_quotient(eq, 16)
        assert offset == 0 and s.coeffs[0] == 1

    def test_q_prefactor_multiplier_series(self):
        # q^2 E(q^28) E(q^14) E(q^2)^2 / (E(q^7) E(q^4)^2 E(q)): the explicit
        # q^2 is part of the definition (the bare product is not 24-normalized,
        # so expand_eta_quotient rejects it)
        n = 100
        with pytest.raises(ValueError):
            expand_eta_quotient(
                EtaQuotient.from_dict(28, {28: 1, 14: 1, 2: 2, 7: -1, 4: -2, 1: -1}),
                n)
        num = euler_power(28, n) * euler_power(14, n) * euler_power(2, n) ** 2
        den = euler_power(7, n) * euler_power(4, n) ** 2 * euler_power(1, n)
        c_series = Series.monomial(2, n) * num * invert(den)
        assert c_series.coeffs[2] == 1 and not any(c_series.coeffs[:2])

    @pytest.mark.parametrize("index", range(len(LEVEL84_QUOTIENTS)))
    def test_level84_quotients_match_theta_terms(self, index):
        exps, theta_term, expected_offset = LEVEL84_QUOTIENTS[index]
        n = 120
        offset, s = expand_eta_quotient(EtaQuotient.from_dict(84, exps), n)
        assert offset == expected_offset
        base = named_function("psi", n) * named_function("phi", n) ** 2
        assert s * base == theta_term(n)

    @pytest.mark.parametrize("index", range(len(LEVEL360_QUOTIENTS)))
    def test_level360_quotients_match_theta_terms(self, index):
        exps, theta_term, expected_offset = LEVEL360_QUOTIENTS[index]
        n = 120
        offset, s = expand_eta_quotient(EtaQuotient.from_dict(360, exps), n)
        assert offset == expected_offset
        base = named_function("psi", n) * named_function("phi", n) ** 2
        assert s * base == theta_term(n)
