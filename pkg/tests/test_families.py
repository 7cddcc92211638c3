import random
from collections import Counter
from fractions import Fraction

import pytest
import sympy as sp

from bvfourfold.errors import InvalidInput
from bvfourfold.exactmath import BinaryForm, ProjPoint1, evaluate, squarefree_stratify, vanishing_order
from bvfourfold.families import (
    PARAMETER_COUNT_NOTE,
    I5FamilyParams,
    TorsionFamilyParams,
    base_change,
    build_i5_family,
    build_torsion_family,
    forced_b_coefficients,
    i5_family_forms,
    rational_5511_discriminant,
    rational_5511_model,
    verify_configuration,
)
from bvfourfold.weierstrass import fiber_inventory, genus_trisection, involution_invariants_s2
from conftest import S, T, from_sympy, generic_model, rand_rational, to_sympy

ORIGIN = ProjPoint1(0, 1)

# Frozen from an independent sympy substitution of (mu, lambda) = (2t^2 + s^2, t^2 + s^2/3)
TORSION_2_3_A = ["-31/243", "0", "-185/162", "0", "-205/54", "0", "-50/9", "0", "-145/48"]
TORSION_2_3_B = [
    "1475/78732", "0", "1115/4374", "0", "350/243", "0", "25235/5832", "0", "175/24", "0", "353/54", "0", "2105/864",
]


def random_i5_params(rng):
    return I5FamilyParams([rand_rational(rng) for _ in range(7)], [rand_rational(rng) for _ in range(8)])


class TestI5Family:
    def test_forced_coefficients_example(self):
        assert forced_b_coefficients([12, 0, 0, 0]) == (2, -12, 12, 8, 12)

    def test_forced_coefficients_symbolic(self):
        """Orders 0..4 of Delta at t = 0 vanish identically in a1..a7, b5..b12."""
        a = sp.symbols("a1:8")
        b = sp.symbols("b5:13")
        a1, a2, a3, a4 = a[:4]
        b_low = [
            2,
            -a1,
            -a2 + a1**2 / 12,
            -a3 + a2 * a1 / 6 + a1**3 / 216,
            -a4 + a1**4 / 1728 + a3 * a1 / 6 + a2**2 / 12 + a2 * a1**2 / 72,
        ]
        A = -3 + sum(a[i - 1] * T**i for i in range(1, 8)) + T**8
        B = sum(c * T**i for i, c in enumerate(b_low)) + sum(b[i - 5] * T**i for i in range(5, 13))
        delta = sp.expand(4 * A**3 + 27 * B**2)
        poly = sp.Poly(delta, T)
        for k in range(5):
            assert sp.simplify(poly.coeff_monomial(T**k)) == 0
        assert poly.coeff_monomial(T**5) != 0

    def test_forced_matches_symbolic_formula_numerically(self):
        rng = random.Random(1)
        for _ in range(20):
            a = [rand_rational(rng) for _ in range(4)]
            a1, a2, a3, a4 = a
            expected = (
                2,
                -a1,
                -a2 + a1**2 / 12,
                -a3 + a2 * a1 / 6 + a1**3 / 216,
                -a4 + a1**4 / 1728 + a3 * a1 / 6 + a2**2 / 12 + a2 * a1**2 / 72,
            )
            assert forced_b_coefficients(a) == expected

    def test_zero_parameters_give_i8(self):
        W = build_i5_family(I5FamilyParams.zero())
        assert W.A == BinaryForm(8, [-3, 0, 0, 0, 0, 0, 0, 0, 1])
        assert W.B == BinaryForm(12, [2] + [0] * 12)
        assert vanishing_order(W.delta, ORIGIN) == 8
        at_origin = next(st for st in W.strata if evaluate(st.factor, ORIGIN) == 0)
        assert at_origin.ktype.name == "I8"

    def test_random_parameters(self):
        rng = random.Random(2)
        for _ in range(100):
            W = build_i5_family(random_i5_params(rng))
            assert evaluate(W.A, ORIGIN) == -3 and evaluate(W.B, ORIGIN) == 2
            assert vanishing_order(W.delta, ORIGIN) == 5
            at_origin = next(st for st in W.strata if evaluate(st.factor, ORIGIN) == 0)
            assert at_origin.ktype.name == "I5" and at_origin.factor.degree == 1

    def test_generic_member_has_genus_8(self):
        W = build_i5_family(random_i5_params(random.Random(3)))
        assert fiber_inventory(W).type_counts() == Counter({"I5": 1, "I1": 19})
        assert genus_trisection(W) == 8
        assert involution_invariants_s2(W) == (4, 2)
        assert verify_configuration(W, 1)

    def test_params_validation(self):
        with pytest.raises(InvalidInput):
            I5FamilyParams([0] * 6, [0] * 8)
        with pytest.raises(InvalidInput):
            I5FamilyParams.from_json({"a": [0] * 7})
        p = I5FamilyParams.from_json({"a": ["1/2"] * 7, "b": ["-3"] * 8})
        assert I5FamilyParams.from_json(p.to_json()) == p

    def test_parameter_note(self):
        assert "15" in PARAMETER_COUNT_NOTE and "14" in PARAMETER_COUNT_NOTE

    def test_form_degrees(self):
        A, B = i5_family_forms(I5FamilyParams.zero())
        assert (A.degree, B.degree) == (8, 12)


class TestRational5511:
    def test_transcription(self):
        A, B = rational_5511_model()
        F = Fraction
        assert A.coeffs == (F(-1, 48), F(1, 4), F(-7, 24), F(-1, 4), F(-1, 48))
        assert B.coeffs == (F(1, 864), F(-1, 48), F(25, 288), 0, F(25, 288), F(1, 48), F(1, 864))
        assert A(1, 0) == F(-1, 48)
        assert B(1, 0) == F(1, 864)

    def test_discriminant(self):
        delta = rational_5511_discriminant()
        mu, lam = sp.symbols("mu lam")
        oracle = -(lam**5) * mu**5 * (lam**2 - 11 * lam * mu - mu**2) / 16
        assert delta == from_sympy(oracle.subs({mu: T, lam: S}, simultaneous=True), 12)
        strata = squarefree_stratify(delta)
        assert sorted((f.degree, k) for f, k in strata) == [(1, 5), (1, 5), (2, 1)]


class TestTorsionFamily:
    def test_frozen_model(self):
        W = build_torsion_family(TorsionFamilyParams(2, 3))
        assert W.to_json() == {"A": {"degree": 8, "coeffs": TORSION_2_3_A}, "B": {"degree": 12, "coeffs": TORSION_2_3_B}}

    def test_inventory(self):
        W = build_torsion_family(TorsionFamilyParams(2, 3))
        inv = fiber_inventory(W)
        assert inv.type_counts() == Counter({"I5": 4, "I1": 4})
        assert inv.euler_total == 24 == 4 * 5 + 4 * 1
        assert genus_trisection(W) == 2
        assert verify_configuration(W, 4)
        assert not verify_configuration(W, 3)
        assert involution_invariants_s2(W) == (10, 8)

    def test_discriminant_is_pullback(self):
        rng = random.Random(4)
        for _ in range(5):
            p = TorsionFamilyParams(rand_rational(rng) or 1, rand_rational(rng) or 2)
            if p.p1 == p.p2:
                continue
            W = build_torsion_family(p)
            mu, lam = base_change(p)
            pulled = rational_5511_discriminant().substitute(mu, lam)
            ratio = {x / y for x, y in zip(W.delta.coeffs, pulled.coeffs) if y}
            assert len(ratio) == 1
            assert all((x == 0) == (y == 0) for x, y in zip(W.delta.coeffs, pulled.coeffs))

    def test_against_sympy_substitution(self):
        rng = random.Random(5)
        mu, lam = sp.symbols("mu lam")
        A0, B0 = (to_sympy(f).subs({T: mu, S: lam}, simultaneous=True) for f in rational_5511_model())
        for _ in range(3):
            p1, p2 = rand_rational(rng) or 1, rand_rational(rng) or 5
            if p1 == p2:
                continue
            W = build_torsion_family(TorsionFamilyParams(p1, p2))
            sub = {mu: sp.Rational(p1.numerator, p1.denominator) * T**2 + S**2,
                   lam: T**2 + S**2 / sp.Rational(p2.numerator, p2.denominator)}
            assert W.A == from_sympy(A0.subs(sub, simultaneous=True), 8)
            assert W.B == from_sympy(B0.subs(sub, simultaneous=True), 12)

    def test_rejections(self):
        with pytest.raises(InvalidInput):
            TorsionFamilyParams(1, 0)
        with pytest.raises(InvalidInput, match="singular fiber"):
            build_torsion_family(TorsionFamilyParams(0, 3))
        with pytest.raises(InvalidInput):
            build_torsion_family(TorsionFamilyParams(3, 3))
        with pytest.raises(InvalidInput):
            TorsionFamilyParams.from_json({"p1": "1"})

    def test_verify_configuration(self):
        W = generic_model(random.Random(6))
        assert verify_configuration(W, 0)
        with pytest.raises(InvalidInput):
            verify_configuration(W, 5)
