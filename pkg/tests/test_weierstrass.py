import random
from collections import Counter

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from bvfourfold.errors import DegenerateModel, InvalidInput, InvariantViolation, NonMinimalModel, UnsupportedConfiguration
from bvfourfold.exactmath import BINARY_S, BINARY_T, BinaryForm
from bvfourfold.weierstrass import (
    INFINITE_ORDER,
    KodairaType,
    WeierstrassK3,
    classify_orders,
    fiber_inventory,
    genus_trisection,
    i5_count,
    involution_invariants_s2,
    make_model,
)
from conftest import S, T, generic_model, rand_binary, random_minimal_model, to_sympy

t, s = BINARY_T, BINARY_S
# minimal model with a type II fiber at t = 0 (orders (1, 1, 2))
TYPE_II = (t * (s**7 + t**7 - t * s**6), t * (s**11 + 2 * t**11 + t**3 * s**8))


def oracle_type(a, b, d):
    """Kodaira table written out independently, for cross-checking."""
    if d == 0:
        return "I0"
    if a == 0 and b == 0:
        return f"I{d}"
    table = {2: "II", 3: "III", 4: "IV", 8: "IV*", 9: "III*", 10: "II*"}
    if d == 6:
        return "I0*"
    if d > 6 and a == 2 and b == 3:
        return f"I{d - 6}*"
    return table[d]


def sympy_order(expr, p):
    if expr == 0:
        return INFINITE_ORDER
    k = 0
    while True:
        q, r = sp.div(expr, p, T, S)
        if r != 0:
            return k
        expr, k = q, k + 1


def oracle_inventory(W):
    A, B = to_sympy(W.A), to_sympy(W.B)
    delta = sp.expand(4 * A**3 + 27 * B**2)
    counts = Counter()
    for p, mult in sp.factor_list(delta, T, S)[1]:
        name = oracle_type(sympy_order(A, p), sympy_order(B, p), mult)
        counts[name] += sp.Poly(p, T, S).total_degree()
    return counts


class TestKodaira:
    @pytest.mark.parametrize(
        "orders,name",
        [
            ((0, 0, 5), "I5"),
            ((2, 3, 6), "I0*"),
            ((1, 1, 2), "II"),
            ((0, 0, 0), "I0"),
            ((1, 2, 3), "III"),
            ((2, 2, 4), "IV"),
            ((2, 3, 9), "I3*"),
            ((3, 4, 8), "IV*"),
            ((3, 5, 9), "III*"),
            ((4, 5, 10), "II*"),
            ((INFINITE_ORDER, 1, 2), "II"),
            ((1, INFINITE_ORDER, 3), "III"),
        ],
    )
    def test_table(self, orders, name):
        assert classify_orders(*orders).name == name

    def test_euler_numbers(self):
        expected = {"I0": 0, "I7": 7, "II": 2, "III": 3, "IV": 4, "I0*": 6, "I2*": 8, "IV*": 8, "III*": 9, "II*": 10}
        for name, e in expected.items():
            assert KodairaType.parse(name).euler == e
            assert KodairaType.parse(name).name == name

    def test_reduced_flag(self):
        reduced = {n: KodairaType.parse(n).is_reduced for n in ["I5", "II", "III", "IV", "I0*", "IV*", "III*", "II*"]}
        assert reduced == {"I5": True, "II": True, "III": True, "IV": True, "I0*": False, "IV*": False, "III*": False, "II*": False}

    def test_non_minimal_orders_rejected(self):
        with pytest.raises(InvalidInput):
            classify_orders(4, 6, 12)

    def test_inconsistent_orders(self):
        with pytest.raises(InvariantViolation) as err:
            classify_orders(1, 1, 5)
        assert err.value.data == (1, 1, 5)

    @given(st.integers(1, 30))
    def test_in_euler(self, n):
        assert classify_orders(0, 0, n).euler == n


class TestMakeModel:
    def test_constant_forms_are_non_minimal_at_infinity(self):
        # s^8 and s^12 vanish to orders 8 and 12 at (1:0)
        with pytest.raises(NonMinimalModel) as err:
            make_model(s**8, s**12)
        assert [row[0] for row in err.value.stratum] == [s]

    def test_non_minimal(self):
        with pytest.raises(NonMinimalModel) as err:
            make_model(t**4 * s**4, t**6 * s**6)
        assert len(err.value.stratum) == 2

    def test_degenerate(self):
        with pytest.raises(DegenerateModel, match="degenerate"):
            make_model(-3 * s**8, 2 * s**12)

    def test_wrong_degrees(self):
        with pytest.raises(InvalidInput):
            make_model(s**4, s**6)

    def test_type_ii_example(self):
        W = make_model(*TYPE_II)
        inv = fiber_inventory(W)
        at_t = next(st for st in inv.strata if st.factor == t)
        assert (at_t.ord_a, at_t.ord_b, at_t.ord_delta, at_t.ktype.name) == (1, 1, 2, "II")
        assert inv.euler_total == 24

    def test_json_roundtrip(self):
        W = generic_model(random.Random(1))
        assert WeierstrassK3.from_json(W.to_json()) == W
        with pytest.raises(InvalidInput):
            WeierstrassK3.from_json({"A": W.A.to_json()})


class TestInventory:
    def test_generic_is_24_i1(self):
        rng = random.Random(2)
        for _ in range(10):
            W = generic_model(rng)
            inv = fiber_inventory(W)
            assert inv.type_counts() == Counter({"I1": 24})
            assert genus_trisection(W) == 10
            assert involution_invariants_s2(W) == (2, 0)

    def test_against_sympy_oracle(self):
        rng = random.Random(3)
        for _ in range(40):
            W = random_minimal_model(rng)
            ours = Counter({k: v for k, v in fiber_inventory(W).type_counts().items()})
            assert ours == oracle_inventory(W)

    def test_euler_sum_and_ord_delta_sum(self):
        rng = random.Random(4)
        for _ in range(100):
            W = random_minimal_model(rng)
            inv = fiber_inventory(W)
            assert inv.euler_total == 24
            assert sum(st.point_count * st.ord_delta for st in inv.strata) == 24

    def test_swap_invariance(self):
        rng = random.Random(5)
        for _ in range(30):
            W = random_minimal_model(rng)
            assert fiber_inventory(W).type_counts() == fiber_inventory(W.swap()).type_counts()

    def test_report_shape(self):
        W = make_model(*TYPE_II)
        rep = fiber_inventory(W).to_json()
        assert rep["euler_total"] == 24
        row = rep["strata"][0]
        assert set(row) == {"factor", "points", "mult", "ordA", "ordB", "ordDelta", "type", "euler"}

    def test_infinite_order_serialized(self):
        W = make_model(BinaryForm.zero(8), s**12 + t**12)
        rows = fiber_inventory(W).to_json()["strata"]
        assert all(r["ordA"] == "inf" for r in rows)
        assert fiber_inventory(W).type_counts() == Counter({"II": 12})


class TestTrisection:
    def test_additive_rejected(self):
        W = make_model(*TYPE_II)
        with pytest.raises(UnsupportedConfiguration):
            genus_trisection(W)
        with pytest.raises(UnsupportedConfiguration):
            involution_invariants_s2(W)

    def test_even_index_rejected(self):
        W = make_model(t**8 - 3 * s**8, 2 * s**12)  # I8 at t = 0
        with pytest.raises(UnsupportedConfiguration):
            genus_trisection(W)

    def test_i5_count(self):
        rng = random.Random(6)
        W = generic_model(rng)
        assert i5_count(fiber_inventory(W)) == 0
        assert i5_count(fiber_inventory(make_model(*TYPE_II))) is None


class TestFiveDoesNotDivide24:
    def test_no_model_with_only_i5(self):
        rng = random.Random(7)
        for _ in range(100):
            counts = fiber_inventory(random_minimal_model(rng)).type_counts()
            assert set(counts) != {"I5"}
