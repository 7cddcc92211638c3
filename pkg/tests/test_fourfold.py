import json
import random
from collections import Counter
from dataclasses import replace

import pytest

from bvfourfold.errors import InvalidInput, InvariantViolation
from bvfourfold.exactmath import BiForm, BINARY_S, BINARY_T, Form, monomials
from bvfourfold.families import I5FamilyParams, TorsionFamilyParams, build_i5_family, build_torsion_family
from bvfourfold.fourfold import (
    DOUBLE_COVER_TEMPLATE,
    assemble,
    classify_strata,
    emit_models,
    fibration_inventory,
    flatness_flag,
    fourfold_discriminant,
    full_report,
    has_i5_family_shape,
)
from bvfourfold.sextic import sextic_with_nodes
from bvfourfold.weierstrass import fiber_inventory, make_model
from conftest import generic_model, rand_binary

SIX_NODES = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (2, -1, 5)]
t, s = BINARY_T, BINARY_S


@pytest.fixture(scope="module")
def flagship():
    sextic = sextic_with_nodes(SIX_NODES, random.Random(11))
    return assemble(sextic, build_torsion_family(TorsionFamilyParams(2, 3)))


@pytest.fixture(scope="module")
def smooth_generic():
    rng = random.Random(12)
    return assemble(sextic_with_nodes([], rng), generic_model(rng))


def i0star_model(rng):
    while True:
        try:
            return make_model(t**2 * rand_binary(rng, 6), t**3 * rand_binary(rng, 9))
        except InvalidInput:
            continue


def form(nvars, degree, rng):
    return Form(nvars, degree, {e: rng.randint(-3, 3) for e in monomials(nvars, degree)})


class TestAssembly:
    def test_bidegrees(self, flagship):
        assert flagship.AY.bidegree == (12, 8)
        assert flagship.BY.bidegree == (18, 12)

    def test_specialization_is_multiple_of_A(self, flagship):
        x = (2, -1, 3)
        c = flagship.sextic.f6(*x)
        assert c != 0
        assert flagship.AY.at_ternary_point(x) == c**2 * flagship.k3.A
        assert flagship.BY.at_ternary_point(x) == c**3 * flagship.k3.B


class TestDiscriminant:
    def test_identity_and_spot_checks(self, flagship):
        delta = fourfold_discriminant(flagship)
        assert delta.bidegree == (36, 24)
        rng = random.Random(13)
        f6, dk3 = flagship.sextic.f6, flagship.k3.delta
        for _ in range(50):
            x = [rng.randint(-9, 9) for _ in range(3)]
            ts = [rng.randint(-9, 9) for _ in range(2)]
            assert delta(x, ts) == f6(*x) ** 6 * dk3(*ts)
            assert delta(x, ts) == 4 * flagship.AY(x, ts) ** 3 + 27 * flagship.BY(x, ts) ** 2

    def test_tampered_model_detected(self, flagship):
        bad = replace(flagship, BY=flagship.BY + BiForm.product(flagship.sextic.f6**3, t**12))
        with pytest.raises(InvariantViolation):
            fourfold_discriminant(bad)


class TestStrata:
    def test_flagship(self, flagship):
        strata = classify_strata(flagship)
        by_name = {}
        for r in strata:
            by_name.setdefault(r.name, []).append(r)
        (c,) = by_name["C x P1"]
        assert c.orders == (2, 3, 6) and c.ktype == "I0*"
        dp = Counter()
        for r in by_name["dP x q"]:
            dp[r.ktype] += r.points
            assert r.ktype == r.k3_type
        assert dp == Counter({"I5": 4, "I1": 4})
        assert all(r.ktype == "unclassified" for r in by_name["C x q"])
        assert flatness_flag(strata)

    def test_generic(self, smooth_generic):
        strata = classify_strata(smooth_generic)
        dp = Counter()
        for r in strata:
            if r.name == "dP x q":
                dp[r.ktype] += r.points
        assert dp == Counter({"I1": 24})
        assert flatness_flag(strata)

    def test_non_reduced_fiber_breaks_flatness(self):
        rng = random.Random(14)
        F = assemble(sextic_with_nodes([(1, 0, 0)], rng), i0star_model(rng))
        strata = classify_strata(F)
        assert any(r.ktype == "I0*" for r in strata if r.name == "dP x q")
        assert not flatness_flag(strata)

    def test_deterministic(self, flagship):
        assert classify_strata(flagship) == classify_strata(flagship)


class TestEmission:
    def test_base(self, flagship):
        rec = emit_models(flagship)
        assert rec["double_cover"]["equation"] == DOUBLE_COVER_TEMPLATE
        assert rec["double_cover"]["base"] == "P^2 x F_4"
        assert rec["weierstrass"]["AY"] == flagship.AY.to_json()

    def test_n6(self, flagship):
        rng = random.Random(15)
        rec = emit_models(flagship, 6, {"g2": form(4, 2, rng), "g3": form(4, 3, rng).to_json()})
        assert rec["n6"]["equations"][1] == "g3(y0:y1:y2:y3) = 0"
        assert rec["n6"]["i5_family_shape"] is False
        with pytest.raises(InvalidInput):
            emit_models(flagship, 6, {"g2": form(4, 2, rng), "g3": form(4, 2, rng)})
        with pytest.raises(InvalidInput):
            emit_models(flagship, 6, {"g2": form(4, 2, rng)})

    def test_n5(self, flagship):
        rng = random.Random(16)
        aux = {k: form(5, 2, rng) for k in ("q2", "q2p", "q2pp")}
        rec = emit_models(flagship, 5, aux)
        assert len(rec["n5"]["equations"]) == 3
        assert "warning" in rec
        aux["q2p"] = form(5, 3, rng)
        with pytest.raises(InvalidInput):
            emit_models(flagship, 5, aux)
        with pytest.raises(InvalidInput):
            emit_models(flagship, 7, aux)

    def test_i5_family_shape(self):
        W = build_i5_family(I5FamilyParams([1, 2, 3, 0, 0, 0, 1], [0, 0, 1, 0, 0, 0, 0, 1]))
        assert has_i5_family_shape(W)


class TestInventoryAndReport:
    def test_fibrations(self, flagship):
        rows = fibration_inventory(flagship)
        assert [r["name"] for r in rows] == ["E", "G", "H", "delta_4F+2O"]
        assert [r["base_dim"] for r in rows] == [3, 2, 1, 5]
        assert rows[1]["alt_base_dim"] == 3 and "cubic surface" in rows[1]["note"]
        assert rows[2]["singular_points"] == 8

    def test_flagship_report(self, flagship):
        rep = full_report(flagship)
        assert list(rep) == ["model", "discriminant", "strata", "flatness", "fibrations", "notes", "hodge"]
        assert (rep["hodge"]["h11"], rep["hodge"]["h21"], rep["hodge"]["h31"], rep["hodge"]["h22"]) == (19, 10, 31, 224)
        assert rep["flatness"]["flat"] is True
        assert [r["dim"] for r in rep["fibrations"]["maps"]] == [5, 7, 17, 23]
        assert json.dumps(rep) == json.dumps(full_report(flagship))

    def test_smooth_generic_report(self, smooth_generic):
        rep = full_report(smooth_generic)
        h = rep["hodge"]
        assert (h["h11"], h["h21"], h["h31"], h["h22"]) == (5, 30, 137, 552)
        assert rep["flatness"]["flat"] is True

    def test_no_hodge_for_other_configurations(self):
        rng = random.Random(17)
        F = assemble(sextic_with_nodes([], rng), i0star_model(rng))
        assert "hodge" not in full_report(F)
        assert fiber_inventory(F.k3).euler_total == 24
