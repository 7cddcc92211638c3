"""The elliptic fourfold Y^2 = X^3 + A(t:s) f6(x)^2 X + B(t:s) f6(x)^3 over P^2 x P^1.

Fiber types along each discriminant component are read off from the vanishing
orders of (AY, BY, Delta) at the generic point of that component.  The orders
are computed on exact restrictions: to a general line of P^2 at a general
(t:s) for the component f6 = 0, and to a general point of P^2 for the
components dP x {q}.  "General" means drawn from a seeded RNG and retried
until the restriction is transverse; all results are exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInput, InvariantViolation
from .exactmath import BiForm, BinaryForm, Form, squarefree_stratify
from .families import forced_b_coefficients
from .hodge import bv_hodge, dillies_hodge
from .linsys import delta_dims, fibration_targets, standard_data
from .sextic import NodalSextic
from .weierstrass import (
    KodairaType,
    WeierstrassK3,
    classify_orders,
    fiber_inventory,
    i5_count,
    local_orders,
    split_by_order,
)

AY_BIDEGREE = (12, 8)
BY_BIDEGREE = (18, 12)
DELTA_BIDEGREE = (36, 24)

WEIERSTRASS_TEMPLATE = "Y^2 = X^3 + A(t:s) f6(x0:x1:x2)^2 X + B(t:s) f6(x0:x1:x2)^3"
DOUBLE_COVER_TEMPLATE = "W^2 = f6(x0:x1:x2) z (x^3 + A(t:s) x z^2 + B(t:s) z^3)"
DISCRIMINANT_TEMPLATE = "Delta = f6^6 (4 A^3 + 27 B^2)"
INVOLUTION_NOTE = (
    "the involution W -> -W of the double cover has quotient birational to P^2 x F_4"
)

_SEED = 20240607
_MAX_TRIES = 50
_SAMPLE_RANGE = 97


@dataclass(frozen=True)
class FourfoldModel:
    sextic: NodalSextic
    k3: WeierstrassK3
    AY: BiForm
    BY: BiForm

    @property
    def n(self) -> int:
        return self.sextic.n


def assemble(s: NodalSextic, W: WeierstrassK3) -> FourfoldModel:
    f6 = s.f6
    AY = BiForm.product(f6 * f6, W.A)
    BY = BiForm.product(f6 * f6 * f6, W.B)
    if AY.bidegree != AY_BIDEGREE or BY.bidegree != BY_BIDEGREE:
        raise InvariantViolation(f"bidegrees {AY.bidegree}, {BY.bidegree} differ from (12, 8), (18, 12)")
    if (3 * AY.bidegree[0], 3 * AY.bidegree[1]) != (2 * BY.bidegree[0], 2 * BY.bidegree[1]):
        raise InvariantViolation("3 * bidegree(AY) != 2 * bidegree(BY)")
    return FourfoldModel(s, W, AY, BY)


def fourfold_discriminant(F: FourfoldModel) -> BiForm:
    """4 AY^3 + 27 BY^2, checked term by term against f6^6 times the K3 discriminant."""
    delta = 4 * F.AY**3 + 27 * F.BY**2
    f6 = F.sextic.f6
    expected = BiForm.product(f6**6, F.k3.delta)
    if delta != expected:
        raise InvariantViolation("4 AY^3 + 27 BY^2 differs from f6^6 * (4A^3 + 27B^2)")
    if delta.bidegree != DELTA_BIDEGREE:
        raise InvariantViolation(f"discriminant has bidegree {delta.bidegree}")
    return delta


@dataclass(frozen=True)
class StratumReport:
    name: str
    locus: str
    points: int | None
    orders: tuple | None
    ktype: str
    k3_type: str | None = None

    @property
    def classified(self) -> bool:
        return self.ktype != "unclassified"

    def to_json(self) -> dict:
        out = {"name": self.name, "locus": self.locus, "type": self.ktype}
        if self.points is not None:
            out["points"] = self.points
        if self.orders is not None:
            out["orders"] = [("inf" if o == float("inf") else int(o)) for o in self.orders]
        if self.k3_type is not None:
            out["k3_type"] = self.k3_type
        return out


def _rand_point(rng: random.Random, k: int) -> list[Fraction]:
    return [Fraction(rng.randint(-_SAMPLE_RANGE, _SAMPLE_RANGE)) for _ in range(k)]


def _orders_along_f6(F: FourfoldModel, delta: BiForm, rng: random.Random) -> tuple:
    """Orders of (AY, BY, Delta) at the generic point of the curve f6 = 0."""
    W = F.k3
    for _ in range(_MAX_TRIES):
        ts = _rand_point(rng, 2)
        if not (W.A(*ts) and W.B(*ts) and W.delta(*ts)):
            continue
        p, q = _rand_point(rng, 3), _rand_point(rng, 3)
        on_line = F.sextic.f6.restrict_to_line(p, q)
        if on_line.is_zero:
            continue
        strata = squarefree_stratify(on_line)
        if len(strata) != 1 or strata[0][1] != 1 or strata[0][0].degree != 6:
            continue  # the line is tangent to C or passes through a node
        curve = strata[0][0]
        a, b, d = (form.on_line_at(p, q, ts) for form in (F.AY, F.BY, delta))
        rows = []
        for piece_a, oa in split_by_order(curve, a):
            for piece_b, ob in split_by_order(piece_a, b):
                for _piece, od in split_by_order(piece_b, d):
                    rows.append((oa, ob, od))
        if len(set(rows)) == 1:
            return rows[0]
    raise InvariantViolation("no transverse line found for the curve f6 = 0")


def _generic_base_point(F: FourfoldModel, rng: random.Random) -> list[Fraction]:
    for _ in range(_MAX_TRIES):
        x = _rand_point(rng, 3)
        if F.sextic.f6(*x):
            return x
    raise InvariantViolation("no point off the curve f6 = 0 found")


def classify_strata(F: FourfoldModel, delta: BiForm | None = None, *, seed: int = _SEED) -> list[StratumReport]:
    """Generic stratum, the curve C x P^1, one dP x {q} stratum per K3 stratum, and C x {q}."""
    if delta is None:
        delta = fourfold_discriminant(F)
    rng = random.Random(seed)
    out = [StratumReport("generic", "complement of the discriminant", None, (0, 0, 0), classify_orders(0, 0, 0).name)]

    orders_c = _orders_along_f6(F, delta, rng)
    out.append(StratumReport("C x P1", "f6 = 0", None, orders_c, classify_orders(*orders_c).name))

    x = _generic_base_point(F, rng)
    a, b, d = (form.at_ternary_point(x) for form in (F.AY, F.BY, delta))
    dp_rows = local_orders(a, b, d)
    k3_rows = [(st.factor, st.ord_a, st.ord_b, st.ord_delta) for st in F.k3.strata]
    if [(r[0], r[1], r[2], r[3]) for r in dp_rows] != k3_rows:
        raise InvariantViolation("orders over dP x {q} differ from the K3 orders at q")
    for st, (factor, oa, ob, od) in zip(F.k3.strata, dp_rows):
        ktype = classify_orders(oa, ob, od)
        if ktype != st.ktype:
            raise InvariantViolation(f"type over dP x {{{factor} = 0}} is {ktype}, K3 fiber is {st.ktype}")
        out.append(StratumReport("dP x q", f"{factor} = 0", factor.degree, (oa, ob, od), ktype.name, st.ktype.name))
    for st in F.k3.strata:
        out.append(StratumReport("C x q", f"f6 = 0, {st.factor} = 0", st.point_count, None, "unclassified", st.ktype.name))
    return out


def flatness_flag(strata: Sequence[StratumReport]) -> bool:
    """True iff every dP x {q} stratum carries a reduced fiber type (I_n, II, III, IV)."""
    return all(KodairaType.parse(r.ktype).is_reduced for r in strata if r.name == "dP x q")


def _check_degree(form: Form, nvars: int, degree: int, label: str) -> None:
    if form.nvars != nvars or form.degree != degree:
        raise InvalidInput(
            f"{label} must be a form of degree {degree} in {nvars} variables, "
            f"got degree {form.degree} in {form.nvars}"
        )


def has_i5_family_shape(W: WeierstrassK3) -> bool:
    """A(0:1) = -3, B(0:1) = 2 and b1..b4 forced by a1..a4, so the fiber over t = 0 is I5 or worse."""
    return W.A.coeffs[0] == -3 and tuple(W.B.coeffs[:5]) == forced_b_coefficients(W.A.coeffs[1:5])


def emit_models(F: FourfoldModel, variant: int | None = None, aux: dict | None = None) -> dict:
    """Equation records: Weierstrass form, double cover, and optionally the n = 6 or n = 5 model.

    ``aux`` holds the auxiliary forms: ``g2``, ``g3`` in 4 variables for n = 6,
    ``q2``, ``q2p``, ``q2pp`` in 5 variables for n = 5.  Only degrees are checked.
    """
    W, f6 = F.k3, F.sextic.f6
    out = {
        "weierstrass": {"equation": WEIERSTRASS_TEMPLATE, "AY": F.AY.to_json(), "BY": F.BY.to_json()},
        "double_cover": {
            "equation": DOUBLE_COVER_TEMPLATE,
            "base": "P^2 x F_4",
            "f6": f6.to_json(),
            "A": W.A.to_json(),
            "B": W.B.to_json(),
        },
    }
    if variant is None:
        return out
    aux = aux or {}
    if variant == 6:
        g2, g3 = _aux(aux, "g2"), _aux(aux, "g3")
        _check_degree(g2, 4, 2, "g2")
        _check_degree(g3, 4, 3, "g3")
        out["n6"] = {
            "equations": [
                "Y^2 = X^3 + A(t:s) g2(y0:y1:y2:y3)^2 X + B(t:s) g2(y0:y1:y2:y3)^3",
                "g3(y0:y1:y2:y3) = 0",
            ],
            "double_cover": ["W^2 = g2 z (x^3 + A x z^2 + B z^3)", "g3 = 0"],
            "g2": g2.to_json(),
            "g3": g3.to_json(),
            "i5_family_shape": has_i5_family_shape(W),
        }
    elif variant == 5:
        qs = [_aux(aux, k) for k in ("q2", "q2p", "q2pp")]
        for q, label in zip(qs, ("q2", "q2p", "q2pp")):
            _check_degree(q, 5, 2, label)
        out["n5"] = {
            "equations": [
                "Y^2 = X^3 + A(t:s) q2pp(y0:..:y4)^2 X + B(t:s) q2pp(y0:..:y4)^3",
                "q2p(y0:..:y4) = 0",
                "q2(y0:..:y4) = 0",
            ],
            "double_cover": ["W^2 = q2pp z (x^3 + A x z^2 + B z^3)", "q2p = 0", "q2 = 0"],
            "q2": qs[0].to_json(),
            "q2p": qs[1].to_json(),
            "q2pp": qs[2].to_json(),
        }
    else:
        raise InvalidInput(f"explicit models exist for n = 5 and n = 6 only, got {variant}")
    if variant != F.n:
        out["warning"] = f"variant n = {variant} requested for a sextic with {F.n} nodes"
    return out


def _aux(aux: dict, key: str) -> Form:
    if key not in aux:
        raise InvalidInput(f"auxiliary form {key!r} missing")
    form = aux[key]
    return form if isinstance(form, Form) else Form.from_json(form)


def fibration_inventory(F: FourfoldModel) -> list[dict]:
    """The four fibrations of Y with base dimensions from the invariant section counts."""
    data = standard_data(F.n)
    inv = fiber_inventory(F.k3)
    g_base = delta_dims(data["H"])
    rows = [
        {
            "name": "E",
            "fiber": "elliptic curve",
            "base": "dP x P^1 (model over P^2 x P^1)",
            "base_dim": delta_dims(data["h"]) + delta_dims(data["F"]),
            "discriminant": "(C x P^1) u (dP x Delta(pi))",
        },
        {
            "name": "G",
            "fiber": "K3 surface isomorphic to S2 (isotrivial)",
            "base": f"P^2 via delta_h; dP in P^{g_base} via delta_H",
            "base_dim": delta_dims(data["h"]),
            "alt_base_dim": g_base,
        },
        {
            "name": "H",
            "fiber": "Borcea-Voisin Calabi-Yau threefold",
            "base": "P^1",
            "base_dim": delta_dims(data["F"]),
            "singular_points": inv.singular_points,
        },
        {
            "name": "delta_4F+2O",
            "fiber": "K3 surface isomorphic to S1 (isotrivial)",
            "base": "F_4 in P^5",
            "base_dim": delta_dims(data["4F+2O"]),
        },
    ]
    if F.n == 6:
        rows[1]["note"] = "for n = 6 the dP is a cubic surface in P^3"
    return rows


def lattice_invariants(F: FourfoldModel) -> tuple[int, int, int, int] | None:
    """(r1, a1, r2, a2) when the K3 inventory is m I5 + (24 - 5m) I1, else None."""
    m = i5_count(fiber_inventory(F.k3))
    if m is None:
        return None
    return F.n + 1, F.n + 1, 2 + 2 * m, 2 * m


def full_report(F: FourfoldModel, variant: int | None = None, aux: dict | None = None) -> dict:
    delta = fourfold_discriminant(F)
    strata = classify_strata(F, delta)
    inv = fiber_inventory(F.k3)
    report = {
        "model": {
            "n": F.n,
            "del_pezzo_degree": F.sextic.del_pezzo_degree,
            "branch_genus": F.sextic.genus,
            "sextic_warnings": list(F.sextic.warnings),
            "irreducible_attested": F.sextic.irreducible,
            "k3_inventory": inv.to_json(),
            "equations": emit_models(F, variant, aux),
        },
        "discriminant": {
            "equation": DISCRIMINANT_TEMPLATE,
            "bidegree": list(delta.bidegree),
            "terms": len(delta.terms),
            "identity_verified": True,
        },
        "strata": [r.to_json() for r in strata],
        "flatness": {"flat": flatness_flag(strata), "criterion": "all fibers over dP x q of type I_n, II, III or IV"},
        "fibrations": {
            "maps": [t.to_json() for t in fibration_targets(F.n)],
            "fibrations": fibration_inventory(F),
        },
        "notes": [INVOLUTION_NOTE, "fibers over C x q (codimension 2) are not classified"],
    }
    inv_ra = lattice_invariants(F)
    if inv_ra is not None:
        m = inv_ra[3] // 2
        diamond = bv_hodge(F.n, m)
        if diamond != dillies_hodge(*inv_ra):
            raise InvariantViolation("closed-form and lattice Hodge numbers disagree")
        report["hodge"] = {"n": F.n, "m": m, "r1a1r2a2": list(inv_ra), **diamond.to_json()}
    return report
