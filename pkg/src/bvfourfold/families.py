"""Explicit elliptic K3 families with I5 fibers.

* the family with an I5 fiber over t = 0 (A(0:1) = -3, B(0:1) = 2 and the
  first five coefficients of B forced by the a_i);
* the 5-torsion family: quadratic base change of the extremal rational
  elliptic surface with fibers I1, I1, I5, I5.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput
from .exactmath import BinaryForm, ProjPoint1, discriminant, evaluate, parse_rational, rational_str
from .weierstrass import WeierstrassK3, fiber_inventory, make_model

# The free parameter count is 15 (a1..a7, b5..b12); the literature quotes a
# 14-dimensional family.  All 15 are exposed.
PARAMETER_COUNT_NOTE = (
    "A and B carry 15 free coefficients (a1..a7, b5..b12) while the family of K3 surfaces "
    "with one I5 fiber is 14-dimensional; the count is recorded, not resolved."
)


@dataclass(frozen=True)
class I5FamilyParams:
    a: tuple[Fraction, ...]  # a1..a7
    b: tuple[Fraction, ...]  # b5..b12

    def __init__(self, a, b):
        a = tuple(parse_rational(x) for x in a)
        b = tuple(parse_rational(x) for x in b)
        if len(a) != 7 or len(b) != 8:
            raise InvalidInput(f"need 7 values a1..a7 and 8 values b5..b12, got {len(a)} and {len(b)}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def zero(cls) -> "I5FamilyParams":
        return cls([0] * 7, [0] * 8)

    @classmethod
    def from_json(cls, obj) -> "I5FamilyParams":
        try:
            return cls(obj["a"], obj["b"])
        except (KeyError, TypeError) as exc:
            raise InvalidInput("parameter file needs lists 'a' (7 values) and 'b' (8 values)") from exc

    def to_json(self) -> dict:
        return {"a": [rational_str(x) for x in self.a], "b": [rational_str(x) for x in self.b]}


def forced_b_coefficients(a) -> tuple[Fraction, ...]:
    """b0..b4 as functions of a1..a4, making ord_{t=0} Delta >= 5."""
    a1, a2, a3, a4 = (Fraction(x) for x in a[:4])
    b0 = Fraction(2)
    b1 = -a1
    b2 = -a2 + a1**2 / 12
    b3 = -a3 + a2 * a1 / 6 + a1**3 / 216
    b4 = -a4 + a1**4 / 1728 + a3 * a1 / 6 + a2**2 / 12 + a2 * a1**2 / 72
    return b0, b1, b2, b3, b4


def i5_family_forms(p: I5FamilyParams) -> tuple[BinaryForm, BinaryForm]:
    """(A, B) without validation; coefficient i multiplies t^i s^(deg - i)."""
    A = BinaryForm(8, (Fraction(-3),) + p.a + (Fraction(1),))
    B = BinaryForm(12, forced_b_coefficients(p.a) + p.b)
    return A, B


def build_i5_family(p: I5FamilyParams) -> WeierstrassK3:
    return make_model(*i5_family_forms(p))


def rational_5511_model() -> tuple[BinaryForm, BinaryForm]:
    """Weierstrass data (degrees 4 and 6 in (mu:lambda)) of the extremal rational surface [1,1,5,5].

    mu plays the role of t: coefficient i multiplies mu^i lambda^(deg - i).
    """
    F = Fraction
    A = BinaryForm(4, (F(-1, 48), F(1, 4), F(-7, 24), F(-1, 4), F(-1, 48)))
    B = BinaryForm(6, (F(1, 864), F(-1, 48), F(25, 288), F(0), F(25, 288), F(1, 48), F(1, 864)))
    return A, B


def rational_5511_discriminant() -> BinaryForm:
    return discriminant(*rational_5511_model(), allow_non_k3=True)


@dataclass(frozen=True)
class TorsionFamilyParams:
    p1: Fraction
    p2: Fraction

    def __init__(self, p1, p2):
        p1, p2 = parse_rational(p1), parse_rational(p2)
        if p2 == 0:
            raise InvalidInput("p2 must be nonzero (the base change divides by it)")
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)

    @classmethod
    def from_json(cls, obj) -> "TorsionFamilyParams":
        try:
            return cls(obj["p1"], obj["p2"])
        except (KeyError, TypeError) as exc:
            raise InvalidInput("parameter file needs 'p1' and 'p2'") from exc


def base_change(p: TorsionFamilyParams) -> tuple[BinaryForm, BinaryForm]:
    """(mu, lambda) = (p1 t^2 + s^2, t^2 + s^2/p2), a double cover branched over (p1:1) and (p2:1)."""
    mu = BinaryForm(2, (1, 0, p.p1))
    lam = BinaryForm(2, (1 / p.p2, 0, 1))
    return mu, lam


def branch_values(p: TorsionFamilyParams) -> tuple[ProjPoint1, ProjPoint1]:
    return ProjPoint1(p.p1, 1), ProjPoint1(p.p2, 1)


def build_torsion_family(p: TorsionFamilyParams) -> WeierstrassK3:
    """Pull the [1,1,5,5] surface back along the quadratic base change."""
    if p.p1 == p.p2:
        raise InvalidInput(f"p1 = p2 = {p.p1} makes the base change constant")
    delta_rat = rational_5511_discriminant()
    for q in branch_values(p):
        if evaluate(delta_rat, q) == 0:
            raise InvalidInput(f"branch value {q} lies under a singular fiber of the rational surface")
    mu, lam = base_change(p)
    A0, B0 = rational_5511_model()
    return make_model(A0.substitute(mu, lam), B0.substitute(mu, lam))


def verify_configuration(W: WeierstrassK3, m: int) -> bool:
    """True iff the singular fibers are exactly m I5 and 24 - 5m I1."""
    if not 0 <= m <= 4:
        raise InvalidInput(f"m must lie in 0..4, got {m}")
    counts = fiber_inventory(W).type_counts()
    expected = {"I5": m, "I1": 24 - 5 * m}
    return {k: v for k, v in counts.items() if v} == {k: v for k, v in expected.items() if v}
