"""Section counts for invariant divisors D1 + D2 on S1 x S2 and their descents to the fourfold.

A divisor class D on a K3 with D^2 = 2g - 2 has g + 1 sections.  The involution
splits them into an invariant part of projective dimension h and an
anti-invariant part of dimension g - h - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput
from .lattice import DivisorClass, F_class, H_class, four_f_two_o_class, genus_on_k3, h_class


@dataclass(frozen=True)
class LinearSystemDatum:
    """Genus g of the class and projective dimension h of its invariant sections."""

    g: int
    h: int

    def __post_init__(self):
        if self.g < 0 or not -1 <= self.h <= self.g:
            raise InvalidInput(f"(g, h) = {(self.g, self.h)} violates 0 <= g and -1 <= h <= g")

    @property
    def anti_invariant_count(self) -> int:
        return self.g - self.h


def h0_product(g1: int, g2: int) -> int:
    if g1 < 0 or g2 < 0:
        raise InvalidInput("genera must be non-negative")
    return (g1 + 1) * (g2 + 1)


def descent_dims(d1: LinearSystemDatum, d2: LinearSystemDatum) -> tuple[int, int]:
    """(N, M): projective dimensions of the invariant and anti-invariant parts of H^0(D1 + D2).

    -1 is the empty linear system.
    """
    a1, b1 = d1.h + 1, d1.anti_invariant_count
    a2, b2 = d2.h + 1, d2.anti_invariant_count
    return a1 * a2 + b1 * b2 - 1, a1 * b2 + b1 * a2 - 1


def delta_dims(d: LinearSystemDatum) -> int:
    return d.h


# Anti-invariant section count of each standard class.  The cover involution
# acts trivially on sections of h, F and 4F+2O; for H = 3h - sum R_i the cubics
# through the nodes carry a single anti-invariant section (the equation of the
# branch curve itself).
_ANTI_INVARIANT = {"h": 0, "H": 1, "F": 0, "4F+2O": 0}


def _datum(name: str, cls: DivisorClass) -> LinearSystemDatum:
    g = genus_on_k3(cls)
    return LinearSystemDatum(g, g - _ANTI_INVARIANT[name])


def standard_data(n: int) -> dict[str, LinearSystemDatum]:
    """(g, h) for h, H on S1 (sextic with n nodes) and F, 4F+2O on S2."""
    return {
        "h": _datum("h", h_class(n)),
        "H": _datum("H", H_class(n)),
        "F": _datum("F", F_class()),
        "4F+2O": _datum("4F+2O", four_f_two_o_class()),
    }


@dataclass(frozen=True)
class FibrationTarget:
    divisor: str
    d1: LinearSystemDatum
    d2: LinearSystemDatum
    dim: int
    complement_dim: int
    map_class: str

    def to_json(self) -> dict:
        return {
            "divisor": self.divisor,
            "S1": {"g": self.d1.g, "h": self.d1.h},
            "S2": {"g": self.d2.g, "h": self.d2.h},
            "dim": self.dim,
            "complement_dim": self.complement_dim,
            "map": self.map_class,
        }


_ROWS = (
    ("h", "F", "elliptic fibration onto the Segre image of P^2 x P^1"),
    ("H", "F", "projective model"),
    ("h", "4F+2O", "generically 2:1 onto its image"),
    ("H", "4F+2O", "birational onto its image"),
)


def fibration_targets(n: int) -> list[FibrationTarget]:
    data = standard_data(n)
    rows = []
    for c1, c2, kind in _ROWS:
        d1, d2 = data[c1], data[c2]
        N, M = descent_dims(d1, d2)
        if (N + 1) + (M + 1) != h0_product(d1.g, d2.g):
            raise AssertionError("eigenspaces do not partition the sections")
        rows.append(FibrationTarget(f"{c1}+{c2}", d1, d2, N, M, kind))
    return rows
