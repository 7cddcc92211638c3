"""Hodge numbers of the Borcea-Voisin fourfold of two K3 surfaces with non-symplectic involutions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput


@dataclass(frozen=True)
class HodgeDiamond4:
    h11: int
    h21: int
    h31: int
    h22: int

    @property
    def euler(self) -> int:
        return 4 + 2 * self.h11 - 4 * self.h21 + 2 * self.h31 + self.h22

    def satisfies_cy4_identity(self) -> bool:
        """h22 = 2(22 + 2 h11 + 2 h31 - h21), valid for every Calabi-Yau fourfold."""
        return self.h22 == 2 * (22 + 2 * self.h11 + 2 * self.h31 - self.h21)

    def as_tuple(self) -> tuple[int, int, int, int]:
        """(h11, h21, h31, h22)."""
        return self.h11, self.h21, self.h31, self.h22

    def to_json(self) -> dict:
        return {"h11": self.h11, "h21": self.h21, "h31": self.h31, "h22": self.h22, "euler": self.euler}


def _integral(value: Fraction, name: str) -> int:
    if value.denominator != 1:
        raise InvalidInput(f"{name} = {value} is not an integer; the invariants are inadmissible")
    if value < 0:
        raise InvalidInput(f"{name} = {value} is negative; the invariants are inadmissible")
    return int(value)


def dillies_hodge(r1: int, a1: int, r2: int, a2: int) -> HodgeDiamond4:
    """Hodge numbers from the lattice invariants (r_i, a_i) of the two involutions.

    (10, 10) is rejected: it is the invariant pair of the fixed-point-free
    involution.  (10, 8) is accepted and read as the g = 2, k = 2 involution.
    """
    for r, a in ((r1, a1), (r2, a2)):
        if (r, a) == (10, 10):
            raise InvalidInput("(r, a) = (10, 10): the fixed locus may be empty, formula does not apply")
    r1, a1, r2, a2 = (Fraction(x) for x in (r1, a1, r2, a2))
    h11 = (
        1 + r1 * r2 / 4 - r1 * a2 / 4 - a1 * r2 / 4 + a1 * a2 / 4
        + 3 * r1 / 2 - a1 / 2 + 3 * r2 / 2 - a2 / 2
    )
    h21 = 22 - r1 * r2 / 2 + a1 * a2 / 2 + 5 * r1 - 6 * a1 + 5 * r2 - 6 * a2
    h22 = 648 + 3 * r1 * r2 + a1 * a2 - 30 * r1 - 30 * r2 - 12 * a1 - 12 * a2
    h31 = (
        161 + r1 * r2 / 4 + a1 * a2 / 4 + r1 * a2 / 4 + a1 * r2 / 4
        - 13 * r1 / 2 - 13 * r2 / 2 - 11 * a1 / 2 - 11 * a2 / 2
    )
    return HodgeDiamond4(
        _integral(h11, "h11"), _integral(h21, "h21"), _integral(h31, "h31"), _integral(h22, "h22")
    )


def bv_hodge(n: int, m: int) -> HodgeDiamond4:
    """Closed forms for a sextic with n nodes and an elliptic K3 with m I5 + (24-5m) I1 fibers."""
    if not 0 <= n <= 8:
        raise InvalidInput(f"n must lie in 0..8, got {n}")
    if not 0 <= m <= 4:
        raise InvalidInput(f"m must lie in 0..4, got {m}")
    return HodgeDiamond4(
        h11=5 + n + 2 * m,
        h21=2 * (15 - n - m),
        h31=137 - 11 * n - 22 * m + 2 * n * m,
        h22=4 * (138 - 9 * n - 19 * m + 2 * n * m),
    )


def bv_lattice_invariants(n: int, m: int) -> tuple[int, int, int, int]:
    """(r1, a1, r2, a2) = (n+1, n+1, 2+2m, 2m)."""
    return n + 1, n + 1, 2 + 2 * m, 2 * m


def cross_check(n: int, m: int) -> bool:
    return bv_hodge(n, m) == dillies_hodge(*bv_lattice_invariants(n, m))
