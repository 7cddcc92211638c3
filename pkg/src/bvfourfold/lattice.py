"""Neron-Severi bookkeeping on the two K3 surfaces, and the (g, k) <-> (r, a) dictionary.

S1 is the double plane branched over a sextic with n nodes: NS = <h, R_1..R_n>
with h^2 = 2, R_i^2 = -2.  S2 is the elliptic K3: NS contains <F, O> with
F^2 = 0, O^2 = -2, F.O = 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidInput
from .exactmath.linalg import det

log = logging.getLogger(__name__)

#: (r, a) pairs shared with the fixed loci excluded from the (g, k) description:
#: (10, 10) may mean an empty fixed locus, (10, 8) two curves of genus 1.
EXCLUDED_PAIRS = {
    (10, 10): "fixed locus may be empty",
    (10, 8): "fixed locus may be two curves of genus 1",
}


@dataclass(frozen=True)
class NSLattice:
    basis_labels: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.basis_labels)
        if len(self.gram) != n or any(len(row) != n for row in self.gram):
            raise InvalidInput("gram matrix shape does not match the basis")
        for i in range(n):
            if self.gram[i][i] % 2:
                raise InvalidInput(f"{self.basis_labels[i]}^2 = {self.gram[i][i]} is odd; K3 lattices are even")
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise InvalidInput("gram matrix is not symmetric")

    @property
    def rank(self) -> int:
        return len(self.basis_labels)

    def determinant(self) -> int:
        return int(det(self.gram))

    def pairing(self, u, v) -> int:
        return sum(u[i] * self.gram[i][j] * v[j] for i in range(self.rank) for j in range(self.rank))

    def element(self, **coords: int) -> "DivisorClass":
        """Class given by keyword coordinates, e.g. ``S2.element(F=4, O=2)``."""
        unknown = set(coords) - set(self.basis_labels)
        if unknown:
            raise InvalidInput(f"unknown basis labels {sorted(unknown)}")
        return DivisorClass(self, tuple(coords.get(lbl, 0) for lbl in self.basis_labels))


@dataclass(frozen=True)
class DivisorClass:
    lattice: NSLattice
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.lattice.rank:
            raise InvalidInput("coordinate vector length does not match the lattice rank")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if other.lattice != self.lattice:
            raise InvalidInput("classes live in different lattices")
        return DivisorClass(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, k: int) -> "DivisorClass":
        return DivisorClass(self.lattice, tuple(k * a for a in self.coords))

    def __str__(self) -> str:
        parts = []
        for c, lbl in zip(self.coords, self.lattice.basis_labels):
            if c:
                parts.append(lbl if c == 1 else f"-{lbl}" if c == -1 else f"{c}{lbl}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


@lru_cache(maxsize=None)
def s1_lattice(n: int) -> NSLattice:
    """Generic NS(S1) for a sextic with n nodes: h and the n nodal curves R_i."""
    if not 0 <= n <= 8:
        raise InvalidInput(f"number of nodes must lie in 0..8, got {n}")
    if n == 8:
        log.warning("n = 8: H^2 = 2, so phi_H is not shown to be an embedding")
    labels = ("h",) + tuple(f"R{i}" for i in range(1, n + 1))
    gram = tuple(tuple((2 if i == 0 else -2) if i == j else 0 for j in range(n + 1)) for i in range(n + 1))
    return NSLattice(labels, gram)


def s2_lattice() -> NSLattice:
    """The fiber/section hyperbolic plane <F, O>."""
    return NSLattice(("F", "O"), ((0, 1), (1, -2)))


def h_class(n: int) -> DivisorClass:
    return s1_lattice(n).element(h=1)


def H_class(n: int) -> DivisorClass:
    """3h - sum R_i: the strict transform of the nodal sextic."""
    lat = s1_lattice(n)
    return DivisorClass(lat, (3,) + (-1,) * n)


def F_class() -> DivisorClass:
    return s2_lattice().element(F=1)


def O_class() -> DivisorClass:
    return s2_lattice().element(O=1)


def four_f_two_o_class() -> DivisorClass:
    return s2_lattice().element(F=4, O=2)


def self_intersection(D: DivisorClass) -> int:
    return D.lattice.pairing(D.coords, D.coords)


def genus_on_k3(D: DivisorClass) -> int:
    """Arithmetic genus D^2/2 + 1 of a curve in the class D on a K3 surface."""
    d2 = self_intersection(D)
    if d2 % 2:
        raise InvalidInput(f"D^2 = {d2} is odd, impossible on an even lattice")
    if d2 < -2:
        raise InvalidInput(f"D^2 = {d2} < -2: not the class of an irreducible curve")
    return d2 // 2 + 1


def h_is_non_hyperelliptic(n: int) -> bool:
    """H^2 = 18 - 2n > 2, the hypothesis for phi_H being an embedding; fails only at n = 8."""
    return self_intersection(H_class(n)) > 2


@dataclass(frozen=True)
class InvolutionInvariants:
    r: int
    a: int
    g: int
    k: int
    flag: str | None = None

    def __post_init__(self):
        if (self.r, self.a) != (10 + self.k - self.g, 12 - self.k - self.g):
            raise InvalidInput(f"(g, k) = {(self.g, self.k)} and (r, a) = {(self.r, self.a)} do not match")

    @property
    def possibly_excluded(self) -> bool:
        return self.flag is not None


def _check_ra_range(r: int, a: int) -> None:
    if not 1 <= r <= 20 or not 0 <= a <= r:
        raise InvalidInput(f"(r, a) = {(r, a)} outside 1 <= r <= 20, 0 <= a <= r")


def gk_to_ra(g: int, k: int) -> tuple[int, int]:
    if k < 1:
        raise InvalidInput(f"k = {k}: the fixed locus has at least one curve")
    r, a = 10 + k - g, 12 - k - g
    _check_ra_range(r, a)
    return r, a


def ra_to_gk(r: int, a: int) -> tuple[int, int]:
    if (r + a) % 2:
        raise InvalidInput(f"(r, a) = {(r, a)}: r and a must have equal parity")
    _check_ra_range(r, a)
    return (22 - r - a) // 2, (r - a) // 2 + 1


def involution_invariants(r: int, a: int) -> InvolutionInvariants:
    """Both descriptions at once, flagging the pairs shared with excluded fixed loci."""
    g, k = ra_to_gk(r, a)
    return InvolutionInvariants(r, a, g, k, EXCLUDED_PAIRS.get((r, a)))


def s1_invariants(n: int) -> InvolutionInvariants:
    """Cover involution of the double plane: fixed locus is the genus 10-n branch curve."""
    g = genus_on_k3(H_class(n))
    r, a = gk_to_ra(g, 1)
    return involution_invariants(r, a)


def s2_invariants(trisection_genus: int) -> InvolutionInvariants:
    """Elliptic involution: fixes the zero section and the trisection (k = 2)."""
    r, a = gk_to_ra(trisection_genus, 2)
    return involution_invariants(r, a)
