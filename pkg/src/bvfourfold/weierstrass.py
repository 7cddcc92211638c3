"""Elliptic K3 surfaces y^2 = x^3 + A(t:s) x + B(t:s) and their singular fibers.

Roots of the discriminant are never computed.  The discriminant is split into
squarefree strata over Q, and each stratum is cut further by gcds with A and B
until (ord A, ord B, ord Delta) is constant on every piece.  Each piece is then
classified with the Kodaira table and carries ``degree(piece)`` points of P^1.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .errors import InvalidInput, InvariantViolation, NonMinimalModel, UnsupportedConfiguration
from .exactmath import BinaryForm, discriminant, exact_div, gcd, squarefree_stratify

#: Order of vanishing of the zero form (A = 0 or B = 0 identically).
INFINITE_ORDER = math.inf

_EULER = {"I": None, "II": 2, "III": 3, "IV": 4, "I*": None, "IV*": 8, "III*": 9, "II*": 10}


@dataclass(frozen=True)
class KodairaType:
    """Kodaira symbol; ``n`` is only meaningful for I_n and I_n*."""

    symbol: str
    n: int = 0

    def __post_init__(self):
        if self.symbol not in _EULER:
            raise InvalidInput(f"unknown Kodaira symbol {self.symbol!r}")
        if self.n < 0 or (self.n and self.symbol not in ("I", "I*")):
            raise InvalidInput(f"bad index {self.n} for {self.symbol}")

    @property
    def name(self) -> str:
        if self.symbol == "I":
            return f"I{self.n}"
        if self.symbol == "I*":
            return f"I{self.n}*"
        return self.symbol

    @property
    def euler(self) -> int:
        if self.symbol == "I":
            return self.n
        if self.symbol == "I*":
            return self.n + 6
        return _EULER[self.symbol]

    @property
    def is_reduced(self) -> bool:
        """I_n, II, III and IV: every fiber component has multiplicity one."""
        return self.symbol in ("I", "II", "III", "IV")

    @property
    def is_multiplicative(self) -> bool:
        return self.symbol == "I"

    @classmethod
    def parse(cls, name: str) -> "KodairaType":
        if name in ("II", "III", "IV", "IV*", "III*", "II*"):
            return cls(name)
        star = name.endswith("*")
        body = name[:-1] if star else name
        if body.startswith("I") and body[1:].isdigit():
            return cls("I*" if star else "I", int(body[1:]))
        raise InvalidInput(f"cannot parse Kodaira type {name!r}")

    def __str__(self) -> str:
        return self.name


def classify_orders(ord_a, ord_b, ord_delta: int) -> KodairaType:
    """Kodaira type from the vanishing orders of A, B and the discriminant.

    Orders of an identically zero coefficient are passed as ``INFINITE_ORDER``.
    """
    a, b, d = ord_a, ord_b, ord_delta
    if a >= 4 and b >= 6:
        raise InvalidInput(f"orders {(a, b, d)} belong to a non-minimal model")
    if d == 0:
        return KodairaType("I", 0)
    if a == 0 and b == 0:
        return KodairaType("I", d)
    if a >= 1 and b == 1 and d == 2:
        return KodairaType("II")
    if a == 1 and b >= 2 and d == 3:
        return KodairaType("III")
    if a >= 2 and b == 2 and d == 4:
        return KodairaType("IV")
    if a >= 2 and b >= 3 and d == 6:
        return KodairaType("I*", 0)
    if a == 2 and b == 3 and d > 6:
        return KodairaType("I*", d - 6)
    if a >= 3 and b == 4 and d == 8:
        return KodairaType("IV*")
    if a == 3 and b >= 5 and d == 9:
        return KodairaType("III*")
    if a >= 4 and b == 5 and d == 10:
        return KodairaType("II*")
    raise InvariantViolation(f"order triple {(a, b, d)} matches no Kodaira type", data=(a, b, d))


def split_by_order(piece: BinaryForm, f: BinaryForm) -> list[tuple[BinaryForm, float]]:
    """Cut a squarefree form into pieces on which ord(f) is constant.

    Returns ``[(subpiece, order), ...]``; f = 0 gives a single infinite-order piece.
    """
    if f.is_zero:
        return [(piece, INFINITE_ORDER)]
    out = []
    current, rest, order = piece, f, 0
    while True:
        g = gcd(current, rest)
        head = exact_div(current.normalized(), g)
        if head.degree:
            out.append((head.normalized(), order))
        if not g.degree:
            return out
        current = g
        rest = exact_div(rest, g)
        order += 1


def local_orders(A: BinaryForm, B: BinaryForm, delta: BinaryForm) -> list[tuple[BinaryForm, float, float, int]]:
    """All (piece, ord A, ord B, ord Delta) with ord Delta >= 1, pieces squarefree and coprime."""
    out = []
    for factor, mult in squarefree_stratify(delta):
        for piece_a, ord_a in split_by_order(factor, A):
            for piece, ord_b in split_by_order(piece_a, B):
                out.append((piece, ord_a, ord_b, mult))
    return sorted(out, key=lambda row: (row[0].degree, row[0].coeffs))


@dataclass(frozen=True)
class FiberStratum:
    factor: BinaryForm
    ord_a: float
    ord_b: float
    ord_delta: int
    ktype: KodairaType

    @property
    def point_count(self) -> int:
        return self.factor.degree

    @property
    def euler(self) -> int:
        """Euler number of all fibers in the stratum together."""
        return self.point_count * self.ktype.euler

    def to_json(self) -> dict:
        return {
            "factor": self.factor.to_json(),
            "points": self.point_count,
            "mult": self.ord_delta,
            "ordA": _order_json(self.ord_a),
            "ordB": _order_json(self.ord_b),
            "ordDelta": self.ord_delta,
            "type": self.ktype.name,
            "euler": self.ktype.euler,
        }


def _order_json(order):
    return "inf" if order == INFINITE_ORDER else int(order)


@dataclass(frozen=True)
class FiberInventory:
    strata: tuple[FiberStratum, ...]
    euler_total: int

    def type_counts(self) -> Counter:
        """Number of singular fibers of each type, counted over the algebraic closure."""
        counts: Counter = Counter()
        for st in self.strata:
            counts[st.ktype.name] += st.point_count
        return counts

    def count(self, name: str) -> int:
        return self.type_counts()[name]

    @property
    def singular_points(self) -> int:
        return sum(st.point_count for st in self.strata)

    def to_json(self) -> dict:
        return {
            "strata": [st.to_json() for st in self.strata],
            "counts": dict(sorted(self.type_counts().items())),
            "euler_total": self.euler_total,
        }


@dataclass(frozen=True)
class WeierstrassK3:
    """A minimal Weierstrass model with deg A = 8, deg B = 12 and nonzero discriminant."""

    A: BinaryForm
    B: BinaryForm
    delta: BinaryForm = field(init=False, repr=False, compare=False)
    strata: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        delta = discriminant(self.A, self.B)
        rows = local_orders(self.A, self.B, delta)
        bad = [row for row in rows if row[1] >= 4 and row[2] >= 6]
        if bad:
            where = ", ".join(str(row[0]) for row in bad)
            raise NonMinimalModel(f"non-minimal model: ord(A) >= 4 and ord(B) >= 6 at the zeros of {where}", bad)
        strata = tuple(FiberStratum(f, a, b, d, classify_orders(a, b, d)) for f, a, b, d in rows)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "strata", strata)

    def swap(self) -> "WeierstrassK3":
        return WeierstrassK3(self.A.swap(), self.B.swap())

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "B": self.B.to_json()}

    @classmethod
    def from_json(cls, obj) -> "WeierstrassK3":
        try:
            A, B = BinaryForm.from_json(obj["A"]), BinaryForm.from_json(obj["B"])
        except (KeyError, TypeError) as exc:
            raise InvalidInput("a model file needs binary forms 'A' and 'B'") from exc
        return make_model(A, B)


def make_model(A: BinaryForm, B: BinaryForm) -> WeierstrassK3:
    """Validate (A, B) as a minimal elliptic K3 in Weierstrass form."""
    return WeierstrassK3(A, B)


def fiber_inventory(W: WeierstrassK3) -> FiberInventory:
    euler_total = sum(st.euler for st in W.strata)
    if euler_total != W.delta.degree:
        raise InvariantViolation(f"Euler numbers sum to {euler_total}, not {W.delta.degree}")
    return FiberInventory(W.strata, euler_total)


def i5_count(inventory: FiberInventory) -> int | None:
    """m when the inventory is exactly m I5 + (24 - 5m) I1, else None."""
    counts = inventory.type_counts()
    if set(counts) - {"I5", "I1"}:
        return None
    m = counts.get("I5", 0)
    if counts.get("I1", 0) != 24 - 5 * m:
        return None
    return m


def genus_trisection(W: WeierstrassK3) -> int:
    """Genus of the trisection x^3 + A x + B = 0 by Riemann-Hurwitz over P^1.

    Every singular fiber must be I_k with k odd; each one is then a single
    simple branch point of the 3:1 cover, so 2g - 2 = -6 + #(zeros of Delta).
    """
    inv = fiber_inventory(W)
    for st in inv.strata:
        if not st.ktype.is_multiplicative:
            raise UnsupportedConfiguration(f"additive fiber {st.ktype.name} present; trisection genus not covered")
        if st.ktype.n % 2 == 0:
            raise UnsupportedConfiguration(
                f"fiber {st.ktype.name} has even index; the trisection is not simply branched there"
            )
    branch = inv.singular_points
    genus, odd = divmod(branch - 4, 2)
    if odd or genus < 0:
        raise InvariantViolation(f"{branch} branch points give no valid genus")
    return genus


def involution_invariants_s2(W: WeierstrassK3) -> tuple[int, int]:
    """(r, a) of the elliptic involution for an m I5 + (24 - 5m) I1 configuration."""
    m = i5_count(fiber_inventory(W))
    if m is None or not 0 <= m <= 4:
        raise UnsupportedConfiguration("fibers are not of the form m I5 + (24 - 5m) I1")
    return 2 + 2 * m, 2 * m
