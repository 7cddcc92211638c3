"""Plane sextics with ordinary double points, the branch curves of the double plane S1."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import InvalidInput
from .exactmath import TernaryForm, det, monomials, nullspace, parse_rational, rank, rational_str

log = logging.getLogger(__name__)

MAX_NODES = 8


def normalize_point(p: Sequence) -> tuple[Fraction, Fraction, Fraction]:
    """Scale a point of P^2 so its first nonzero coordinate is 1."""
    if len(p) != 3:
        raise InvalidInput(f"a point of P^2 needs three coordinates, got {len(p)}")
    p = [parse_rational(x) for x in p]
    lead = next((x for x in p if x), None)
    if lead is None:
        raise InvalidInput("(0:0:0) is not a point of P^2")
    return tuple(x / lead for x in p)


def genus_branch(n: int) -> int:
    """Geometric genus of a sextic with n nodes."""
    if not 0 <= n <= MAX_NODES:
        raise InvalidInput(f"number of nodes must lie in 0..{MAX_NODES}, got {n}")
    return 10 - n


def del_pezzo_degree(n: int) -> int:
    genus_branch(n)
    return 9 - n


def check_node(f6: TernaryForm, p: Sequence) -> None:
    """Raise unless p is an ordinary double point of f6.

    The Hessian of a form always kills a singular point (Euler's relation), so
    rank 2 is the maximum and means the tangent cone is two distinct lines.
    """
    if f6(*p):
        raise InvalidInput(f"node {_pt(p)} does not lie on the sextic")
    if any(f6.gradient(p)):
        raise InvalidInput(f"node {_pt(p)} is a smooth point of the sextic (gradient is nonzero)")
    if rank(f6.hessian(p)) < 2:
        raise InvalidInput(f"node {_pt(p)} is worse than an ordinary double point (Hessian rank < 2)")


def _pt(p) -> str:
    return "(" + ":".join(rational_str(x) for x in p) + ")"


def _conic_row(p):
    return [p[0] ** a * p[1] ** b * p[2] ** c for a, b, c in monomials(3, 2)]


def position_warnings(nodes: Sequence[Sequence]) -> list[str]:
    """Degenerate node positions that keep the blow-up defined but may spoil ampleness."""
    out = []
    for trio in combinations(range(len(nodes)), 3):
        if det([nodes[i] for i in trio]) == 0:
            out.append(f"nodes {', '.join(_pt(nodes[i]) for i in trio)} are collinear")
    for six in combinations(range(len(nodes)), 6):
        if det([_conic_row(nodes[i]) for i in six]) == 0:
            out.append(f"nodes {', '.join(_pt(nodes[i]) for i in six)} lie on a conic")
    return out


@dataclass(frozen=True)
class NodalSextic:
    f6: TernaryForm
    nodes: tuple[tuple[Fraction, Fraction, Fraction], ...]
    irreducible: bool | None = None
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def genus(self) -> int:
        return genus_branch(self.n)

    @property
    def del_pezzo_degree(self) -> int:
        return 9 - self.n

    def to_json(self) -> dict:
        out = {
            "f6": self.f6.to_json(),
            "nodes": [[rational_str(x) for x in p] for p in self.nodes],
        }
        if self.irreducible is not None:
            out["irreducible"] = self.irreducible
        return out

    @classmethod
    def from_json(cls, obj) -> "NodalSextic":
        try:
            f6 = TernaryForm.from_json(obj["f6"])
            nodes = obj.get("nodes", [])
            irreducible = obj.get("irreducible")
        except (KeyError, TypeError, AttributeError) as exc:
            raise InvalidInput("a sextic file needs 'f6' and optional 'nodes', 'irreducible'") from exc
        if irreducible is not None and not isinstance(irreducible, bool):
            raise InvalidInput("'irreducible' must be true or false")
        return validate(f6, nodes, irreducible)


def validate(f6: TernaryForm, nodes: Sequence[Sequence], irreducible: bool | None = None) -> NodalSextic:
    """Check that every listed node is an ordinary double point of the sextic f6.

    Irreducibility is not checked; ``irreducible`` only records the caller's claim.
    """
    if not isinstance(f6, TernaryForm):
        raise InvalidInput("f6 must be a ternary form")
    if f6.degree != 6:
        raise InvalidInput(f"the branch curve must be a sextic, got degree {f6.degree}")
    if f6.is_zero:
        raise InvalidInput("f6 vanishes identically")
    if not 0 <= len(nodes) <= MAX_NODES:
        raise InvalidInput(f"number of nodes must lie in 0..{MAX_NODES}, got {len(nodes)}")
    pts = tuple(normalize_point(p) for p in nodes)
    if len(set(pts)) != len(pts):
        raise InvalidInput("node list contains duplicates")
    for p in pts:
        check_node(f6, p)
    warnings = position_warnings(pts)
    if len(pts) == MAX_NODES:
        warnings.append("n = 8: H^2 = 2, the embedding argument for phi_H does not apply")
    for w in warnings:
        log.warning(w)
    return NodalSextic(f6, pts, irreducible, tuple(warnings))


def sextics_singular_at(points: Sequence[Sequence]) -> list[TernaryForm]:
    """Basis of the sextics singular at every given point (3 linear conditions per point)."""
    mons = monomials(3, 6)
    rows = []
    for p in (normalize_point(q) for q in points):
        for i in range(3):
            row = []
            for e in mons:
                if not e[i]:
                    row.append(Fraction(0))
                    continue
                e2 = list(e)
                e2[i] -= 1
                row.append(e[i] * p[0] ** e2[0] * p[1] ** e2[1] * p[2] ** e2[2])
            rows.append(row)
    basis = nullspace(rows, len(mons)) if rows else [[Fraction(int(i == j)) for j in range(len(mons))] for i in range(len(mons))]
    return [TernaryForm.from_terms(6, dict(zip(mons, v))) for v in basis]


def sextic_with_nodes(points: Sequence[Sequence], rng: random.Random, *, attempts: int = 20, coeff_range: int = 5) -> NodalSextic:
    """A random sextic with ordinary double points exactly at the given points (at least)."""
    basis = sextics_singular_at(points)
    if not basis:
        raise InvalidInput("no sextic is singular at all the given points")
    for _ in range(attempts):
        f = TernaryForm(3, 6, {})
        for b in basis:
            c = rng.randint(-coeff_range, coeff_range)
            if c:
                f = f + b * c
        if f.is_zero:
            continue
        try:
            return validate(f, points, None)
        except InvalidInput:
            continue
    raise InvalidInput("could not find a sextic with ordinary nodes at the given points")
