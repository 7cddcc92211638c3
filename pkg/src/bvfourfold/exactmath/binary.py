"""Homogeneous binary forms in (t:s) over Q.

Coefficient i of a degree-d form multiplies t**i * s**(d-i), so the coefficient
tuple is also the dehomogenization f(t, 1), padded with zeros at the top.  The
number of padding zeros is the power of s dividing f, i.e. the vanishing order
at (1:0); this is how the point at infinity is carried through every operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import DegenerateModel, InvalidInput
from . import upoly
from .rational import parse_rational, rational_str


@dataclass(frozen=True)
class ProjPoint1:
    """A point (t0:s0) of P^1, normalized so the first nonzero coordinate is 1."""

    t0: Fraction
    s0: Fraction

    def __init__(self, t0, s0):
        t0, s0 = Fraction(t0), Fraction(s0)
        if not t0 and not s0:
            raise InvalidInput("(0:0) is not a point of P^1")
        if t0:
            t0, s0 = Fraction(1), s0 / t0
        else:
            s0 = Fraction(1)
        object.__setattr__(self, "t0", t0)
        object.__setattr__(self, "s0", s0)

    @property
    def is_infinity(self) -> bool:
        """True for (1:0), where s vanishes."""
        return self.s0 == 0

    def linear_form(self) -> "BinaryForm":
        """The linear form s0*t - t0*s vanishing exactly at this point."""
        return BinaryForm(1, (-self.t0, self.s0))

    def __str__(self) -> str:
        return f"({rational_str(self.t0)}:{rational_str(self.s0)})"


@dataclass(frozen=True, repr=False)
class BinaryForm:
    degree: int
    coeffs: tuple[Fraction, ...]

    def __init__(self, degree: int, coeffs: Iterable):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if degree < 0:
            raise InvalidInput(f"negative degree {degree}")
        if len(coeffs) != degree + 1:
            raise InvalidInput(
                f"a degree-{degree} binary form needs {degree + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", coeffs)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree, [0] * (degree + 1))

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BinaryForm":
        """c * t**i * s**j."""
        coeffs = [0] * (i + j + 1)
        coeffs[i] = c
        return cls(i + j, coeffs)

    @classmethod
    def from_poly(cls, poly: Sequence, degree: int) -> "BinaryForm":
        """Homogenize a univariate polynomial in t to the given degree."""
        poly = upoly.trim(poly)
        if len(poly) > degree + 1:
            raise InvalidInput(f"polynomial of degree {len(poly) - 1} exceeds form degree {degree}")
        return cls(degree, list(poly) + [0] * (degree + 1 - len(poly)))

    @classmethod
    def from_terms(cls, terms: dict[int, object], degree: int) -> "BinaryForm":
        """Build from ``{i: coefficient of t**i s**(degree-i)}``."""
        coeffs = [0] * (degree + 1)
        for i, c in terms.items():
            coeffs[i] = c
        return cls(degree, coeffs)

    # -- basic queries ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def dehomogenize(self) -> upoly.Poly:
        """f(t, 1) as a trimmed univariate polynomial."""
        return upoly.trim(self.coeffs)

    @property
    def s_exponent(self) -> int:
        """Largest e with s**e dividing f (the order at (1:0)); undefined for zero."""
        if self.is_zero:
            raise InvalidInput("the zero form has no finite vanishing order")
        return self.degree - upoly.degree(self.dehomogenize())

    def swap(self) -> "BinaryForm":
        """Apply the coordinate swap t <-> s."""
        return BinaryForm(self.degree, reversed(self.coeffs))

    def normalized(self) -> "BinaryForm":
        """Scale so the dehomogenized part is monic (s**e * monic(t))."""
        poly = self.dehomogenize()
        if not poly:
            return self
        return BinaryForm.from_poly(upoly.monic(poly), self.degree)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        return add(self, other)

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return add(self, -other)

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.degree, (-c for c in self.coeffs))

    def __mul__(self, other) -> "BinaryForm":
        if isinstance(other, BinaryForm):
            return mul(self, other)
        other = Fraction(other)
        return BinaryForm(self.degree, (other * c for c in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BinaryForm":
        if k < 0:
            raise ValueError("negative power of a form")
        return BinaryForm.from_poly(upoly.power(self.dehomogenize(), k), self.degree * k)

    def __call__(self, t, s) -> Fraction:
        t, s = Fraction(t), Fraction(s)
        acc = Fraction(0)
        # Horner in t/s is unusable at s=0; evaluate term by term.
        for i, c in enumerate(self.coeffs):
            if c:
                acc += c * t**i * s ** (self.degree - i)
        return acc

    def derivative_t(self) -> "BinaryForm":
        if self.degree == 0:
            return BinaryForm(0, [0])
        return BinaryForm(self.degree - 1, (i * self.coeffs[i] for i in range(1, self.degree + 1)))

    def substitute(self, mu: "BinaryForm", lam: "BinaryForm") -> "BinaryForm":
        """Compose with a base change (t:s) -> (mu(t,s) : lam(t,s)), both of one degree."""
        if mu.degree != lam.degree:
            raise InvalidInput("base change components must have equal degree")
        out = BinaryForm.zero(self.degree * mu.degree)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + c * (mu**i * lam ** (self.degree - i))
        return out

    # -- text -------------------------------------------------------------

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [rational_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "BinaryForm":
        try:
            degree = int(obj["degree"])
            coeffs = [parse_rational(c) for c in obj["coeffs"]]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed binary form: {obj!r}") from exc
        return cls(degree, coeffs)

    def __repr__(self) -> str:
        return f"BinaryForm({self.degree}, {self})"

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in (("t", i), ("s", self.degree - i)) if e
            )
            if not mono:
                terms.append(rational_str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{rational_str(c)}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def add(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    if f.degree != g.degree:
        raise InvalidInput(f"cannot add forms of degrees {f.degree} and {g.degree}")
    return BinaryForm(f.degree, (a + b for a, b in zip(f.coeffs, g.coeffs)))


def mul(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    return BinaryForm.from_poly(upoly.mul(f.dehomogenize(), g.dehomogenize()), f.degree + g.degree)


def evaluate(f: BinaryForm, p: ProjPoint1) -> Fraction:
    """Value of f at the normalized representative of p."""
    return f(p.t0, p.s0)


def exact_div(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """f / g, raising ArithmeticError unless g divides f exactly."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero form")
    if f.is_zero:
        return BinaryForm.zero(f.degree - g.degree)
    if f.s_exponent < g.s_exponent or f.degree < g.degree:
        raise ArithmeticError("division leaves a nonzero remainder")
    quot = upoly.exact_div(f.dehomogenize(), g.dehomogenize())
    return BinaryForm.from_poly(quot, f.degree - g.degree)


def divides(g: BinaryForm, f: BinaryForm) -> bool:
    try:
        exact_div(f, g)
    except ArithmeticError:
        return False
    return True


def vanishing_order(f: BinaryForm, p: ProjPoint1) -> int:
    """Number of times the linear form of p divides f."""
    if f.is_zero:
        raise InvalidInput("vanishing order of the zero form is undefined")
    if p.is_infinity:
        return f.s_exponent
    ell = p.linear_form()
    k = 0
    while not evaluate(f, p):
        f = exact_div(f, ell)
        k += 1
    return k


def gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Greatest common divisor, normalized as s**e times a monic polynomial in t."""
    if f.is_zero and g.is_zero:
        raise InvalidInput("gcd of two zero forms is undefined")
    if f.is_zero:
        return g.normalized()
    if g.is_zero:
        return f.normalized()
    e = min(f.s_exponent, g.s_exponent)
    h = upoly.gcd(f.dehomogenize(), g.dehomogenize())
    return BinaryForm.from_poly(h, upoly.degree(h) + e)


def squarefree_stratify(f: BinaryForm) -> list[tuple[BinaryForm, int]]:
    """Squarefree decomposition over Q, covering (1:0) through the power of s.

    Returns pairwise coprime, normalized squarefree factors with multiplicities;
    the product of factor**mult equals f up to a nonzero constant.
    """
    if f.is_zero:
        raise InvalidInput("cannot stratify the zero form")
    out = [
        (BinaryForm.from_poly(p, upoly.degree(p)), k)
        for p, k in upoly.squarefree_decomposition(f.dehomogenize())
    ]
    e = f.s_exponent
    if e:
        out.append((BINARY_S, e))
    return sorted(out, key=lambda fk: (fk[0].degree, fk[0].coeffs, fk[1]))


def reassemble(strata: Sequence[tuple[BinaryForm, int]], degree: int | None = None) -> BinaryForm:
    """Product of factor**mult over strata (the monic part of a stratified form)."""
    out = BinaryForm(0, [1])
    for factor, k in strata:
        out = out * factor**k
    if degree is not None and out.degree != degree:
        raise InvalidInput("strata do not account for the full degree")
    return out


def discriminant(A: BinaryForm, B: BinaryForm, *, allow_non_k3: bool = False) -> BinaryForm:
    """4A^3 + 27B^2.

    Degrees must be (8, 12).  With ``allow_non_k3`` any (4k, 6k) is accepted,
    e.g. (4, 6) for a rational elliptic surface.
    """
    k, r = divmod(A.degree, 4)
    if r or k < 1 or B.degree != 6 * k:
        raise InvalidInput(f"Weierstrass degrees must be (4k, 6k); got ({A.degree}, {B.degree})")
    if k != 2 and not allow_non_k3:
        raise InvalidInput(f"a K3 Weierstrass model has degrees (8, 12); got ({A.degree}, {B.degree})")
    delta = 4 * A**3 + 27 * B**2
    if delta.is_zero:
        raise DegenerateModel("degenerate model: discriminant 4A^3 + 27B^2 vanishes identically")
    return delta


BINARY_T = BinaryForm(1, (0, 1))
BINARY_S = BinaryForm(1, (1, 0))
BINARY_ONE = BinaryForm(0, (1,))
