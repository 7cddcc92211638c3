"""Sparse homogeneous forms in several variables, and bihomogeneous forms on P^2 x P^1.

Terms live in plain dicts keyed by exponent tuples.  Products are computed over
the integers after clearing denominators, which is the difference between
seconds and minutes for the bidegree (36, 24) discriminants.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import lcm
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from ..errors import InvalidInput

try:  # GMP multiplication is ~30x faster on the packed discriminant operands
    from gmpy2 import mpz as _BIGINT
except ImportError:  # pragma: no cover
    _BIGINT = int
from .binary import BinaryForm
from .rational import parse_rational, rational_str


def _clean(terms: Mapping) -> dict:
    # Fraction() on a Fraction still renormalizes; skip it on the hot path
    return {k: v if type(v) is Fraction else Fraction(v) for k, v in terms.items() if v}


def _int_scaled(terms: Mapping) -> tuple[dict, int]:
    den = lcm(*(c.denominator for c in terms.values())) if terms else 1
    return {k: c.numerator * (den // c.denominator) for k, c in terms.items()}, den


def _convolve(a: Mapping, b: Mapping, combine) -> dict:
    ia, da = _int_scaled(a)
    ib, db = _int_scaled(b)
    acc: dict = defaultdict(int)
    items_b = list(ib.items())
    for ka, ca in ia.items():
        for kb, cb in items_b:
            acc[combine(ka, kb)] += ca * cb
    den = da * db
    return {k: Fraction(v, den) for k, v in acc.items() if v}


def _pack(coeffs: Mapping[int, int], slots: int, width: int):
    """Kronecker encoding: sum of c * 2^(8 * width * slot), built through byte buffers."""
    pos, neg = bytearray(slots * width), bytearray(slots * width)
    for idx, c in coeffs.items():
        buf = pos if c > 0 else neg
        buf[idx * width:(idx + 1) * width] = abs(c).to_bytes(width, "little")
    return _BIGINT(int.from_bytes(pos, "little")) - _BIGINT(int.from_bytes(neg, "little"))


def _kronecker_product(ia: Mapping[int, int], ib: Mapping[int, int], slots: int) -> dict[int, int]:
    """Product of two integer polynomials given by slot index, via one big-integer multiplication.

    Slot indices must add without carries across the packed exponents.
    """
    if not ia or not ib:
        return {}
    bound = min(len(ia), len(ib)) * max(map(abs, ia.values())) * max(map(abs, ib.values()))
    width = (bound.bit_length() + 2 + 7) // 8
    product = _pack(ia, slots, width) * _pack(ib, slots, width)
    half = 1 << (8 * width - 1)
    bias = int.from_bytes(b"\x00" * (width - 1) + b"\x80", "little")
    bias_all = int.from_bytes(bias.to_bytes(width, "little") * slots, "little")
    raw = int(product + bias_all).to_bytes(slots * width, "little")
    out = {}
    for idx in range(slots):
        v = int.from_bytes(raw[idx * width:(idx + 1) * width], "little") - half
        if v:
            out[idx] = v
    return out


def _integer_point(point: Sequence) -> tuple[list[int], int]:
    """Integer coordinates X and a common denominator L with point = X / L."""
    point = [Fraction(v) for v in point]
    den = lcm(*(v.denominator for v in point))
    return [v.numerator * (den // v.denominator) for v in point], den


def _power_table(x: int, n: int) -> list[int]:
    out = [1]
    for _ in range(n):
        out.append(out[-1] * x)
    return out


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _add_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class Form:
    """Homogeneous polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "degree", "_terms")

    def __init__(self, nvars: int, degree: int, terms: Mapping[tuple, object]):
        terms = _clean(terms)
        for exp in terms:
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise InvalidInput(f"bad exponent {exp} for a form in {nvars} variables")
            if sum(exp) != degree:
                raise InvalidInput(f"exponent {exp} does not sum to the degree {degree}")
        self.nvars = nvars
        self.degree = degree
        self._terms = {tuple(k): v for k, v in terms.items()}

    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @classmethod
    def constant(cls, nvars: int, c=1) -> "Form":
        return cls(nvars, 0, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Form":
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, 1, {tuple(exp): 1})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (self.nvars, self.degree, self._terms) == (other.nvars, other.degree, other._terms)

    def __hash__(self) -> int:
        return hash((self.nvars, self.degree, frozenset(self._terms.items())))

    def __add__(self, other: "Form") -> "Form":
        if (self.nvars, self.degree) != (other.nvars, other.degree):
            raise InvalidInput("cannot add forms of different shape")
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, 0) + v
        return type(self)(self.nvars, self.degree, acc)

    def __neg__(self) -> "Form":
        return type(self)(self.nvars, self.degree, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Form):
            if other.nvars != self.nvars:
                raise InvalidInput("cannot multiply forms in different numbers of variables")
            return type(self)(self.nvars, self.degree + other.degree, _convolve(self._terms, other._terms, _add_exp))
        c = Fraction(other)
        return type(self)(self.nvars, self.degree, {k: c * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Form":
        result = type(self).constant(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __call__(self, *point) -> Fraction:
        if len(point) != self.nvars:
            raise InvalidInput(f"expected {self.nvars} coordinates")
        point = [Fraction(x) for x in point]
        acc = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for x, e in zip(point, exp):
                if e:
                    term *= x**e
            acc += term
        return acc

    def partial(self, i: int) -> "Form":
        if self.degree == 0:
            return type(self)(self.nvars, 0, {})
        out = {}
        for exp, c in self._terms.items():
            if exp[i]:
                new = list(exp)
                new[i] -= 1
                out[tuple(new)] = c * exp[i]
        return type(self)(self.nvars, self.degree - 1, out)

    def gradient(self, point: Sequence) -> list[Fraction]:
        return [self.partial(i)(*point) for i in range(self.nvars)]

    def hessian(self, point: Sequence) -> list[list[Fraction]]:
        firsts = [self.partial(i) for i in range(self.nvars)]
        return [[firsts[i].partial(j)(*point) for j in range(self.nvars)] for i in range(self.nvars)]

    def restrict_to_line(self, p: Sequence, q: Sequence) -> BinaryForm:
        """Pull back along (t:s) -> t*p + s*q, giving a binary form of the same degree."""
        P, dp = _integer_point(p)
        Q, dq = _integer_point(q)
        ic, den = _int_scaled(self._terms)
        d = self.degree
        # coordinate v becomes the integer linear form Q[v]*s + P[v]*t (index = power of t)
        powers = []
        for pv, qv in zip(P, Q):
            table = [[1]]
            for _ in range(d):
                prev = table[-1]
                nxt = [0] * (len(prev) + 1)
                for i, c in enumerate(prev):
                    nxt[i] += c * qv
                    nxt[i + 1] += c * pv
                table.append(nxt)
            powers.append(table)
        acc = [0] * (d + 1)
        for exp, c in ic.items():
            poly = [c]
            for v, e in enumerate(exp):
                if e:
                    poly = _int_mul(poly, powers[v][e])
            for i, x in enumerate(poly):
                acc[i] += x
        # undo the scaling: t carries 1/dp, s carries 1/dq
        return BinaryForm(d, (Fraction(acc[i], den * dp**i * dq ** (d - i)) for i in range(d + 1)))

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self._terms.items(), reverse=True)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [{"exp": list(exp), "c": rational_str(c)} for exp, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj, nvars: int | None = None) -> "Form":
        try:
            degree = int(obj["degree"])
            raw = [(tuple(int(e) for e in t["exp"]), parse_rational(t["c"])) for t in obj["terms"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed form: {obj!r}") from exc
        if nvars is None:
            if not raw:
                raise InvalidInput("cannot infer the number of variables of an empty form")
            nvars = len(raw[0][0])
        terms: dict = defaultdict(Fraction)
        for exp, c in raw:
            terms[exp] += c
        return cls(nvars, degree, terms)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(nvars={self.nvars}, degree={self.degree}, terms={len(self._terms)})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(exp) if e)
            if not mono:
                parts.append(rational_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{rational_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class TernaryForm(Form):
    """Form in (x0:x1:x2)."""

    __slots__ = ()

    def __init__(self, nvars: int, degree: int, terms: Mapping[tuple, object]):
        if nvars != 3:
            raise InvalidInput("a ternary form has exactly three variables")
        super().__init__(nvars, degree, terms)

    @classmethod
    def from_terms(cls, degree: int, terms: Mapping[tuple, object]) -> "TernaryForm":
        return cls(3, degree, terms)

    @classmethod
    def from_json(cls, obj, nvars: int | None = 3) -> "TernaryForm":
        return super().from_json(obj, 3)


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given total degree, in descending lex order."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        out.extend((first,) + rest for rest in monomials(nvars - 1, degree - first))
    return out


class BiForm:
    """Bihomogeneous form on P^2 x P^1, keyed by ((i, j, k), (a, b))."""

    __slots__ = ("bidegree", "_terms")

    def __init__(self, bidegree: tuple[int, int], terms: Mapping[tuple, object]):
        d1, d2 = bidegree
        terms = _clean(terms)
        for (tern, bin_) in terms:
            if len(tern) != 3 or len(bin_) != 2 or sum(tern) != d1 or sum(bin_) != d2:
                raise InvalidInput(f"term {(tern, bin_)} is not of bidegree {bidegree}")
        self.bidegree = (d1, d2)
        self._terms = terms

    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @classmethod
    def product(cls, tern: Form, bin_: BinaryForm) -> "BiForm":
        """The bihomogeneous product f(x) * g(t:s)."""
        terms = {}
        for exp, c in tern.terms.items():
            for i, b in enumerate(bin_.coeffs):
                if b:
                    terms[(exp, (i, bin_.degree - i))] = c * b
        return cls((tern.degree, bin_.degree), terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiForm):
            return NotImplemented
        return self.bidegree == other.bidegree and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.bidegree, frozenset(self._terms.items())))

    def __add__(self, other: "BiForm") -> "BiForm":
        if self.bidegree != other.bidegree:
            raise InvalidInput(f"cannot add bidegrees {self.bidegree} and {other.bidegree}")
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, 0) + v
        return BiForm(self.bidegree, acc)

    def __neg__(self) -> "BiForm":
        return BiForm(self.bidegree, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "BiForm") -> "BiForm":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BiForm):
            bideg = (self.bidegree[0] + other.bidegree[0], self.bidegree[1] + other.bidegree[1])
            return BiForm(bideg, _bi_product(self._terms, other._terms, bideg))
        c = Fraction(other)
        return BiForm(self.bidegree, {k: c * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BiForm":
        result = BiForm((0, 0), {((0, 0, 0), (0, 0)): 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __call__(self, x: Sequence, ts: Sequence) -> Fraction:
        return self.at_ternary_point(x)(*ts)

    def at_ternary_point(self, x: Sequence) -> BinaryForm:
        """Specialize (x0:x1:x2) to a fixed point: a binary form of degree d2."""
        X, dx = _integer_point(x)
        ic, den = _int_scaled(self._terms)
        pw = [_power_table(v, self.bidegree[0]) for v in X]
        coeffs = [0] * (self.bidegree[1] + 1)
        for ((i, j, k), (a, _b)), c in ic.items():
            coeffs[a] += c * pw[0][i] * pw[1][j] * pw[2][k]
        scale = den * dx ** self.bidegree[0]
        return BinaryForm(self.bidegree[1], (Fraction(c, scale) for c in coeffs))

    def on_line_at(self, p: Sequence, q: Sequence, ts: Sequence) -> BinaryForm:
        """Specialize (t:s) to a point and restrict x to the line (u:v) -> u*p + v*q."""
        T, dt = _integer_point(ts)
        ic, den = _int_scaled(self._terms)
        pt, ps = _power_table(T[0], self.bidegree[1]), _power_table(T[1], self.bidegree[1])
        collapsed: dict = defaultdict(int)
        for (tern, (a, b)), c in ic.items():
            collapsed[tern] += c * pt[a] * ps[b]
        scale = den * dt ** self.bidegree[1]
        return Form(3, self.bidegree[0], {k: Fraction(v, scale) for k, v in collapsed.items()}).restrict_to_line(p, q)

    def to_json(self) -> dict:
        return {
            "bidegree": list(self.bidegree),
            "terms": [
                {"exp": [list(tern), list(bin_)], "c": rational_str(c)}
                for (tern, bin_), c in sorted(self._terms.items(), reverse=True)
            ],
        }

    def __repr__(self) -> str:
        return f"BiForm(bidegree={self.bidegree}, terms={len(self._terms)})"


def _bi_product(a: Mapping, b: Mapping, bideg: tuple[int, int]) -> dict:
    """Dehomogenize to (x1, x2, t) exponents, pack, multiply once, unpack."""
    d1, d2 = bideg
    n1, n2 = d1 + 1, d2 + 1
    ia, da = _int_scaled(a)
    ib, db = _int_scaled(b)

    def index(key):
        (_i, j, k), (t, _s) = key
        return (j * n1 + k) * n2 + t

    prod = _kronecker_product(
        {index(key): c for key, c in ia.items()}, {index(key): c for key, c in ib.items()}, n1 * n1 * n2
    )
    den = da * db
    out = {}
    for idx, v in prod.items():
        rest, t = divmod(idx, n2)
        j, k = divmod(rest, n1)
        out[((d1 - j - k, j, k), (t, d2 - t))] = Fraction(v, den)
    return out


def ternary_from_monomials(degree: int, coeffs: Iterable) -> TernaryForm:
    """Pair coefficients with :func:`monomials` order."""
    return TernaryForm(3, degree, dict(zip(monomials(3, degree), coeffs)))
