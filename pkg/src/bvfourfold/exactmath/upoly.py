"""Dense univariate polynomials over Q.

A polynomial is a tuple of :class:`~fractions.Fraction`, index i holding the
coefficient of x**i.  Tuples are always trimmed: no trailing zeros, and the
zero polynomial is ``()``.  Binary forms dehomogenize to exactly this shape.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Poly = tuple[Fraction, ...]

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)


def trim(coeffs: Sequence) -> Poly:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(Fraction(c) for c in coeffs[:n])


def degree(p: Poly) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c) -> Poly:
    c = Fraction(c)
    if not c:
        return ZERO
    return tuple(c * a for a in p)


def _integer_content(p: Poly) -> tuple[list[int], int]:
    den = lcm(*(c.denominator for c in p)) if p else 1
    return [c.numerator * (den // c.denominator) for c in p], den


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    # Multiply over Z and divide once; much cheaper than Fraction arithmetic.
    ip, dp = _integer_content(p)
    iq, dq = _integer_content(q)
    out = [0] * (len(ip) + len(iq) - 1)
    for i, a in enumerate(ip):
        if a:
            for j, b in enumerate(iq):
                out[i + j] += a * b
    den = dp * dq
    return trim([Fraction(c, den) for c in out])


def power(p: Poly, k: int) -> Poly:
    result = ONE
    base = p
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def derivative(p: Poly) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def monic(p: Poly) -> Poly:
    if not p:
        return p
    lead = p[-1]
    return tuple(c / lead for c in p)


def divmod_(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    if len(rem) - 1 < dq:
        return ZERO, trim(rem)
    quot = [Fraction(0)] * (len(rem) - dq)
    for k in range(len(rem) - 1 - dq, -1, -1):
        c = rem[k + dq] / lead
        quot[k] = c
        if c:
            for j in range(dq + 1):
                rem[k + j] -= c * q[j]
    return trim(quot), trim(rem[:dq])


def exact_div(p: Poly, q: Poly) -> Poly:
    quot, rem = divmod_(p, q)
    if rem:
        raise ArithmeticError("division leaves a nonzero remainder")
    return quot


def _primitive(coeffs: list[int]) -> list[int]:
    from math import gcd

    g = 0
    for c in coeffs:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        coeffs = [c // g for c in coeffs]
    if coeffs and coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    return coeffs


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b over Z (both trimmed, deg a >= deg b)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        la = a[-1]
        a = [lb * c for c in a]
        for j in range(db + 1):
            a[shift + j] -= la * b[j]
        while a and a[-1] == 0:
            a.pop()
    return a


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd; gcd of two zero polynomials is rejected."""
    if not p and not q:
        raise ValueError("gcd of two zero polynomials is undefined")
    if not p:
        return monic(q)
    if not q:
        return monic(p)
    # Primitive PRS over Z keeps coefficient growth in check.
    a = _primitive(_integer_content(p)[0])
    b = _primitive(_integer_content(q)[0])
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        a, b = b, _primitive(r) if r else []
    return monic(trim(a))


def evaluate(p: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic squarefree, pairwise coprime factors with multiplicities.

    Constant input gives ``[]``.
    """
    if not p:
        raise ValueError("zero polynomial has no squarefree decomposition")
    f = monic(p)
    if len(f) == 1:
        return []
    out = []
    df = derivative(f)
    a = gcd(f, df)
    b = exact_div(f, a)
    c = exact_div(df, a)
    d = sub(c, derivative(b))
    i = 1
    while len(b) > 1:
        a = gcd(b, d) if d else monic(b)
        if len(a) > 1:
            out.append((a, i))
        b = exact_div(b, a)
        c = exact_div(d, a) if d else ZERO
        d = sub(c, derivative(b))
        i += 1
    return out
