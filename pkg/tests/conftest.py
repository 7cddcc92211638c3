import random
from fractions import Fraction

import pytest
import sympy as sp

from bvfourfold.errors import DegenerateModel, NonMinimalModel
from bvfourfold.exactmath import BinaryForm
from bvfourfold.weierstrass import make_model

T, S = sp.symbols("t s")


def rand_rational(rng, num=9, den=4):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_binary(rng, degree, num=9, den=4):
    return BinaryForm(degree, [rand_rational(rng, num, den) for _ in range(degree + 1)])


def to_sympy(f: BinaryForm):
    """Oracle view of a binary form as a sympy polynomial in t, s."""
    return sp.Add(*[sp.Rational(c.numerator, c.denominator) * T**i * S ** (f.degree - i) for i, c in enumerate(f.coeffs)])


def from_sympy(expr, degree):
    poly = sp.Poly(sp.expand(expr), T, S)
    coeffs = [0] * (degree + 1)
    for (i, j), c in poly.terms():
        assert i + j == degree
        coeffs[i] = Fraction(int(c.p), int(c.q))
    return BinaryForm(degree, coeffs)


def random_minimal_model(rng):
    """A random minimal model, often with prescribed zeros of A and B at t = 0 and s = 0."""
    while True:
        at, bt = rng.randint(0, 4), rng.randint(0, 6)
        as_, bs = rng.randint(0, 4), rng.randint(0, 6)
        if rng.random() < 0.4:
            at = bt = 0
        if rng.random() < 0.4:
            as_ = bs = 0
        if at + as_ > 8 or bt + bs > 12:
            continue
        A = BinaryForm.monomial(at, as_) * rand_binary(rng, 8 - at - as_)
        B = BinaryForm.monomial(bt, bs) * rand_binary(rng, 12 - bt - bs)
        try:
            return make_model(A, B)
        except (DegenerateModel, NonMinimalModel):
            continue


def generic_model(rng):
    while True:
        try:
            return make_model(rand_binary(rng, 8), rand_binary(rng, 12))
        except (DegenerateModel, NonMinimalModel):
            continue


@pytest.fixture
def rng():
    return random.Random(12345)
