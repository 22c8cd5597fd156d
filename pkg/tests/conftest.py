import random
from fractions import Fraction

import pytest

from denvelope.algebra.poly import Poly
from denvelope.algebra.ratfun import RatFun

SEED = 20260817


@pytest.fixture
def rng():
    return random.Random(SEED)


def rand_fraction(rng, span=6):
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def rand_poly(rng, max_deg=3, span=6):
    deg = rng.randint(0, max_deg)
    coeffs = [rand_fraction(rng, span) for _ in range(deg + 1)]
    while not coeffs[-1]:
        coeffs[-1] = Fraction(rng.randint(1, span))
    return Poly(coeffs)


def rand_ratfun(rng, max_deg=3, nonconstant=False):
    while True:
        r = RatFun(rand_poly(rng, max_deg), rand_poly(rng, max_deg))
        if not nonconstant or r.degree() >= 1:
            return r


def rand_mobius(rng, span=5):
    while True:
        a, b, c, d = (rng.randint(-span, span) for _ in range(4))
        if a * d - b * c:
            return RatFun(Poly.of(b, a), Poly.of(d, c))
