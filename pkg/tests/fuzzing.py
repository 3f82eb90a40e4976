"""Random generators shared by the property and acceptance tests."""

import random
from fractions import Fraction

from sacdecide.polycore import QQ, Poly2

X = Poly2.x()
Y = Poly2.y()


def random_affine(rng, coeff_range=2):
    """An affine automorphism ``(a x + b y + e, c x + d y + f)`` with ``ad - bc != 0``."""
    while True:
        a, b, c, d = (rng.randint(-coeff_range, coeff_range) for _ in range(4))
        if a * d - b * c:
            break
    e, f = rng.randint(-2, 2), rng.randint(-2, 2)
    return (X * a + Y * b + e, X * c + Y * d + f)


def random_triangular(rng):
    k = rng.randint(2, 3)
    c = rng.choice([-2, -1, 1, 2])
    return (X + (Y**k) * c, Y)


TAU = (X, X * Y)


def compose(outer, inner):
    """``outer o inner`` as maps: ``x -> outer_x(inner_x, inner_y)``."""
    return tuple(p.substitute(inner[0], inner[1]) for p in outer)


def degree_sum(pair):
    return pair[0].total_degree() + pair[1].total_degree()


def random_sac_product(rng, max_degree_sum=14, steps=(2, 7), triangular=True):
    """A random product of simple affine contractions, kept with its factor list.

    Factors are applied on either side; a factor that would push the degree
    sum past ``max_degree_sum`` is skipped.
    """
    pair = (X, Y)
    factors = []
    for _ in range(rng.randint(*steps)):
        roll = rng.random()
        if roll < 0.45:
            sigma = TAU
        elif triangular and roll < 0.55:
            sigma = random_triangular(rng)
        else:
            sigma = random_affine(rng)
        outer = rng.random() < 0.5
        cand = compose(sigma, pair) if outer else compose(pair, sigma)
        if degree_sum(cand) > max_degree_sum or min(p.total_degree() for p in cand) < 1:
            continue
        pair = cand
        factors.append((sigma, outer))
    return pair, factors


def rebuild(factors):
    pair = (X, Y)
    for sigma, outer in factors:
        pair = compose(sigma, pair) if outer else compose(pair, sigma)
    return pair


def random_poly(rng, max_degree=4, coeff_range=3, max_terms=6):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_degree)
        i = rng.randint(0, d)
        terms[(i, d - i)] = Fraction(rng.randint(-coeff_range, coeff_range))
    return Poly2(terms, QQ)


def seeded(seed):
    return random.Random(seed)


def _monic(rng, deg):
    m = X**deg
    for i in range(deg):
        m = m + (X**i) * rng.randint(-3, 3)
    return m


def random_multiplier(rng):
    """``(x, y*m(x))`` with ``m`` monic, often without rational roots.

    Over the algebraic closure this is a product of shifted copies of tau, one
    per root of ``m``; the parameters are conjugate algebraic numbers.  A third
    of the time ``m`` is a product of two quadratics, a reducible polynomial
    the tower only learns about by splitting.
    """
    if rng.random() < 1 / 3:
        return (X, Y * _monic(rng, 2) * _monic(rng, 2))
    return (X, Y * _monic(rng, rng.randint(2, 3)))


def random_algebraic_product(rng, max_degree_sum=12, steps=(2, 5), multipliers=1):
    """Like :func:`random_sac_product` but with at most ``multipliers`` factors
    ``(x, y*m(x))``; each one can force a tower up to the splitting field of ``m``.
    """
    pair = (X, Y)
    factors = []
    left = multipliers
    for _ in range(rng.randint(*steps)):
        roll = rng.random()
        if roll < 0.35 and left:
            left -= 1
            sigma = random_multiplier(rng)
        elif roll < 0.55:
            sigma = TAU
        else:
            sigma = random_affine(rng)
        outer = rng.random() < 0.5
        cand = compose(sigma, pair) if outer else compose(pair, sigma)
        if degree_sum(cand) > max_degree_sum or min(p.total_degree() for p in cand) < 1:
            continue
        pair = cand
        factors.append((sigma, outer))
    return pair, factors
