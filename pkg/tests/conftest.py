import random
from fractions import Fraction

import pytest

from starmorita.observables import PolyObservable, SymplecticVectorSpace
from starmorita.scalars import GaussianRational, LambdaSeries


@pytest.fixture
def plane():
    return SymplecticVectorSpace(1)


@pytest.fixture
def qp(plane):
    return plane.coordinate(0), plane.coordinate(1)


def random_gaussian(rng: random.Random, span: int = 3) -> GaussianRational:
    return GaussianRational(
        Fraction(rng.randint(-span, span), rng.randint(1, 3)),
        Fraction(rng.randint(-span, span), rng.randint(1, 3)),
    )


def random_series(rng: random.Random, max_power: int = 2, order=None) -> LambdaSeries:
    coeffs = [random_gaussian(rng) for _ in range(rng.randint(0, max_power + 1))]
    return LambdaSeries(coeffs, order)


def random_poly(
    space: SymplecticVectorSpace,
    rng: random.Random,
    max_degree: int = 3,
    n_terms: int = 4,
    lambda_free: bool = True,
    order=None,
) -> PolyObservable:
    terms = {}
    for _ in range(rng.randint(1, n_terms)):
        exp = [0] * space.dim
        for _ in range(rng.randint(0, max_degree)):
            exp[rng.randrange(space.dim)] += 1
        coeff = (
            LambdaSeries.constant(random_gaussian(rng), order)
            if lambda_free
            else random_series(rng, order=order)
        )
        key = tuple(exp)
        terms[key] = terms.get(key, LambdaSeries.zero(order)) + coeff
    return PolyObservable(space, terms)
