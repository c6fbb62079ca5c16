import random
from fractions import Fraction

import pytest

from hypsearch.exactalg import Poly
from hypsearch.hyperseries import FamilySpec


def random_rational(rng: random.Random, max_num=9, max_den=4) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def random_poly(rng: random.Random, degree: int, max_num=9, max_den=4) -> Poly:
    coeffs = [random_rational(rng, max_num, max_den) for _ in range(degree)]
    lead = Fraction(0)
    while lead == 0:
        lead = random_rational(rng, max_num, max_den)
    return Poly(coeffs + [lead])


def random_search_family(rng: random.Random, max_a=2, bound=3, den=2) -> FamilySpec:
    return FamilySpec.search_form(
        rng.randint(1, max_a),
        rng.randint(-bound, bound),
        rng.randint(-bound, bound),
        Fraction(rng.randint(-bound * den, bound * den), den),
        Fraction(rng.randint(-bound * den, bound * den), den),
    )


@pytest.fixture
def rng():
    return random.Random(20080222)
