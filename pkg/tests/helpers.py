"""Shared test helpers: spec shorthand and seeded random elements."""

import random

from galcas.algebra import AlgebraSpec, HalfInt, generators
from galcas.rational import Q
from galcas.uea import UEAElement, normal_order


def random_coeff(rng: random.Random):
    return Q(rng.randint(-9, 9) or 1, rng.randint(1, 5))


def random_element(rng: random.Random, spec, terms: int = 3, max_degree: int = 2) -> UEAElement:
    """Sum of a few random words of degree <= max_degree, brought to normal order."""
    gens = generators(spec)
    words = {}
    for _ in range(terms):
        word = tuple(rng.choice(gens) for _ in range(rng.randint(0, max_degree)))
        words[word] = random_coeff(rng)
    return normal_order(words, spec)


def make_spec(l, d, extended=True, eta=None) -> AlgebraSpec:
    return AlgebraSpec(HalfInt.parse(l), d, extended, eta)
