"""
Seeded random inputs for the verification suites.

Every check draws from its own generator

    Generator(PCG64(SeedSequence(entropy=seed, spawn_key=(crc32(name),))))

so that a check's inputs depend only on the 64-bit seed and the check
name, never on which other checks ran or in what order.
"""

import zlib
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from src.algebra.coeff import DomainError, RatFunc, Scalar
from src.algebra.torus import GL2Matrix, REFLECTION, ROTATION, SHEAR, SkeinElement, Vector, Word, canonicalize, from_words

PRNG_ID = "numpy-pcg64-seedsequence/v1"
SEED_LIMIT = 1 << 64


def check_rng(seed: int, name: str) -> np.random.Generator:
    if not 0 <= int(seed) < SEED_LIMIT:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(zlib.crc32(name.encode("utf-8")),))
    return np.random.Generator(np.random.PCG64(ss))


def _int(rng: np.random.Generator, low: int, high: int) -> int:
    return int(rng.integers(low, high, endpoint=True))


def random_vector(rng: np.random.Generator, bound: int, nonzero: bool = True) -> Vector:
    while True:
        x = (_int(rng, -bound, bound), _int(rng, -bound, bound))
        if x != (0, 0) or not nonzero:
            return x


def random_word(rng: np.random.Generator, bound: int, max_length: int, min_length: int = 1) -> Word:
    length = _int(rng, min_length, max_length)
    return tuple(canonicalize(random_vector(rng, bound)) for _ in range(length))


def random_monomial(rng: np.random.Generator, max_degree: int = 2, with_v: bool = True) -> RatFunc:
    coeff = 0
    while coeff == 0:
        coeff = _int(rng, -3, 3)
    es = _int(rng, -max_degree, max_degree)
    ev = _int(rng, -max_degree, max_degree) if with_v else 0
    return RatFunc.monomial(coeff, es, ev)


def random_element(
    rng: np.random.Generator, bound: int, max_length: int, max_terms: int = 2, with_v: bool = True
) -> SkeinElement:
    """Normal form of a short random combination of words."""
    terms: List[Tuple[Word, Scalar]] = [
        (random_word(rng, bound, max_length), random_monomial(rng, 1, with_v))
        for _ in range(_int(rng, 1, max_terms))
    ]
    return from_words(terms)


def random_polynomial(rng: np.random.Generator, terms: int = 3, max_degree: int = 2) -> RatFunc:
    total = RatFunc(0)
    for _ in range(terms):
        total = total + random_monomial(rng, max_degree) * Fraction(1, _int(rng, 1, 4))
    return total


def random_scalar(rng: np.random.Generator) -> RatFunc:
    """Ratio of two sparse Laurent polynomials, never zero."""
    while True:
        num = random_polynomial(rng)
        den = random_polynomial(rng)
        if num and den:
            return num / den


def random_point(rng: np.random.Generator) -> Tuple[Fraction, Fraction]:
    def coordinate() -> Fraction:
        while True:
            value = Fraction(_int(rng, -9, 9), _int(rng, 1, 5))
            if value:
                return value

    return coordinate(), coordinate()


_GL2_GENERATORS = (ROTATION, SHEAR, REFLECTION, ROTATION.inverse(), SHEAR.inverse())


def random_gl2(rng: np.random.Generator, max_length: int = 4) -> GL2Matrix:
    g = GL2Matrix.identity()
    for _ in range(_int(rng, 1, max_length)):
        g = _GL2_GENERATORS[_int(rng, 0, len(_GL2_GENERATORS) - 1)] @ g
    return g
