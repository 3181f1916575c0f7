"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from src.algebra.coeff import RatFunc, sum_scalars
from src.algebra.torus import canonicalize, from_words

nonzero_ints = st.integers(-3, 3).filter(bool)

monomials = st.builds(RatFunc.monomial, nonzero_ints, st.integers(-2, 2), st.integers(-2, 2))

laurent_scalars = st.lists(monomials, min_size=1, max_size=3).map(sum_scalars)

scalars = st.tuples(laurent_scalars, laurent_scalars.filter(bool)).map(lambda t: t[0] / t[1])


def vectors(bound: int = 4):
    return st.tuples(st.integers(-bound, bound), st.integers(-bound, bound)).filter(lambda v: v != (0, 0))


def curve_classes(bound: int = 4):
    return vectors(bound).map(canonicalize)


def words(bound: int = 2, max_size: int = 3, min_size: int = 1):
    return st.lists(curve_classes(bound), min_size=min_size, max_size=max_size).map(tuple)


def skein_elements(bound: int = 2, max_length: int = 2):
    term = st.tuples(words(bound, max_length), monomials)
    return st.lists(term, min_size=1, max_size=2).map(from_words)


@st.composite
def multi_term_elements(draw, bound: int = 2, max_length: int = 2):
    """At least two sorted words whose coefficients all differ."""
    sorted_words = words(bound, max_length).map(lambda w: tuple(sorted(w)))
    basis = draw(st.lists(sorted_words, min_size=2, max_size=3, unique=True))
    exponents = draw(st.lists(st.integers(-2, 2), min_size=len(basis), max_size=len(basis)))
    terms = [(w, RatFunc.monomial(i + 1, e, 0)) for i, (w, e) in enumerate(zip(basis, exponents))]
    return from_words(terms)
