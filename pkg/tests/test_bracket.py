import itertools

import pytest
from hypothesis import given

from src.algebra.bracket import (
    BracketElement,
    cheb,
    cheb_functional_check,
    cheb_generating_check,
    cheb_log_identity_check,
    cheb_product_check,
    e_commutator,
    e_generator,
    e_mul,
    e_power_check,
    e_relation_rhs,
    parallel_check,
    phi_map,
)
from src.algebra.coeff import DomainError, S, V, delta
from src.algebra.torus import SkeinElement, generator, multiply
from tests.strategies import skein_elements

pytestmark = pytest.mark.unit

e = e_generator


class TestChebyshev:
    def test_low_degrees(self):
        assert cheb(0, "T").coeffs == [2]
        assert cheb(0, "S").coeffs == [1]
        assert cheb(1, "T").coeffs == [0, 1]
        assert cheb(2, "T").coeffs == [-2, 0, 1]

    def test_render(self):
        assert cheb(2, "T").render() == "x^2 - 2"
        assert cheb(2, "S").render() == "x^2 - 1"
        assert cheb(3, "T").render() == "x^3 - 3*x"
        assert cheb(4, "s").degree == 4

    def test_rejects(self):
        with pytest.raises(DomainError):
            cheb(2, "U")
        with pytest.raises(DomainError):
            cheb(-1)

    @pytest.mark.parametrize("n", range(0, 8))
    def test_functional_equations(self, n):
        assert cheb_functional_check(n)

    @pytest.mark.parametrize("m,n", list(itertools.product(range(5), repeat=2)))
    def test_product_formula(self, m, n):
        assert cheb_product_check(m, n)

    def test_series_identities(self):
        assert cheb_log_identity_check(12)
        assert cheb_generating_check(10)

    def test_log_order_must_be_positive(self):
        with pytest.raises(DomainError):
            cheb_log_identity_check(0)


class TestBracketAlgebra:
    def test_parallel_square(self):
        product = e_mul(e((1, 0)), e((1, 0)))
        assert product == e((2, 0)) + BracketElement(2)
        assert product.render() == "e[2,0] + 2"

    def test_zero_vector_is_two(self):
        assert e((0, 0)) == BracketElement(2)

    def test_basis_product(self):
        product = e((1, 0)) * e((0, 1))
        assert product.coefficient((1, 1)) == S
        assert product.coefficient((1, -1)) == S**-1

    def test_commutators(self):
        box = [v for v in itertools.product(range(-2, 3), repeat=2) if v != (0, 0)]
        for x, y in itertools.product(box, repeat=2):
            assert e_commutator(e(x), e(y)) == e_relation_rhs(x, y), (x, y)

    @pytest.mark.parametrize("x", [(2, 0), (4, 2), (3, -3), (0, 4)])
    def test_powers(self, x):
        assert e_power_check(x)

    @pytest.mark.parametrize("m,n", [(1, 1), (2, 3), (4, 1)])
    def test_parallel(self, m, n):
        assert parallel_check((1, 1), m, n)

    def test_coefficients_are_s_only(self):
        with pytest.raises(DomainError):
            BracketElement(V)

    def test_render(self):
        assert e((1, -1)).scale(S).render() == "s*e[1,-1]"
        assert BracketElement().render() == "0"


class TestPhi:
    def test_generator(self):
        assert phi_map(generator((1, 0))) == e((1, 0))

    def test_delta(self):
        assert phi_map(SkeinElement.unit(delta())) == BracketElement(-(S**2) - S**-2)

    @given(skein_elements(), skein_elements())
    def test_homomorphism(self, p, q):
        assert phi_map(multiply(p, q)) == e_mul(phi_map(p), phi_map(q))
