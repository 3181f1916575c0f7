import itertools

import pytest
from hypothesis import given

from src.algebra.coeff import DomainError, S, qint
from src.algebra.torus import (
    REFLECTION,
    ROTATION,
    SHEAR,
    CurveClass,
    GL2Matrix,
    SkeinElement,
    canonicalize,
    clear_normal_form_cache,
    commutator,
    content,
    generator,
    gl2_apply,
    gl2_reduce,
    multiply,
    normal_form,
    relation_rhs,
)
from tests.strategies import curve_classes, multi_term_elements, skein_elements, words

pytestmark = pytest.mark.unit

D = generator


class TestCurveClass:
    def test_canonical_representative(self):
        assert canonicalize(-1, 0) == CurveClass(1, 0)
        assert canonicalize(0, -2) == CurveClass(0, 2)
        assert canonicalize((-2, 3)) == CurveClass(2, -3)

    def test_rejects_zero_and_non_canonical(self):
        with pytest.raises(DomainError):
            CurveClass(0, 0)
        with pytest.raises(DomainError):
            CurveClass(-1, 0)

    def test_content(self):
        assert CurveClass(4, -6).content == 2
        assert str(CurveClass(1, -1)) == "D[1,-1]"

    def test_sign_is_forgotten(self):
        assert D((1, 0)) - D((-1, 0)) == SkeinElement.zero()


class TestGL2:
    def test_determinant_must_be_unit(self):
        with pytest.raises(DomainError):
            GL2Matrix(2, 0, 0, 1)

    def test_inverse(self):
        g = SHEAR @ ROTATION @ REFLECTION
        assert g @ g.inverse() == GL2Matrix.identity()

    @pytest.mark.parametrize("x", [(6, 4), (0, 3), (-5, 0), (7, -3), (-4, -10), (1, -7), (-3, 5), (0, -2)])
    def test_reduce(self, x):
        g, k = gl2_reduce(x)
        assert g.det == 1
        assert g.apply(x) == (k, 0)
        assert k == content(x)

    def test_reduce_zero(self):
        with pytest.raises(DomainError):
            gl2_reduce((0, 0))


class TestRelations:
    def test_basic_commutator(self):
        lhs = commutator(D((1, 0)), D((0, 1)))
        assert lhs == (D((1, 1)) - D((1, -1))).scale(qint(1))
        assert lhs == relation_rhs((1, 0), (0, 1))
        assert lhs.is_lie_element()

    def test_parallel_generators_commute(self):
        assert commutator(D((1, 0)), D((3, 0))).is_zero()
        assert relation_rhs((1, 0), (1, 0)).is_zero()

    @given(curve_classes(), curve_classes())
    def test_presentation(self, x, y):
        assert commutator(D(x), D(y)) == relation_rhs(x, y)

    def test_jacobi(self):
        gens = [D(x) for x in [(1, 0), (0, 1), (1, 1), (2, -1), (1, 2)]]
        for a, b, c in itertools.combinations(gens, 3):
            total = (
                commutator(a, commutator(b, c))
                + commutator(b, commutator(c, a))
                + commutator(c, commutator(a, b))
            )
            assert total.is_zero()


class TestNormalForm:
    def test_sorted_word_is_fixed(self):
        word = (CurveClass(0, 1), CurveClass(1, 0))
        assert normal_form(word) == SkeinElement({word: 1})

    def test_single_rewrite(self):
        word = (CurveClass(1, 0), CurveClass(0, 1))
        expected = SkeinElement({word[::-1]: 1}) + relation_rhs((1, 0), (0, 1))
        assert normal_form(word) == expected

    def test_cache_can_be_cleared(self):
        word = (CurveClass(2, 1), CurveClass(1, 0), CurveClass(0, 1))
        before = normal_form(word)
        clear_normal_form_cache()
        assert normal_form(word) == before

    def test_unknown_strategy(self):
        with pytest.raises(DomainError):
            normal_form((CurveClass(1, 0),), strategy="random")

    @given(words(bound=2, max_size=5, min_size=2))
    def test_strategy_independence(self, word):
        assert normal_form(word, "leftmost") == normal_form(word, "rightmost")

    @given(skein_elements(), skein_elements(), skein_elements())
    def test_associativity(self, p, q, r):
        assert multiply(multiply(p, q), r) == multiply(p, multiply(q, r))

    def test_unit(self):
        p = D((1, 2)) * D((3, 1))
        assert multiply(SkeinElement.unit(), p) == p
        assert multiply(p, SkeinElement.unit()) == p

    def test_unit_on_distinct_coefficients(self):
        p = D((1, 0)) + D((0, 1)).scale(2)
        assert multiply(SkeinElement.unit(), p) == p
        assert multiply(p, SkeinElement.unit()) == p

    def test_left_factor_with_several_terms(self):
        d01, d10 = canonicalize(0, 1), canonicalize(1, 0)
        expected = SkeinElement(
            {
                (d01, d01, d10): 1,
                (d01, canonicalize(1, 1)): qint(1),
                (d01, canonicalize(1, -1)): -qint(1),
            }
        )
        assert multiply(D((0, 1)), D((1, 0)) * D((0, 1))) == expected

    @given(multi_term_elements())
    def test_unit_law(self, p):
        assert len(p) >= 2
        assert multiply(SkeinElement.unit(), p) == p == multiply(p, SkeinElement.unit())

    @given(multi_term_elements(), multi_term_elements(), multi_term_elements())
    def test_distributivity(self, p, q, r):
        assert multiply(p, q + r) == multiply(p, q) + multiply(p, r)
        assert multiply(p + q, r) == multiply(p, r) + multiply(q, r)

    @given(multi_term_elements(max_length=1), multi_term_elements(), multi_term_elements(max_length=1))
    def test_associativity_on_several_terms(self, p, q, r):
        assert multiply(multiply(p, q), r) == multiply(p, multiply(q, r))


class TestElementOperations:
    def test_scalar_multiplication(self):
        p = D((1, 0)).scale(S)
        assert p.coefficient((CurveClass(1, 0),)) == S
        assert S * D((1, 0)) == p

    def test_powers(self):
        g = D((1, 0))
        assert g**2 == multiply(g, g)
        assert g**0 == SkeinElement.unit()
        with pytest.raises(DomainError):
            g ** -1

    def test_word_length(self):
        p = D((1, 0)) * D((0, 1)) * D((1, 1))
        assert p.max_word_length() == 3
        assert not p.is_lie_element()

    def test_render(self):
        assert D((1, 0)).render() == "D[1,0]"
        assert SkeinElement.zero().render() == "0"
        assert (D((0, 1)) * D((1, 0))).render() == "D[0,1]*D[1,0]"


class TestGL2Action:
    @given(skein_elements(), skein_elements())
    def test_orientation_preserving_is_multiplicative(self, p, q):
        g = SHEAR @ ROTATION
        assert gl2_apply(g, multiply(p, q)) == multiply(gl2_apply(g, p), gl2_apply(g, q))

    @given(skein_elements(), skein_elements())
    def test_reflection_reverses_products(self, p, q):
        image = gl2_apply(REFLECTION, multiply(p, q))
        assert image == multiply(gl2_apply(REFLECTION, q), gl2_apply(REFLECTION, p))

    @given(multi_term_elements(), multi_term_elements())
    def test_action_on_several_terms(self, p, q):
        g = SHEAR @ ROTATION
        assert gl2_apply(g, multiply(p, q)) == multiply(gl2_apply(g, p), gl2_apply(g, q))
        image = gl2_apply(REFLECTION, multiply(p, q))
        assert image == multiply(gl2_apply(REFLECTION, q), gl2_apply(REFLECTION, p))

    def test_generator_image(self):
        assert gl2_apply(SHEAR, D((0, 1))) == D((1, 1))
