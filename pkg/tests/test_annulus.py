import pytest

from src.algebra.annulus import (
    AnnulusElement,
    Hook,
    Partition,
    act_meridian,
    angled_on_empty_check,
    angled_on_empty_sides,
    c_constant,
    hook_eigenvalue_closed_form,
    hook_expansion,
    hook_series_check,
    hook_series_expansion,
    hooks_of_size,
    meridian_eigenvalue,
    project_empty,
    projection_expansion,
)
from src.algebra.coeff import ONE, ZERO, DomainError, S, V, delta

pytestmark = pytest.mark.unit


class TestHooks:
    def test_hooks_of_size(self):
        assert hooks_of_size(3) == [Hook(2, 0), Hook(1, 1), Hook(0, 2)]
        assert hooks_of_size(1) == [Hook(0, 0)]

    def test_hook_shape(self):
        assert Hook(1, 2).size == 4
        assert Hook(1, 2).to_partition() == Partition((2, 1, 1))
        assert str(Hook(1, 2)) == "Q[1|2]"

    def test_negative_arm(self):
        with pytest.raises(DomainError):
            Hook(-1, 0)


class TestPartition:
    def test_contents(self):
        assert Partition((2, 1)).contents() == [0, 1, -1]
        assert Partition((3, 2)).size == 5

    @pytest.mark.parametrize("parts", [(1, 2), (2, 0), (-1,)])
    def test_rejects(self, parts):
        with pytest.raises(DomainError):
            Partition(parts)

    def test_hooks(self):
        assert Partition((3, 1, 1)).as_hook() == Hook(2, 2)
        assert not Partition((2, 2)).is_hook
        with pytest.raises(DomainError):
            Partition((2, 2)).as_hook()


class TestConstants:
    def test_c_constant(self):
        assert c_constant(1) == ZERO
        assert c_constant(2) == -ONE
        assert c_constant(7) == ZERO
        with pytest.raises(DomainError):
            c_constant(0)

    def test_hook_expansion(self):
        e = hook_expansion(2)
        assert e.unit == -ONE
        assert e.coefficient(Hook(0, 1)) == -ONE
        assert e.render() == "-Q[0|1] + Q[1|0] - 1"

    @pytest.mark.parametrize("k", range(1, 9))
    def test_series_expansion(self, k):
        assert hook_series_check(k)
        assert hook_series_expansion(k).unit == c_constant(k)

    def test_series_coefficients(self):
        e = hook_series_expansion(3)
        assert e.coefficient(Hook(2, 0)) == ONE
        assert e.coefficient(Hook(1, 1)) == -ONE
        assert e.coefficient(Hook(0, 2)) == ONE
        assert set(e.hooks) == set(hooks_of_size(3))

    def test_series_needs_positive_index(self):
        with pytest.raises(DomainError):
            hook_series_expansion(0)


class TestProjection:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_core_projection(self, n):
        assert project_empty((0, n)) == hook_expansion(n)

    def test_twisted_projection(self):
        e = project_empty((1, 2))
        assert e.unit == ZERO
        assert e.coefficient(Hook(1, 0)) == V**-1 * S
        assert e.coefficient(Hook(0, 1)) == -(V**-1) * S**-1

    def test_needs_positive_n(self):
        with pytest.raises(DomainError):
            project_empty((1, 0))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_angled_relation(self, n):
        lhs, rhs = angled_on_empty_sides(n)
        assert lhs == rhs == projection_expansion(n)
        assert angled_on_empty_check(n)

    def test_angled_needs_positive_n(self):
        with pytest.raises(DomainError):
            angled_on_empty_sides(0)


class TestMeridian:
    def test_empty_partition(self):
        assert meridian_eigenvalue(Partition(())) == delta()

    @pytest.mark.parametrize("hook", [h for n in range(1, 11) for h in hooks_of_size(n)])
    def test_hook_eigenvalues(self, hook):
        assert meridian_eigenvalue(hook) == hook_eigenvalue_closed_form(hook)

    def test_tuple_argument(self):
        assert meridian_eigenvalue((1,)) == delta() + (S - S**-1) * (V**-1 - V)

    def test_action_on_empty_link(self):
        assert act_meridian(AnnulusElement.empty_link()) == AnnulusElement(delta())

    def test_action_is_linear(self):
        p = AnnulusElement(S, {Hook(1, 0): 2, Hook(0, 2): V})
        q = AnnulusElement(-1, {Hook(1, 0): S**-1, Hook(2, 1): 3})
        assert act_meridian(p + q) == act_meridian(p) + act_meridian(q)
        assert act_meridian(p.scale(S - V)) == act_meridian(p).scale(S - V)
        assert act_meridian(p).coefficient(Hook(0, 2)) == V * meridian_eigenvalue(Hook(0, 2))


class TestElements:
    def test_arithmetic(self):
        q = AnnulusElement.hook(1, 0)
        assert (q + q) == q.scale(2)
        assert (q - q).is_zero()
        assert S * q == q * S

    def test_render(self):
        assert AnnulusElement().render() == "0"
        assert AnnulusElement.hook(0, 0, S).render() == "s*Q[0|0]"
