import dataclasses
import itertools

import pytest
from hypothesis import assume, given

from src.algebra.certificates import (
    BaseKind,
    BaseNode,
    Certificate,
    SplitCase,
    SplitNode,
    build_certificate,
    certificate_stats,
    check_certificate,
    coefficient_collapse_check,
    diophantine_split,
    measure,
    normalize_pair,
    split_children,
    validate_certificate,
)
from src.algebra.coeff import DomainError
from src.algebra.torus import GL2Matrix, det, vadd
from tests.strategies import vectors

pytestmark = pytest.mark.unit


class TestDiophantineSplit:
    def test_example(self):
        assert diophantine_split(5, 3) == (2, 1, 3, 2)

    @pytest.mark.parametrize("p,q", [(2, 1), (7, 3), (11, 10), (13, 5)])
    def test_properties(self, p, q):
        u, v, w, z = diophantine_split(p, q)
        assert (u + w, v + z) == (p, q)
        assert 0 < u < p and 0 < w < p
        assert u * z - w * v == 1

    @pytest.mark.parametrize("p,q", [(1, 0), (4, 2), (5, 0), (5, 5)])
    def test_rejects(self, p, q):
        with pytest.raises(DomainError):
            diophantine_split(p, q)


class TestNormalization:
    def test_frame(self):
        g, swapped, xh, yh = normalize_pair((5, 3), (0, 2))
        assert g == GL2Matrix.identity()
        assert not swapped
        assert (xh, yh) == ((5, 3), (0, 2))

    @pytest.mark.parametrize("x,y", [((3, 7), (2, 4)), ((-4, 1), (6, 9)), ((2, 0), (1, 5))])
    def test_frame_shape(self, x, y):
        _, _, (p, q), (zero, r) = normalize_pair(x, y)
        assert zero == 0 and r > 0
        assert 0 <= q < p

    def test_measure(self):
        assert measure((2, 0), (0, 2)) == (4, 1)
        assert measure((1, 0), (0, 2)) == (2, 0)

    def test_split_children(self):
        children = split_children((0, 2), (2, 1), (3, 2))
        assert children[0] == ((2, 1), (3, 2))
        assert children[-1] == ((-1, -1), (0, 2))


class TestBaseCases:
    def test_unit_determinant(self):
        cert = build_certificate((1, 0), (1, 1))
        assert cert.node.kind is BaseKind.UNIT_DET

    @pytest.mark.parametrize("n", [2, 3, 7])
    def test_rel1(self, n):
        assert build_certificate((1, 0), (0, n)).node.kind is BaseKind.REL1

    @pytest.mark.parametrize("n", [2, 3, 7])
    def test_rel2(self, n):
        assert build_certificate((1, n), (1, 0)).node.kind is BaseKind.REL2

    def test_swapped_pair_reaches_rel1(self):
        cert = build_certificate((2, 0), (0, 1))
        assert cert.node.kind is BaseKind.REL1


class TestSplits:
    def test_primitive_split(self):
        cert = build_certificate((5, 3), (0, 2))
        node = cert.node
        assert isinstance(node, SplitNode)
        assert node.case is SplitCase.PRIMITIVE
        assert (node.a, node.b) == ((2, 1), (3, 2))
        assert len(node.children) == 6

    @pytest.mark.parametrize(
        "x,y,case",
        [
            ((2, 0), (0, 2), SplitCase.CASE_2),
            ((6, 2), (0, 2), SplitCase.CASE_1A),
            ((4, 2), (0, 4), SplitCase.CASE_1B),
            ((4, 2), (0, 2), SplitCase.CASE_1C),
        ],
    )
    def test_non_primitive_cases(self, x, y, case):
        cert = build_certificate(x, y)
        assert cert.node.case is case
        assert validate_certificate(cert)

    def test_zero_vector(self):
        with pytest.raises(DomainError):
            build_certificate((0, 0), (1, 2))


class TestValidation:
    def test_sweep(self):
        box = [v for v in itertools.product(range(-3, 4), repeat=2) if v != (0, 0)]
        for x, y in itertools.combinations(box, 2):
            cert = build_certificate(x, y)
            assert check_certificate(cert) == [], (x, y)
            assert certificate_stats(cert)["depth"] <= 2 * max(abs(det(x, y)), 1)

    def test_tampered_split(self):
        cert = build_certificate((5, 3), (0, 2))
        bad = Certificate(cert.pair, dataclasses.replace(cert.node, a=(1, 1)))
        defects = check_certificate(bad)
        assert defects
        assert defects[0][0] == "root"
        assert not validate_certificate(bad)

    def test_child_without_measure_decrease(self):
        # a + b still equals x, but (y, a) has |d| = 14 > 10
        cert = build_certificate((5, 3), (0, 2))
        a, b = (7, 4), (-2, -1)
        children = tuple(
            Certificate(pair, BaseNode(BaseKind.UNIT_DET)) for pair in split_children((0, 2), a, b)
        )
        bad = Certificate(cert.pair, dataclasses.replace(cert.node, a=a, b=b, children=children))
        defects = check_certificate(bad)
        assert ("root/1", "child |d| = 14 does not decrease from 10") in defects
        assert not any(path == "root" for path, _ in defects)
        assert not validate_certificate(bad)

    def test_wrong_base_shape(self):
        bad = Certificate(((2, 1), (1, 3)), BaseNode(BaseKind.REL1))
        assert check_certificate(bad) == [("root", "pair ((2, 1), (1, 3)) does not have rel1 shape")]

    def test_stats(self):
        stats = certificate_stats(build_certificate((1, 0), (0, 1)))
        assert stats == {"nodes": 1, "depth": 0, "histogram": {"base:unit-det": 1}}

    def test_split_stats(self):
        stats = certificate_stats(build_certificate((5, 3), (0, 2)))
        assert stats["nodes"] > 1
        assert stats["histogram"]["split:primitive"] >= 1


class TestCoefficientCollapse:
    def test_zero_sum(self):
        with pytest.raises(DomainError):
            coefficient_collapse_check((1, 2), (-1, -2), (0, 1))

    def test_example(self):
        assert coefficient_collapse_check((2, 1), (3, 2), (0, 2))

    def test_standard_basis(self):
        assert coefficient_collapse_check((1, 0), (0, 1), (1, 1))

    @pytest.mark.parametrize("a,y", [((1, 0), (0, 1)), ((1, 2), (1, 1)), ((2, 0), (3, -1))])
    def test_equal_summands(self, a, y):
        assert coefficient_collapse_check(a, a, y)

    @given(vectors(3), vectors(3), vectors(3))
    def test_identities(self, a, b, y):
        assume(vadd(a, b) != (0, 0))
        assert coefficient_collapse_check(a, b, y)
