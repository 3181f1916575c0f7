import json

import pytest
from pydantic import ValidationError

from src.algebra.annulus import hook_expansion
from src.algebra.bmw2 import f2_element
from src.algebra.bracket import BracketElement, e_generator
from src.algebra.certificates import build_certificate, validate_certificate
from src.algebra.coeff import S, V, delta
from src.algebra.torus import commutator, generator
from src.api.schemas import (
    AnnulusElementSchema,
    BMW2ElementSchema,
    BracketElementSchema,
    CertificateSchema,
    RatFuncSchema,
    SkeinElementSchema,
    SuiteReportSchema,
    element_schema,
)

pytestmark = pytest.mark.unit


@pytest.mark.parametrize(
    "value,schema",
    [
        (delta(), RatFuncSchema),
        (commutator(generator((1, 0)), generator((1, 2))).scale(V), SkeinElementSchema),
        (hook_expansion(3).scale(S), AnnulusElementSchema),
        (e_generator((2, 1)) + BracketElement(S**-1), BracketElementSchema),
        (f2_element(), BMW2ElementSchema),
    ],
)
def test_round_trip(value, schema):
    model = element_schema(value)
    assert isinstance(model, schema)
    restored = schema.model_validate_json(model.model_dump_json())
    assert restored.to_domain() == value


def test_skein_json_layout():
    data = json.loads(element_schema(generator((1, 0)).scale(2)).model_dump_json())
    assert data == {"terms": [{"word": [[1, 0]], "coeff": {"num": [[0, 0, "2"]], "den": [[0, 0, "1"]]}}]}


def test_empty_denominator_rejected():
    with pytest.raises(ValidationError):
        RatFuncSchema(num=[(0, 0, "1")], den=[])


def test_bad_rational_rejected():
    with pytest.raises(ValidationError):
        RatFuncSchema(num=[(0, 0, "one")], den=[(0, 0, "1")])


def test_unsupported_type():
    with pytest.raises(TypeError):
        element_schema(3.5)


class TestCertificateSchema:
    def test_round_trip(self):
        cert = build_certificate((5, 3), (0, 2))
        model = CertificateSchema.model_validate_json(element_schema(cert).model_dump_json())
        restored = model.to_domain()
        assert restored == cert
        assert validate_certificate(restored)

    def test_layout(self):
        data = json.loads(CertificateSchema.from_domain(build_certificate((5, 3), (0, 2))).model_dump_json())
        assert data["kind"] == "split"
        assert data["case"] == "primitive"
        assert data["gl2"] == [[1, 0], [0, 1]]
        assert len(data["children"]) == 6
        assert all(child["kind"] in ("base", "split") for child in data["children"])

    def test_base_node(self):
        data = CertificateSchema.from_domain(build_certificate((1, 0), (0, 3))).model_dump()
        assert data["kind"] == "base"
        assert data["base"] == "rel1"
        assert data["children"] == []


def test_suite_report_requires_prng():
    with pytest.raises(ValidationError):
        SuiteReportSchema(suite="bmw2", seed=0, passed=True, checks=[])
