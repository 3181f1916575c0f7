from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from src.algebra.annulus import AnnulusElement, Hook
from src.algebra.bmw2 import BMW2Element
from src.algebra.bracket import BracketElement
from src.algebra.certificates import BaseKind, BaseNode, Certificate, SplitCase, SplitNode
from src.algebra.coeff import RatFunc
from src.algebra.torus import CurveClass, GL2Matrix, SkeinElement, canonicalize

# [exp_s, exp_v, "p/q"]
TermRow = Tuple[int, int, str]


class RatFuncSchema(BaseModel):
    """Element of Q(s, v) as reduced numerator and denominator"""

    num: List[TermRow] = Field(default_factory=list, description="Numerator terms")
    den: List[TermRow] = Field(..., min_length=1, description="Denominator terms, never empty")

    @field_validator("num", "den")
    @classmethod
    def _rational_strings(cls, rows: List[TermRow]) -> List[TermRow]:
        for _, _, c in rows:
            Fraction(c)
        return rows

    @classmethod
    def from_domain(cls, value: RatFunc) -> "RatFuncSchema":
        return cls(**value.to_json())

    def to_domain(self) -> RatFunc:
        return RatFunc.from_json({"num": self.num, "den": self.den})


class SkeinTermSchema(BaseModel):
    word: List[Tuple[int, int]] = Field(default_factory=list, description="Sorted curve classes")
    coeff: RatFuncSchema


class SkeinElementSchema(BaseModel):
    terms: List[SkeinTermSchema] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, value: SkeinElement) -> "SkeinElementSchema":
        return cls(
            terms=[
                SkeinTermSchema(word=[x.vector for x in word], coeff=RatFuncSchema.from_domain(c))
                for word, c in value.sorted_terms()
            ]
        )

    def to_domain(self) -> SkeinElement:
        # words are stored sorted, so no rewriting is needed
        return SkeinElement(
            {tuple(CurveClass(a, b) for a, b in t.word): t.coeff.to_domain() for t in self.terms}
        )


class HookTermSchema(BaseModel):
    arm: int = Field(..., ge=0)
    leg: int = Field(..., ge=0)
    coeff: RatFuncSchema


class AnnulusElementSchema(BaseModel):
    unit: RatFuncSchema
    hooks: List[HookTermSchema] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, value: AnnulusElement) -> "AnnulusElementSchema":
        return cls(
            unit=RatFuncSchema.from_domain(value.unit),
            hooks=[
                HookTermSchema(arm=h.arm, leg=h.leg, coeff=RatFuncSchema.from_domain(c))
                for h, c in sorted(value.hooks.items())
            ],
        )

    def to_domain(self) -> AnnulusElement:
        return AnnulusElement(
            self.unit.to_domain(), {Hook(t.arm, t.leg): t.coeff.to_domain() for t in self.hooks}
        )


class BracketTermSchema(BaseModel):
    curve: Tuple[int, int]
    coeff: RatFuncSchema


class BracketElementSchema(BaseModel):
    unit: RatFuncSchema
    terms: List[BracketTermSchema] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, value: BracketElement) -> "BracketElementSchema":
        return cls(
            unit=RatFuncSchema.from_domain(value.unit),
            terms=[
                BracketTermSchema(curve=x.vector, coeff=RatFuncSchema.from_domain(c))
                for x, c in sorted(value.curves.items())
            ],
        )

    def to_domain(self) -> BracketElement:
        return BracketElement(
            self.unit.to_domain(), {canonicalize(t.curve): t.coeff.to_domain() for t in self.terms}
        )


class BMW2ElementSchema(BaseModel):
    c1: RatFuncSchema
    csigma: RatFuncSchema
    ch: RatFuncSchema

    @classmethod
    def from_domain(cls, value: BMW2Element) -> "BMW2ElementSchema":
        return cls(
            c1=RatFuncSchema.from_domain(value.c1),
            csigma=RatFuncSchema.from_domain(value.csigma),
            ch=RatFuncSchema.from_domain(value.ch),
        )

    def to_domain(self) -> BMW2Element:
        return BMW2Element(self.c1.to_domain(), self.csigma.to_domain(), self.ch.to_domain())


Matrix = Tuple[Tuple[int, int], Tuple[int, int]]


class CertificateSchema(BaseModel):
    """Nested certificate tree with node kinds "base" and "split"."""

    kind: Literal["base", "split"]
    x: Tuple[int, int]
    y: Tuple[int, int]
    gl2: Matrix
    base: Optional[Literal["rel1", "rel2", "unit-det"]] = None
    case: Optional[str] = None
    swapped: bool = False
    a: Optional[Tuple[int, int]] = None
    b: Optional[Tuple[int, int]] = None
    children: List["CertificateSchema"] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, cert: Certificate) -> "CertificateSchema":
        (x, y), node = cert.pair, cert.node
        if isinstance(node, BaseNode):
            return cls(kind="base", x=x, y=y, gl2=_rows(node.gl2), base=node.kind.value)
        return cls(
            kind="split",
            x=x,
            y=y,
            gl2=_rows(node.gl2),
            case=node.case.value,
            swapped=node.swapped,
            a=node.a,
            b=node.b,
            children=[cls.from_domain(child) for child in node.children],
        )

    def to_domain(self) -> Certificate:
        gl2 = GL2Matrix.from_rows(self.gl2)
        pair = (tuple(self.x), tuple(self.y))
        if self.kind == "base":
            return Certificate(pair, BaseNode(BaseKind(self.base), gl2))
        node = SplitNode(
            gl2=gl2,
            swapped=self.swapped,
            a=tuple(self.a),
            b=tuple(self.b),
            children=tuple(child.to_domain() for child in self.children),
            case=SplitCase(self.case),
        )
        return Certificate(pair, node)


def _rows(g: GL2Matrix) -> Matrix:
    return ((g.a, g.b), (g.c, g.d))


class CheckResultSchema(BaseModel):
    name: str
    passed: bool
    cases: int = Field(0, ge=0, description="Number of instances checked")
    detail: Optional[str] = Field(None, description="First failure, if any")
    seconds: Optional[float] = Field(None, description="Wall time, only with timings enabled")


class SuiteReportSchema(BaseModel):
    suite: str
    seed: int
    prng: str = Field(..., description="PRNG algorithm identity")
    passed: bool
    checks: List[CheckResultSchema]
    limits: Dict[str, Any] = Field(default_factory=dict)


CertificateSchema.model_rebuild()


def element_schema(value) -> BaseModel:
    """Schema instance for any algebra element or scalar."""
    if isinstance(value, SkeinElement):
        return SkeinElementSchema.from_domain(value)
    if isinstance(value, AnnulusElement):
        return AnnulusElementSchema.from_domain(value)
    if isinstance(value, BracketElement):
        return BracketElementSchema.from_domain(value)
    if isinstance(value, BMW2Element):
        return BMW2ElementSchema.from_domain(value)
    if isinstance(value, RatFunc):
        return RatFuncSchema.from_domain(value)
    if isinstance(value, Certificate):
        return CertificateSchema.from_domain(value)
    raise TypeError(f"no schema for {type(value).__name__}")
