"""
Scalar field Q(s, v).

Every coefficient in the package is a RatFunc: an element of the fraction
field of Q[s, v] kept in sympy's canonical reduced form, so that
structural equality decides field equality.  LaurentPoly is the view of
numerators and denominators as Laurent polynomials (a polynomial with no
monomial factor times a monomial shift).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.fields import field

logger = logging.getLogger(__name__)

_FIELD, _S, _V = field("s,v", QQ)
_RING = _FIELD.ring

Monomial = Tuple[int, int]
Scalar = Union["RatFunc", int, Fraction]


class DomainError(ValueError):
    """Precondition violation of an algebra operation."""


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _to_qq(c: Union[int, Fraction]):
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


# ---------------------------------------------------------------------------
# Equality settings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _EqualitySettings:
    fast_equality: bool = False
    probe_points: Tuple[Tuple[int, int], ...] = ((2, 3), (3, 5), (5, 7))


_settings = _EqualitySettings()

_PROBE_POOL = ((2, 3), (3, 5), (5, 7), (7, 11), (11, 13), (13, 17), (17, 19))


def configure(fast_equality: bool = False, probe_points: int = 3) -> None:
    """Install process-wide equality settings.

    With ``fast_equality`` on, RatFunc equality first compares values at a
    few fixed integer points and only falls back to the canonical forms
    when every probe agrees.
    """
    global _settings
    if probe_points < 1 or probe_points > len(_PROBE_POOL):
        raise DomainError(f"probe_points must be in 1..{len(_PROBE_POOL)}")
    _settings = _EqualitySettings(fast_equality, _PROBE_POOL[:probe_points])
    logger.debug("coeff equality settings: %s", _settings)


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Laurent polynomial in s, v with rational coefficients.

    Stored as ``s^es * v^ev * poly`` where ``poly`` is a sympy polynomial
    in Q[s, v] with no monomial factor.
    """

    __slots__ = ("_poly", "_shift")

    def __init__(self, poly=None, shift: Monomial = (0, 0)):
        poly = _RING.zero if poly is None else poly
        if poly:
            ms = min(m[0] for m in poly.monoms())
            mv = min(m[1] for m in poly.monoms())
            if ms or mv:
                poly = _RING.from_dict(
                    {(a - ms, b - mv): c for (a, b), c in poly.terms()}
                )
                shift = (shift[0] + ms, shift[1] + mv)
        else:
            shift = (0, 0)
        self._poly = poly
        self._shift = shift

    @classmethod
    def from_terms(cls, terms: Dict[Monomial, Union[int, Fraction]]) -> "LaurentPoly":
        terms = {m: c for m, c in terms.items() if c}
        if not terms:
            return cls()
        ms = min(m[0] for m in terms)
        mv = min(m[1] for m in terms)
        poly = _RING.from_dict(
            {(a - ms, b - mv): _to_qq(c) for (a, b), c in terms.items()}
        )
        return cls(poly, (ms, mv))

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        es, ev = self._shift
        return {(a + es, b + ev): _to_fraction(c) for (a, b), c in self._poly.terms()}

    @property
    def poly(self):
        return self._poly

    @property
    def shift(self) -> Monomial:
        return self._shift

    def is_zero(self) -> bool:
        return not self._poly

    def _aligned(self, other: "LaurentPoly"):
        ms = min(self._shift[0], other._shift[0])
        mv = min(self._shift[1], other._shift[1])
        p = self._poly.mul_monom((self._shift[0] - ms, self._shift[1] - mv))
        q = other._poly.mul_monom((other._shift[0] - ms, other._shift[1] - mv))
        return p, q, (ms, mv)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        p, q, shift = self._aligned(other)
        return LaurentPoly(p + q, shift)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        p, q, shift = self._aligned(other)
        return LaurentPoly(p - q, shift)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(-self._poly, self._shift)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        shift = (self._shift[0] + other._shift[0], self._shift[1] + other._shift[1])
        return LaurentPoly(self._poly * other._poly, shift)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._poly == other._poly and self._shift == other._shift

    def __hash__(self) -> int:
        return hash((self._poly, self._shift))

    def bar(self) -> "LaurentPoly":
        return LaurentPoly.from_terms({(-a, -b): c for (a, b), c in self.terms.items()})

    def specialize_bracket(self) -> "LaurentPoly":
        """Substitute v = -s^-3."""
        out: Dict[Monomial, Fraction] = {}
        for (a, b), c in self.terms.items():
            key = (a - 3 * b, 0)
            out[key] = out.get(key, Fraction(0)) + (-c if b % 2 else c)
        return LaurentPoly.from_terms(out)

    def evaluate(self, s0: Fraction, v0: Fraction) -> Fraction:
        value = _to_fraction(self._poly(_to_qq(s0), _to_qq(v0)))
        return value * Fraction(s0) ** self._shift[0] * Fraction(v0) ** self._shift[1]

    def to_ratfunc(self) -> "RatFunc":
        frac = _FIELD(self._poly) * _S ** self._shift[0] * _V ** self._shift[1]
        return RatFunc(frac)

    def render(self) -> str:
        return _render_terms(self.terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()})"


# ---------------------------------------------------------------------------
# Rendering helpers
# ---------------------------------------------------------------------------


def _render_monomial(es: int, ev: int) -> str:
    parts = []
    for name, e in (("s", es), ("v", ev)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _render_terms(terms: Dict[Monomial, Fraction]) -> str:
    if not terms:
        return "0"
    chunks: List[str] = []
    for (es, ev) in sorted(terms, reverse=True):
        c = terms[(es, ev)]
        mono = _render_monomial(es, ev)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not chunks:
            chunks.append(f"-{body}" if c < 0 else body)
        else:
            chunks.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(chunks)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RatFunc:
    """Element of Q(s, v) in canonical reduced form."""

    __slots__ = ("_frac",)

    def __init__(self, value=0):
        if isinstance(value, RatFunc):
            value = value._frac
        elif isinstance(value, (int, Fraction)):
            value = _FIELD(_to_qq(value))
        self._frac = value

    @classmethod
    def coerce(cls, value: Scalar) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"cannot use {type(value).__name__} as a scalar")

    @classmethod
    def monomial(cls, coeff: Union[int, Fraction] = 1, es: int = 0, ev: int = 0) -> "RatFunc":
        return cls(_FIELD(_to_qq(coeff)) * _S**es * _V**ev)

    @classmethod
    def from_laurent(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFunc":
        if den.is_zero():
            raise DomainError("zero denominator")
        return cls(num.to_ratfunc()._frac / den.to_ratfunc()._frac)

    # -- canonical parts -------------------------------------------------

    def _parts(self) -> Tuple[LaurentPoly, LaurentPoly]:
        den = LaurentPoly(self._frac.denom)
        num = LaurentPoly(self._frac.numer)
        ds, dv = den.shift
        return (
            LaurentPoly(num.poly, (num.shift[0] - ds, num.shift[1] - dv)),
            LaurentPoly(den.poly),
        )

    @property
    def num(self) -> LaurentPoly:
        return self._parts()[0]

    @property
    def den(self) -> LaurentPoly:
        return self._parts()[1]

    def is_zero(self) -> bool:
        return not self._frac

    def __bool__(self) -> bool:
        return bool(self._frac)

    def is_laurent(self) -> bool:
        """True when the reduced denominator is a constant."""
        return self.den.poly.is_ground

    def as_monomial(self):
        """(coefficient, es, ev) when self is a single monomial, else None."""
        num, den = self._parts()
        if not den.poly.is_ground or len(num.terms) != 1:
            return None
        ((es, ev), c), = num.terms.items()
        return c / _to_fraction(den.poly.LC), es, ev

    def involves_v(self) -> bool:
        return any(m[1] for m in self._frac.numer.monoms()) or any(
            m[1] for m in self._frac.denom.monoms()
        )

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: Scalar) -> "RatFunc":
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return RatFunc(self._frac + other._frac)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "RatFunc":
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return RatFunc(self._frac - other._frac)

    def __rsub__(self, other: Scalar) -> "RatFunc":
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return RatFunc(other._frac - self._frac)

    def __mul__(self, other: Scalar) -> "RatFunc":
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return RatFunc(self._frac * other._frac)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "RatFunc":
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._frac:
            raise DomainError("division by zero")
        return RatFunc(self._frac / other._frac)

    def __rtruediv__(self, other: Scalar) -> "RatFunc":
        return RatFunc.coerce(other) / self

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self._frac)

    def __pos__(self) -> "RatFunc":
        return self

    def __pow__(self, n: int) -> "RatFunc":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0 and not self._frac:
            raise DomainError("zero raised to a negative power")
        return RatFunc(self._frac**n)

    def __eq__(self, other) -> bool:
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if _settings.fast_equality:
            for s0, v0 in _settings.probe_points:
                try:
                    if self.evaluate(s0, v0) != other.evaluate(s0, v0):
                        return False
                except DomainError:
                    continue
        return self._frac == other._frac

    def __hash__(self) -> int:
        return hash(self._frac)

    # -- maps ------------------------------------------------------------

    def bar(self) -> "RatFunc":
        """Image under s -> 1/s, v -> 1/v."""
        num, den = self._parts()
        return RatFunc.from_laurent(num.bar(), den.bar())

    def specialize_bracket(self) -> "RatFunc":
        """Image under v -> -s^-3, an element of Q(s)."""
        num, den = self._parts()
        den_s = den.specialize_bracket()
        if den_s.is_zero():
            raise DomainError(f"denominator of {self} vanishes at v = -s^-3")
        return RatFunc.from_laurent(num.specialize_bracket(), den_s)

    def evaluate(self, s0: Union[int, Fraction], v0: Union[int, Fraction]) -> Fraction:
        s0, v0 = Fraction(s0), Fraction(v0)
        if s0 == 0 or v0 == 0:
            raise DomainError("s and v must be nonzero")
        num = _to_fraction(self._frac.numer(_to_qq(s0), _to_qq(v0)))
        den = _to_fraction(self._frac.denom(_to_qq(s0), _to_qq(v0)))
        if den == 0:
            raise DomainError(f"pole of {self} at s={s0}, v={v0}")
        return num / den

    # -- serialization ---------------------------------------------------

    def to_json(self) -> Dict[str, List[list]]:
        num, den = self._parts()

        def dump(p: LaurentPoly) -> List[list]:
            return [[es, ev, str(c)] for (es, ev), c in sorted(p.terms.items())]

        return {"num": dump(num), "den": dump(den)}

    @classmethod
    def from_json(cls, data: Dict[str, Sequence[Sequence]]) -> "RatFunc":
        def load(rows) -> LaurentPoly:
            terms: Dict[Monomial, Fraction] = {}
            for es, ev, c in rows:
                terms[(int(es), int(ev))] = terms.get((int(es), int(ev)), 0) + Fraction(c)
            return LaurentPoly.from_terms(terms)

        return cls.from_laurent(load(data["num"]), load(data["den"]))

    def render(self) -> str:
        num, den = self._parts()
        if den.poly.is_ground:
            scale = _to_fraction(den.poly.LC)
            return _render_terms({m: c / scale for m, c in num.terms.items()})
        return f"({num.render()})/({den.render()})"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"RatFunc({self.render()})"


ZERO = RatFunc(0)
ONE = RatFunc(1)
S = RatFunc(_S)
V = RatFunc(_V)


def laurent_from_terms(terms: Dict[Monomial, Union[int, Fraction]]) -> LaurentPoly:
    return LaurentPoly.from_terms(terms)


def s_power(n: int) -> RatFunc:
    return RatFunc.monomial(1, n, 0)


def sum_scalars(values: Iterator[Scalar]) -> RatFunc:
    total = ZERO
    for value in values:
        total = total + value
    return total


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


class ArithOp(str, Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"


def ratfunc_arith(a: RatFunc, b: RatFunc, op: Union[ArithOp, str]) -> RatFunc:
    op = ArithOp(op)
    if op is ArithOp.ADD:
        return a + b
    if op is ArithOp.SUB:
        return a - b
    if op is ArithOp.MUL:
        return a * b
    return a / b


def ratfunc_pow(f: RatFunc, n: int) -> RatFunc:
    return f**n


class QIntKind(str, Enum):
    BRACE = "brace"
    BRACE_PLUS = "brace_plus"
    BRACKET = "bracket"


@lru_cache(maxsize=1024)
def _qint(n: int, kind: QIntKind) -> RatFunc:
    if kind is QIntKind.BRACE:
        return s_power(n) - s_power(-n)
    if kind is QIntKind.BRACE_PLUS:
        return s_power(n) + s_power(-n)
    return _qint(n, QIntKind.BRACE) / _qint(1, QIntKind.BRACE)


def qint(n: int, kind: Union[QIntKind, str] = QIntKind.BRACE) -> RatFunc:
    """Quantum integers {n} = s^n - s^-n, {n}+ = s^n + s^-n, [n] = {n}/{1}."""
    return _qint(int(n), QIntKind(kind))


@lru_cache(maxsize=1)
def delta() -> RatFunc:
    """Unknot value 1 - (v - v^-1)/(s - s^-1)."""
    return ONE - (V - V**-1) / (S - S**-1)


@lru_cache(maxsize=256)
def _beta(n: int) -> RatFunc:
    return (ONE - S**2) / (S ** (2 * n - 1) * V**-1 - ONE)


def beta(n: int, barred: bool = False) -> RatFunc:
    if n < 1:
        raise DomainError(f"beta_n needs n >= 1, got {n}")
    value = _beta(n)
    return value.bar() if barred else value


def bar_involution(f: RatFunc) -> RatFunc:
    return f.bar()


def specialize_bracket(f: RatFunc) -> RatFunc:
    return f.specialize_bracket()


def eval_rational(f: RatFunc, s0: Union[int, Fraction], v0: Union[int, Fraction]) -> Fraction:
    return f.evaluate(s0, v0)


def beta_relations_check(n: int) -> bool:
    """Both beta identities at index n.

    s - s^-1 beta_n = s^-1 - s bar(beta_n) and
    (bar(beta_{n+1}) - beta_{n+1})(s - s^-1 beta_n) = -{1}.
    """
    first = S - S**-1 * beta(n) == S**-1 - S * beta(n, barred=True)
    second = (beta(n + 1, barred=True) - beta(n + 1)) * (S - S**-1 * beta(n)) == -qint(1)
    return first and second


def render_combination(items: Iterator[Tuple[str, RatFunc]]) -> str:
    """Render sum(coeff * label); an empty label is the unit."""
    chunks: List[str] = []
    for label, coeff in items:
        mono = coeff.as_monomial()
        negative = mono is not None and mono[0] < 0
        if negative:
            coeff = -coeff
        text = coeff.render()
        if mono is None:
            text = f"({text})"
        if not label:
            body = text
        elif coeff == 1:
            body = label
        else:
            body = f"{text}*{label}"
        if not chunks:
            chunks.append(f"-{body}" if negative else body)
        else:
            chunks.append(f" - {body}" if negative else f" + {body}")
    return "".join(chunks) if chunks else "0"
