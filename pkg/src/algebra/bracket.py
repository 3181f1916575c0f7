"""
Kauffman bracket skein algebra of the torus and Chebyshev polynomials.

The bracket algebra has the linear basis {e_x} with e_0 = 2 and product

    e_x e_y = s^d e_{x+y} + s^-d e_{x-y},    d = det[x y].

phi_map sends D_x to e_x after specializing v = -s^-3 on coefficients.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from sympy import QQ, ZZ
from sympy.polys.rings import ring
from sympy.polys.ring_series import rs_log, rs_series_inversion

from src.algebra.coeff import ZERO, DomainError, RatFunc, S, Scalar, qint, render_combination
from src.algebra.torus import CurveClass, SkeinElement, as_vector, canonicalize, content, det, vadd, vscale, vsub

logger = logging.getLogger(__name__)

_CHEB_RING, _X = ring("x", ZZ)
_SERIES_RING, _SX, _ST = ring("x,t", QQ)


# ---------------------------------------------------------------------------
# Chebyshev polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChebPoly:
    """Integer polynomial in one variable x."""

    poly: object

    @property
    def coeffs(self) -> List[int]:
        """Coefficients from degree 0 upward."""
        if not self.poly:
            return []
        out = [0] * (self.poly.degree() + 1)
        for (e,), c in self.poly.terms():
            out[e] = int(c)
        return out

    @property
    def degree(self) -> int:
        return self.poly.degree()

    def __add__(self, other: "ChebPoly") -> "ChebPoly":
        return ChebPoly(self.poly + other.poly)

    def __sub__(self, other: "ChebPoly") -> "ChebPoly":
        return ChebPoly(self.poly - other.poly)

    def __mul__(self, other: "ChebPoly") -> "ChebPoly":
        return ChebPoly(self.poly * other.poly)

    def substitute(self, value: RatFunc) -> RatFunc:
        """Evaluate at a scalar by Horner's rule."""
        result = ZERO
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def evaluate_bracket(self, element: "BracketElement") -> "BracketElement":
        """Evaluate at an element of the bracket algebra by Horner's rule."""
        result = BracketElement()
        for c in reversed(self.coeffs):
            result = e_mul(result, element) + BracketElement(c)
        return result

    def render(self) -> str:
        chunks: List[str] = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not chunks:
                chunks.append(f"-{body}" if c < 0 else body)
            else:
                chunks.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(chunks) or "0"

    def __str__(self) -> str:
        return self.render()


@lru_cache(maxsize=256)
def _cheb(n: int, kind: str):
    if kind == "T":
        prev, cur = 2 * _CHEB_RING.one, _X
    else:
        prev, cur = _CHEB_RING.one, _X
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, _X * cur - prev
    return cur


def cheb(n: int, kind: str = "T") -> ChebPoly:
    """T_n or S_n from P_{n+1} = x P_n - P_{n-1}."""
    kind = str(kind).upper()
    if kind not in ("T", "S"):
        raise DomainError(f"Chebyshev kind must be T or S, got {kind!r}")
    if n < 0:
        raise DomainError(f"Chebyshev index must be >= 0, got {n}")
    return ChebPoly(_cheb(int(n), kind))


def cheb_functional_check(n: int) -> bool:
    """T_n(X + X^-1) = X^n + X^-n and S_n(X + X^-1) = (X^(n+1) - X^-(n+1))/(X - X^-1), X = s."""
    x = qint(1, "brace_plus")
    return (
        cheb(n, "T").substitute(x) == qint(n, "brace_plus")
        and cheb(n, "S").substitute(x) == qint(n + 1, "bracket")
    )


def cheb_product_check(m: int, n: int) -> bool:
    """T_m T_n = T_{m+n} + T_{|m-n|}."""
    return cheb(m) * cheb(n) == cheb(m + n) + cheb(abs(m - n))


def _lift(p: ChebPoly, t_power: int, scale: Fraction = Fraction(1)):
    return _SERIES_RING.from_dict(
        {(e, t_power): QQ(c * scale.numerator, scale.denominator) for e, c in enumerate(p.coeffs) if c}
    )


def cheb_log_identity_check(n_max: int) -> bool:
    """sum T_k(x) t^k / k = log(1 + sum S_j(x) t^j) through t^n_max."""
    if n_max < 1:
        raise DomainError(f"series order must be >= 1, got {n_max}")
    lhs = _SERIES_RING.zero
    inner = _SERIES_RING.one
    for k in range(1, n_max + 1):
        lhs += _lift(cheb(k, "T"), k, Fraction(1, k))
        inner += _lift(cheb(k, "S"), k)
    return lhs == rs_log(inner, _ST, n_max + 1)


def cheb_generating_check(n_max: int) -> bool:
    """1 + sum S_n(x) t^n = 1/(1 - t x + t^2) through t^n_max."""
    series = rs_series_inversion(1 - _ST * _SX + _ST**2, _ST, n_max + 1)
    total = _SERIES_RING.zero
    for k in range(0, n_max + 1):
        total += _lift(cheb(k, "S"), k)
    return series == total


# ---------------------------------------------------------------------------
# Bracket algebra
# ---------------------------------------------------------------------------


def _s_only(coeff: RatFunc) -> RatFunc:
    if coeff.involves_v():
        raise DomainError(f"bracket coefficients are functions of s only, got {coeff}")
    return coeff


class BracketElement:
    """unit * 1 + sum of coeff * e_x over curve classes x."""

    __slots__ = ("_unit", "_curves")

    def __init__(self, unit: Scalar = 0, curves: Optional[Mapping[CurveClass, Scalar]] = None):
        self._unit = _s_only(RatFunc.coerce(unit))
        clean: Dict[CurveClass, RatFunc] = {}
        for x, coeff in (curves or {}).items():
            coeff = _s_only(RatFunc.coerce(coeff))
            if coeff:
                clean[x] = coeff
        self._curves = MappingProxyType(clean)

    @property
    def unit(self) -> RatFunc:
        return self._unit

    @property
    def curves(self) -> Mapping[CurveClass, RatFunc]:
        return self._curves

    def coefficient(self, x) -> RatFunc:
        return self._curves.get(canonicalize(x), ZERO)

    def is_zero(self) -> bool:
        return not self._unit and not self._curves

    def _terms(self) -> Iterator[Tuple[Optional[CurveClass], RatFunc]]:
        if self._unit:
            yield None, self._unit
        yield from self._curves.items()

    def __add__(self, other: "BracketElement") -> "BracketElement":
        if not isinstance(other, BracketElement):
            return NotImplemented
        curves = dict(self._curves)
        for x, coeff in other._curves.items():
            curves[x] = curves[x] + coeff if x in curves else coeff
        return BracketElement(self._unit + other._unit, curves)

    def __neg__(self) -> "BracketElement":
        return BracketElement(-self._unit, {x: -c for x, c in self._curves.items()})

    def __sub__(self, other: "BracketElement") -> "BracketElement":
        if not isinstance(other, BracketElement):
            return NotImplemented
        return self + (-other)

    def scale(self, coeff: Scalar) -> "BracketElement":
        coeff = RatFunc.coerce(coeff)
        return BracketElement(coeff * self._unit, {x: coeff * c for x, c in self._curves.items()})

    def __mul__(self, other):
        if isinstance(other, BracketElement):
            return e_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, BracketElement):
            return NotImplemented
        return self._unit == other._unit and dict(self._curves) == dict(other._curves)

    def __hash__(self) -> int:
        return hash((self._unit, frozenset(self._curves.items())))

    def render(self) -> str:
        items = [(f"e[{x.a},{x.b}]", c) for x, c in sorted(self._curves.items())]
        if self._unit:
            items.append(("", self._unit))
        return render_combination(items)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"BracketElement({self.render()})"


def e_generator(x) -> BracketElement:
    """e_x, with e_0 = 2."""
    v = as_vector(x)
    if v == (0, 0):
        return BracketElement(2)
    return BracketElement(0, {canonicalize(v): 1})


def _e_basis_product(x: CurveClass, y: CurveClass) -> BracketElement:
    d = det(x, y)
    return e_generator(vadd(x, y)).scale(S**d) + e_generator(vsub(x, y)).scale(S ** (-d))


def e_mul(p: BracketElement, q: BracketElement) -> BracketElement:
    unit = ZERO
    curves: Dict[CurveClass, RatFunc] = {}
    result = BracketElement()
    for x, cx in p._terms():
        for y, cy in q._terms():
            c = cx * cy
            if x is None and y is None:
                unit = unit + c
            elif x is None or y is None:
                z = y if x is None else x
                curves[z] = curves[z] + c if z in curves else c
            else:
                result = result + _e_basis_product(x, y).scale(c)
    return result + BracketElement(unit, curves)


def e_commutator(p: BracketElement, q: BracketElement) -> BracketElement:
    return e_mul(p, q) - e_mul(q, p)


def e_relation_rhs(x, y) -> BracketElement:
    """(s^d - s^-d)(e_{x+y} - e_{x-y})."""
    d = det(x, y)
    return (e_generator(vadd(x, y)) - e_generator(vsub(x, y))).scale(qint(d))


def e_power_check(x) -> bool:
    """e_x = T_k(e_{x/k}) for k = d(x)."""
    k = content(x)
    a, b = as_vector(x)
    primitive = e_generator((a // k, b // k))
    return cheb(k, "T").evaluate_bracket(primitive) == e_generator(x)


def parallel_check(x0, m: int, n: int) -> bool:
    """e_{m x0} e_{n x0} = e_{(m+n) x0} + e_{|m-n| x0}."""
    lhs = e_mul(e_generator(vscale(m, x0)), e_generator(vscale(n, x0)))
    rhs = e_generator(vscale(m + n, x0)) + e_generator(vscale(abs(m - n), x0))
    return lhs == rhs


def phi_map(p: SkeinElement) -> BracketElement:
    """D_x -> e_x on words, v -> -s^-3 on coefficients."""
    result = BracketElement()
    for word, coeff in p:
        image = BracketElement(1)
        for x in word:
            image = e_mul(image, e_generator(x))
        result = result + image.scale(coeff.specialize_bracket())
    return result
