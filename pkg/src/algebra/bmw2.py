"""
The algebra BMW_2 with basis {1, sigma, h}.

Structure constants, with z = s - s^-1:

    sigma h = h sigma = v h
    h h = delta h
    sigma sigma = 1 + z (sigma - v h)

These are the only constants compatible with delta = 1 - (v - v^-1)/z
and associativity; sigma^-1 = sigma - z (1 - h).
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List

from src.algebra.coeff import ONE, ZERO, DomainError, RatFunc, S, Scalar, V, beta, delta, qint, render_combination

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BMW2Element:
    c1: RatFunc = ZERO
    csigma: RatFunc = ZERO
    ch: RatFunc = ZERO

    def __post_init__(self):
        for name in ("c1", "csigma", "ch"):
            object.__setattr__(self, name, RatFunc.coerce(getattr(self, name)))

    def __add__(self, other: "BMW2Element") -> "BMW2Element":
        if not isinstance(other, BMW2Element):
            return NotImplemented
        return BMW2Element(self.c1 + other.c1, self.csigma + other.csigma, self.ch + other.ch)

    def __neg__(self) -> "BMW2Element":
        return BMW2Element(-self.c1, -self.csigma, -self.ch)

    def __sub__(self, other: "BMW2Element") -> "BMW2Element":
        if not isinstance(other, BMW2Element):
            return NotImplemented
        return self + (-other)

    def scale(self, coeff: Scalar) -> "BMW2Element":
        coeff = RatFunc.coerce(coeff)
        return BMW2Element(coeff * self.c1, coeff * self.csigma, coeff * self.ch)

    def __mul__(self, other):
        if isinstance(other, BMW2Element):
            return bmw2_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def is_h_multiple(self) -> bool:
        return not self.c1 and not self.csigma

    def render(self) -> str:
        items = [(label, c) for label, c in (("", self.c1), ("sigma", self.csigma), ("h", self.ch)) if c]
        return render_combination(items)

    def __str__(self) -> str:
        return self.render()


UNIT = BMW2Element(ONE, ZERO, ZERO)
SIGMA = BMW2Element(ZERO, ONE, ZERO)
H = BMW2Element(ZERO, ZERO, ONE)
BASIS = (UNIT, SIGMA, H)


def _z() -> RatFunc:
    return qint(1)


def _basis_product(i: int, j: int) -> BMW2Element:
    """Product of basis elements i, j in (1, sigma, h)."""
    if i == 0:
        return BASIS[j]
    if j == 0:
        return BASIS[i]
    if i == 1 and j == 1:
        return BMW2Element(ONE, _z(), -_z() * V)
    if i == 2 and j == 2:
        return BMW2Element(ZERO, ZERO, delta())
    return BMW2Element(ZERO, ZERO, V)


def _coords(x: BMW2Element) -> List[RatFunc]:
    return [x.c1, x.csigma, x.ch]


def bmw2_mul(x: BMW2Element, y: BMW2Element) -> BMW2Element:
    result = BMW2Element()
    for (i, a), (j, b) in itertools.product(enumerate(_coords(x)), enumerate(_coords(y))):
        if a and b:
            result = result + _basis_product(i, j).scale(a * b)
    return result


def bmw2_inverse_sigma() -> BMW2Element:
    return BMW2Element(-_z(), ONE, _z())


def bmw2_mirror(x: BMW2Element) -> BMW2Element:
    """Mirror map: bar the coefficients, sigma -> sigma^-1, h -> h."""
    return (
        UNIT.scale(x.c1.bar())
        + bmw2_inverse_sigma().scale(x.csigma.bar())
        + H.scale(x.ch.bar())
    )


def p1_plus() -> BMW2Element:
    """1 - delta^-1 h."""
    return BMW2Element(ONE, ZERO, -delta() ** -1)


def hecke_mul(x: BMW2Element, y: BMW2Element) -> BMW2Element:
    """Product in H_2 (sigma^2 = 1 + z sigma) of elements with ch = 0."""
    if x.ch or y.ch:
        raise DomainError("Hecke elements have no h component")
    sq = x.csigma * y.csigma
    return BMW2Element(x.c1 * y.c1 + sq, x.c1 * y.csigma + x.csigma * y.c1 + _z() * sq, ZERO)


def section_s2(x: BMW2Element) -> BMW2Element:
    """p1+ x p1+ for x in the span of {1, sigma}."""
    if x.ch:
        raise DomainError("section_s2 is defined on the span of 1 and sigma")
    p = p1_plus()
    return bmw2_mul(bmw2_mul(p, x), p)


def p2_hecke() -> BMW2Element:
    """(sigma + sigma^-1)/(s + s^-1) in H_2, where sigma^-1 = sigma - z."""
    return BMW2Element(-_z(), 2, ZERO).scale(qint(1, "brace_plus") ** -1)


def z2_hecke() -> BMW2Element:
    """(1 + s sigma)/(s^2 + 1)."""
    return BMW2Element(ONE, S, ZERO).scale((S**2 + 1) ** -1)


def b2_element() -> BMW2Element:
    """(sigma + sigma^-1)/(s + s^-1) - delta^-1 (v + v^-1)/(s + s^-1) h."""
    q = qint(1, "brace_plus")
    sigma_sum = SIGMA + bmw2_inverse_sigma()
    return sigma_sum.scale(q**-1) - H.scale(delta() ** -1 * (V + V**-1) / q)


def f2_element() -> BMW2Element:
    """(1 + s sigma + beta_1 h)/(s^2 + 1)."""
    return BMW2Element(ONE, S, beta(1)).scale((S**2 + 1) ** -1)


def f2_checks() -> bool:
    f2 = f2_element()
    zero = BMW2Element()
    checks = {
        "idempotent": bmw2_mul(f2, f2) == f2,
        "sigma right": bmw2_mul(f2, SIGMA) == f2.scale(S),
        "sigma left": bmw2_mul(SIGMA, f2) == f2.scale(S),
        "h right": bmw2_mul(f2, H) == zero,
        "h left": bmw2_mul(H, f2) == zero,
        "section": section_s2(z2_hecke()) == f2,
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        logger.warning("f2 checks failed: %s", ", ".join(failed))
    return not failed


def associativity_check() -> bool:
    for x, y, z in itertools.product(BASIS, repeat=3):
        if bmw2_mul(bmw2_mul(x, y), z) != bmw2_mul(x, bmw2_mul(y, z)):
            logger.warning("BMW2 associativity fails on %s, %s, %s", x, y, z)
            return False
    return True


def quadratic_relation_check() -> bool:
    """sigma - sigma^-1 = z (1 - h) and sigma sigma^-1 = sigma^-1 sigma = 1."""
    inv = bmw2_inverse_sigma()
    return (
        SIGMA - inv == BMW2Element(_z(), ZERO, -_z())
        and bmw2_mul(SIGMA, inv) == UNIT
        and bmw2_mul(inv, SIGMA) == UNIT
    )


def b2_discrepancy() -> BMW2Element:
    """B_2 - (2 f_2 - 1); a multiple of h."""
    return section_s2(p2_hecke()) - (f2_element().scale(2) - UNIT)


def bmw2_report() -> Dict[str, bool]:
    p = p1_plus()
    return {
        "associativity": associativity_check(),
        "quadratic relation": quadratic_relation_check(),
        "p1+ idempotent": bmw2_mul(p, p) == p,
        "p1+ kills h": bmw2_mul(p, H) == BMW2Element(),
        "p1+ mirror fixed": bmw2_mirror(p) == p,
        "f2 symmetrizer": f2_checks(),
        "f2 mirror fixed": bmw2_mirror(f2_element()) == f2_element(),
        "B2 closed form": section_s2(p2_hecke()) == b2_element(),
        "B2 - (2 f2 - 1) in R h": b2_discrepancy().is_h_multiple(),
    }
