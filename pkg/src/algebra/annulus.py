"""
Hook-basis fragment of the annulus skein.

Only the span of the closed hook idempotents Q_(a|b) and the empty link
is modeled.  (0,1) is the core of the annulus and (1,0) the meridian,
which acts diagonally on the hook basis.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from types import MappingProxyType
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from sympy import QQ
from sympy.polys.rings import ring
from sympy.polys.ring_series import rs_mul, rs_series_inversion

from src.algebra.coeff import ONE, ZERO, DomainError, RatFunc, S, Scalar, V, delta, qint, render_combination

logger = logging.getLogger(__name__)

_SERIES_RING, _T = ring("t", QQ)
_HOOK_RING, _HT, _HU = ring("t,u", QQ)


@dataclass(frozen=True, order=True)
class Hook:
    """Hook partition (a|b): arm a, leg b, size a + b + 1."""

    arm: int
    leg: int

    def __post_init__(self):
        if self.arm < 0 or self.leg < 0:
            raise DomainError(f"hook ({self.arm}|{self.leg}) needs nonnegative arm and leg")

    @property
    def size(self) -> int:
        return self.arm + self.leg + 1

    def to_partition(self) -> "Partition":
        return Partition((self.arm + 1,) + (1,) * self.leg)

    def __str__(self) -> str:
        return f"Q[{self.arm}|{self.leg}]"


def hooks_of_size(n: int) -> List[Hook]:
    return [Hook(n - 1 - b, b) for b in range(n)]


@dataclass(frozen=True)
class Partition:
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise DomainError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DomainError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def cells(self) -> Iterator[Tuple[int, int]]:
        for i, length in enumerate(self.parts):
            for j in range(length):
                yield i, j

    def contents(self) -> List[int]:
        """cn(i, j) = j - i for every cell."""
        return [j - i for i, j in self.cells()]

    @property
    def is_hook(self) -> bool:
        return bool(self.parts) and all(p == 1 for p in self.parts[1:])

    def as_hook(self) -> Hook:
        if not self.is_hook:
            raise DomainError(f"{self.parts} is not a hook")
        return Hook(self.parts[0] - 1, len(self.parts) - 1)


class AnnulusElement:
    """unit * (empty link) + sum of hook terms."""

    __slots__ = ("_unit", "_hooks")

    def __init__(self, unit: Scalar = 0, hooks: Optional[Mapping[Hook, Scalar]] = None):
        self._unit = RatFunc.coerce(unit)
        clean: Dict[Hook, RatFunc] = {}
        for hook, coeff in (hooks or {}).items():
            coeff = RatFunc.coerce(coeff)
            if coeff:
                clean[hook] = coeff
        self._hooks = MappingProxyType(clean)

    @classmethod
    def empty_link(cls, coeff: Scalar = 1) -> "AnnulusElement":
        return cls(coeff)

    @classmethod
    def hook(cls, arm: int, leg: int, coeff: Scalar = 1) -> "AnnulusElement":
        return cls(0, {Hook(arm, leg): coeff})

    @property
    def unit(self) -> RatFunc:
        return self._unit

    @property
    def hooks(self) -> Mapping[Hook, RatFunc]:
        return self._hooks

    def coefficient(self, hook: Hook) -> RatFunc:
        return self._hooks.get(hook, ZERO)

    def is_zero(self) -> bool:
        return not self._unit and not self._hooks

    def __add__(self, other: "AnnulusElement") -> "AnnulusElement":
        if not isinstance(other, AnnulusElement):
            return NotImplemented
        hooks = dict(self._hooks)
        for hook, coeff in other._hooks.items():
            hooks[hook] = hooks[hook] + coeff if hook in hooks else coeff
        return AnnulusElement(self._unit + other._unit, hooks)

    def __neg__(self) -> "AnnulusElement":
        return AnnulusElement(-self._unit, {h: -c for h, c in self._hooks.items()})

    def __sub__(self, other: "AnnulusElement") -> "AnnulusElement":
        if not isinstance(other, AnnulusElement):
            return NotImplemented
        return self + (-other)

    def scale(self, coeff: Scalar) -> "AnnulusElement":
        coeff = RatFunc.coerce(coeff)
        return AnnulusElement(coeff * self._unit, {h: coeff * c for h, c in self._hooks.items()})

    def __mul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, AnnulusElement):
            return NotImplemented
        return self._unit == other._unit and dict(self._hooks) == dict(other._hooks)

    def __hash__(self) -> int:
        return hash((self._unit, frozenset(self._hooks.items())))

    def render(self) -> str:
        items = [(str(h), c) for h, c in sorted(self._hooks.items(), key=lambda kv: (kv[0].size, kv[0]))]
        if self._unit:
            items.append(("", self._unit))
        return render_combination(items)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"AnnulusElement({self.render()})"


def c_constant(k: int) -> RatFunc:
    """0 for odd k, -1 for even k."""
    if k < 1:
        raise DomainError(f"c_k needs k >= 1, got {k}")
    return ZERO if k % 2 else -ONE


def hook_expansion(k: int) -> AnnulusElement:
    """D_k = sum over i + j + 1 = k of (-1)^j Q_(i|j), plus c_k."""
    if k < 1:
        raise DomainError(f"D_k needs k >= 1, got {k}")
    return AnnulusElement(c_constant(k), {h: (-1) ** h.leg for h in hooks_of_size(k)})


def _hook_series(k: int) -> Dict[Hook, object]:
    """S(t, u) = sum Q_(i|j) t^i u^j truncated below total degree k."""
    return {Hook(i, j): _HT**i * _HU**j for i in range(k) for j in range(k - i)}


def _rational(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def hook_series_expansion(k: int) -> AnnulusElement:
    """Coefficient of t^(k-1) in S(t, -t) - t / (1 - t^2).

    Each hook monomial of S is specialized at u = -t and its t^(k-1)
    coefficient read off; the scalar part comes from the power series of
    t / (1 - t^2).
    """
    if k < 1:
        raise DomainError(f"D_k needs k >= 1, got {k}")
    top = _HT ** (k - 1)
    hooks = {}
    for hook, monomial in _hook_series(k).items():
        coeff = monomial.compose(_HU, -_HT).coeff(top)
        if coeff:
            hooks[hook] = _rational(coeff)
    series = rs_mul(_T, rs_series_inversion(1 - _T**2, _T, k), _T, k)
    return AnnulusElement(-_rational(series.coeff(_T ** (k - 1))), hooks)


def hook_series_check(k: int) -> bool:
    return hook_series_expansion(k) == hook_expansion(k)


def meridian_eigenvalue(lam: Union[Partition, Hook, Tuple[int, ...]]) -> RatFunc:
    """delta + (s - s^-1)(v^-1 sum s^(2 cn) - v sum s^(-2 cn))."""
    if isinstance(lam, Hook):
        lam = lam.to_partition()
    elif not isinstance(lam, Partition):
        lam = Partition(tuple(lam))
    contents = lam.contents()
    up = sum((S ** (2 * c) for c in contents), ZERO)
    down = sum((S ** (-2 * c) for c in contents), ZERO)
    return delta() + qint(1) * (V**-1 * up - V * down)


def hook_eigenvalue_closed_form(hook: Hook) -> RatFunc:
    """delta + v^-1 {n} s^(a-b) - v {n} s^(b-a)."""
    n, e = hook.size, hook.arm - hook.leg
    return delta() + V**-1 * qint(n) * S**e - V * qint(n) * S ** (-e)


def act_meridian(e: AnnulusElement) -> AnnulusElement:
    """Action of D_(1,0): diagonal in the hook basis, delta on the empty link."""
    return AnnulusElement(
        delta() * e.unit,
        {h: meridian_eigenvalue(h) * c for h, c in e.hooks.items()},
    )


def project_empty(x) -> AnnulusElement:
    """D_(M,N) applied to the empty link, N >= 1.

    With k = gcd(M, N) and m = M / k the result is
    c_k + sum over a + b + 1 = N of v^(-km) s^(km(a-b)) (-1)^b Q_(a|b).
    """
    big_m, big_n = (int(t) for t in x)
    if big_n < 1:
        raise DomainError(f"projection onto the empty link needs N >= 1, got {(big_m, big_n)}")
    k = gcd(big_m, big_n)
    km = big_m
    hooks = {
        h: (-1) ** h.leg * V ** (-km) * S ** (km * (h.arm - h.leg))
        for h in hooks_of_size(big_n)
    }
    return AnnulusElement(c_constant(k), hooks)


def projection_expansion(n: int) -> AnnulusElement:
    """{n} sum over a + b + 1 = n of (v^-2 s^(2(a-b)) - 1)(-1)^b Q_(a|b)."""
    return AnnulusElement(
        0,
        {
            h: qint(n) * (-1) ** h.leg * (V**-2 * S ** (2 * (h.arm - h.leg)) - 1)
            for h in hooks_of_size(n)
        },
    )


def angled_on_empty_sides(n: int) -> Tuple[AnnulusElement, AnnulusElement]:
    """([D_(1,0), D_(1,n)] applied to the empty link, {n}(D_(2,n) - D_(0,n)) applied to it)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    p1n = project_empty((1, n))
    lhs = act_meridian(p1n) - p1n.scale(delta())
    rhs = (project_empty((2, n)) - project_empty((0, n))).scale(qint(n))
    return lhs, rhs


def angled_on_empty_check(n: int) -> bool:
    lhs, rhs = angled_on_empty_sides(n)
    ok = lhs == rhs
    logger.debug("angled relation on the empty link, n=%d: %s", n, ok)
    return ok
