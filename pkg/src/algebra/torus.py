"""
Skein algebra of the torus in the presented form.

Generators D_x are indexed by nonzero x in Z^2 modulo x ~ -x.  Elements
are kept in normal form on the basis of sorted words, using the rewrite

    D_y D_x -> D_x D_y - {d(x, y)} (D_{x+y} - D_{x-y})    for y > x.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from src.algebra.coeff import ONE, DomainError, RatFunc, Scalar, qint, render_combination

logger = logging.getLogger(__name__)

Vector = Tuple[int, int]

NF_CACHE_SIZE = 1 << 16


# ---------------------------------------------------------------------------
# Curve classes and lattice helpers
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class CurveClass:
    """Canonical representative of a nonzero vector modulo x ~ -x."""

    a: int
    b: int

    def __post_init__(self):
        if (self.a, self.b) == (0, 0):
            raise DomainError("the zero vector does not index a generator")
        if self.a < 0 or (self.a == 0 and self.b < 0):
            raise DomainError(f"({self.a},{self.b}) is not canonical; use canonicalize()")

    @property
    def vector(self) -> Vector:
        return (self.a, self.b)

    @property
    def content(self) -> int:
        """d(x), the gcd of the entries."""
        return gcd(self.a, self.b)

    def __str__(self) -> str:
        return f"D[{self.a},{self.b}]"


def as_vector(x: Union[CurveClass, Sequence[int]]) -> Vector:
    if isinstance(x, CurveClass):
        return x.vector
    a, b = x
    return (int(a), int(b))


def canonicalize(a: int, b: Optional[int] = None) -> CurveClass:
    if b is None:
        a, b = as_vector(a)
    if (a, b) == (0, 0):
        raise DomainError("zero vector")
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return CurveClass(a, b)


def canonical_vector(x: Sequence[int]) -> Vector:
    """Sign-normalized vector; the zero vector is left as is."""
    a, b = as_vector(x)
    if a < 0 or (a == 0 and b < 0):
        return (-a, -b)
    return (a, b)


def det(x, y) -> int:
    """d(x, y) = det[x y]."""
    (a, b), (c, d) = as_vector(x), as_vector(y)
    return a * d - b * c


def content(x) -> int:
    """d(x) = gcd of the entries."""
    a, b = as_vector(x)
    return gcd(a, b)


def vadd(x, y) -> Vector:
    (a, b), (c, d) = as_vector(x), as_vector(y)
    return (a + c, b + d)


def vsub(x, y) -> Vector:
    (a, b), (c, d) = as_vector(x), as_vector(y)
    return (a - c, b - d)


def vscale(k: int, x) -> Vector:
    a, b = as_vector(x)
    return (k * a, k * b)


# ---------------------------------------------------------------------------
# GL2(Z)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GL2Matrix:
    """Integer matrix [[a, b], [c, d]] of determinant +1 or -1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.det not in (1, -1):
            raise DomainError(f"matrix {self.rows} has determinant {self.det}")

    @classmethod
    def identity(cls) -> "GL2Matrix":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "GL2Matrix":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def rows(self) -> List[List[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def apply(self, x) -> Vector:
        p, q = as_vector(x)
        return (self.a * p + self.b * q, self.c * p + self.d * q)

    def __matmul__(self, other: "GL2Matrix") -> "GL2Matrix":
        return GL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "GL2Matrix":
        k = self.det
        return GL2Matrix(k * self.d, -k * self.b, -k * self.c, k * self.a)


# Generators of GL2(Z)
ROTATION = GL2Matrix(0, -1, 1, 0)
SHEAR = GL2Matrix(1, 1, 0, 1)
REFLECTION = GL2Matrix(1, 0, 0, -1)


def gl2_reduce(x) -> Tuple[GL2Matrix, int]:
    """Return (g, k) with g of determinant 1 and g x = (k, 0), k = d(x)."""
    m, n = as_vector(x)
    k = gcd(m, n)
    if k == 0:
        raise DomainError("zero vector")
    m1, n1 = m // k, n // k
    # alpha m1 + beta n1 = 1
    if n1 == 0:
        alpha, beta = m1, 0
    elif abs(n1) == 1:
        alpha, beta = 0, n1
    else:
        alpha = pow(m1, -1, abs(n1))
        beta = (1 - alpha * m1) // n1
    g = GL2Matrix(alpha, beta, -n1, m1)
    return g, k


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

Word = Tuple[CurveClass, ...]


def word_label(word: Word) -> str:
    return "*".join(str(x) for x in word)


class SkeinElement:
    """Finite combination of sorted words with RatFunc coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Word, Scalar]] = None):
        clean: Dict[Word, RatFunc] = {}
        for word, coeff in (terms or {}).items():
            coeff = RatFunc.coerce(coeff)
            if coeff:
                clean[tuple(word)] = coeff
        self._terms = MappingProxyType(clean)

    @classmethod
    def zero(cls) -> "SkeinElement":
        return cls()

    @classmethod
    def unit(cls, coeff: Scalar = 1) -> "SkeinElement":
        return cls({(): coeff})

    @property
    def terms(self) -> Mapping[Word, RatFunc]:
        return self._terms

    def __iter__(self) -> Iterator[Tuple[Word, RatFunc]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, word: Iterable[CurveClass]) -> RatFunc:
        return self._terms.get(tuple(word), RatFunc(0))

    def max_word_length(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def is_lie_element(self) -> bool:
        """Supported on words of length at most one."""
        return self.max_word_length() <= 1

    def __add__(self, other: "SkeinElement") -> "SkeinElement":
        if not isinstance(other, SkeinElement):
            return NotImplemented
        return SkeinElement(_accumulate([self._terms.items(), other._terms.items()]))

    def __neg__(self) -> "SkeinElement":
        return SkeinElement({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "SkeinElement") -> "SkeinElement":
        if not isinstance(other, SkeinElement):
            return NotImplemented
        return self + (-other)

    def scale(self, coeff: Scalar) -> "SkeinElement":
        coeff = RatFunc.coerce(coeff)
        return SkeinElement({w: coeff * c for w, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, SkeinElement):
            return multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int) -> "SkeinElement":
        if n < 0:
            raise DomainError("negative powers are not defined")
        result = SkeinElement.unit()
        for _ in range(n):
            result = multiply(result, self)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkeinElement):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def sorted_terms(self) -> List[Tuple[Word, RatFunc]]:
        return sorted(self._terms.items(), key=lambda item: (len(item[0]), item[0]))

    def render(self) -> str:
        return render_combination((word_label(w), c) for w, c in self.sorted_terms())

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"SkeinElement({self.render()})"


def _accumulate(chunks: Iterable[Iterable[Tuple[Word, RatFunc]]]) -> Dict[Word, RatFunc]:
    acc: Dict[Word, RatFunc] = {}
    for chunk in chunks:
        for word, coeff in chunk:
            acc[word] = acc[word] + coeff if word in acc else coeff
    return {w: c for w, c in acc.items() if c}


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------


@lru_cache(maxsize=NF_CACHE_SIZE)
def _normal_form(word: Word, rightmost: bool) -> Tuple[Tuple[Word, RatFunc], ...]:
    inversions = [i for i in range(len(word) - 1) if word[i] > word[i + 1]]
    if not inversions:
        return ((word, ONE),)
    i = inversions[-1] if rightmost else inversions[0]
    y, x = word[i], word[i + 1]
    head, tail = word[:i], word[i + 2:]

    pieces = [_normal_form(head + (x, y) + tail, rightmost)]
    d = det(x, y)
    if d:
        c = qint(d)
        for sign, z in ((-1, vadd(x, y)), (1, vsub(x, y))):
            if z == (0, 0):
                continue
            nf = _normal_form(head + (canonicalize(z),) + tail, rightmost)
            pieces.append(tuple((w, sign * c * k) for w, k in nf))
    return tuple(_accumulate(pieces).items())


def normal_form(word: Iterable[CurveClass], strategy: str = "leftmost") -> SkeinElement:
    """Normal form of a single (unsorted) word."""
    if strategy not in ("leftmost", "rightmost"):
        raise DomainError(f"unknown rewrite strategy {strategy!r}")
    return SkeinElement(dict(_normal_form(tuple(word), strategy == "rightmost")))


def generator(x) -> SkeinElement:
    if not isinstance(x, CurveClass):
        x = canonicalize(x)
    return SkeinElement({(x,): 1})


def from_words(terms: Iterable[Tuple[Iterable[CurveClass], Scalar]], strategy: str = "leftmost") -> SkeinElement:
    """Normalize a combination of arbitrary words."""
    rightmost = strategy == "rightmost"
    chunks = []
    for word, coeff in terms:
        coeff = RatFunc.coerce(coeff)
        chunks.append([(w, coeff * k) for w, k in _normal_form(tuple(word), rightmost)])
    return SkeinElement(_accumulate(chunks))


def multiply(p: SkeinElement, q: SkeinElement, strategy: str = "leftmost") -> SkeinElement:
    return from_words(
        ((wp + wq, cp * cq) for wp, cp in p for wq, cq in q), strategy=strategy
    )


def commutator(p: SkeinElement, q: SkeinElement) -> SkeinElement:
    return multiply(p, q) - multiply(q, p)


def relation_rhs(x, y) -> SkeinElement:
    """{d(x,y)} (D_{x+y} - D_{x-y}) with zero vectors dropped."""
    d = det(x, y)
    if not d:
        return SkeinElement.zero()
    c = qint(d)
    chunks = []
    for sign, z in ((1, vadd(x, y)), (-1, vsub(x, y))):
        if z != (0, 0):
            chunks.append([((canonicalize(z),), sign * c)])
    return SkeinElement(_accumulate(chunks))


def gl2_apply(g: GL2Matrix, p: SkeinElement) -> SkeinElement:
    """Act by g; determinant -1 reverses words."""
    reverse = g.det == -1
    mapped = []
    for word, coeff in p:
        image = tuple(canonicalize(g.apply(x)) for x in word)
        mapped.append((image[::-1] if reverse else image, coeff))
    return from_words(mapped)


def clear_normal_form_cache() -> None:
    _normal_form.cache_clear()
    logger.debug("normal form cache cleared")
