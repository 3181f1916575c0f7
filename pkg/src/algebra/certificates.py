"""
Reduction certificates for the commutator relation.

A certificate for a pair (x, y) records how the relation
[D_x, D_y] = {d(x,y)}(D_{x+y} - D_{x-y}) follows from the two base
relations

    rel1:  [D_(1,0), D_(0,n)] = {n}(D_(1,n) - D_(1,-n))
    rel2:  [D_(1,0), D_(1,n)] = {n}(D_(2,n) - D_(0,n))

and the GL2(Z) action.  A Split node picks a + b = x (after moving the
pair into the frame y = (0, r), x = (p, q), 0 <= q < p) and reduces to the
six pairs (a,b), (y,a), (y,b), (y+a,b), (y+b,a), (a-b,y).

Children get smaller under the measure (|d(x,y)|, flag) where flag is 0
when one of the two vectors is primitive.  |d| drops strictly except for
the (y+b, a) child of the two (1,-1) splits, which keeps |d| but has the
primitive vector a.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import gcd
from typing import Dict, List, Tuple, Union

from src.algebra.coeff import DomainError, RatFunc, qint
from src.algebra.torus import (
    ROTATION,
    GL2Matrix,
    Vector,
    as_vector,
    canonical_vector,
    content,
    det,
    gl2_reduce,
    vadd,
    vscale,
    vsub,
)

logger = logging.getLogger(__name__)

CERTIFICATE_CACHE_SIZE = 1 << 14


class CertificateError(RuntimeError):
    """A pair failed to reduce; indicates a bug in the case analysis."""


class BaseKind(str, Enum):
    REL1 = "rel1"
    REL2 = "rel2"
    UNIT_DET = "unit-det"


class SplitCase(str, Enum):
    PRIMITIVE = "primitive"
    CASE_1A = "case-1a"
    CASE_1B = "case-1b"
    CASE_1C = "case-1c"
    CASE_2 = "case-2"


@dataclass(frozen=True)
class BaseNode:
    kind: BaseKind
    gl2: GL2Matrix = field(default_factory=GL2Matrix.identity)


@dataclass(frozen=True)
class SplitNode:
    gl2: GL2Matrix
    swapped: bool
    a: Vector
    b: Vector
    children: Tuple["Certificate", ...]
    case: SplitCase = SplitCase.PRIMITIVE


@dataclass(frozen=True)
class Certificate:
    pair: Tuple[Vector, Vector]
    node: Union[BaseNode, SplitNode]

    @property
    def is_base(self) -> bool:
        return isinstance(self.node, BaseNode)


def measure(x, y) -> Tuple[int, int]:
    flag = 0 if content(x) == 1 or content(y) == 1 else 1
    return abs(det(x, y)), flag


def split_children(y: Vector, a: Vector, b: Vector) -> Tuple[Tuple[Vector, Vector], ...]:
    """The six pairs that make (a + b, y) good."""
    return (
        (a, b),
        (y, a),
        (y, b),
        (vadd(y, a), b),
        (vadd(y, b), a),
        (vsub(a, b), y),
    )


# ---------------------------------------------------------------------------
# Diophantine split and normalization
# ---------------------------------------------------------------------------


def diophantine_split(p: int, q: int) -> Tuple[int, int, int, int]:
    """(u, v, w, z) with u + w = p, v + z = q, 0 < u, w < p, uz - wv = 1."""
    if p <= 1 or not 0 < q < p or gcd(p, q) != 1:
        raise DomainError(f"diophantine_split needs coprime 0 < q < p, got ({p}, {q})")
    b = pow(q, -1, p)
    a = (b * q - 1) // p
    return b, a, p - b, q - a


def normalize_pair(x: Vector, y: Vector) -> Tuple[GL2Matrix, bool, Vector, Vector]:
    """Move (x, y) to y = (0, r), x = (p, q) with 0 <= q < p and d(x) <= d(y).

    Returns (g, swapped, g x', g y') where (x', y') is (x, y) or (y, x).
    Requires d(x, y) != 0.
    """
    swapped = content(x) > content(y)
    if swapped:
        x, y = y, x
    g, _ = gl2_reduce(y)
    g = ROTATION @ g
    p, q = g.apply(x)
    if p < 0:
        g = GL2Matrix(-1, 0, 0, 1) @ g
        p = -p
    k = -(q // p)
    g = GL2Matrix(1, 0, k, 1) @ g
    return g, swapped, g.apply(x), g.apply(y)


def _rel2_frame(p: int, q: int) -> GL2Matrix:
    # (0,1) -> (1,0) and (p, q) -> +-(1, p) for q = 1 or q = p - 1
    alpha = 0 if q == 1 else -1
    return GL2Matrix(alpha, 1, -1, 0)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def build_certificate(x, y) -> Certificate:
    x, y = as_vector(x), as_vector(y)
    if x == (0, 0) or y == (0, 0):
        raise DomainError("certificate pairs must be nonzero")
    return _build(x, y)


@lru_cache(maxsize=CERTIFICATE_CACHE_SIZE)
def _build(x: Vector, y: Vector) -> Certificate:
    if abs(det(x, y)) <= 1:
        return Certificate((x, y), BaseNode(BaseKind.UNIT_DET))

    g, swapped, xh, yh = normalize_pair(x, y)
    p, q = xh
    r = yh[1]
    gx = content(xh)

    if p == 1:
        return Certificate((x, y), BaseNode(BaseKind.REL1, g))

    if gx == 1:
        if r == 1 and q in (1, p - 1):
            return Certificate((x, y), BaseNode(BaseKind.REL2, _rel2_frame(p, q) @ g))
        u, v, w, z = diophantine_split(p, q)
        a, b, case = (u, v), (w, z), SplitCase.PRIMITIVE
    elif q > 0:
        u, v, w, z = diophantine_split(p // gx, q // gx)
        if u + 1 < p // gx:
            case = SplitCase.CASE_1A
        elif gx < r:
            case = SplitCase.CASE_1B
        else:
            case = SplitCase.CASE_1C
        if case is SplitCase.CASE_1C:
            a, b = (1, -1), (p - 1, q + 1)
        else:
            a, b = vscale(gx, (u, v)), vscale(gx, (w, z))
    else:
        a, b, case = (1, -1), (p - 1, 1), SplitCase.CASE_2

    logger.debug("split %s,%s as %s: a=%s b=%s in frame x=%s y=%s", x, y, case.value, a, b, xh, yh)
    parent = measure(x, y)
    children = []
    for cx, cy in split_children(yh, a, b):
        if measure(cx, cy) >= parent:
            raise CertificateError(
                f"{case.value} split of {(x, y)} does not reduce child {(cx, cy)}"
            )
        children.append(_build(cx, cy))
    return Certificate((x, y), SplitNode(g, swapped, a, b, tuple(children), case))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _base_shape_ok(kind: BaseKind, g: GL2Matrix, x: Vector, y: Vector) -> bool:
    if kind is BaseKind.UNIT_DET:
        return abs(det(x, y)) <= 1
    images = {canonical_vector(g.apply(x)), canonical_vector(g.apply(y))}
    if (1, 0) not in images or len(images) != 2:
        return False
    (other,) = images - {(1, 0)}
    if kind is BaseKind.REL1:
        return other[0] == 0 and other[1] > 0
    return other[0] == 1


def check_certificate(cert: Certificate) -> List[Tuple[str, str]]:
    """List (node path, reason) for every defect; empty when valid."""
    defects: List[Tuple[str, str]] = []
    seen: Dict[int, bool] = {}

    def visit(c: Certificate, path: str) -> None:
        if id(c) in seen:
            return
        seen[id(c)] = True
        try:
            x, y = (as_vector(v) for v in c.pair)
        except (TypeError, ValueError):
            defects.append((path, "malformed pair"))
            return
        node = c.node
        if isinstance(node, BaseNode):
            try:
                kind = BaseKind(node.kind)
            except ValueError:
                defects.append((path, f"unknown base kind {node.kind!r}"))
                return
            if not _base_shape_ok(kind, node.gl2, x, y):
                defects.append((path, f"pair {(x, y)} does not have {kind.value} shape"))
            return
        if not isinstance(node, SplitNode):
            defects.append((path, "node is neither base nor split"))
            return
        if node.gl2.det not in (1, -1):
            defects.append((path, "normalization is not invertible over Z"))
            return
        xs, ys = (y, x) if node.swapped else (x, y)
        xh, yh = node.gl2.apply(xs), node.gl2.apply(ys)
        if vadd(node.a, node.b) != xh:
            defects.append((path, f"a + b = {vadd(node.a, node.b)} differs from x = {xh}"))
        expected = split_children(yh, tuple(node.a), tuple(node.b))
        if len(node.children) != len(expected):
            defects.append((path, f"expected 6 children, found {len(node.children)}"))
            return
        parent = measure(x, y)
        for i, (child, want) in enumerate(zip(node.children, expected)):
            child_path = f"{path}/{i}"
            got = tuple(as_vector(v) for v in child.pair)
            if got != want:
                defects.append((child_path, f"child pair {got} should be {want}"))
            if measure(*got) >= parent:
                defects.append(
                    (child_path, f"child |d| = {abs(det(*got))} does not decrease from {parent[0]}")
                )
            visit(child, child_path)

    visit(cert, "root")
    return defects


def validate_certificate(cert: Certificate) -> bool:
    defects = check_certificate(cert)
    for path, reason in defects:
        logger.debug("certificate defect at %s: %s", path, reason)
    return not defects


def certificate_stats(cert: Certificate) -> Dict[str, object]:
    """Node count, depth, base-kind and split-case histograms of the unfolded tree."""
    memo: Dict[int, Tuple[int, int, Counter]] = {}

    def walk(c: Certificate) -> Tuple[int, int, Counter]:
        if id(c) in memo:
            return memo[id(c)]
        if isinstance(c.node, BaseNode):
            result = (1, 0, Counter({f"base:{c.node.kind.value}": 1}))
        else:
            hist = Counter({f"split:{c.node.case.value}": 1})
            nodes, depth = 1, 0
            for child in c.node.children:
                n, d, h = walk(child)
                nodes, depth = nodes + n, max(depth, d + 1)
                hist.update(h)
            result = (nodes, depth, hist)
        memo[id(c)] = result
        return result

    nodes, depth, hist = walk(cert)
    return {"nodes": nodes, "depth": depth, "histogram": dict(sorted(hist.items()))}


# ---------------------------------------------------------------------------
# Coefficient collapse
# ---------------------------------------------------------------------------

Formal = Dict[Vector, RatFunc]


def _formal_add(acc: Formal, vector: Vector, coeff: RatFunc) -> None:
    key = canonical_vector(vector)
    acc[key] = acc[key] + coeff if key in acc else coeff


def _formal_clean(acc: Formal) -> Formal:
    return {k: c for k, c in acc.items() if c}


def coefficient_collapse_check(a, b, y) -> bool:
    """Check the coefficient identities behind the Jacobi reduction.

    With x = a + b and c1..c4 the coefficients of D_{a+b+y}, D_{a+b-y},
    D_{a-b+y}, D_{a-b-y} in [[D_y, D_a], D_b] + [[D_b, D_y], D_a]:
    c1 = -{d(a,b)}{d(x,y)}, c1 equals its {.}+ expansion, and
    c1 D + c2 D - c3 D - c4 D is
    -{d(a,b)}({d(x,y)}(D_{x+y} - D_{x-y}) - {d(a-b,y)}(D_{a-b+y} - D_{a-b-y})).
    """
    a, b, y = as_vector(a), as_vector(b), as_vector(y)
    x = vadd(a, b)
    if (0, 0) in (a, b, y, x):
        raise DomainError("a, b, y and a + b must be nonzero")

    def br(n: int) -> RatFunc:
        return qint(n)

    def bp(n: int) -> RatFunc:
        return qint(n, "brace_plus")

    d_ya, d_by, d_ab = det(y, a), det(b, y), det(a, b)
    d_ya_plus, d_ya_minus = det(vadd(y, a), b), det(vsub(y, a), b)
    d_by_plus, d_by_minus = det(vadd(b, y), a), det(vsub(b, y), a)

    c1 = br(d_ya) * br(d_ya_plus) + br(d_by) * br(d_by_plus)
    c2 = br(d_ya) * br(d_ya_minus) - br(d_by) * br(d_by_minus)
    c3 = br(d_ya) * br(d_ya_plus) - br(d_by) * br(d_by_minus)
    c4 = br(d_ya) * br(d_ya_minus) + br(d_by) * br(d_by_plus)

    expanded = (
        bp(d_ya + d_ya_plus)
        - bp(d_ya - d_ya_plus)
        + bp(d_by + d_by_plus)
        - bp(d_by - d_by_plus)
    )
    first = c1 == -br(d_ab) * br(det(x, y)) and c1 == expanded

    lhs: Formal = {}
    _formal_add(lhs, vadd(x, y), c1)
    _formal_add(lhs, vsub(x, y), c2)
    amb = vsub(a, b)
    _formal_add(lhs, vadd(amb, y), -c3)
    _formal_add(lhs, vsub(amb, y), -c4)

    rhs: Formal = {}
    k = -br(d_ab)
    _formal_add(rhs, vadd(x, y), k * br(det(x, y)))
    _formal_add(rhs, vsub(x, y), -k * br(det(x, y)))
    _formal_add(rhs, vadd(amb, y), -k * br(det(amb, y)))
    _formal_add(rhs, vsub(amb, y), k * br(det(amb, y)))

    return first and _formal_clean(lhs) == _formal_clean(rhs)
