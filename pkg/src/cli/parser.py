"""
Expression language of the command line.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' int]
    atom   := D[a,b] | e[a,b] | Q[a|b] | {n} | delta | s | v | uint | '(' expr ')'

D atoms belong to the torus context, Q atoms to the annulus context and
e atoms to the bracket context.  Negative exponents and '/' need a scalar
operand.  Every rendered value parses back to itself.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator, List, Optional, Union

import pyparsing as pp

from src.algebra.annulus import AnnulusElement
from src.algebra.bracket import BracketElement, e_generator, e_mul
from src.algebra.coeff import ONE, DomainError, RatFunc, S, V, delta, qint, ratfunc_pow
from src.algebra.torus import SkeinElement, generator, multiply

logger = logging.getLogger(__name__)

DEFAULT_MAX_EXPONENT = 64


class ParseError(ValueError):
    """Syntax error or context mismatch at a byte offset of the input."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at byte {offset})")
        self.message = message
        self.offset = offset


class Context(str, Enum):
    TORUS = "torus"
    ANNULUS = "annulus"
    BRACKET = "bracket"


# ---------------------------------------------------------------------------
# Syntax tree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Number:
    loc: int
    value: int


@dataclass(frozen=True)
class Symbol:
    loc: int
    name: str  # "s", "v" or "delta"


@dataclass(frozen=True)
class QInt:
    loc: int
    n: int


@dataclass(frozen=True)
class Curve:
    loc: int
    kind: str  # "D" or "e"
    a: int
    b: int


@dataclass(frozen=True)
class HookAtom:
    loc: int
    arm: int
    leg: int


@dataclass(frozen=True)
class Neg:
    loc: int
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    loc: int
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    loc: int
    base: "Expr"
    exponent: int
    exponent_loc: int


Expr = Union[Number, Symbol, QInt, Curve, HookAtom, Neg, BinOp, Pow]


def children(node: Expr) -> List[Expr]:
    if isinstance(node, Neg):
        return [node.operand]
    if isinstance(node, BinOp):
        return [node.left, node.right]
    if isinstance(node, Pow):
        return [node.base]
    return []


def walk(node: Expr) -> Iterator[Expr]:
    yield node
    for child in children(node):
        yield from walk(child)


# ---------------------------------------------------------------------------
# Grammar
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Exponent:
    loc: int
    value: int


def _fold_factor(s, loc, toks):
    if len(toks) == 1:
        return toks[0]
    base, exp = toks
    return Pow(loc, base, exp.value, exp.loc)


def _fold_term(s, loc, toks):
    node = toks[0]
    for i in range(1, len(toks), 2):
        node = BinOp(loc, toks[i], node, toks[i + 1])
    return node


def _fold_expr(s, loc, toks):
    toks = list(toks)
    node: Expr
    if isinstance(toks[0], str):
        sign, first = toks[0], toks[1]
        node = Neg(loc, first) if sign == "-" else first
        rest = toks[2:]
    else:
        node, rest = toks[0], toks[1:]
    for i in range(0, len(rest), 2):
        node = BinOp(loc, rest[i], node, rest[i + 1])
    return node


@lru_cache(maxsize=1)
def _grammar() -> pp.ParserElement:
    curve = pp.Regex(r"(?P<kind>[De])\[\s*(?P<a>[+-]?\d+)\s*,\s*(?P<b>[+-]?\d+)\s*\]")
    curve.set_parse_action(lambda s, loc, t: Curve(loc, t["kind"], int(t["a"]), int(t["b"])))

    hook = pp.Regex(r"Q\[\s*(?P<arm>\d+)\s*\|\s*(?P<leg>\d+)\s*\]")
    hook.set_parse_action(lambda s, loc, t: HookAtom(loc, int(t["arm"]), int(t["leg"])))

    brace = pp.Regex(r"\{\s*(?P<n>[+-]?\d+)\s*\}")
    brace.set_parse_action(lambda s, loc, t: QInt(loc, int(t["n"])))

    symbol = pp.Keyword("delta") | pp.Keyword("s") | pp.Keyword("v")
    symbol.set_parse_action(lambda s, loc, t: Symbol(loc, t[0]))

    number = pp.Regex(r"\d+")
    number.set_parse_action(lambda s, loc, t: Number(loc, int(t[0])))

    expr = pp.Forward()
    atom = curve | hook | brace | symbol | number | (pp.Suppress("(") + expr + pp.Suppress(")"))

    exponent = pp.Regex(r"[+-]?\d+")
    exponent.set_parse_action(lambda s, loc, t: _Exponent(loc, int(t[0])))
    factor = atom + pp.Optional(pp.Suppress("^") + exponent)
    factor.set_parse_action(_fold_factor)

    term = factor + pp.ZeroOrMore(pp.one_of("* /") + factor)
    term.set_parse_action(_fold_term)

    body = pp.Optional(pp.one_of("+ -")) + term + pp.ZeroOrMore(pp.one_of("+ -") + term)
    body.set_parse_action(_fold_expr)
    expr <<= body
    return expr.parse_with_tabs()


def byte_offset(text: str, loc: int) -> int:
    return len(text[:loc].encode("utf-8"))


_ALLOWED = {
    Context.TORUS: "D",
    Context.ANNULUS: "Q",
    Context.BRACKET: "e",
}


def _check(text: str, tree: Expr, context: Context, max_exponent: int) -> None:
    for node in walk(tree):
        where = byte_offset(text, node.loc)
        if isinstance(node, Curve):
            if node.kind != _ALLOWED[context]:
                raise ParseError(f"{node.kind}[...] is not allowed in {context.value} context", where)
            if node.kind == "D" and (node.a, node.b) == (0, 0):
                raise ParseError("zero vector does not index a generator", where)
        elif isinstance(node, HookAtom) and context != Context.ANNULUS:
            raise ParseError(f"Q[...] is not allowed in {context.value} context", where)
        elif isinstance(node, Symbol) and node.name == "v" and context == Context.BRACKET:
            raise ParseError("v is not a bracket scalar; coefficients are functions of s", where)
        elif isinstance(node, Pow) and abs(node.exponent) > max_exponent:
            raise ParseError(
                f"exponent {node.exponent} exceeds the limit {max_exponent}",
                byte_offset(text, node.exponent_loc),
            )


def parse(
    text: str,
    context: Union[Context, str] = Context.TORUS,
    max_exponent: int = DEFAULT_MAX_EXPONENT,
) -> Expr:
    try:
        context = Context(context)
    except ValueError:
        raise ParseError(f"unknown context {context!r}", 0) from None
    try:
        tree = _grammar().parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        raise ParseError(f"syntax error: {exc.msg}", byte_offset(text, exc.loc)) from None
    _check(text, tree, context, max_exponent)
    return tree


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

Element = Union[SkeinElement, AnnulusElement, BracketElement]
Value = Union[RatFunc, Element]


def _lift(value: Value, context: Context) -> Element:
    if not isinstance(value, RatFunc):
        return value
    if context == Context.TORUS:
        return SkeinElement.unit(value)
    if context == Context.ANNULUS:
        return AnnulusElement(value)
    return BracketElement(value)


def _product(x: Value, y: Value, context: Context) -> Value:
    if isinstance(x, RatFunc) and isinstance(y, RatFunc):
        return x * y
    if isinstance(x, RatFunc):
        return y.scale(x)
    if isinstance(y, RatFunc):
        return x.scale(y)
    if context == Context.TORUS:
        return multiply(x, y)
    if context == Context.BRACKET:
        return e_mul(x, y)
    raise DomainError("products of annulus elements are not modeled; only scalar multiples")


def _power(x: Value, n: int, context: Context) -> Value:
    if isinstance(x, RatFunc):
        return ratfunc_pow(x, n)
    if n < 0:
        raise DomainError("negative powers need a scalar base")
    result: Value = ONE
    for _ in range(n):
        result = _product(result, x, context)
    return result


def _scalar(node: Expr, context: Context) -> RatFunc:
    if isinstance(node, Number):
        return RatFunc(node.value)
    if isinstance(node, QInt):
        return qint(node.n)
    if node.name == "s":
        return S
    if node.name == "v":
        return V
    d = delta()
    return d.specialize_bracket() if context == Context.BRACKET else d


def _eval(node: Expr, context: Context) -> Value:
    if isinstance(node, (Number, QInt, Symbol)):
        return _scalar(node, context)
    if isinstance(node, Curve):
        return generator((node.a, node.b)) if node.kind == "D" else e_generator((node.a, node.b))
    if isinstance(node, HookAtom):
        return AnnulusElement.hook(node.arm, node.leg)
    if isinstance(node, Neg):
        value = _eval(node.operand, context)
        return -value
    if isinstance(node, Pow):
        return _power(_eval(node.base, context), node.exponent, context)

    left, right = _eval(node.left, context), _eval(node.right, context)
    if node.op == "*":
        return _product(left, right, context)
    if node.op == "/":
        if not isinstance(right, RatFunc):
            raise DomainError("division is only by a nonzero scalar")
        return _product(left, ONE / right, context)
    if isinstance(left, RatFunc) and isinstance(right, RatFunc):
        return left + right if node.op == "+" else left - right
    left, right = _lift(left, context), _lift(right, context)
    return left + right if node.op == "+" else left - right


def evaluate(tree: Expr, context: Union[Context, str] = Context.TORUS) -> Element:
    """Value of a parsed expression as an element of the context's algebra."""
    context = Context(context)
    return _lift(_eval(tree, context), context)


def parse_and_evaluate(
    text: str,
    context: Union[Context, str] = Context.TORUS,
    max_exponent: int = DEFAULT_MAX_EXPONENT,
) -> Element:
    return evaluate(parse(text, context, max_exponent), context)


def render(value: Union[Value, object]) -> str:
    render_fn: Optional[object] = getattr(value, "render", None)
    if callable(render_fn):
        return render_fn()
    return str(value)
