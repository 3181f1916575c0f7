"""
skein: command line for the torus skein algebra toolkit.

    skein nf "D[1,0]*D[0,1]"
    skein comm 1,0 0,1
    skein certify 5,3 0,2 --emit json
    skein project 2 3
    skein eig 3,1
    skein cheb 5 --kind S
    skein map-bracket "D[1,0]*D[1,0]"
    skein verify --suite all --seed 7
    skein --format json nf "e[1,0]*e[1,0]" --context bracket

Exit codes: 0 success, 1 failing verification report, 2 usage, parse or
domain error.
"""

import json
import logging
import sys
from typing import List, Optional, Sequence, Tuple, Union

import fire
from fire.core import FireExit
from pydantic import ValidationError

from src.algebra import annulus, bracket, certificates, coeff, torus
from src.algebra.coeff import DomainError
from src.api.schemas import CertificateSchema, element_schema
from src.cli.parser import Context, ParseError, evaluate, parse, render
from src.utils.config import Config
from src.utils.enhanced import EnhancedLogger, TreeNode, display_table, display_tree
from src.verification.suites import report_json, run_suite

logger = logging.getLogger(__name__)


class CheckFailed(Exception):
    """A verification check failed; the command exits with 1."""


VectorArg = Union[str, int, Sequence[int]]


def parse_vector(arg: VectorArg) -> Tuple[int, int]:
    """Accept 1,0 (fire gives a tuple), "(1,0)", "[1, 0]" or "1 0"."""
    if isinstance(arg, (tuple, list)):
        parts = list(arg)
    else:
        text = str(arg).strip().strip("()[]")
        parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != 2:
        raise DomainError(f"expected a vector a,b, got {arg!r}")
    try:
        return int(parts[0]), int(parts[1])
    except (TypeError, ValueError):
        raise DomainError(f"vector entries must be integers, got {arg!r}") from None


def parse_partition(arg: VectorArg) -> Tuple[int, ...]:
    if isinstance(arg, int):
        return (arg,)
    if isinstance(arg, (tuple, list)):
        return tuple(int(p) for p in arg)
    text = str(arg).strip().strip("()[]")
    try:
        return tuple(int(p) for p in text.replace(",", " ").split())
    except ValueError:
        raise DomainError(f"partition parts must be integers, got {arg!r}") from None


def _certificate_tree(cert: certificates.Certificate) -> TreeNode:
    (x, y), node = cert.pair, cert.node
    if cert.is_base:
        return TreeNode(f"{x} {y}: base {node.kind.value}")
    label = f"{x} {y}: split {node.case.value}, a={node.a} b={node.b}"
    return TreeNode(label, [_certificate_tree(child) for child in node.children])


class SkeinCLI:
    """Exact computations in the Kauffman skein algebra of the torus."""

    def __init__(self, format: str = "text", config: Optional[str] = None):
        if format not in ("text", "json"):
            raise DomainError(f"--format must be text or json, got {format!r}")
        self._format = format
        self._config = Config(config)
        coeff.configure(**self._config.coeff_settings().model_dump())
        self._console = EnhancedLogger("skein")

    @property
    def _json(self) -> bool:
        return self._format == "json"

    def _emit(self, value) -> None:
        if self._json:
            print(element_schema(value).model_dump_json(indent=2))
        else:
            print(render(value))

    def _evaluate(self, expr, context: str):
        return evaluate(parse(str(expr), context, self._config.max_exponent), context)

    def nf(self, expr: str, context: str = "torus"):
        """Normal form of an expression in the torus, annulus or bracket context."""
        self._emit(self._evaluate(expr, context))

    def comm(self, x: VectorArg, y: VectorArg):
        """[D_x, D_y] in normal form."""
        x, y = parse_vector(x), parse_vector(y)
        value = torus.commutator(torus.generator(x), torus.generator(y))
        if self._json:
            payload = {
                "x": list(x),
                "y": list(y),
                "commutator": json.loads(element_schema(value).model_dump_json()),
                "matches_relation": value == torus.relation_rhs(x, y),
            }
            print(json.dumps(payload, indent=2))
        else:
            print(render(value))

    def certify(self, x: VectorArg, y: VectorArg, emit: str = "text"):
        """Certificate that (x, y) satisfies the commutator relation."""
        x, y = parse_vector(x), parse_vector(y)
        cert = certificates.build_certificate(x, y)
        replays = certificates.validate_certificate(cert)
        if emit == "json" or self._json:
            print(CertificateSchema.from_domain(cert).model_dump_json(indent=2))
            if not replays:
                raise CheckFailed(f"certificate {x} {y}")
            return
        stats = certificates.certificate_stats(cert)
        display_tree(_certificate_tree(cert))
        rows: List[List[str]] = [["nodes", str(stats["nodes"])], ["depth", str(stats["depth"])]]
        rows += [[kind, str(count)] for kind, count in stats["histogram"].items()]
        display_table(f"certificate {x} {y}", ["statistic", "value"], rows)
        if not replays:
            self._console.error("certificate has defects")
            raise CheckFailed(f"certificate {x} {y}")
        self._console.success("certificate replays")

    def project(self, a: int, b: int):
        """D_(a,b) applied to the empty link of the annulus, b >= 1."""
        self._emit(annulus.project_empty((int(a), int(b))))

    def eig(self, partition: VectorArg):
        """Eigenvalue of the meridian on the closed idempotent of a partition."""
        self._emit(annulus.meridian_eigenvalue(parse_partition(partition)))

    def cheb(self, n: int, kind: str = "T"):
        """Chebyshev polynomial T_n or S_n."""
        poly = bracket.cheb(int(n), kind)
        if self._json:
            print(json.dumps({"n": int(n), "kind": str(kind).upper(), "coeffs": poly.coeffs}))
        else:
            print(poly.render())

    def map_bracket(self, expr: str):
        """Image in the Kauffman bracket algebra of a torus expression."""
        self._emit(bracket.phi_map(self._evaluate(expr, Context.TORUS)))

    def verify(
        self,
        suite: str = "all",
        seed: Optional[int] = None,
        timings: bool = False,
        workers: Optional[int] = None,
        **limits,
    ):
        """Run a verification suite; exits 1 when any check fails."""
        seed = self._config.seed if seed is None else int(seed)
        report = run_suite(
            suite,
            seed=seed,
            limits=self._config.suite_limits(**limits),
            workers=workers or self._config.workers,
            include_timings=timings or not self._json,
            progress=not self._json,
        )
        if self._json:
            print(report_json(report))
        else:
            rows = [
                [c.name, "pass" if c.passed else "FAIL", c.cases, f"{c.seconds:.3f}", c.detail or ""]
                for c in report.checks
            ]
            display_table(
                f"suite {report.suite} (seed {report.seed}, {report.prng})",
                ["check", "result", "cases", "seconds", "detail"],
                rows,
            )
            if report.passed:
                self._console.success(f"{len(report.checks)} checks passed")
            else:
                failed = sum(not c.passed for c in report.checks)
                self._console.error(f"{failed} of {len(report.checks)} checks failed")
        if not report.passed:
            raise CheckFailed(suite)


def main(argv: Optional[List[str]] = None) -> int:
    config = Config()
    logging.basicConfig(level=config.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        fire.Fire(SkeinCLI, command=argv, name="skein")
    except FireExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except ParseError as exc:
        print(f"parse error: {exc.message} (byte {exc.offset})", file=sys.stderr)
        return 2
    except (DomainError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CheckFailed:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
