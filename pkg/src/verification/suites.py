"""
Deterministic verification suites.

A suite is an ordered list of named checks.  Each check is a pure function
of its own seeded generator and the SuiteLimits record, and returns how
many instances it examined plus the first failure.  Checks may run on a
thread pool; results are collected in registration order, so the report
for a given seed is byte-identical unless timings are requested.
"""

import itertools
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from src.algebra import annulus, bmw2, bracket, certificates, coeff, torus
from src.algebra.coeff import ONE, DomainError, S, V
from src.algebra.torus import CurveClass, canonicalize, det
from src.api.schemas import CertificateSchema, RatFuncSchema, SkeinElementSchema, SuiteReportSchema
from src.utils.config import SuiteLimits
from src.utils.enhanced import ProgressTracker
from src.verification.sampling import (
    PRNG_ID,
    check_rng,
    random_element,
    random_gl2,
    random_point,
    random_scalar,
    random_vector,
    random_word,
)

logger = logging.getLogger(__name__)

SUITE_NAMES = ("field", "torus", "certificates", "annulus", "bmw2", "bracket")

# unfolded certificate trees grow quickly with |det|
JSON_CERTIFICATE_BOUND = 3


class Tally:
    """Case counter that keeps the first failure."""

    def __init__(self):
        self.cases = 0
        self.failure: Optional[str] = None

    def record(self, ok: bool, detail: Callable[[], str]) -> None:
        self.cases += 1
        if not ok and self.failure is None:
            self.failure = detail()


CheckFn = Callable[[np.random.Generator, SuiteLimits], Tally]

_REGISTRY: Dict[str, List[Tuple[str, CheckFn]]] = {name: [] for name in SUITE_NAMES}


def check(suite: str, name: str):
    def register(fn: CheckFn) -> CheckFn:
        _REGISTRY[suite].append((name, fn))
        return fn

    return register


def canonical_classes(bound: int) -> List[CurveClass]:
    """Curve classes with both coordinates in [-bound, bound]."""
    seen = {
        canonicalize(a, b)
        for a in range(-bound, bound + 1)
        for b in range(-bound, bound + 1)
        if (a, b) != (0, 0)
    }
    return sorted(seen)


# ---------------------------------------------------------------------------
# field
# ---------------------------------------------------------------------------


@check("field", "field axioms")
def _field_axioms(rng, limits):
    tally = Tally()
    for _ in range(limits.field_samples):
        a, b, c = random_scalar(rng), random_scalar(rng), random_scalar(rng)
        ok = (a + b) + c == a + (b + c) and a * (b + c) == a * b + a * c and a * (ONE / a) == ONE
        tally.record(ok, lambda: f"axioms fail for a={a}, b={b}, c={c}")
    return tally


@check("field", "evaluation homomorphism")
def _evaluation(rng, limits):
    tally = Tally()
    for _ in range(limits.field_samples):
        a, b = random_scalar(rng), random_scalar(rng)
        for _ in range(limits.field_points):
            s0, v0 = random_point(rng)
            try:
                ok = (a * b).evaluate(s0, v0) == a.evaluate(s0, v0) * b.evaluate(s0, v0)
            except DomainError:
                continue
            tally.record(ok, lambda: f"evaluation of {a} * {b} at ({s0}, {v0})")
    return tally


@check("field", "bar involution")
def _bar(rng, limits):
    tally = Tally()
    for _ in range(limits.field_samples):
        a, b = random_scalar(rng), random_scalar(rng)
        ok = a.bar().bar() == a and (a * b).bar() == a.bar() * b.bar()
        tally.record(ok, lambda: f"bar is not an involutive automorphism on {a}, {b}")
    return tally


@check("field", "json round trip")
def _field_json(rng, limits):
    tally = Tally()
    for _ in range(limits.field_samples):
        a = random_scalar(rng)
        back = RatFuncSchema.model_validate_json(RatFuncSchema.from_domain(a).model_dump_json()).to_domain()
        tally.record(back == a, lambda: f"{a} does not survive JSON")
    return tally


@check("field", "ring identities")
def _ring_identities(rng, limits):
    tally = Tally()
    for n in range(1, limits.ring_n_max + 1):
        tally.record(coeff.beta_relations_check(n), lambda: f"beta relations fail at n={n}")
    return tally


@check("field", "delta")
def _delta(rng, limits):
    tally = Tally()
    tally.record(coeff.delta() == 1 - (V - V**-1) / (S - S**-1), lambda: "delta closed form")
    tally.record(
        coeff.specialize_bracket(coeff.delta()) == -(S**2) - S**-2,
        lambda: "delta does not specialize to -s^2 - s^-2",
    )
    return tally


# ---------------------------------------------------------------------------
# torus
# ---------------------------------------------------------------------------


@check("torus", "presentation relations")
def _relations(rng, limits):
    tally = Tally()
    classes = canonical_classes(limits.relation_bound)
    for x, y in itertools.combinations_with_replacement(classes, 2):
        lhs = torus.commutator(torus.generator(x), torus.generator(y))
        tally.record(lhs == torus.relation_rhs(x, y), lambda: f"[{x}, {y}] = {lhs}")
    return tally


@check("torus", "associativity")
def _associativity(rng, limits):
    tally = Tally()
    bound, length = limits.associativity_bound, limits.max_word_length
    for _ in range(limits.associativity_samples):
        p, q, r = (random_element(rng, bound, length) for _ in range(3))
        left = torus.multiply(torus.multiply(p, q), r)
        right = torus.multiply(p, torus.multiply(q, r))
        tally.record(left == right, lambda: f"(pq)r != p(qr) for p={p}, q={q}, r={r}")
    return tally


@check("torus", "strategy independence")
def _strategies(rng, limits):
    tally = Tally()
    for _ in range(limits.associativity_samples):
        word = random_word(rng, limits.associativity_bound, 2 * limits.max_word_length, min_length=2)
        ok = torus.normal_form(word, "leftmost") == torus.normal_form(word, "rightmost")
        tally.record(ok, lambda: f"strategies disagree on {torus.word_label(word)}")
    return tally


@check("torus", "jacobi identity")
def _jacobi(rng, limits):
    tally = Tally()
    gens = {x: torus.generator(x) for x in canonical_classes(limits.jacobi_bound)}
    comm = torus.commutator
    for x, y, z in itertools.combinations_with_replacement(gens, 3):
        a, b, c = gens[x], gens[y], gens[z]
        total = comm(a, comm(b, c)) + comm(b, comm(c, a)) + comm(c, comm(a, b))
        tally.record(total.is_zero(), lambda: f"Jacobi fails on {x}, {y}, {z}")
    return tally


@check("torus", "lie closure")
def _lie_closure(rng, limits):
    tally = Tally()
    for x, y in itertools.combinations(canonical_classes(limits.jacobi_bound), 2):
        c = torus.commutator(torus.generator(x), torus.generator(y))
        tally.record(c.is_lie_element(), lambda: f"[{x}, {y}] has words of length {c.max_word_length()}")
    return tally


@check("torus", "gl2 equivariance")
def _equivariance(rng, limits):
    tally = Tally()
    for _ in range(limits.equivariance_samples):
        g = random_gl2(rng)
        p = random_element(rng, 2, 2)
        q = random_element(rng, 2, 2)
        image = torus.gl2_apply(g, torus.multiply(p, q))
        gp, gq = torus.gl2_apply(g, p), torus.gl2_apply(g, q)
        expected = torus.multiply(gp, gq) if g.det == 1 else torus.multiply(gq, gp)
        tally.record(image == expected, lambda: f"g={g.rows} does not respect {p} * {q}")
    return tally


@check("torus", "json round trip")
def _torus_json(rng, limits):
    tally = Tally()
    for _ in range(limits.equivariance_samples):
        p = random_element(rng, limits.associativity_bound, limits.max_word_length)
        schema = SkeinElementSchema.model_validate_json(SkeinElementSchema.from_domain(p).model_dump_json())
        tally.record(schema.to_domain() == p, lambda: f"{p} does not survive JSON")
    return tally


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


def certificate_pairs(limits: SuiteLimits) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Box pairs with |det| <= max_det plus the normalized ladder up to max_det."""
    bound = limits.certificate_bound
    box = [
        (a, b) for a in range(-bound, bound + 1) for b in range(-bound, bound + 1) if (a, b) != (0, 0)
    ]
    pairs = {(x, y) for x in box for y in box if abs(det(x, y)) <= limits.max_det}
    for d in range(1, limits.max_det + 1):
        for r in (r for r in range(1, d + 1) if d % r == 0):
            for q in range(d // r):
                pairs.add(((d // r, q), (0, r)))
    return sorted(pairs)


@check("certificates", "certificate sweep")
def _certificate_sweep(rng, limits):
    tally = Tally()
    for x, y in certificate_pairs(limits):
        try:
            cert = certificates.build_certificate(x, y)
        except certificates.CertificateError as exc:
            tally.record(False, lambda: str(exc))
            continue
        defects = certificates.check_certificate(cert)
        depth = certificates.certificate_stats(cert)["depth"]
        ok = not defects and depth <= 2 * abs(det(x, y))
        tally.record(ok, lambda: f"certificate for {(x, y)}: {defects[:1] or f'depth {depth}'}")
    return tally


@check("certificates", "json round trip")
def _certificate_json(rng, limits):
    tally = Tally()
    for _ in range(limits.collapse_samples):
        x = random_vector(rng, JSON_CERTIFICATE_BOUND)
        y = random_vector(rng, JSON_CERTIFICATE_BOUND)
        cert = certificates.build_certificate(x, y)
        text = CertificateSchema.from_domain(cert).model_dump_json()
        back = CertificateSchema.model_validate_json(text).to_domain()
        tally.record(back == cert, lambda: f"certificate for {(x, y)} does not survive JSON")
    return tally


@check("certificates", "diophantine split")
def _diophantine(rng, limits):
    tally = Tally()
    for p in range(2, limits.max_det + 1):
        for q in range(1, p):
            if gcd(p, q) != 1:
                continue
            u, v, w, z = certificates.diophantine_split(p, q)
            ok = u + w == p and v + z == q and 0 < u < p and 0 < w < p and u * z - w * v == 1
            tally.record(ok, lambda: f"split of ({p}, {q}) = {(u, v, w, z)}")
    return tally


@check("certificates", "gl2 reduction")
def _gl2_reduce(rng, limits):
    tally = Tally()
    for _ in range(limits.collapse_samples):
        x = random_vector(rng, limits.max_det)
        g, k = torus.gl2_reduce(x)
        tally.record(g.det == 1 and g.apply(x) == (k, 0), lambda: f"gl2_reduce{x} = {g.rows}, {k}")
    return tally


@check("certificates", "coefficient collapse")
def _collapse(rng, limits):
    tally = Tally()
    bound = limits.collapse_bound
    while tally.cases < limits.collapse_samples:
        a, b, y = (random_vector(rng, bound) for _ in range(3))
        if (a[0] + b[0], a[1] + b[1]) == (0, 0):
            continue
        tally.record(
            certificates.coefficient_collapse_check(a, b, y),
            lambda: f"collapse fails for a={a}, b={b}, y={y}",
        )
    return tally


# ---------------------------------------------------------------------------
# annulus
# ---------------------------------------------------------------------------


@check("annulus", "angled relation on the empty link")
def _angled(rng, limits):
    tally = Tally()
    for n in range(1, limits.n_max + 1):
        lhs, rhs = annulus.angled_on_empty_sides(n)
        expansion = annulus.projection_expansion(n)
        tally.record(lhs == rhs == expansion, lambda: f"n={n}: {lhs} vs {rhs}")
    return tally


@check("annulus", "core projection")
def _core(rng, limits):
    tally = Tally()
    for n in range(1, limits.n_max + 1):
        ok = annulus.project_empty((0, n)) == annulus.hook_expansion(n)
        tally.record(ok, lambda: f"D_(0,{n}) on the empty link differs from the hook sum")
    return tally


@check("annulus", "hook series")
def _hook_series(rng, limits):
    tally = Tally()
    for k in range(1, limits.n_max + 1):
        ok = annulus.hook_series_check(k) and annulus.hook_series_expansion(k).unit == annulus.c_constant(k)
        tally.record(ok, lambda: f"generating function disagrees at k={k}")
    return tally


@check("annulus", "hook eigenvalues")
def _eigenvalues(rng, limits):
    tally = Tally()
    for n in range(1, limits.hook_size_max + 1):
        for hook in annulus.hooks_of_size(n):
            ok = annulus.meridian_eigenvalue(hook) == annulus.hook_eigenvalue_closed_form(hook)
            tally.record(ok, lambda: f"eigenvalue of {hook}")
    return tally


# ---------------------------------------------------------------------------
# bmw2
# ---------------------------------------------------------------------------


def _bmw2_check(name: str) -> CheckFn:
    def run(rng, limits):
        tally = Tally()
        tally.record(bmw2.bmw2_report()[name], lambda: f"{name} fails")
        return tally

    return run


for _name in (
    "associativity",
    "quadratic relation",
    "p1+ idempotent",
    "p1+ kills h",
    "p1+ mirror fixed",
    "f2 symmetrizer",
    "f2 mirror fixed",
    "B2 closed form",
    "B2 - (2 f2 - 1) in R h",
):
    check("bmw2", _name)(_bmw2_check(_name))


# ---------------------------------------------------------------------------
# bracket
# ---------------------------------------------------------------------------


@check("bracket", "phi homomorphism")
def _phi(rng, limits):
    tally = Tally()
    for _ in range(limits.bracket_samples):
        p = random_element(rng, limits.bracket_bound, 2)
        q = random_element(rng, limits.bracket_bound, 2)
        ok = bracket.phi_map(torus.multiply(p, q)) == bracket.e_mul(bracket.phi_map(p), bracket.phi_map(q))
        tally.record(ok, lambda: f"phi(pq) != phi(p)phi(q) for p={p}, q={q}")
    return tally


@check("bracket", "commutator sweep")
def _e_commutators(rng, limits):
    tally = Tally()
    for x, y in itertools.combinations_with_replacement(canonical_classes(limits.bracket_bound), 2):
        lhs = bracket.e_commutator(bracket.e_generator(x), bracket.e_generator(y))
        tally.record(lhs == bracket.e_relation_rhs(x, y), lambda: f"[e{x.vector}, e{y.vector}] = {lhs}")
    return tally


@check("bracket", "power sums")
def _e_powers(rng, limits):
    tally = Tally()
    for x in canonical_classes(limits.bracket_bound):
        tally.record(bracket.e_power_check(x), lambda: f"e{x.vector} != T_k(e_x0)")
    for m, n in itertools.product(range(limits.bracket_bound + 1), repeat=2):
        tally.record(bracket.parallel_check((1, 0), m, n), lambda: f"parallel product m={m}, n={n}")
    return tally


@check("bracket", "chebyshev functional equations")
def _cheb_functional(rng, limits):
    tally = Tally()
    for n in range(limits.cheb_n_max + 1):
        tally.record(bracket.cheb_functional_check(n), lambda: f"T_{n} or S_{n}")
    for m, n in itertools.product(range(limits.cheb_n_max + 1), repeat=2):
        tally.record(bracket.cheb_product_check(m, n), lambda: f"T_{m} T_{n}")
    return tally


@check("bracket", "chebyshev series")
def _cheb_series(rng, limits):
    tally = Tally()
    tally.record(bracket.cheb_log_identity_check(limits.log_order), lambda: "log identity")
    tally.record(bracket.cheb_generating_check(limits.log_order), lambda: "generating function")
    return tally


@check("bracket", "delta specialization")
def _bracket_delta(rng, limits):
    tally = Tally()
    tally.record(coeff.delta().specialize_bracket() == -(S**2) - S**-2, lambda: "delta at v = -s^-3")
    return tally


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: Optional[str]
    seconds: float


def suite_checks(name: str) -> List[Tuple[str, CheckFn]]:
    if name == "all":
        return [(f"{suite}/{check_name}", fn) for suite in SUITE_NAMES for check_name, fn in _REGISTRY[suite]]
    if name not in _REGISTRY:
        raise DomainError(f"unknown suite {name!r}; expected one of {', '.join(SUITE_NAMES + ('all',))}")
    return [(f"{name}/{check_name}", fn) for check_name, fn in _REGISTRY[name]]


def run_check(qualified: str, fn: CheckFn, seed: int, limits: SuiteLimits) -> CheckResult:
    start = time.perf_counter()
    try:
        tally = fn(check_rng(seed, qualified), limits)
        passed, cases, detail = tally.failure is None, tally.cases, tally.failure
    except (DomainError, certificates.CertificateError, ArithmeticError) as exc:
        passed, cases, detail = False, 0, f"{type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    logger.info("%s: %s (%d cases, %.3fs)", qualified, "pass" if passed else "FAIL", cases, seconds)
    return CheckResult(qualified, passed, cases, detail, seconds)


def run_suite(
    name: str,
    seed: int = 0,
    limits: Optional[SuiteLimits] = None,
    workers: int = 1,
    include_timings: bool = False,
    progress: bool = False,
) -> SuiteReportSchema:
    limits = limits or SuiteLimits()
    checks = suite_checks(name)
    tracker = ProgressTracker(enabled=progress)

    def job(item: Tuple[str, CheckFn]) -> CheckResult:
        return run_check(item[0], item[1], seed, limits)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results: Iterable[CheckResult] = list(
                tracker.track(pool.map(job, checks), f"suite {name}", total=len(checks))
            )
    else:
        results = [job(item) for item in tracker.track(checks, f"suite {name}", total=len(checks))]

    return SuiteReportSchema(
        suite=name,
        seed=seed,
        prng=PRNG_ID,
        passed=all(r.passed for r in results),
        checks=[
            {
                "name": r.name,
                "passed": r.passed,
                "cases": r.cases,
                "detail": r.detail,
                "seconds": round(r.seconds, 6) if include_timings else None,
            }
            for r in results
        ],
        limits=limits.model_dump(),
    )


def report_json(report: SuiteReportSchema) -> str:
    """Stable JSON; seconds stays null unless timings were requested."""
    return report.model_dump_json(indent=2)
