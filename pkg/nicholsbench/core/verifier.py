"""Checks that tie presentations to PBW bases, Hilbert series and root systems."""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from nicholsbench.catalog.entry import (
    Block,
    CatalogEntry,
    PBWSpec,
    compose,
    composition_hypotheses,
)
from nicholsbench.core.braiding import (
    BraidingMatrix,
    MultiDegree,
    add_degrees,
    check_classification_remark,
    check_necessary_conditions,
    degrees_up_to,
    extend_by_root,
    scale_degree,
    total_degree,
)
from nicholsbench.core.errors import CutoffExceededError, InvalidOperandError, NicholsBenchError
from nicholsbench.core.freealg import FreeElement
from nicholsbench.core.linalg import EchelonBasis
from nicholsbench.core.quotient import GradedQuotient, Presentation, check_well_formed
from nicholsbench.core.series import (
    RationalSeries,
    compare_tables,
    gkdim_pole_order,
    table_product,
    table_tensor,
)
from nicholsbench.core.weyl import DEFAULT_CAP, DIVERGED, FINITE, positive_roots

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
PRESUMED = "presumed"

UNOBSTRUCTED = "UNOBSTRUCTED"
OBSTRUCTED = "OBSTRUCTED"


@dataclass
class SubCheck:
    """One named condition inside a check.

    ``presumed`` marks a failure that rests on an enumeration cap rather
    than on a proof.
    """

    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    presumed: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "presumed": self.presumed,
            "details": self.details,
        }


@dataclass
class CheckReport:
    """Result of one check against one target."""

    check: str
    target: str
    subchecks: List[SubCheck] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    witness: Any = None

    def add(self, subcheck: SubCheck) -> SubCheck:
        self.subchecks.append(subcheck)
        if not subcheck.passed:
            logger.debug("%s/%s: %s failed", self.check, self.target, subcheck.name)
        return subcheck

    def get(self, name: str) -> Optional[SubCheck]:
        for subcheck in self.subchecks:
            if subcheck.name == name:
                return subcheck
        return None

    @property
    def status(self) -> str:
        """pass when every sub-check passes, presumed when only capped ones fail."""
        failed = [s for s in self.subchecks if not s.passed]
        if not failed:
            return PASS
        if all(s.presumed for s in failed):
            return PRESUMED
        return FAIL

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def calculate_pass_rate(self) -> float:
        if not self.subchecks:
            return 0.0
        return sum(1 for s in self.subchecks if s.passed) / len(self.subchecks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "target": self.target,
            "status": self.status,
            "details": {
                **self.details,
                "subchecks": [s.to_dict() for s in self.subchecks],
            },
            "witness": self.witness,
        }

    def __repr__(self) -> str:
        return (
            f"CheckReport(check='{self.check}', target='{self.target}', "
            f"status={self.status}, subchecks={len(self.subchecks)})"
        )


def _degree_list(degree: Optional[MultiDegree]) -> Optional[List[int]]:
    return None if degree is None else list(degree)


def _table_json(table: Dict[MultiDegree, int]) -> Dict[str, int]:
    return {",".join(map(str, degree)): value for degree, value in table.items()}


def _mismatch_json(rows: List[Tuple[MultiDegree, int, int]]) -> List[Dict[str, Any]]:
    return [
        {"degree": list(degree), "expected": expected, "actual": actual}
        for degree, expected, actual in rows
    ]


def _vector(u: FreeElement, columns: Dict) -> Dict[int, Any]:
    return {columns.setdefault(word, len(columns)): value for word, value in u.terms()}


def pbw_monomials(
    theta: int, degrees: Sequence[MultiDegree], heights: Sequence[Optional[int]], D: int
) -> Dict[MultiDegree, List[Tuple[int, ...]]]:
    """Exponent vectors of ordered PBW monomials, grouped by degree, up to total degree D."""
    totals = [total_degree(d) for d in degrees]
    if any(t <= 0 for t in totals):
        raise InvalidOperandError("PBW generators need positive total degree")
    ranges = []
    for total, height in zip(totals, heights):
        top = D // total if height is None else min(height, D // total)
        ranges.append(range(top + 1))
    grouped: Dict[MultiDegree, List[Tuple[int, ...]]] = {}
    for exponents in itertools.product(*ranges):
        if sum(e * t for e, t in zip(exponents, totals)) > D:
            continue
        degree: MultiDegree = (0,) * theta
        for exponent, generator in zip(exponents, degrees):
            degree = add_degrees(degree, scale_degree(generator, exponent))
        grouped.setdefault(degree, []).append(exponents)
    return grouped


def check_pbw(
    presentation: Presentation,
    spec: PBWSpec,
    D: int,
    quotient: Optional[GradedQuotient] = None,
) -> CheckReport:
    """Check that the PBW monomials reduce to a basis of every component up to D.

    Raises:
        CutoffExceededError: If D exceeds the cutoff of ``quotient``
    """
    quotient = quotient or presentation.quotient(D)
    if D > quotient.cutoff:
        raise CutoffExceededError(D, quotient.cutoff)
    report = CheckReport("pbw", presentation.name, details={"degree": D})
    generators = [quotient.normal_form(presentation.evaluate(g.expr)) for g in spec.generators]
    degrees = [presentation.evaluate(g.expr).degree for g in spec.generators]
    grouped = pbw_monomials(presentation.theta, degrees, spec.heights, D)
    powers: Dict[Tuple[int, int], FreeElement] = {}

    def power(k: int, e: int) -> FreeElement:
        if (k, e) not in powers:
            value = presentation.algebra.one() if e == 0 else power(k, e - 1) * generators[k]
            powers[(k, e)] = quotient.normal_form(value) if e > 1 else value
        return powers[(k, e)]

    failure = None
    checked = 0
    for alpha in degrees_up_to(presentation.theta, D):
        monomials = grouped.get(alpha, [])
        dimension = quotient.dimension(alpha)
        echelon = EchelonBasis()
        columns: Dict = {}
        for exponents in monomials:
            value = presentation.algebra.one()
            for k, e in enumerate(exponents):
                if e:
                    value = quotient.normal_form(value * power(k, e))
            echelon.add(_vector(value, columns))
        checked += 1
        if len(monomials) != dimension or echelon.rank != len(monomials):
            failure = {
                "degree": list(alpha),
                "monomials": len(monomials),
                "independent": echelon.rank,
                "dimension": dimension,
            }
            break
    report.add(SubCheck("basis", failure is None, failure or {"components": checked}))
    report.witness = failure
    logger.info("PBW check for %s up to degree %d: %s", presentation.name, D, report.status)
    return report


def check_hilbert(
    presentation: Presentation,
    series: RationalSeries,
    D: int,
    quotient: Optional[GradedQuotient] = None,
) -> CheckReport:
    """Compare the Hilbert table with the power-series expansion of a closed form."""
    if series.theta != presentation.theta:
        raise InvalidOperandError(
            f"series in {series.theta} variables for a rank {presentation.theta} presentation"
        )
    expected = series.coefficients(D)
    actual = (quotient or presentation.quotient(D)).hilbert_table(D)
    mismatches = compare_tables(expected, actual)
    numerator, denominator = series.to_text()
    report = CheckReport(
        "hilbert",
        presentation.name,
        details={"degree": D, "numerator": numerator, "denominator": denominator},
    )
    report.add(SubCheck("coefficients", not mismatches, {"mismatches": _mismatch_json(mismatches)}))
    if mismatches:
        report.witness = _mismatch_json(mismatches[:1])[0]
    logger.info("Hilbert check for %s up to degree %d: %s", presentation.name, D, report.status)
    return report


def check_gkdim(entry: CatalogEntry) -> CheckReport:
    """Pole order of the closed form against the entry's recorded GK-dimension.

    The number of unbounded PBW generators is compared separately. Entries
    without a recorded value are measured against that count alone.
    """
    report = CheckReport("gkdim", entry.tag)
    if entry.series is None:
        report.add(SubCheck("series", False, {"error": "entry has no closed-form series"}))
        return report
    order = gkdim_pole_order(entry.series)
    unbounded = sum(1 for height in entry.pbw.heights if height is None)
    expected = entry.config.gkdim if entry.config.gkdim is not None else unbounded
    report.details.update(
        {"gkdim": order, "expected": expected, "unbounded_generators": unbounded}
    )
    report.add(SubCheck("pole-order", order == expected, {"gkdim": order, "expected": expected}))
    if entry.pbw.generators:
        report.add(
            SubCheck(
                "unbounded-generators",
                unbounded == expected,
                {"unbounded": unbounded, "expected": expected},
            )
        )
    return report


def _gap_degree(entry: CatalogEntry, D: int) -> int:
    return max(D, total_degree(entry.central_degree) + 1)


def check_eminent_gap(entry: CatalogEntry, D: int) -> CheckReport:
    """Check that the Nichols algebra is the eminent algebra modulo one primitive z.

    Sub-checks: z is nonzero, primitive and q-central in the eminent quotient;
    the quotient by z has the Nichols Hilbert table; the eminent table factors
    as the Nichols table times 1/(1 - t^deg z).

    Raises:
        CutoffExceededError: If D < |deg z| + 1
    """
    eminent = entry.eminent()
    z = entry.central_element()
    degree = z.degree
    if D < total_degree(degree) + 1:
        raise CutoffExceededError(total_degree(degree) + 1, D)
    report = CheckReport(
        "eminent-gap",
        entry.tag,
        details={"degree": D, "z": entry.central.to_text(), "z_degree": list(degree)},
    )
    quotient = eminent.quotient(D)

    def run(name: str, body: Callable[[], Tuple[bool, Dict[str, Any]]]):
        try:
            passed, details = body()
        except NicholsBenchError as exc:
            passed, details = False, {"error": str(exc)}
        report.add(SubCheck(name, passed, details))

    run("z-nonzero", lambda: (not quotient.is_zero(z), {}))
    run("z-primitive", lambda: (quotient.is_primitive(z), {}))
    run("z-q-central", lambda: (quotient.is_q_central(z), {}))

    eminent_table = quotient.hilbert_table(D)
    nichols_table = entry.nichols().quotient(D).hilbert_table(D)

    def quotient_by_z():
        extended = eminent.with_relations(
            eminent.relations + [entry.central], f"{eminent.name}+z"
        )
        mismatches = compare_tables(nichols_table, extended.quotient(D).hilbert_table(D))
        return not mismatches, {"mismatches": _mismatch_json(mismatches)}

    def factorization():
        geometric = RationalSeries.geometric(entry.theta, degree).coefficients(D)
        expected = table_product(nichols_table, geometric, D)
        mismatches = compare_tables(expected, eminent_table)
        return not mismatches, {"mismatches": _mismatch_json(mismatches)}

    run("quotient-by-z", quotient_by_z)
    run("factorization", factorization)
    failed = [s.name for s in report.subchecks if not s.passed]
    report.witness = failed[0] if failed else None
    logger.info("Eminent gap for %s up to degree %d: %s", entry.tag, D, report.status)
    return report


def _roots_subcheck(name: str, q: BraidingMatrix, cap: int, constant_scan: int) -> SubCheck:
    result = positive_roots(q, cap, constant_scan)
    details = result.to_dict()
    if result.status == FINITE:
        return SubCheck(name, True, details)
    return SubCheck(name, False, details, presumed=result.status == DIVERGED)


def obstruction_report(
    q: BraidingMatrix,
    beta: MultiDegree,
    cap: int = DEFAULT_CAP,
    constant_scan: int = 64,
) -> CheckReport:
    """Whether adjoining a primitive of degree beta contradicts finite growth.

    The braiding W = V + k x_beta is tested whole and on every subdiagram of
    at most three vertices that contains the new vertex. A proven violation
    or an undefined m_ij is OBSTRUCTED; a root enumeration that only hits
    the cap is a presumed obstruction.
    """
    beta = tuple(beta)
    w = extend_by_root(q, beta)
    new = w.theta
    report = CheckReport(
        "obstruction",
        f"beta={list(beta)}",
        details={"theta": q.theta, "cap": cap, "new_vertex_label": str(w.vertex_label(new))},
    )
    violations = check_necessary_conditions(w)
    report.add(
        SubCheck(
            "necessary-conditions",
            not violations,
            {"violations": [v.to_dict() for v in violations]},
        )
    )
    report.add(_roots_subcheck("roots", w, cap, constant_scan))
    others = list(range(1, new))
    for size in (1, 2):
        for subset in itertools.combinations(others, size):
            vertices = list(subset) + [new]
            name = "roots:" + ",".join(map(str, sorted(vertices)))
            report.add(_roots_subcheck(name, w.restrict(sorted(vertices)), cap, constant_scan))
    remark = check_classification_remark(w)
    report.details["classification_remark"] = [v.to_dict() for v in remark]
    report.details["classification"] = UNOBSTRUCTED if report.passed else OBSTRUCTED
    failed = [s for s in report.subchecks if not s.passed]
    if failed:
        report.witness = {"subcheck": failed[0].name, "presumed": failed[0].presumed}
    logger.info("Obstruction report for beta=%s: %s", list(beta), report.details["classification"])
    return report


def check_pre_nichols(presentation: Presentation) -> CheckReport:
    """Each relation primitive modulo the relations of smaller total degree."""
    report = CheckReport("pre-nichols", presentation.name)
    for result in check_well_formed(presentation):
        report.add(
            SubCheck(
                f"primitive:{result.relation}",
                result.primitive,
                {"degree": list(result.degree)},
            )
        )
    failed = [s.name for s in report.subchecks if not s.passed]
    report.witness = failed[0] if failed else None
    return report


def check_roots_against_pbw(
    entry: CatalogEntry, cap: int = DEFAULT_CAP, constant_scan: int = 64
) -> CheckReport:
    """Positive roots against the PBW generator degrees other than deg z."""
    report = CheckReport("roots", entry.tag, details={"cap": cap})
    subcheck = report.add(_roots_subcheck("finite", entry.braiding, cap, constant_scan))
    pbw = sorted(set(entry.pbw.degrees(entry.eminent())))
    z = entry.central_degree if entry.central is not None else None
    expected = [d for d in pbw if d != z]
    actual = sorted(tuple(root) for root in subcheck.details["roots"])
    report.details.update({"count": len(actual), "z_degree": _degree_list(z)})
    report.add(
        SubCheck(
            "roots-match-pbw",
            subcheck.passed and actual == expected,
            {
                "missing": [list(d) for d in expected if d not in actual],
                "extra": [list(d) for d in actual if d not in expected],
            },
        )
    )
    return report


def check_composition(blocks: Sequence[Block], D: int) -> CheckReport:
    """Hilbert table of the composed presentation against the product of block tables."""
    composed = compose(blocks)
    report = CheckReport("composition", composed.name, details={"degree": D})
    hypotheses = composition_hypotheses(blocks)
    report.add(
        SubCheck("hypotheses", all(h["holds"] for h in hypotheses), {"blocks": hypotheses})
    )
    expected: Optional[Dict[MultiDegree, int]] = None
    for block in blocks:
        presentation = block.eminent() if isinstance(block, CatalogEntry) else block
        table = presentation.quotient(D).hilbert_table(D)
        expected = table if expected is None else table_tensor(expected, table, D)
    actual = composed.quotient(D).hilbert_table(D)
    mismatches = compare_tables(expected or {}, actual)
    report.add(SubCheck("convolution", not mismatches, {"mismatches": _mismatch_json(mismatches)}))
    report.details["table"] = _table_json(actual)
    return report


CheckFunction = Callable[[CatalogEntry, int], Union[CheckReport, bool]]


class Verifier:
    """Runs named checks against catalog entries.

    Built-in checks: pbw, hilbert, gkdim, eminent-gap, roots, pre-nichols.
    Further checks can be registered; they receive (entry, degree) and
    return a CheckReport or a bool.
    """

    DEFAULT_CHECKS = ("pbw", "hilbert", "gkdim", "eminent-gap", "roots")

    def __init__(self, cutoff: int = 8, root_cap: int = DEFAULT_CAP, constant_scan: int = 64):
        """Initialize the verifier.

        Args:
            cutoff: Default total degree for table-based checks
            root_cap: Cap for root enumeration
            constant_scan: Bound on the m_ij scan for constant labels
        """
        self.cutoff = cutoff
        self.root_cap = root_cap
        self.constant_scan = constant_scan
        self.custom_checks: Dict[str, CheckFunction] = {}
        self._builtin: Dict[str, CheckFunction] = {
            "pbw": lambda e, d: check_pbw(e.eminent(), e.pbw, d),
            "hilbert": self._hilbert,
            "gkdim": lambda e, d: check_gkdim(e),
            "eminent-gap": lambda e, d: check_eminent_gap(e, _gap_degree(e, d)),
            "roots": lambda e, d: check_roots_against_pbw(e, self.root_cap, self.constant_scan),
            "pre-nichols": lambda e, d: check_pre_nichols(e.eminent()),
        }

    @staticmethod
    def _hilbert(entry: CatalogEntry, D: int) -> CheckReport:
        if entry.series is None:
            report = CheckReport("hilbert", entry.tag)
            report.add(SubCheck("series", False, {"error": "entry has no closed-form series"}))
            return report
        return check_hilbert(entry.eminent(), entry.series, D)

    def register_check(self, name: str, check: CheckFunction):
        """Register a custom check.

        Args:
            name: Name reported in the CheckReport
            check: Callable taking (entry, degree)
        """
        self.custom_checks[name] = check

    @property
    def available_checks(self) -> List[str]:
        return list(self._builtin) + list(self.custom_checks)

    def run_check(
        self, name: str, entry: CatalogEntry, degree: Optional[int] = None
    ) -> CheckReport:
        """Run one check; exceptions become a failed report with the message."""
        degree = self.cutoff if degree is None else degree
        check = self.custom_checks.get(name) or self._builtin.get(name)
        if check is None:
            raise InvalidOperandError(f"unknown check '{name}'")
        try:
            outcome = check(entry, degree)
        except Exception as e:
            logger.warning("Check %s on %s raised %s", name, entry.tag, e)
            report = CheckReport(name, entry.tag)
            report.add(SubCheck(name, False, {"error": str(e)}))
            return report
        if isinstance(outcome, CheckReport):
            return outcome
        report = CheckReport(name, entry.tag)
        function = getattr(check, "__name__", "lambda")
        report.add(SubCheck(name, bool(outcome), {"check_function": function}))
        return report

    def verify(
        self,
        entry: CatalogEntry,
        checks: Optional[Sequence[str]] = None,
        degree: Optional[int] = None,
    ) -> List[CheckReport]:
        """Run the given checks (default: the acceptance suite plus registered checks)."""
        names = list(checks) if checks is not None else list(self.DEFAULT_CHECKS) + list(
            self.custom_checks
        )
        return [self.run_check(name, entry, degree) for name in names]
