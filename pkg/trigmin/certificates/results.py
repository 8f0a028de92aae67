"""Proof-step records, printed-value checks and the per-pair certificate."""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum, auto
from fractions import Fraction
from typing import Any, Callable, Sequence
import logging

from ..interval.core import Interval
from ..interval.prover import (DEFAULT_MAX_DEPTH, DepthExceeded, Sign,
                               SignRefutation, prove_sign_on_box)
from ..model.functions import PairMN
from ..model.sandwich import SineBoundPoly, certify_sine_bound

STRICT_MAX_WIDTH = 1e-9

logger = logging.getLogger(__name__)


class StepStatus(Enum):
    PROVED = auto()
    REFUTED = auto()
    INCONCLUSIVE = auto()

    @property
    def label(self) -> str:
        return self.name.lower()


class Verdict(Enum):
    CONDITION_2_HOLDS = auto()
    FAILED = auto()


class ToleranceMode(Enum):
    """PAPER accepts the printed precision, STRICT demands correct rounding."""

    PAPER = auto()
    STRICT = auto()


class ScopeError(ValueError):
    """The pair is outside the theorem's hypotheses."""

    def __init__(self, pair: PairMN, reasons: Sequence[str]) -> None:
        self.pair = pair
        self.reasons = list(reasons)
        super().__init__(f"{pair} is out of scope: " + "; ".join(reasons))

    def __reduce__(self):
        return (ScopeError, (self.pair, self.reasons))


class RefutedStep(Exception):
    """A claim of a step failed at a certified witness."""

    def __init__(self, step_id: str, claim: str,
                 witness: tuple[Interval, ...] | None) -> None:
        self.step_id = step_id
        self.claim = claim
        self.witness = witness
        where = ("" if witness is None else " at "
                 + " x ".join(str(w) for w in witness))
        super().__init__(f"{step_id}: '{claim}' refuted{where}")

    def __reduce__(self):
        return (RefutedStep, (self.step_id, self.claim, self.witness))


def format_float(x: float) -> str:
    return format(x, ".17g")


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class PaperValue:
    """A printed approximate (or exact) value and the precision it carries.

    tolerance overrides the rule derived from the printed digits;
    stated_error is an error bound printed next to the value.
    """

    name: str
    printed: str
    stated_error: str | None = None
    tolerance: str | None = None
    exact: Fraction | None = None

    @property
    def value(self) -> Fraction:
        return Fraction(Decimal(self.printed))

    @property
    def unit(self) -> Fraction:
        """One unit in the last printed digit."""
        return Fraction(10) ** Decimal(self.printed).as_tuple().exponent

    def tol(self, mode: ToleranceMode) -> Fraction:
        if mode is ToleranceMode.STRICT:
            return self.unit / 2
        if self.tolerance is not None:
            return Fraction(self.tolerance)
        if self.stated_error is not None:
            return Fraction(self.stated_error) + self.unit / 2
        return 5 * self.unit

    def matches(self, enclosure: Interval, mode: ToleranceMode) -> bool:
        tol = self.tol(mode)
        if not enclosure.is_bounded:
            return False
        inside = (Fraction(enclosure.lo) >= self.value - tol
                  and Fraction(enclosure.hi) <= self.value + tol)
        if mode is ToleranceMode.STRICT:
            return inside and enclosure.width <= STRICT_MAX_WIDTH
        return inside

    def matches_exact(self, computed: Fraction, mode: ToleranceMode) -> bool:
        if self.exact is not None and computed != self.exact:
            return False
        return abs(computed - self.value) <= self.tol(mode)

    @property
    def reported_value(self) -> str:
        if self.exact is not None:
            return format_rational(self.exact)
        return self.printed


@dataclass(frozen=True)
class Expectation:
    """Outcome of comparing a computed enclosure with a printed value."""

    expected: PaperValue
    enclosure: Interval
    tol: Fraction
    ok: bool

    @property
    def name(self) -> str:
        return self.expected.name

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name,
                "value": self.expected.reported_value,
                "tol": format_float(float(self.tol)),
                "ok": self.ok}


@dataclass(frozen=True)
class Claim:
    """One inequality of a step, with its guaranteed slack."""

    name: str
    relation: str
    status: StepStatus
    margin: float
    strict: bool
    witness: tuple[Interval, ...] | None = None

    def to_dict(self) -> dict[str, Any]:
        entry: dict[str, Any] = {"name": self.name,
                                 "relation": self.relation,
                                 "status": self.status.label,
                                 "margin": format_float(self.margin)}
        if self.witness is not None:
            entry["witness"] = [{"lo": format_float(w.lo),
                                 "hi": format_float(w.hi)}
                                for w in self.witness]
        return entry


@dataclass(frozen=True)
class StepResult:
    """One verified proof step.

    margin is the smallest slack over the strict claims; claims that are
    allowed to touch (monotonicity, sandwiches) carry their own margin.
    """

    step_id: str
    status: StepStatus
    computed: tuple[tuple[str, Interval], ...]
    paper_expected: tuple[Expectation, ...]
    claims: tuple[Claim, ...]
    margin: float

    @property
    def proved(self) -> bool:
        return self.status is StepStatus.PROVED

    def failed_claims(self) -> list[Claim]:
        return [c for c in self.claims if c.status is not StepStatus.PROVED]

    def raise_for_status(self) -> None:
        """Raise RefutedStep if a claim was refuted."""
        for claim in self.claims:
            if claim.status is StepStatus.REFUTED:
                raise RefutedStep(self.step_id, claim.name, claim.witness)

    def to_dict(self) -> dict[str, Any]:
        return {"step_id": self.step_id,
                "status": self.status.label,
                "computed": [{"name": name, "lo": format_float(x.lo),
                              "hi": format_float(x.hi)}
                             for (name, x) in self.computed],
                "paper_expected": [e.to_dict() for e in self.paper_expected],
                "claims": [c.to_dict() for c in self.claims],
                "margin": format_float(self.margin)}


def _exact_holds(sign: Sign, value: Fraction) -> bool:
    return {Sign.POSITIVE: value > 0, Sign.NEGATIVE: value < 0,
            Sign.NONNEGATIVE: value >= 0, Sign.NONPOSITIVE: value <= 0}[sign]


@dataclass
class StepRecorder:
    """Collects values, printed-value checks and claims for one step."""

    step_id: str
    mode: ToleranceMode = ToleranceMode.PAPER
    max_depth: int = DEFAULT_MAX_DEPTH
    computed: list[tuple[str, Interval]] = field(default_factory=list)
    expectations: list[Expectation] = field(default_factory=list)
    claims: list[Claim] = field(default_factory=list)

    def value(self, name: str, enclosure: Interval) -> Interval:
        self.computed.append((name, enclosure))
        return enclosure

    def expect(self, expected: PaperValue, enclosure: Interval) -> Interval:
        """Record the enclosure and compare it with the printed value."""
        self.value(expected.name, enclosure)
        ok = expected.matches(enclosure, self.mode)
        if not ok:
            logger.warning("%s: %s = %s does not match printed %s",
                           self.step_id, expected.name, enclosure,
                           expected.printed)
        self.expectations.append(
            Expectation(expected, enclosure, expected.tol(self.mode), ok))
        return enclosure

    def expect_exact(self, expected: PaperValue, computed: Fraction
                     ) -> Fraction:
        enclosure = self.value(expected.name, Interval.from_rational(computed))
        ok = expected.matches_exact(computed, self.mode)
        if not ok:
            logger.warning("%s: %s = %s does not match %s", self.step_id,
                           expected.name, computed, expected.reported_value)
        self.expectations.append(
            Expectation(expected, enclosure, expected.tol(self.mode), ok))
        return computed

    def _add(self, name: str, sign: Sign | str, status: StepStatus,
             margin: float, strict: bool,
             witness: tuple[Interval, ...] | None = None) -> bool:
        relation = sign.value if isinstance(sign, Sign) else sign
        self.claims.append(Claim(name, relation, status, margin, strict,
                                 witness))
        if status is not StepStatus.PROVED:
            logger.warning("%s: claim '%s' %s", self.step_id, name,
                           status.label)
        return status is StepStatus.PROVED

    def sign(self, name: str, enclosure: Interval, sign: Sign) -> bool:
        """Claim that every value in the enclosure has the given sign."""
        if sign.holds(enclosure):
            status = StepStatus.PROVED
        elif sign.violated(enclosure):
            status = StepStatus.REFUTED
        else:
            status = StepStatus.INCONCLUSIVE
        return self._add(name, sign, status, sign.margin(enclosure),
                         sign.strict)

    def exact(self, name: str, value: Fraction, sign: Sign) -> bool:
        """Claim on an exact rational; a false claim is a refutation."""
        status = (StepStatus.PROVED if _exact_holds(sign, value)
                  else StepStatus.REFUTED)
        margin = float(value) if sign in (Sign.POSITIVE,
                                          Sign.NONNEGATIVE) else -float(value)
        return self._add(name, sign, status, margin, sign.strict)

    def check(self, name: str, passed: bool, detail: float = 0.0) -> bool:
        """Record a non-rigorous sanity check or an exact equality."""
        status = StepStatus.PROVED if passed else StepStatus.INCONCLUSIVE
        return self._add(name, "check", status, detail, False)

    def prove(self, name: str, fn: Callable[..., Interval],
              domain: Interval | Sequence[Interval], sign: Sign,
              derivative: Callable[[Interval], Interval] | None = None
              ) -> bool:
        """Claim a sign for fn over a domain by adaptive bisection."""
        box = (domain,) if isinstance(domain, Interval) else tuple(domain)
        try:
            outcome = prove_sign_on_box(fn, box, sign, self.max_depth,
                                        derivative)
        except DepthExceeded as exc:
            return self._add(name, sign, StepStatus.INCONCLUSIVE,
                             sign.margin(exc.enclosure), sign.strict,
                             exc.domain)
        if isinstance(outcome, SignRefutation):
            return self._add(name, sign, StepStatus.REFUTED,
                             sign.margin(outcome.enclosure), sign.strict,
                             outcome.witness)
        return self._add(name, sign, StepStatus.PROVED, outcome.margin,
                         sign.strict)

    def sandwich(self, bound: SineBoundPoly) -> bool:
        """Claim the polynomial bounds sin on its validity interval."""
        name = f"{bound.name} {bound.side.value} bound"
        try:
            outcome = certify_sine_bound(bound, self.max_depth)
        except DepthExceeded as exc:
            return self._add(name, Sign.NONNEGATIVE, StepStatus.INCONCLUSIVE,
                             Sign.NONNEGATIVE.margin(exc.enclosure), False,
                             exc.domain)
        if isinstance(outcome, SignRefutation):
            return self._add(name, Sign.NONNEGATIVE, StepStatus.REFUTED,
                             Sign.NONNEGATIVE.margin(outcome.enclosure),
                             False, outcome.witness)
        return self._add(name, Sign.NONNEGATIVE, StepStatus.PROVED,
                         outcome.margin, False)

    def result(self) -> StepResult:
        statuses = {c.status for c in self.claims}
        if StepStatus.REFUTED in statuses:
            status = StepStatus.REFUTED
        elif (StepStatus.INCONCLUSIVE in statuses
              or not all(e.ok for e in self.expectations)):
            status = StepStatus.INCONCLUSIVE
        else:
            status = StepStatus.PROVED
        strict = [c.margin for c in self.claims if c.strict]
        margin = min(strict or [c.margin for c in self.claims] or [0.0])
        logger.info("%s %s with margin %.3g", self.step_id, status.label,
                    margin)
        return StepResult(self.step_id, status, tuple(self.computed),
                          tuple(self.expectations), tuple(self.claims),
                          margin)


@dataclass(frozen=True)
class Certificate:
    """All steps of the proof for one pair, in a fixed order."""

    pair: PairMN
    steps: tuple[StepResult, ...]
    mode: ToleranceMode = ToleranceMode.PAPER

    @property
    def verdict(self) -> Verdict:
        if all(step.proved for step in self.steps):
            return Verdict.CONDITION_2_HOLDS
        return Verdict.FAILED

    @property
    def failed_step(self) -> str | None:
        for step in self.steps:
            if not step.proved:
                return step.step_id
        return None

    @property
    def verdict_label(self) -> str:
        if self.verdict is Verdict.CONDITION_2_HOLDS:
            return "condition_2_holds"
        return f"failed({self.failed_step})"

    def step(self, step_id: str) -> StepResult:
        for step in self.steps:
            if step.step_id == step_id:
                return step
        raise KeyError(step_id)

    def to_dict(self) -> dict[str, Any]:
        return {"pair": {"m": self.pair.m, "n": self.pair.n},
                "tolerances": self.mode.name.lower(),
                "steps": [step.to_dict() for step in self.steps],
                "verdict": self.verdict_label}
