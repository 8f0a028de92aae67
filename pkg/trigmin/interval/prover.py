"""Adaptive bisection proofs that an expression keeps a sign on a domain."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence
import logging

from .core import Interval

DEFAULT_MAX_DEPTH = 40
DEFAULT_NODE_BUDGET = 2_000_000

logger = logging.getLogger(__name__)

Expression = Callable[..., Interval]
Box = tuple[Interval, ...]


class Sign(Enum):
    """Sign claimed for an expression."""

    NONNEGATIVE = ">=0"
    NONPOSITIVE = "<=0"
    POSITIVE = ">0"
    NEGATIVE = "<0"

    @property
    def strict(self) -> bool:
        return self in (Sign.POSITIVE, Sign.NEGATIVE)

    def margin(self, enclosure: Interval) -> float:
        """Guaranteed slack of the claim over the enclosure."""
        if self in (Sign.NONNEGATIVE, Sign.POSITIVE):
            return enclosure.lo
        return -enclosure.hi

    def holds(self, enclosure: Interval) -> bool:
        m = self.margin(enclosure)
        return m > 0.0 if self.strict else m >= 0.0

    def violated(self, enclosure: Interval) -> bool:
        """True when every value in the enclosure breaks the claim."""
        if self is Sign.NONNEGATIVE:
            return enclosure.hi < 0.0
        if self is Sign.POSITIVE:
            return enclosure.hi <= 0.0
        if self is Sign.NONPOSITIVE:
            return enclosure.lo > 0.0
        return enclosure.lo >= 0.0


class DepthExceeded(RuntimeError):
    """Bisection ran out of depth before deciding the claim."""

    def __init__(self, domain: Box, enclosure: Interval) -> None:
        self.domain = domain
        self.enclosure = enclosure
        super().__init__("inconclusive on "
                         + " x ".join(str(d) for d in domain)
                         + f": enclosure {enclosure}")


@dataclass(frozen=True)
class SignProof:
    """Every leaf of a subdivision of the domain satisfied the claim."""

    sign: Sign
    domain: Box
    leaves: int
    margin: float
    depth: int


@dataclass(frozen=True)
class SignRefutation:
    """A point whose rigorous enclosure breaks the claim."""

    sign: Sign
    witness: Box
    enclosure: Interval


def _mean_value(fn: Expression, derivative: Expression,
                x: Interval) -> Interval:
    c = Interval.point(x.mid)
    return fn(c) + derivative(x) * (x - c)


def _enclose(fn: Expression, derivative: Expression | None,
             box: Box) -> Interval:
    enclosure = fn(*box)
    if derivative is not None:
        narrowed = enclosure.intersect(_mean_value(fn, derivative, box[0]))
        if narrowed is not None:
            enclosure = narrowed
    return enclosure


def _midpoint(box: Box) -> Box:
    return tuple(Interval.point(x.mid) for x in box)


def _split_widest(box: Box) -> tuple[Box, Box] | None:
    k = max(range(len(box)), key=lambda i: box[i].hi - box[i].lo)
    (left, right) = box[k].split()
    if left.is_point or right.is_point:
        return None
    return (box[:k] + (left,) + box[k + 1:],
            box[:k] + (right,) + box[k + 1:])


def prove_sign_on_box(fn: Expression, box: Sequence[Interval],
                      claimed_sign: Sign,
                      max_depth: int = DEFAULT_MAX_DEPTH,
                      derivative: Expression | None = None,
                      node_budget: int = DEFAULT_NODE_BUDGET
                      ) -> SignProof | SignRefutation:
    """Bisect the widest side of the box until every piece is decided.

    fn is called with one Interval per dimension. A derivative, accepted
    for one-dimensional domains only, adds a mean-value enclosure.
    Raises DepthExceeded when a piece at max_depth is still undecided.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    box = tuple(box)
    if derivative is not None and len(box) != 1:
        raise ValueError("derivatives are only used on intervals")
    stack: list[tuple[Box, int]] = [(box, 0)]
    leaves = 0
    nodes = 0
    deepest = 0
    margin = float('inf')
    while stack:
        (piece, depth) = stack.pop()
        nodes += 1
        enclosure = _enclose(fn, derivative, piece)
        if claimed_sign.holds(enclosure):
            leaves += 1
            deepest = max(deepest, depth)
            margin = min(margin, claimed_sign.margin(enclosure))
            continue
        if claimed_sign.violated(enclosure):
            witness = _midpoint(piece)
            return SignRefutation(claimed_sign, witness, fn(*witness))
        halves = _split_widest(piece)
        if depth >= max_depth or halves is None or nodes >= node_budget:
            witness = _midpoint(piece)
            at_witness = fn(*witness)
            if claimed_sign.violated(at_witness):
                return SignRefutation(claimed_sign, witness, at_witness)
            raise DepthExceeded(piece, enclosure)
        stack.append((halves[1], depth + 1))
        stack.append((halves[0], depth + 1))
    logger.debug("%s proved with %d leaves, depth %d, margin %.3g",
                  claimed_sign.value, leaves, deepest, margin)
    return SignProof(claimed_sign, box, leaves, margin, deepest)


def prove_sign_on_interval(fn: Callable[[Interval], Interval],
                           domain: Interval, claimed_sign: Sign,
                           max_depth: int = DEFAULT_MAX_DEPTH,
                           derivative: Callable[[Interval], Interval]
                           | None = None) -> SignProof | SignRefutation:
    """Prove fn keeps claimed_sign on domain, or refute it at a point."""
    return prove_sign_on_box(fn, (domain,), claimed_sign, max_depth,
                             derivative)
