from fractions import Fraction
from pathlib import Path
import math
import os
import random
import shutil
import tempfile

from trigmin.certificates.assemble import ACCEPTED_PAIRS, REJECTED_PAIRS
from trigmin.interval.core import Interval
from trigmin.interval.prover import Sign
from trigmin.model.functions import PairMN

SCHEMA_PATH = (Path(__file__).resolve().parent.parent / "schemas"
               / "certificate.schema.json")

# Full certificates take minutes per pair; opt in with TRIGMIN_SLOW_TESTS=1.
SLOW_TESTS = os.environ.get("TRIGMIN_SLOW_TESTS", "") not in ("", "0")

ACCEPTED = [PairMN(m, n) for (m, n) in ACCEPTED_PAIRS]
REJECTED = [PairMN(m, n) for (m, n) in REJECTED_PAIRS]


def random_interval(rng: random.Random, scale: float = 10.0) -> Interval:
    (a, b) = sorted(rng.uniform(-scale, scale) for _ in range(2))
    return Interval(a, b)


def random_member(rng: random.Random, x: Interval) -> Fraction:
    """Exact rational point of x."""
    (lo, hi) = (Fraction(x.lo), Fraction(x.hi))
    return lo + (hi - lo) * Fraction(rng.randrange(1001), 1000)


def encloses(x: Interval, value: Fraction | float) -> bool:
    return Fraction(x.lo) <= Fraction(value) <= Fraction(x.hi)


def close_to(x: Interval, value: float, tol: float) -> bool:
    return x.is_bounded and abs(x.mid - value) <= tol and x.width <= 2 * tol


class TempConfigHome:
    """Empty XDG_CONFIG_HOME and a single worker while a test runs."""

    def __init__(self) -> None:
        self.directory = Path(tempfile.mkdtemp())
        self._saved: dict[str, str | None] = {}

    def __enter__(self) -> Path:
        for key in ("XDG_CONFIG_HOME", "TRIGMIN_THREADS"):
            self._saved[key] = os.environ.get(key)
        os.environ["XDG_CONFIG_HOME"] = str(self.directory)
        os.environ["TRIGMIN_THREADS"] = "1"
        return self.directory

    def __exit__(self, *exc_info) -> None:
        for (key, value) in self._saved.items():
            if value is None:
                os.environ.pop(key, None)
            else:
                os.environ[key] = value
        shutil.rmtree(self.directory)


def assert_no_sample_breaks(case, fn, box, sign: Sign, rng: random.Random,
                            samples: int) -> None:
    """No seeded point of the box has an enclosure that violates sign."""
    for _ in range(samples):
        point = tuple(Interval.point(rng.uniform(x.lo, x.hi)) for x in box)
        case.assertFalse(sign.violated(fn(*point)),
                         f"claim {sign.value} broken at {point[0]}")


def near_pi_distance(x: float) -> float:
    return abs(math.pi - x)
