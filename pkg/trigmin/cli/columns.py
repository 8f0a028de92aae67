"""Column order of the CSV and text reports."""
from enum import Enum, auto


class OracleColumn(Enum):
    """Columns of an oracle report, in output order."""

    M = 0
    N = auto()
    ARGMIN = auto()
    MIN = auto()
    F0 = auto()
    WORKS = auto()
    SLACK = auto()


class ScanColumn(Enum):
    """Columns of a slope scan report, in output order."""

    M = 0
    N_MAX_WORKS = auto()
    SLOPE = auto()
    FIRST_FAILURE_N = auto()
    CONJECTURED_N_MAX = auto()


class ConstantsColumn(Enum):
    """Columns of the constants table, in output order."""

    NAME = 0
    LO = auto()
    HI = auto()
    VALUE = auto()
    TOL = auto()
    OK = auto()


class StepColumn(Enum):
    """Columns of a certificate summary, one row per step."""

    M = 0
    N = auto()
    STEP_ID = auto()
    STATUS = auto()
    MARGIN = auto()


class BmnColumn(Enum):
    """Columns of a B_mn report: the known value, then the oracle's."""

    M = 0
    N = auto()
    BASIS = auto()
    DESCRIPTION = auto()
    F0 = auto()
    EXPECTED = auto()
    CONDITION_2_EXPECTED = auto()
    MIN = auto()
    ARGMIN = auto()
    WORKS = auto()


def header(columns: type[Enum]) -> list[str]:
    return [c.name.lower() for c in columns]


column_text = {}  # text report titles
column_text[OracleColumn.ARGMIN] = "argmin x"
column_text[OracleColumn.MIN] = "min f"
column_text[OracleColumn.F0] = "f(0)"
column_text[ScanColumn.N_MAX_WORKS] = "largest n with min at 0"
column_text[ScanColumn.FIRST_FAILURE_N] = "first n without"
column_text[ScanColumn.CONJECTURED_N_MAX] = "n < (4m+2)/5"
column_text[ConstantsColumn.VALUE] = "printed"
column_text[BmnColumn.F0] = "f(0)"
column_text[BmnColumn.EXPECTED] = "known B_mn"
column_text[BmnColumn.CONDITION_2_EXPECTED] = "min at 0 known"
column_text[BmnColumn.MIN] = "oracle min f"
column_text[BmnColumn.ARGMIN] = "argmin x"


def title(column: Enum) -> str:
    return column_text.get(column, column.name.lower())
