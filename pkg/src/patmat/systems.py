"""Strong structural property checks for structured linear systems.

Each check assembles composite pattern matrices and reduces the question
to strong full-rank decisions.  Verdicts are three-valued: properties with
a necessary-and-sufficient rank test report Holds or Fails, while
sufficient-only tests report Holds or Inconclusive so that a failed
sufficient condition is never presented as a refutation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import DimensionError
from .pattern import PatternMatrix, hstack, identity_pattern, vstack
from .rank import RankVerdict, full_column_rank, full_row_rank, numeric_rank
from .realization import (
    RealizationMatrix,
    ValueDistribution,
    derive_seed,
    sample_member,
)

__all__ = [
    "Verdict",
    "SystemProperty",
    "ConditionCheck",
    "AnalysisReport",
    "StructuredDescriptorSystem",
    "StructuredIOSystem",
    "check_ssc",
    "check_descriptor",
    "check_iso",
    "build_output_ctrl_pattern",
    "check_output_controllability",
    "member_is_regular",
    "regularity_diagnostic",
]


class Verdict(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


class SystemProperty(enum.Enum):
    SSC = "ssc"
    REGULAR_SSC = "regular_ssc"
    ISO = "input_state_observability"
    OUTPUT_CONTROLLABILITY = "output_controllability"


@dataclass(frozen=True)
class ConditionCheck:
    name: str
    shape: tuple[int, int]
    verdict: RankVerdict

    @property
    def passed(self) -> bool:
        return self.verdict.full_rank


@dataclass(frozen=True)
class AnalysisReport:
    property: SystemProperty
    verdict: Verdict
    conditions: tuple[ConditionCheck, ...]
    notes: str = ""
    rank_conditions_hold: Optional[bool] = None


@dataclass(frozen=True)
class StructuredDescriptorSystem:
    """Patterns (E, A, B) for E x' = A x + B u with E possibly singular."""

    E: PatternMatrix
    A: PatternMatrix
    B: PatternMatrix

    def __post_init__(self):
        n = self.E.rows
        if self.E.cols != n or self.A.shape != (n, n):
            raise DimensionError(
                f"E and A must be square of equal size, got E {self.E.rows}x"
                f"{self.E.cols}, A {self.A.rows}x{self.A.cols}"
            )
        if self.B.rows != n:
            raise DimensionError(
                f"B must have {n} rows, got {self.B.rows}x{self.B.cols}"
            )

    @property
    def n(self) -> int:
        return self.E.rows

    @property
    def m(self) -> int:
        return self.B.cols


@dataclass(frozen=True)
class StructuredIOSystem:
    """Patterns (A, B, C, D) for x' = A x + B u, y = C x + D u."""

    A: PatternMatrix
    B: PatternMatrix
    C: PatternMatrix
    D: PatternMatrix

    def __post_init__(self):
        n = self.A.rows
        if self.A.cols != n:
            raise DimensionError(f"A must be square, got {self.A.rows}x{self.A.cols}")
        if self.B.rows != n:
            raise DimensionError(f"B must have {n} rows, got {self.B.rows}")
        if self.C.cols != n:
            raise DimensionError(f"C must have {n} columns, got {self.C.cols}")
        if self.D.shape != (self.C.rows, self.B.cols):
            raise DimensionError(
                f"D must be {self.C.rows}x{self.B.cols}, got"
                f" {self.D.rows}x{self.D.cols}"
            )

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def m(self) -> int:
        return self.B.cols

    @property
    def p(self) -> int:
        return self.C.rows


def _condition(name: str, pattern: PatternMatrix, column: bool = False) -> ConditionCheck:
    verdict = full_column_rank(pattern) if column else full_row_rank(pattern)
    return ConditionCheck(name, pattern.shape, verdict)


def check_ssc(a: PatternMatrix, b: PatternMatrix) -> AnalysisReport:
    """Strong structural controllability of (A, B).

    Holds iff [A B] and [A+I B] both have full row rank; the test is
    necessary and sufficient, so failure reports Fails.
    """
    if a.rows != a.cols:
        raise DimensionError(f"A must be square, got {a.rows}x{a.cols}")
    if b.rows != a.rows:
        raise DimensionError(f"B must have {a.rows} rows, got {b.rows}")
    n = a.rows
    cond1 = _condition("[A B]", hstack([a, b]))
    cond2 = _condition("[A+I B]", hstack([a + identity_pattern(n), b]))
    holds = cond1.passed and cond2.passed
    return AnalysisReport(
        SystemProperty.SSC,
        Verdict.HOLDS if holds else Verdict.FAILS,
        (cond1, cond2),
        notes="necessary and sufficient rank test",
    )


def check_descriptor(system: StructuredDescriptorSystem) -> AnalysisReport:
    """Regular strong structural controllability of (E, A, B).

    The three full-row-rank conditions on [E B], [A B] and [A+E B] hold for
    every member exactly when all three pattern tests pass
    (rank_conditions_hold).  Passing is sufficient for all regular members
    to be controllable, but not necessary, so the verdict is Holds or
    Inconclusive, never Fails.
    """
    e, a, b = system.E, system.A, system.B
    conds = (
        _condition("[E B]", hstack([e, b])),
        _condition("[A B]", hstack([a, b])),
        _condition("[A+E B]", hstack([a + e, b])),
    )
    all_pass = all(c.passed for c in conds)
    return AnalysisReport(
        SystemProperty.REGULAR_SSC,
        Verdict.HOLDS if all_pass else Verdict.INCONCLUSIVE,
        conds,
        notes=(
            "rank conditions are necessary and sufficient for the member-wise"
            " rank test; controllability of all regular members follows when"
            " they pass but their failure is not a refutation"
        ),
        rank_conditions_hold=all_pass,
    )


def check_iso(system: StructuredIOSystem) -> AnalysisReport:
    """Strong structural input-state observability of (A, B, C, D).

    Holds iff [[A B],[C D]] and [[A+I B],[C D]] both have full column rank;
    necessary and sufficient, so failure reports Fails.
    """
    a, b, c, d = system.A, system.B, system.C, system.D
    n = system.n
    top = hstack([a, b])
    bottom = hstack([c, d])
    top_shifted = hstack([a + identity_pattern(n), b])
    cond1 = _condition("[[A B],[C D]]", vstack([top, bottom]), column=True)
    cond2 = _condition("[[A+I B],[C D]]", vstack([top_shifted, bottom]), column=True)
    holds = cond1.passed and cond2.passed
    return AnalysisReport(
        SystemProperty.ISO,
        Verdict.HOLDS if holds else Verdict.FAILS,
        (cond1, cond2),
        notes="necessary and sufficient rank test",
    )


def build_output_ctrl_pattern(
    system: StructuredIOSystem, max_power: int
) -> PatternMatrix:
    """[D, CB, CAB, ..., C A^max_power B] as one pattern matrix."""
    n = system.n
    if not 0 <= max_power <= n - 1:
        raise ValueError(f"max_power must be in [0, {n - 1}], got {max_power}")
    blocks = [system.D]
    left = system.C
    for _ in range(max_power + 1):
        blocks.append(left @ system.B)
        left = left @ system.A
    return hstack(blocks)


def check_output_controllability(system: StructuredIOSystem) -> AnalysisReport:
    """Strong structural output controllability of (A, B, C, D).

    Tests full row rank of [D], then [D CB], and so on up to the power
    n-1, stopping at the first success (appending columns cannot destroy
    full row rank).  The rank test is sufficient only, so the verdict is
    Holds or Inconclusive.
    """
    n = system.n
    conditions = []
    prefix = system.D
    name = "[D"
    left = system.C
    power = 0
    while True:
        cond = _condition(name + "]", prefix)
        conditions.append(cond)
        if cond.passed:
            return AnalysisReport(
                SystemProperty.OUTPUT_CONTROLLABILITY,
                Verdict.HOLDS,
                tuple(conditions),
                notes="sufficient rank test passed on a column prefix",
            )
        if power > n - 1:
            return AnalysisReport(
                SystemProperty.OUTPUT_CONTROLLABILITY,
                Verdict.INCONCLUSIVE,
                tuple(conditions),
                notes=(
                    "sufficient rank test failed through power"
                    f" {n - 1}; no conclusion about the family"
                ),
            )
        block = left @ system.B
        left = left @ system.A
        prefix = hstack([prefix, block])
        name += " CB" if power == 0 else (" CAB" if power == 1 else f" CA^{power}B")
        power += 1


def member_is_regular(e: RealizationMatrix, a: RealizationMatrix) -> bool:
    """Exact regularity test for a member pair: lambda*E - A is invertible
    for some lambda iff its determinant polynomial is not identically zero,
    decided by evaluating at n + 1 integer points."""
    if e.shape != a.shape or e.rows != e.cols:
        raise DimensionError("E and A must be square of equal size")
    n = e.rows
    if n == 0:
        return True
    for lam in range(n + 1):
        if numeric_rank(e.scaled(lam) - a, 0) == n:
            return True
    return False


def regularity_diagnostic(
    system: StructuredDescriptorSystem, trials: int = 50, seed: int = 0
) -> tuple[int, int]:
    """Sampling diagnostic: how many sampled (E, A) member pairs are
    regular.  Informational only; no structural regularity test exists here."""
    regular = 0
    for t in range(trials):
        e = sample_member(system.E, ValueDistribution(seed=derive_seed(seed, 2 * t)))
        a = sample_member(
            system.A, ValueDistribution(seed=derive_seed(seed, 2 * t + 1))
        )
        if member_is_regular(e, a):
            regular += 1
    return regular, trials
