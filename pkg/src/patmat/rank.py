"""Strong full-rank decisions for pattern matrices, with certificates.

A pattern matrix has full row rank (in the strong sense) when every member
of its pattern class has full row rank.  The decision procedure is a pivot
elimination: repeatedly find a column whose only nonzero entry among the
remaining rows is a *, and delete that row and column.  Eliminating every
row certifies the property: the single-* column forces the corresponding
coordinate of any left null vector to vanish, row by row.

On success the verdict carries the pivot sequence, which can be replayed
against the pattern by verify_certificate.  On failure it carries the
stalled residual, and refute_full_rank can search for an explicit member
with deficient rank, verified in exact arithmetic.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DimensionError
from .pattern import PatternMatrix
from .realization import RealizationMatrix, contains, derive_seed
from .symbols import QUEST, STAR, ZERO

__all__ = [
    "StallReport",
    "RankVerdict",
    "RefutationBudget",
    "DEFAULT_GRID_VALUES",
    "full_row_rank",
    "full_column_rank",
    "verify_certificate",
    "strongly_nonsingular_square",
    "numeric_rank",
    "grid_witness_search",
    "refute_full_rank",
    "pencil_full_rank",
]

DEFAULT_GRID_VALUES = (-2, -1, 0, 1, 2)


@dataclass(frozen=True)
class StallReport:
    """Why elimination stopped: reason plus the surviving submatrix."""

    reason: str
    rows: tuple[int, ...] = ()
    cols: tuple[int, ...] = ()
    residual: Optional[PatternMatrix] = None


@dataclass(frozen=True)
class RankVerdict:
    """Outcome of a strong full-rank decision.

    full_rank=True comes with one pivot (row, col) per row in elimination
    order; full_rank=False comes with a stall report and, when a refuter
    was consulted, an exact rank-deficient member as witness.
    """

    full_rank: bool
    pivots: tuple[tuple[int, int], ...] = ()
    stall: Optional[StallReport] = None
    witness: Optional[RealizationMatrix] = None

    def with_witness(self, witness: Optional[RealizationMatrix]) -> "RankVerdict":
        return RankVerdict(self.full_rank, self.pivots, self.stall, witness)


@dataclass(frozen=True)
class RefutationBudget:
    """Search budget for refute_full_rank.

    grid_values feeds the exhaustive grid; * entries only draw from its
    nonzero subset.  Restarts and iterations bound the numeric descent.
    """

    grid_values: tuple = DEFAULT_GRID_VALUES
    max_random_restarts: int = 8
    descent_iterations: int = 60

    def __post_init__(self):
        if not any(v != 0 for v in self.grid_values):
            raise ValueError("grid_values needs at least one nonzero value")


DEFAULT_BUDGET = RefutationBudget()


# ---------------------------------------------------------------------------
# pivot elimination


def _eliminate(
    pattern: PatternMatrix,
    choose: Callable[[list[tuple[int, int]]], tuple[int, int]],
):
    """Run the elimination; returns (pivots, surviving (rows, cols) or None).

    `choose` picks one of the eligible (col, row) pairs at each step; the
    final verdict does not depend on the choice, only the pivot order does.
    """
    active_rows = list(range(pattern.rows))
    active_cols = list(range(pattern.cols))
    pivots: list[tuple[int, int]] = []
    while active_rows:
        eligible: list[tuple[int, int]] = []
        for j in active_cols:
            nonzero_row = -1
            count = 0
            for i in active_rows:
                if pattern[i, j] is not ZERO:
                    count += 1
                    if count > 1:
                        break
                    nonzero_row = i
            if count == 1 and pattern[nonzero_row, j] is STAR:
                eligible.append((j, nonzero_row))
        if not eligible:
            return pivots, (tuple(active_rows), tuple(active_cols))
        col, row = choose(eligible)
        pivots.append((row, col))
        active_rows.remove(row)
        active_cols.remove(col)
    return pivots, None


def _first(eligible: list[tuple[int, int]]) -> tuple[int, int]:
    # lowest eligible column; the row is determined by the column
    return eligible[0]


def _residual(pattern: PatternMatrix, rows, cols) -> PatternMatrix:
    entries = tuple(pattern[i, j] for i in rows for j in cols)
    return PatternMatrix(len(rows), len(cols), entries)


def full_row_rank(
    pattern: PatternMatrix,
    choose: Callable[[list[tuple[int, int]]], tuple[int, int]] = _first,
) -> RankVerdict:
    """Decide whether every member of the pattern class has full row rank."""
    if pattern.rows > pattern.cols:
        return RankVerdict(False, stall=StallReport("more rows than columns"))
    pivots, stall = _eliminate(pattern, choose)
    if stall is None:
        return RankVerdict(True, tuple(pivots))
    rows, cols = stall
    return RankVerdict(
        False,
        tuple(pivots),
        StallReport(
            "no eligible pivot column", rows, cols, _residual(pattern, rows, cols)
        ),
    )


def full_column_rank(pattern: PatternMatrix) -> RankVerdict:
    """Row-rank decision on the transpose, with coordinates mapped back."""
    verdict = full_row_rank(pattern.transpose())
    pivots = tuple((j, i) for (i, j) in verdict.pivots)
    stall = None
    if verdict.stall is not None:
        s = verdict.stall
        reason = (
            "more columns than rows"
            if s.reason == "more rows than columns"
            else s.reason
        )
        stall = StallReport(
            reason,
            rows=s.cols,
            cols=s.rows,
            residual=s.residual.transpose() if s.residual is not None else None,
        )
    return RankVerdict(verdict.full_rank, pivots, stall)


def verify_certificate(
    pattern: PatternMatrix, pivots: Sequence[tuple[int, int]]
) -> bool:
    """Replay a success certificate: every pivot column must have exactly
    one nonzero among the rows still active at that step, at the pivot row,
    and that entry must be *; all rows must be consumed."""
    if len(pivots) != pattern.rows:
        return False
    active_rows = set(range(pattern.rows))
    active_cols = set(range(pattern.cols))
    for i, j in pivots:
        if i not in active_rows or j not in active_cols:
            return False
        if pattern[i, j] is not STAR:
            return False
        if any(pattern[r, j] is not ZERO for r in active_rows if r != i):
            return False
        active_rows.remove(i)
        active_cols.remove(j)
    return True


# ---------------------------------------------------------------------------
# square cross-check via bipartite matching


def strongly_nonsingular_square(pattern: PatternMatrix) -> bool:
    """True iff the rows-by-columns bipartite graph of nonzero entries has
    exactly one perfect matching and every matched entry is *."""
    if pattern.rows != pattern.cols:
        raise DimensionError(
            f"square pattern required, got {pattern.rows}x{pattern.cols}"
        )
    n = pattern.rows
    if n == 0:
        return True
    adj = [
        [j for j in range(n) if pattern[i, j] is not ZERO] for i in range(n)
    ]

    match_col = [-1] * n  # column -> matched row

    def augment(r: int, seen: list[bool]) -> bool:
        for c in adj[r]:
            if not seen[c]:
                seen[c] = True
                if match_col[c] == -1 or augment(match_col[c], seen):
                    match_col[c] = r
                    return True
        return False

    for r in range(n):
        if not augment(r, [False] * n):
            return False  # no perfect matching at all

    if any(pattern[match_col[c], c] is not STAR for c in range(n)):
        return False

    # uniqueness: the matching is unique iff there is no alternating cycle;
    # walk row -> row via (non-matching edge, matching edge) pairs
    match_row = [-1] * n
    for c in range(n):
        match_row[match_col[c]] = c
    succ = [
        [match_col[c] for c in adj[r] if c != match_row[r]] for r in range(n)
    ]
    color = [0] * n  # 0 unvisited, 1 on stack, 2 done
    stack: list[tuple[int, int]] = []
    for start in range(n):
        if color[start]:
            continue
        stack.append((start, 0))
        color[start] = 1
        while stack:
            node, idx = stack[-1]
            if idx < len(succ[node]):
                stack[-1] = (node, idx + 1)
                nxt = succ[node][idx]
                if color[nxt] == 1:
                    return False  # alternating cycle: a second matching exists
                if color[nxt] == 0:
                    color[nxt] = 1
                    stack.append((nxt, 0))
            else:
                color[node] = 2
                stack.pop()
    return True


# ---------------------------------------------------------------------------
# numeric rank


def numeric_rank(matrix: RealizationMatrix, tol=0) -> int:
    """Rank by row reduction with partial pivoting.

    A pivot candidate with absolute value at most tol times the largest
    initial absolute entry counts as zero.  With exact (int or Fraction)
    entries and tol=0 the result is the exact rank; float and complex
    entries are supported for numeric oracles.
    """
    if tol < 0:
        raise ValueError("negative tolerance")
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    if tol == 0 and matrix.is_exact():
        if all(isinstance(e, int) for e in matrix.entries):
            return _int_rank(matrix.to_rows())
        return _exact_rank(
            [[Fraction(e) for e in row] for row in matrix.to_rows()]
        )
    return _scaled_rank(matrix.to_rows(), tol)


def _int_rank(a: list[list[int]]) -> int:
    # division-free elimination, exact over the integers
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        pivot = -1
        for i in range(r, rows):
            if a[i][c]:
                pivot = i
                break
        if pivot < 0:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pr = a[r]
        pv = pr[c]
        for i in range(r + 1, rows):
            q = a[i][c]
            if q:
                ai = a[i]
                for k in range(c, cols):
                    ai[k] = ai[k] * pv - pr[k] * q
        r += 1
        if r == rows:
            break
    return r


def _exact_rank(a: list[list[Fraction]]) -> int:
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        pivot = max(range(r, rows), key=lambda i: abs(a[i][c]))
        if a[pivot][c] == 0:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pr = a[r]
        pv = pr[c]
        for i in range(r + 1, rows):
            f = a[i][c] / pv
            if f:
                ai = a[i]
                for k in range(c, cols):
                    ai[k] -= f * pr[k]
        r += 1
        if r == rows:
            break
    return r


def _scaled_rank(a: list[list], tol) -> int:
    rows, cols = len(a), len(a[0])
    scale = max(abs(x) for row in a for x in row)
    if scale == 0:
        return 0
    threshold = tol * scale
    r = 0
    for c in range(cols):
        pivot = max(range(r, rows), key=lambda i: abs(a[i][c]))
        if abs(a[pivot][c]) <= threshold:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pr = a[r]
        pv = pr[c]
        for i in range(r + 1, rows):
            f = a[i][c] / pv
            if f != 0:
                ai = a[i]
                for k in range(c, cols):
                    ai[k] -= f * pr[k]
        r += 1
        if r == rows:
            break
    return r


# ---------------------------------------------------------------------------
# refutation: explicit rank-deficient members


def _ordered_grid(values) -> tuple[tuple, tuple]:
    normalized = []
    for v in set(Fraction(v) for v in values):
        normalized.append(int(v) if v.denominator == 1 else v)
    # zero first, then small magnitudes, positive before negative
    ordered = tuple(sorted(normalized, key=lambda v: (abs(v), v < 0)))
    star_values = tuple(v for v in ordered if v != 0)
    return ordered, star_values


def _verified(pattern: PatternMatrix, witness: RealizationMatrix):
    if contains(pattern, witness, 0) and numeric_rank(witness, 0) < pattern.rows:
        return witness
    return None


def grid_witness_search(
    pattern: PatternMatrix, grid_values=DEFAULT_GRID_VALUES
) -> Optional[RealizationMatrix]:
    """Exhaustive search over a value grid for a rank-deficient member.

    ? entries range over all grid values, * entries over the nonzero ones.
    Returns the first witness in a fixed enumeration order (zero first,
    then by magnitude with positive before negative), or None when no
    member on the grid is rank deficient.
    """
    rows, cols = pattern.rows, pattern.cols
    if rows == 0:
        return None
    quest_values, star_values = _ordered_grid(grid_values)
    if not star_values and any(s is STAR for s in pattern.entries):
        return None
    free = [i for i, s in enumerate(pattern.entries) if s is not ZERO]
    domains = [
        star_values if pattern.entries[i] is STAR else quest_values for i in free
    ]
    template = [0] * (rows * cols)
    ints_only = all(isinstance(v, int) for d in domains for v in d)
    rank_fn = _int_rank if ints_only else lambda a: numeric_rank(
        RealizationMatrix(rows, cols, tuple(x for r in a for x in r)), 0
    )
    for combo in itertools.product(*domains):
        for pos, v in zip(free, combo):
            template[pos] = v
        a = [template[i * cols : (i + 1) * cols] for i in range(rows)]
        if rank_fn(a) < rows:
            witness = RealizationMatrix(rows, cols, tuple(template))
            verified = _verified(pattern, witness)
            if verified is not None:
                return verified
    return None


def _equal_rows_witness(pattern: PatternMatrix) -> Optional[RealizationMatrix]:
    """Try to make two rows identical; a 0/* clash in some column rules a
    pair out, otherwise 1 serves where a * demands nonzero and 0 elsewhere."""
    rows, cols = pattern.rows, pattern.cols
    for i in range(rows):
        for k in range(i + 1, rows):
            values = []
            for j in range(cols):
                pair = (pattern[i, j], pattern[k, j])
                if STAR in pair:
                    if ZERO in pair:
                        break
                    values.append(1)
                else:
                    values.append(0)
            else:
                entries = []
                for r in range(rows):
                    if r == i or r == k:
                        entries.extend(values)
                    else:
                        entries.extend(
                            1 if pattern[r, j] is STAR else 0 for j in range(cols)
                        )
                witness = _verified(
                    pattern, RealizationMatrix(rows, cols, tuple(entries))
                )
                if witness is not None:
                    return witness
    return None


def _null_combination_witness(
    pattern: PatternMatrix,
) -> Optional[RealizationMatrix]:
    """Search for a row subset S supporting a vanishing combination.

    A member with a left null vector supported exactly on S exists iff no
    column meets S in exactly one * and no ?.  Subsets are tried smallest
    first, so an all-removable row (no * anywhere) yields a zero-row
    witness.  Complete for patterns with at most 16 rows.
    """
    rows, cols = pattern.rows, pattern.cols
    if rows == 0 or rows > 16:
        return None
    star_rows = [
        frozenset(i for i in range(rows) if pattern[i, j] is STAR)
        for j in range(cols)
    ]
    quest_rows = [
        frozenset(i for i in range(rows) if pattern[i, j] is QUEST)
        for j in range(cols)
    ]
    for size in range(1, rows + 1):
        for subset in itertools.combinations(range(rows), size):
            sset = frozenset(subset)
            if any(
                len(star_rows[j] & sset) == 1 and not (quest_rows[j] & sset)
                for j in range(cols)
            ):
                continue
            entries = [0] * (rows * cols)
            for r in range(rows):
                if r in sset:
                    continue
                for j in range(cols):
                    if pattern[r, j] is STAR:
                        entries[r * cols + j] = 1
            for j in range(cols):
                stars = sorted(star_rows[j] & sset)
                quests = sorted(quest_rows[j] & sset)
                if not stars:
                    continue  # whole column of S stays zero
                if len(stars) == 1:
                    entries[stars[0] * cols + j] = 1
                    entries[quests[0] * cols + j] = -1
                elif quests:
                    for r in stars:
                        entries[r * cols + j] = 1
                    entries[quests[0] * cols + j] = -len(stars)
                else:
                    for r in stars[:-1]:
                        entries[r * cols + j] = 1
                    entries[stars[-1] * cols + j] = -(len(stars) - 1)
            witness = _verified(
                pattern, RealizationMatrix(rows, cols, tuple(entries))
            )
            if witness is not None:
                return witness
    return None


def _descent_witness(
    pattern: PatternMatrix, budget: RefutationBudget
) -> Optional[RealizationMatrix]:
    """Random restarts plus coordinate descent on the smallest singular
    value, then exact rational rounding and re-verification."""
    rows, cols = pattern.rows, pattern.cols
    free = [
        (i, s) for i, s in enumerate(pattern.entries) if s is not ZERO
    ]
    if rows == 0 or not free or budget.max_random_restarts <= 0:
        return None

    def smallest_sv(flat: list[float]) -> float:
        arr = np.array(flat, dtype=float).reshape(rows, cols)
        return float(np.linalg.svd(arr, compute_uv=False)[-1])

    for restart in range(budget.max_random_restarts):
        rng = random.Random(derive_seed(0xD5, restart))
        flat = [0.0] * (rows * cols)
        for pos, sym in free:
            mag = rng.uniform(0.5, 2.0) * rng.choice((1.0, -1.0))
            flat[pos] = mag if sym is STAR else rng.uniform(-1.5, 1.5)
        best = smallest_sv(flat)
        for it in range(budget.descent_iterations):
            step = 1.0 / (1 + it)
            improved = False
            for pos, sym in free:
                old = flat[pos]
                candidates = [old * 0.5, old * 2.0, -old, old + step, old - step]
                if sym is QUEST:
                    candidates.append(0.0)
                for cand in candidates:
                    if sym is STAR and abs(cand) < 1e-3:
                        continue
                    flat[pos] = cand
                    sv = smallest_sv(flat)
                    if sv < best - 1e-15:
                        best = sv
                        old = cand
                        improved = True
                flat[pos] = old
            if best < 1e-12 or not improved:
                break
        if best > 1e-6:
            continue
        for denominator in (1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64):
            entries: list = [0] * (rows * cols)
            for pos, sym in free:
                approx = Fraction(round(flat[pos] * denominator), denominator)
                if sym is STAR and approx == 0:
                    approx = Fraction(1 if flat[pos] >= 0 else -1, denominator)
                entries[pos] = approx
            witness = _verified(
                pattern, RealizationMatrix(rows, cols, tuple(entries))
            )
            if witness is not None:
                return witness
    return None


def refute_full_rank(
    pattern: PatternMatrix, budget: Optional[RefutationBudget] = None
) -> Optional[RealizationMatrix]:
    """Search for a member of the pattern class with rank below the row
    count.  Any returned witness is verified in exact arithmetic; None
    means the budget was exhausted without finding one."""
    if budget is None:
        budget = DEFAULT_BUDGET
    rows, cols = pattern.rows, pattern.cols
    if rows == 0:
        return None
    if rows > cols:
        # every member is deficient; produce a canonical one
        entries = tuple(1 if s is STAR else 0 for s in pattern.entries)
        return _verified(pattern, RealizationMatrix(rows, cols, entries))
    free_count = sum(1 for s in pattern.entries if s is not ZERO)
    if free_count <= 10:
        witness = grid_witness_search(pattern, budget.grid_values)
        if witness is not None:
            return witness
    witness = _equal_rows_witness(pattern)
    if witness is not None:
        return witness
    witness = _null_combination_witness(pattern)
    if witness is not None:
        return witness
    return _descent_witness(pattern, budget)


# ---------------------------------------------------------------------------
# matrix pencils


def pencil_full_rank(a: PatternMatrix, b: PatternMatrix) -> RankVerdict:
    """Decide whether A - lambda*B has full rank for every pair of members
    and every nonzero complex lambda; equivalent to full rank of a + b."""
    if a.shape != b.shape:
        raise DimensionError(
            f"pencil patterns differ: {a.rows}x{a.cols} vs {b.rows}x{b.cols}"
        )
    total = a + b
    if total.rows <= total.cols:
        return full_row_rank(total)
    return full_column_rank(total)
