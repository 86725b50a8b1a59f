"""Deciding solvability of x^3 + y^3 = z^3 in Q(sqrt d) by representation counts.

For positive squarefree ``d`` prime to 3 the counts of ``d`` by Q3 and Q4 are
compared; for ``3 | d`` the counts of ``d/3`` by Q1 and Q2.  Different counts
force ``L(E_d, 1) != 0`` and hence only trivial solutions, unconditionally.
Equal counts mean ``L(E_d, 1) = 0``, which gives solutions under BSD.
Negative ``d`` is routed to its partner ``-3d`` (same field answer).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

import numpy as np

from .arith import squarefree_part
from .curve import FermatSolution, burnside_search
from .lfunction import LReport, central_value, reduce_twist, root_number
from .theta import Q1, Q2, Q3, Q4, batch_counts, count_reps

L_ZERO_THRESHOLD = 1e-3


class Status(str, enum.Enum):
    NO_SOLUTION = "NoSolutionUnconditional"
    SOLVABLE_UNDER_BSD = "SolvableUnderBSD"
    KNOWN_TRIVIAL = "KnownTrivialField"


class Case(str, enum.Enum):
    Q3Q4 = "Q3Q4_at_d"
    Q1Q2 = "Q1Q2_at_d_over_3"
    SPECIAL = "special"


class Normalized(NamedTuple):
    d_pos: int
    valid: bool  # False for the degenerate partner (d = -3, whose partner is Q)


@dataclass(frozen=True)
class Verdict:
    status: Status
    case_used: Case
    counts: tuple[int, int]
    d_input: int
    d_positive_rep: int

    def to_json(self) -> dict:
        return {
            "d": self.d_input,
            "d_positive_rep": self.d_positive_rep,
            "case": self.case_used.value,
            "left_count": self.counts[0],
            "right_count": self.counts[1],
            "status": self.status.value,
        }

    def csv_row(self) -> list:
        return [self.d_input, self.case_used.value, self.counts[0], self.counts[1], self.status.value]

    def __str__(self):
        return (
            f"d={self.d_input}: {self.status.value} "
            f"(d+={self.d_positive_rep}, {self.case_used.value}, counts {self.counts[0]} {self.counts[1]})"
        )


CSV_HEADER = ["d", "case", "left_count", "right_count", "status"]


def normalize(d: int) -> Normalized:
    if d == 0:
        raise ValueError("d = 0 does not define a quadratic field")
    s = squarefree_part(d)
    if s == 1:
        raise ValueError(f"d = {d} is a perfect square; Q(sqrt d) = Q is not a quadratic field")
    if s > 0:
        return Normalized(s, True)
    d_pos = -s // 3 if s % 3 == 0 else -3 * s
    return Normalized(d_pos, d_pos != 1)


def _verdict(d: int, d_pos: int, counts: tuple[int, int]) -> Verdict:
    case = Case.Q1Q2 if d_pos % 3 == 0 else Case.Q3Q4
    status = Status.SOLVABLE_UNDER_BSD if counts[0] == counts[1] else Status.NO_SOLUTION
    return Verdict(status, case, counts, d, d_pos)


def decide(d: int) -> Verdict:
    d_pos, valid = normalize(d)
    if not valid:
        return Verdict(Status.KNOWN_TRIVIAL, Case.SPECIAL, (0, 0), d, d_pos)
    if d_pos % 3:
        counts = (count_reps(Q3, d_pos), count_reps(Q4, d_pos))
    else:
        counts = (count_reps(Q1, d_pos // 3), count_reps(Q2, d_pos // 3))
    return _verdict(d, d_pos, counts)


def _squarefree_mask(D: int) -> np.ndarray:
    mask = np.ones(D + 1, dtype=bool)
    mask[0] = False
    for p in range(2, math.isqrt(D) + 1):
        mask[p * p :: p * p] = False  # composite p only re-mark what a prime did
    return mask


def classify_range(D: int, shards: int = 1) -> Iterator[Verdict]:
    """Verdicts for every squarefree ``2 <= d <= D``, one sieve per form.

    The sieves run eagerly (so budget errors surface before any row);
    rows are then produced lazily.
    """
    if D < 2:
        raise ValueError("D must be >= 2")
    r3, r4 = batch_counts(Q3, D, shards), batch_counts(Q4, D, shards)
    m = max(D // 3, 1)
    r1, r2 = batch_counts(Q1, m, shards), batch_counts(Q2, m, shards)

    sqfree = _squarefree_mask(D)

    def rows():
        for d in range(2, D + 1):
            if not sqfree[d]:
                continue
            if d % 3:
                counts = (int(r3[d]), int(r4[d]))
            else:
                counts = (int(r1[d // 3]), int(r2[d // 3]))
            yield _verdict(d, d, counts)

    return rows()


@dataclass
class CrossCheck:
    verdict: Verdict
    lvalue: LReport
    root_number: int
    witness: Optional[FermatSolution]
    height: int
    flags: dict[str, bool] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return all(self.flags.values())

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.to_json(),
            "lvalue": self.lvalue.to_json(),
            "root_number": self.root_number,
            "witness": None if self.witness is None else self.witness.to_json(),
            "height": self.height,
            "flags": self.flags,
            "consistent": self.consistent,
        }


def cross_check(d: int, H: int = 50, search: bool = True) -> CrossCheck:
    """Compare the count criterion against ``L(E_d, 1)``, its sign and a point search."""
    verdict = decide(d)
    lrep = central_value(squarefree_part(d))
    w = root_number(reduce_twist(squarefree_part(d)))
    witness = burnside_search(squarefree_part(d), H) if search else None
    status = verdict.status
    nonzero = abs(lrep.value) > L_ZERO_THRESHOLD
    flags = {
        # counts differ => L != 0; counts equal => L = 0
        "counts_vs_lvalue": nonzero if status != Status.SOLVABLE_UNDER_BSD else not nonzero,
        # w = -1 forces equal counts
        "root_number_vs_counts": w == 1 or status == Status.SOLVABLE_UNDER_BSD,
        # a nontrivial solution cannot exist when L != 0
        "witness_vs_verdict": witness is None or status == Status.SOLVABLE_UNDER_BSD,
    }
    return CrossCheck(verdict, lrep, w, witness, H, flags)
