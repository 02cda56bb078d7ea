"""Phase shifts between cell output sequences of a maximal-length CA.

If row i of T^k is the unit vector e_j, cell i repeats cell j's sequence k
steps later.  Scanning T, T^2, T^3, ... for unit rows involving the pivot
cell therefore gives every cell's offset from the pivot.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automaton import build_matrix
from .matrix import Matrix
from .rules import Boundary, RuleVector

__all__ = ["PhaseShiftReport", "PhaseShiftError", "phase_shifts", "shift_sequence"]


class PhaseShiftError(ValueError):
    pass


@dataclass(frozen=True)
class PhaseShiftReport:
    """``shifts[i]`` = k means: cell i's sequence, advanced by k steps, is
    the pivot's sequence.  The pivot's own entry is the period 2^n - 1."""

    pivot: int
    shifts: tuple[int, ...]
    period: int

    def to_dict(self) -> dict:
        return {"pivot": self.pivot, "period": self.period, "shifts": list(self.shifts)}


def phase_shifts(rules: RuleVector, pivot: int = 0,
                 bc: Boundary | str = Boundary.NULL) -> PhaseShiftReport:
    """Shift of every cell against ``pivot`` for a maximal-length CA.

    For power k = 1, 2, ...: if the pivot row of T^k is e_j, cell j gets
    period - k; otherwise each unmarked row i that equals e_pivot gets k.
    Gives up after period powers, which only happens for non-maximal input.
    """
    n, q = len(rules), rules.q
    if not 0 <= pivot < n:
        raise ValueError(f"pivot {pivot} out of range for {n} cells")
    period = q**n - 1
    t = build_matrix(rules, bc)
    shifts: list[int | None] = [None] * n
    shifts[pivot] = period
    if q == 2:
        _scan_packed(t, pivot, period, shifts)
    else:
        _scan(t, pivot, period, shifts)
    return PhaseShiftReport(pivot, tuple(shifts), period)


def _give_up(period: int):
    raise PhaseShiftError(f"not all cells resolved after {period} powers; CA is not maximal")


def _scan(t: Matrix, pivot: int, period: int, shifts: list) -> None:
    n = t.n
    unmarked = n - 1
    m = t
    power = 1
    while unmarked:
        if power >= period:
            _give_up(period)
        j = m.row_is_unit(pivot)
        if j >= 0:
            if shifts[j] is None:
                shifts[j] = period - power
                unmarked -= 1
        else:
            for i in range(n):
                if shifts[i] is None and m.rows[i][pivot] == 1 and m.row_is_unit(i) == pivot:
                    shifts[i] = power
                    unmarked -= 1
        m = t @ m
        power += 1


def _scan_packed(t: Matrix, pivot: int, period: int, shifts: list) -> None:
    """The same scan on GF(2) row bitmasks (bit j = column j)."""
    n = t.n
    t_rows = [[j for j in range(n) if t.rows[i][j]] for i in range(n)]
    pbit = 1 << pivot
    m = list(t.masks())
    unmarked = n - 1
    power = 1
    while unmarked:
        if power >= period:
            _give_up(period)
        r = m[pivot]
        if r and r & (r - 1) == 0:
            j = r.bit_length() - 1
            if shifts[j] is None:
                shifts[j] = period - power
                unmarked -= 1
        else:
            for i in range(n):
                if shifts[i] is None and m[i] == pbit:
                    shifts[i] = power
                    unmarked -= 1
        nxt = []
        for cols in t_rows:
            v = 0
            for j in cols:
                v ^= m[j]
            nxt.append(v)
        m = nxt
        power += 1


def shift_sequence(seq: list[int] | tuple[int, ...], k: int) -> tuple[int, ...]:
    """Cyclic left shift by k places."""
    if not seq:
        return ()
    k %= len(seq)
    return tuple(seq[k:]) + tuple(seq[:k])
