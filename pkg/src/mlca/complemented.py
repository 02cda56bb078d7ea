"""Complemented CAs: c(t+1) = T c(t) + F over GF(2)."""

from __future__ import annotations

from typing import Iterable, Sequence

from .automaton import build_matrix, char_poly
from .maximality import DEFAULT_ENUM_BUDGET, CycleStructure, cycle_structure
from .matrix import Matrix, identity, matrix_power, matrix_rank, solve
from .rules import Boundary, Kind, RuleVector

__all__ = [
    "complementize",
    "accumulated_inversion",
    "cycle_exists",
    "has_unit_root",
    "complemented_cycle_structure",
    "marginal_fixed_point",
]


def complementize(rules: RuleVector, positions: Iterable[int]) -> RuleVector:
    """Replace 90 by 165 and 150 by 105 at ``positions``."""
    if rules.kind is not Kind.LINEAR_90_150:
        raise ValueError("complementize expects a 90/150 rule vector")
    pos = set(positions)
    if not pos:
        raise ValueError("no positions given; the CA would stay linear")
    n = len(rules)
    if any(not 0 <= p < n for p in pos):
        raise ValueError(f"positions must lie in 0..{n - 1}")
    return RuleVector.complemented(rules, [1 if i in pos else 0 for i in range(n)])


def accumulated_inversion(t: Matrix, f: Sequence[int], k: int) -> tuple[int, ...]:
    """(I + T + ... + T^(k-1)) F, accumulated as v <- T v + F."""
    if k < 1:
        raise ValueError("cycle length must be positive")
    v = tuple(int(b) % 2 for b in f)
    for _ in range(k - 1):
        v = tuple((a + b) % 2 for a, b in zip(t.apply(v), f))
    return v


def cycle_exists(t: Matrix, f: Sequence[int], k: int) -> bool:
    """Whether (T^k + I) x = (I + ... + T^(k-1)) F is solvable, i.e. some
    configuration returns to itself after k steps of x -> T x + F.

    The solutions include points on cycles whose length divides k.
    """
    if t.q != 2:
        raise ValueError("complemented CAs are binary")
    a = matrix_power(t, k) + identity(t.n)
    rhs = accumulated_inversion(t, f, k)
    augmented = [row + (b,) for row, b in zip(a.rows, rhs)]
    return matrix_rank(a) == matrix_rank(augmented, q=2)


def has_unit_root(rules: RuleVector, bc: Boundary | str = Boundary.NULL) -> bool:
    """Whether x + 1 divides the characteristic polynomial of the linear core."""
    return char_poly(rules.core, bc)(1) == 0


def complemented_cycle_structure(rules: RuleVector, bc: Boundary | str = Boundary.NULL,
                                 budget: int = DEFAULT_ENUM_BUDGET) -> CycleStructure:
    """Cycle structure of a complemented CA.

    Without a factor x + 1 in the core's characteristic polynomial the
    structure equals the linear core's, which is enumerated instead
    (provenance ``"linear-core"``); otherwise the complemented map itself is
    enumerated.
    """
    if rules.kind is not Kind.COMPLEMENTED:
        raise ValueError("expected a complemented rule vector")
    if not has_unit_root(rules, bc):
        cs = cycle_structure(rules.core, bc, budget)
        return CycleStructure(cs.entries, cs.transients, "linear-core")
    return cycle_structure(rules, bc, budget)


def marginal_fixed_point(rules: RuleVector, bc: Boundary | str = Boundary.NULL) -> tuple[int, ...] | None:
    """The unique fixed point, solving (T + I) x = F; None unless T + I is
    invertible."""
    if rules.inversion is None:
        f = (0,) * len(rules)
    else:
        f = rules.inversion
    t = build_matrix(rules, bc)
    a = t + identity(t.n)
    if matrix_rank(a) != t.n:
        return None
    return solve(a, f)
