"""Reversibility, maximality and cycle structure."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Sequence

import numpy as np

from .automaton import build_matrix, char_poly, int_stepper, step
from .gfpoly import is_primitive
from .matrix import det
from .rules import Boundary, Kind, RuleVector, config_to_int, int_to_config

__all__ = [
    "CycleStructure",
    "Method",
    "MaximalityVerdict",
    "WalkLimitExceeded",
    "EnumerationBudgetExceeded",
    "DEFAULT_WALK_LIMIT",
    "DEFAULT_ENUM_BUDGET",
    "is_reversible",
    "decide_maximal_exhaustive",
    "decide_maximal_primitive",
    "sweep_90_150",
    "successor_table",
    "cycle_structure",
    "verify_nonlinear_replacement",
]

DEFAULT_WALK_LIMIT = 2**28
DEFAULT_ENUM_BUDGET = 2**24
INJECTIVITY_LIMIT = 24


class WalkLimitExceeded(ValueError):
    pass


class EnumerationBudgetExceeded(ValueError):
    pass


class Method(enum.Enum):
    EXHAUSTIVE = "exhaustive"
    PRIMITIVITY = "primitivity"


@dataclass(frozen=True)
class CycleStructure:
    """Cycle lengths with multiplicities; ``transients`` counts configurations
    that lie on no cycle (always 0 for reversible CAs)."""

    entries: tuple[tuple[int, int], ...]  # (length, count), ascending length
    transients: int = 0
    provenance: str = dc_field(default="enumerated", compare=False)

    @classmethod
    def from_lengths(cls, lengths: Iterable[int], transients: int = 0,
                     provenance: str = "enumerated") -> "CycleStructure":
        return cls(tuple(sorted(Counter(lengths).items())), transients, provenance)

    @property
    def total(self) -> int:
        return sum(length * count for length, count in self.entries) + self.transients

    @property
    def longest(self) -> int:
        return max(length for length, _ in self.entries)

    def __str__(self):
        # count(length), as conventionally written
        return "[" + ",".join(f"{c}({l})" for l, c in self.entries) + "]"

    def to_dict(self) -> dict:
        return {
            "cycles": [{"length": l, "count": c} for l, c in self.entries],
            "transients": self.transients,
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class MaximalityVerdict:
    maximal: bool
    method: Method
    cycle_length: int | None = None
    marginal: tuple[int, ...] | None = None  # the configuration left off the long cycle
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "maximal": self.maximal,
            "method": self.method.value,
            "cycle_length": self.cycle_length,
            "marginal": None if self.marginal is None else "".join(map(str, self.marginal)),
            "reason": self.reason,
        }


# -- reversibility ------------------------------------------------------------


def is_reversible(rules: RuleVector, bc: Boundary | str = Boundary.NULL) -> bool:
    """Non-singular T for linear and complemented kinds; for non-linear rule
    vectors, brute-force injectivity of the global map (n <= 24)."""
    if rules.kind is Kind.GENERAL_BINARY:
        if len(rules) > INJECTIVITY_LIMIT:
            raise EnumerationBudgetExceeded(f"injectivity check limited to n <= {INJECTIVITY_LIMIT}")
        succ = successor_table(rules, bc, budget=2**INJECTIVITY_LIMIT)
        seen = np.zeros(succ.size, dtype=bool)
        seen[succ] = True
        return bool(seen.all())
    return det(build_matrix(rules, bc)) != 0


# -- maximality ---------------------------------------------------------------


def _packed_stepper(rules: RuleVector, bc: Boundary) -> Callable[[int], int]:
    if rules.q == 2:
        return int_stepper(rules, bc)
    n, q = len(rules), rules.q

    def step_q(v: int) -> int:
        return config_to_int(step(rules, int_to_config(v, n, q), bc), q)

    return step_q


def decide_maximal_exhaustive(rules: RuleVector, bc: Boundary | str = Boundary.NULL,
                              walk_limit: int = DEFAULT_WALK_LIMIT) -> MaximalityVerdict:
    """Decide maximality by walking the transition diagram.

    Linear CAs: reject singular T, then walk from 0...01 and compare the
    return time with q^n - 1.  Other kinds: walk from 0...01 (or from 0...0
    when 0...01 turns out to be fixed); the single left-over configuration is
    recovered from the sum of visited states and must be a fixed point.
    """
    bc = Boundary.parse(bc)
    n, q = len(rules), rules.q
    size = q**n
    target = size - 1
    if target > walk_limit:
        raise WalkLimitExceeded(f"{target} steps exceed walk limit {walk_limit}")
    ex = Method.EXHAUSTIVE
    f = _packed_stepper(rules, bc)
    seed = q ** (n - 1)  # cell n-1 set

    if rules.is_linear:
        if det(build_matrix(rules, bc)) == 0:
            return MaximalityVerdict(False, ex, None, None, "singular transition matrix")
        x, count = f(seed), 1
        while x != seed and count <= target:
            x = f(x)
            count += 1
        if count == target:
            return MaximalityVerdict(True, ex, count, (0,) * n)
        return MaximalityVerdict(False, ex, count, None, f"seed lies on a cycle of length {count}")

    for start in (seed, 0):
        x, count, total = f(start), 1, start
        while x != start and count <= target:
            total += x
            x = f(x)
            count += 1
        if x != start:
            return MaximalityVerdict(False, ex, None, None, "seed is not on a cycle")
        if count == 1 and start == seed:
            continue  # seed is itself the marginal candidate; try another
        if count != target:
            return MaximalityVerdict(False, ex, count, None, f"seed lies on a cycle of length {count}")
        left_over = size * (size - 1) // 2 - total
        if f(left_over) != left_over:
            return MaximalityVerdict(False, ex, count, None, "left-over configuration is not fixed")
        return MaximalityVerdict(True, ex, count, int_to_config(left_over, n, q))
    return MaximalityVerdict(False, ex, 1, None, "two fixed points")


def decide_maximal_primitive(rules: RuleVector, budget: int | None = None) -> MaximalityVerdict:
    """Maximal iff the null-boundary characteristic polynomial is primitive."""
    if not rules.is_linear:
        raise ValueError("the primitivity criterion needs a linear rule vector")
    p = char_poly(rules, Boundary.NULL)
    ok = is_primitive(p, budget)
    length = rules.q ** len(rules) - 1 if ok else None
    return MaximalityVerdict(ok, Method.PRIMITIVITY, length, (0,) * len(rules) if ok else None,
                             f"characteristic polynomial {p}")


def sweep_90_150(n: int) -> np.ndarray:
    """Return-time walk of every n-cell 90/150 null-boundary CA at once.

    Entry ``d`` (bit i = cell i runs rule 150) holds the number of steps for
    0...01 to come back to itself, or 0 if it does not within 2^n - 1 steps.
    A return time of exactly 2^n - 1 means maximal: a singular T sends some
    nonzero configuration to 0, so none of its cycles can be that long.
    This is the exhaustive walk, vectorised over rule vectors.
    """
    if not 1 <= n <= 30:
        raise ValueError("sweep supports 1 <= n <= 30")
    dtype = np.uint32
    full = dtype((1 << n) - 1)
    d = np.arange(1 << n, dtype=dtype)
    seed = dtype(1 << (n - 1))
    x = np.full(d.shape, seed, dtype=dtype)
    ret = np.zeros(d.shape, dtype=np.int64)
    live = np.ones(d.shape, dtype=bool)
    one = dtype(1)
    for count in range(1, (1 << n)):
        x = ((x << one) ^ (x >> one) ^ (x & d)) & full
        back = live & (x == seed)
        ret[back] = count
        live &= ~back
        if count & 63 == 0 and not live.any():
            break
    return ret


# -- enumeration --------------------------------------------------------------


def successor_table(rules: RuleVector, bc: Boundary | str = Boundary.NULL,
                    budget: int = DEFAULT_ENUM_BUDGET) -> np.ndarray:
    """succ[v] = packed successor of packed configuration v (base q, cell 0
    least significant)."""
    bc = Boundary.parse(bc)
    n, q = len(rules), rules.q
    size = q**n
    if size > budget:
        raise EnumerationBudgetExceeded(f"{q}^{n} configurations exceed budget {budget}")
    idx = np.arange(size, dtype=np.int64)
    if q == 2:
        cells = [(idx >> i) & 1 for i in range(n)]
    else:
        cells = [(idx // q**i) % q for i in range(n)]
    zero = np.zeros_like(idx)
    out = np.zeros_like(idx)
    if rules.kind is Kind.GENERAL_BINARY:
        if bc is not Boundary.NULL:
            raise ValueError("non-linear rule vectors are evaluated under null boundary only")
        for i, w in enumerate(rules.numbers):
            left = cells[i - 1] if i > 0 else zero
            right = cells[i + 1] if i < n - 1 else zero
            k = 4 * left + 2 * cells[i] + right
            out |= ((w >> k) & 1) << i
        return out
    t = build_matrix(rules, bc)
    for i in range(n):
        v = zero.copy()
        for j, c in enumerate(t.rows[i]):
            if c:
                v += c * cells[j]
        if rules.inversion is not None and rules.inversion[i]:
            v = 1 - v
        out += (v % q) * q**i
    return out


def _cycles_from_table(succ: np.ndarray) -> tuple[list[int], int]:
    size = succ.size
    rounds = max(1, int(size - 1).bit_length())
    # after 2^rounds >= size applications every point sits on its cycle
    h = succ.copy()
    for _ in range(rounds):
        h = h[h]
    cyclic = np.zeros(size, dtype=bool)
    cyclic[h] = True
    # pointer doubling of the orbit minimum labels every cycle by its least element
    label = np.arange(size, dtype=succ.dtype)
    h = succ.copy()
    for _ in range(rounds):
        label = np.minimum(label, label[h])
        h = h[h]
    reps, counts = np.unique(label[cyclic], return_counts=True)
    return [int(c) for c in counts], int(size - cyclic.sum())


def cycle_structure(rules: RuleVector, bc: Boundary | str = Boundary.NULL,
                    budget: int = DEFAULT_ENUM_BUDGET) -> CycleStructure:
    lengths, transients = _cycles_from_table(successor_table(rules, bc, budget))
    return CycleStructure.from_lengths(lengths, transients)


def verify_nonlinear_replacement(n: int, linear: RuleVector | Sequence[int], positions: Sequence[int],
                                 nonlinear_rules: Sequence[int],
                                 walk_limit: int = DEFAULT_WALK_LIMIT) -> MaximalityVerdict:
    """Put ``nonlinear_rules`` at ``positions`` (0-based) of the base vector
    and walk the result."""
    base = list(linear.numbers if isinstance(linear, RuleVector) else linear)
    if len(base) != n:
        raise ValueError(f"base vector has {len(base)} cells, expected {n}")
    if len(positions) != len(nonlinear_rules):
        raise ValueError("positions and rules differ in length")
    for p, w in zip(positions, nonlinear_rules):
        if not 0 <= p < n:
            raise ValueError(f"position {p} out of range")
        base[p] = w
    return decide_maximal_exhaustive(RuleVector.general(base), walk_limit=walk_limit)
