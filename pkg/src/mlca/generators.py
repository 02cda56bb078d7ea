"""Ways to find maximal-length CAs (and so primitive polynomials).

* ``walk90p`` / ``walk150p`` follow the single-1 configurations of the
  near-uniform CAs ``ca90p`` / ``ca150p`` using only index arithmetic;
  ``strategy`` turns those walks into cheap maximality guesses.
* ``minimal_cost_search`` looks for a maximal 90/150 vector with as few
  150 cells as possible.
* ``random_search_gfq`` samples linear rule vectors over GF(q).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .automaton import build_matrix, char_poly
from .gfpoly import is_primitive
from .matrix import matrix_power
from .rules import RuleVector

__all__ = [
    "PConfigWalk",
    "ca90p",
    "ca150p",
    "p_config",
    "walk90p",
    "walk150p",
    "strategy",
    "cost",
    "minimal_cost_search",
    "has_zero_coupling",
    "random_search_gfq",
]


def ca90p(n: int) -> RuleVector:
    """Rule 150 in cell 0, rule 90 everywhere else."""
    if n < 2:
        raise ValueError("need n >= 2")
    return RuleVector.from_d([1] + [0] * (n - 1))


def ca150p(n: int) -> RuleVector:
    """Rule 90 in cell 0, rule 150 everywhere else."""
    if n < 2:
        raise ValueError("need n >= 2")
    return RuleVector.from_d([0] + [1] * (n - 1))


def p_config(i: int, n: int) -> int:
    """Packed configuration p^i: the single 1 sits in cell n-1-i."""
    if not 0 <= i < n:
        raise ValueError(f"p-configuration index {i} out of range for {n} cells")
    return 1 << (n - 1 - i)


@dataclass(frozen=True)
class PConfigWalk:
    indices: tuple[int, ...]  # p-configuration indices in visiting order
    gaps: tuple[int, ...]  # steps between consecutive entries (last one closes the loop)
    covered_all: bool
    total: int
    closed: bool = True  # False when the walk broke off before returning to its start

    def to_dict(self) -> dict:
        return {
            "indices": list(self.indices),
            "gaps": list(self.gaps),
            "covered_all": self.covered_all,
            "total": self.total,
            "closed": self.closed,
        }


def _next_index(m: int, n: int) -> int:
    return 2 * m + 1 if 2 * m + 1 < n else 2 * (n - 1 - m)


def _orbit(start: int, n: int) -> list[int]:
    out = [start]
    m = _next_index(start, n)
    while m != start:
        out.append(m)
        m = _next_index(m, n)
    return out


def _check_hops(rules: RuleVector, hops: list[tuple[int, int, int]]) -> None:
    """Confirm T^gap p^src = p^dst for every hop by matrix powering."""
    n = len(rules)
    t = build_matrix(rules)
    for src, dst, exp in hops:
        col = matrix_power(t, 2**exp).apply([(p_config(src, n) >> j) & 1 for j in range(n)])
        got = sum(v << j for j, v in enumerate(col))
        if got != p_config(dst, n):
            raise AssertionError(f"p^{src} does not reach p^{dst} in 2^{exp} steps")


def walk90p(n: int, verify: bool = False) -> PConfigWalk:
    """p-configurations met by ``ca90p(n)`` starting from p^0.

    p^{m_i} reaches p^{m_{i+1}} after 2^i steps, where m_0 = 0 and
    m_{i+1} = 2 m_i + 1, folded to 2(n-1-m_i) when that overflows.  When all
    n indices turn up before the walk closes, the CA is maximal.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    idx = _orbit(0, n)
    gaps = tuple(2**i for i in range(len(idx)))
    if verify:
        hops = [(idx[i], idx[(i + 1) % len(idx)], i) for i in range(len(idx))]
        _check_hops(ca90p(n), hops)
    return PConfigWalk(tuple(idx), gaps, len(idx) == n, sum(gaps))


def walk150p(n: int, verify: bool = False) -> PConfigWalk:
    """p-configurations met by ``ca150p(n)`` starting from p^{n-1}.

    With m and o the index orbits from n-1 and n-2, p^{m_i} reaches p^{o_i}
    after 2^i steps; chaining these hops from p^{n-1} gives the walk.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    ms = _orbit(n - 1, n)
    os_ = []
    o = n - 2
    for _ in ms:
        os_.append(o)
        o = _next_index(o, n)
    where = {m: i for i, m in enumerate(ms)}
    start = c = n - 1
    indices, exps = [], []
    closed = False
    while len(indices) <= n:
        indices.append(c)
        i = where.get(c)
        if i is None:
            break
        exps.append(i)
        c = os_[i]
        if c == start:
            closed = True
            break
    if verify and exps:
        hops = [(ms[i], os_[i], i) for i in exps]
        _check_hops(ca150p(n), hops)
    gaps = tuple(2**i for i in exps)
    total = sum(gaps)
    covered = closed and len(set(indices)) == n == len(indices) and total == 2**n - 1
    return PConfigWalk(tuple(indices), gaps, covered, total, closed)


def strategy(n: int, which: int) -> RuleVector | None:
    """Cheap maximality guesses.

    1: ``ca90p(n)`` if its walk covers everything and n is odd.
    2: ``ca150p(n)`` likewise.
    3: ``ca90p(n)`` if both walks cover everything.
    The guesses are not proofs; confirm with a primitivity test.
    """
    if which == 1:
        return ca90p(n) if n % 2 and walk90p(n).covered_all else None
    if which == 2:
        return ca150p(n) if n % 2 and walk150p(n).covered_all else None
    if which == 3:
        return ca90p(n) if walk90p(n).covered_all and walk150p(n).covered_all else None
    raise ValueError(f"unknown strategy {which}; expected 1, 2 or 3")


# -- minimal cost --------------------------------------------------------------


def cost(rules: RuleVector) -> int:
    """Hardware cost: XOR inputs, i.e. nonzero entries of the null-boundary T."""
    return sum(1 for row in build_matrix(rules).rows for v in row if v)


def _vectors_with_k_150s(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All 0/1 tuples of length n with k ones, in lexicographic order."""
    if k == 0:
        yield (0,) * n
        return
    v = (1 << k) - 1
    limit = 1 << n
    while v < limit:
        # bit r of v stands for cell n-1-r, so ascending v is lexicographic
        yield tuple((v >> (n - 1 - i)) & 1 for i in range(n))
        c = v & -v
        r = v + c
        v = (((r ^ v) >> 2) // c) | r


def minimal_cost_search(n: int, max_150s: int | None = None,
                        budget: int | None = None) -> RuleVector | None:
    """First maximal 90/150 vector by (number of 150 cells, lexicographic
    order with 90 before 150)."""
    if n < 2:
        raise ValueError("need n >= 2")
    top = n if max_150s is None else min(max_150s, n)
    for k in range(top + 1):
        for d in _vectors_with_k_150s(n, k):
            rules = RuleVector.from_d(d)
            if is_primitive(char_poly(rules), budget):
                return rules
    return None


# -- random search over GF(q) ---------------------------------------------------


def has_zero_coupling(rules: RuleVector) -> bool:
    """Some cell ignores a neighbour that exists under null boundary, which
    makes the characteristic polynomial reducible."""
    t = rules.triples
    return any(t[i][0] == 0 for i in range(1, len(t))) or any(t[i][2] == 0 for i in range(len(t) - 1))


def random_search_gfq(n: int, q: int, budget: int, seed: int,
                      nonzero_couplings: bool = True,
                      factor_budget: int | None = None) -> tuple[RuleVector, int] | None:
    """Draw random linear rule vectors until one has a primitive polynomial.

    Returns the hit and the 1-based attempt on which it was found, or None
    once ``budget`` attempts are spent.  With ``nonzero_couplings`` the
    neighbour weights a_i, b_i are drawn from the nonzero elements; otherwise
    candidates with a zero coupling are drawn and discarded unevaluated.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    rng = random.Random(seed)
    low = 1 if nonzero_couplings else 0
    for attempt in range(1, budget + 1):
        triples = [(rng.randrange(low, q), rng.randrange(q), rng.randrange(low, q)) for _ in range(n)]
        rules = RuleVector.linear(triples, q)
        if has_zero_coupling(rules):
            continue
        if is_primitive(char_poly(rules), factor_budget):
            return rules, attempt
    return None
