"""Transition matrices, evolution and characteristic polynomials."""

from __future__ import annotations

from typing import Callable, Iterator, Sequence

from .gfpoly import Poly
from .matrix import Matrix, charpoly_hessenberg
from .rules import Boundary, Kind, RuleVector

__all__ = [
    "build_matrix",
    "step",
    "evolve",
    "int_stepper",
    "char_poly",
    "subpolynomial",
    "subpolynomial_pair",
    "conjugate",
    "is_palindromic",
    "intermediate_counterpart",
]


def _require_linear_core(rules: RuleVector) -> RuleVector:
    if rules.kind is Kind.GENERAL_BINARY:
        raise ValueError("non-linear rule vectors have no transition matrix")
    return rules.core


def build_matrix(rules: RuleVector, bc: Boundary | str = Boundary.NULL) -> Matrix:
    """Matrix T with c(t+1) = T c(t) (+F) for the linear part of ``rules``.

    Row i holds a_i at column i-1, d_i at i and b_i at i+1.  Periodic
    boundaries wrap the end neighbours around; intermediate boundaries take
    them from two cells inward.
    """
    bc = Boundary.parse(bc)
    core = _require_linear_core(rules)
    n, q = len(core), core.q
    if bc is Boundary.INTERMEDIATE and n < 3:
        raise ValueError("intermediate boundary needs at least 3 cells")
    t = [[0] * n for _ in range(n)]
    for i, (a, d, b) in enumerate(core.triples):
        t[i][i] += d
        left, right = i - 1, i + 1
        if bc is Boundary.PERIODIC:
            left %= n
            right %= n
        elif bc is Boundary.INTERMEDIATE:
            left = 2 if i == 0 else left
            right = n - 3 if i == n - 1 else right
        if 0 <= left < n:
            t[i][left] += a
        if 0 <= right < n:
            t[i][right] += b
    return Matrix.from_rows(t, q)


def _neighbours(n: int, i: int, bc: Boundary) -> tuple[int | None, int | None]:
    left, right = i - 1, i + 1
    if bc is Boundary.PERIODIC:
        return left % n, right % n
    if bc is Boundary.INTERMEDIATE:
        if i == 0:
            left = 2
        if i == n - 1:
            right = n - 3
    return (left if left >= 0 else None), (right if right < n else None)


def step(rules: RuleVector, x: Sequence[int], bc: Boundary | str = Boundary.NULL) -> tuple[int, ...]:
    """One synchronous update, evaluated cell by cell from the local rules."""
    bc = Boundary.parse(bc)
    n = len(rules)
    if len(x) != n:
        raise ValueError(f"configuration has {len(x)} cells, rule vector has {n}")
    if rules.kind is Kind.GENERAL_BINARY:
        if bc is not Boundary.NULL:
            raise ValueError("non-linear rule vectors are evaluated under null boundary only")
        tables = rules.tables()
        out = []
        for i in range(n):
            left = x[i - 1] if i > 0 else 0
            right = x[i + 1] if i < n - 1 else 0
            out.append(tables[i][4 * left + 2 * x[i] + right])
        return tuple(out)
    if bc is Boundary.INTERMEDIATE and n < 3:
        raise ValueError("intermediate boundary needs at least 3 cells")
    q = rules.q
    out = []
    for i, (a, d, b) in enumerate(rules.triples):
        li, ri = _neighbours(n, i, bc)
        v = d * x[i]
        if li is not None:
            v += a * x[li]
        if ri is not None:
            v += b * x[ri]
        if rules.inversion is not None and rules.inversion[i]:
            v = 1 - v
        out.append(v % q)
    return tuple(out)


def evolve(rules: RuleVector, x: Sequence[int], steps: int,
           bc: Boundary | str = Boundary.NULL) -> Iterator[tuple[int, ...]]:
    """Yield x, then its successors: ``steps`` configurations in total."""
    x = tuple(x)
    for _ in range(steps):
        yield x
        x = step(rules, x, bc)


def int_stepper(rules: RuleVector, bc: Boundary | str = Boundary.NULL) -> Callable[[int], int]:
    """Successor function on packed GF(2) configurations (bit i = cell i)."""
    bc = Boundary.parse(bc)
    if rules.q != 2:
        raise ValueError("packed stepping is GF(2) only")
    n = len(rules)
    full = (1 << n) - 1
    if rules.kind is Kind.GENERAL_BINARY:
        if bc is not Boundary.NULL:
            raise ValueError("non-linear rule vectors are evaluated under null boundary only")
        # Wolfram tables indexed per cell; a cell's next state is bit k of w
        nums = rules.numbers

        def step_general(x: int) -> int:
            nb = (x << 1) & full, x, x >> 1  # left, self, right aligned at bit i
            y = 0
            for i, w in enumerate(nums):
                k = (((nb[0] >> i) & 1) << 2) | (((nb[1] >> i) & 1) << 1) | ((nb[2] >> i) & 1)
                y |= ((w >> k) & 1) << i
            return y

        return step_general

    fmask = 0
    if rules.inversion is not None:
        fmask = sum(1 << i for i, f in enumerate(rules.inversion) if f)
    if bc is Boundary.NULL and all(a == 1 and b == 1 for a, _, b in rules.triples):
        dmask = sum(1 << i for i, (_, d, _) in enumerate(rules.triples) if d)

        def step_90_150(x: int) -> int:
            return (((x << 1) ^ (x >> 1) ^ (x & dmask)) & full) ^ fmask

        return step_90_150

    # general linear: XOR of the columns of T selected by x
    t = build_matrix(rules, bc)
    cols = [sum(t.rows[i][j] << i for i in range(n)) for j in range(n)]

    def step_linear(x: int) -> int:
        y = fmask
        j = 0
        while x:
            if x & 1:
                y ^= cols[j]
            x >>= 1
            j += 1
        return y

    return step_linear


# -- characteristic polynomials ----------------------------------------------


def _null_charpoly(triples: Sequence[tuple[int, int, int]], q: int) -> Poly:
    """det(xI - T) for a tridiagonal T, by the three-term recurrence

    D_k = (x - d_k) D_{k-1} - a_k b_{k-1} D_{k-2}.
    """
    if q == 2:
        prev, cur = 0, 1
        for k, (a, d, _) in enumerate(triples):
            nxt = (cur << 1) ^ (cur if d else 0)
            if k and a and triples[k - 1][2]:
                nxt ^= prev
            prev, cur = cur, nxt
        return Poly.from_mask(cur)
    x = Poly.x(q)
    prev, cur = Poly([], q), Poly([1], q)
    for k, (a, d, _) in enumerate(triples):
        nxt = (x - d) * cur
        if k:
            nxt = nxt - Poly([a * triples[k - 1][2]], q) * prev
        prev, cur = cur, nxt
    return cur


def char_poly(rules: RuleVector, bc: Boundary | str = Boundary.NULL) -> Poly:
    """Characteristic polynomial det(xI - T); monic of degree n.

    Over GF(2) this is the same as det(xI + T).
    """
    bc = Boundary.parse(bc)
    core = _require_linear_core(rules)
    if bc is Boundary.NULL:
        return _null_charpoly(core.triples, core.q)
    return charpoly_hessenberg(build_matrix(core, bc))


def subpolynomial(rules: RuleVector, i: int, j: int) -> Poly:
    """Null-boundary characteristic polynomial of cells i..j.

    An empty range (j == i - 1) gives 1, and j == i - 2 gives 0, matching the
    recurrence's initial values.
    """
    core = _require_linear_core(rules)
    n = len(core)
    if not 0 <= i <= n or j >= n or j < i - 2:
        raise ValueError(f"bad cell range {i}..{j} for {n} cells")
    if j == i - 2:
        return Poly([], core.q)
    return _null_charpoly(core.triples[i : j + 1], core.q)


def subpolynomial_pair(rules: RuleVector) -> tuple[Poly, Poly]:
    """(cells 0..n-1, cells 0..n-2)."""
    n = len(rules)
    return subpolynomial(rules, 0, n - 1), subpolynomial(rules, 0, n - 2)


def conjugate(rules: RuleVector) -> RuleVector:
    """Swap rules 90 and 150 in every cell."""
    if rules.kind is not Kind.LINEAR_90_150:
        raise ValueError("conjugation is defined for 90/150 rule vectors")
    return RuleVector.from_d(1 - d for d in rules.d_bits)


def is_palindromic(rules: RuleVector) -> bool:
    return rules.reverse() == rules


def intermediate_counterpart(rules: RuleVector) -> RuleVector:
    """Intermediate-boundary CA with the same characteristic polynomial as a
    null-boundary 90/150 CA (n >= 4).

    Conjugating T by E = (row 0 += row 1)(row n-1 += row n-2) keeps the
    tridiagonal band and moves the end couplings two cells inward.  The end
    cells weigh their inner neighbour by d_0 + d_1 (resp. d_{n-2} + d_{n-1}),
    so the result is a general linear vector, not always 90/150.
    """
    if rules.kind is not Kind.LINEAR_90_150:
        raise ValueError("expected a 90/150 rule vector")
    n = len(rules)
    if n < 4:
        raise ValueError("the construction needs at least 4 cells")
    t = [list(r) for r in build_matrix(rules).rows]
    # E T: row 0 += row 1, row n-1 += row n-2
    t[0] = [(a + b) % 2 for a, b in zip(t[0], t[1])]
    t[n - 1] = [(a + b) % 2 for a, b in zip(t[n - 1], t[n - 2])]
    # (E T) E^-1, E^-1 = E over GF(2): col 1 += col 0, col n-2 += col n-1
    for row in t:
        row[1] = (row[1] + row[0]) % 2
        row[n - 2] = (row[n - 2] + row[n - 1]) % 2
    triples = [(t[0][2], t[0][0], t[0][1])]
    triples += [(t[i][i - 1], t[i][i], t[i][i + 1]) for i in range(1, n - 1)]
    triples.append((t[n - 1][n - 2], t[n - 1][n - 1], t[n - 1][n - 3]))
    out = RuleVector.linear(triples, 2)
    if build_matrix(out, Boundary.INTERMEDIATE).rows != tuple(map(tuple, t)):
        raise AssertionError("conjugated matrix left the intermediate-boundary template")
    return out
