"""Acceptance criteria 1-12, each under its time limit.

Every test records one PASS/FAIL line; the lines are also collected into an
"acceptance criteria" section at the end of the pytest run.
"""

import time

import numpy as np

from conftest import (
    ACCEPTANCE_LINES,
    NONLINEAR_ROWS,
    d_vectors,
    realizations_by_enumeration,
    rv,
    trial_irreducible_gf2,
)
from mlca.automaton import char_poly, evolve, subpolynomial
from mlca.complemented import complemented_cycle_structure
from mlca.generators import ca90p, random_search_gfq, walk90p, walk150p
from mlca.gfpoly import Poly, irreducibles, is_irreducible, is_primitive, parse_poly, poly_divmod
from mlca.maximality import cycle_structure, decide_maximal_exhaustive, decide_maximal_primitive, verify_nonlinear_replacement
from mlca.phaseshift import phase_shifts, shift_sequence
from mlca.prng import StreamSpec, monobit, stream_bits
from mlca.rules import RuleVector, parse_config
from mlca.synthesis import congruence_trace, synthesize

P = lambda s: parse_poly(s, 2)  # noqa: E731
GF3_CA = RuleVector.linear([(1, 2, 1), (2, 0, 1), (2, 0, 2)], 3)
FIVE = RuleVector.linear([(1, 1, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1), (1, 0, 1)])


def best_of(fn, repeat=20):
    """Smallest wall time of ``repeat`` calls, and the last result."""
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def report(capsys, k: int, ok: bool, elapsed: float, limit: float, what: str) -> None:
    passed = ok and elapsed < limit
    line = (f"criterion {k:2d}: {'PASS' if passed else 'FAIL'}  {elapsed:9.4f}s "
            f"(limit {limit:g}s)  {what}")
    ACCEPTANCE_LINES[k] = line
    with capsys.disabled():
        print("\n" + line)
    assert ok, what
    assert elapsed < limit, f"{elapsed:.4f}s exceeds {limit}s"


def test_criterion_01_example_polynomials(capsys):
    t1, a = best_of(lambda: char_poly(rv("90,150,90,150")))
    t2, b = best_of(lambda: char_poly(rv("150,150,90,150")))
    ok = a == P("x^4+x+1") and b == P("x^4+x^3+1")
    report(capsys, 1, ok, max(t1, t2), 1e-3, "char polys x^4+x+1 and x^4+x^3+1")


def test_criterion_02_example_verdicts(capsys):
    t1, a = best_of(lambda: decide_maximal_exhaustive(rv("150,150,90,150")))
    t2, b = best_of(lambda: decide_maximal_exhaustive(rv("150,90,90,90")))
    ok = a.maximal and a.cycle_length == 15 and not b.maximal
    report(capsys, 2, ok, max(t1, t2), 1e-3, "(150,150,90,150) maximal, cycle 15; (150,90,90,90) not")


def test_criterion_03_walk_primitivity_equivalence(capsys):
    t = time.perf_counter()
    disagreements, checked = 0, 0
    for n in range(2, 15):
        for r in d_vectors(n):
            walk = decide_maximal_exhaustive(r).maximal
            prim = is_primitive(char_poly(r))
            disagreements += walk != prim
            checked += 1
    elapsed = time.perf_counter() - t
    report(capsys, 3, disagreements == 0, elapsed, 120,
           f"{checked} vectors n=2..14, {disagreements} disagreements")


def test_criterion_04_synthesis_example(capsys):
    p = P("x^5+x^2+1")
    elapsed, res = best_of(lambda: synthesize(p))
    tr = congruence_trace(p)
    ok = (
        {res.rules, res.reversed} == {rv("150,150,150,150,90"), rv("90,150,150,150,150")}
        and tr.f == P("x^3+x^2+x+1")
        and tr.f_inv == P("x^3+x^2+1")
        and tr.g == P("x^4+x^3+x+1")
        and tr.beta == P("x^4+x")
        and tr.q == P("x^4+x^2+1")
    )
    report(capsys, 4, ok, elapsed, 1e-3, "x^5+x^2+1 -> two realizations, intermediates match")


def test_criterion_05_round_trip_exactly_two(capsys):
    t = time.perf_counter()
    ok, count = True, 0
    for n in range(2, 13):
        found = realizations_by_enumeration(n)
        irr = irreducibles(n, 2)
        ok &= [p.mask for p in irr] == [m for m in range(1 << n, 1 << (n + 1)) if trial_irreducible_gf2(m)]
        for p in irr:
            res = synthesize(p)
            hits = {RuleVector.from_d(d) for d in found.get(p.mask, [])}
            ok &= char_poly(res.rules) == p
            ok &= hits == {res.rules, res.reversed} and len(hits) == 2
            ok &= res.rules.reverse() == res.reversed
            count += 1
    elapsed = time.perf_counter() - t
    report(capsys, 5, bool(ok), elapsed, 300, f"{count} irreducibles of degree 2..12")


def test_criterion_06_phase_shifts(capsys):
    t = time.perf_counter()
    r = rv("150,150,90,150")
    rep = phase_shifts(r, 0)
    configs = list(evolve(r, parse_config("1000"), 15))
    seqs = [tuple(c[i] for c in configs) for i in range(4)]
    ok = rep.shifts[1:] == (3, 13, 10)
    ok &= all(shift_sequence(seqs[i], k) == seqs[0] for i, k in enumerate(rep.shifts))
    six = rv("150,90,90,90,90,90")
    fwd = phase_shifts(six, 0).shifts
    back = [phase_shifts(six, i).shifts[0] for i in range(1, 6)]
    ok &= all(a + b == 63 for a, b in zip(fwd[1:], back))
    ok &= sorted(fwd[1:]) == [16, 24, 28, 30, 31] and sorted(back) == [32, 33, 35, 39, 47]
    elapsed = time.perf_counter() - t
    report(capsys, 6, bool(ok), elapsed, 1, f"shifts {rep.shifts}, 6-cell pairs sum to 63")


def test_criterion_07_periodic_and_palindromic(capsys):
    t = time.perf_counter()
    ok = all(not is_irreducible(char_poly(r, "periodic")) for n in range(2, 11) for r in d_vectors(n))
    x = Poly.x(2)
    for n in range(2, 13):
        h = n // 2
        for d in range(1 << h):
            half = [(d >> i) & 1 for i in range(h)]
            for mid in ([] if n % 2 == 0 else [[0], [1]]):
                r = RuleVector.from_d(half + mid + half[::-1])
                p = char_poly(r)
                if n % 2 == 0:
                    s = subpolynomial(r, 0, h - 1) + subpolynomial(r, 0, h - 2)
                    ok &= p == s * s
                else:
                    quo, rem = poly_divmod(p, x + mid[0])
                    ok &= rem.degree < 0 and all(c == 0 for i, c in enumerate(quo.coeffs) if i % 2)
                ok &= not is_irreducible(p)
    elapsed = time.perf_counter() - t
    report(capsys, 7, bool(ok), elapsed, 30, "periodic n<=10 reducible; palindromic n<=12 square-shaped")


def test_criterion_08_walk_tables(capsys):
    t = time.perf_counter()
    t90 = {n for n in range(2, 31) if walk90p(n).covered_all}
    t150 = {n for n in range(2, 31) if walk150p(n).covered_all}
    walk_time = time.perf_counter() - t
    t = time.perf_counter()
    n18 = decide_maximal_primitive(ca90p(18)).maximal
    prim_time = time.perf_counter() - t
    ok = (t90 == {2, 3, 5, 6, 9, 11, 14, 18, 23, 26, 29, 30}
          and t150 == {2, 3, 5, 9, 11, 14, 23, 26, 29}
          and 18 in t90 and not n18)
    ok &= prim_time < 1
    report(capsys, 8, ok, walk_time, 1,
           f"walk coverage n<=30; n=18 caught by primitivity in {prim_time:.3f}s")


def test_criterion_09_complemented(capsys):
    t = time.perf_counter()
    v = decide_maximal_exhaustive(rv("165,105,90,150"))
    ok = v.maximal and any(v.marginal)
    ok &= cycle_structure(rv("165,105,90,150")).entries == ((1, 1), (15, 1))
    distinct = 0
    for f in range(1, 32):
        r = RuleVector.complemented(FIVE, [(f >> i) & 1 for i in range(5)])
        if str(complemented_cycle_structure(r)) == "[1(1),1(3),1(7),1(21)]" and \
                str(cycle_structure(r)) == "[1(1),1(3),1(7),1(21)]":
            distinct += 1
    ok &= distinct >= 8
    variants = 0
    for n in range(2, 7):
        for core in d_vectors(n):
            if not decide_maximal_exhaustive(core).maximal:
                continue
            for f in range(1, 1 << n):
                r = RuleVector.complemented(core, [(f >> i) & 1 for i in range(n)])
                ok &= decide_maximal_exhaustive(r).maximal
                variants += 1
    elapsed = time.perf_counter() - t
    report(capsys, 9, bool(ok), elapsed, 60,
           f"5-cell structure for {distinct} F; {variants} complemented variants n<=6 all maximal")


def test_criterion_10_gf3(capsys):
    t = time.perf_counter()
    p = char_poly(GF3_CA)
    ok = p == parse_poly("x^3+x^2+2*x+1", 3) and is_primitive(p)
    ok &= cycle_structure(GF3_CA).entries == ((1, 1), (26, 1))
    hit = random_search_gfq(3, 3, 1000, seed=2024)
    ok &= hit is not None and hit[1] <= 1000 and decide_maximal_exhaustive(hit[0]).maximal
    elapsed = time.perf_counter() - t
    report(capsys, 10, bool(ok), elapsed, 5, f"GF(3) example primitive, cycle 26; random hit on attempt {hit[1]}")


def test_criterion_11_nonlinear_rows(capsys):
    t = time.perf_counter()
    ok = True
    for n in range(4, 13):
        base, positions, rules = NONLINEAR_ROWS[n]
        ok &= verify_nonlinear_replacement(n, base, positions, rules).maximal
    elapsed = time.perf_counter() - t
    report(capsys, 11, bool(ok), elapsed, 120, "non-linear rows n=4..12 maximal by exhaustive walk")


def test_criterion_12_prng(capsys, four_cell_rows):
    t = time.perf_counter()
    r = rv("150,150,90,150")
    bits = stream_bits(StreamSpec(r, parse_config("1000"), 0), 15)
    ok = ["".join(map(str, bits[i : i + 4])) for i in range(0, 60, 4)] == four_cell_rows
    for n in (4, 8, 12, 16):
        rules = _first_maximal(n)
        period = 2**n - 1
        seed = parse_config("1" + "0" * (n - 1))
        out = np.array(stream_bits(StreamSpec(rules, seed, 0), 2 * period), dtype=np.uint8).reshape(-1, n)
        for site in range(n):
            seq = out[:, site]
            ok &= np.array_equal(seq[:period], seq[period:])
            ok &= monobit(seq[:period].tolist()) == (2 ** (n - 1), 2 ** (n - 1) - 1)
            ok &= _minimal_period(seq[:period]) == period
    elapsed = time.perf_counter() - t
    report(capsys, 12, bool(ok), elapsed, 30, "four-cell stream; period and balance for n=4,8,12,16")


def _first_maximal(n: int) -> RuleVector:
    for p in irreducibles(n, 2):
        if is_primitive(p):
            return synthesize(p).rules
    raise AssertionError(f"no primitive polynomial of degree {n}")


def _minimal_period(seq: np.ndarray) -> int:
    m = len(seq)
    for p in range(1, m + 1):
        if m % p == 0 and np.array_equal(np.roll(seq, -p), seq):
            return p
    return m
