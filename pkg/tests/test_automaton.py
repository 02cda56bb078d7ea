import random

import pytest

from mlca.automaton import (
    build_matrix,
    char_poly,
    conjugate,
    evolve,
    intermediate_counterpart,
    int_stepper,
    is_palindromic,
    step,
    subpolynomial,
    subpolynomial_pair,
)
from mlca.gfpoly import Poly, is_irreducible, parse_poly, poly_derivative, poly_divmod
from mlca.matrix import det, identity, matrix_power
from mlca.rules import Boundary, RuleVector, config_to_int, int_to_config, parse_config, parse_rules

from conftest import d_vectors, laplace_charpoly, rv

P = parse_poly
GF3_CA = RuleVector.linear([(1, 2, 1), (2, 0, 1), (2, 0, 2)], 3)


# -- matrices ---------------------------------------------------------------------


def test_null_boundary_matrix():
    t = build_matrix(rv("90,150,90,150,150"))
    assert t.rows == (
        (0, 1, 0, 0, 0),
        (1, 1, 1, 0, 0),
        (0, 1, 0, 1, 0),
        (0, 0, 1, 1, 1),
        (0, 0, 0, 1, 1),
    )


def test_periodic_boundary_matrix():
    t = build_matrix(rv("90,150,90,150,150"), "periodic")
    null = build_matrix(rv("90,150,90,150,150"))
    assert t[0, 4] == 1 and t[4, 0] == 1
    diff = [(i, j) for i in range(5) for j in range(5) if t[i, j] != null[i, j]]
    assert diff == [(0, 4), (4, 0)]


def test_intermediate_boundary_matrix():
    t = build_matrix(rv("90,150,90,150,150"), "intermediate")
    null = build_matrix(rv("90,150,90,150,150"))
    diff = [(i, j) for i in range(5) for j in range(5) if t[i, j] != null[i, j]]
    assert diff == [(0, 2), (4, 2)]


def test_intermediate_needs_three_cells():
    with pytest.raises(ValueError):
        build_matrix(rv("90,150"), Boundary.INTERMEDIATE)


def test_nonlinear_has_no_matrix():
    with pytest.raises(ValueError):
        build_matrix(rv("90,86,90"))


def test_matrix_powers_of_four_cell_ca():
    t = build_matrix(rv("150,150,90,150"))
    assert matrix_power(t, 2).rows[0] == (0, 0, 1, 0)
    assert matrix_power(t, 3).rows[1] == (1, 0, 0, 0)
    assert matrix_power(t, 5).rows[0] == (0, 0, 0, 1)
    assert matrix_power(t, 0) == identity(4)
    assert matrix_power(t, 15) == identity(4)


def test_determinants():
    assert det(build_matrix(rv("150,150,90,150"))) == 1
    assert det(build_matrix(rv("90,90"))) == 1
    assert det(build_matrix(rv("90"))) == 0


# -- evolution --------------------------------------------------------------------


def test_step_examples(four_cell_rows):
    r = rv("150,150,90,150")
    assert step(r, parse_config("1000")) == parse_config("1100")
    got = ["".join(map(str, c)) for c in evolve(r, parse_config("1000"), 15)]
    assert got == four_cell_rows
    assert step(r, (0, 0, 0, 0)) == (0, 0, 0, 0)


def test_gf3_single_long_cycle():
    x = start = (1, 0, 0)
    seen = []
    while True:
        seen.append(x)
        x = step(GF3_CA, x)
        if x == start:
            break
    assert len(seen) == 26 and len(set(seen)) == 26 and (0, 0, 0) not in seen


def test_general_rule_step_null_boundary():
    # rule 86 at the middle: 86 = 01010110 -> (l,s,r)=(1,0,0) gives 1
    r = rv("204,86,204")
    assert step(r, (1, 0, 0)) == (1, 1, 0)
    with pytest.raises(ValueError):
        step(r, (1, 0, 0), "periodic")


@pytest.mark.parametrize("q", [2, 3, 5])
def test_step_is_matrix_product(q):
    rng = random.Random(q)
    for _ in range(3400):
        n = rng.randint(1, 9)
        bc = rng.choice(["null", "periodic"] + (["intermediate"] if n >= 3 else []))
        rules = RuleVector.linear([[rng.randrange(q) for _ in range(3)] for _ in range(n)], q)
        x = tuple(rng.randrange(q) for _ in range(n))
        f = None
        if q == 2 and rng.random() < 0.5:
            f = tuple(rng.randrange(2) for _ in range(n))
            if any(f):
                rules = RuleVector.complemented(rules, f)
            else:
                f = None
        want = build_matrix(rules, bc).apply(x)
        if f:
            want = tuple((a + b) % 2 for a, b in zip(want, f))
        assert step(rules, x, bc) == want


def test_packed_stepper_matches_tuple_step():
    rng = random.Random(11)
    for _ in range(500):
        n = rng.randint(1, 12)
        kind = rng.randrange(3)
        if kind == 0:
            rules = RuleVector.from_numbers(rng.choice([90, 150, 165, 105]) for _ in range(n))
        elif kind == 1:
            rules = RuleVector.linear([[rng.randrange(2) for _ in range(3)] for _ in range(n)])
        else:
            rules = RuleVector.general(rng.randrange(256) for _ in range(n))
        bcs = ["null"] if kind == 2 else ["null", "periodic"] + (["intermediate"] if n >= 3 else [])
        for bc in bcs:
            f = int_stepper(rules, bc)
            x = rng.randrange(1 << n)
            assert int_to_config(f(x), n) == step(rules, int_to_config(x, n), bc)


# -- characteristic polynomials ------------------------------------------------------


def test_charpoly_examples():
    assert char_poly(rv("90,150,90,150")) == P("x^4+x+1")
    assert char_poly(rv("150,150,90,150")) == P("x^4+x^3+1")
    assert char_poly(rv("150,90,90,90")) == P("x^4+x^3+x^2+1")
    assert char_poly(GF3_CA) == parse_poly("x^3+x^2+2*x+1", 3)


def test_null_recurrence_matches_cofactor_expansion():
    for n in range(1, 9):
        for r in d_vectors(n):
            assert char_poly(r) == laplace_charpoly(build_matrix(r).rows, 2)


@pytest.mark.parametrize("bc", ["periodic", "intermediate"])
def test_other_boundaries_match_cofactor_expansion(bc):
    for n in range(3, 8):
        for r in d_vectors(n):
            assert char_poly(r, bc) == laplace_charpoly(build_matrix(r, bc).rows, 2)


def test_gfq_charpoly_matches_cofactor_expansion():
    rng = random.Random(3)
    for _ in range(300):
        q = rng.choice([3, 5, 7])
        n = rng.randint(1, 6)
        bc = rng.choice(["null", "periodic"] + (["intermediate"] if n >= 3 else []))
        r = RuleVector.linear([[rng.randrange(q) for _ in range(3)] for _ in range(n)], q)
        assert char_poly(r, bc) == laplace_charpoly(build_matrix(r, bc).rows, q)


def test_subpolynomials():
    r = rv("90,150,150,90,90")
    assert subpolynomial(r, 0, 4) == P("x^5+x^3+1")
    assert subpolynomial(r, 0, 3) == P("x^4+1")
    s = rv("90,90,150,150,90")
    assert subpolynomial(s, 0, 3) == P("x^4+x")
    assert subpolynomial(s, 1, 4) == P("x^4+1")
    assert subpolynomial(r, 0, -1) == P("1")
    assert subpolynomial(r, 0, -2).is_zero()
    assert subpolynomial_pair(r) == (P("x^5+x^3+1"), P("x^4+1"))
    with pytest.raises(ValueError):
        subpolynomial(r, 0, 5)


def _concatenation_holds(r, k):
    n = len(r)
    full = subpolynomial(r, 0, n - 1)
    return full == subpolynomial(r, 0, k - 1) * subpolynomial(r, k, n - 1) + \
        subpolynomial(r, 0, k - 2) * subpolynomial(r, k + 1, n - 1)


def test_concatenation_identity():
    assert _concatenation_holds(rv("90,150,90,150"), 2)
    rng = random.Random(8)
    for n in range(2, 11):
        for _ in range(60):
            r = RuleVector.from_d(rng.randrange(2) for _ in range(n))
            for k in range(1, n):
                assert _concatenation_holds(r, k)


def test_reversal_invariance():
    for n in range(1, 11):
        for r in d_vectors(n):
            assert char_poly(r.reverse()) == char_poly(r)


def test_conjugates():
    assert conjugate(rv("90,90,90,150,150")) == rv("150,150,150,90,90")
    r = rv("90,150,150,90")
    assert conjugate(conjugate(r)) == r
    assert conjugate(rv("90,90,90")) == rv("150,150,150")
    with pytest.raises(ValueError):
        conjugate(rv("90,165"))


def test_conjugate_preserves_irreducibility():
    for n in range(1, 13):
        for r in d_vectors(n):
            assert is_irreducible(char_poly(r)) == is_irreducible(char_poly(conjugate(r)))


def test_palindromes():
    assert is_palindromic(rv("150,90,150,90,150"))
    assert not is_palindromic(rv("90,150,90,150"))
    assert is_palindromic(rv("105"))


def _is_square(p: Poly) -> bool:
    return poly_derivative(p).is_zero()


def test_palindromic_polynomials_factor():
    for n in range(2, 13):
        for r in d_vectors(n):
            if not is_palindromic(r):
                continue
            p = char_poly(r)
            assert not is_irreducible(p)
            if n % 2 == 0:
                assert _is_square(p)
            else:
                mid = r.d_bits[n // 2]
                quo, rem = poly_divmod(p, Poly([mid, 1]))
                assert rem.is_zero() and _is_square(quo)


def test_uniform_vectors_reducible():
    for n in range(2, 13):
        assert not is_irreducible(char_poly(RuleVector.from_d([0] * n)))
        assert not is_irreducible(char_poly(RuleVector.from_d([1] * n)))
    assert char_poly(RuleVector.from_d([0] * 8)) == P("x^8+x^6+x^4+1")


def test_intermediate_counterpart_keeps_polynomial():
    for n in range(4, 11):
        for r in d_vectors(n):
            assert char_poly(intermediate_counterpart(r), "intermediate") == char_poly(r)


def test_intermediate_counterpart_shape():
    r = intermediate_counterpart(rv("90,150,90,150,150"))
    # end cells: a = dependency two cells inward, b = d0 + d1 on the inner neighbour
    assert r.triples[0] == (1, 1, 1)
    assert r.triples[-1] == (0, 0, 1)
    assert r.triples[1:-1] == ((1, 0, 1), (1, 0, 1), (1, 0, 1))


def test_strict_90_150_intermediate_search_is_not_enough():
    # x^4+x^3+1 comes from the null CA (150,90,150,150) but from no 4-cell
    # intermediate 90/150 vector; the counterpart needs a zero end coupling
    inter = {char_poly(r, "intermediate") for r in d_vectors(4)}
    null = {char_poly(r) for r in d_vectors(4)}
    missing = null - inter
    assert parse_poly("x^4+x^3+1", 2) in missing
    for p in missing:
        hits = [r for r in d_vectors(4) if char_poly(r) == p]
        assert all(char_poly(intermediate_counterpart(h), "intermediate") == p for h in hits)
