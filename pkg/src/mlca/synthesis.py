"""Build 90/150 CAs from an irreducible GF(2) polynomial.

A 90/150 vector with characteristic polynomial p has its cells 0..n-2
polynomial q among the roots of

    y^2 + (x^2 + x) p' y + 1 == 0   (mod p),

and Euclid's algorithm on (p, q) yields the quotients x + d_{n-1}, ...,
x + d_0 that spell out the rule vector.  The root is found in closed form
with a trace-one element, so no search is involved.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automaton import char_poly
from .gfpoly import (
    Poly,
    find_trace_one,
    is_irreducible,
    poly_derivative,
    poly_divmod,
    poly_inverse_mod,
)
from .rules import RuleVector

__all__ = [
    "NotAPairError",
    "CongruenceTrace",
    "SynthesisResult",
    "congruence_residual",
    "solve_quadratic_congruence",
    "congruence_trace",
    "ca_from_pair",
    "synthesize",
]

_X = Poly.x(2)
_X2X = Poly.from_mask(0b110)  # x^2 + x


class NotAPairError(ValueError):
    """(p, q) is not the polynomial/subpolynomial pair of any 90/150 CA."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


def _require_gf2(*polys: Poly) -> None:
    if any(p.q != 2 for p in polys):
        raise ValueError("synthesis works over GF(2) only")


def congruence_residual(p: Poly, y: Poly) -> Poly:
    """(y^2 + (x^2+x) p' y + 1) mod p; zero exactly for solutions."""
    _require_gf2(p, y)
    return (y * y + _X2X * poly_derivative(p) * y + 1) % p


@dataclass(frozen=True)
class CongruenceTrace:
    """Intermediate values of the closed-form root, for inspection."""

    f: Poly
    f_inv: Poly
    g: Poly
    theta: Poly
    beta: Poly
    q: Poly


def congruence_trace(p: Poly) -> CongruenceTrace:
    """Solve the quadratic congruence for irreducible p and keep the steps.

    With f = (x^2+x) p' and g = f^-2, the substitution y = f z turns the
    congruence into z^2 + z = g, solved by
    beta = sum_{i=1}^{n-1} (sum_{j<i} g^(2^j)) theta^(2^i) for any theta of
    trace one.
    """
    _require_gf2(p)
    n = p.degree
    if n < 1:
        raise ValueError("polynomial must have degree >= 1")
    one = Poly.const(1)
    if n == 1:
        # the single cell's subpolynomial is the constant 1
        return CongruenceTrace(one, one, one, one, Poly(), one)
    f = (_X2X * poly_derivative(p)) % p
    if f.is_zero():
        raise ValueError(f"(x^2+x)p' vanishes modulo {p}; p is not irreducible")
    f_inv = poly_inverse_mod(f, p)
    g = (f_inv * f_inv) % p
    theta = one if n % 2 else find_trace_one(p)
    beta = Poly()
    partial = Poly()  # g + g^2 + ... + g^(2^(i-1))
    g_pow = g  # g^(2^(i-1))
    t_pow = theta
    for _ in range(1, n):
        partial = partial + g_pow
        g_pow = (g_pow * g_pow) % p
        t_pow = (t_pow * t_pow) % p
        beta = (beta + partial * t_pow) % p
    return CongruenceTrace(f, f_inv, g, theta, beta, (beta * f) % p)


def solve_quadratic_congruence(p: Poly) -> Poly:
    return congruence_trace(p).q


def ca_from_pair(p: Poly, q: Poly) -> RuleVector:
    """Read the rule vector off the Euclid quotients of (p, q).

    The k-th division must give quotient x + d_{n-1-k}; anything else raises
    :class:`NotAPairError` naming the offending division.
    """
    _require_gf2(p, q)
    n = p.degree
    if n < 1 or q.degree != n - 1:
        raise NotAPairError(f"degrees {p.degree} and {q.degree} do not differ by one")
    ds = []
    a, b = p, q
    for k in range(n):
        if b.is_zero():
            raise NotAPairError(f"remainder chain ended after {k} divisions; gcd is {a}", k)
        quo, rem = poly_divmod(a, b)
        if quo.degree != 1 or quo.lead != 1:
            raise NotAPairError(f"division {k} gave quotient {quo}, not x or x+1", k)
        ds.append(quo.constant_term())
        a, b = b, rem
    if not (a.is_one() and b.is_zero()):
        raise NotAPairError(f"remainder chain ends in {a}, {b} instead of 1, 0", n)
    return RuleVector.from_d(reversed(ds))


@dataclass(frozen=True)
class SynthesisResult:
    rules: RuleVector
    reversed: RuleVector
    subpoly: Poly

    @property
    def realizations(self) -> tuple[RuleVector, RuleVector]:
        return self.rules, self.reversed


def synthesize(p: Poly) -> SynthesisResult:
    """Both 90/150 CAs with characteristic polynomial p (irreducible)."""
    _require_gf2(p)
    if p.degree < 1 or not is_irreducible(p):
        raise ValueError(f"{p} is not irreducible over GF(2)")
    q = solve_quadratic_congruence(p)
    rules = ca_from_pair(p, q)
    if char_poly(rules) != p:
        raise AssertionError(f"synthesized {rules} does not realize {p}")
    return SynthesisResult(rules, rules.reverse(), q)
