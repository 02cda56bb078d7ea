"""Polynomial arithmetic over prime fields GF(q).

Polynomials are immutable.  Coefficients are stored little-endian
(``coeffs[i]`` is the coefficient of ``x**i``).  Over GF(2) the polynomial
is additionally packed into a Python int (bit ``i`` = coefficient of
``x**i``) and every operation runs on that mask; other fields use plain
coefficient lists.  The mask kernels (``*_mask``) and the list kernels
(``*_coeffs``) are both public so they can be checked against each other.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .factor import factor_integer, is_probable_prime, prime_divisors

__all__ = [
    "Fq",
    "GF2",
    "Poly",
    "ZERO_DEGREE",
    "poly_mul",
    "poly_divmod",
    "poly_gcd",
    "poly_gcd_quotients",
    "poly_derivative",
    "poly_inverse_mod",
    "poly_powmod",
    "poly_trace",
    "find_trace_one",
    "is_irreducible",
    "is_primitive",
    "factor_integer",
    "parse_poly",
    "irreducibles",
    "primitives",
]

#: Degree of the zero polynomial.  Negative infinity keeps ``deg(a*b) ==
#: deg(a) + deg(b)`` and ``deg(0) < deg(c)`` true without special cases,
#: while any attempt to use it as a count (``range``, indexing) fails loudly.
ZERO_DEGREE = -math.inf


@dataclass(frozen=True)
class Fq:
    """The prime field GF(q)."""

    q: int

    def __post_init__(self):
        if not _is_prime(self.q):
            raise ValueError(f"field order must be prime, got {self.q}")

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.q - 2, self.q)

    def elements(self) -> range:
        return range(self.q)

    def __str__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def _is_prime(q: int) -> bool:
    return q >= 2 and is_probable_prime(q)


@lru_cache(maxsize=None)
def field(q: int) -> Fq:
    return Fq(q)


GF2 = field(2)


# ----------------------------------------------------------------------------
# GF(2) kernels on int masks


def mul_mask(a: int, b: int) -> int:
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def divmod_mask(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    quo = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        quo |= 1 << shift
        a ^= b << shift
    return quo, a


def mod_mask(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def square_mask(a: int) -> int:
    # spread bits: (sum a_i x^i)^2 = sum a_i x^{2i} in characteristic 2
    out = 0
    i = 0
    while a:
        if a & 1:
            out |= 1 << (2 * i)
        a >>= 1
        i += 1
    return out


def mulmod_mask(a: int, b: int, m: int) -> int:
    return mod_mask(mul_mask(a, b), m)


def powmod_mask(a: int, e: int, m: int) -> int:
    result = mod_mask(1, m)
    a = mod_mask(a, m)
    while e:
        if e & 1:
            result = mulmod_mask(result, a, m)
        e >>= 1
        if e:
            a = mod_mask(square_mask(a), m)
    return result


# ----------------------------------------------------------------------------
# generic GF(q) kernels on little-endian coefficient lists


def _strip(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def add_coeffs(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % q
    return _strip(out)


def sub_coeffs(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    return add_coeffs(a, [(-v) % q for v in b], q)


def mul_coeffs(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return _strip([v % q for v in out])


def divmod_coeffs(a: Sequence[int], b: Sequence[int], q: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(a)
    db = len(b) - 1
    lead_inv = pow(b[-1], q - 2, q)
    if len(rem) - 1 < db:
        return [], _strip(rem)
    quo = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] * lead_inv % q
        if c:
            quo[k - db] = c
            for j, v in enumerate(b):
                rem[k - db + j] = (rem[k - db + j] - c * v) % q
    return _strip(quo), _strip(rem[:db])


# ----------------------------------------------------------------------------


class Poly:
    """Immutable polynomial over GF(q), canonical (no trailing zeros)."""

    __slots__ = ("field", "coeffs", "mask")

    def __init__(self, coeffs: Iterable[int] = (), q: int | Fq = 2):
        fld = q if isinstance(q, Fq) else field(q)
        c = _strip([int(v) % fld.q for v in coeffs])
        object.__setattr__(self, "field", fld)
        object.__setattr__(self, "coeffs", tuple(c))
        mask = None
        if fld.q == 2:
            mask = 0
            for i, v in enumerate(c):
                if v:
                    mask |= 1 << i
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def from_mask(cls, mask: int) -> "Poly":
        if mask < 0:
            raise ValueError("mask must be non-negative")
        return cls([(mask >> i) & 1 for i in range(mask.bit_length())], 2)

    @classmethod
    def monomial(cls, k: int, q: int | Fq = 2, c: int = 1) -> "Poly":
        return cls([0] * k + [c], q)

    @classmethod
    def const(cls, c: int, q: int | Fq = 2) -> "Poly":
        return cls([c], q)

    @classmethod
    def x(cls, q: int | Fq = 2) -> "Poly":
        return cls([0, 1], q)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def degree(self):
        """Degree as an int, or :data:`ZERO_DEGREE` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def monic(self) -> "Poly":
        if self.is_zero() or self.lead == 1:
            return self
        inv = self.field.inv(self.lead)
        return Poly([c * inv for c in self.coeffs], self.field)

    def __call__(self, v: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * v + c) % self.q
        return acc

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return Poly([other], self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.q == 2:
            return Poly.from_mask(self.mask ^ other.mask)
        return Poly(add_coeffs(self.coeffs, other.coeffs, self.q), self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __divmod__(self, other):
        return poly_divmod(self, self._coerce(other))

    def __floordiv__(self, other):
        return poly_divmod(self, self._coerce(other))[0]

    def __mod__(self, other):
        return poly_divmod(self, self._coerce(other))[1]

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly([1], self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == Poly([other], self.field).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly({self}, q={self.q})" if self.q != 2 else f"Poly({self})"

    def __str__(self):
        return format_poly(self)


# ----------------------------------------------------------------------------
# text formats


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        if i == 0:
            mono = ""
        elif i == 1:
            mono = "x"
        else:
            mono = f"x^{i}"
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return "+".join(terms)


_TERM = re.compile(r"^(?:(\d+)\s*[*·]?\s*)?(x(?:\^(\d+))?)?$")


def parse_poly(text: str, q: int = 2) -> Poly:
    """Parse ``"x^4+x+1"``, ``"2x^2+x+1"``, ``"2*x^3+1"`` or, over GF(2), a
    hexadecimal mask such as ``"0x13"`` (bit i = coefficient of x^i)."""
    s = text.strip().replace(" ", "")
    if s.lower().startswith("0x"):
        if q != 2:
            raise ValueError("hex masks are only defined over GF(2)")
        return Poly.from_mask(int(s, 16))
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    for raw in s.split("+"):
        m = _TERM.match(raw)
        if not raw or m is None or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"bad polynomial term {raw!r} in {text!r}")
        c = int(m.group(1)) if m.group(1) is not None else 1
        if not 0 <= c < q:
            raise ValueError(f"coefficient {c} outside 0..{q - 1}")
        if m.group(2) is None:
            k = 0
        else:
            k = int(m.group(3)) if m.group(3) is not None else 1
        coeffs[k] = (coeffs.get(k, 0) + c) % q
    top = max(coeffs)
    return Poly([coeffs.get(i, 0) for i in range(top + 1)], q)


# ----------------------------------------------------------------------------
# operations


def _same_field(a: Poly, b: Poly) -> None:
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field} vs {b.field}")


def poly_mul(a: Poly, b: Poly) -> Poly:
    _same_field(a, b)
    if a.q == 2:
        return Poly.from_mask(mul_mask(a.mask, b.mask))
    return Poly(mul_coeffs(a.coeffs, b.coeffs, a.q), a.field)


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    _same_field(a, b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.q == 2:
        quo, rem = divmod_mask(a.mask, b.mask)
        return Poly.from_mask(quo), Poly.from_mask(rem)
    quo, rem = divmod_coeffs(a.coeffs, b.coeffs, a.q)
    return Poly(quo, a.field), Poly(rem, a.field)


def poly_gcd_quotients(a: Poly, b: Poly) -> tuple[Poly, list[Poly]]:
    """Euclid's algorithm keeping every quotient, in division order.

    The returned gcd is monic.
    """
    _same_field(a, b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    quotients = []
    while not b.is_zero():
        quo, rem = poly_divmod(a, b)
        quotients.append(quo)
        a, b = b, rem
    return a.monic(), quotients


def poly_gcd(a: Poly, b: Poly) -> Poly:
    return poly_gcd_quotients(a, b)[0]


def poly_derivative(p: Poly) -> Poly:
    return Poly([i * c for i, c in enumerate(p.coeffs)][1:], p.field)


def poly_inverse_mod(a: Poly, m: Poly) -> Poly:
    """b with a*b == 1 (mod m), by the extended Euclidean algorithm."""
    _same_field(a, m)
    if m.is_zero():
        raise ZeroDivisionError("modulus is zero")
    r0, r1 = m, a % m
    s0, s1 = Poly([], m.field), Poly([1], m.field)
    while not r1.is_zero():
        quo, rem = poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
    if r0.degree != 0:
        raise ValueError(f"{a} is not invertible modulo {m}")
    return (s0 * m.field.inv(r0.lead)) % m


def poly_powmod(a: Poly, e: int, m: Poly) -> Poly:
    _same_field(a, m)
    if m.is_zero():
        raise ZeroDivisionError("modulus is zero")
    if e < 0:
        raise ValueError("negative exponent")
    if a.q == 2:
        return Poly.from_mask(powmod_mask(a.mask, e, m.mask))
    result = Poly([1], m.field) % m
    base = a % m
    while e:
        if e & 1:
            result = (result * base) % m
        e >>= 1
        if e:
            base = (base * base) % m
    return result


def _frobenius(a: Poly, m: Poly) -> Poly:
    """a**q mod m."""
    if a.q == 2:
        return Poly.from_mask(mod_mask(square_mask(a.mask), m.mask))
    return poly_powmod(a, a.q, m)


def poly_trace(a: Poly, m: Poly) -> int:
    """Absolute trace of ``a`` in GF(q)[x]/(m): sum of a**(q**i), i < deg m.

    Raises ``ValueError`` if the sum is not a constant, which can only happen
    when ``m`` is reducible.
    """
    _same_field(a, m)
    n = m.degree
    if n < 1:
        raise ValueError("trace needs a modulus of degree >= 1")
    term = a % m
    total = term
    for _ in range(n - 1):
        term = _frobenius(term, m)
        total = total + term
    if not total.is_constant():
        raise ValueError(f"trace of {a} mod {m} is not constant ({total}); modulus is reducible")
    return total.constant_term()


def find_trace_one(m: Poly) -> Poly:
    """First element of trace one, scanning 1, x, x^2, ... (scaled into
    trace one over GF(q), q > 2)."""
    for k in range(m.degree):
        mono = Poly.monomial(k, m.field)
        t = poly_trace(mono, m)
        if t:
            return mono * m.field.inv(t)
    raise ValueError(f"no trace-one basis element modulo {m}; modulus is reducible")


def is_irreducible(p: Poly) -> bool:
    """Rabin's test: x^(q^n) == x mod p and gcd(x^(q^(n/r)) - x, p) == 1 for
    every prime r dividing n."""
    n = p.degree
    if n < 1:
        raise ValueError("irreducibility is defined for degree >= 1")
    if n == 1:
        return True
    p = p.monic()
    x = Poly.x(p.field) % p
    # x^(q^k) mod p for k = 0..n
    frob = [x]
    for _ in range(n):
        frob.append(_frobenius(frob[-1], p))
    if frob[n] != x:
        return False
    for r in prime_divisors(n):
        g = poly_gcd(frob[n // r] - x, p)
        if not g.is_one():
            return False
    return True


def is_primitive(p: Poly, budget: int | None = None) -> bool:
    """Irreducible and x has multiplicative order q^n - 1 modulo p.

    Needs the complete factorization of q^n - 1; raises
    :class:`~mlca.factor.FactorizationBudgetExceeded` rather than guessing.
    """
    n = p.degree
    if n < 1:
        raise ValueError("primitivity is defined for degree >= 1")
    p = p.monic()
    if p.constant_term() == 0:
        return False
    if not is_irreducible(p):
        return False
    order = p.q**n - 1
    if order == 1:
        return True
    x = Poly.x(p.field)
    one = Poly([1], p.field)
    for r in prime_divisors(order, budget):
        if poly_powmod(x, order // r, p) == one:
            return False
    return True


def all_monic(n: int, q: int = 2):
    """Every monic polynomial of degree n over GF(q)."""
    if q == 2:
        base = 1 << n
        for low in range(base):
            yield Poly.from_mask(base | low)
        return
    for idx in range(q**n):
        c = []
        for _ in range(n):
            idx, r = divmod(idx, q)
            c.append(r)
        yield Poly(c + [1], q)


def irreducibles(n: int, q: int = 2) -> list[Poly]:
    return [p for p in all_monic(n, q) if is_irreducible(p)]


def primitives(n: int, q: int = 2) -> list[Poly]:
    return [p for p in all_monic(n, q) if is_primitive(p)]
