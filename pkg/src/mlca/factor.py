"""Integer factorization for multiplicative-order checks.

Trial division by small primes, then Brent's variant of Pollard rho on
whatever cofactor is left.  Every rho run is capped by an iteration budget;
running out raises :class:`FactorizationBudgetExceeded` instead of returning
a partial answer.
"""

from __future__ import annotations

import math
import os
from functools import lru_cache

TRIAL_LIMIT = 10**6
DEFAULT_RHO_BUDGET = 10**7
BUDGET_ENV = "MLCA_FACTOR_BUDGET"

# Deterministic Miller-Rabin bases for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class FactorizationBudgetExceeded(RuntimeError):
    """Pollard rho used up its iteration budget on a composite cofactor."""

    def __init__(self, n: int, budget: int):
        super().__init__(f"could not split {n} within {budget} rho iterations")
        self.n = n
        self.budget = budget


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_RHO_BUDGET
    return int(raw)


@lru_cache(maxsize=1)
def _small_primes(limit: int = TRIAL_LIMIT) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, overwhelming odds above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, budget: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    spent = 0
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            spent += r
            if spent > budget:
                raise FactorizationBudgetExceeded(n, budget)
            r *= 2
        if g == n:
            # batch overshot; back up one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise FactorizationBudgetExceeded(n, budget)


def _split(n: int, budget: int, out: list[int]) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out.append(n)
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, budget, out)
        _split(r, budget, out)
        return
    d = _brent(n, budget)
    _split(d, budget, out)
    _split(n // d, budget, out)


@lru_cache(maxsize=4096)
def _factor_cached(m: int, budget: int) -> tuple[int, ...]:
    out: list[int] = []
    for p in _small_primes():
        if p * p > m:
            break
        while m % p == 0:
            out.append(p)
            m //= p
    if m > 1:
        if m <= TRIAL_LIMIT**2 or is_probable_prime(m):
            # everything below TRIAL_LIMIT has been divided out
            out.append(m)
        else:
            _split(m, budget, out)
    return tuple(sorted(out))


def factor_integer(m: int, budget: int | None = None) -> tuple[int, ...]:
    """Prime factors of ``m`` with multiplicity, in ascending order.

    >>> factor_integer(2**11 - 1)
    (23, 89)
    """
    if m < 2:
        raise ValueError(f"factor_integer needs m >= 2, got {m}")
    if budget is None:
        budget = default_budget()
    return _factor_cached(m, budget)


def prime_divisors(m: int, budget: int | None = None) -> tuple[int, ...]:
    return tuple(sorted(set(factor_integer(m, budget))))
