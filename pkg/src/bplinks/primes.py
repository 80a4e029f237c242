"""Deterministic primality testing and prime listing on open rational
intervals."""

from __future__ import annotations

from fractions import Fraction

__all__ = ["is_prime", "primes_in_interval"]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Miller-Rabin with these fixed bases is a proven primality test for all
# n < 3.3 * 10^24, far beyond anything this tool enumerates.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
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


def primes_in_interval(lo, hi) -> list:
    """All primes in the open interval (lo, hi), ascending.  Endpoints may
    be exact rationals; an empty list is a valid result."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        raise ValueError(f"need lo < hi, got ({lo}, {hi})")
    start = lo.numerator // lo.denominator + 1  # smallest integer > lo
    end = -((-hi.numerator) // hi.denominator) - 1  # largest integer < hi
    return [n for n in range(max(2, start), end + 1) if is_prime(n)]
