"""Exact integer/rational utilities: Bernoulli numbers, bP group orders,
bounded compositions.

Everything here is exact; there is deliberately no floating point anywhere
in this package.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

__all__ = ["BPOrder", "bernoulli_even", "bp_order", "bounded_compositions"]


# Memo table for Bernoulli numbers B_0..B_max computed so far.
# Convention: B_1 = -1/2 (the even-index values, the only ones we expose,
# agree in both conventions).
_bernoulli_lock = threading.Lock()
_bernoulli: list[Fraction] = [Fraction(1), Fraction(-1, 2)]


def _extend_bernoulli(upto: int) -> None:
    # Defining recurrence: sum_{k=0}^{n} C(n+1, k) B_k = 0 for n >= 1.
    while len(_bernoulli) <= upto:
        n = len(_bernoulli)
        if n % 2 == 1:
            _bernoulli.append(Fraction(0))
            continue
        s = sum(comb(n + 1, k) * _bernoulli[k] for k in range(n))
        _bernoulli.append(Fraction(-s, n + 1))


def bernoulli_even(m2: int) -> Fraction:
    """Bernoulli number B_{m2} for even m2 >= 2 (B_2 = 1/6, B_4 = -1/30)."""
    if m2 < 2 or m2 % 2 != 0:
        raise ValueError(f"bernoulli_even requires an even integer >= 2, got {m2}")
    with _bernoulli_lock:
        _extend_bernoulli(m2)
        return _bernoulli[m2]


@dataclass(frozen=True)
class BPOrder:
    """Order of the cyclic group bP_{4m} of exotic (4m-1)-spheres bounding
    parallelizable manifolds."""

    m: int
    order: int


def bp_order(m: int) -> BPOrder:
    """|bP_{4m}| = 2^(2m-2) (2^(2m-1) - 1) * numerator(|4 B_{2m} / m|).

    The numerator is taken of the absolute value in lowest terms; group
    orders are positive.  bp_order(2).order == 28 (the 28 exotic 7-spheres).
    """
    if m < 2:
        raise ValueError(f"bp_order requires m >= 2, got {m}")
    b = bernoulli_even(2 * m)
    frac = abs(Fraction(4, m) * b)
    order = 2 ** (2 * m - 2) * (2 ** (2 * m - 1) - 1) * frac.numerator
    return BPOrder(m=m, order=order)


def bounded_compositions(sigma: int, parts: int, lo: int, hi: int | None = None) -> int:
    """Number of x in Z^parts with lo <= x_i <= hi and sum(x) == sigma.

    hi=None means no upper bound.  Computed by inclusion-exclusion over the
    upper bounds; with lo=0, hi=None this is stars-and-bars
    C(sigma + parts - 1, parts - 1).
    """
    if parts < 0:
        raise ValueError("parts must be >= 0")
    if hi is not None and lo > hi:
        raise ValueError(f"need lo <= hi, got lo={lo}, hi={hi}")
    t = sigma - parts * lo
    if t < 0:
        return 0
    if parts == 0:
        return 1 if t == 0 else 0
    if hi is None:
        return comb(t + parts - 1, parts - 1)
    w = hi - lo
    total = 0
    for i in range(parts + 1):
        rem = t - i * (w + 1)
        if rem < 0:
            break
        term = comb(parts, i) * comb(rem + parts - 1, parts - 1)
        total += term if i % 2 == 0 else -term
    return total
