"""Exact lattice-point counting: the Milnor-fiber signature by brute
enumeration and by a 2-coordinate kernel, plus the gamma/delta/beta
counters used to certify the quasi-polynomial structure.

All threshold comparisons are exact rationals; there is no epsilon
anywhere.  Points whose coordinate sum is an integer fall on a window
boundary: they are never silently dropped but counted separately (they
cannot occur for homotopy spheres, so a nonzero boundary count flags a
non-sphere input).
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm, prod
from typing import Sequence

from .arith import bounded_compositions
from .errors import RefusalError
from .topology import exponent_vector

__all__ = [
    "DEFAULT_BUDGET",
    "SignatureResult",
    "strip_count_2d",
    "window_weight",
    "tau_brute",
    "tau_kernel",
    "CountSpec",
    "count_spec",
    "count_box",
    "GammaBreakdown",
    "gamma_triangle",
    "gamma_family_closed",
    "delta_closed",
    "beta_via_gamma",
]

DEFAULT_BUDGET = 10**8
_BUDGET_ENV = "BPLINKS_TAU_BUDGET"


def _resolve_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(_BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


def _strict_floor(q: Fraction) -> int:
    """Largest integer strictly less than q."""
    return (q.numerator - 1) // q.denominator


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


@dataclass(frozen=True)
class SignatureResult:
    tau: int
    plus_count: int
    minus_count: int
    boundary_skipped: int
    method: str  # "brute" or "kernel"


# ---------------------------------------------------------------------------
# 2D kernels


def strip_count_2d(A: int, B: int, u, lower_open=(True, True)) -> int:
    """#{(x, y) : x/A + y/B < u} with x < A, y < B and lower bounds open
    (x > 0) or closed (x >= 0) per flag.  O(A) row-by-row floor count."""
    if A < 2 or B < 2:
        raise ValueError("strip_count_2d requires A, B >= 2")
    u = Fraction(u)
    x0 = 1 if lower_open[0] else 0
    y0 = 1 if lower_open[1] else 0
    total = 0
    for x in range(x0, A):
        q = (u - Fraction(x, A)) * B  # y < q
        ymax = min(B - 1, _strict_floor(q))
        if ymax < y0:
            break  # rows only get shorter as x grows
        total += ymax - y0 + 1
    return total


def _count_2d(A, B, u, x_open, y_open, x_bounded, y_bounded, strict) -> int:
    """Generic 2D count: x/A + y/B < u (strict) or <= u, with per-axis
    open/closed lower bounds and optional x < A, y < B upper bounds."""
    u = Fraction(u)
    x = 1 if x_open else 0
    y0 = 1 if y_open else 0
    total = 0
    while not (x_bounded and x >= A):
        q = (u - Fraction(x, A)) * B
        ymax = _strict_floor(q) if strict else _floor(q)
        if y_bounded:
            ymax = min(B - 1, ymax)
        if ymax < y0:
            break
        total += ymax - y0 + 1
        x += 1
    return total


def _count_eq_2d(A: int, B: int, t: Fraction) -> int:
    """#{(x, y) : 0 < x < A, 0 < y < B, x/A + y/B = t}."""
    total = 0
    for x in range(1, A):
        q = (t - Fraction(x, A)) * B
        if q.denominator == 1 and 0 < q.numerator < B:
            total += 1
    return total


def _window_counts(c, A: int, B: int):
    """For interior points 0 < x < A, 0 < y < B, classify
    S = c + x/A + y/B by its residue window: plus when S mod 2 in (0, 1),
    minus when in (1, 2), boundary when S is an integer."""
    c = Fraction(c)
    if c < 0:
        raise ValueError("window offset must be >= 0")
    full = (A - 1) * (B - 1)

    def below(t: Fraction) -> int:  # interior points with x/A + y/B < t
        if t <= 0:
            return 0
        if t >= 2:
            return full
        return strip_count_2d(A, B, t)

    def on(t: Fraction) -> int:
        if t <= 0 or t >= 2:
            return 0
        return _count_eq_2d(A, B, t)

    plus = minus = boundary = 0
    k0 = _floor(c)
    for k in (k0, k0 + 1, k0 + 2):
        cnt = below(k + 1 - c) - below(k - c) - on(k - c)
        if k % 2 == 0:
            plus += cnt
        else:
            minus += cnt
        boundary += on(k - c)
    return plus, minus, boundary


def window_weight(c, A: int, B: int):
    """Signed window weight of the interior box against offset c: returns
    (weight, boundary) with weight = plus - minus from _window_counts."""
    plus, minus, boundary = _window_counts(c, A, B)
    return plus - minus, boundary


# ---------------------------------------------------------------------------
# Signature


def tau_brute(a: Sequence[int], budget: int | None = None) -> SignatureResult:
    """Signature by full enumeration of the open box 0 < x_i < a_i.

    Works in integers: with d = lcm(a_i) and w_i = d/a_i, the residue of
    d * sum(x_i/a_i) mod 2d lands in (0, d) for a +1 point and (d, 2d) for
    a -1 point.  Refuses beyond the point budget (default 10^8, env
    override BPLINKS_TAU_BUDGET).
    """
    a = exponent_vector(a)
    points = prod(ai - 1 for ai in a)
    limit = _resolve_budget(budget)
    if points > limit:
        raise RefusalError(
            f"tau_brute would enumerate {points} points (budget {limit}); "
            "use tau_kernel instead"
        )
    d = lcm(*a)
    mod = 2 * d
    counts = {0: 1}
    for ai in a:  # ascending order keeps intermediate residue maps small
        w = d // ai
        nxt: dict[int, int] = {}
        for res, cnt in counts.items():
            for x in range(1, ai):
                r = (res + x * w) % mod
                nxt[r] = nxt.get(r, 0) + cnt
        counts = nxt
    plus = sum(cnt for r, cnt in counts.items() if 0 < r < d)
    minus = sum(cnt for r, cnt in counts.items() if r > d)
    boundary = counts.get(0, 0) + counts.get(d, 0)
    return SignatureResult(
        tau=plus - minus,
        plus_count=plus,
        minus_count=minus,
        boundary_skipped=boundary,
        method="brute",
    )


def tau_kernel(a: Sequence[int]) -> SignatureResult:
    """Signature via the 2-coordinate kernel: the two largest exponents form
    the inner box, the remaining coordinates are grouped by value and by
    coordinate sum with bounded-composition multiplicities."""
    a = exponent_vector(a)
    A, B = a[-2], a[-1]
    outer = a[:-2]
    axes = []
    for v, r in sorted(Counter(outer).items()):
        axes.append(
            [
                (Fraction(sig, v), bounded_compositions(sig, r, 1, v - 1))
                for sig in range(r, r * (v - 1) + 1)
            ]
        )
    plus = minus = boundary = 0
    for combo in itertools.product(*axes):
        c = sum((f for f, _ in combo), Fraction(0))
        mult = prod(m for _, m in combo)
        if mult == 0:
            continue
        p, mn, b = _window_counts(c, A, B)
        plus += mult * p
        minus += mult * mn
        boundary += mult * b
    return SignatureResult(
        tau=plus - minus,
        plus_count=plus,
        minus_count=minus,
        boundary_skipped=boundary,
        method="kernel",
    )


# ---------------------------------------------------------------------------
# Generic box/simplex counting


@dataclass(frozen=True)
class CountSpec:
    """A finite rational-simplex/box counting problem:

        #{x in Z^k : lower bounds per lower_open, x_i < denoms[i] where
          upper_bounded, and sum x_i/denoms[i] < (or <=) threshold}.
    """

    denoms: tuple
    threshold: Fraction
    strict_upper: bool
    lower_open: tuple
    upper_bounded: tuple

    def __post_init__(self):
        k = len(self.denoms)
        if k < 2:
            raise ValueError("CountSpec needs at least 2 coordinates")
        if any(d < 1 for d in self.denoms):
            raise ValueError("denominators must be positive")
        if len(self.lower_open) != k or len(self.upper_bounded) != k:
            raise ValueError("per-coordinate flag lengths must match denoms")
        if self.threshold < 0:
            raise ValueError("threshold must be >= 0")


def count_spec(denoms, threshold, strict_upper=False, lower_open=False, upper_bounded=False):
    """Build a CountSpec, broadcasting scalar flags across coordinates."""
    denoms = tuple(int(d) for d in denoms)
    k = len(denoms)

    def broadcast(v):
        if isinstance(v, bool):
            return (v,) * k
        return tuple(bool(x) for x in v)

    return CountSpec(
        denoms=denoms,
        threshold=Fraction(threshold),
        strict_upper=bool(strict_upper),
        lower_open=broadcast(lower_open),
        upper_bounded=broadcast(upper_bounded),
    )


def _coord_range_size(spec: CountSpec, i: int) -> int:
    lo = 1 if spec.lower_open[i] else 0
    q = spec.threshold * spec.denoms[i]
    hi = _strict_floor(q) if spec.strict_upper else _floor(q)
    if spec.upper_bounded[i]:
        hi = min(spec.denoms[i] - 1, hi)
    return max(0, hi - lo + 1)


def _count_enumerate(spec: CountSpec, budget: int) -> int:
    estimate = prod(_coord_range_size(spec, i) for i in range(len(spec.denoms)))
    if estimate > budget:
        raise RefusalError(
            f"count_box enumeration would visit ~{estimate} points "
            f"(budget {budget}); use the kernel method"
        )
    k = len(spec.denoms)
    total = 0

    # strictness is checked once at the leaf on the full remaining budget
    def rec(i: int, rem: Fraction):
        nonlocal total
        if i == k:
            if rem > 0 or not spec.strict_upper:
                total += 1
            return
        den = spec.denoms[i]
        x = 1 if spec.lower_open[i] else 0
        while not (spec.upper_bounded[i] and x >= den):
            f = Fraction(x, den)
            if f > rem:
                break
            rec(i + 1, rem - f)
            x += 1

    rec(0, spec.threshold)
    return total


def _count_kernel(spec: CountSpec) -> int:
    items = sorted(zip(spec.denoms, spec.lower_open, spec.upper_bounded))
    outer = items[:-2]
    (A, ax_open, ax_bounded), (B, ay_open, ay_bounded) = items[-2], items[-1]
    strict = spec.strict_upper
    total = 0

    def rec(i: int, rem: Fraction):
        nonlocal total
        if i == len(outer):
            total += _count_2d(A, B, rem, ax_open, ay_open, ax_bounded, ay_bounded, strict)
            return
        den, lopen, bounded = outer[i]
        x = 1 if lopen else 0
        while not (bounded and x >= den):
            f = Fraction(x, den)
            # inner coords contribute >= 0: once f exceeds the budget (or
            # meets it in the strict case) no larger x can contribute
            if f > rem or (strict and f == rem):
                break
            rec(i + 1, rem - f)
            x += 1

    rec(0, spec.threshold)
    return total


def count_box(spec: CountSpec, method: str = "kernel", budget: int | None = None) -> int:
    """Exact count for a CountSpec.  method "kernel" folds the two largest
    denominators into an O(A) strip count; "enumerate" visits every point
    (budgeted) and exists as the independent oracle."""
    if method == "kernel":
        return _count_kernel(spec)
    if method == "enumerate":
        return _count_enumerate(spec, _resolve_budget(budget))
    raise ValueError(f"unknown count_box method {method!r}")


# ---------------------------------------------------------------------------
# Closed-form counters for the infinite families


@dataclass(frozen=True)
class GammaBreakdown:
    """Evaluation record for the triangle count
    gamma_j = #{(x, y) >= 0 : x/(p+1) + y/(p+l) <= j/p}."""

    p: int
    l: int
    j: int
    R: int
    first_term: int
    strip_term: int
    min_sum: int

    @property
    def total(self) -> int:
        return self.first_term + self.strip_term + self.min_sum


def gamma_triangle(p: int, l: int, j: int) -> GammaBreakdown:
    """Closed-form triangle count via the floor-sum decomposition

        1/2 (j - floor(R/l)) (j + floor(R/l) + 1) + (j+1)(R+1)
        + sum_{r=0}^{R} min(floor(R/l), floor((j - (p+1) r + R) / (l-1)))

    with R = floor(l j / p).  Requires l >= 2.
    """
    if p < 1 or j < 0:
        raise ValueError("gamma_triangle requires p >= 1 and j >= 0")
    if l < 2:
        raise ValueError("gamma_triangle requires l >= 2")
    R = l * j // p
    rl = R // l
    first = (j - rl) * (j + rl + 1) // 2
    strip = (j + 1) * (R + 1)
    min_sum = sum(min(rl, (j - (p + 1) * r + R) // (l - 1)) for r in range(R + 1))
    return GammaBreakdown(p=p, l=l, j=j, R=R, first_term=first, strip_term=strip, min_sum=min_sum)


def gamma_family_closed(s: int, k: int, j: int) -> int:
    """Closed form jk/2 (sjk + 2j - s - 2) for the open strip count with
    p = sk+1, q = sp-1: #{0 < x < p, 0 < y < q, x/p + y/q < j/s}."""
    if s < 3 or s % 2 == 0:
        raise ValueError("s must be odd and >= 3")
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 1 <= j <= s:
        raise ValueError("j must satisfy 1 <= j <= s")
    return j * k * (s * j * k + 2 * j - s - 2) // 2


def delta_closed(p: int, l: int, eta: int, n: int) -> int:
    """Count of x in Z_{>=0}^n with sum_{i<n} x_i/p + x_n/(p+l) <= eta,
    evaluated through the quasi-polynomial decomposition

        sum_j F(eta p - j)(j+1) + sum_R R * sum_{j=e_R^-}^{e_R^+} F(eta p - j)
        + F(0) * eta * l

    with F(s) = C(s + n - 2, n - 2), e_R^- = ceil(pR/l),
    e_R^+ = floor((p(R+1) - 1)/l).  The final term collects the j = eta*p
    row where floor(lj/p) = eta*l.
    """
    if p < 1 or l < 0 or eta < 0 or n < 2:
        raise ValueError("delta_closed requires p >= 1, l >= 0, eta >= 0, n >= 2")

    def F(s: int) -> int:
        return comb(s + n - 2, n - 2)

    ep = eta * p
    total = sum(F(ep - j) * (j + 1) for j in range(ep + 1))
    for R in range(eta * l):
        lo = -((-p * R) // l)  # ceil(pR/l)
        hi = (p * (R + 1) - 1) // l
        total += R * sum(F(ep - j) for j in range(lo, hi + 1))
    total += F(0) * eta * l
    return total


def beta_via_gamma(p: int, l: int, eta: int, n: int) -> int:
    """Count of x in Z_{>=0}^{n-1} with
    sum of (n-3) coords / p + x/(p+1) + y/(p+l) <= eta, via
    beta_eta = sum_{j=0}^{eta p} F(eta p - j) gamma_j with
    F(s) = C(s + n - 4, n - 4)."""
    if n < 4:
        raise ValueError("beta_via_gamma requires n >= 4")
    if not 0 <= eta <= n - 1:
        raise ValueError("eta must satisfy 0 <= eta <= n - 1")
    if l < 2 or p < 1:
        raise ValueError("beta_via_gamma requires p >= 1 and l >= 2")

    def F(s: int) -> int:
        return comb(s + n - 4, n - 4)

    ep = eta * p
    return sum(F(ep - j) * gamma_triangle(p, l, j).total for j in range(ep + 1))
