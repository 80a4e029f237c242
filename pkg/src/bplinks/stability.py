"""K-polystability / K-semistability of the Brieskorn-Pham Fano cone,
the index invariant, and the contact-structure obstruction.

The production test is the closed-form inequality

    1 < sum 1/a_i < (resp. <=) 1 + n/a_n      (a sorted ascending)

equivalently 0 < I_a < n*d_n with d = lcm(a_i), d_i = d/a_i and
I_a = sum d_i - d.  The exponential subset criterion it was reduced from
is kept as a test-scale oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Sequence

from .errors import InvariantViolation, RefusalError
from .topology import exponent_vector

__all__ = [
    "StabilityReport",
    "k_stability",
    "fujita_subset_oracle",
    "contact_obstruction",
    "CONTACT_ODD_DIM",
    "CONTACT_INDIVISIBLE",
    "CONTACT_INCONCLUSIVE",
]

CONTACT_ODD_DIM = "obstructed_odd_dimension"
CONTACT_INDIVISIBLE = "obstructed_index_indivisible"
CONTACT_INCONCLUSIVE = "inconclusive"

_SUBSET_ORACLE_MAX_N = 12


@dataclass(frozen=True)
class StabilityReport:
    vector: tuple
    sum_recip: Fraction
    log_fano: bool
    k_semistable: bool
    k_polystable: bool
    se_metric_exists: bool
    boundary_semistable: bool  # semistable but not polystable (equality case)
    d: int  # lcm of the a_i
    weights: tuple  # Reeb weights d_i = d / a_i
    index_invariant: int  # I_a = sum d_i - d
    contact: str


def k_stability(a: Sequence[int]) -> StabilityReport:
    """Exact-rational stability decision.  se_metric_exists is exactly the
    polystability flag; the semistable boundary reports False with
    boundary_semistable set."""
    a = exponent_vector(a)
    n = len(a) - 1
    s = sum(Fraction(1, ai) for ai in a)
    upper = 1 + Fraction(n, a[-1])
    log_fano = s > 1
    semi = log_fano and s <= upper
    poly = log_fano and s < upper

    d = lcm(*a)
    weights = tuple(d // ai for ai in a)
    index = sum(weights) - d
    # the index form is equivalent to the inequality form; check every call
    if poly != (0 < index < n * weights[-1]):
        raise InvariantViolation(
            f"inequality form and index form disagree on {a}: "
            f"sum={s}, I={index}, n*d_n={n * weights[-1]}"
        )
    return StabilityReport(
        vector=a,
        sum_recip=s,
        log_fano=log_fano,
        k_semistable=semi,
        k_polystable=poly,
        se_metric_exists=poly,
        boundary_semistable=semi and not poly,
        d=d,
        weights=weights,
        index_invariant=index,
        contact=contact_obstruction(a),
    )


def fujita_subset_oracle(a: Sequence[int]) -> dict:
    """Independent oracle: evaluate

        k * sum_i (1 - 1/a_i) - n * sum_{j in S} (1 - 1/a_j)

    over every subset S of size 1 <= k <= n-1.  Polystable iff log Fano and
    all values > 0; semistable iff log Fano and all values >= 0.
    Exponential; refused beyond n = 12.
    """
    a = exponent_vector(a)
    n = len(a) - 1
    if n > _SUBSET_ORACLE_MAX_N:
        raise RefusalError(
            f"subset oracle is exponential; n={n} exceeds the test-scale cap "
            f"{_SUBSET_ORACLE_MAX_N} (use k_stability instead)"
        )
    ones = [1 - Fraction(1, ai) for ai in a]
    total = sum(ones)
    log_fano = sum(Fraction(1, ai) for ai in a) > 1
    min_val = None
    for k in range(1, n):
        for subset in combinations(range(n + 1), k):
            val = k * total - n * sum(ones[i] for i in subset)
            if min_val is None or val < min_val:
                min_val = val
    return {
        "polystable": log_fano and min_val > 0,
        "semistable": log_fano and min_val >= 0,
        "min_value": min_val,
    }


def contact_obstruction(a: Sequence[int]) -> str:
    """Orbifold contact-structure obstruction: obstructed when n is odd, or
    when n = 2m and m does not divide the index invariant."""
    a = exponent_vector(a)
    n = len(a) - 1
    if n % 2 == 1:
        return CONTACT_ODD_DIM
    m = n // 2
    d = lcm(*a)
    index = sum(d // ai for ai in a) - d
    if index % m != 0:
        return CONTACT_INDIVISIBLE
    return CONTACT_INCONCLUSIVE
