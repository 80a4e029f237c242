"""Moduli-dimension counting via weighted monomials and the mean Euler
characteristic table for the exotic family.

The circle-equivariant Euler characteristic of the principal p-stratum is
an external input (only its leading term p^{n-4} is pinned down here), so
every report carries the model used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Optional, Sequence

from .errors import InvariantViolation
from .stability import k_stability
from .families import exotic_vector

__all__ = [
    "weighted_monomial_count",
    "exotic_weights",
    "ModuliDimension",
    "moduli_dimension",
    "maslov_index",
    "OrbitStratum",
    "MeanEulerReport",
    "mean_euler",
]


def weighted_monomial_count(weights: Sequence[int], degree: int) -> int:
    """#{e in Z_{>=0}^k : sum w_i e_i = degree} by coin-counting DP."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if any(w < 1 for w in weights):
        raise ValueError("weights must be positive")
    table = [0] * (degree + 1)
    table[0] = 1
    for w in weights:
        for deg in range(w, degree + 1):
            table[deg] += table[deg - w]
    return table[degree]


def _check_family_shape(n: int, p: int, l: int) -> None:
    if n < 4 or n % 2 != 0:
        raise ValueError("n must be even and >= 4")
    if p < 2 or l < 1:
        raise ValueError("need p >= 2 and l >= 1")
    # l = 1 leaves l - 1 = 0, making the second coprimality vacuous
    if p % 2 != 0 or gcd(p, l) != 1 or (l > 1 and gcd(p + 1, l - 1) != 1):
        raise ValueError(
            f"(p, l) = ({p}, {l}) violates the family shape: p even, "
            "gcd(p, l) = 1, gcd(p+1, l-1) = 1"
        )


def exotic_weights(n: int, p: int, l: int):
    """Reeb weights (d_i) and total degree d for (2,2,p,...,p,p+1,p+l)."""
    d = p * (p + 1) * (p + l)
    weights = (d // 2, d // 2) + (d // p,) * (n - 3) + (d // (p + 1), d // (p + l))
    return weights, d


@dataclass(frozen=True)
class ModuliDimension:
    n: int
    p: int
    l: int
    h0_d: int
    h0_weights_sum: int
    dp_value: int  # h0(d) - sum h0(d_i)
    closed_form: int  # C(p+n-4, n-4) - (n-3)^2 - 1

    @property
    def agree(self) -> bool:
        return self.dp_value == self.closed_form

    @property
    def dimension(self) -> int:
        return self.dp_value


def moduli_dimension(n: int, p: int, l: int) -> ModuliDimension:
    """Lower bound for the dimension of the Sasaki-Einstein family on the
    exotic member: h^0(O(d)) - sum_i h^0(O(d_i)), computed by DP over the
    Reeb weights and independently by the closed form; a mismatch is
    reported, never averaged away."""
    _check_family_shape(n, p, l)
    if n < 6:
        raise ValueError("moduli_dimension requires n >= 6")
    weights, d = exotic_weights(n, p, l)
    h0_d = weighted_monomial_count(weights, d)
    h0_sum = sum(weighted_monomial_count(weights, w) for w in weights)
    closed = comb(p + n - 4, n - 4) - (n - 3) ** 2 - 1
    return ModuliDimension(
        n=n,
        p=p,
        l=l,
        h0_d=h0_d,
        h0_weights_sum=h0_sum,
        dp_value=h0_d - h0_sum,
        closed_form=closed,
    )


def maslov_index(n: int, p: int, l: int) -> int:
    """Maslov index of the principal orbit:
    mu_P = 2((n-3)(p+1)(p+l) + p(2p+l+1)).  Cross-checked against twice the
    index invariant whenever the family shape is non-degenerate."""
    if n < 4 or n % 2 != 0:
        raise ValueError("n must be even and >= 4")
    if p < 1 or l < 0:
        raise ValueError("need p >= 1 and l >= 0")
    mu = 2 * ((n - 3) * (p + 1) * (p + l) + p * (2 * p + l + 1))
    if p % 2 == 0 and gcd(p, l) == 1 and gcd(p + 1, l - 1) == 1:
        stab = k_stability(exotic_vector(n, p, l))
        if mu != 2 * stab.index_invariant:
            raise InvariantViolation(
                f"Maslov index {mu} != 2 * I_a = {2 * stab.index_invariant} "
                f"for (n, p, l) = ({n}, {p}, {l})"
            )
    return mu


@dataclass(frozen=True)
class OrbitStratum:
    label: str
    period: int
    chi_s1: Fraction  # equivariant Euler characteristic of the stratum
    frequency: int


@dataclass(frozen=True)
class MeanEulerReport:
    n: int
    p: int
    l: int
    mu_p: int
    phi_2: int
    strata: tuple
    chi_m: Fraction
    chi_p_model: str
    chi_p_value: Fraction


def _poly_eval(coeffs: Sequence, x: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(list(coeffs)):
        acc = acc * x + Fraction(c)
    return acc


def mean_euler(
    n: int, p: int, l: int, chi_p: Optional[Sequence] = None
) -> MeanEulerReport:
    """Mean Euler characteristic table for the exotic family member.

    chi_p is the polynomial (ascending coefficients in p) modelling the
    equivariant Euler characteristic of the p-stratum; it defaults to the
    leading term p^(n-4), which is approximate and flagged as such in the
    report.  chi_m = -(N1 + N2)/mu_P exactly as displayed in the two-line
    sum over strata.
    """
    _check_family_shape(n, p, l)
    if chi_p is None:
        model = f"leading-term p^{n - 4} (approximate)"
        chi_p_value = Fraction(p) ** (n - 4)
    else:
        model = "user polynomial " + ",".join(str(c) for c in chi_p)
        chi_p_value = _poly_eval(chi_p, p)

    d = p * (p + 1) * (p + l)
    phi_2 = d // 2 + 2 * p - p * p - p * l // 2
    rows = [
        ("L(2,2,p,...,p,p+1,p+l)", d, Fraction(n), 1),
        ("L(2,2,p+1,p+l)", 2 * (p + 1) * (p + l), Fraction(3), p // 2 - 1),
        ("L(p+1,p+l)", (p + 1) * (p + l), Fraction(1), p // 2),
        ("L(2,2,p,...,p,p+l)", p * (p + l), Fraction(n - 1), p),
        ("L(2,2,p,...,p,p+1)", p * (p + 1), Fraction(n - 1), p + l - 1),
        ("L(2,2,p+l)", 2 * (p + l), Fraction(2), p * (p + 1) // 2 - 3 * p // 2),
        ("L(2,2,p+1)", 2 * (p + 1), Fraction(2), p * (p + l) // 2 - 3 * p // 2 - l + 1),
        ("L(2,2,p,...,p)", p, chi_p_value, (p + 1) * (p + l) - 2 * p - l),
        ("L(2,2)", 2, Fraction(2), phi_2),
    ]
    strata = []
    for label, period, chi, freq in rows:
        if freq < 0:
            raise InvariantViolation(
                f"negative frequency {freq} for stratum {label} at "
                f"(n, p, l) = ({n}, {p}, {l})"
            )
        strata.append(OrbitStratum(label=label, period=period, chi_s1=chi, frequency=freq))

    mu = maslov_index(n, p, l)
    total = sum(s.chi_s1 * s.frequency for s in strata)
    chi_m = -total / mu
    return MeanEulerReport(
        n=n,
        p=p,
        l=l,
        mu_p=mu,
        phi_2=phi_2,
        strata=tuple(strata),
        chi_m=chi_m,
        chi_p_model=model,
        chi_p_value=chi_p_value,
    )
