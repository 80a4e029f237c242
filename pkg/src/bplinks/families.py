"""Generators for the three infinite families of Sasaki-Einstein homotopy
spheres and the Brieskorn reference spheres.

Generators validate everything by exact arithmetic (no asymptotic "large
enough" assumptions) and attach expectations; they never compute the
signature themselves, leaving that to the lattice module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .arith import bp_order
from .errors import InvariantViolation, NotQuasiPolynomialError, RefusalError
from .lattice import tau_kernel
from .primes import is_prime, primes_in_interval
from .quasipoly import QuasiPolynomial, qp_fit, qp_verify
from .stability import k_stability
from .topology import COND1, COND2, classify_sphere, exponent_vector

__all__ = [
    "FamilySpec",
    "gen_odd_dim",
    "gen_standard",
    "gen_exotic",
    "brieskorn_reference",
    "exotic_vector",
    "TauFit",
    "fit_exotic_tau",
]


@dataclass(frozen=True)
class FamilySpec:
    variant: str  # "odd_dim" | "standard" | "exotic" | "brieskorn_ref"
    params: dict
    vector: tuple
    derived: dict
    expectations: dict

    def to_json_dict(self) -> dict:
        def enc(v):
            if isinstance(v, Fraction):
                return f"{v.numerator}/{v.denominator}"
            if isinstance(v, tuple):
                return list(v)
            return v

        return {
            "variant": self.variant,
            "params": {k: enc(v) for k, v in self.params.items()},
            "vector": list(self.vector),
            "derived": {k: enc(v) for k, v in self.derived.items()},
            "expectations": {k: enc(v) for k, v in self.expectations.items()},
        }


def gen_odd_dim(m: int, p_n: int) -> FamilySpec:
    """Odd-dimension family (n = 2m+1): a = (2, 2, 2p_2, ..., 2p_{n-1}, p_n)
    with the n-2 largest primes in ((n-2) p_n / (2(n-1)), p_n / 2).

    The result is a Kervaire sphere when p_n = +-3 mod 8, a standard sphere
    when p_n = +-1 mod 8, always with a Sasaki-Einstein metric.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    if not is_prime(p_n):
        raise ValueError(f"p_n = {p_n} is not prime")
    n = 2 * m + 1
    lo = Fraction((n - 2) * p_n, 2 * (n - 1))
    hi = Fraction(p_n, 2)
    primes = primes_in_interval(lo, hi)
    if len(primes) < n - 2:
        raise RefusalError(
            f"only {len(primes)} primes in the open interval ({lo}, {hi}); "
            f"need {n - 2}"
        )
    chosen = primes[-(n - 2):]  # largest primes give the slackest inequality
    vector = exponent_vector([2, 2] + [2 * p for p in chosen] + [p_n])

    stab = k_stability(vector)
    if not stab.k_polystable:
        raise InvariantViolation(f"odd-dim family member {vector} is not K-polystable")
    cls = classify_sphere(vector)
    if cls.condition != COND2:
        raise InvariantViolation(f"odd-dim family member {vector} fails condition (2)")
    kervaire = p_n % 8 in (3, 5)
    return FamilySpec(
        variant="odd_dim",
        params={"m": m, "p_n": p_n},
        vector=vector,
        derived={
            "n": n,
            "interval": (lo, hi),
            "primes": tuple(chosen),
            "d": stab.d,
        },
        expectations={
            "sphere_condition": COND2,
            "kervaire": kervaire,
            "se_metric": True,
        },
    )


def gen_standard(m: int, k: int) -> FamilySpec:
    """Standard-sphere family (n = 2m, s = n-1): a = (s, ..., s, p, q) with
    p = sk+1, q = sp-1.  For k a multiple of 16|bP_{4m}| the class tau/8 is
    divisible by |bP_{4m}|, i.e. the sphere is standard."""
    if m < 2 or k < 2:
        raise ValueError("gen_standard requires m >= 2 and k >= 2")
    n = 2 * m
    s = n - 1
    p = s * k + 1
    q = s * p - 1
    if not (gcd(s, p) == gcd(s, q) == gcd(p, q) == 1):
        raise RefusalError(f"s={s}, p={p}, q={q} are not pairwise coprime")
    if not s < p < q < s * p:
        raise RefusalError(f"ordering s < p < q < sp fails for s={s}, p={p}, q={q}")
    vector = exponent_vector([s] * (n - 1) + [p, q])
    stab = k_stability(vector)
    if not stab.k_polystable:
        raise InvariantViolation(f"standard family member {vector} is not K-polystable")
    cls = classify_sphere(vector)
    if not cls.is_homotopy_sphere:
        raise InvariantViolation(f"standard family member {vector} is not a sphere")
    bp = bp_order(m)
    return FamilySpec(
        variant="standard",
        params={"m": m, "k": k},
        vector=vector,
        derived={"n": n, "s": s, "p": p, "q": q, "d": stab.d},
        expectations={
            "sphere_condition": cls.condition,
            "se_metric": True,
            "bp_modulus": bp.order,
            "expected_class_zero": k % (16 * bp.order) == 0,
        },
    )


def exotic_vector(n: int, p: int, l: int) -> tuple:
    """The exotic-family exponent vector (2, 2, p, ..., p, p+1, p+l)."""
    if n < 4 or n % 2 != 0:
        raise ValueError("n must be even and >= 4")
    return exponent_vector([2, 2] + [p] * (n - 3) + [p + 1, p + l])


def gen_exotic(m: int, k: int, l: int, q: int) -> FamilySpec:
    """Exotic-sphere family (n = 2m): l = 6k-3 or 6k-1, p = q*l*(l-1) + 2,
    a = (2, 2, p, ..., p, p+1, p+l).  The K-stability inequality is the
    admission gate, checked exactly; members target the class (-1)^m k in
    bP_{4m}."""
    if m < 2 or k < 1 or q < 1:
        raise ValueError("gen_exotic requires m >= 2, k >= 1, q >= 1")
    if l not in (6 * k - 3, 6 * k - 1):
        raise ValueError(f"l must be 6k-3 or 6k-1 for k={k}; got {l}")
    n = 2 * m
    p = q * l * (l - 1) + 2
    if p % 2 != 0 or gcd(p, l) != 1 or gcd(p + 1, l - 1) != 1:
        raise InvariantViolation(f"coprimality failed for p={p}, l={l}")
    vector = exotic_vector(n, p, l)
    stab = k_stability(vector)
    if not stab.k_polystable:
        deficit = stab.sum_recip - (1 + Fraction(n, vector[-1]))
        raise RefusalError(
            f"K-stability inequality fails for {vector}: sum 1/a_i exceeds "
            f"1 + n/a_n by {deficit} (p too small for n={n}, l={l})"
        )
    bp = bp_order(m)
    return FamilySpec(
        variant="exotic",
        params={"m": m, "k": k, "l": l, "q": q},
        vector=vector,
        derived={
            "n": n,
            "p": p,
            "d": stab.d,
            "index_invariant": stab.index_invariant,
            "m_divides_index": stab.index_invariant % m == 0,
        },
        expectations={
            "se_metric": True,
            "bp_modulus": bp.order,
            "target_class": ((-1) ** m * k) % bp.order,
        },
    )


def brieskorn_reference(m: int, k: int, sign: int) -> FamilySpec:
    """Brieskorn's reference spheres (2, ..., 2, 3, 6k +- 1) with
    tau/8 = (-1)^m k."""
    if m < 2 or k < 1 or sign not in (1, -1):
        raise ValueError("brieskorn_reference requires m >= 2, k >= 1, sign in {+1, -1}")
    last = 6 * k + sign
    if last < 5:
        raise ValueError(f"6k + sign must be >= 5, got {last}")
    n = 2 * m
    vector = exponent_vector([2] * (n - 1) + [3, last])
    bp = bp_order(m)
    expected_tau = 8 * (-1) ** m * k
    return FamilySpec(
        variant="brieskorn_ref",
        params={"m": m, "k": k, "sign": sign},
        vector=vector,
        derived={"n": n},
        expectations={
            "expected_tau": expected_tau,
            "bp_modulus": bp.order,
            "expected_class": (expected_tau // 8) % bp.order,
        },
    )


@dataclass
class TauFit:
    qp: QuasiPolynomial
    family: dict
    samples: tuple  # (q, p, tau)
    degree_used: int
    verify: Optional[tuple] = field(default=None)  # (q, p, qp value, tau)

    def to_json_dict(self) -> dict:
        out = {
            "family": self.family,
            "samples": [list(s) for s in self.samples],
            "degree_used": self.degree_used,
            "quasi_polynomial": self.qp.to_json_dict(),
        }
        if self.verify is not None:
            out["verify"] = [
                {"p": p, "predicted": str(pred), "actual": act, "match": pred == act}
                for (p, pred, act) in self.verify
            ]
        return out


def fit_exotic_tau(
    m: int,
    k: int,
    l: int,
    samples: int,
    verify: int = 0,
    degree: Optional[int] = None,
    max_degree: Optional[int] = None,
) -> TauFit:
    """Sample tau on the exotic family at p = q*l*(l-1)+2 for q = 1..samples
    and fit a quasi-polynomial of period l*(l-1) on that residue class.

    The degree bound defaults to n = 2m and is raised up to n+2 if the
    samples refuse to fit; held-out verification points (q = samples+1, ...)
    are compared exactly against tau_kernel.
    """
    n = 2 * m
    if degree is None:
        degree = n
    if max_degree is None:
        max_degree = n + 2
    period = l * (l - 1)

    def member_tau(qv: int):
        spec = gen_exotic(m, k, l, qv)
        return spec.derived["p"], tau_kernel(spec.vector).tau

    pts = []
    for qv in range(1, samples + 1):
        p, t = member_tau(qv)
        pts.append((qv, p, t))

    last_err: Optional[Exception] = None
    qp = None
    for deg in range(degree, max_degree + 1):
        try:
            qp = qp_fit([(p, t) for _, p, t in pts], period, deg)
            degree = deg
            break
        except NotQuasiPolynomialError as err:
            last_err = err  # raising the degree may absorb the mismatch
    if qp is None:
        raise RefusalError(
            f"tau samples do not fit a quasi-polynomial up to degree "
            f"{max_degree}: {last_err}"
        )

    verify_rows = None
    if verify > 0:
        held = []
        for qv in range(samples + 1, samples + verify + 1):
            p, t = member_tau(qv)
            held.append((p, t))
        report = qp_verify(qp, dict(held).__getitem__, [p for p, _ in held])
        verify_rows = tuple((x, pred, int(act)) for x, pred, act in report.entries)

    return TauFit(
        qp=qp,
        family={"m": m, "k": k, "l": l, "period": period},
        samples=tuple(pts),
        degree_used=degree,
        verify=verify_rows,
    )
