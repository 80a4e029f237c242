"""Brieskorn-Pham link topology: gcd graph, homotopy-sphere criterion,
Kervaire/Arf classification, and the bP_{4m} class from the signature.

An exponent vector a = (a_0, ..., a_n) with every a_i >= 2 and n >= 3
describes the link of z_0^{a_0} + ... + z_n^{a_n} = 0, a smooth
(2n-1)-manifold.  All criteria here are permutation-invariant, so vectors
are stored sorted ascending.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .arith import BPOrder, bp_order
from .errors import InvariantViolation

__all__ = [
    "ExponentVector",
    "exponent_vector",
    "GcdGraph",
    "build_gcd_graph",
    "SphereClassification",
    "classify_sphere",
    "OddDiffeoClass",
    "EvenDiffeoClass",
    "arf_class",
    "diffeo_class_even",
    "COND1",
    "COND2",
]

ExponentVector = tuple  # sorted tuple of ints, validated by exponent_vector()

# Homotopy-sphere conditions (Brieskorn's trichotomy).
COND1 = "two_isolated_points"
COND2 = "odd_isolated_point_with_ev_component"

# Dimensions 4m+1 where bP_{4m+2} is trivial; 125 is the open Kervaire case.
_TRIVIAL_BP_DIMS = {1, 5, 13, 29, 61}
_OPEN_KERVAIRE_DIM = 125


def exponent_vector(values: Sequence[int]) -> tuple:
    """Validate and normalize an exponent vector: sorted, each entry >= 2,
    length >= 4 (so the link dimension 2n-1 is >= 5)."""
    a = tuple(sorted(int(v) for v in values))
    if len(a) < 4:
        raise ValueError(f"need at least 4 exponents (n >= 3), got {len(a)}")
    if any(v < 2 for v in a):
        raise ValueError(f"every exponent must be >= 2, got {a}")
    return a


@dataclass(frozen=True)
class GcdGraph:
    """Graph on the entries of a; vertices i, j are adjacent iff
    gcd(a_i, a_j) > 1.  Vertices are tracked by index since values repeat."""

    vertices: tuple
    components: tuple  # tuple of sorted index tuples
    isolated: tuple  # indices of isolated vertices
    ev_component: tuple  # indices of the component holding all even entries

    def component_values(self):
        return tuple(tuple(self.vertices[i] for i in comp) for comp in self.components)

    def isolated_values(self):
        return tuple(self.vertices[i] for i in self.isolated)


def build_gcd_graph(a: Sequence[int]) -> GcdGraph:
    a = exponent_vector(a)
    n1 = len(a)
    parent = list(range(n1))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n1):
        for j in range(i + 1, n1):
            if gcd(a[i], a[j]) > 1:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj

    groups: dict[int, list[int]] = {}
    for i in range(n1):
        groups.setdefault(find(i), []).append(i)
    components = tuple(sorted(tuple(sorted(g)) for g in groups.values()))
    isolated = tuple(c[0] for c in components if len(c) == 1)

    ev: tuple = ()
    evens = [i for i in range(n1) if a[i] % 2 == 0]
    if evens:
        root = find(evens[0])
        ev = tuple(sorted(groups[root]))
        # all even entries lie in one component: even-even gcd >= 2
        assert all(find(i) == root for i in evens)
    return GcdGraph(vertices=a, components=components, isolated=isolated, ev_component=ev)


@dataclass(frozen=True)
class SphereClassification:
    is_homotopy_sphere: bool
    condition: Optional[str]  # COND1, COND2, or None
    reason: str
    graph: GcdGraph


def classify_sphere(a: Sequence[int]) -> SphereClassification:
    """Brieskorn's criterion: the link is a homotopy sphere iff the gcd
    graph has (1) at least two isolated points, or (2) a unique odd isolated
    point together with an ev-component of odd size whose pairwise gcds are
    all exactly 2.
    """
    g = build_gcd_graph(a)
    iso = g.isolated
    if len(iso) >= 2:
        return SphereClassification(
            True, COND1, f"{len(iso)} isolated points {g.isolated_values()}", g
        )
    if len(iso) == 1:
        v = g.vertices[iso[0]]
        if v % 2 == 1 and _ev_component_ok(g):
            return SphereClassification(
                True,
                COND2,
                f"unique odd isolated point {v}; ev-component of odd size "
                f"{len(g.ev_component)} with pairwise gcd 2",
                g,
            )
        if v % 2 == 1:
            return SphereClassification(
                False, None, "unique odd isolated point but ev-component fails", g
            )
        return SphereClassification(False, None, "unique isolated point is even", g)
    return SphereClassification(False, None, "no isolated points", g)


def _ev_component_ok(g: GcdGraph) -> bool:
    ev = g.ev_component
    if len(ev) % 2 == 0:  # empty or even size fails
        return False
    vals = [g.vertices[i] for i in ev]
    return all(
        gcd(vals[i], vals[j]) == 2 for i in range(len(vals)) for j in range(i + 1, len(vals))
    )


@dataclass(frozen=True)
class OddDiffeoClass:
    """Diffeomorphism data for odd n (link dimension 4m+1)."""

    arf: int  # 0 or 1
    group: str  # "trivial", "order2", or "open125"
    dimension: int


@dataclass(frozen=True)
class EvenDiffeoClass:
    """Diffeomorphism data for even n (link dimension 4m-1): the class
    tau/8 in the cyclic group bP_{4m}."""

    tau: int
    class_mod_bp: int
    bp: BPOrder

    @property
    def is_standard(self) -> bool:
        return self.class_mod_bp == 0


def arf_class(a: Sequence[int]) -> OddDiffeoClass:
    """Arf/Kervaire classification for odd n.  arf = 1 iff condition (2)
    holds, the isolated point is congruent to +-3 mod 8, and every vertex
    lies in the ev-component or is the isolated point."""
    a = exponent_vector(a)
    n = len(a) - 1
    if n % 2 == 0:
        raise ValueError(f"arf_class requires odd n, got n={n}")
    cls = classify_sphere(a)
    if not cls.is_homotopy_sphere:
        raise ValueError("arf_class requires a homotopy sphere")
    dim = 2 * n - 1  # = 4m+1

    arf = 0
    if cls.condition == COND2:
        g = cls.graph
        a0 = g.vertices[g.isolated[0]]
        covered = set(g.ev_component) | set(g.isolated)
        if a0 % 8 in (3, 5) and covered == set(range(len(a))):
            arf = 1

    if dim in _TRIVIAL_BP_DIMS:
        group = "trivial"
    elif dim == _OPEN_KERVAIRE_DIM:
        group = "open125"
    else:
        group = "order2"
    return OddDiffeoClass(arf=arf, group=group, dimension=dim)


def diffeo_class_even(n: int, tau: int) -> EvenDiffeoClass:
    """Class tau/8 in bP_{4m}, m = n/2.  tau must be divisible by 8 for a
    homotopy sphere; anything else signals a counting bug upstream."""
    if n % 2 != 0 or n < 4:
        raise ValueError(f"diffeo_class_even requires even n >= 4, got {n}")
    if tau % 8 != 0:
        raise InvariantViolation(f"signature {tau} is not divisible by 8")
    order = bp_order(n // 2)
    return EvenDiffeoClass(tau=tau, class_mod_bp=(tau // 8) % order.order, bp=order)
