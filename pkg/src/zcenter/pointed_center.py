"""Center invariants of a finite group with an associator 3-cocycle.

Simple objects are indexed by group elements, the tensor product is
X_g (x) X_h = X_{gh}, and the associator on (X_g, X_h, X_k) is
zeta^{omega(g,h,k)}.  An object decomposes over conjugacy classes; the
class sums are the central elements of the fusion ring.  Whether a sum
with multiplicities (a_i) admits a central structure, and in how many
inequivalent ways, reduces per class to representation counts of the
twisted centralizer algebra K^{gamma_i} C_G(g_i), where gamma_i is the
2-cocycle obstruction cut out of omega at the class representative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cohomology import (CohomologyClassVerdict, Cochain, embed_modulus,
                         gamma, is_cocycle, is_coboundary)
from .group_core import (FiniteGroup, abelian_invariants, centralizer,
                         commutator_subgroup, conjugacy_classes,
                         quotient_group, subgroup)
from .twisted_rep import TwistedGroupAlgebra, irrep_profile, regular_classes

__all__ = [
    "PointedCategory",
    "CentralObjectSpec",
    "ObstructionResult",
    "CenterReport",
    "e2_00_basis",
    "e_page_report",
    "center_report",
    "obstruction",
    "lift_count",
    "kernel_of_characteristic",
    "count_simple_central_objects",
    "report_to_json",
]


class PointedCategory:
    """A finite group together with a degree-3 associator cocycle."""

    def __init__(self, group: FiniteGroup, omega: Cochain):
        if omega.degree != 3:
            raise ValueError("associator must be a degree-3 cochain")
        if omega.group is not group:
            raise ValueError("associator is defined on a different group")
        verdict = is_cocycle(omega)
        if not verdict.is_cocycle:
            from .cohomology import CocycleError
            raise CocycleError(
                "associator fails the cocycle identity at "
                f"{verdict.failure_certificate}",
                certificate=verdict.failure_certificate)
        self.group = group
        self.omega = omega
        self.modulus = omega.modulus
        self._algebras = {}

    def class_algebra(self, i: int) -> TwistedGroupAlgebra:
        """K^{gamma_i} C_G(g_i) for the i-th conjugacy class."""
        if i in self._algebras:
            return self._algebras[i]
        cc = conjugacy_classes(self.group)
        if not 0 <= i < cc.count:
            raise ValueError(f"class index {i} out of range (0..{cc.count - 1})")
        g = int(cc.representatives[i])
        H, embed = subgroup(self.group, centralizer(self.group, [g]))
        omega_H = self.omega.restrict(H, embed)
        z_H = int((embed == g).nonzero()[0][0])
        alg = TwistedGroupAlgebra(H, gamma(omega_H, z_H))
        self._algebras[i] = alg
        return alg

    def __repr__(self):
        return f"PointedCategory({self.group.label}, N={self.modulus})"


@dataclass(frozen=True)
class CentralObjectSpec:
    """Multiplicity a_i for each conjugacy class sum."""

    multiplicities: tuple

    @classmethod
    def unit(cls, class_count: int, i: int, multiplicity: int = 1):
        m = [0] * class_count
        m[i] = multiplicity
        return cls(tuple(m))

    def support(self):
        return [i for i, a in enumerate(self.multiplicities) if a]


@dataclass
class ObstructionResult:
    class_index: int
    representative: int
    gamma: Cochain
    verdict: CohomologyClassVerdict

    @property
    def vanishes(self) -> bool:
        return bool(self.verdict.is_coboundary)


@dataclass
class CenterReport:
    group_label: str
    modulus: int
    e_pages: dict
    obstructions: list
    kernel_invariant_factors: tuple
    lifts: list = field(default_factory=list)
    simple_central_objects: int | None = None


def e2_00_basis(C: PointedCategory):
    """The conjugacy class sums, one unit spec per class."""
    cc = conjugacy_classes(C.group)
    return [CentralObjectSpec.unit(cc.count, i) for i in range(cc.count)]


def obstruction(C: PointedCategory, i: int) -> ObstructionResult:
    """gamma at the i-th class representative on its centralizer.

    "Vanishes" means the class dies over the full unit group K^x, not
    merely mod N: the coboundary equation is solved with the witness
    allowed values in mu_{N*exponent}, which is always enough room.
    (Deciding only mod N overstates obstructions, e.g. the symmetric
    cocycle gamma(1,1) = zeta_2 on C2 is killed by phi(1) = zeta_4.)
    """
    alg = C.class_algebra(i)
    cc = conjugacy_classes(C.group)
    gam = alg.cocycle
    enlarged = embed_modulus(gam, gam.modulus * alg.group.exponent())
    return ObstructionResult(
        class_index=i,
        representative=int(cc.representatives[i]),
        gamma=gam,
        verdict=is_coboundary(enlarged))


def lift_count(C: PointedCategory, spec: CentralObjectSpec) -> int:
    """Central structures on sum_i a_i Y_i: product of per-class counts."""
    cc = conjugacy_classes(C.group)
    mult = spec.multiplicities
    if len(mult) != cc.count:
        raise ValueError(
            f"spec length {len(mult)} != class count {cc.count}")
    total = 1
    for i, a in enumerate(mult):
        if a < 0:
            raise ValueError("multiplicities must be non-negative")
        if a == 0:
            continue
        total *= irrep_profile(C.class_algebra(i)).count_of_dim(a)
        if total == 0:
            break
    return total


def kernel_of_characteristic(C: PointedCategory) -> tuple:
    """Invariant factors of Hom(G, Z/N), the characters of the grading group."""
    G = C.group
    if not G.is_abelian():
        G, _ = quotient_group(G, commutator_subgroup(G))
    factors = [math.gcd(d, C.modulus) for d in abelian_invariants(G)]
    return tuple(d for d in factors if d > 1)


def count_simple_central_objects(C: PointedCategory) -> int:
    """Simple lifts: one class with one irreducible each."""
    cc = conjugacy_classes(C.group)
    return sum(len(regular_classes(C.class_algebra(i)))
               for i in range(cc.count))


def _e_pages(C: PointedCategory) -> dict:
    G = C.group
    cc = conjugacy_classes(G)
    n = G.order
    kernel = kernel_of_characteristic(C)
    order = 1
    for d in kernel:
        order *= d
    return {
        "e1_00": {"descriptor":
                  "free commutative monoid on the simple objects",
                  "rank": n},
        "e1_01": {"descriptor": "K^x", "rank": 1},
        "e1_11": {"descriptor": "units per simple object", "rank": n},
        "e1_21": {"descriptor": "units per pair of simple objects",
                  "rank": n * n},
        "e2_00": {"descriptor": "central class sums",
                  "basis": [{"class": i,
                             "representative": int(cc.representatives[i]),
                             "size": int(cc.class_sizes[i])}
                            for i in range(cc.count)]},
        "e2_01": {"descriptor": "K^x", "rank": 1},
        "e2_11": {"descriptor": "characters of the universal grading group",
                  "invariant_factors": list(kernel),
                  "order": order},
        "universal_grading": "G",
    }


def e_page_report(C: PointedCategory) -> CenterReport:
    """Page terms, per-class obstructions, kernel; no lift table."""
    cc = conjugacy_classes(C.group)
    return CenterReport(
        group_label=C.group.label or "?",
        modulus=C.modulus,
        e_pages=_e_pages(C),
        obstructions=[obstruction(C, i) for i in range(cc.count)],
        kernel_invariant_factors=kernel_of_characteristic(C))


def center_report(C: PointedCategory, specs=None) -> CenterReport:
    """Full report; default lift table covers the class-sum basis."""
    report = e_page_report(C)
    if specs is None:
        specs = e2_00_basis(C)
    report.lifts = [(spec, lift_count(C, spec)) for spec in specs]
    report.simple_central_objects = count_simple_central_objects(C)
    return report


def report_to_json(report: CenterReport) -> dict:
    return {
        "group": report.group_label,
        "modulus": report.modulus,
        "e_pages": report.e_pages,
        "obstructions": [{"class": o.class_index,
                          "representative": o.representative,
                          "vanishes": o.vanishes}
                         for o in report.obstructions],
        "kernel_char": {"invariant_factors":
                        list(report.kernel_invariant_factors)},
        "lifts": [{"spec": list(spec.multiplicities), "count": count}
                  for spec, count in report.lifts],
        "simple_central_objects": report.simple_central_objects,
    }
