"""Conjugacy-type endomorphisms and finite-universe center families.

An endomorphism alpha of G has conjugacy type n when alpha(g) is
conjugate to g^n for every g.  Since g^n only depends on n modulo the
exponent of G, types are residues mod exponent(G).  Intersecting the
type sets over a finite universe of groups (residues taken modulo the
lcm of the exponents) gives an upper bound on the family of power
operations that act centrally on every group in that universe.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import numpy as np

from .group_core import (FiniteGroup, GroupHom, centralizer,
                         conjugacy_classes, enumerate_homomorphisms)

__all__ = [
    "ConjugacyTypeResult",
    "centralizer_of_hom",
    "conjugacy_types",
    "band_center_families",
]


@dataclass
class ConjugacyTypeResult:
    group: FiniteGroup
    types: set
    witnesses: dict

    @property
    def modulus(self) -> int:
        return self.group.exponent()


def centralizer_of_hom(alpha: GroupHom) -> tuple:
    """Elements of the target commuting with the whole image of alpha."""
    return centralizer(alpha.target, set(int(x) for x in alpha.images))


def conjugacy_types(G: FiniteGroup) -> ConjugacyTypeResult:
    """All residues n with some endomorphism of conjugacy type n.

    Witness per residue: the first endomorphism (enumeration order)
    realizing it.  Each witness is re-verified element by element
    against the defining condition before being returned.
    """
    exp = G.exponent()
    cls = conjugacy_classes(G).class_of
    P = G.power_table(exp)
    # M[n, g] = class of g^n
    M = cls[P.T]
    types = set()
    witnesses = {}
    for alpha in enumerate_homomorphisms(G, G):
        hit = (M == cls[alpha.images][None, :]).all(axis=1)
        for n in np.nonzero(hit)[0]:
            n = int(n)
            if n not in types:
                types.add(n)
                witnesses[n] = alpha
        if len(types) == exp:
            break
    for n, alpha in witnesses.items():
        for g in range(G.order):
            if cls[alpha(g)] != cls[G.power(g, n)]:
                raise AssertionError(
                    f"witness for type {n} fails at element {g}")
    return ConjugacyTypeResult(group=G, types=types, witnesses=witnesses)


def band_center_families(universe) -> set:
    """Residues mod lcm of exponents admitted by every group.

    An upper bound on the center over this finite universe: residue n
    survives iff each group has an endomorphism of conjugacy type
    n mod exponent(group).
    """
    universe = list(universe)
    if not universe:
        raise ValueError("empty universe")
    results = [conjugacy_types(G) for G in universe]
    L = lcm(*(r.modulus for r in results))
    out = set()
    for n in range(L):
        if all((n % r.modulus) in r.types for r in results):
            out.add(n)
    return out
