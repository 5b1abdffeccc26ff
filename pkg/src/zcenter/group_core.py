"""Exact finite-group arithmetic on full multiplication tables.

Groups are dense objects: an order-n group is an n x n table of element
indices with table[g][h] = g*h.  Everything downstream (conjugacy,
centralizers, quotients, homomorphism enumeration) is a finite, fully
checkable computation over that table.

Element index encodings are part of the external contract:
  * cyclic groups: residues 0..n-1, table[a][b] = a+b mod n;
  * direct products: row-major, (a, b) -> a*|B| + b;
  * symmetric/alternating groups: lexicographic one-line notation.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "FiniteGroup",
    "GroupHom",
    "ConjugacyClassData",
    "make_cyclic",
    "make_trivial",
    "direct_product",
    "make_symmetric",
    "make_alternating",
    "conjugacy_classes",
    "centralizer",
    "center",
    "commutator_subgroup",
    "quotient_group",
    "subgroup",
    "generating_sequence",
    "enumerate_homomorphisms",
    "rep_classes",
    "abelian_invariants",
    "group_from_json",
    "load_group",
    "parse_group_spec",
]

# Above this order a full associativity sweep is replaced by sampling.
FULL_CHECK_ORDER = 512
# Hard memory guard: an order-10000 int32 table is ~400 MB; S8 (40320)
# would need ~6.5 GB and is rejected outright.
MAX_TABLE_ORDER = 10000

_ASSOC_SAMPLES = 20000


class FiniteGroup:
    """A finite group given by a full multiplication table.

    The table is validated on construction: Latin square, two-sided
    identity, inverses, and associativity (all triples for order <= 512,
    a fixed-seed sample above that).
    """

    def __init__(self, table, label: str | None = None,
                 cyclic_factors: tuple[int, ...] | None = None):
        table = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError(f"table must be square, got shape {table.shape}")
        n = table.shape[0]
        if n == 0:
            raise ValueError("empty table")
        if n > MAX_TABLE_ORDER:
            raise ValueError(
                f"table of order {n} exceeds the supported maximum "
                f"{MAX_TABLE_ORDER} (memory guard)")
        if table.min() < 0 or table.max() >= n:
            raise ValueError("table entries out of range")
        self.table = table
        self.order = n
        self.label = label if label is not None else f"order{n}"
        self.cyclic_factors = cyclic_factors
        self.relabeling: np.ndarray | None = None  # set by load_group
        self._validate()
        self._cache: dict[str, object] = {}

    # -- validation ----------------------------------------------------

    def _validate(self):
        T = self.table
        n = self.order
        ar = np.arange(n, dtype=np.int32)
        if not (np.array_equal(np.sort(T, axis=1), np.tile(ar, (n, 1)))
                and np.array_equal(np.sort(T, axis=0), np.tile(ar[:, None], (1, n)))):
            raise ValueError("table is not a Latin square")
        id_rows = np.nonzero((T == ar).all(axis=1))[0]
        ident = None
        for e in id_rows:
            if np.array_equal(T[:, e], ar):
                ident = int(e)
                break
        if ident is None:
            raise ValueError("table has no two-sided identity")
        self.identity = ident
        inv = np.empty(n, dtype=np.int32)
        rows, cols = np.nonzero(T == ident)
        inv[rows] = cols
        # inv[g] is the right inverse; it must also invert from the left
        if not np.array_equal(T[inv, ar], np.full(n, ident)):
            raise ValueError("table has an element without a two-sided inverse")
        self.inverse = inv
        if n <= FULL_CHECK_ORDER:
            for g in range(n):
                if not np.array_equal(T[T[g]], T[g][T]):
                    h, k = np.argwhere(T[T[g]] != T[g][T])[0]
                    raise ValueError(
                        f"associativity fails at ({g},{h},{k})")
        else:
            rng = np.random.default_rng(12345)
            gs = rng.integers(0, n, _ASSOC_SAMPLES)
            hs = rng.integers(0, n, _ASSOC_SAMPLES)
            ks = rng.integers(0, n, _ASSOC_SAMPLES)
            if not np.array_equal(T[T[gs, hs], ks], T[gs, T[hs, ks]]):
                raise ValueError("associativity fails (sampled check)")

    # -- basics --------------------------------------------------------

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inv(self, g: int) -> int:
        return int(self.inverse[g])

    def conj(self, g: int, h: int) -> int:
        """h^-1 * g * h."""
        T = self.table
        return int(T[T[self.inverse[h], g], h])

    def element_orders(self) -> np.ndarray:
        if "orders" not in self._cache:
            n = self.order
            T = self.table
            ar = np.arange(n)
            cur = ar.copy()
            orders = np.zeros(n, dtype=np.int64)
            orders[self.identity] = 1
            k = 1
            while (orders == 0).any():
                k += 1
                cur = T[cur, ar]
                orders[(orders == 0) & (cur == self.identity)] = k
            self._cache["orders"] = orders
        return self._cache["orders"]

    def exponent(self) -> int:
        if "exponent" not in self._cache:
            self._cache["exponent"] = int(np.lcm.reduce(self.element_orders()))
        return self._cache["exponent"]

    def power(self, g: int, k: int) -> int:
        """g**k via square-and-multiply on the table."""
        k %= int(self.element_orders()[g])
        acc = self.identity
        base = g
        while k:
            if k & 1:
                acc = int(self.table[acc, base])
            base = int(self.table[base, base])
            k >>= 1
        return acc

    def power_table(self, upto: int) -> np.ndarray:
        """P[g, k] = g**k for 0 <= k < upto."""
        n = self.order
        P = np.empty((n, upto), dtype=np.int32)
        P[:, 0] = self.identity
        ar = np.arange(n)
        for k in range(1, upto):
            P[:, k] = self.table[P[:, k - 1], ar]
        return P

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __repr__(self):
        return f"FiniteGroup({self.label}, order={self.order})"


@dataclass(eq=False)
class ConjugacyClassData:
    """Orbit partition of a group under conjugation."""
    class_of: np.ndarray        # element -> class index
    representatives: np.ndarray  # class index -> minimal element index
    class_sizes: np.ndarray

    @property
    def count(self) -> int:
        return len(self.representatives)


class GroupHom:
    """A verified homomorphism given by its full image array."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images,
                 validate: bool = True):
        self.source = source
        self.target = target
        self.images = np.asarray(images, dtype=np.int32)
        if len(self.images) != source.order:
            raise ValueError("images array has wrong length")
        if validate:
            if self.images[source.identity] != target.identity:
                raise ValueError("hom does not preserve the identity")
            if not _is_hom(source, target, self.images):
                raise ValueError("images do not define a homomorphism")

    def __call__(self, g: int) -> int:
        return int(self.images[g])

    def key(self) -> tuple:
        return tuple(int(x) for x in self.images)

    def __repr__(self):
        return (f"GroupHom({self.source.label}->{self.target.label}, "
                f"{self.key()})")


def _is_hom(G: FiniteGroup, H: FiniteGroup, images: np.ndarray) -> bool:
    lhs = images[G.table]
    rhs = H.table[images[:, None], images[None, :]]
    return bool(np.array_equal(lhs, rhs))


# -- constructors ------------------------------------------------------

def make_trivial() -> FiniteGroup:
    return FiniteGroup([[0]], label="C1", cyclic_factors=(1,))


def make_cyclic(n: int) -> FiniteGroup:
    """Z/n with table[a][b] = a+b mod n."""
    if n < 1:
        raise ValueError(f"cyclic group order must be >= 1, got {n}")
    ar = np.arange(n, dtype=np.int32)
    table = (ar[:, None] + ar[None, :]) % n
    return FiniteGroup(table, label=f"C{n}", cyclic_factors=(n,))


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """Componentwise product; element (a, b) gets index a*|B| + b."""
    m = B.order
    TA = np.repeat(np.repeat(A.table, m, axis=0), m, axis=1).astype(np.int64)
    TB = np.tile(B.table, (A.order, A.order))
    table = TA * m + TB
    factors = None
    if A.cyclic_factors is not None and B.cyclic_factors is not None:
        factors = A.cyclic_factors + B.cyclic_factors
    return FiniteGroup(table, label=f"{A.label}x{B.label}",
                       cyclic_factors=factors)


def _perm_group(perms: list[tuple[int, ...]], label: str) -> FiniteGroup:
    m = len(perms[0])
    P = np.array(perms, dtype=np.int64)
    n = len(P)
    weights = (m + 1) ** np.arange(m, dtype=np.int64)
    keys = P @ weights
    order = np.argsort(keys)
    sorted_keys = keys[order]
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        comp = P[i][P]            # (p_i o p_j)(x) = p_i(p_j(x))
        ck = comp @ weights
        table[i] = order[np.searchsorted(sorted_keys, ck)]
    return FiniteGroup(table, label=label)


def make_symmetric(m: int) -> FiniteGroup:
    """S(m), elements in lexicographic one-line order."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if m > 8:
        raise ValueError(f"S({m}) exceeds the m <= 8 bound")
    if math.factorial(m) > MAX_TABLE_ORDER:
        raise ValueError(
            f"S({m}) has order {math.factorial(m)}; its table exceeds the "
            f"memory guard ({MAX_TABLE_ORDER})")
    perms = list(itertools.permutations(range(m)))
    return _perm_group(perms, f"S{m}")


def _parity(p: tuple[int, ...]) -> int:
    inv = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                inv += 1
    return inv & 1


def make_alternating(m: int) -> FiniteGroup:
    """A(m): even permutations, lexicographic one-line order."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if m > 8:
        raise ValueError(f"A({m}) exceeds the m <= 8 bound")
    if math.factorial(m) // 2 > MAX_TABLE_ORDER:
        raise ValueError(
            f"A({m}) has order {math.factorial(m) // 2}; its table exceeds "
            f"the memory guard ({MAX_TABLE_ORDER})")
    if m == 1:
        return FiniteGroup([[0]], label="A1")
    perms = [p for p in itertools.permutations(range(m)) if _parity(p) == 0]
    return _perm_group(perms, f"A{m}")


# -- conjugacy, centralizers, subgroups --------------------------------

def conjugacy_classes(G: FiniteGroup) -> ConjugacyClassData:
    """Conjugation orbits; representative = minimal index in each class."""
    if "conjugacy" in G._cache:
        return G._cache["conjugacy"]
    n = G.order
    T = G.table
    inv = G.inverse
    class_of = np.full(n, -1, dtype=np.int32)
    reps = []
    sizes = []
    for g in range(n):
        if class_of[g] >= 0:
            continue
        orbit = np.unique(T[T[inv, g], np.arange(n)])
        class_of[orbit] = len(reps)
        reps.append(g)
        sizes.append(len(orbit))
    data = ConjugacyClassData(class_of,
                              np.array(reps, dtype=np.int32),
                              np.array(sizes, dtype=np.int64))
    G._cache["conjugacy"] = data
    return data


def centralizer(G: FiniteGroup, S) -> tuple[int, ...]:
    """{h : hs = sh for all s in S}, as a sorted element tuple."""
    S = sorted(set(int(s) for s in S))
    if not S:
        raise ValueError("centralizer of an empty set is not defined here")
    T = G.table
    mask = np.ones(G.order, dtype=bool)
    for s in S:
        mask &= T[:, s] == T[s, :]
    return tuple(int(x) for x in np.nonzero(mask)[0])


def center(G: FiniteGroup) -> tuple[int, ...]:
    """Elements commuting with everything."""
    mask = (G.table == G.table.T).all(axis=1)
    return tuple(int(x) for x in np.nonzero(mask)[0])


def _closure(G: FiniteGroup, seed) -> tuple[int, ...]:
    """Subgroup generated by seed, as a sorted element tuple.

    Fixpoint of S -> S u S*S; in a finite group that already forces
    inverses and the identity.
    """
    elems = np.unique(np.concatenate(
        [[G.identity], np.asarray(list(seed), dtype=np.int64).ravel()]
    ).astype(np.int64))
    while True:
        prods = np.unique(G.table[np.ix_(elems, elems)])
        merged = np.unique(np.concatenate([elems, prods]))
        if len(merged) == len(elems):
            return tuple(int(x) for x in merged)
        elems = merged


def commutator_subgroup(G: FiniteGroup) -> tuple[int, ...]:
    """Closure of all g h g^-1 h^-1."""
    T = G.table
    inv = G.inverse
    n = G.order
    g = np.arange(n)[:, None]
    h = np.arange(n)[None, :]
    comm = T[T[T[g, h], inv[g]], inv[h]]
    return _closure(G, np.unique(comm))


def subgroup(G: FiniteGroup, elements) -> tuple[FiniteGroup, np.ndarray]:
    """Reindex a closed element subset as a group of its own.

    Returns (H, embed) with embed[i] = the G-index of H's element i.
    Elements are sorted ascending, so G's identity lands at H-index 0
    whenever it is G-index 0.
    """
    elems = sorted(set(int(x) for x in elements))
    if G.identity not in elems:
        raise ValueError("subset does not contain the identity")
    embed = np.array(elems, dtype=np.int32)
    pos = np.full(G.order, -1, dtype=np.int32)
    pos[embed] = np.arange(len(elems), dtype=np.int32)
    sub_table = pos[G.table[np.ix_(embed, embed)]]
    if (sub_table < 0).any():
        a, b = np.argwhere(sub_table < 0)[0]
        raise ValueError(
            f"subset not closed: {elems[a]}*{elems[b]} falls outside it")
    H = FiniteGroup(sub_table, label=f"{G.label}-sub{len(elems)}")
    return H, embed


def quotient_group(G: FiniteGroup, normal) -> tuple[FiniteGroup, GroupHom]:
    """Quotient by a normal subgroup, with the projection hom.

    Cosets are indexed by their minimal element, in ascending order, so
    the identity coset is index 0.
    """
    N = sorted(set(int(x) for x in normal))
    subgroup(G, N)  # closure/identity validation
    T = G.table
    inv = G.inverse
    Na = np.array(N, dtype=np.int32)
    for g in range(G.order):
        conj = T[T[inv[g], Na], g]
        outside = ~np.isin(conj, Na)
        if outside.any():
            bad = int(Na[np.nonzero(outside)[0][0]])
            raise ValueError(
                f"subgroup is not normal: witness pair (g={g}, n={bad}) "
                f"with g^-1*n*g = {int(T[T[inv[g], bad], g])} outside")
    coset_rep = T[:, Na].min(axis=1)
    reps = np.unique(coset_rep)
    coset_index = np.full(G.order, -1, dtype=np.int32)
    coset_index[reps] = np.arange(len(reps), dtype=np.int32)
    proj = coset_index[coset_rep]
    q_table = proj[T[np.ix_(reps, reps)]]
    Q = FiniteGroup(q_table, label=f"{G.label}/N{len(N)}")
    hom = GroupHom(G, Q, proj)
    return Q, hom


# -- generating sequences and homomorphisms ----------------------------

def generating_sequence(G: FiniteGroup) -> list[int]:
    """Greedy minimal generating sequence (scan elements ascending)."""
    if G.order == 1:
        return []
    gens: list[int] = []
    current = {G.identity}
    for g in range(G.order):
        if g in current:
            continue
        gens.append(g)
        current = set(_closure(G, gens))
        if len(current) == G.order:
            break
    return gens


def _bfs_order(G: FiniteGroup, gens: list[int]):
    """Spanning construction: each element as parent*generator."""
    T = G.table
    seen = {G.identity}
    steps = []  # (element, parent, gen_position)
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for gi, s in enumerate(gens):
                y = int(T[x, s])
                if y not in seen:
                    seen.add(y)
                    steps.append((y, x, gi))
                    nxt.append(y)
        frontier = nxt
    if len(seen) != G.order:
        raise ValueError("generating sequence does not generate the group")
    return steps


def enumerate_homomorphisms(G: FiniteGroup, H: FiniteGroup) -> list[GroupHom]:
    """All homomorphisms G -> H, lexicographic in generator images.

    Backtracks over images of a greedy generating sequence, pruned by
    element-order divisibility on generators and their pairwise
    products; every candidate is verified against the full table.
    """
    if G.order > FULL_CHECK_ORDER:
        raise ValueError(
            f"|G| = {G.order} exceeds the {FULL_CHECK_ORDER} enumeration bound")
    gens = generating_sequence(G)
    if len(gens) > 5:
        raise ValueError(
            f"greedy generating sequence has length {len(gens)} > 5; "
            "enumeration declined")
    if not gens:
        images = np.full(1, H.identity, dtype=np.int32)
        return [GroupHom(G, H, images, validate=False)]

    ordG = G.element_orders()
    ordH = H.element_orders()
    steps = _bfs_order(G, gens)
    TG, TH = G.table, H.table
    k = len(gens)
    cand = [np.nonzero(ordG[g] % ordH == 0)[0].astype(np.int32) for g in gens]
    # pairwise filter: order of phi(g_a)phi(g_b) must divide order of g_a g_b
    pair_ok = {}
    for a in range(k):
        for b in range(k):
            o = ordG[TG[gens[a], gens[b]]]
            pair_ok[(a, b)] = (o % ordH[TH] == 0)

    out: list[GroupHom] = []
    phi = np.empty(G.order, dtype=np.int32)
    phi[G.identity] = H.identity
    choice = [0] * k

    def descend(level: int):
        if level == k:
            for (y, x, gi) in steps:
                phi[y] = TH[phi[x], choice[gi]]
            if _is_hom(G, H, phi):
                out.append(GroupHom(G, H, phi.copy(), validate=False))
            return
        for h in cand[level]:
            ok = True
            for a in range(level):
                if not (pair_ok[(a, level)][choice[a], h]
                        and pair_ok[(level, a)][h, choice[a]]):
                    ok = False
                    break
            if not ok:
                continue
            choice[level] = int(h)
            descend(level + 1)

    descend(0)
    return out


def rep_classes(G: FiniteGroup, H: FiniteGroup) -> list[list[GroupHom]]:
    """Hom(G,H) partitioned into H-conjugacy classes."""
    homs = enumerate_homomorphisms(G, H)
    by_key = {hom.key(): i for i, hom in enumerate(homs)}
    TH, invH = H.table, H.inverse
    assigned = [-1] * len(homs)
    classes: list[list[GroupHom]] = []
    for i, hom in enumerate(homs):
        if assigned[i] >= 0:
            continue
        cls = []
        for h in range(H.order):
            conj = TH[TH[h, hom.images], invH[h]]
            j = by_key[tuple(int(x) for x in conj)]
            if assigned[j] < 0:
                assigned[j] = len(classes)
                cls.append(homs[j])
        classes.append(cls)
    return classes


# -- abelian invariants ------------------------------------------------

def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def abelian_invariants(G: FiniteGroup) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of an abelian group.

    Recovered from element-order statistics: for each prime p the
    partition of the p-part is the conjugate of k -> log_p #{x : x^(p^k)=e}.
    """
    if not G.is_abelian():
        raise ValueError("abelian_invariants needs an abelian group")
    n = G.order
    if n == 1:
        return []
    parts_by_prime = {}
    for p in _prime_factors(n):
        pmap = _power_map(G, p)
        cur = np.arange(n, dtype=np.int32)
        logs = [0]
        while True:
            cur = pmap[cur]
            cnt = int((cur == G.identity).sum())
            e = 0  # cnt is exactly a power of p
            c = cnt
            while c > 1:
                c //= p
                e += 1
            logs.append(e)
            if cnt == _p_part(n, p):
                break
        # logs[k] = sum_i min(lambda_i, k); its increments give the
        # conjugate partition, so transpose back.
        conj = [logs[i] - logs[i - 1] for i in range(1, len(logs))]
        parts = []
        for idx in range(conj[0]):
            parts.append(sum(1 for c in conj if c > idx))
        parts.sort(reverse=True)
        parts_by_prime[p] = parts
    r = max(len(v) for v in parts_by_prime.values())
    factors = []
    for i in range(r):
        d = 1
        for p, parts in parts_by_prime.items():
            if i < len(parts):
                d *= p ** parts[i]
        factors.append(d)
    factors = [d for d in factors if d > 1]
    return sorted(factors)  # ascending divisibility chain


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def _coprime_part(n: int, p: int) -> int:
    return n // _p_part(n, p)


def _power_map(G: FiniteGroup, p: int) -> np.ndarray:
    """Array g -> g**p."""
    cur = np.full(G.order, G.identity, dtype=np.int32)
    ar = np.arange(G.order)
    for _ in range(p):
        cur = G.table[cur, ar]
    return cur


# -- file format and CLI group specs -----------------------------------

def group_from_json(data: dict, label: str | None = None
                    ) -> tuple[FiniteGroup, np.ndarray | None]:
    """Build a group from {"order", "table", "label"} JSON data.

    The identity is normalized to index 0; when the input had it
    elsewhere, the applied relabeling (old index -> new index) is
    returned alongside the group.
    """
    if not isinstance(data, dict):
        raise ValueError("group JSON must be an object")
    for key in ("order", "table"):
        if key not in data:
            raise ValueError(f"group JSON missing field {key!r}")
    n = data["order"]
    table = data["table"]
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"bad group order {n!r}")
    if len(table) != n or any(len(row) != n for row in table):
        raise ValueError("group table shape does not match its order")
    lbl = label or data.get("label") or f"file-order{n}"
    G = FiniteGroup(table, label=lbl)
    if G.identity == 0:
        return G, None
    e = G.identity
    new_order = [e] + [g for g in range(n) if g != e]
    relabel = np.empty(n, dtype=np.int32)
    for new, old in enumerate(new_order):
        relabel[old] = new
    T = np.asarray(table, dtype=np.int32)
    new_table = relabel[T[np.ix_(new_order, new_order)]]
    G2 = FiniteGroup(new_table, label=lbl)
    G2.relabeling = relabel
    return G2, relabel


def load_group(path: str) -> tuple[FiniteGroup, np.ndarray | None]:
    """Load a group table file (JSON)."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return group_from_json(data)


_SPEC_RE = re.compile(r"^(C\d+(?:xC\d+)*|S\d+|A\d+)$")


def parse_group_spec(spec: str) -> FiniteGroup:
    """Parse a CLI group spec: C<n>, C<a>xC<b>..., S<m>, A<m>, file:<path>."""
    spec = spec.strip()
    if spec.startswith("file:"):
        G, relabel = load_group(spec[5:])
        return G
    m = _SPEC_RE.match(spec)
    if not m:
        raise ValueError(
            f"unrecognized group spec {spec!r} "
            "(expected C<n>, C<a>xC<b>..., S<m>, A<m>, or file:<path>)")
    if spec[0] == "S":
        return make_symmetric(int(spec[1:]))
    if spec[0] == "A":
        return make_alternating(int(spec[1:]))
    parts = [int(p[1:]) for p in spec.split("x")]
    G = make_cyclic(parts[0])
    for n in parts[1:]:
        G = direct_product(G, make_cyclic(n))
    G.label = spec
    return G
