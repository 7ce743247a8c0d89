"""Normalized 2-cocycles on finite abelian groups with root-of-unity values.

A coefficient value is stored as an exponent k in Z/m, standing for the root
of unity e^{2 pi i k/m}.  All tables are written additively in these
exponents; the identities below are the multiplicative ones of the glossary:

    cocycle:     c(ab, d) + c(a, b) = c(a, bd) + c(b, d)        (mod m)
    coboundary:  (df)(a, b) = f(ab) - f(a) - f(b)               (mod m)

H^2 is computed by honest enumeration: candidate tables are generated from
their values on generator columns (which determine the rest through the
cocycle identity), then every candidate is verified on all |G|^3 triples,
and coboundary cosets are struck out to leave one lexicographically least
representative per class.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (MalformedInput, NotACocycle, NotASubgroup, NotNormalized,
                     ScaleExceeded)
from .scalars import Cyclotomic, FractionalWeight, root_of_unity

DEFAULT_MAX_ORDER = 24
DEFAULT_MAX_CANDIDATES = 2 ** 21  # covers cyclic groups up to |G| = m = 8

SCALE_ENV_VAR = "ORBIPAR_SCALE_BOUND"


def scale_bound(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get(SCALE_ENV_VAR)
    return int(env) if env else DEFAULT_MAX_CANDIDATES


class FiniteAbelianGroup:
    """Direct sum of cyclic groups Z/n_1 x ... x Z/n_t; elements are exponent tuples.

    Elements are indexed in lexicographic (row-major) order, so index 0 is the
    identity.  The full product table is precomputed; groups are desk scale.
    """

    def __init__(self, cyclic_factors, max_order: int = DEFAULT_MAX_ORDER):
        factors = tuple(int(n) for n in cyclic_factors)
        if any(n < 1 for n in factors):
            raise MalformedInput(f"bad cyclic factors {factors}")
        order = 1
        for n in factors:
            order *= n
        if order > max_order:
            raise ScaleExceeded(f"group order {order} exceeds bound {max_order}")
        self.factors = factors
        self.order = order
        self.elements = [tuple(idx) for idx in np.ndindex(*factors)] if factors else [()]
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = self.order
        self.prod = np.zeros((n, n), dtype=np.int64)
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                self.prod[i, j] = self.index[self.add(a, b)]
        self.prod.flags.writeable = False

    def add(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.factors))

    def neg(self, a):
        return tuple((-x) % n for x, n in zip(a, self.factors))

    @property
    def identity(self):
        return self.elements[0]

    def element_order(self, a) -> int:
        cur, k = a, 1
        while any(cur):
            cur = self.add(cur, a)
            k += 1
        return k

    def generators(self):
        """The standard basis elements, one per cyclic factor of size > 1."""
        gens = []
        for j, n in enumerate(self.factors):
            if n > 1:
                gens.append(tuple(1 if i == j else 0 for i in range(len(self.factors))))
        return gens

    def powers(self, a):
        """[identity, a, a^2, ...] up to the order of a."""
        out = [self.identity]
        cur = a
        while any(cur):
            out.append(cur)
            cur = self.add(cur, a)
        return out

    def is_cyclic(self) -> bool:
        return any(self.element_order(e) == self.order for e in self.elements)

    def cyclic_subgroup_elements(self, d: int):
        """Elements of the unique order-d subgroup of a cyclic group."""
        if self.order % d != 0:
            raise MalformedInput(f"{d} does not divide {self.order}")
        gen = next(e for e in self.elements if self.element_order(e) == self.order)
        step = tuple((x * (self.order // d)) % n for x, n in zip(gen, self.factors))
        return self.powers(step)

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and self.factors == other.factors

    def __repr__(self):
        return f"FiniteAbelianGroup{self.factors}"


@dataclass(frozen=True)
class CoefficientGroup:
    """Cyclic group of m-th roots of unity with trivial group action."""

    order: int

    def weight(self, k: int) -> FractionalWeight:
        return FractionalWeight(Fraction(k % self.order, self.order))

    def value(self, k: int) -> Cyclotomic:
        return root_of_unity(Fraction(k % self.order, self.order), self.order)


class Cochain2:
    """A normalized 2-cochain: total table G x G -> Z/m with identity rows zero.

    Only normalized cochains are representable; construction raises if the
    identity row or column is nonzero.
    """

    def __init__(self, group: FiniteAbelianGroup, coefficients: CoefficientGroup, table):
        table = np.asarray(table, dtype=np.int64) % coefficients.order
        n = group.order
        if table.shape != (n, n):
            raise MalformedInput(f"table shape {table.shape}, expected {(n, n)}")
        if table[0, :].any() or table[:, 0].any():
            raise NotNormalized("c(gamma, 1) and c(1, gamma) must equal 1")
        self.group = group
        self.coefficients = coefficients
        self.table = table
        self.table.flags.writeable = False

    @classmethod
    def trivial(cls, group, m: int):
        return cls(group, CoefficientGroup(m), np.zeros((group.order, group.order), dtype=np.int64))

    def value(self, a, b) -> int:
        return int(self.table[self.group.index[a], self.group.index[b]])

    def mul(self, other: "Cochain2") -> "Cochain2":
        _check_compatible(self, other)
        return Cochain2(self.group, self.coefficients, (self.table + other.table))

    def __eq__(self, other):
        return (isinstance(other, Cochain2) and self.group == other.group
                and self.coefficients == other.coefficients
                and np.array_equal(self.table, other.table))

    def key(self):
        return tuple(int(x) for x in self.table.reshape(-1))

    def __repr__(self):
        return f"Cochain2({self.group}, m={self.coefficients.order})"


def _check_compatible(c1: Cochain2, c2: Cochain2):
    if c1.group != c2.group or c1.coefficients.order != c2.coefficients.order:
        raise MalformedInput("cochains live over different (group, coefficients)")


@dataclass(frozen=True)
class CocycleVerdict:
    ok: bool
    witness: tuple | None  # first violating (a, b, d) on failure

    def __bool__(self):
        return self.ok


def is_cocycle(c: Cochain2) -> CocycleVerdict:
    """Check c(ab,d) c(a,b) = c(a,bd) c(b,d) on every triple."""
    g, t, m = c.group, c.table, c.coefficients.order
    n = g.order
    p = g.prod
    i, j, k = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    lhs = (t[p[i, j], k] + t[i, j] - t[i, p[j, k]] - t[j, k]) % m
    bad = np.argwhere(lhs != 0)
    if bad.size:
        a, b, d = bad[0]
        return CocycleVerdict(False, (g.elements[a], g.elements[b], g.elements[d]))
    return CocycleVerdict(True, None)


def coboundary(group: FiniteAbelianGroup, m: int, f) -> Cochain2:
    """The 2-cocycle (a,b) -> f(ab) f(a)^-1 f(b)^-1 for a 1-cochain f with f(1)=1.

    f is given as exponents in Z/m, one per element in canonical order.
    """
    f = np.asarray(f, dtype=np.int64) % m
    if f.shape != (group.order,):
        raise MalformedInput(f"need {group.order} values for f")
    if f[0] != 0:
        raise MalformedInput("f(1) must equal 1")
    table = (f[group.prod] - f[:, None] - f[None, :]) % m
    return Cochain2(group, CoefficientGroup(m), table)


def are_cohomologous(c1: Cochain2, c2: Cochain2, max_candidates: int | None = None):
    """Search all m^(|G|-1) normalized f for c2 = (df) * c1; returns (bool, f|None)."""
    _check_compatible(c1, c2)
    for c in (c1, c2):
        v = is_cocycle(c)
        if not v:
            raise NotACocycle(f"cocycle condition fails at {v.witness}")
    g, m = c1.group, c1.coefficients.order
    n = g.order
    bound = scale_bound(max_candidates)
    total = m ** (n - 1)
    if total > bound:
        raise ScaleExceeded(f"{total} candidate 1-cochains exceed bound {bound}")
    diff = (c2.table - c1.table) % m
    for fs, tables in _coboundary_batches(g, m):
        hit = np.nonzero((tables == diff).all(axis=(1, 2)))[0]
        if hit.size:
            f = [0] + [int(x) for x in fs[hit[0]]]
            return True, f
    return False, None


def _mixed_radix(count: int, digits: int, base: int, start: int):
    """Rows start..start+count of all base^digits tuples, lexicographic."""
    out = np.zeros((count, digits), dtype=np.int64)
    idx = np.arange(start, start + count)
    for d in range(digits - 1, -1, -1):
        out[:, d] = idx % base
        idx //= base
    return out


_CHUNK = 1 << 15


def _coboundary_batches(g: FiniteAbelianGroup, m: int):
    """Yield (f-values, coboundary tables) over all normalized f, in chunks."""
    n = g.order
    total = m ** (n - 1)
    for start in range(0, total, _CHUNK):
        count = min(_CHUNK, total - start)
        fs = _mixed_radix(count, n - 1, m, start)
        f_full = np.concatenate([np.zeros((count, 1), dtype=np.int64), fs], axis=1)
        tables = (f_full[:, g.prod] - f_full[:, :, None] - f_full[:, None, :]) % m
        yield fs, tables


def _cocycle_batches(g: FiniteAbelianGroup, m: int, max_candidates: int | None):
    """Enumerate Z^2(G, Z/m) by seeding generator columns and verifying.

    A normalized 2-cochain is determined by its generator columns through
    c(a, p+g) = c(a+p, g) + c(a, p) - c(p, g); every derived table is then
    checked against the full cocycle identity, so the output is exactly the
    set of cocycles.
    """
    n = g.order
    gens = g.generators()
    t = len(gens)
    seeds_total = m ** (t * (n - 1)) if n > 1 else 1
    bound = scale_bound(max_candidates)
    if seeds_total > bound:
        raise ScaleExceeded(f"{seeds_total} candidate tables exceed bound {bound}")
    if n == 1:
        yield np.zeros((1, 1, 1), dtype=np.int64)
        return

    gen_idx = [g.index[x] for x in gens]
    # fill order: by total exponent, so each element e = p + gen with p earlier
    order = sorted(range(n), key=lambda i: (sum(g.elements[i]), g.elements[i]))
    decomp = {}
    for i in order:
        e = g.elements[i]
        if sum(e) < 2 or i in gen_idx:
            continue
        j = max(k for k, x in enumerate(e) if x)
        gen = tuple(1 if k == j else 0 for k in range(len(e)))
        p = tuple(x - (1 if k == j else 0) for k, x in enumerate(e))
        decomp[i] = (g.index[p], g.index[gen])

    p_tab = g.prod
    I, J, K = [a.reshape(-1) for a in
               np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")]
    PIJ, PJK = p_tab[I, J], p_tab[J, K]

    for start in range(0, seeds_total, _CHUNK):
        count = min(_CHUNK, seeds_total - start)
        seeds = _mixed_radix(count, t * (n - 1), m, start)
        T = np.zeros((count, n, n), dtype=np.int64)
        for jg, gi in enumerate(gen_idx):
            T[:, 1:, gi] = seeds[:, jg * (n - 1):(jg + 1) * (n - 1)]
        for i in order:
            if i not in decomp:
                continue
            pi, gi = decomp[i]
            T[:, :, i] = (T[np.arange(count)[:, None], p_tab[:, pi][None, :], gi]
                          + T[:, :, pi] - T[:, pi, gi][:, None]) % m
        lhs = (T[:, PIJ, K] + T[:, I, J] - T[:, I, PJK] - T[:, J, K]) % m
        good = (lhs == 0).all(axis=1)
        if good.any():
            yield T[good]


def h2_classes(group: FiniteAbelianGroup, m: int,
               max_candidates: int | None = None) -> list[Cochain2]:
    """Lexicographically least representatives of H^2(G, Z/m), brute force."""
    coeff = CoefficientGroup(m)
    n = group.order
    flat = []
    for batch in _cocycle_batches(group, m, max_candidates):
        flat.append(batch.reshape(batch.shape[0], n * n))
    cocycles = np.concatenate(flat, axis=0) if flat else np.zeros((0, n * n), dtype=np.int64)
    cocycles = cocycles[np.lexsort(cocycles.T[::-1])]

    bound = scale_bound(max_candidates)
    if m ** (n - 1) > bound:
        raise ScaleExceeded(f"{m ** (n - 1)} coboundaries exceed bound {bound}")
    cob = np.concatenate([tab.reshape(tab.shape[0], n * n)
                          for _, tab in _coboundary_batches(group, m)], axis=0)
    cob = np.unique(cob, axis=0)

    reps = []
    seen = set()
    for row in cocycles:
        key = row.tobytes()
        if key in seen:
            continue
        reps.append(Cochain2(group, coeff, row.reshape(n, n)))
        coset = (row[None, :] + cob) % m
        seen.update(r.tobytes() for r in coset)
    return reps


def zeta(c: Cochain2, gamma) -> FractionalWeight:
    """The product of c(gamma, gamma^i) for i = 1..ord(gamma)-1, as a weight k/m."""
    v = is_cocycle(c)
    if not v:
        raise NotACocycle(f"cocycle condition fails at {v.witness}")
    g, m = c.group, c.coefficients.order
    powers = g.powers(gamma)
    total = 0
    for p in powers[1:]:
        total += c.value(gamma, p)
    return FractionalWeight(Fraction(total % m, m))


def restrict(c: Cochain2, subgroup: FiniteAbelianGroup, gen_images) -> Cochain2:
    """Restrict c along an embedding of `subgroup` sending its generators to gen_images."""
    g = c.group
    gens = subgroup.generators()
    if len(gen_images) != len(gens):
        raise NotASubgroup(f"expected {len(gens)} generator images")
    gen_images = [tuple(x) for x in gen_images]
    # build the embedding and check it is an injective homomorphism
    embed = {}
    for h in subgroup.elements:
        img = g.identity
        for coord, im in zip(h, gen_images):
            for _ in range(coord):
                img = g.add(img, im)
        embed[h] = img
    for h, im in embed.items():
        if subgroup.element_order(h) != g.element_order(im):
            raise NotASubgroup(f"generator image orders do not match at {h}")
    if len(set(embed.values())) != subgroup.order:
        raise NotASubgroup("embedding is not injective")
    table = np.zeros((subgroup.order, subgroup.order), dtype=np.int64)
    for i, a in enumerate(subgroup.elements):
        for j, b in enumerate(subgroup.elements):
            table[i, j] = c.value(embed[a], embed[b])
    return Cochain2(subgroup, c.coefficients, table)


# -- central extensions ------------------------------------------------------

class ExtensionGroup:
    """The group Z' x G with (z,a)(z',b) = (z + z' + c(a,b), ab), as a Cayley table.

    Element index is z * |G| + (index of a); identity is 0.
    """

    def __init__(self, cochain: Cochain2):
        self.cochain = cochain
        self.coeff_order = cochain.coefficients.order
        self.group = cochain.group
        m, n = self.coeff_order, self.group.order
        self.order = m * n
        self.table = extension_table(cochain)
        self.table.flags.writeable = False

    def label(self, i: int):
        return (i // self.group.order, self.group.elements[i % self.group.order])

    def element_order(self, i: int) -> int:
        k, cur = 1, i
        while cur != 0:
            cur = int(self.table[cur, i])
            k += 1
        return k

    def order_profile(self):
        return tuple(sorted(self.element_order(i) for i in range(self.order)))

    def is_abelian(self) -> bool:
        return np.array_equal(self.table, self.table.T)

    def center_contains_coefficients(self) -> bool:
        n = self.group.order
        zs = [z * n for z in range(self.coeff_order)]
        return all(np.array_equal(self.table[z, :], self.table[:, z]) for z in zs)

    def isomorphic_to(self, other: "ExtensionGroup") -> bool:
        return tables_isomorphic(self.table, other.table)


def table_is_associative(table) -> bool:
    table = np.asarray(table)
    n = len(table)
    i, j, k = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    return bool(np.array_equal(table[table[i, j], k], table[i, table[j, k]]))


def extension_table(c: Cochain2):
    """Raw Cayley table of Z' x G without any group-axiom checks."""
    m, n = c.coefficients.order, c.group.order
    table = np.zeros((m * n, m * n), dtype=np.int64)
    for z1 in range(m):
        for z2 in range(m):
            zsum = (z1 + z2 + c.table) % m
            table[z1 * n:(z1 + 1) * n, z2 * n:(z2 + 1) * n] = zsum * n + c.group.prod
    return table


def central_extension(c: Cochain2) -> ExtensionGroup:
    """The extension group of a cocycle, with all group axioms verified.

    Associativity of the table and the cocycle condition are checked
    independently; they must agree, and both fail together on non-cocycles.
    """
    verdict = is_cocycle(c)
    assoc = table_is_associative(extension_table(c))
    if assoc != verdict.ok:
        raise AssertionError("associativity and cocycle verdicts disagree")
    if not verdict.ok:
        raise NotACocycle(f"cocycle condition fails at {verdict.witness}")
    ext = ExtensionGroup(c)
    n = ext.order
    t = ext.table
    # identity, inverses, centrality of the coefficient copy
    assert np.array_equal(t[0, :], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))
    for i in range(n):
        if not (t[i, :] == 0).any():
            raise AssertionError(f"no inverse for element {i}")
    assert ext.center_contains_coefficients()
    return ext


def _table_identity(table) -> int:
    n = len(table)
    for e in range(n):
        if np.array_equal(table[e, :], np.arange(n)):
            return e
    raise ValueError("table has no identity")


def _table_orders(table):
    n = len(table)
    e = _table_identity(table)
    orders = []
    for i in range(n):
        k, cur = 1, i
        while cur != e:
            cur = int(table[cur, i])
            k += 1
        orders.append(k)
    return orders, e


def tables_isomorphic(ta, tb) -> bool:
    """Exhaustive isomorphism search between two Cayley tables (desk scale)."""
    ta, tb = np.asarray(ta), np.asarray(tb)
    n = len(ta)
    if len(tb) != n:
        return False
    orders_a, ea = _table_orders(ta)
    orders_b, eb = _table_orders(tb)
    if sorted(orders_a) != sorted(orders_b):
        return False

    # greedy generating sequence for ta
    gens = []
    closure = {ea}
    for x in range(n):
        if x not in closure:
            gens.append(x)
            frontier = set(closure) | {x}
            while True:
                new = {int(ta[a, b]) for a in frontier for b in frontier} - frontier
                if not new:
                    break
                frontier |= new
            closure = frontier

    # express every element as (parent, generator) via BFS
    word = {ea: None}
    queue = [ea]
    while queue:
        cur = queue.pop(0)
        for gi in gens:
            nxt = int(ta[cur, gi])
            if nxt not in word:
                word[nxt] = (cur, gi)
                queue.append(nxt)
    assert len(word) == n

    by_order_b = {}
    for i, o in enumerate(orders_b):
        by_order_b.setdefault(o, []).append(i)

    bfs_order = sorted(word, key=lambda x: 0 if word[x] is None else 1)

    def extend(assignment):
        if len(assignment) == len(gens):
            phi = {ea: eb}
            for x in bfs_order:
                if word[x] is None:
                    continue
                parent, gi = word[x]
                phi[x] = int(tb[phi[parent], assignment[gi]])
            if len(set(phi.values())) != n:
                return False
            for a in range(n):
                for b in range(n):
                    if phi[int(ta[a, b])] != int(tb[phi[a], phi[b]]):
                        return False
            return True
        gi = gens[len(assignment)]
        for cand in by_order_b.get(orders_a[gi], []):
            if cand in assignment.values():
                continue
            nxt = dict(assignment)
            nxt[gi] = cand
            if extend(nxt):
                return True
        return False

    return extend({})
