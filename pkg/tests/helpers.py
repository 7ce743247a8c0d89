"""Shared generators for randomized suites: cocycles, pseudoreps, series."""

from fractions import Fraction
from itertools import combinations, product

import numpy as np

from orbipar.cocycles import (Cochain2, CoefficientGroup, FiniteAbelianGroup,
                              is_cocycle, zeta)
from orbipar.liemodel import GroupModel, alcove_normalize, beta_of_basis
from orbipar.localseries import DOWNSTAIRS, UPSTAIRS, GradedSeries
from orbipar.matrices import CycMatrix
from orbipar.pseudoreps import PseudoRep
from orbipar.scalars import Cyclotomic, euler_phi, root_of_unity

MODELS_GRID = [GroupModel("gl", r=2), GroupModel("gl", r=3),
               GroupModel("sl", r=2), GroupModel("upq", p=1, q=1)]
N_GRID = [2, 3, 4, 6]


def random_cyclotomic(rng, orders=(1, 2, 3, 4), span=5):
    M = rng.choice(orders)
    coeffs = [Fraction(rng.randint(-span, span), rng.randint(1, 3))
              for _ in range(euler_phi(M))]
    return Cyclotomic(M, coeffs)


def random_nonzero_cyclotomic(rng, orders=(1, 2, 3, 4), span=5):
    while True:
        c = random_cyclotomic(rng, orders, span)
        if not c.is_zero():
            return c


def random_invertible(rng, r, span=3):
    while True:
        rows = [[rng.randint(-span, span) for _ in range(r)] for _ in range(r)]
        mat = CycMatrix(rows)
        if not mat.det().is_zero():
            return mat


def random_cochain(rng, factors, m):
    """A random normalized 2-cochain table (not necessarily a cocycle)."""
    g = FiniteAbelianGroup(factors)
    n = g.order
    table = np.zeros((n, n), dtype=np.int64)
    table[1:, 1:] = [[rng.randrange(m) for _ in range(n - 1)] for _ in range(n - 1)]
    return Cochain2(g, CoefficientGroup(m), table)


def random_cyclic_cochain(rng, n, m):
    return random_cochain(rng, [n], m)


def random_cyclic_cocycle(rng, n, m):
    """A uniformly random element of Z^2(Z/n, Z/m), by seeding the first column.

    Every seed column propagates to a cocycle: the seed map is a bijection
    from (Z/m)^(n-1) onto Z^2, which has exactly m^(n-1) elements.
    """
    g = FiniteAbelianGroup([n])
    table = np.zeros((n, n), dtype=np.int64)
    for a in range(1, n):
        table[a, 1] = rng.randrange(m)
    for b in range(1, n - 1):
        # c(a, g^{b+1}) = c(a + g^b, g) + c(a, g^b) - c(g^b, g)
        for a in range(n):
            table[a, b + 1] = (table[(a + b) % n, 1] + table[a, b] - table[b, 1]) % m
    c = Cochain2(g, CoefficientGroup(m), table)
    assert is_cocycle(c).ok
    return c


def random_pseudorep(rng, n, m, r):
    """A verified pseudorep: random cocycle, admissible eigenvalues, conjugated."""
    c = random_cyclic_cocycle(rng, n, m)
    z = zeta(c, (1,))
    base = z.value / n
    candidates = [(base + Fraction(j, n)) % 1 for j in range(n)]
    exps = [candidates[rng.randrange(n)] for _ in range(r)]
    diag = CycMatrix.diagonal([root_of_unity(q) for q in exps])
    g = random_invertible(rng, r)
    gen_image = g.inverse() @ diag @ g
    return PseudoRep.from_generator(c, gen_image)


def interior_weights(model, N):
    """Every interior alcove weight whose entries have denominator dividing N."""
    grid = [Fraction(k, N) for k in range(N)]
    out = []
    if model.kind == "gl":
        for combo in combinations(grid, model.size):
            out.append(alcove_normalize(model, list(combo)))
    elif model.kind == "sl":
        seen = set()
        for combo in product(grid, repeat=model.size):
            if sum(combo).denominator != 1:
                continue
            w = alcove_normalize(model, list(combo))
            if w.values() not in seen:
                seen.add(w.values())
                out.append(w)
    else:
        blocks = [combinations(grid, len(blk)) for blk in model.blocks]
        for combo in product(*blocks):
            flat = [v for blk in combo for v in blk]
            out.append(alcove_normalize(model, flat))
    return [w for w in out if w.is_interior()]


def invariant_exponents(beta, N, trunc):
    """All k in [0, trunc] with k = N*l - N*beta - 1 for integral l."""
    base = (-int(N * beta.value) - 1) % N
    return list(range(base, trunc + 1, N))


def random_invariant_series(rng, model, weight, N, trunc, density=0.5):
    betas = beta_of_basis(model, weight)
    terms = {}
    for b in range(model.dim_m):
        for k in invariant_exponents(betas[b], N, trunc):
            if rng.random() < density:
                terms[(b, k)] = random_nonzero_cyclotomic(rng)
    return GradedSeries(model, weight, N, UPSTAIRS, trunc, terms)


def random_downstairs_series(rng, model, weight, N, trunc, density=0.5):
    """A downstairs series with poles supported only on negative components."""
    betas = beta_of_basis(model, weight)
    terms = {}
    for b in range(model.dim_m):
        lo = -1 if betas[b].value < 0 else 0
        for k in range(lo, trunc + 1):
            if rng.random() < density:
                terms[(b, k)] = random_nonzero_cyclotomic(rng)
    return GradedSeries(model, weight, N, DOWNSTAIRS, trunc, terms)
