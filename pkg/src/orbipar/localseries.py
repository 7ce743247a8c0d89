"""Graded truncated series of local Higgs fields and the descent engine.

Upstairs a local field is f(z) dz with f valued in m^C, expanded over the
eigenbasis of Ad(e^{2 pi i alpha}); a term is (basis element, exponent k,
cyclotomic coefficient).  The finite-order action multiplies such a term by
e^{2 pi i (beta + (k+1)/N)}, so invariance is the index condition

    k = N*l - N*beta - 1   for some integer l,

which is checked both by that congruence and by honest substitution (exact
torus conjugation of the coefficient matrix).  Descent pushes an invariant
field through the meromorphic gauge z^{N alpha} and the substitution
w = z^N; per component the gauge acts as the integer exponent shift N*beta,
so for beta < 0 the l-th term lands on w^{l-1} dw with a simple pole at
l = 0, and for beta >= 0 on w^l dw with no pole; both pick up the factor
1/N from dw = N z^{N-1} dz.  Ascent is the exact inverse, multiplying by N.

Truncation is a valid-through exponent: absent exponents at or below it are
exactly zero, larger ones are unknown.  Descent and ascent compute the exact
valid-through exponent of their output as one below the image of the first
unknown slot, minimized over eigencomponents; terms landing above that are
dropped rather than overclaimed.  This is what makes round trips exact on
the common range.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (BadResidueSupport, MalformedInput, NotInvariant,
                     NonIntegralGauge, TwistDenominator, WeightOnWall)
from .liemodel import (GroupModel, WeightVector, beta_of_basis, check_alcove,
                       parabolic_from_s, s_from_weight)
from .matrices import CycMatrix
from .scalars import (Cyclotomic, FractionalWeight, rational, root_of_unity,
                      working_order)

UPSTAIRS = "z"
DOWNSTAIRS = "w"


class GradedSeries:
    """A truncated matrix-valued Laurent series tagged by eigenvalue exponents.

    Upstairs (variable z) series are holomorphic: exponents k >= 0.
    Downstairs (variable w) series may carry a simple pole: k >= -1.
    """

    def __init__(self, model: GroupModel, weight: WeightVector, N: int,
                 variable: str, trunc: int, terms):
        check_alcove(model, weight)
        if not weight.is_interior():
            raise WeightOnWall(f"{weight.values()} lies on an alcove wall")
        N = int(N)
        if N < 1:
            raise MalformedInput("N must be a positive integer")
        for v in weight.values():
            if (N * v).denominator != 1:
                raise NonIntegralGauge(f"N*alpha is not integral: {N}*{v}")
        if variable not in (UPSTAIRS, DOWNSTAIRS):
            raise MalformedInput(f"variable must be '{UPSTAIRS}' or '{DOWNSTAIRS}'")
        floor = 0 if variable == UPSTAIRS else -1
        trunc = int(trunc)
        if trunc < floor - 1:
            raise MalformedInput(f"truncation {trunc} below {floor - 1}")
        clean = {}
        for (b, k), coeff in terms.items():
            b, k = int(b), int(k)
            if not 0 <= b < model.dim_m:
                raise MalformedInput(f"basis index {b} out of range")
            if k < floor:
                raise MalformedInput(f"exponent {k} below {floor} for variable {variable}")
            if k > trunc:
                raise MalformedInput(f"exponent {k} above truncation {trunc}")
            if not isinstance(coeff, Cyclotomic):
                coeff = Cyclotomic.from_rational(rational(coeff))
            if coeff.is_zero():
                continue
            if (b, k) in clean:
                raise MalformedInput(f"duplicate term at basis {b}, exponent {k}")
            clean[(b, k)] = coeff
        self.model = model
        self.weight = weight
        self.N = N
        self.variable = variable
        self.trunc = trunc
        self.terms = clean
        self.beta = beta_of_basis(model, weight)

    def beta_of(self, basis_idx: int) -> FractionalWeight:
        return self.beta[basis_idx]

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda kv: (self.model.basis_key(kv[0][0]), kv[0][1]))

    def with_terms(self, terms, variable=None, trunc=None) -> "GradedSeries":
        return GradedSeries(self.model, self.weight, self.N,
                            variable or self.variable,
                            self.trunc if trunc is None else trunc, terms)

    def scale(self, c) -> "GradedSeries":
        return self.with_terms({key: coeff * c for key, coeff in self.terms.items()})

    def add(self, other: "GradedSeries") -> "GradedSeries":
        if (self.model != other.model or self.weight.values() != other.weight.values()
                or self.N != other.N or self.variable != other.variable):
            raise MalformedInput("series live on different local models")
        trunc = min(self.trunc, other.trunc)
        terms = {}
        for (b, k), c in list(self.terms.items()) + list(other.terms.items()):
            if k <= trunc:
                terms[(b, k)] = terms.get((b, k), Cyclotomic.zero()) + c
        return GradedSeries(self.model, self.weight, self.N, self.variable, trunc, terms)

    def equal_on_common_range(self, other: "GradedSeries") -> bool:
        """Exact term equality on exponents valid for both series."""
        t = min(self.trunc, other.trunc)
        mine = {k: v for k, v in self.terms.items() if k[1] <= t}
        theirs = {k: v for k, v in other.terms.items() if k[1] <= t}
        if set(mine) != set(theirs):
            return False
        return all(mine[k] == theirs[k] for k in mine)

    def working_field_order(self, twist: Fraction | None = None) -> int:
        orders = [self.N, self.weight.denominator_lcm()]
        orders += [c.order for c in self.terms.values()]
        if twist is not None:
            orders.append(twist.denominator)
        return working_order(*orders)


def decompose_by_beta(series: GradedSeries):
    """Split into eigencomponents; the direct sum reassembles the input."""
    out: dict[FractionalWeight, GradedSeries] = {}
    buckets: dict[FractionalWeight, dict] = {}
    for (b, k), coeff in series.terms.items():
        buckets.setdefault(series.beta_of(b), {})[(b, k)] = coeff
    for beta in sorted(buckets, key=lambda w: w.value, reverse=True):
        out[beta] = series.with_terms(buckets[beta])
    return out


@dataclass(frozen=True)
class InvarianceReport:
    invariant: bool
    by_index: bool
    by_substitution: bool
    twist: Fraction
    violations: tuple  # (beta, k, basis_key) triples

    def __bool__(self):
        return self.invariant


def _twist_fraction(twist, N: int) -> Fraction:
    if twist is None:
        return Fraction(0)
    t = twist.value if isinstance(twist, FractionalWeight) else rational(twist)
    if (N * t).denominator != 1:
        raise TwistDenominator(f"twist {t} has denominator not dividing N={N}")
    return t % 1


def check_invariance(series: GradedSeries, twist=None) -> InvarianceReport:
    """Invariance of the local field under the order-N isotropy action.

    Two independent verdicts are computed and must agree: the index criterion
    k + 1 + N*beta = N*twist (mod N), and direct substitution, which
    conjugates each term's coefficient matrix by the exact torus element and
    multiplies by e^{2 pi i (k+1)/N}.
    """
    if series.variable != UPSTAIRS:
        raise MalformedInput("invariance is defined for upstairs (z) series")
    t = _twist_fraction(twist, series.N)
    N = series.N
    vals = series.weight.values()

    index_violations = []
    for (b, k), _ in series.sorted_terms():
        beta = series.beta_of(b).value
        if (k + 1 + N * beta - N * t) % N != 0:
            index_violations.append((series.beta_of(b), k, series.model.basis_key(b)))
    by_index = not index_violations

    torus = CycMatrix.diagonal([root_of_unity(v) for v in vals])
    torus_inv = CycMatrix.diagonal([root_of_unity(-v % 1) for v in vals])
    twist_scalar = root_of_unity(t)
    subst_violations = []
    for (b, k), coeff in series.sorted_terms():
        mat = series.model.basis_matrix(b).scale(coeff)
        acted = (torus @ mat @ torus_inv).scale(root_of_unity(Fraction((k + 1) % N, N), N))
        if acted != mat.scale(twist_scalar):
            subst_violations.append((series.beta_of(b), k, series.model.basis_key(b)))
    by_substitution = not subst_violations

    if by_index != by_substitution or index_violations != subst_violations:
        raise AssertionError(
            f"invariance oracles disagree: index={index_violations} "
            f"substitution={subst_violations}")
    return InvarianceReport(by_index, by_index, by_substitution, t,
                            tuple(index_violations))


@dataclass(frozen=True)
class ResidueReport:
    residue: CycMatrix
    support_in_negative_beta: bool
    nilpotent: bool
    nilpotency_index: int | None  # least p with residue^p = 0
    levi_projection_zero: bool


def residue_report(series: GradedSeries) -> ResidueReport:
    """Analyze the simple-pole coefficient of a downstairs series."""
    if series.variable != DOWNSTAIRS:
        raise MalformedInput("residues live downstairs (variable w)")
    n = series.model.size
    residue = CycMatrix.zero(n)
    support_ok = True
    for (b, k), coeff in series.terms.items():
        if k != -1:
            continue
        residue = residue + series.model.basis_matrix(b).scale(coeff)
        if series.beta_of(b).value >= 0:
            support_ok = False

    nilpotency_index = None
    power = residue
    for p in range(1, n + 1):
        if power.is_zero():
            nilpotency_index = p
            break
        power = power @ residue

    para = parabolic_from_s(series.model, s_from_weight(series.weight))
    levi_zero = True
    for i in range(n):
        for j in range(n):
            if para.m0_mask[i, j] and not residue.entry(i, j).is_zero():
                levi_zero = False
    return ResidueReport(residue, support_ok, nilpotency_index is not None,
                         nilpotency_index, levi_zero)


def _descend_trunc(series: GradedSeries) -> int:
    """Largest downstairs exponent determined in every eigencomponent.

    Component beta has upstairs slots k = -N*beta - 1 (mod N); its first slot
    above the input truncation maps to the first unknown downstairs exponent.
    """
    N, T = series.N, series.trunc
    best = None
    for beta in {w.value for w in series.beta}:
        nb = int(N * beta)
        r = (-nb - 1) % N
        k_star = T + 1 + ((r - (T + 1)) % N)  # least k > T with k = r (mod N)
        j_unknown = (k_star + 1 + nb) // N - 1
        best = j_unknown - 1 if best is None else min(best, j_unknown - 1)
    return max(best, -2)


def _ascend_trunc(series: GradedSeries) -> int:
    """Largest upstairs exponent determined in every eigencomponent.

    Downstairs every exponent above the truncation is unknown, so component
    beta is unknown upstairs from k = N*(T_w + 2) - N*beta - 1 on.
    """
    N, Tw = series.N, series.trunc
    best = None
    for beta in {w.value for w in series.beta}:
        k_unknown = N * (Tw + 2) - int(N * beta) - 1
        best = k_unknown - 1 if best is None else min(best, k_unknown - 1)
    return max(best, -1)


def descend(series: GradedSeries):
    """Push an invariant upstairs field to the quotient: returns (series, residue).

    Per component: the term at k = N*l - N*beta - 1 lands on w^(l-1) dw for
    beta < 0 and on w^l dw for 0 <= beta < 1, in both cases scaled by 1/N.
    """
    if series.variable != UPSTAIRS:
        raise MalformedInput("descend expects an upstairs (z) series")
    report = check_invariance(series, twist=None)
    if not report:
        raise NotInvariant(f"series is not invariant: violations {report.violations}")
    N = series.N
    out_trunc = _descend_trunc(series)
    terms = {}
    for (b, k), coeff in series.terms.items():
        nl = k + 1 + N * series.beta_of(b).value  # = N*l, integral by invariance
        assert nl.denominator == 1 and int(nl) % N == 0
        j = int(nl) // N - 1
        if j > out_trunc:
            continue
        terms[(b, j)] = coeff * Fraction(1, N)
    down = GradedSeries(series.model, series.weight, N, DOWNSTAIRS, out_trunc, terms)
    return down, residue_report(down)


def ascend(series: GradedSeries, verify: bool = True) -> GradedSeries:
    """Pull a downstairs field with admissible residue back to the cover.

    The pole coefficients must lie in strictly negative eigencomponents; the
    result is holomorphic and invariant (checked when verify is set).
    """
    if series.variable != DOWNSTAIRS:
        raise MalformedInput("ascend expects a downstairs (w) series")
    N = series.N
    for (b, k), _ in series.sorted_terms():
        if k == -1 and series.beta_of(b).value >= 0:
            raise BadResidueSupport(
                f"pole coefficient at basis {series.model.basis_key(b)} has "
                f"beta = {series.beta_of(b).value} >= 0")
    out_trunc = _ascend_trunc(series)
    terms = {}
    for (b, j), coeff in series.terms.items():
        k = N * (j + 1) - int(N * series.beta_of(b).value) - 1
        assert k >= 0, "support precondition guarantees holomorphy"
        if k > out_trunc:
            continue
        terms[(b, k)] = coeff * N
    up = GradedSeries(series.model, series.weight, N, UPSTAIRS, out_trunc, terms)
    if verify:
        report = check_invariance(up)
        assert report.invariant, "ascended series must be invariant"
    return up
