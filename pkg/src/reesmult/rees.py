"""Multi-graded extended Rees algebras of monomial ideals.

``B(I) = sum over b in Z^g of (I_1 t_1)^b_1 ... (I_g t_g)^b_g`` (negative
exponents give R), with maximal homogeneous ideal
``N = (t_1^-1, ..., t_g^-1, m, I_1 t_1, ..., I_g t_g)``.  Every graded piece
``B_b`` is the ideal ``prod I_j^max(b_j, 0)`` of R, so ``N^n`` is described by
one monomial ideal of R per multidegree.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from reesmult.errors import (
    BoxTooLarge,
    ElementNotInIdeal,
    GeneratorNotInN,
    GuardExceeded,
    NonIntegralResult,
    NotContained,
    NotMPrimary,
    RingMismatch,
    StabilizationFailure,
    UsageError,
)
from reesmult.hilbert import (
    DEFAULT_STABILIZATION,
    StabilizationConfig,
    canonical_pairs,
    compositions,
    mixed,
    multiplicity,
)
from reesmult.lattice import (
    MonomialIdeal,
    Ring,
    colength,
    contains,
    equals,
    ideal_from_gens,
    ideal_sum,
    is_m_primary,
    is_subideal,
    length_quotient,
    maximal_ideal,
    mu,
    power,
    product,
    product_of_powers,
    standard_monomials,
)

FULL = "Full"


@dataclass(frozen=True)
class ReesInstance:
    ring: Ring
    ideals: tuple
    L: MonomialIdeal = field(init=False, compare=False)

    def __post_init__(self):
        ideals = tuple(self.ideals)
        object.__setattr__(self, "ideals", ideals)
        if not ideals:
            raise UsageError("a Rees instance needs at least one ideal")
        for i in ideals:
            if i.ring != self.ring:
                raise RingMismatch(f"{i} does not live in {self.ring}")
            if not is_m_primary(i):
                raise NotMPrimary(f"{i} is not m-primary")
        m = maximal_ideal(self.ring)
        L = power(m, 2)
        for i in ideals:
            L = ideal_sum(L, i)
        object.__setattr__(self, "L", L)

    @property
    def g(self) -> int:
        return len(self.ideals)

    @property
    def d(self) -> int:
        return self.ring.d

    @property
    def m(self) -> MonomialIdeal:
        return maximal_ideal(self.ring)

    def describe(self) -> dict:
        return {"ring": str(self.ring), "ideals": [str(i) for i in self.ideals], "L": str(self.L)}


def rees_dim(instance: ReesInstance) -> int:
    return instance.d + instance.g


def mu_N(instance: ReesInstance) -> int:
    """Minimal number of generators of N, from the graded comparison of N and N^2."""
    m = instance.m
    return (instance.g + mu(m) + sum(mu(i) for i in instance.ideals)
            - length_quotient(power(m, 2), instance.L))


# ---------------------------------------------------------------------------
# multiplicity of N by the mixed multiplicity formula


@functools.lru_cache(maxsize=None)
def _mixed_cached(pairs: tuple, config: StabilizationConfig) -> int:
    return mixed([p[0] for p in pairs], [p[1] for p in pairs], config=config)


def e_N_bracket(instance: ReesInstance, config: StabilizationConfig = DEFAULT_STABILIZATION) -> int:
    """The sum inside the formula for e(N), before dividing by 2^d."""
    d, ideals, L = instance.d, instance.ideals, instance.L
    total = 0
    for n in range(instance.g + 1):
        for subset in itertools.combinations(ideals, n):
            for q in range(d):
                for comp in compositions(d - 1 - q, n):
                    pairs = canonical_pairs((L,) + subset, (q + 1,) + comp)
                    total += 2 ** (d - 1 - q) * _mixed_cached(pairs, config)
    return total


def e_N_formula(instance: ReesInstance, config: StabilizationConfig = DEFAULT_STABILIZATION) -> int:
    bracket = e_N_bracket(instance, config)
    value, rest = divmod(bracket, 2 ** instance.d)
    if rest:
        raise NonIntegralResult(f"bracket sum {bracket} is not divisible by 2^{instance.d}")
    return value


# ---------------------------------------------------------------------------
# graded pieces of N^n


def _mul(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return product(a, b)


def _add(a, b):
    if a is None or b is None:
        return None
    return ideal_sum(a, b)


def _colength(piece) -> int:
    return 0 if piece is None else colength(piece)


def _contains(piece, m) -> bool:
    return piece is None or contains(piece, m)


class NPowers:
    """Memoized graded pieces of N^n as ideals of R; ``None`` is the unit ideal."""

    def __init__(self, instance: ReesInstance):
        self.instance = instance
        self._memo: dict = {}
        g = instance.g
        self._units = [tuple(int(i == j) for j in range(g)) for i in range(g)]

    def ambient(self, b: Sequence[int]):
        return product_of_powers(zip(self.instance.ideals, b))

    def piece(self, n: int, b: Sequence[int]):
        b = tuple(b)
        # B_b lies in N^(sum |b_j|), so those pieces are full.
        if sum(abs(x) for x in b) >= n:
            return self.ambient(b)
        key = (n, b)
        if key in self._memo:
            return self._memo[key]
        acc = _mul(self.instance.m, self.piece(n - 1, b))
        for ideal, e in zip(self.instance.ideals, self._units):
            up = tuple(x + y for x, y in zip(b, e))
            down = tuple(x - y for x, y in zip(b, e))
            acc = _add(acc, self.piece(n - 1, up))
            acc = _add(acc, _mul(ideal, self.piece(n - 1, down)))
        self._memo[key] = acc
        return acc

    def support(self, n: int):
        """Multidegrees where N^n can differ from B."""
        return l1_ball(self.instance.g, n - 1)


def l1_ball(g: int, radius: int):
    if radius < 0:
        return
    if g == 0:
        yield ()
        return
    for first in range(-radius, radius + 1):
        for rest in l1_ball(g - 1, radius - abs(first)):
            yield (first,) + rest


def graded_piece_N_power(instance: ReesInstance, n: int, b: Sequence[int]):
    """Degree-b component of N^n as an ideal of R, or ``FULL`` when it equals B_b."""
    if n < 0:
        raise UsageError("n must be nonnegative")
    powers = NPowers(instance)
    piece = powers.piece(n, b)
    ambient = powers.ambient(b)
    if piece is None or (ambient is not None and equals(piece, ambient)):
        return FULL
    return piece


def hilbert_samuel_N(instance: ReesInstance, n: int, powers: NPowers | None = None) -> int:
    """ell(B / N^n), summed over graded pieces."""
    powers = powers or NPowers(instance)
    total = 0
    for b in powers.support(n):
        total += _colength(powers.piece(n, b)) - _colength(powers.ambient(b))
    return total


def e_N_direct(instance: ReesInstance, n_cap: int = 12, guard: int = 4) -> int:
    """e(N) as the (d+g)-th difference of ell(B/N^n) at the top of the sampled range."""
    D = rees_dim(instance)
    if D > guard:
        raise GuardExceeded(f"dim B = {D} exceeds the oracle guard {guard}")
    if n_cap < D + 1:
        raise UsageError(f"n_cap must be at least {D + 1}")
    powers = NPowers(instance)
    H = [hilbert_samuel_N(instance, n, powers) for n in range(n_cap + 1)]

    def diff(start):
        return sum((-1) ** (D - k) * comb(D, k) * H[start + k] for k in range(D + 1))

    last = [diff(n_cap - D - 1), diff(n_cap - D)]
    if last[0] != last[1]:
        raise StabilizationFailure(f"ell(B/N^n) not yet polynomial by n = {n_cap}", last)
    return last[1]


def mu_N_direct(instance: ReesInstance) -> int:
    """ell(N/N^2) summed over the multidegrees where generators of N live."""
    powers = NPowers(instance)
    total = 0
    for b in itertools.product(range(-2, 3), repeat=instance.g):
        total += _colength(powers.piece(2, b)) - _colength(powers.piece(1, b))
    return total


# ---------------------------------------------------------------------------
# verdict


@dataclass
class ReesReport:
    instance: dict
    dim: int
    mu_N: int
    e_N: int
    bound: int
    equation_holds: bool
    e_N_oracle: int | None = None
    mu_N_oracle: int | None = None
    mu_m: int = 0
    e_m: int = 0
    ell_L_m2: int = 0
    per_ideal: list = field(default_factory=list)

    @property
    def oracle_agrees(self) -> bool:
        ok = self.e_N_oracle is None or self.e_N_oracle == self.e_N
        return ok and (self.mu_N_oracle is None or self.mu_N_oracle == self.mu_N)


def minimal_multiplicity_verdict(instance: ReesInstance, with_oracle: bool = False,
                                 config: StabilizationConfig = DEFAULT_STABILIZATION,
                                 n_cap: int = 12) -> ReesReport:
    """Evaluate e(N) = mu(N) - dim B + 1.  This is the numeric equation only."""
    d, m = instance.d, instance.m
    dim, muN = rees_dim(instance), mu_N(instance)
    eN = e_N_formula(instance, config)
    bound = muN - dim + 1
    per_ideal = []
    for ideal in instance.ideals:
        info = {"ideal": str(ideal), "mu": mu(ideal),
                "e_top": mixed([m, ideal], [1, d - 1], config=config),
                "reductionNumber": None}
        if d == 1:
            info["reductionNumber"] = reduction_number_dim1(ideal)
        per_ideal.append(info)
    report = ReesReport(
        instance=instance.describe(), dim=dim, mu_N=muN, e_N=eN, bound=bound,
        equation_holds=(eN == bound), mu_m=mu(m), e_m=multiplicity(m, config=config),
        ell_L_m2=length_quotient(power(m, 2), instance.L), per_ideal=per_ideal)
    if with_oracle:
        report.e_N_oracle = e_N_direct(instance, n_cap=n_cap)
        report.mu_N_oracle = mu_N_direct(instance)
    return report


# ---------------------------------------------------------------------------
# reductions


class _NotReduction:
    def __repr__(self):
        return "NotReduction"

    def __str__(self):
        return "NotReduction"


NOT_REDUCTION = _NotReduction()


def reduction_number_monomial(I: MonomialIdeal, J: MonomialIdeal, n_max: int = 20):
    """Least n <= n_max with J I^n = I^(n+1), else ``NOT_REDUCTION``."""
    if not is_subideal(J, I):
        raise NotContained(f"{J} is not contained in {I}")
    if not is_m_primary(J):
        return NOT_REDUCTION
    if equals(J, I):
        return 0
    for n in range(1, n_max + 1):
        if equals(product(J, power(I, n)), power(I, n + 1)):
            return n
    return NOT_REDUCTION


def reduction_number_dim1(I: MonomialIdeal) -> int:
    """r(I) in dimension 1, using the minimal reduction generated by the lowest monomial."""
    if I.ring.d != 1:
        raise UsageError("exact reduction numbers are only available in dimension 1")
    J = ideal_from_gens(I.ring, [min(I.gens)])
    n = 0
    while True:
        r = reduction_number_monomial(I, J, n_max=max(20, n + 20))
        if r is not NOT_REDUCTION:
            return r
        n += 20


def joint_reduction_check(elements: Sequence, instance: ReesInstance, n_max: int = 20) -> bool:
    """Is sum_j x_j prod_{k != j} I_k a reduction of prod_j I_j?"""
    ring, ideals = instance.ring, instance.ideals
    if len(elements) != len(ideals):
        raise UsageError(f"need {len(ideals)} elements, got {len(elements)}")
    K = None
    for j, x in enumerate(elements):
        x = ring.check_monomial(x)
        if not contains(ideals[j], x):
            raise ElementNotInIdeal(f"{x} is not in {ideals[j]}")
        term = ideal_from_gens(ring, [x])
        for k, other in enumerate(ideals):
            if k != j:
                term = product(term, other)
        K = term if K is None else ideal_sum(K, term)
    P = product_of_powers((i, 1) for i in ideals)
    return reduction_number_monomial(P, K, n_max) is not NOT_REDUCTION


# ---------------------------------------------------------------------------
# bounded check of the reduction equation J N = N^2


@dataclass(frozen=True)
class LaurentElement:
    """Sum of coeff * monomial * t^multidegree; terms need not share a multidegree."""

    terms: tuple

    @classmethod
    def of(cls, ring: Ring, terms) -> "LaurentElement":
        out = []
        for coeff, mono, deg in terms:
            out.append((Fraction(coeff), ring.check_monomial(mono), tuple(deg)))
        return cls(tuple(out))

    def is_homogeneous(self) -> bool:
        return len({t[2] for t in self.terms}) <= 1


@dataclass(frozen=True)
class ReductionVerdict:
    holds: bool
    fails_at: tuple | None
    box: int
    rank: int
    target_dim: int

    def __str__(self):
        return "HoldsOnBox" if self.holds else f"FailsAt({self.fails_at})"


def _span_basis(powers: NPowers, n: int, degrees):
    """Monomials of N^n / N^(n+1) in the given multidegrees, as (monomial, degree)."""
    out = []
    for b in degrees:
        upper = powers.piece(n, b)
        lower = powers.piece(n + 1, b)
        if lower is None:
            continue
        for mono in standard_monomials(lower):
            if _contains(upper, mono):
                out.append((mono, b))
    return out


def _reduce(vec: dict, pivots: dict) -> dict:
    vec = dict(vec)
    while vec:
        col = min(vec)
        row = pivots.get(col)
        if row is None:
            return vec
        c = vec[col]
        for k, v in row.items():
            nv = vec.get(k, 0) - c * v
            if nv:
                vec[k] = nv
            else:
                vec.pop(k, None)
    return vec


def check_reduction_equation_bounded(instance: ReesInstance, generators: Sequence[LaurentElement],
                                     box: int = 3, max_degrees: int = 10_000) -> ReductionVerdict:
    """Decide whether (J N + N^3)/N^3 = N^2/N^3 on multidegrees with |b_j| <= box.

    Equality there means J N = N^2 after localizing at N (Nakayama).  The
    generators may mix multidegrees; each term must lie in N.
    """
    ring, g = instance.ring, instance.g
    if (2 * box + 1) ** g > max_degrees:
        raise BoxTooLarge(f"{(2 * box + 1) ** g} multidegrees exceed the limit {max_degrees}")
    powers = NPowers(instance)
    for gen in generators:
        for _, mono, deg in gen.terms:
            if len(deg) != g:
                raise UsageError(f"multidegree {deg} has the wrong length for g = {g}")
            if not _contains(powers.piece(1, deg), mono):
                raise GeneratorNotInN(f"term {mono} t^{deg} is not in N")
    in_box = [b for b in itertools.product(range(-box, box + 1), repeat=g)
              if sum(abs(x) for x in b) < 3]
    source = _span_basis(powers, 1, list(l1_ball(g, 1)))
    target = _span_basis(powers, 2, in_box)
    index = {t: i for i, t in enumerate(target)}
    pivots: dict = {}
    for gen in generators:
        for mono, b in source:
            vec: dict = {}
            for coeff, gm, deg in gen.terms:
                key = (ring.mul(gm, mono), tuple(x + y for x, y in zip(deg, b)))
                i = index.get(key)
                if i is not None:
                    vec[i] = vec.get(i, 0) + coeff
            vec = _reduce({k: v for k, v in vec.items() if v}, pivots)
            if vec:
                col = min(vec)
                lead = vec[col]
                row = {k: v / lead for k, v in vec.items()}
                for other in pivots.values():
                    if col in other:
                        c = other[col]
                        for k, v in row.items():
                            nv = other.get(k, 0) - c * v
                            if nv:
                                other[k] = nv
                            else:
                                other.pop(k, None)
                pivots[col] = row
    rank = len(pivots)
    if rank == len(target):
        return ReductionVerdict(True, None, box, rank, len(target))
    missing = next(i for i in range(len(target)) if i not in pivots)
    return ReductionVerdict(False, target[missing][1], box, rank, len(target))


def _unit(d, i, power_=1):
    return tuple(power_ if j == i else 0 for j in range(d))


def reduction_generators_m_mr(ring: Ring, r: int = 1) -> list[LaurentElement]:
    """(t1^-1, x1^r t2 + t2^-1, x_d t1, x_i t1 + x_{i+1}^r t2) for B(m, m^r)."""
    if ring.is_semigroup:
        raise UsageError("explicit reduction generators need a polynomial ring")
    d, one = ring.d, ring.one()
    t1, t2, t1inv, t2inv = (1, 0), (0, 1), (-1, 0), (0, -1)
    gens = [
        LaurentElement.of(ring, [(1, one, t1inv)]),
        LaurentElement.of(ring, [(1, _unit(d, 0, r), t2), (1, one, t2inv)]),
        LaurentElement.of(ring, [(1, _unit(d, d - 1), t1)]),
    ]
    for i in range(d - 1):
        gens.append(LaurentElement.of(ring, [(1, _unit(d, i), t1), (1, _unit(d, i + 1, r), t2)]))
    return gens


def reduction_generators_m_param(ring: Ring, r: int = 1) -> list[LaurentElement]:
    """Generators of a reduction of N for B(m, (x_1, ..., x_{d-1}, x_d^r)), d >= 2."""
    if ring.is_semigroup or ring.d < 2:
        raise UsageError("needs a polynomial ring of dimension >= 2")
    d, one = ring.d, ring.one()
    t1, t2, t1inv, t2inv = (1, 0), (0, 1), (-1, 0), (0, -1)
    gens = [
        LaurentElement.of(ring, [(1, one, t1inv)]),
        LaurentElement.of(ring, [(1, _unit(d, 0), t2), (1, one, t2inv)]),
        LaurentElement.of(ring, [(1, _unit(d, d - 1), t1)]),
    ]
    for i in range(d - 2):
        gens.append(LaurentElement.of(ring, [(1, _unit(d, i), t1), (1, _unit(d, i + 1), t2)]))
    gens.append(LaurentElement.of(ring, [(1, _unit(d, d - 2), t1), (1, _unit(d, d - 1, r), t2)]))
    return gens


def parameter_ideal(ring: Ring, r: int) -> MonomialIdeal:
    """(x_1, ..., x_{d-1}, x_d^r)."""
    d = ring.d
    return ideal_from_gens(ring, [_unit(d, i) for i in range(d - 1)] + [_unit(d, d - 1, r)])
