"""Monomial ideals in localized polynomial rings and numerical semigroup rings.

Two ring families are supported:

* ``PolynomialLocal(d)``: k[x_1, ..., x_d] localized at (x_1, ..., x_d).
  Monomials are exponent tuples of length d.
* ``NumericalSemigroup(a_1, ..., a_k)``: k[[t^a_1, ..., t^a_k]], dimension 1.
  Monomials are the integer exponents of t that lie in the semigroup.

Ideals are stored by their minimal monomial generators, so equality of
ideals is equality of the canonical generator tuples.
"""

from __future__ import annotations

import bisect
import enum
import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from reesmult.errors import (
    EmptySpec,
    InvalidMonomial,
    NonCoprimeSemigroup,
    NotContained,
    NotMPrimary,
    RingMismatch,
    UnitGenerator,
    ZeroPower,
)

INFINITE = math.inf


class RingKind(enum.Enum):
    POLYNOMIAL_LOCAL = "polynomial_local"
    NUMERICAL_SEMIGROUP = "numerical_semigroup"


@dataclass(frozen=True)
class Ring:
    kind: RingKind
    d: int
    semigroup_gens: tuple[int, ...] = ()
    conductor: int = 0
    gaps: frozenset = field(default=frozenset(), compare=False)

    @property
    def is_semigroup(self) -> bool:
        return self.kind is RingKind.NUMERICAL_SEMIGROUP

    def __str__(self) -> str:
        if self.is_semigroup:
            return "numerical_semigroup(" + ",".join(map(str, self.semigroup_gens)) + ")"
        return f"polynomial_local({self.d})"

    def in_semigroup(self, n: int) -> bool:
        return n >= 0 and (n >= self.conductor or n not in self.gaps)

    def one(self):
        """The unit monomial."""
        return 0 if self.is_semigroup else (0,) * self.d

    def mul(self, a, b):
        if self.is_semigroup:
            return a + b
        return tuple(x + y for x, y in zip(a, b))

    def divides(self, a, b) -> bool:
        if self.is_semigroup:
            return self.in_semigroup(b - a)
        return all(x <= y for x, y in zip(a, b))

    def check_monomial(self, m):
        """Validate and normalize a monomial of this ring."""
        if self.is_semigroup:
            if isinstance(m, (tuple, list)):
                if len(m) != 1:
                    raise InvalidMonomial(f"{m!r} is not a semigroup value")
                m = m[0]
            if not isinstance(m, int) or not self.in_semigroup(m):
                raise InvalidMonomial(f"{m!r} is not an element of {self}")
            return m
        if isinstance(m, int) and self.d == 1:
            m = (m,)
        m = tuple(m)
        if len(m) != self.d or any(not isinstance(x, int) or x < 0 for x in m):
            raise InvalidMonomial(f"{m!r} is not an exponent vector of length {self.d}")
        return m

    def degree(self, m) -> int:
        return m if self.is_semigroup else sum(m)


def polynomial_local(d: int) -> Ring:
    if not isinstance(d, int) or d < 1:
        raise EmptySpec(f"polynomial_local needs d >= 1, got {d!r}")
    return Ring(RingKind.POLYNOMIAL_LOCAL, d)


def _representable(gens: Sequence[int], bound: int) -> list[bool]:
    rep = [False] * (bound + 1)
    rep[0] = True
    for n in range(1, bound + 1):
        rep[n] = any(g <= n and rep[n - g] for g in gens)
    return rep


def numerical_semigroup(*gens: int) -> Ring:
    if len(gens) == 1 and isinstance(gens[0], (list, tuple)):
        gens = tuple(gens[0])
    if not gens:
        raise EmptySpec("numerical_semigroup needs at least one generator")
    if any(not isinstance(g, int) or g <= 0 for g in gens):
        raise EmptySpec(f"semigroup generators must be positive integers, got {gens!r}")
    gens = sorted(set(gens))
    if math.gcd(*gens) != 1:
        raise NonCoprimeSemigroup(f"gcd{tuple(gens)} = {math.gcd(*gens)} != 1")
    # Frobenius number is below a_min * a_max, so this table sees every gap.
    bound = gens[0] * gens[-1] + gens[0]
    rep = _representable(gens, bound)
    gaps = frozenset(n for n in range(1, bound + 1) if not rep[n])
    conductor = max(gaps) + 1 if gaps else 0
    minimal = []
    for g in gens:
        if not _representable(minimal, g)[g]:
            minimal.append(g)
    return Ring(RingKind.NUMERICAL_SEMIGROUP, 1, tuple(minimal), conductor, gaps)


def make_ring(spec) -> Ring:
    """Build a ring from a descriptor.

    Accepted descriptors: an existing :class:`Ring`; ``("polynomial_local", d)``;
    ``("numerical_semigroup", [a1, a2, ...])``; or a mapping with ``kind`` and
    ``d``/``gens`` keys.
    """
    if isinstance(spec, Ring):
        return spec
    if not spec:
        raise EmptySpec("empty ring descriptor")
    if isinstance(spec, dict):
        kind = spec.get("kind")
        arg = spec.get("d") if kind == RingKind.POLYNOMIAL_LOCAL.value else spec.get("gens")
    else:
        kind, arg = spec[0], spec[1] if len(spec) > 1 else None
    if kind in (RingKind.POLYNOMIAL_LOCAL, RingKind.POLYNOMIAL_LOCAL.value):
        return polynomial_local(arg)
    if kind in (RingKind.NUMERICAL_SEMIGROUP, RingKind.NUMERICAL_SEMIGROUP.value):
        if isinstance(arg, int):
            arg = [arg]
        return numerical_semigroup(*(arg or ()))
    raise EmptySpec(f"unknown ring kind {kind!r}")


# ---------------------------------------------------------------------------
# minimalization


def _minimalize_vectors(vectors: Iterable[tuple[int, ...]], d: int) -> tuple[tuple[int, ...], ...]:
    vs = sorted(set(vectors))
    if d == 1:
        return (vs[0],) if vs else ()
    if d == 2:
        out, min_y = [], math.inf
        for v in vs:
            if v[1] < min_y:
                out.append(v)
                min_y = v[1]
        return tuple(out)
    # Lex sweep: every divisor of v precedes v, so v is minimal iff no kept
    # vector's tail divides v's tail.
    out = []
    if d == 3:
        ys: list[int] = []
        zs: list[int] = []
        for v in vs:
            y, z = v[1], v[2]
            i = bisect.bisect_right(ys, y) - 1
            if i >= 0 and zs[i] <= z:
                continue
            out.append(v)
            j = bisect.bisect_left(ys, y)
            k = j
            while k < len(ys) and zs[k] >= z:
                k += 1
            ys[j:k] = [y]
            zs[j:k] = [z]
        return tuple(out)
    # d >= 4: below[i][a] is a bitset of kept vectors whose coordinate i is <= a,
    # so "some kept vector divides v" is one AND per coordinate.
    top = max(max(v) for v in vs) if vs else 0
    below = [[0] * (top + 1) for _ in range(d)]
    for v in vs:
        hit = -1
        for i in range(d):
            hit &= below[i][v[i]]
            if not hit:
                break
        if hit:
            continue
        bit = 1 << len(out)
        out.append(v)
        for i in range(d):
            col = below[i]
            for a in range(v[i], top + 1):
                col[a] |= bit
    return tuple(out)


def _pack(g, shift: int) -> int:
    v = 0
    for e in g:
        v = (v << shift) | e
    return v


def _unpack(v: int, d: int, shift: int) -> tuple[int, ...]:
    mask = (1 << shift) - 1
    out = [0] * d
    for i in range(d - 1, -1, -1):
        out[i] = v & mask
        v >>= shift
    return tuple(out)


def _minimal_packed(vs: list[int], d: int, shift: int) -> tuple[tuple[int, ...], ...]:
    """Minimal elements of sorted packed exponent vectors (same sweeps as below)."""
    mask = (1 << shift) - 1
    if d == 2:
        out, min_y = [], math.inf
        for v in vs:
            y = v & mask
            if y < min_y:
                out.append((v >> shift, y))
                min_y = y
        return tuple(out)
    if d == 3:
        out, ys, zs = [], [], []
        for v in vs:
            y, z = (v >> shift) & mask, v & mask
            i = bisect.bisect_right(ys, y) - 1
            if i >= 0 and zs[i] <= z:
                continue
            out.append((v >> (2 * shift), y, z))
            j = bisect.bisect_left(ys, y)
            k = j
            while k < len(ys) and zs[k] >= z:
                k += 1
            ys[j:k] = [y]
            zs[j:k] = [z]
        return tuple(out)
    return _minimalize_vectors([_unpack(v, d, shift) for v in vs], d)


@functools.lru_cache(maxsize=None)
def _apery(ring: Ring) -> tuple[int, ...]:
    """Smallest semigroup element in each residue class modulo the smallest generator."""
    a = ring.semigroup_gens[0]
    table = [-1] * a
    found, s = 0, 0
    while found < a:
        if ring.in_semigroup(s) and table[s % a] < 0:
            table[s % a] = s
            found += 1
        s += 1
    return tuple(table)


def _minimalize_values(ring: Ring, values: Iterable[int]) -> tuple[int, ...]:
    # v lies in k + S iff v >= k + apery[(v - k) mod a]; threshold[c] keeps the
    # smallest such bound over the kept generators for each residue c.
    apery = _apery(ring)
    a = len(apery)
    threshold = [math.inf] * a
    out: list[int] = []
    for v in sorted(set(values)):
        if v >= threshold[v % a]:
            continue
        out.append(v)
        for c in range(a):
            t = v + apery[(c - v) % a]
            if t < threshold[c]:
                threshold[c] = t
    return tuple(out)


def _minimalize(ring: Ring, gens) -> tuple:
    if ring.is_semigroup:
        return _minimalize_values(ring, gens)
    return _minimalize_vectors(gens, ring.d)


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class MonomialIdeal:
    """A proper monomial ideal held by its sorted minimal generators.

    Construct through :func:`ideal_from_gens`; the raw constructor trusts its
    input.
    """

    ring: Ring
    gens: tuple

    def __str__(self) -> str:
        if self.ring.is_semigroup:
            return "(" + ",".join(map(str, self.gens)) + ")"
        return "(" + ",".join("(" + ",".join(map(str, g)) + ")" for g in self.gens) + ")"

    def __hash__(self):
        # memoized: large generator tuples are hashed on every cache lookup
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.ring, self.gens))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_sum(self, other)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return product(self, other)

    def __pow__(self, n: int) -> "MonomialIdeal":
        return power(self, n)

    def __contains__(self, m) -> bool:
        return contains(self, m)

    def __le__(self, other: "MonomialIdeal") -> bool:
        return is_subideal(self, other)


def ideal_from_gens(ring: Ring, gens) -> MonomialIdeal:
    gens = list(gens)
    if not gens:
        raise EmptySpec("an ideal needs at least one generator")
    checked = [ring.check_monomial(g) for g in gens]
    one = ring.one()
    if any(g == one for g in checked):
        raise UnitGenerator("the unit monomial generates the whole ring")
    return MonomialIdeal(ring, _minimalize(ring, checked))


def maximal_ideal(ring: Ring) -> MonomialIdeal:
    if ring.is_semigroup:
        return MonomialIdeal(ring, ring.semigroup_gens)
    d = ring.d
    return MonomialIdeal(ring, _minimalize_vectors(
        (tuple(int(i == j) for j in range(d)) for i in range(d)), d))


def mu(ideal: MonomialIdeal) -> int:
    """Minimal number of generators."""
    return len(ideal.gens)


def _same_ring(a: MonomialIdeal, b: MonomialIdeal) -> Ring:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    return a.ring


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    ring = _same_ring(a, b)
    return MonomialIdeal(ring, _minimalize(ring, a.gens + b.gens))


@functools.lru_cache(maxsize=65536)
def product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    ring = _same_ring(a, b)
    if ring.is_semigroup:
        cands = {x + y for x in a.gens for y in b.gens}
    elif ring.d == 1:
        cands = [(a.gens[0][0] + b.gens[0][0],)]
    else:
        # Pack each exponent vector into one integer (big-endian, so numeric
        # order is lex order) to make the pairwise sums plain additions.
        top = max(max(g) for g in a.gens) + max(max(g) for g in b.gens) + 1
        shift = top.bit_length()
        pb = [_pack(y, shift) for y in b.gens]
        sums = {x + y for x in (_pack(g, shift) for g in a.gens) for y in pb}
        return MonomialIdeal(ring, _minimal_packed(sorted(sums), ring.d, shift))
    return MonomialIdeal(ring, _minimalize(ring, cands))


@functools.lru_cache(maxsize=65536)
def power(ideal: MonomialIdeal, n: int) -> MonomialIdeal:
    if not isinstance(n, int) or n < 1:
        raise ZeroPower(f"power must be >= 1, got {n!r} (the unit ideal is not representable)")
    if n == 1:
        return ideal
    # One factor at a time: multiplying by the small ideal is far cheaper than
    # squaring a large power, and the cached products make the loop a chain of
    # lookups when smaller powers were needed before.
    p = ideal
    for _ in range(n - 1):
        p = product(p, ideal)
    return p


def product_of_powers(pairs: Iterable[tuple[MonomialIdeal, int]]) -> MonomialIdeal | None:
    """Product of ``I**r`` over pairs with ``r > 0``; None stands for the unit ideal."""
    result = None
    for ideal, r in pairs:
        if r <= 0:
            continue
        if result is None:
            result = power(ideal, r)
            continue
        for _ in range(r):
            result = product(result, ideal)
    return result


def contains(ideal: MonomialIdeal, m) -> bool:
    ring = ideal.ring
    m = ring.check_monomial(m)
    return any(ring.divides(g, m) for g in ideal.gens)


def is_subideal(a: MonomialIdeal, b: MonomialIdeal) -> bool:
    _same_ring(a, b)
    return all(contains(b, g) for g in a.gens)


def equals(a: MonomialIdeal, b: MonomialIdeal) -> bool:
    _same_ring(a, b)
    return a.gens == b.gens


def is_m_primary(ideal: MonomialIdeal) -> bool:
    if ideal.ring.is_semigroup:
        return True
    d = ideal.ring.d
    pure = {i for g in ideal.gens for i in range(d)
            if g[i] > 0 and all(g[j] == 0 for j in range(d) if j != i)}
    return len(pure) == d


# ---------------------------------------------------------------------------
# colength


def _staircase_count(gens: Sequence[tuple[int, ...]], k: int):
    """Number of exponent vectors in N^k outside the ideal generated by ``gens``."""
    if k == 0:
        return 0 if gens else INFINITE
    if not gens:
        return INFINITE
    if k == 1:
        return min(g[0] for g in gens)
    by_first: dict[int, list[tuple[int, ...]]] = {}
    for g in gens:
        by_first.setdefault(g[0], []).append(g[1:])
    xs = sorted(by_first)
    if xs[0] > 0:
        return INFINITE
    total = 0
    active: list[tuple[int, ...]] = []
    min_tail = math.inf
    for i, x in enumerate(xs):
        active.extend(by_first[x])
        if k == 2:
            min_tail = min(min_tail, min(t[0] for t in by_first[x]))
            column = min_tail
        else:
            active = list(_minimalize_vectors(active, k - 1))
            column = _staircase_count(active, k - 1)
        if column == 0:
            return total
        if i == len(xs) - 1:
            return INFINITE
        total += column * (xs[i + 1] - x)
    return total


def _residue_thresholds(ideal: MonomialIdeal) -> list[int]:
    """For each residue c mod the smallest generator a, the least ideal element congruent to c."""
    apery = _apery(ideal.ring)
    a = len(apery)
    return [min(v + apery[(c - v) % a] for v in ideal.gens) for c in range(a)]


@functools.lru_cache(maxsize=65536)
def colength(ideal: MonomialIdeal):
    """ell(R/I): the number of standard monomials, or ``INFINITE``."""
    ring = ideal.ring
    if ring.is_semigroup:
        # residue class c holds apery[c], apery[c] + a, ...; those below the
        # class threshold are exactly the standard monomials
        apery = _apery(ring)
        a = len(apery)
        return sum((t - apery[c]) // a for c, t in enumerate(_residue_thresholds(ideal)))
    return _staircase_count(ideal.gens, ring.d)


def standard_monomials(ideal: MonomialIdeal) -> Iterator:
    """Enumerate the monomials of the ring outside an m-primary ideal."""
    ring = ideal.ring
    if not is_m_primary(ideal):
        raise NotMPrimary(f"{ideal} has infinitely many standard monomials")
    if ring.is_semigroup:
        apery = _apery(ring)
        a = len(apery)
        found = [s for c, t in enumerate(_residue_thresholds(ideal)) for s in range(apery[c], t, a)]
        yield from sorted(found)
        return
    bounds = [max(g[i] for g in ideal.gens) for i in range(ring.d)]
    for m in itertools.product(*(range(b) for b in bounds)):
        if not any(ring.divides(g, m) for g in ideal.gens):
            yield m


def length_quotient(inner: MonomialIdeal, outer: MonomialIdeal) -> int:
    """ell(outer/inner) for inner contained in outer."""
    if not is_subideal(inner, outer):
        raise NotContained(f"{inner} is not contained in {outer}")
    ci, co = colength(inner), colength(outer)
    if ci == INFINITE or co == INFINITE:
        raise NotMPrimary("length_quotient needs m-primary ideals")
    return ci - co
