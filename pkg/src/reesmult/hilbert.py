"""Length functions of ideal families and their (mixed) multiplicities.

Mixed multiplicities are indexed by total weight d: ``e(I_1^[q_1]|...|I_g^[q_g])``
with ``sum(q) == d`` is the normalized coefficient of ``r^q / q!`` in the
polynomial ``ell(R / I_1^r_1 ... I_g^r_g)``.  The iterated forward difference
``Delta_1^q_1 ... Delta_g^q_g`` of that polynomial is exactly this number, so
we take differences of sampled colengths and wait until they settle.
"""

from __future__ import annotations

import json
import math
import os
import threading
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterable, Sequence

from reesmult.errors import (
    CacheFormatError,
    CacheInconsistency,
    NotMPrimary,
    QOutOfRange,
    RingMismatch,
    StabilizationFailure,
    UsageError,
)
from reesmult.lattice import (
    INFINITE,
    MonomialIdeal,
    Ring,
    colength,
    ideal_from_gens,
    is_m_primary,
    make_ring,
    product_of_powers,
)

CACHE_FORMAT = "s1"


# ---------------------------------------------------------------------------
# sample keys and the cache


def _gen_text(ring: Ring, g) -> str:
    return str(g) if ring.is_semigroup else ",".join(map(str, g))


def canonical_pairs(ideals: Sequence[MonomialIdeal], r: Sequence[int]) -> tuple:
    """Merge equal ideals, drop zero exponents, sort: the product is unchanged."""
    merged: dict[MonomialIdeal, int] = {}
    for ideal, e in zip(ideals, r):
        if e > 0:
            merged[ideal] = merged.get(ideal, 0) + e
    return tuple(sorted(merged.items(), key=lambda p: (p[0].gens, p[1])))


def sample_key(ring: Ring, pairs) -> str:
    """Key text: ``s1|<ring>|<gens>^<r>|...`` with generators joined by ``;``."""
    if ring.is_semigroup:
        ring_text = "NS:" + ",".join(map(str, ring.semigroup_gens))
    else:
        ring_text = f"PL:{ring.d}"
    parts = [CACHE_FORMAT, ring_text]
    for ideal, e in pairs:
        parts.append(";".join(_gen_text(ring, g) for g in ideal.gens) + f"^{e}")
    return "|".join(parts)


def parse_sample_key(key: str) -> tuple[Ring, tuple]:
    parts = key.split("|")
    if len(parts) < 2 or parts[0] != CACHE_FORMAT:
        raise ValueError(f"unknown key format {parts[0]!r}")
    kind, _, arg = parts[1].partition(":")
    if kind == "PL":
        ring = make_ring(("polynomial_local", int(arg)))
    elif kind == "NS":
        ring = make_ring(("numerical_semigroup", [int(a) for a in arg.split(",")]))
    else:
        raise ValueError(f"unknown ring tag {kind!r}")
    pairs = []
    for factor in parts[2:]:
        gens_text, _, e = factor.rpartition("^")
        if ring.is_semigroup:
            gens = [int(g) for g in gens_text.split(";")]
        else:
            gens = [tuple(int(x) for x in g.split(",")) for g in gens_text.split(";")]
        pairs.append((ideal_from_gens(ring, gens), int(e)))
    return ring, tuple(pairs)


class SampleCache:
    """Write-once map from sample keys to colengths.

    Writes go through a lock; recomputing a key concurrently is harmless because
    the stored value must agree.
    """

    def __init__(self):
        self._data: dict[str, int] = {}
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._data)

    def __contains__(self, key):
        return key in self._data

    def get(self, key):
        return self._data.get(key)

    def put(self, key: str, value: int) -> None:
        with self._lock:
            old = self._data.get(key)
            if old is not None and old != value:
                raise CacheInconsistency(f"{key}: stored {old}, new {value}")
            self._data[key] = value

    def items(self):
        return sorted(self._data.items())

    def store(self, path) -> None:
        tmp = f"{path}.tmp{os.getpid()}"
        with open(tmp, "w", encoding="utf-8") as fh:
            for k, v in self.items():
                fh.write(json.dumps({"k": k, "v": str(v)}) + "\n")
        os.replace(tmp, path)

    def load(self, path, verify: bool = False) -> "SampleCache":
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise CacheFormatError(f"invalid JSON: {exc.msg} at column {exc.colno}", lineno)
                if not isinstance(rec, dict) or set(rec) != {"k", "v"}:
                    raise CacheFormatError('record must have exactly the keys "k" and "v"', lineno)
                k, v = rec["k"], rec["v"]
                if not isinstance(k, str) or not isinstance(v, str) or not v.isdigit():
                    raise CacheFormatError("key must be a string, value a decimal string", lineno)
                if verify:
                    try:
                        _, pairs = parse_sample_key(k)
                    except (ValueError, UsageError) as exc:
                        raise CacheFormatError(f"unparsable key: {exc}", lineno)
                    actual = _colength_of(pairs)
                    if actual != int(v):
                        raise CacheInconsistency(f"line {lineno}: {k} stored {v}, recomputed {actual}")
                self.put(k, int(v))
        return self


DEFAULT_CACHE = SampleCache()


def _colength_of(pairs) -> int:
    prod = product_of_powers(pairs)
    if prod is None:
        return 0
    value = colength(prod)
    if value == INFINITE:
        raise NotMPrimary(f"product {prod} is not m-primary")
    return value


def sample_length(ideals: Sequence[MonomialIdeal], r: Sequence[int], cache: SampleCache | None = None) -> int:
    """ell(R / I_1^r_1 ... I_g^r_g), with ``I^0 = R``."""
    if len(ideals) != len(r):
        raise UsageError("one exponent per ideal")
    if any(e < 0 for e in r):
        raise UsageError(f"exponents must be nonnegative, got {tuple(r)}")
    pairs = canonical_pairs(ideals, r)
    if not pairs:
        return 0
    ring = pairs[0][0].ring
    cache = DEFAULT_CACHE if cache is None else cache
    key = sample_key(ring, pairs)
    value = cache.get(key)
    if value is None:
        value = _colength_of(pairs)
        cache.put(key, value)
    return value


# ---------------------------------------------------------------------------
# multiplicities


@dataclass(frozen=True)
class StabilizationConfig:
    """When to trust an iterated difference.

    At each base point b = 1, 2, 4, ... up to ``cap`` the difference is taken at
    ``window`` consecutive points; a constant window is accepted once the same
    constant has also appeared at ``confirmations`` further doubled base points.
    """

    window: int = 2
    cap: int = 64
    confirmations: int = 2


DEFAULT_STABILIZATION = StabilizationConfig()


@dataclass(frozen=True)
class MixedMultiplicityQuery:
    ideals: tuple
    weights: tuple

    def __post_init__(self):
        ideals, weights = tuple(self.ideals), tuple(self.weights)
        object.__setattr__(self, "ideals", ideals)
        object.__setattr__(self, "weights", weights)
        if not ideals:
            raise UsageError("a mixed multiplicity needs at least one ideal")
        if len(ideals) != len(weights):
            raise UsageError(f"{len(ideals)} ideals but {len(weights)} weights")
        ring = ideals[0].ring
        if any(i.ring != ring for i in ideals):
            raise RingMismatch("all ideals must live in one ring")
        if any(not isinstance(w, int) or w < 0 for w in weights):
            raise UsageError(f"weights must be nonnegative integers, got {weights}")
        if sum(weights) != ring.d:
            raise UsageError(f"weights {weights} must sum to dim R = {ring.d}")
        for i in ideals:
            if not is_m_primary(i):
                raise NotMPrimary(f"{i} is not m-primary")

    @property
    def ring(self) -> Ring:
        return self.ideals[0].ring


def _difference(ideals, weights, base, cache) -> int:
    total = 0
    ranges = [range(w + 1) for w in weights]
    top = sum(weights)
    for eps in cartesian(*ranges):
        coeff = (-1) ** (top - sum(eps))
        for w, e in zip(weights, eps):
            coeff *= math.comb(w, e)
        total += coeff * sample_length(ideals, [base + e for e in eps], cache)
    return total


def mixed_multiplicity(
    query: MixedMultiplicityQuery,
    config: StabilizationConfig = DEFAULT_STABILIZATION,
    cache: SampleCache | None = None,
    drop_zero_weights: bool = True,
) -> int:
    """e(I_1^[q_1] | ... | I_g^[q_g]) by stabilized iterated differences.

    With ``drop_zero_weights`` the ideals of weight 0 are left out of the
    product; the number is the same, and the samples are smaller.
    """
    ideals, weights = query.ideals, query.weights
    if drop_zero_weights:
        kept = [(i, w) for i, w in zip(ideals, weights) if w > 0]
        ideals, weights = [i for i, _ in kept], [w for _, w in kept]
    if config.window < 1 or config.cap < 1 or config.confirmations < 0:
        raise UsageError("stabilization window and cap must be positive")
    # Short plateaus such as 9, 9, 9, 10, 10, ... occur in semigroup rings, so one
    # constant window is not enough evidence on its own.
    base, last, streak, settled = 1, [], 0, None
    while base <= config.cap:
        values = [_difference(ideals, weights, base + k, cache) for k in range(config.window)]
        if len(set(values)) == 1:
            streak = streak + 1 if settled == values[0] else 1
            settled = values[0]
            if streak > config.confirmations:
                return settled
        else:
            streak, settled = 0, None
        last = (last + values)[-2:]
        base *= 2
    raise StabilizationFailure(
        f"differences for weights {tuple(query.weights)} did not settle by base point {config.cap}: "
        f"last candidates {last}", last)


def mixed(ideals: Sequence[MonomialIdeal], weights: Sequence[int], **kwargs) -> int:
    return mixed_multiplicity(MixedMultiplicityQuery(tuple(ideals), tuple(weights)), **kwargs)


def multiplicity(ideal: MonomialIdeal, **kwargs) -> int:
    """Hilbert-Samuel multiplicity e(I)."""
    return mixed([ideal], [ideal.ring.d], **kwargs)


def e_q_pair(i1: MonomialIdeal, i2: MonomialIdeal, q: int, **kwargs) -> int:
    """e_q(I1|I2) = e(I1^[d-q] | I2^[q]) for 0 <= q <= d-1."""
    d = i1.ring.d
    if not isinstance(q, int) or not 0 <= q <= d - 1:
        raise QOutOfRange(f"q must lie in [0, {d - 1}], got {q!r}")
    return mixed([i1, i2], [d - q, q], **kwargs)


def compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    """Ordered tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest
