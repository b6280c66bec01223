"""Executable inequality checks and a seeded random explorer.

Every checker returns :class:`CheckResult` records whose ``holds`` flag can be
recomputed from ``lhs``, ``relation`` and ``rhs``.  Over the supported rings
(all Cohen-Macaulay) a violated check means a bug in this package.
"""

from __future__ import annotations

import operator
import random
from dataclasses import asdict, dataclass, field
from typing import Sequence

from reesmult.errors import (
    ElementNotInIdeal,
    NotMPrimary,
    NotParameterSystem,
    StabilizationFailure,
    UsageError,
)
from reesmult.hilbert import (
    DEFAULT_STABILIZATION,
    StabilizationConfig,
    compositions,
    e_q_pair,
    mixed,
    multiplicity,
)
from reesmult.lattice import (
    MonomialIdeal,
    Ring,
    contains,
    ideal_from_gens,
    ideal_sum,
    is_m_primary,
    length_quotient,
    maximal_ideal,
    mu,
    numerical_semigroup,
    polynomial_local,
    power,
)
from reesmult.rees import (
    ReesInstance,
    e_N_formula,
    joint_reduction_check,
    mu_N,
    reduction_number_dim1,
    rees_dim,
)

RELATIONS = {"<=": operator.le, ">=": operator.ge, "==": operator.eq, ">": operator.gt}
HOLDS, VIOLATED, VACUOUS, UNKNOWN = "holds", "violated", "vacuous", "unknown"


@dataclass
class CheckResult:
    name: str
    instance: str
    lhs: int | None
    rhs: int | None
    relation: str
    mode: str = "Inequality"
    status: str = HOLDS
    info: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool | None:
        if self.status == VACUOUS:
            return True
        if self.status == UNKNOWN:
            return None
        return self.status == HOLDS

    def to_dict(self) -> dict:
        out = asdict(self)
        out["holds"] = self.holds
        return out


def _compare(name, instance, lhs, relation, rhs, mode="Inequality", info=None) -> CheckResult:
    ok = RELATIONS[relation](lhs, rhs)
    return CheckResult(name, instance, lhs, rhs, relation, mode, HOLDS if ok else VIOLATED, info or {})


def _describe(ring: Ring, ideals) -> str:
    return f"{ring}: " + " | ".join(str(i) for i in ideals)


def _require_m_primary(*ideals):
    for i in ideals:
        if not is_m_primary(i):
            raise NotMPrimary(f"{i} is not m-primary")


def check_nog(ring: Ring, I: MonomialIdeal,
              config: StabilizationConfig = DEFAULT_STABILIZATION) -> CheckResult:
    """mu(I) <= e_{d-1}(m|I) + d - 1."""
    _require_m_primary(I)
    d = ring.d
    rhs = mixed([maximal_ideal(ring), I], [1, d - 1], config=config) + d - 1
    return _compare("nog", _describe(ring, [I]), mu(I), "<=", rhs)


def check_kv2(ring: Ring, ideals: Sequence[MonomialIdeal], q: Sequence[int],
              config: StabilizationConfig = DEFAULT_STABILIZATION) -> CheckResult:
    """e(I_1^[q_1+1] | I_2^[q_2] | ...) >= e(I_1 + ... + I_g) for sum(q) = d - 1."""
    _require_m_primary(*ideals)
    if len(q) != len(ideals) or sum(q) != ring.d - 1 or any(x < 0 for x in q):
        raise UsageError(f"q = {tuple(q)} must be a composition of d - 1 = {ring.d - 1} "
                         f"into {len(ideals)} parts")
    weights = [q[0] + 1] + list(q[1:])
    total = ideals[0]
    for i in ideals[1:]:
        total = ideal_sum(total, i)
    return _compare("kv2", _describe(ring, ideals) + f" q={tuple(q)}",
                    mixed(ideals, weights, config=config), ">=",
                    multiplicity(total, config=config))


def check_isw(ring: Ring, ideals: Sequence[MonomialIdeal], elements: Sequence,
              joint_info: bool = True,
              config: StabilizationConfig = DEFAULT_STABILIZATION) -> CheckResult:
    """e(I_1 | ... | I_d) <= e(x_1, ..., x_d) for x_i in I_i generating an m-primary ideal.

    With ``joint_info`` the result also records whether the elements form a
    joint reduction (informational; never part of ``holds``).
    """
    d = ring.d
    if len(ideals) != d or len(elements) != d:
        raise UsageError(f"need exactly d = {d} ideals and elements")
    _require_m_primary(*ideals)
    elements = [ring.check_monomial(x) for x in elements]
    for x, I in zip(elements, ideals):
        if not contains(I, x):
            raise ElementNotInIdeal(f"{x} is not in {I}")
    params = ideal_from_gens(ring, elements)
    if not is_m_primary(params):
        raise NotParameterSystem(f"{params} is not m-primary")
    lhs = mixed(ideals, [1] * d, config=config)
    rhs = multiplicity(params, config=config)
    info = {}
    if joint_info:
        info["jointReduction"] = joint_reduction_check(elements, ReesInstance(ring, tuple(ideals)))
    return _compare("isw", _describe(ring, ideals) + f" x={elements}", lhs, "<=", rhs, info=info)


def check_scaling(ring: Ring, I: MonomialIdeal, r: int, q: int,
                  config: StabilizationConfig = DEFAULT_STABILIZATION) -> list[CheckResult]:
    """e(m^r) = r^d e(m) and e_q(m^r|I) = r^(d-q) e_q(m|I)."""
    _require_m_primary(I)
    d = ring.d
    if r < 1:
        raise UsageError("r must be >= 1")
    m = maximal_ideal(ring)
    mr = power(m, r)
    desc = _describe(ring, [I]) + f" r={r} q={q}"
    e_m = multiplicity(m, config=config)
    e_q = e_q_pair(m, I, q, config=config)
    return [
        _compare("scaling.e", desc, multiplicity(mr, config=config), "==", r ** d * e_m, "Equality"),
        _compare("scaling.eq", desc, e_q_pair(mr, I, q, config=config), "==", r ** (d - q) * e_q, "Equality"),
    ]


def check_equation_strict_g3(instance: ReesInstance,
                             config: StabilizationConfig = DEFAULT_STABILIZATION) -> CheckResult:
    """For g >= 3: e(N) > mu(N) - dim B + 1, so minimal multiplicity is impossible."""
    if instance.g < 3:
        raise UsageError("the strict inequality concerns g >= 3")
    return _compare("g3", _describe(instance.ring, instance.ideals),
                    e_N_formula(instance, config), ">", mu_N(instance) - rees_dim(instance) + 1)


def check_necessary_conditions_g2(instance: ReesInstance,
                                  config: StabilizationConfig = DEFAULT_STABILIZATION) -> list[CheckResult]:
    """Consequences of e(N) = mu(N) - dim B + 1 for g = 2."""
    if instance.g != 2:
        raise UsageError("the necessary conditions concern g = 2")
    ring, d = instance.ring, instance.d
    m, L = instance.m, instance.L
    desc = _describe(ring, instance.ideals)
    eN = e_N_formula(instance, config)
    bound = mu_N(instance) - rees_dim(instance) + 1
    ell = length_quotient(power(m, 2), L)
    names = ["length.positive"]
    if d >= 2:
        names.append("length.at_most_d")
    if d >= 3:
        names += ["length.equals_d", "ring.regular"]
        names += [f"generators[{j}]" for j in (1, 2)]
        names += [f"mixed_with_L[{j},q={q}]" for j in (1, 2) for q in range(d - 1)]
    if d == 2:
        names += ["ring.minimal_multiplicity"] + [f"generators[{j}]" for j in (1, 2)]
    names += [f"reduction_number[{j}]" for j in (1, 2)]
    if eN != bound:
        return [CheckResult(n, desc, None, None, "", "Implication", VACUOUS,
                            {"eN": eN, "bound": bound}) for n in names]

    out = [_compare("length.positive", desc, ell, ">=", 1, "Implication")]
    if d >= 2:
        out.append(_compare("length.at_most_d", desc, ell, "<=", d, "Implication"))
    if d >= 3:
        out.append(_compare("length.equals_d", desc, ell, "==", d, "Implication"))
        out.append(_compare("ring.regular", desc, multiplicity(m, config=config), "==", 1, "Implication"))
        for j, I in enumerate(instance.ideals, 1):
            out.append(_compare(f"generators[{j}]", desc, mu(I), "==",
                                mixed([m, I], [1, d - 1], config=config) + d - 1, "Implication"))
        for j, I in enumerate(instance.ideals, 1):
            for q in range(d - 1):
                out.append(_compare(f"mixed_with_L[{j},q={q}]", desc, e_q_pair(L, I, q, config=config),
                                    "==", 1, "Implication"))
    if d == 2:
        if ell == 2:
            out.append(_compare("ring.minimal_multiplicity", desc, multiplicity(m, config=config), "==",
                                mu(m) - 1, "Implication"))
            for j, I in enumerate(instance.ideals, 1):
                out.append(_compare(f"generators[{j}]", desc, mu(I), "==",
                                    mixed([m, I], [1, 1], config=config) + 1, "Implication"))
        else:
            out += [CheckResult(n, desc, None, None, "", "Implication", VACUOUS, {"ell": ell})
                    for n in ["ring.minimal_multiplicity", "generators[1]", "generators[2]"]]
    for j, I in enumerate(instance.ideals, 1):
        name = f"reduction_number[{j}]"
        if d == 1:
            r = reduction_number_dim1(I)
            if r <= 1:
                out.append(_compare(name, desc, r, "<=", 1, "Implication"))
            else:
                # This conclusion needs B_N to be Cohen-Macaulay, not just the numeric
                # equation.  Under the equation, CM would force J N = N^2 and hence
                # r <= 1, so r > 1 certifies that the hypothesis fails.
                out.append(CheckResult(name, desc, r, 1, "<=", "Implication", VACUOUS,
                                       {"reason": "r > 1 certifies that B_N is not Cohen-Macaulay"}))
        else:
            out.append(CheckResult(name, desc, None, 1, "<=", "Implication", UNKNOWN,
                                   {"reason": "minimal reductions are not monomial in dimension >= 2"}))
    return out


# ---------------------------------------------------------------------------
# random exploration

DEFAULT_SEMIGROUPS = ((2, 3), (3, 4), (3, 5), (3, 4, 5), (4, 5, 7), (4, 6, 7), (5, 6, 7, 8))
ALL_CHECKS = ("nog", "kv2", "isw", "scaling", "g3", "g2")
IDEAL_MODELS = ("box", "near_square")


@dataclass(frozen=True)
class ExploreConfig:
    ring_family: str = "polynomial"
    d: int = 2
    g: int = 2
    generator_count_range: tuple = (1, 3)
    exponent_bound: int = 4
    trials: int = 100
    seed: int = 0
    checks: tuple = ALL_CHECKS
    semigroups: tuple = DEFAULT_SEMIGROUPS
    # "box": random generators in the exponent box; "near_square": m or m^2 plus a few
    # small monomials, which lands on the minimal-multiplicity equation far more often
    ideal_model: str = "box"

    def __post_init__(self):
        if not isinstance(self.trials, int) or self.trials < 1:
            raise UsageError(f"trials must be >= 1, got {self.trials!r}")
        if self.ring_family not in ("polynomial", "semigroup"):
            raise UsageError(f"unknown ring family {self.ring_family!r}")
        if self.ring_family == "semigroup" and self.d != 1:
            raise UsageError("numerical semigroup rings have dimension 1")
        if self.d < 1 or self.g < 1 or self.exponent_bound < 1:
            raise UsageError("d, g and exponent_bound must be positive")
        lo, hi = self.generator_count_range
        if not 0 <= lo <= hi:
            raise UsageError("bad generator count range")
        if self.ideal_model not in IDEAL_MODELS:
            raise UsageError(f"unknown ideal model {self.ideal_model!r}")
        unknown = set(self.checks) - set(ALL_CHECKS)
        if unknown:
            raise UsageError(f"unknown checks {sorted(unknown)}")


def random_ideal(rng: random.Random, ring: Ring, count: int, bound: int) -> MonomialIdeal:
    """Random m-primary ideal: ``count`` random monomials plus forced pure powers."""
    if ring.is_semigroup:
        top = bound * max(ring.semigroup_gens)
        elements = [s for s in range(1, top + 1) if ring.in_semigroup(s)]
        return ideal_from_gens(ring, [rng.choice(elements) for _ in range(max(count, 1))])
    d = ring.d
    gens = []
    for _ in range(count):
        v = tuple(rng.randint(0, bound) for _ in range(d))
        if any(v):
            gens.append(v)
    for i in range(d):
        gens.append(tuple(rng.randint(1, bound) if j == i else 0 for j in range(d)))
    return ideal_from_gens(ring, gens)


def near_square_ideal(rng: random.Random, ring: Ring) -> MonomialIdeal:
    """m or m^2, usually enlarged by up to two monomials of exponent at most 2."""
    base = power(maximal_ideal(ring), rng.choice((1, 2, 2)))
    if rng.random() < 0.7:
        return ideal_sum(base, random_ideal(rng, ring, rng.randint(0, 2), 2))
    return base


def _pure_power(I: MonomialIdeal, var: int):
    d = I.ring.d
    pure = (g for g in I.gens if all(g[j] == 0 for j in range(d) if j != var))
    return min(pure, key=lambda g: g[var])


def random_instance(rng: random.Random, config: ExploreConfig) -> ReesInstance:
    if config.ring_family == "semigroup":
        ring = numerical_semigroup(*rng.choice(config.semigroups))
    else:
        ring = polynomial_local(config.d)
    if config.ideal_model == "near_square":
        return ReesInstance(ring, tuple(near_square_ideal(rng, ring) for _ in range(config.g)))
    lo, hi = config.generator_count_range
    ideals = tuple(random_ideal(rng, ring, rng.randint(lo, hi), config.exponent_bound)
                   for _ in range(config.g))
    return ReesInstance(ring, ideals)


def run_checks(rng: random.Random, instance: ReesInstance, checks,
               stabilization: StabilizationConfig = DEFAULT_STABILIZATION) -> list[CheckResult]:
    ring, d, ideals = instance.ring, instance.d, instance.ideals
    kw = {"config": stabilization}
    out: list[CheckResult] = []
    if "nog" in checks:
        out += [check_nog(ring, I, **kw) for I in ideals]
    if "kv2" in checks:
        comps = list(compositions(d - 1, len(ideals)))
        out.append(check_kv2(ring, ideals, rng.choice(comps), **kw))
    if "isw" in checks:
        chosen = [rng.choice(ideals) for _ in range(d)]
        if ring.is_semigroup:
            elements = [rng.choice(chosen[0].gens)]
        else:
            perm = list(range(d))
            rng.shuffle(perm)
            elements = [_pure_power(I, v) for I, v in zip(chosen, perm)]
        out.append(check_isw(ring, chosen, elements, joint_info=d <= 2, **kw))
    if "scaling" in checks:
        out += check_scaling(ring, rng.choice(ideals), rng.randint(1, 3), rng.randint(0, d - 1), **kw)
    if "g3" in checks and len(ideals) >= 3:
        out.append(check_equation_strict_g3(instance, **kw))
    if "g2" in checks and len(ideals) == 2:
        out += check_necessary_conditions_g2(instance, **kw)
    return out


def explore_random(config: ExploreConfig,
                   stabilization: StabilizationConfig = DEFAULT_STABILIZATION) -> dict:
    """Run every selected checker on ``config.trials`` seeded random instances."""
    counts: dict[str, dict[str, int]] = {}
    violations, failures = [], []
    for trial in range(config.trials):
        rng = random.Random(f"{config.seed}/{trial}")
        instance = random_instance(rng, config)
        try:
            results = run_checks(rng, instance, config.checks, stabilization)
        except StabilizationFailure as exc:
            failures.append({"trial": trial, "instance": _describe(instance.ring, instance.ideals),
                             "message": str(exc)})
            continue
        for res in results:
            family = res.name.split("[")[0].split(".")[0]
            tally = counts.setdefault(family, {HOLDS: 0, VIOLATED: 0, VACUOUS: 0, UNKNOWN: 0})
            tally[res.status] += 1
            if res.status == VIOLATED:
                violations.append({"trial": trial, **res.to_dict()})
    violations.sort(key=lambda v: (v["instance"], v["name"], v["trial"]))
    return {
        "config": {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(config).items()},
        "trials": config.trials,
        "counts": dict(sorted(counts.items())),
        "violationCount": len(violations),
        "violations": violations,
        "stabilizationFailures": failures,
    }
