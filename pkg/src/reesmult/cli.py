"""Command line entry point: ``reesmult <verb> ...``.

Exit codes: 0 success, 1 usage error, 2 violated invariant, 3 stabilization
failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass, field

from reesmult.dsl import Session, parse_generators, parse_session
from reesmult.errors import (
    CacheError,
    ReesMultError,
    StabilizationFailure,
    UsageError,
)
from reesmult.hilbert import DEFAULT_CACHE, StabilizationConfig, mixed, multiplicity
from reesmult.lattice import colength, ideal_from_gens, is_m_primary, mu
from reesmult.rees import (
    NOT_REDUCTION,
    ReesInstance,
    minimal_multiplicity_verdict,
    reduction_number_dim1,
    reduction_number_monomial,
    rees_dim,
)
from reesmult.report import SCHEMA, emit_report, rees_report_dict
from reesmult.theorems import (
    IDEAL_MODELS,
    VIOLATED,
    ExploreConfig,
    check_equation_strict_g3,
    check_isw,
    check_kv2,
    check_necessary_conditions_g2,
    check_nog,
    check_scaling,
    explore_random,
)

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_STABILIZATION = 0, 1, 2, 3
VERBS = ("analyze", "mixed", "colength", "reduction", "verify", "explore")
THEOREMS = ("nog", "kv2", "isw", "scaling", "g3", "g2")


@dataclass
class Command:
    verb: str
    args: dict = field(default_factory=dict)
    oracle: str = "off"
    n_max: int = 20
    stabilization: StabilizationConfig = StabilizationConfig()
    n_cap: int = 12

    def __post_init__(self):
        if self.verb not in VERBS:
            raise UsageError(f"unknown verb {self.verb!r}")
        if self.oracle not in ("auto", "on", "off"):
            raise UsageError(f"--oracle must be auto, on or off, got {self.oracle!r}")
        if self.n_max < 0:
            raise UsageError("--nmax must be nonnegative")


def _ideals(session: Session, names) -> list:
    if not names:
        raise UsageError("no ideals given")
    return [session.ideal(n) for n in names]


def _one_ring(ideals):
    ring = ideals[0].ring
    if any(i.ring != ring for i in ideals):
        raise UsageError("all ideals must live in the same ring")
    return ring


def _check_status(checks) -> int:
    return EXIT_VIOLATION if any(c.status == VIOLATED for c in checks) else EXIT_OK


def run_command(session: Session | None, command: Command) -> tuple[dict, int]:
    """Dispatch one validated command; returns the report and the exit code."""
    verb, a, stab = command.verb, command.args, command.stabilization
    start = time.perf_counter()
    report: dict = {"schema": SCHEMA, "command": verb}
    code = EXIT_OK

    if verb == "analyze":
        ideals = _ideals(session, a.get("ideals"))
        instance = ReesInstance(_one_ring(ideals), tuple(ideals))
        oracle = command.oracle == "on" or (command.oracle == "auto" and rees_dim(instance) <= 4)
        rr = minimal_multiplicity_verdict(instance, with_oracle=oracle, config=stab, n_cap=command.n_cap)
        checks = []
        if instance.g == 2:
            checks = check_necessary_conditions_g2(instance, config=stab)
        elif instance.g >= 3:
            checks = [check_equation_strict_g3(instance, config=stab)]
        report = rees_report_dict(rr, checks)
        report["instance"]["names"] = list(a["ideals"])
        if not rr.oracle_agrees:
            code = EXIT_VIOLATION
        code = max(code, _check_status(checks))

    elif verb == "mixed":
        ideals = _ideals(session, a.get("ideals"))
        weights = a.get("weights") or []
        value = mixed(ideals, weights, config=stab)
        report.update({"query": {"ideals": list(a["ideals"]), "generators": [str(i) for i in ideals],
                                 "weights": list(weights)}, "value": value})

    elif verb == "colength":
        rows = []
        for name, ideal in zip(a["ideals"], _ideals(session, a.get("ideals"))):
            c = colength(ideal)
            row = {"ideal": name, "generators": str(ideal), "mu": mu(ideal),
                   "colength": None if c == float("inf") else c, "mPrimary": is_m_primary(ideal)}
            row["multiplicity"] = multiplicity(ideal, config=stab) if row["mPrimary"] else None
            rows.append(row)
        report["results"] = rows

    elif verb == "reduction":
        (name,) = a["ideals"][:1] or (None,)
        I = _ideals(session, a.get("ideals"))[0]
        if a.get("by"):
            J = session.ideal(a["by"])
            r = reduction_number_monomial(I, J, command.n_max)
            report.update({"ideal": name, "reduction": a["by"],
                           "reductionNumber": None if r is NOT_REDUCTION else r,
                           "isReduction": r is not NOT_REDUCTION})
        else:
            report.update({"ideal": name, "reductionNumber": reduction_number_dim1(I),
                           "minimalReduction": str(ideal_from_gens(I.ring, [min(I.gens)]))})

    elif verb == "verify":
        checks = _verify(session, a, stab)
        report["theorem"] = a["theorem"]
        report["checks"] = [c.to_dict() for c in checks]
        code = _check_status(checks)

    elif verb == "explore":
        cfg = ExploreConfig(**a["config"])
        summary = explore_random(cfg, stab)
        report.update(summary)
        if summary["violations"]:
            code = EXIT_VIOLATION

    report["timingMs"] = int((time.perf_counter() - start) * 1000)
    return report, code


def _verify(session: Session, a: dict, stab):
    theorem = a.get("theorem")
    if theorem not in THEOREMS:
        raise UsageError(f"--theorem must be one of {', '.join(THEOREMS)}")
    ideals = _ideals(session, a.get("ideals"))
    ring = _one_ring(ideals)
    for name, i in zip(a["ideals"], ideals):
        if not is_m_primary(i):
            raise UsageError(f"ideal {name} = {i} is not m-primary")
    q = a.get("q")
    if theorem == "nog":
        return [check_nog(ring, i, config=stab) for i in ideals]
    if theorem == "kv2":
        if q is None:
            raise UsageError("kv2 needs --q with one entry per ideal summing to d - 1")
        return [check_kv2(ring, ideals, q, config=stab)]
    if theorem == "isw":
        if not a.get("elements"):
            raise UsageError("isw needs --elements")
        return [check_isw(ring, ideals, parse_generators(a["elements"], ring), config=stab)]
    if theorem == "scaling":
        r = a.get("r") or 1
        qq = q[0] if q else 0
        return [c for i in ideals for c in check_scaling(ring, i, r, qq, config=stab)]
    instance = ReesInstance(ring, tuple(ideals))
    if theorem == "g3":
        return [check_equation_strict_g3(instance, config=stab)]
    return check_necessary_conditions_g2(instance, config=stab)


# ---------------------------------------------------------------------------
# argument handling


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _name_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="reesmult", description="Multiplicities of multi-graded extended Rees algebras.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of a text table")
    common.add_argument("--cache", help="sample cache file (default: $REESMULT_CACHE)")
    common.add_argument("--verify-cache", action="store_true", help="recompute every cached value on load")
    common.add_argument("--nmax", type=int, default=20, help="largest power tried for reduction numbers")
    common.add_argument("--stab-window", type=int, default=2,
                        help="consecutive equal differences needed to accept a value")
    common.add_argument("--stab-cap", type=int, default=64, help="largest sampling base before giving up")

    def with_file(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file", help="session file ('-' for stdin)")
        return p

    p = with_file("analyze", "minimal-multiplicity report for B(I_1, ..., I_g)")
    p.add_argument("--ideals", type=_name_list, required=True, help="comma-separated ideal names")
    p.add_argument("--oracle", choices=("auto", "on", "off"), default="off",
                   help="cross-check by direct enumeration ('auto': only when d + g <= 4)")
    p.add_argument("--ncap", type=int, default=12, help="largest power of N sampled by the oracle")

    p = with_file("mixed", "one mixed multiplicity")
    p.add_argument("--ideals", type=_name_list, required=True, help="comma-separated ideal names")
    p.add_argument("--weights", type=_int_list, required=True, help="one nonnegative weight per ideal, summing to d")

    p = with_file("colength", "colength, mu and multiplicity of ideals")
    p.add_argument("--ideals", "--ideal", type=_name_list, required=True)

    p = with_file("reduction", "reduction numbers")
    p.add_argument("--ideal", dest="ideals", type=_name_list, required=True)
    p.add_argument("--by", help="reduction ideal J (default: minimal reduction, dimension 1 only)")

    p = with_file("verify", "run one theorem checker")
    p.add_argument("--theorem", choices=THEOREMS, required=True)
    p.add_argument("--ideals", type=_name_list, required=True, help="comma-separated ideal names")
    p.add_argument("--q", type=_int_list, help="mixed-multiplicity indices (kv2, scaling)")
    p.add_argument("--r", type=int, help="power of m for the scaling check (default 1)")
    p.add_argument("--elements", help="generator list, e.g. '(0,1),(1,0)' or '4'")

    p = sub.add_parser("explore", parents=[common], help="seeded random search for violations")
    p.add_argument("--family", choices=("polynomial", "semigroup"), default="polynomial")
    p.add_argument("--dim", type=int, default=2, help="ring dimension (1 for semigroup rings)")
    p.add_argument("--g", type=int, default=2, help="number of ideals per instance")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=4, help="exponent bound for random generators")
    p.add_argument("--gens", type=_int_list, default=[1, 3], help="generator count range lo,hi")
    p.add_argument("--checks", type=_name_list, default=list(THEOREMS))
    p.add_argument("--model", choices=IDEAL_MODELS, default="box", help="how random ideals are drawn")
    return parser


def _command_from_args(ns) -> Command:
    args: dict = {}
    if ns.verb == "explore":
        if len(ns.gens) != 2:
            raise UsageError("--gens takes lo,hi")
        args["config"] = dict(ring_family=ns.family, d=ns.dim, g=ns.g, generator_count_range=tuple(ns.gens),
                              exponent_bound=ns.bound, trials=ns.trials, seed=ns.seed, checks=tuple(ns.checks),
                              ideal_model=ns.model)
    else:
        for key in ("ideals", "weights", "by", "theorem", "q", "r", "elements"):
            if hasattr(ns, key):
                args[key] = getattr(ns, key)
    if ns.stab_window < 1 or ns.stab_cap < 1:
        raise UsageError("--stab-window and --stab-cap must be positive")
    return Command(ns.verb, args, oracle=getattr(ns, "oracle", "off"), n_max=ns.nmax,
                   stabilization=StabilizationConfig(ns.stab_window, ns.stab_cap),
                   n_cap=getattr(ns, "ncap", 12))


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already printed by argparse
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    fmt = "json" if ns.json else "text"
    cache_path = ns.cache or os.environ.get("REESMULT_CACHE")
    try:
        command = _command_from_args(ns)
        session = parse_session(_read(ns.file)) if hasattr(ns, "file") else None
        if cache_path and os.path.exists(cache_path):
            DEFAULT_CACHE.load(cache_path, verify=ns.verify_cache)
        report, code = run_command(session, command)
        if cache_path:
            DEFAULT_CACHE.store(cache_path)
    except StabilizationFailure as exc:
        return _fail(fmt, ns.verb, "StabilizationFailure", str(exc), EXIT_STABILIZATION,
                     {"candidates": list(exc.candidates)})
    except CacheError as exc:
        return _fail(fmt, ns.verb, type(exc).__name__, str(exc), EXIT_VIOLATION)
    except (UsageError, OSError, UnicodeDecodeError) as exc:
        return _fail(fmt, ns.verb, type(exc).__name__, str(exc), EXIT_USAGE)
    except ReesMultError as exc:
        return _fail(fmt, ns.verb, type(exc).__name__, str(exc), EXIT_VIOLATION)
    sys.stdout.buffer.write(emit_report(report, fmt))
    sys.stdout.flush()
    return code


def _fail(fmt, verb, kind, message, code, extra=None) -> int:
    if fmt == "json":
        err = {"schema": SCHEMA, "command": verb, "error": {"type": kind, "message": message, **(extra or {})}}
        sys.stdout.buffer.write(emit_report(err, "json"))
        sys.stdout.flush()
    print(f"reesmult: {kind}: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
