"""Acceptance criteria, one test per criterion.

Each test records a ``PASS``/``FAIL`` line with its measured runtime.  Under
pytest the lines are printed in the terminal summary (see ``conftest.py``);
running this file directly prints them as each criterion finishes.
"""

import itertools
import json
import math
import random
import sys
import time
from pathlib import Path

from reesmult.cli import Command, run_command
from reesmult.dsl import parse_session
from reesmult.errors import ParseError
from reesmult.hilbert import DEFAULT_CACHE, multiplicity
from reesmult.lattice import (
    ideal_from_gens,
    is_m_primary,
    maximal_ideal,
    mu,
    numerical_semigroup,
    polynomial_local,
    power,
)
from reesmult.rees import (
    ReesInstance,
    check_reduction_equation_bounded,
    e_N_direct,
    e_N_formula,
    minimal_multiplicity_verdict,
    mu_N,
    mu_N_direct,
    rees_dim,
    reduction_generators_m_mr,
)
from reesmult.report import emit_report
from reesmult.theorems import VIOLATED, ExploreConfig, explore_random

SESSIONS = Path(__file__).resolve().parent.parent / "sessions"
LINES: list[str] = []


def record(number: int, title: str, limit_s: float, body):
    """Run ``body``; record one line; fail on error or on exceeding ``limit_s``."""
    DEFAULT_CACHE._data.clear()
    start = time.perf_counter()
    detail, error = "", None
    try:
        detail = body() or ""
    except AssertionError as exc:
        error = exc
    elapsed = time.perf_counter() - start
    late = elapsed > limit_s
    ok = error is None and not late
    why = f"assertion failed: {error}" if error else (f"too slow (limit {limit_s:g}s)" if late else detail)
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{elapsed:.2f}s] {why}".rstrip()
    LINES.append(line)
    if __name__ == "__main__":
        print(line, flush=True)
    if error is not None:
        raise error
    assert not late, line


# ---------------------------------------------------------------------------
# 1. the worked semigroup example


def worked_example():
    S = numerical_semigroup(4, 5, 7)
    m = maximal_ideal(S)
    I1 = ideal_from_gens(S, [4]) + power(m, 2)
    I2 = power(m, 2)
    assert I1.gens == (4, 10)
    assert (mu(m), multiplicity(m)) == (3, 4)
    assert multiplicity(m) != mu(m) - S.d + 1  # R itself lacks minimal multiplicity
    two = minimal_multiplicity_verdict(ReesInstance(S, (I1, I2)), with_oracle=True)
    assert (two.dim, two.mu_N, two.e_N, two.equation_holds) == (3, 10, 8, True)
    assert (two.e_N_oracle, two.mu_N_oracle) == (8, 10)
    one = minimal_multiplicity_verdict(ReesInstance(S, (I1,)), with_oracle=True)
    assert (one.dim, one.mu_N, one.e_N, one.equation_holds) == (2, 5, 4, True)
    assert (one.e_N_oracle, one.mu_N_oracle) == (4, 5)
    return "mu(m)=3 e(m)=4; B(I1,I2): dim 3 mu 10 e 8; B(I1): dim 2 mu 5 e 4; oracle agrees"


def test_criterion_1_worked_example():
    record(1, "worked semigroup example", 5, worked_example)


# ---------------------------------------------------------------------------
# 2. regular rings


def regular_family():
    rows = []
    for d, r, e_expected, holds in [(2, 1, 3, True), (3, 1, 4, True), (3, 2, 8, False)]:
        ring = polynomial_local(d)
        m = maximal_ideal(ring)
        inst = ReesInstance(ring, (m, power(m, r)))
        e, bound = e_N_formula(inst), mu_N(inst) - rees_dim(inst) + 1
        assert e == e_expected, (d, r, e)
        if d == 2:
            assert e_N_direct(inst) == e
        assert (e == bound) is holds, (d, r, e, bound)
        rows.append(f"d={d} (m,m^{r}): e={e} bound={bound}")
    assert rows[-1].endswith("bound=7")
    return "; ".join(rows)


def test_criterion_2_regular_family():
    record(2, "regular local rings, B(m, m^r)", 30, regular_family)


# ---------------------------------------------------------------------------
# 3. B(m, (x, y^r)) in dimension 2


def plane_parameter_family():
    R = polynomial_local(2)
    m = maximal_ideal(R)
    seen = []
    for r in range(1, 5):
        inst = ReesInstance(R, (m, ideal_from_gens(R, [(1, 0), (0, r)])))
        e, bound = e_N_formula(inst), mu_N(inst) - rees_dim(inst) + 1
        assert e == bound, (r, e, bound)
        seen.append(f"r={r}:{e}")
    return "equation holds, e(N) " + " ".join(seen)


def test_criterion_3_plane_parameter_family():
    record(3, "B(m,(x,y^r)) for r=1..4", 60, plane_parameter_family)


# ---------------------------------------------------------------------------
# 4. formula versus direct enumeration


def oracle_instances():
    out = []
    R1, R2 = polynomial_local(1), polynomial_local(2)
    S457, S23 = numerical_semigroup(4, 5, 7), numerical_semigroup(2, 3)

    def P(ring, *gens):
        return ideal_from_gens(ring, gens)

    m1, m2, ms, mc = (maximal_ideal(x) for x in (R1, R2, S457, S23))
    one = {
        R1: [(m1,), (P(R1, (3,)),)],
        R2: [(m2,), (P(R2, (2, 0), (1, 1), (0, 3)),)],
        S457: [(ms,), (P(S457, 4, 10),)],
        S23: [(mc,), (P(S23, 3, 4),)],
    }
    two = {
        R1: [(m1, m1), (P(R1, (2,)), P(R1, (3,)))],
        R2: [(m2, m2), (m2, P(R2, (1, 0), (0, 2)))],
        S457: [(P(S457, 4, 10), power(ms, 2)), (ms, P(S457, 5, 8))],
        S23: [(mc, mc), (mc, P(S23, 2))],
    }
    for table in (one, two):
        for ring, rows in table.items():
            out += [ReesInstance(ring, ideals) for ideals in rows]
    return out


def oracle_equivalence():
    cases = oracle_instances()
    assert len(cases) >= 8
    families = {(str(c.ring), c.g) for c in cases}
    assert len(families) == 8
    for inst in cases:
        assert e_N_formula(inst) == e_N_direct(inst), inst.describe()
        assert mu_N(inst) == mu_N_direct(inst), inst.describe()
    return f"{len(cases)} instances over {len(families)} ring/g families agree on e(N) and mu(N)"


def test_criterion_4_oracle_equivalence():
    record(4, "formula equals direct enumeration", 120, oracle_equivalence)


# ---------------------------------------------------------------------------
# 5. property suites

# (check, family, d, g, trials, ideal model); trial counts per check sum as required
PLANS = {
    "nog": [("polynomial", 1, 2, 100, "box"), ("polynomial", 2, 2, 150, "box"),
            ("polynomial", 3, 2, 100, "box"), ("semigroup", 1, 2, 150, "box")],
    "kv2": [("polynomial", 1, 2, 100, "box"), ("polynomial", 2, 2, 150, "box"),
            ("polynomial", 3, 2, 100, "box"), ("semigroup", 1, 2, 150, "box")],
    "scaling": [("polynomial", 1, 1, 100, "box"), ("polynomial", 2, 1, 150, "box"),
                ("polynomial", 3, 1, 100, "box"), ("semigroup", 1, 1, 150, "box")],
    "g3": [("semigroup", 1, 3, 50, "box"), ("polynomial", 1, 3, 30, "box"), ("polynomial", 2, 3, 30, "box"),
           ("semigroup", 1, 3, 30, "near_square"), ("polynomial", 1, 3, 20, "near_square"),
           ("polynomial", 2, 3, 20, "near_square"), ("polynomial", 3, 3, 20, "near_square")],
    "g2": [("semigroup", 1, 2, 20, "box"), ("polynomial", 2, 2, 20, "box"),
           ("semigroup", 1, 2, 60, "near_square"), ("polynomial", 1, 2, 30, "near_square"),
           ("polynomial", 2, 2, 40, "near_square"), ("polynomial", 3, 2, 30, "near_square")],
}
REQUIRED = {"nog": 500, "kv2": 500, "scaling": 500, "g3": 200, "g2": 200}


def _suite_config(check, family, d, g, trials, model, seed=2024):
    return ExploreConfig(ring_family=family, d=d, g=g, trials=trials, seed=seed, checks=(check,),
                         ideal_model=model)


def property_suites():
    summary = []
    for check, plan in PLANS.items():
        trials = sum(p[3] for p in plan)
        assert trials == REQUIRED[check], (check, trials)
        holds = violated = 0
        for row in plan:
            report = explore_random(_suite_config(check, *row))
            assert not report["stabilizationFailures"], report["stabilizationFailures"][:1]
            assert report["violationCount"] == 0, report["violations"][:1]
            for tally in report["counts"].values():
                holds += tally["holds"]
                violated += tally[VIOLATED]
        assert violated == 0
        assert holds > 0, f"{check} never reached a non-vacuous case"
        summary.append(f"{check}: {trials} instances, {holds} non-vacuous holds")
    # determinism: a fixed seed reproduces the report byte for byte
    cfg = _suite_config("g2", "semigroup", 1, 2, 60, "near_square")
    first = json.dumps(explore_random(cfg), sort_keys=True)
    DEFAULT_CACHE._data.clear()
    assert json.dumps(explore_random(cfg), sort_keys=True) == first
    return "0 violations; " + "; ".join(summary) + "; deterministic"


def test_criterion_5_property_suites():
    record(5, "property suites", 600, property_suites)


# ---------------------------------------------------------------------------
# 6. number of generators of powers of m


def maximal_power_generators():
    for d in range(1, 5):
        m = maximal_ideal(polynomial_local(d))
        for r in range(1, 6):
            assert mu(power(m, r)) == math.comb(r + d - 1, d - 1), (d, r)
    return "mu(m^r) = C(r+d-1, d-1) for d<=4, r<=5"


def test_criterion_6_maximal_power_generators():
    record(6, "generators of m^r", 60, maximal_power_generators)


# ---------------------------------------------------------------------------
# 7. bounded reduction equation


def reduction_equation():
    notes = []
    for d in (1, 2):
        ring = polynomial_local(d)
        m = maximal_ideal(ring)
        inst = ReesInstance(ring, (m, m))
        gens = reduction_generators_m_mr(ring, 1)
        verdict = check_reduction_equation_bounded(inst, gens, box=3)
        assert verdict.holds, (d, str(verdict))
        for k in range(len(gens)):
            rest = gens[:k] + gens[k + 1:]
            short = check_reduction_equation_bounded(inst, rest, box=3)
            assert not short.holds and short.fails_at is not None, (d, k)
        notes.append(f"d={d}: HoldsOnBox, each of {len(gens)} removals FailsAt")
    return "; ".join(notes)


def test_criterion_7_reduction_equation():
    record(7, "bounded reduction equation", 60, reduction_equation)


# ---------------------------------------------------------------------------
# 8. parser robustness and golden sessions

VOCAB = ["ring", "ideal", "in", "R", "S", "M", "polynomial_local", "numerical_semigroup", "maximal",
         "=", ";", "(", ")", "[", "]", ",", "+", "*", "^", "0", "1", "2", "3", "5", "-1", "\n", " ",
         "#x\n", "99999999999999999999", "\t", "é", "\x00"]


def fuzz_inputs(count: int, seed: int = 8):
    rng = random.Random(seed)
    goldens = [p.read_text() for p in sorted(SESSIONS.glob("*.rees"))]
    alphabet = "".join(sorted(set("".join(goldens)))) + "\x00\x7fé∞"
    for i in range(count):
        kind = i % 3
        if kind == 0:  # mutate a golden session
            text = list(rng.choice(goldens))
            for _ in range(rng.randint(1, 6)):
                pos = rng.randrange(len(text) + 1)
                op = rng.random()
                if op < 0.4 and text:
                    del text[min(pos, len(text) - 1)]
                elif op < 0.8:
                    text.insert(pos, rng.choice(alphabet))
                elif text:
                    text[min(pos, len(text) - 1)] = rng.choice(alphabet)
            yield "".join(text)
        elif kind == 1:
            yield " ".join(rng.choice(VOCAB) for _ in range(rng.randint(0, 40)))
        else:
            yield "".join(chr(rng.randint(0, 0x2FF)) for _ in range(rng.randint(0, 80)))


def golden_reports():
    reports = []
    for path in sorted(SESSIONS.glob("*.rees")):
        session = parse_session(path.read_text())
        names = [n for n, i in session.ideals.items() if is_m_primary(i)]
        groups = [[n] for n in names] + [list(p) for p in itertools.combinations(names, 2)]
        for group in groups:
            report, code = run_command(session, Command("analyze", {"ideals": group}))
            assert code == 0, (path.name, group)
            reports.append(report)
    return reports


def parser_and_sessions():
    diagnostics = parsed = 0
    for text in fuzz_inputs(10_000):
        try:
            parse_session(text)
            parsed += 1
        except ParseError as exc:
            assert exc.line >= 1 and exc.column >= 1 and str(exc)
            diagnostics += 1
    reports = golden_reports()
    for report in reports:
        report.pop("timingMs", None)
        blob = emit_report(report, "json")
        back = json.loads(blob)
        assert back == report
        assert emit_report(back, "json") == blob
    return f"10000 inputs: {diagnostics} diagnostics, {parsed} parsed, 0 crashes; {len(reports)} golden reports round-trip"


def test_criterion_8_parser_and_sessions():
    record(8, "parser robustness and golden sessions", 60, parser_and_sessions)


if __name__ == "__main__":
    failures = 0
    for name in sorted(n for n in dir() if n.startswith("test_criterion_")):
        try:
            globals()[name]()
        except AssertionError:
            failures += 1
    sys.exit(1 if failures else 0)
