"""JSON and text rendering of command reports."""

from __future__ import annotations

import json

from reesmult.rees import ReesReport

SCHEMA = "reesmult/1"


def rees_report_dict(report: ReesReport, checks=(), timing_ms: int = 0) -> dict:
    return {
        "schema": SCHEMA,
        "command": "analyze",
        "instance": report.instance,
        "dim": report.dim,
        "muN": report.mu_N,
        "eN": report.e_N,
        "eNOracle": report.e_N_oracle,
        "muNOracle": report.mu_N_oracle,
        "bound": report.bound,
        "equationHolds": report.equation_holds,
        "ring": {"mu": report.mu_m, "e": report.e_m, "lengthLOverM2": report.ell_L_m2},
        "perIdeal": report.per_ideal,
        "checks": [c.to_dict() for c in checks],
        "timingMs": timing_ms,
    }


def _scalar(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _table(rows, header=None) -> list[str]:
    rows = [[_scalar(c) for c in row] for row in rows]
    if header:
        rows.insert(0, list(header))
    if not rows:
        return []
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return lines


def render_text(report: dict) -> str:
    lines = []
    simple = [(k, v) for k, v in report.items()
              if not isinstance(v, (dict, list)) and k != "schema"]
    lines += _table(simple)
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append("")
            lines.append(f"{key}:")
            lines += ["  " + line for line in _table(
                [(k, v if not isinstance(v, (list, dict)) else json.dumps(v)) for k, v in value.items()])]
    for key in ("perIdeal", "checks", "violations", "results"):
        items = report.get(key)
        if not items:
            continue
        lines.append("")
        lines.append(f"{key}:")
        cols = [c for c in items[0] if not isinstance(items[0][c], (dict, list))]
        lines += ["  " + line for line in _table([[it.get(c) for c in cols] for it in items], cols)]
    return "\n".join(lines) + "\n"


def emit_report(report: dict, fmt: str = "text") -> bytes:
    if fmt == "json":
        return (json.dumps(report, indent=2, sort_keys=False) + "\n").encode("utf-8")
    if fmt == "text":
        return render_text(report).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")
