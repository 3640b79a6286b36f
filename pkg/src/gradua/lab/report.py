"""Check records, reports, and their serializations."""

from __future__ import annotations

import json
import time
import traceback
from dataclasses import dataclass, field

from gradua import __version__

PROVENANCE = ("paper", "trivial", "derived")
STATUSES = ("pass", "fail", "inconclusive")


class Inconclusive(Exception):
    """Raised by a check body whose outcome cannot be decided exactly."""

    def __init__(self, reason: str, lhs=None, rhs=None):
        super().__init__(reason)
        self.lhs = lhs
        self.rhs = rhs


@dataclass
class CheckResult:
    name: str
    lhs: object
    rhs: object
    status: str
    provenance: str
    timing: float = 0.0
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.provenance not in PROVENANCE:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def to_json(self, timings: bool = False) -> dict:
        out = {"name": self.name, "lhs": _plain(self.lhs), "rhs": _plain(self.rhs), "status": self.status,
               "provenance": self.provenance, "detail": _plain(self.detail)}
        if timings:
            out["timing"] = round(self.timing, 3)
        return out

    @classmethod
    def from_json(cls, d: dict) -> "CheckResult":
        return cls(d["name"], d["lhs"], d["rhs"], d["status"], d["provenance"], d.get("timing", 0.0),
                   d.get("detail", {}))


def _plain(x):
    """JSON-ready copy: tuples become lists, dict keys become strings."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def run_check(name: str, provenance: str, body, *args, **kwargs) -> CheckResult:
    """Evaluate ``body`` -> (lhs, rhs) or (lhs, rhs, detail); pass iff lhs == rhs exactly."""
    t0 = time.perf_counter()
    try:
        res = body(*args, **kwargs)
        lhs, rhs = res[0], res[1]
        detail = res[2] if len(res) > 2 else {}
        status = "pass" if _plain(lhs) == _plain(rhs) else "fail"
    except Inconclusive as e:
        lhs, rhs, detail, status = e.lhs, e.rhs, {"reason": str(e)}, "inconclusive"
    except Exception as e:  # engine errors become failing checks with their payload
        lhs, rhs, status = None, None, "fail"
        detail = {"error": type(e).__name__, "message": str(e),
                  "where": traceback.extract_tb(e.__traceback__)[-1].name}
    return CheckResult(name, lhs, rhs, status, provenance, time.perf_counter() - t0, detail)


@dataclass
class Report:
    scenario: str
    config: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    version: str = __version__

    @property
    def overall(self) -> str:
        st = {c.status for c in self.checks}
        if "fail" in st:
            return "fail"
        if "inconclusive" in st:
            return "inconclusive"
        return "pass"

    def to_json(self, timings: bool = False) -> dict:
        return {"scenario": self.scenario, "tool_version": self.version, "config": _plain(self.config),
                "checks": [c.to_json(timings) for c in self.checks], "overall": self.overall}

    @classmethod
    def from_json(cls, d: dict) -> "Report":
        return cls(d["scenario"], d.get("config", {}), [CheckResult.from_json(c) for c in d.get("checks", [])],
                   d.get("tool_version", __version__))

    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "inconclusive": 3}[self.overall]


def emit_report(r: Report, fmt: str = "json", timings: bool = False) -> bytes:
    if fmt == "json":
        return (json.dumps(r.to_json(timings), sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt in ("text", "text-table", "table"):
        return _table(r, timings).encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


def _short(x, width: int = 38) -> str:
    s = json.dumps(_plain(x), sort_keys=True, separators=(",", ":"))
    return s if len(s) <= width else s[: width - 3] + "..."


def _table(r: Report, timings: bool) -> str:
    head = ["check", "status", "prov", "lhs", "rhs"] + (["secs"] if timings else [])
    rows = [[c.name, c.status, c.provenance, _short(c.lhs), _short(c.rhs)] + ([f"{c.timing:.2f}"] if timings else [])
            for c in r.checks]
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h) for i, h in enumerate(head)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [f"scenario {r.scenario}  (gradua {r.version})", line(head), line(["-" * w for w in widths])]
    out += [line(row) for row in rows]
    out.append(f"overall: {r.overall}")
    return "\n".join(out) + "\n"
