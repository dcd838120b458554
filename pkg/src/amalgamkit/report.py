"""Check records and the JSON-lines report format.

Each check becomes one JSON object; a report ends with a summary object.
Timing fields are the only values that change between identical runs.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from . import __version__

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


def jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if hasattr(x, "as_dict"):
        return jsonable(x.as_dict())
    if hasattr(x, "item"):
        return x.item()
    return str(x)


@dataclass
class Check:
    suite: str
    check: str
    status: str
    expected: Any
    actual: Any
    elapsed: float
    note: str = ""

    def as_dict(self) -> dict:
        d = {"suite": self.suite, "check": self.check, "status": self.status,
             "expected": jsonable(self.expected), "actual": jsonable(self.actual),
             "elapsed": round(self.elapsed, 3)}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Suite:
    name: str
    checks: list[Check] = field(default_factory=list)
    artifacts: dict[str, Any] = field(default_factory=dict)

    def expect(self, check_id: str, expected: Any, fn: Callable[[], Any],
               compare: Callable[[Any, Any], bool] | None = None, note: str = "") -> Any:
        """Run ``fn`` and record pass iff its value equals ``expected``."""
        t0 = time.perf_counter()
        try:
            actual = fn()
        except Exception as exc:  # a crashing check is a failed check
            self.checks.append(Check(self.name, check_id, FAIL, expected,
                                     f"{type(exc).__name__}: {exc}", time.perf_counter() - t0, note))
            return None
        ok = compare(expected, actual) if compare else _equal(expected, actual)
        self.checks.append(Check(self.name, check_id, PASS if ok else FAIL, expected, actual,
                                 time.perf_counter() - t0, note))
        return actual

    def record(self, check_id: str, expected: Any, actual: Any, ok: bool, elapsed: float = 0.0,
               note: str = "") -> None:
        self.checks.append(Check(self.name, check_id, PASS if ok else FAIL, expected, actual, elapsed, note))

    def skip(self, check_id: str, expected: Any, note: str) -> None:
        self.checks.append(Check(self.name, check_id, SKIPPED, expected, None, 0.0, note))

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def status_of(self, check_id: str) -> str:
        for c in self.checks:
            if c.check == check_id:
                return c.status
        raise KeyError(check_id)


def _equal(a: Any, b: Any) -> bool:
    return jsonable(a) == jsonable(b)


def render(suites: Iterable[Suite], input_hashes: dict[str, str] | None = None,
           exit_code: int | None = None, error: str | None = None) -> str:
    suites = list(suites)
    lines = []
    counts = {PASS: 0, FAIL: 0, SKIPPED: 0}
    for s in suites:
        for c in sorted(s.checks, key=lambda c: c.check):
            counts[c.status] += 1
            lines.append(json.dumps(c.as_dict(), sort_keys=True, ensure_ascii=False))
    summary = {"summary": True, "version": __version__, "suites": [s.name for s in suites],
               "passed": counts[PASS], "failed": counts[FAIL], "skipped": counts[SKIPPED],
               "input_hashes": input_hashes or {}}
    if exit_code is not None:
        summary["exit_code"] = exit_code
    if error:
        summary["error"] = error
    lines.append(json.dumps(summary, sort_keys=True, ensure_ascii=False))
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> tuple[list[dict], dict]:
    rows = [json.loads(line) for line in text.splitlines() if line.strip()]
    return rows[:-1], rows[-1]
