"""Check records, reports and their JSON/CSV serialisation."""
from dataclasses import dataclass, field
import csv
import json
import math
import time

from lumpspace._backend import backend_name


@dataclass(frozen=True)
class CheckRecord:
    name: str
    expected: float
    actual: float
    abs_err: float
    rel_err: float
    tol: float
    passed: bool

    @classmethod
    def compare(cls, name, expected, actual, tol):
        expected = float(expected)
        actual = float(actual)
        abs_err = abs(actual - expected)
        rel_err = abs_err / abs(expected) if expected != 0 else math.inf
        ok = rel_err <= tol or (expected == 0 and abs_err <= tol)
        return cls(name, expected, actual, abs_err, rel_err, float(tol), bool(ok and math.isfinite(actual)))

    def as_dict(self):
        return {"name": self.name, "expected": self.expected, "actual": self.actual,
                "abs_err": self.abs_err, "rel_err": self.rel_err, "tol": self.tol,
                "pass": self.passed}


@dataclass
class Report:
    command: str
    params: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    values: dict = field(default_factory=dict)
    runtime_ms: int = 0
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, name, expected, actual, tol):
        rec = CheckRecord.compare(name, expected, actual, tol)
        self.checks.append(rec)
        return rec

    def finish(self, timing=True):
        self.runtime_ms = int(round(1000.0 * (time.perf_counter() - self._t0))) if timing else 0
        return self

    def as_dict(self):
        """Flat mapping: params and values become prefixed top-level keys."""
        out = {"command": self.command, "pass": self.passed, "runtime_ms": self.runtime_ms,
               "backend": backend_name()}
        out.update({f"param_{k}": v for k, v in self.params.items()})
        out.update({f"value_{k}": v for k, v in self.values.items()})
        out["checks"] = [c.as_dict() for c in self.checks]
        return out

    def to_json(self):
        return dumps(self.as_dict())


def _fmt_float(x):
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    if "e" not in s and "." not in s and "inf" not in s:
        s += ".0"
    return s


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_encode(str(k), indent, level + 1)}: {_encode(v, indent, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):         # numpy scalar
        return _encode(obj.item(), indent, level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent=2):
    """JSON text with every float written to 17 significant digits, so
    doubles round-trip exactly."""
    return _encode(obj, indent, 0) + "\n"


SWEEP_COLUMNS = ("mu", "A_numeric", "B_numeric", "A_closed", "B_closed", "rel_err_A", "rel_err_B")


def write_sweep_csv(path, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(SWEEP_COLUMNS)
        for row in rows:
            w.writerow(["" if v is None else _fmt_float(float(v)) for v in (row[c] for c in SWEEP_COLUMNS)])
