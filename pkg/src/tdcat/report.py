"""Run reports: text, JSON (machine report) and tab-delimited renderings.

Everything stored in a :class:`Report` is normalized to JSON values on the
way in, so ``Report.from_json(r.to_json()) == r`` holds exactly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field

from ._util import canonical, fmt

FORMAT_VERSION = 1


def jsonable(x):
    """Normalize to JSON values: tuples and sets become lists, labels strings."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, str) else k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(y) for y in x]
    if isinstance(x, (set, frozenset)):
        return [jsonable(y) for y in canonical(x)]
    return fmt(x)


def fingerprint_text(*parts: str) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p.encode())
        h.update(b"\0")
    return h.hexdigest()[:16]


@dataclass
class Check:
    name: str
    ok: bool
    detail: object = None


@dataclass
class Report:
    command: str
    version: str
    input_fingerprint: str
    seed: int | None = None
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    timing: dict | None = None
    artifacts: list = field(default_factory=list)
    format_version: int = FORMAT_VERSION

    def check(self, name: str, ok: bool, detail=None) -> bool:
        self.checks.append(Check(name, bool(ok), jsonable(detail)))
        return bool(ok)

    def put(self, key: str, value) -> None:
        self.data[key] = jsonable(value)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    # -- serialization
    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        d = dict(d)
        d.pop("verdict", None)
        d["checks"] = [Check(**c) for c in d.get("checks", [])]
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        out = [f"== tdcat {self.command} ==",
               f"version: {self.version}",
               f"input: {self.input_fingerprint}",
               f"seed: {self.seed if self.seed is not None else '-'}",
               "-- results --"]
        for k in sorted(self.data):
            out.append(f"{k}: {_inline(self.data[k])}")
        out.append("-- checks --")
        for c in self.checks:
            line = f"[{'PASS' if c.ok else 'FAIL'}] {c.name}"
            if c.detail is not None:
                line += f"  ({_inline(c.detail)})"
            out.append(line)
        if self.timing:
            out.append("-- timing --")
            out += [f"{k}: {v:.3f}s" for k, v in sorted(self.timing.items())]
        for a in self.artifacts:
            out.append(f"artifact: {a}")
        out.append(f"verdict: {self.verdict}")
        return "\n".join(out) + "\n"

    def to_tsv(self) -> str:
        """One row per result and per check: ``kind<TAB>name<TAB>value``."""
        rows = ["kind\tname\tvalue"]
        rows += [f"meta\t{k}\t{v}" for k, v in (("command", self.command), ("version", self.version),
                                                 ("input", self.input_fingerprint), ("seed", self.seed))]
        rows += [f"result\t{k}\t{json.dumps(self.data[k], sort_keys=True)}" for k in sorted(self.data)]
        rows += [f"check\t{c.name}\t{'pass' if c.ok else 'fail'}" for c in self.checks]
        rows.append(f"verdict\t-\t{self.verdict}")
        return "\n".join(rows) + "\n"


def _inline(v) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v, sort_keys=True)
