from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one inequality, identity or theorem check.

    ``witnesses`` holds ``(label, value)`` pairs with exact values; on
    failure they show the violation, on success ``branch`` names the
    condition that held.
    """

    name: str
    passed: bool
    witnesses: tuple[tuple[str, object], ...] = ()
    branch: str | None = None
    details: tuple["CheckReport", ...] = field(default=(), compare=False)

    def __bool__(self):
        return self.passed

    def witness(self, label):
        for k, v in self.witnesses:
            if k == label:
                return v
        raise KeyError(label)

    def format(self) -> str:
        parts = [f"CHECK {self.name}", "PASS" if self.passed else "FAIL"]
        if self.branch:
            parts.append(f"branch={self.branch}")
        parts.extend(f"{k}={_fmt(v)}" for k, v in self.witnesses)
        return " ".join(parts)


def _fmt(value) -> str:
    if isinstance(value, (list, tuple)):
        return "(" + ",".join(_fmt(v) for v in value) + ")"
    return str(value)


def combine(name: str, reports, branch: str | None = None) -> CheckReport:
    reports = tuple(reports)
    failed = [r for r in reports if not r.passed]
    witnesses = (("checks", len(reports)), ("failed", len(failed)))
    if failed:
        witnesses += (("first_failure", failed[0].name),)
    return CheckReport(name, not failed, witnesses, branch, reports)


def format_reports(reports) -> str:
    reports = list(reports)
    lines = [r.format() for r in reports]
    npass = sum(r.passed for r in reports)
    lines.append(f"TOTAL pass={npass} fail={len(reports) - npass}")
    return "\n".join(lines)
