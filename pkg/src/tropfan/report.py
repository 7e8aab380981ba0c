"""Structured pass/fail reports emitted by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
NOT_CERTIFIED = "not certified"


@dataclass
class Report:
    """Outcome of one named check.

    ``status`` is ``pass``, ``fail`` or ``not certified``; the last one
    is reserved for existential claims (an ample function was not
    found) and is deliberately distinct from a refuted property.
    ``witnesses`` holds the failing objects in printable form, ``data``
    whatever dimensions or tables the caller may want to inspect.
    """

    check: str
    status: str
    witnesses: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    @classmethod
    def passed(cls, check, **data):
        return cls(check, PASS, [], data)

    @classmethod
    def failed(cls, check, witnesses, **data):
        return cls(check, FAIL, list(witnesses), data)

    def lines(self) -> list[str]:
        out = [f"check: {self.check}", f"status: {self.status}"]
        for key in sorted(self.data):
            val = self.data[key]
            out.append(f"  {key}: {val}")
        for w in self.witnesses:
            out.append(f"  witness: {w}")
        return out

    def render(self) -> str:
        return "\n".join(self.lines())


def combine(check: str, parts: list[Report], **data) -> Report:
    """Aggregate sub-reports; fails if any part fails, otherwise is
    'not certified' if any part is, otherwise passes."""
    status = PASS
    witnesses = []
    for part in parts:
        if part.status == FAIL:
            status = FAIL
        elif part.status == NOT_CERTIFIED and status != FAIL:
            status = NOT_CERTIFIED
        witnesses.extend(f"{part.check}: {w}" for w in part.witnesses)
    return Report(check, status, witnesses, data)
