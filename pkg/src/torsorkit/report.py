"""Verification reports: named checks with localized failure witnesses."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    witness: str | None = None


@dataclass
class Report:
    """Ordered check list for one verified object.

    Every failing check carries a concrete witness (the basis input and the
    first coordinate where the two evaluated sides differ).
    """

    subject: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, witness: str | None = None):
        self.checks.append(Check(name, passed, witness if not passed else None))

    def add_note(self, note: str):
        self.notes.append(note)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def first_failure(self):
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def lines(self):
        out = ["subject %s" % self.subject]
        for c in self.checks:
            if c.passed:
                out.append("ok   %s" % c.name)
            else:
                out.append("FAIL %s :: %s" % (c.name, c.witness or "no witness"))
        for note in self.notes:
            out.append("note %s" % note)
        out.append("verdict: %s" % ("PASS" if self.ok else "FAIL"))
        return out

    def __str__(self):
        return "\n".join(self.lines())


def fingerprint(canonical_text: str) -> str:
    """Short deterministic fingerprint of a canonical description string."""
    return hashlib.sha256(canonical_text.encode("utf-8")).hexdigest()[:12]


def witness_text(labels, src, coord, lhs_val, rhs_val, fmt) -> str:
    """Standard witness wording: input basis tuple and both evaluated sides."""
    if labels is not None:
        named = ",".join(labels[i] for i in src)
    else:
        named = ",".join(str(i) for i in src)
    return "at input (%s): output coordinate %r: left=%s right=%s" % (
        named,
        coord,
        "0" if lhs_val is None else fmt(lhs_val),
        "0" if rhs_val is None else fmt(rhs_val),
    )
