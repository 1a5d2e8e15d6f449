"""Pass/fail reports returned by the verifiers."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Report:
    ok: bool
    message: str = "PASS"
    witness: object = None
    members: tuple = ()

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "PASS" if self.ok else f"FAIL: {self.message}"


PASS = Report(True)


def fail(message, witness=None, members=()) -> Report:
    return Report(False, message, witness, tuple(members))
