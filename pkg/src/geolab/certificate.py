"""Structured check results shared by the checkers and the reporter."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .symcore import Scalar, format_poly

PASS = "pass"
FAIL = "fail"
GENERIC = "generic-pass"
ERROR = "error"
VERDICTS = (PASS, FAIL, GENERIC, ERROR)


@dataclass
class Certificate:
    check: str
    verdict: str
    witness: list[str] = field(default_factory=list)
    certificate: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def passed(self) -> bool:
        """True for pass and generic-pass."""
        return self.verdict in (PASS, GENERIC)

    @property
    def certified(self) -> bool:
        return self.verdict == PASS

    def __bool__(self):
        return self.passed


def determinant_lines(det: Scalar, what: str = "determinant") -> tuple[str, list[str]]:
    """Apply the certificate policy to a determinant-like scalar.

    Constant nonzero: certified on the whole chart.  Nonconstant: generic,
    with the vanishing locus of the numerator attached.  Zero: fail.
    """
    if det.is_zero():
        return FAIL, [f"{what} 0"]
    if det.is_constant():
        return PASS, [f"{what} {det} (constant)"]
    locus = format_poly(det.num, det.chart.coords)
    return GENERIC, [f"{what} {det}", f"zero locus: {locus} = 0"]


def combine(verdicts) -> str:
    verdicts = list(verdicts)
    if ERROR in verdicts:
        return ERROR
    if FAIL in verdicts:
        return FAIL
    if GENERIC in verdicts:
        return GENERIC
    return PASS
