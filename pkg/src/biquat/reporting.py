"""Structured results for identity checks.

Every checker in this package reports through :class:`VerificationReport`
so the command-line runner can serialize outcomes uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping


def _plain(value):
    """Recursively convert a value into JSON-friendly builtins."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return repr(value)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one identity check.

    ``passed`` is always derived from ``residual <= tolerance``; use
    :meth:`build` rather than filling the flag by hand.
    """

    identity: str
    inputs: Mapping[str, Any] = field(default_factory=dict)
    computed: Any = None
    expected: Any = None
    residual: float = 0.0
    relative_residual: float = 0.0
    tolerance: float = 0.0
    passed: bool = True
    runtime: float = 0.0

    @classmethod
    def build(cls, identity, *, inputs=None, computed=None, expected=None,
              residual, tolerance, runtime=0.0, scale=None):
        residual = float(residual)
        if scale:
            relative = residual / float(scale)
        else:
            relative = residual
        return cls(
            identity=identity,
            inputs=dict(inputs or {}),
            computed=computed,
            expected=expected,
            residual=residual,
            relative_residual=relative,
            tolerance=float(tolerance),
            passed=residual <= float(tolerance),
            runtime=float(runtime),
        )

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "inputs": _plain(self.inputs),
            "computed": _plain(self.computed),
            "expected": _plain(self.expected),
            "residual": self.residual,
            "relative_residual": self.relative_residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "runtime": self.runtime,
        }

    def __str__(self):
        status = "ok" if self.passed else "FAIL"
        return (f"[{status}] {self.identity}: residual={self.residual:.3e} "
                f"tol={self.tolerance:.3e}")
