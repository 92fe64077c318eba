"""Verification reports and their deterministic JSON rendering."""

import json
import math
from dataclasses import dataclass, field

import numpy as np

STATUS_OK = "ok"
STATUS_CHECK_FAILED = "check_failed"
STATUS_ERROR = "error"


@dataclass
class VerificationReport:
    """Outcome of one CLI command.

    Every entry of ``residuals`` has a governing bound in ``limits``; the
    status is ``ok`` exactly when each residual is within its bound.
    """

    command: str
    argv: list
    tolerances: dict
    inputs: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    limits: dict = field(default_factory=dict)
    spectra: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    status: str = STATUS_OK
    error: str = None

    def add_residual(self, name, value, limit):
        self.residuals[name] = float(value)
        self.limits[name] = float(limit)

    def settle(self):
        """Set ``status`` from the residuals unless an error was recorded."""
        if self.status == STATUS_ERROR:
            return self.status
        within = all(self.residuals[k] <= self.limits[k] for k in self.residuals)
        self.status = STATUS_OK if within else STATUS_CHECK_FAILED
        return self.status

    def fail(self, status, message):
        self.status = status
        self.error = message

    def as_dict(self):
        out = {
            "command": self.command,
            "argv": list(self.argv),
            "tolerances": self.tolerances,
            "inputs": self.inputs,
            "residuals": self.residuals,
            "limits": self.limits,
            "spectra": {k: [complex(z) for z in v] for k, v in self.spectra.items()},
            "details": self.details,
            "status": self.status,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


def _number(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return f"{x:.16e}"


def render_json(value, indent=0):
    """JSON with sorted keys and every float at 17 significant digits.

    Complex numbers become ``[re, im]`` pairs.
    """
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k))}: {render_json(value[k], indent + 1)}"
            for k in sorted(value, key=str)
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        if len(value) == 0:
            return "[]"
        items = [f"{pad}{render_json(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(value, (complex, np.complexfloating)):
        return f"[{_number(value.real)}, {_number(value.imag)}]"
    if value is None:
        return "null"
    if isinstance(value, str):
        return json.dumps(value)
    return _number(value)


def _fmt_complex(z):
    z = complex(z.real + 0.0, z.imag + 0.0)  # drop negative zeros in the human-readable view
    if z.imag == 0:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{'+' if z.imag >= 0 else '-'}{abs(z.imag):.12g}i"


def render_text(report):
    lines = [f"command: {report.command}", f"status:  {report.status}"]
    if report.error:
        lines.append(f"error:   {report.error}")
    for name, digest in sorted(report.inputs.items()):
        lines.append(f"input {name}: sha256 {digest[:16]}...")
    for name in sorted(report.residuals):
        value, limit = report.residuals[name], report.limits[name]
        mark = "ok" if value <= limit else "FAIL"
        lines.append(f"residual {name}: {value:.3e} (limit {limit:.3e}) {mark}")
    for name in sorted(report.spectra):
        values = ", ".join(_fmt_complex(z) for z in report.spectra[name])
        lines.append(f"{name}: [{values}]")
    for name in sorted(report.details):
        lines.append(f"{name}: {report.details[name]}")
    return "\n".join(lines) + "\n"


def render(report, fmt):
    if fmt == "json":
        return render_json(report.as_dict()) + "\n"
    return render_text(report)
