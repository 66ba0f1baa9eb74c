"""Problem definitions: the three built-in delay equations and a file format.

Problem files are line oriented ``key = value`` text::

    # Burgers-type equation with proportional delay
    name  = ex1
    alpha = 0.9
    ic    = 1*x^1
    rhs   = D2[u(1x,1t)] + u(0.5x,0.5t)*D1[u(1x,0.5t)] + 0.5*u(1x,1t)
    exact = x*exp(t)

``alpha``, ``ic`` and ``rhs`` are required; ``name`` and ``exact`` are
optional.  ``#`` starts a comment and keys are case-sensitive.
"""

from __future__ import annotations

import enum
import math
import os
import re
from dataclasses import dataclass, replace

import numpy as np

from .errors import ParseDiagnostic, UsageError
from .gseries import GSeries, check_alpha
from .rhs_ast import RhsExpr, decimal_str, format_rhs, parse_rhs

__all__ = [
    "ExactSolution",
    "ProblemSpec",
    "BUILTIN_NAMES",
    "builtin",
    "parse_problem",
    "load_problem",
    "format_problem",
    "exact_eval",
]


class ExactSolution(enum.Enum):
    """Closed-form solutions known at alpha = 1."""

    X_EXP_T = "x*exp(t)"
    X2_EXP_T = "x^2*exp(t)"
    X2_EXP_NEG_T = "x^2*exp(-t)"

    def __call__(self, x, t):
        x = np.asarray(x, dtype=float)
        t = np.asarray(t, dtype=float)
        if self is ExactSolution.X_EXP_T:
            out = x * np.exp(t)
        elif self is ExactSolution.X2_EXP_T:
            out = x * x * np.exp(t)
        else:
            out = x * x * np.exp(-t)
        return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ProblemSpec:
    """``D_t^alpha u = rhs`` with ``u(x, 0) = psi(x)``."""

    name: str
    alpha: float
    psi: GSeries
    rhs: RhsExpr
    exact_alpha1: ExactSolution | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", check_alpha(self.alpha))
        if self.psi.alpha != self.alpha:
            raise UsageError("initial profile must be built with the problem's alpha")
        if any(j or k for _, j, k in self.psi.terms):
            raise UsageError("initial profile must not depend on t")

    def with_alpha(self, alpha: float) -> "ProblemSpec":
        alpha = check_alpha(alpha)
        psi = GSeries(alpha, dict(self.psi.terms))
        return replace(self, alpha=alpha, psi=psi)


_BUILTINS = {
    "ex1": (
        {1: 1.0},
        "D2[u(1x,1t)] + u(0.5x,0.5t)*D1[u(1x,0.5t)] + 0.5*u(1x,1t)",
        ExactSolution.X_EXP_T,
    ),
    "ex2": (
        {2: 1.0},
        "u(1x,0.5t)*D2[u(1x,0.5t)] - u(1x,1t)",
        ExactSolution.X2_EXP_T,
    ),
    "ex3": (
        {2: 1.0},
        "D2[u(0.5x,0.5t)]*D1[u(0.5x,0.5t)] - 0.125*D1[u(1x,1t)] - u(1x,1t)",
        ExactSolution.X2_EXP_NEG_T,
    ),
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin(name: str, alpha: float = 1.0) -> ProblemSpec:
    """One of the three worked examples: ``"ex1"``, ``"ex2"`` or ``"ex3"``."""
    try:
        poly, rhs, exact = _BUILTINS[name]
    except KeyError:
        raise UsageError(
            f"unknown built-in problem {name!r}; choose from {', '.join(BUILTIN_NAMES)}"
        ) from None
    return ProblemSpec(name, alpha, GSeries.polynomial(alpha, poly), parse_rhs(rhs), exact)


def exact_eval(spec: ProblemSpec, x, t):
    """Closed-form value at ``(x, t)``, or ``None`` when no closed form applies."""
    if spec.exact_alpha1 is None or spec.alpha != 1.0:
        return None
    return spec.exact_alpha1(x, t)


# -- file format ---------------------------------------------------------------

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_POLY_TERM = re.compile(
    rf"(?P<sign>[+-])?(?:(?P<c>{_NUM})(?:\*(?P<x1>x)(?:\^(?P<p1>\d+))?)?|(?P<x2>x)(?:\^(?P<p2>\d+))?)"
)
_REQUIRED = ("alpha", "ic", "rhs")
_KNOWN = ("name", "alpha", "ic", "rhs", "exact")


def _parse_poly(text: str, line: int) -> dict[int, float]:
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseDiagnostic("empty polynomial", 0, "", line)
    coeffs: dict[int, float] = {}
    pos = 0
    while pos < len(s):
        m = _POLY_TERM.match(s, pos)
        if m is None or m.end() == pos or (pos > 0 and m["sign"] is None):
            raise ParseDiagnostic("malformed polynomial term", pos, s[pos : pos + 12], line)
        sign = -1.0 if m["sign"] == "-" else 1.0
        if m["x2"]:
            c, p = 1.0, int(m["p2"] or 1)
        elif m["x1"]:
            c, p = float(m["c"]), int(m["p1"] or 1)
        else:
            c, p = float(m["c"]), 0
        coeffs[p] = coeffs.get(p, 0.0) + sign * c
        pos = m.end()
    return coeffs


def _fmt_poly(psi: GSeries) -> str:
    parts = []
    for (p, _, _), c in sorted(psi.terms.items()):
        sign = "-" if c < 0 else "+"
        body = f"{decimal_str(abs(c))}*x^{p}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = [first if first_sign == "+" else f"-{first}"]
    out += [f" {sign} {body}" for sign, body in parts[1:]]
    return "".join(out)


def parse_problem(text: str) -> ProblemSpec:
    """Read a problem from the ``key = value`` text format."""
    values: dict[str, tuple[str, int]] = {}
    lines = text.splitlines()
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseDiagnostic("expected 'key = value'", 0, line[:12], n)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KNOWN:
            raise ParseDiagnostic(f"unknown key {key!r}", 0, key, n)
        if key in values:
            raise ParseDiagnostic(f"duplicate key {key!r}", 0, key, n)
        values[key] = (value, n)

    for key in _REQUIRED:
        if key not in values:
            raise ParseDiagnostic(f"missing required key {key!r}", 0, "", len(lines) + 1)

    alpha_text, n = values["alpha"]
    if not re.fullmatch(r"\d+(?:\.\d*)?|\.\d+", alpha_text):
        raise ParseDiagnostic("alpha must be a decimal number", 0, alpha_text, n)
    alpha = float(alpha_text)
    if not 0.0 < alpha <= 1.0:
        raise ParseDiagnostic(
            f"alpha = {alpha_text} is outside the supported range (0, 1]", 0, alpha_text, n
        )

    ic_text, n = values["ic"]
    coeffs = _parse_poly(ic_text, n)
    if not all(math.isfinite(c) for c in coeffs.values()):
        raise ParseDiagnostic("polynomial coefficients must be finite", 0, ic_text, n)
    psi = GSeries.polynomial(alpha, coeffs)

    rhs_text, n = values["rhs"]
    try:
        rhs = parse_rhs(rhs_text)
    except ParseDiagnostic as err:
        raise ParseDiagnostic(err.message, err.offset, err.fragment, n) from None

    exact = None
    if "exact" in values:
        exact_text, n = values["exact"]
        tag = re.sub(r"\s+", "", exact_text)
        try:
            exact = ExactSolution(tag)
        except ValueError:
            choices = ", ".join(e.value for e in ExactSolution)
            raise ParseDiagnostic(
                f"unknown exact solution; expected one of {choices}", 0, exact_text, n
            ) from None

    name = values["name"][0] if "name" in values else "problem"
    return ProblemSpec(name, alpha, psi, rhs, exact)


def load_problem(path: str | os.PathLike) -> ProblemSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())


def format_problem(spec: ProblemSpec) -> str:
    lines = [
        f"name = {spec.name}",
        f"alpha = {decimal_str(spec.alpha)}",
        f"ic = {_fmt_poly(spec.psi)}",
        f"rhs = {format_rhs(spec.rhs)}",
    ]
    if spec.exact_alpha1 is not None:
        lines.append(f"exact = {spec.exact_alpha1.value}")
    return "\n".join(lines) + "\n"
