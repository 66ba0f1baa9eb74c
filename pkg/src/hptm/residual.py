"""Independent check that a truncated series satisfies its delay equation.

The Caputo derivative is discretized with the L1 scheme on a uniform time
grid and the right-hand side is evaluated pointwise from the partial sum.
Neither side goes through the fractional-integral code of the solver, so an
error in the series algebra cannot confirm itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import UsageError
from .gseries import GSeries
from .problems import ProblemSpec, exact_eval
from .rhs_ast import DelayedDeriv, Prod, RhsExpr, Scaled, Source, Sum
from .solver import HptmSolution, partial_sum

__all__ = [
    "GridSpec",
    "caputo_l1",
    "eval_rhs",
    "residual_norm",
    "CompareRow",
    "compare_exact",
]


@dataclass(frozen=True)
class GridSpec:
    """Tensor grid; ``t_points`` start at 0 with uniform spacing."""

    x_points: tuple[float, ...]
    t_points: tuple[float, ...]

    def __post_init__(self) -> None:
        xs = tuple(float(v) for v in self.x_points)
        ts = tuple(float(v) for v in self.t_points)
        object.__setattr__(self, "x_points", xs)
        object.__setattr__(self, "t_points", ts)
        if not xs:
            raise UsageError("grid needs at least one x point")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise UsageError("x points must be strictly ascending")
        if len(ts) < 3:
            raise UsageError("grid needs at least 3 time points")
        if ts[0] != 0.0:
            raise UsageError("time points must start at 0")
        steps = np.diff(ts)
        if steps[0] <= 0 or np.max(np.abs(steps - steps[0])) > 1e-12:
            raise UsageError("time points must be uniformly spaced")

    @property
    def h(self) -> float:
        return (self.t_points[-1] - self.t_points[0]) / (len(self.t_points) - 1)

    @classmethod
    def box(cls, x_max: float, t_max: float, h: float, nx: int = 21) -> "GridSpec":
        """``nx`` x points on [0, x_max] and time step ``h`` on [0, t_max]."""
        steps = round(t_max / h)
        if steps < 2 or abs(steps * h - t_max) > 1e-9 * max(1.0, t_max):
            raise UsageError(f"t_max = {t_max} is not a multiple (>= 2) of h = {h}")
        return cls(
            tuple(np.linspace(0.0, x_max, nx)),
            tuple(h * i for i in range(steps + 1)),
        )


def caputo_l1(samples, alpha: float, h: float) -> np.ndarray:
    """L1 approximation of the Caputo derivative at ``t_1 .. t_M``.

    ``samples`` holds ``u(t_0) .. u(t_M)`` along its last axis.  At
    ``alpha = 1`` the scheme is the plain backward difference.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")
    if h <= 0:
        raise ValueError("time step must be positive")
    u = np.asarray(samples, dtype=float)
    if u.shape[-1] < 2:
        raise ValueError("need at least two time samples")
    d = np.diff(u, axis=-1)
    if alpha == 1.0:
        return d / h
    m = d.shape[-1]
    r = np.arange(m, dtype=float)
    w = (r + 1.0) ** (1.0 - alpha) - r ** (1.0 - alpha)
    # out[.., i] = Σ_{s<=i} w[i - s] d[.., s]
    idx = np.arange(m)
    lag = idx[:, None] - idx[None, :]
    weights = np.where(lag >= 0, w[np.clip(lag, 0, None)], 0.0)
    return d @ weights.T * (h**-alpha / math.gamma(2.0 - alpha))


def eval_rhs(expr: RhsExpr, s: GSeries, x, t):
    """Evaluate the right-hand side pointwise for the candidate solution ``s``.

    A delayed derivative of the substituted map is ``a**m * (d^m s/dx^m)(a x, b t)``.
    """
    if isinstance(expr, DelayedDeriv):
        return expr.a**expr.m * s.dx(expr.m).evaluate(expr.a * np.asarray(x), expr.b * np.asarray(t))
    if isinstance(expr, Scaled):
        return expr.c * eval_rhs(expr.inner, s, x, t)
    if isinstance(expr, Sum):
        return sum(eval_rhs(a, s, x, t) for a in expr.addends)
    if isinstance(expr, Prod):
        out = 1.0
        for f in expr.factors:
            out = out * eval_rhs(f, s, x, t)
        return out
    if isinstance(expr, Source):
        return expr.s.evaluate(x, t)
    raise TypeError(f"not an RHS node: {expr!r}")


def residual_norm(
    problem: ProblemSpec,
    sol: HptmSolution,
    ell: int,
    grid: GridSpec,
    substeps: int = 1,
) -> float:
    """Max over grid nodes with ``t > 0`` of |D_t^alpha S_ell - f(S_ell)|.

    With ``substeps > 1`` the L1 sum runs on a time grid ``substeps`` times
    finer than ``grid`` (the series is sampled there directly) and is read
    back at the grid nodes.  For alpha < 1 the L1 error at the first nodes
    does not shrink with h, because the partial sum carries t**alpha terms,
    so the default ``substeps=1`` has a floor of roughly
    ``|1/Γ(2 - α) - Γ(1 + α)| * |coefficient of t**alpha|``.
    """
    if substeps < 1:
        raise UsageError("substeps must be >= 1")
    s = partial_sum(sol, ell)
    x = np.asarray(grid.x_points)[:, None]
    n_t = len(grid.t_points) - 1
    t_fine = grid.h / substeps * np.arange(n_t * substeps + 1)[None, :]
    lhs = caputo_l1(s.evaluate(x, t_fine), problem.alpha, grid.h / substeps)
    lhs = lhs[:, substeps - 1 :: substeps]
    t = np.asarray(grid.t_points)[None, 1:]
    rhs = np.broadcast_to(eval_rhs(problem.rhs, s, x, t), lhs.shape)
    return float(np.max(np.abs(lhs - rhs)))


@dataclass(frozen=True)
class CompareRow:
    x: float
    t: float
    exact: float
    approx: float
    abs_err: float


def compare_exact(
    problem: ProblemSpec,
    sol: HptmSolution,
    ell: int,
    xs: Sequence[float],
    ts: Sequence[float],
) -> list[CompareRow]:
    """Rows ``(x, t, exact, approx, |exact - approx|)``, x-major."""
    if exact_eval(problem, 0.0, 0.0) is None:
        raise UsageError(
            f"no closed form for problem {problem.name!r} at alpha = {problem.alpha}; "
            "use residual_norm to check the series instead"
        )
    s = partial_sum(sol, ell)
    rows = []
    for x in xs:
        for t in ts:
            exact = exact_eval(problem, x, t)
            approx = s.evaluate(x, t)
            rows.append(CompareRow(float(x), float(t), exact, approx, abs(exact - approx)))
    return rows
