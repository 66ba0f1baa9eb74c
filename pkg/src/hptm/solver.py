"""Homotopy perturbation transform recursion and its truncation-error bound.

With ``u_0 = psi`` each further term is the fractional integral of the
homotopy coefficient of the right-hand side::

    u_{n+1} = J^alpha [ H_n(u_0, ..., u_n) ]

The Laplace-transform step of the method reduces to ``J^alpha`` because
``L[J^alpha v] = s^-alpha L[v]``; on the monomials carried by
:class:`~hptm.gseries.GSeries` it acts exactly through the power rule, so no
numerical transform inversion is involved.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .errors import ResourceError, UsageError
from .gseries import GSeries
from .problems import ProblemSpec
from .rhs_ast import homotopy_coeff

__all__ = ["HptmSolution", "ErrorEstimate", "solve", "partial_sum", "error_bound"]

log = logging.getLogger(__name__)

DEFAULT_MAX_TERMS = 100_000


@dataclass(frozen=True)
class HptmSolution:
    alpha: float
    terms: tuple[GSeries, ...]
    problem: ProblemSpec

    @property
    def order(self) -> int:
        return len(self.terms) - 1


@dataclass(frozen=True)
class ErrorEstimate:
    """Step ratios and the resulting truncation bound.

    ``gammas[i]`` belongs to step ``n = i + 1`` and is ``None`` where the
    previous term has zero norm.  ``bound`` is ``None`` unless ``gamma < 1``.
    """

    gammas: tuple[float | None, ...]
    gamma: float | None
    bound: float | None
    domain: tuple[float, float]


def solve(problem: ProblemSpec, order: int, max_terms: int = DEFAULT_MAX_TERMS) -> HptmSolution:
    """Compute ``u_0 .. u_order`` for ``problem``.

    Raises :class:`ResourceError` as soon as the stored monomial count
    passes ``max_terms``.
    """
    if order < 1:
        raise UsageError(f"order must be >= 1, got {order}")
    terms = [problem.psi]
    stored = len(problem.psi)
    for n in range(order):
        h = homotopy_coeff(problem.rhs, terms, n)
        nxt = h.jalpha()
        stored += len(nxt)
        if stored > max_terms:
            raise ResourceError(
                f"series for u_{n + 1} brings the stored monomial count to {stored}, "
                f"above the cap of {max_terms}"
            )
        log.debug("u_%d: %d monomials", n + 1, len(nxt))
        terms.append(nxt)
    return HptmSolution(problem.alpha, tuple(terms), problem)


def partial_sum(sol: HptmSolution, ell: int) -> GSeries:
    """``u_0 + ... + u_ell``."""
    if not 0 <= ell <= sol.order:
        raise UsageError(f"partial sum order {ell} is outside 0..{sol.order}")
    out = GSeries.zero(sol.alpha)
    for term in sol.terms[: ell + 1]:
        out = out + term
    return out


def error_bound(sol: HptmSolution, ell: int, x_max: float, t_max: float) -> ErrorEstimate:
    """Ratio-test bound ``gamma**(ell+1) / (1 - gamma) * ||u_0||`` on the box.

    Norms are the coefficient bound :meth:`GSeries.bound_norm`, which
    dominates the sup norm on ``[0, x_max] x [0, t_max]``.  ``gamma`` is the
    largest observed step ratio ``||u_n|| / ||u_{n-1}||`` for ``n <= ell``.
    """
    if not 1 <= ell <= sol.order:
        raise UsageError(f"bound order {ell} is outside 1..{sol.order}")
    norms = [s.bound_norm(x_max, t_max) for s in sol.terms[: ell + 1]]
    gammas = tuple(
        norms[n] / norms[n - 1] if norms[n - 1] > 0.0 else None for n in range(1, ell + 1)
    )
    finite = [g for g in gammas if g is not None]
    gamma = max(finite) if finite else None
    bound = None
    if gamma is not None and gamma < 1.0:
        bound = gamma ** (ell + 1) / (1.0 - gamma) * norms[0]
    return ErrorEstimate(gammas, gamma, bound, (x_max, t_max))
