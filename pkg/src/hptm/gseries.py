"""Finite generalized power series in (x, t).

A series is a sum of monomials ``c * x**p * t**(j + k*alpha)`` for one fixed
``alpha``.  The time exponent is kept as the exact integer pair ``(j, k)`` so
that terms reached along different algebraic paths always merge.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple

import numpy as np

from .errors import UsageError
from .gamma_kernel import frac_integral_coeff

__all__ = ["GExp", "Term", "GSeries", "check_alpha"]

Key = tuple[int, int, int]  # (x_pow, j, k)


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 < alpha <= 1.0):
        raise UsageError(f"alpha must lie in (0, 1], got {alpha!r}")
    return alpha


class GExp(NamedTuple):
    """Time exponent ``j + k*alpha`` with non-negative integers ``j``, ``k``."""

    j: int
    k: int

    def value(self, alpha: float) -> float:
        return self.j + self.k * alpha

    def __add__(self, other: "GExp") -> "GExp":  # type: ignore[override]
        return GExp(self.j + other.j, self.k + other.k)


@dataclass(frozen=True)
class Term:
    x_pow: int
    t_exp: GExp
    coeff: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.coeff):
            raise UsageError(f"term coefficient must be finite, got {self.coeff!r}")
        if self.x_pow < 0 or self.t_exp.j < 0 or self.t_exp.k < 0:
            raise UsageError("exponents must be non-negative integers")

    @property
    def key(self) -> Key:
        return (self.x_pow, self.t_exp.j, self.t_exp.k)


def _check_key(key: Key) -> Key:
    if len(key) != 3:
        raise UsageError(f"series key must be (x_pow, j, k), got {key!r}")
    p, j, k = key
    for v in key:
        if isinstance(v, bool) or int(v) != v or v < 0:
            raise UsageError(f"series key entries must be non-negative integers, got {key!r}")
    return (int(p), int(j), int(k))


class GSeries:
    """Immutable finite sum ``Σ c · x^p · t^(j + kα)``.

    Construct from a mapping ``{(p, j, k): coeff}`` or an iterable of
    :class:`Term`.  Repeated keys in an iterable are summed; zero
    coefficients are dropped, so two equal series compare equal.
    """

    __slots__ = ("_alpha", "_terms")

    def __init__(
        self,
        alpha: float,
        terms: Mapping[Key, float] | Iterable[Term] = (),
    ) -> None:
        self._alpha = check_alpha(alpha)
        acc: dict[Key, float] = {}
        if isinstance(terms, Mapping):
            items: Iterable[tuple[Key, float]] = terms.items()
        else:
            items = ((term.key, term.coeff) for term in terms)
        for key, c in items:
            c = float(c)
            if not math.isfinite(c):
                raise UsageError(f"coefficient for {key} is not finite: {c!r}")
            key = _check_key(key)
            acc[key] = acc.get(key, 0.0) + c
        self._terms = {key: c for key, c in acc.items() if c != 0.0}

    @classmethod
    def _raw(cls, alpha: float, terms: dict[Key, float]) -> "GSeries":
        # Trusted fast path: keys already validated, zeros already removed.
        obj = object.__new__(cls)
        obj._alpha = alpha
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, alpha: float) -> "GSeries":
        return cls(alpha)

    @classmethod
    def monomial(
        cls, alpha: float, coeff: float = 1.0, x_pow: int = 0, j: int = 0, k: int = 0
    ) -> "GSeries":
        return cls(alpha, {(x_pow, j, k): coeff})

    @classmethod
    def polynomial(cls, alpha: float, coeffs: Mapping[int, float]) -> "GSeries":
        """Time-independent polynomial ``Σ coeffs[p] x^p``."""
        return cls(alpha, {(p, 0, 0): c for p, c in coeffs.items()})

    # -- basic protocol -------------------------------------------------------

    @property
    def alpha(self) -> float:
        return self._alpha

    @property
    def terms(self) -> Mapping[Key, float]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Term]:
        for (p, j, k), c in self._terms.items():
            yield Term(p, GExp(j, k), c)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GSeries):
            return NotImplemented
        return self._alpha == other._alpha and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._alpha, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"GSeries(alpha={self._alpha!r}, terms={self._terms!r})"

    def __str__(self) -> str:
        return self.to_text() or "0"

    def coeff(self, x_pow: int, j: int = 0, k: int = 0) -> float:
        return self._terms.get((x_pow, j, k), 0.0)

    def max_x_pow(self) -> int:
        return max((p for p, _, _ in self._terms), default=0)

    def max_k(self) -> int:
        return max((k for _, _, k in self._terms), default=0)

    def max_t_exponent(self) -> float:
        return max((j + k * self._alpha for _, j, k in self._terms), default=0.0)

    # -- algebra --------------------------------------------------------------

    def _same_alpha(self, other: "GSeries") -> None:
        if not isinstance(other, GSeries):
            raise UsageError(f"expected a GSeries, got {type(other).__name__}")
        if other._alpha != self._alpha:
            raise UsageError(
                f"series use different alpha ({self._alpha!r} vs {other._alpha!r})"
            )

    def add(self, other: "GSeries") -> "GSeries":
        self._same_alpha(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key, 0.0) + c
            if s == 0.0:
                out.pop(key, None)
            else:
                out[key] = s
        return GSeries._raw(self._alpha, out)

    def scale(self, c: float) -> "GSeries":
        c = float(c)
        if not math.isfinite(c):
            raise UsageError(f"scale factor must be finite, got {c!r}")
        out = {}
        for key, v in self._terms.items():
            w = v * c
            if w != 0.0:
                out[key] = w
        return GSeries._raw(self._alpha, out)

    def mul(self, other: "GSeries") -> "GSeries":
        """Cauchy product: x-powers and both exponent components add."""
        self._same_alpha(other)
        out: dict[Key, float] = {}
        for (p1, j1, k1), c1 in self._terms.items():
            for (p2, j2, k2), c2 in other._terms.items():
                key = (p1 + p2, j1 + j2, k1 + k2)
                out[key] = out.get(key, 0.0) + c1 * c2
        return GSeries._raw(self._alpha, {k: v for k, v in out.items() if v != 0.0})

    def __add__(self, other: "GSeries") -> "GSeries":
        if not isinstance(other, GSeries):
            return NotImplemented
        return self.add(other)

    def __sub__(self, other: "GSeries") -> "GSeries":
        if not isinstance(other, GSeries):
            return NotImplemented
        return self.add(other.scale(-1.0))

    def __neg__(self) -> "GSeries":
        return self.scale(-1.0)

    def __mul__(self, other: "GSeries | float") -> "GSeries":
        if isinstance(other, GSeries):
            return self.mul(other)
        if isinstance(other, (int, float)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    # -- operators used by the solver ------------------------------------------

    def dx(self, m: int = 1) -> "GSeries":
        """m-th derivative in x; monomials with ``p < m`` vanish."""
        if m < 0:
            raise UsageError(f"derivative order must be >= 0, got {m}")
        if m == 0:
            return self
        out = {}
        for (p, j, k), c in self._terms.items():
            if p < m:
                continue
            fall = 1
            for i in range(m):
                fall *= p - i
            out[(p - m, j, k)] = c * fall
        return GSeries._raw(self._alpha, out)

    def delay(self, da: float, db: float) -> "GSeries":
        """The series of ``(x, t) -> self(da*x, db*t)``."""
        if not (0.0 < da <= 1.0 and 0.0 < db <= 1.0):
            raise UsageError(f"delay factors must lie in (0, 1], got ({da!r}, {db!r})")
        if da == 1.0 and db == 1.0:
            return self
        a = self._alpha
        out = {}
        for (p, j, k), c in self._terms.items():
            w = c * da**p * db ** (j + k * a)
            if w != 0.0:
                out[(p, j, k)] = w
        return GSeries._raw(a, out)

    def jalpha(self) -> "GSeries":
        """Riemann-Liouville integral of order alpha in t, applied termwise."""
        a = self._alpha
        out = {}
        for (p, j, k), c in self._terms.items():
            w = c * frac_integral_coeff(j + k * a, a)
            if w != 0.0:
                out[(p, j, k + 1)] = w
        return GSeries._raw(a, out)

    def prune(self, eps: float = 0.0) -> "GSeries":
        """Drop monomials with ``|c| <= eps``.  Never used inside the solver."""
        if eps <= 0.0:
            return self
        return GSeries._raw(
            self._alpha, {k: c for k, c in self._terms.items() if abs(c) > eps}
        )

    # -- evaluation -----------------------------------------------------------

    def evaluate(self, x, t):
        """Evaluate at ``(x, t)``; arrays broadcast with numpy rules.

        ``t**0`` is taken as 1 at ``t = 0`` so that ``evaluate(x, 0)`` is the
        initial profile.
        """
        scalar = np.ndim(x) == 0 and np.ndim(t) == 0
        x = np.asarray(x, dtype=float)
        t = np.asarray(t, dtype=float)
        if np.any(t < 0):
            raise UsageError("series can only be evaluated at t >= 0")
        out = np.zeros(np.broadcast(x, t).shape)
        x_cache: dict[int, np.ndarray] = {}
        t_cache: dict[tuple[int, int], np.ndarray] = {}
        for (p, j, k), c in self._terms.items():
            xp = x_cache.get(p)
            if xp is None:
                xp = x_cache[p] = x**p
            tq = t_cache.get((j, k))
            if tq is None:
                tq = t_cache[(j, k)] = t ** (j + k * self._alpha)
            out = out + c * xp * tq
        return float(out) if scalar else out

    def bound_norm(self, x_max: float, t_max: float) -> float:
        """Σ |c| x_max^p t_max^q, an upper bound of sup|self| on the box."""
        if x_max <= 0 or t_max <= 0:
            raise UsageError("bound_norm needs x_max > 0 and t_max > 0")
        a = self._alpha
        return math.fsum(
            abs(c) * x_max**p * t_max ** (j + k * a)
            for (p, j, k), c in self._terms.items()
        )

    # -- text form ------------------------------------------------------------

    def sorted_keys(self) -> list[Key]:
        a = self._alpha
        return sorted(self._terms, key=lambda key: (key[1] + key[2] * a, key[0], key[1]))

    def to_text(self) -> str:
        """One monomial per line: ``coeff x^p t^(j+k*alpha)``."""
        return "\n".join(
            f"{self._terms[key]!r} x^{key[0]} t^({key[1]}+{key[2]}*alpha)"
            for key in self.sorted_keys()
        )

    @classmethod
    def from_text(cls, text: str, alpha: float) -> "GSeries":
        terms: dict[Key, float] = {}
        for n, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            m = _TERM_LINE.fullmatch(line)
            if m is None:
                raise UsageError(f"line {n}: cannot read series term {line!r}")
            key = (int(m["p"]), int(m["j"]), int(m["k"]))
            if key in terms:
                raise UsageError(f"line {n}: duplicate term {key}")
            terms[key] = float(m["c"])
        return cls(alpha, terms)


_TERM_LINE = re.compile(
    r"(?P<c>\S+) x\^(?P<p>\d+) t\^\((?P<j>\d+)\+(?P<k>\d+)\*alpha\)"
)
