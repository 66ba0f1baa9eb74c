"""Right-hand sides of proportional-delay equations.

An :data:`RhsExpr` is a small immutable tree.  Its leaves are delayed
derivatives ``∂^m/∂x^m [u(a x, b t)]`` (the derivative of the substituted
map) and known source series; inner nodes are products, scalings and sums.

Text syntax (whitespace is ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := 'D' digit '[' uref ']' | uref | number
    uref   := 'u(' number 'x' ',' number 't' ')'

Numbers are plain decimal literals.  Every number inside a term is folded
into one :class:`Scaled` factor, and a leading minus multiplies it by -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from itertools import combinations
from typing import Iterator, Sequence, Union

from .errors import ParseDiagnostic, UsageError
from .gseries import GSeries

__all__ = [
    "MAX_DERIV_ORDER",
    "MAX_DEGREE",
    "DelayedDeriv",
    "Prod",
    "Scaled",
    "Sum",
    "Source",
    "RhsExpr",
    "degree",
    "parse_rhs",
    "format_rhs",
    "decimal_str",
    "compositions",
    "homotopy_coeff",
]

MAX_DERIV_ORDER = 4
MAX_DEGREE = 4


@dataclass(frozen=True)
class DelayedDeriv:
    m: int
    a: float
    b: float

    def __post_init__(self) -> None:
        if not (0 <= self.m <= MAX_DERIV_ORDER):
            raise UsageError(f"derivative order must be in 0..{MAX_DERIV_ORDER}, got {self.m}")
        if not (0.0 < self.a <= 1.0):
            raise UsageError(f"x-delay factor must lie in (0, 1], got {self.a!r}")
        if not (0.0 < self.b <= 1.0):
            raise UsageError(f"t-delay factor must lie in (0, 1], got {self.b!r}")


@dataclass(frozen=True)
class Prod:
    factors: tuple["RhsExpr", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 2:
            raise UsageError("a product needs at least two factors")
        if degree(self) > MAX_DEGREE:
            raise UsageError(
                f"multiplicative degree {degree(self)} exceeds the limit {MAX_DEGREE}"
            )


@dataclass(frozen=True)
class Scaled:
    c: float
    inner: "RhsExpr"

    def __post_init__(self) -> None:
        if not math.isfinite(self.c):
            raise UsageError(f"scale factor must be finite, got {self.c!r}")


@dataclass(frozen=True)
class Sum:
    addends: tuple["RhsExpr", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "addends", tuple(self.addends))
        if len(self.addends) < 1:
            raise UsageError("a sum needs at least one addend")


@dataclass(frozen=True)
class Source:
    """A known term h(x, t) that does not depend on u."""

    s: GSeries


RhsExpr = Union[DelayedDeriv, Prod, Scaled, Sum, Source]


def degree(expr: RhsExpr) -> int:
    """Multiplicative degree in u (a source term has degree 0)."""
    if isinstance(expr, DelayedDeriv):
        return 1
    if isinstance(expr, Prod):
        return sum(degree(f) for f in expr.factors)
    if isinstance(expr, Scaled):
        return degree(expr.inner)
    if isinstance(expr, Sum):
        return max(degree(a) for a in expr.addends)
    if isinstance(expr, Source):
        return 0
    raise TypeError(f"not an RHS node: {expr!r}")


# -- homotopy coefficients ----------------------------------------------------


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All ordered ``k``-tuples of non-negative integers summing to ``n``."""
    # stars and bars: choose k-1 bar positions among n+k-1 slots
    for bars in combinations(range(n + k - 1), k - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(n + k - 2 - prev)
        yield tuple(parts)


def homotopy_coeff(expr: RhsExpr, u: Sequence[GSeries], n: int) -> GSeries:
    """Coefficient of p**n in ``expr`` after substituting ``u = Σ p^r u[r]``.

    Only ``u[0..n]`` are read.  Products convolve over all ordered
    compositions of ``n``.
    """
    if n < 0 or n >= len(u):
        raise UsageError(f"order {n} needs u[0..{n}], got {len(u)} series")
    alpha = u[0].alpha
    if any(s.alpha != alpha for s in u[: n + 1]):
        raise UsageError("all homotopy terms must share one alpha")
    cache: dict[tuple[int, int], GSeries] = {}
    return _order(expr, u, n, alpha, cache)


def _order(
    node: RhsExpr,
    u: Sequence[GSeries],
    r: int,
    alpha: float,
    cache: dict[tuple[int, int], GSeries],
) -> GSeries:
    key = (id(node), r)
    hit = cache.get(key)
    if hit is not None:
        return hit

    if isinstance(node, DelayedDeriv):
        # substitute first, then differentiate: the composite-map convention
        out = u[r].delay(node.a, node.b).dx(node.m)
    elif isinstance(node, Scaled):
        out = _order(node.inner, u, r, alpha, cache).scale(node.c)
    elif isinstance(node, Sum):
        out = GSeries.zero(alpha)
        for a in node.addends:
            out = out + _order(a, u, r, alpha, cache)
    elif isinstance(node, Source):
        out = node.s if r == 0 else GSeries.zero(alpha)
    elif isinstance(node, Prod):
        out = GSeries.zero(alpha)
        for parts in compositions(r, len(node.factors)):
            prod = None
            for f, ri in zip(node.factors, parts):
                piece = _order(f, u, ri, alpha, cache)
                prod = piece if prod is None else prod * piece
                if not prod:
                    break
            out = out + prod
    else:
        raise TypeError(f"not an RHS node: {node!r}")

    cache[key] = out
    return out


# -- text form -----------------------------------------------------------------


def decimal_str(v: float) -> str:
    """Shortest round-tripping plain decimal literal (no exponent)."""
    if float(v).is_integer():
        return str(int(v))
    s = repr(float(v))
    if "e" in s or "E" in s:
        s = format(Decimal(s), "f")
    return s


def _fmt_uref(node: DelayedDeriv) -> str:
    ref = f"u({decimal_str(node.a)}x,{decimal_str(node.b)}t)"
    return ref if node.m == 0 else f"D{node.m}[{ref}]"


def _fmt_factor(node: RhsExpr) -> str:
    if isinstance(node, DelayedDeriv):
        return _fmt_uref(node)
    if isinstance(node, Prod) and all(isinstance(f, DelayedDeriv) for f in node.factors):
        return "*".join(_fmt_uref(f) for f in node.factors)
    raise UsageError(f"{type(node).__name__} has no text form at this position")


def _fmt_term(node: RhsExpr) -> tuple[str, str]:
    # returns (sign, body)
    if isinstance(node, Scaled):
        if isinstance(node.inner, Scaled):
            raise UsageError("nested scalings have no text form")
        inner = _fmt_factor(node.inner)
        c = node.c
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if c == 1.0:
            if sign == "+":
                # keep an explicit factor so the Scaled node survives a round trip
                return sign, f"1*{inner}"
            return sign, inner
        return sign, f"{decimal_str(c)}*{inner}"
    if isinstance(node, Source):
        raise UsageError("source terms have no text form")
    return "+", _fmt_factor(node)


def format_rhs(expr: RhsExpr) -> str:
    """Text form accepted by :func:`parse_rhs`; ``parse_rhs(format_rhs(e)) == e``."""
    terms = expr.addends if isinstance(expr, Sum) and len(expr.addends) > 1 else (expr,)
    if isinstance(expr, Sum) and len(expr.addends) == 1:
        raise UsageError("a one-addend sum has no distinct text form")
    out = []
    for i, term in enumerate(terms):
        sign, body = _fmt_term(term)
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def fail(self, message: str, pos: int | None = None) -> ParseDiagnostic:
        pos = self.pos if pos is None else pos
        offset = len(self.text[:pos].encode("utf-8"))
        return ParseDiagnostic(message, offset, self.text[pos : pos + 12])

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise self.fail(f"expected {ch!r}, found {got!r}")
        self.pos += 1

    def number(self) -> float:
        self.skip_ws()
        start = self.pos
        text = self.text
        while self.pos < len(text) and text[self.pos].isdigit():
            self.pos += 1
        if self.pos < len(text) and text[self.pos] == ".":
            self.pos += 1
            while self.pos < len(text) and text[self.pos].isdigit():
                self.pos += 1
        lit = text[start : self.pos]
        if lit in ("", "."):
            self.pos = start
            raise self.fail("expected a decimal number")
        return float(lit)

    def uref(self, m: int) -> DelayedDeriv:
        self.expect("u")
        self.expect("(")
        a_pos = self.pos
        a = self.number()
        self.expect("x")
        self.expect(",")
        b_pos = self.pos
        b = self.number()
        self.expect("t")
        self.expect(")")
        if not 0.0 < a <= 1.0:
            raise self.fail(f"x-delay factor {a!r} is outside (0, 1]", a_pos)
        if not 0.0 < b <= 1.0:
            raise self.fail(f"t-delay factor {b!r} is outside (0, 1]", b_pos)
        return DelayedDeriv(m, a, b)

    def factor(self) -> tuple[float | None, DelayedDeriv | None]:
        ch = self.peek()
        if ch == "D":
            self.pos += 1
            self.skip_ws()
            if self.pos >= len(self.text) or not self.text[self.pos].isdigit():
                raise self.fail("expected a single digit derivative order after 'D'")
            m = int(self.text[self.pos])
            if m > MAX_DERIV_ORDER:
                raise self.fail(f"derivative order {m} exceeds the limit {MAX_DERIV_ORDER}")
            self.pos += 1
            self.expect("[")
            node = self.uref(m)
            self.expect("]")
            return None, node
        if ch == "u":
            return None, self.uref(0)
        if ch.isdigit() or ch == ".":
            return self.number(), None
        raise self.fail(f"expected a factor, found {ch or 'end of input'!r}")

    def term(self, sign: float) -> RhsExpr:
        start = self.pos
        coeff = sign
        scaled = sign != 1.0
        factors: list[DelayedDeriv] = []
        while True:
            num, node = self.factor()
            if node is None:
                coeff *= num
                scaled = True
            else:
                factors.append(node)
            if self.peek() != "*":
                break
            self.pos += 1
        if not factors:
            raise self.fail("a term must reference u at least once", start)
        body: RhsExpr = factors[0] if len(factors) == 1 else self._prod(factors, start)
        return Scaled(coeff, body) if scaled else body

    def _prod(self, factors: list[DelayedDeriv], start: int) -> Prod:
        if len(factors) > MAX_DEGREE:
            raise self.fail(
                f"product of {len(factors)} factors exceeds degree limit {MAX_DEGREE}", start
            )
        return Prod(tuple(factors))

    def expr(self) -> RhsExpr:
        sign = 1.0
        if self.peek() in ("+", "-"):
            sign = -1.0 if self.peek() == "-" else 1.0
            self.pos += 1
        terms = [self.term(sign)]
        while self.peek() in ("+", "-"):
            sign = -1.0 if self.peek() == "-" else 1.0
            self.pos += 1
            terms.append(self.term(sign))
        if self.peek():
            raise self.fail(f"unexpected {self.peek()!r}")
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def parse_rhs(text: str) -> RhsExpr:
    """Parse the text syntax into an :data:`RhsExpr`.

    Raises :class:`ParseDiagnostic` carrying the byte offset of the problem.

    >>> parse_rhs("D2[u(1x,1t)] - u(1x,1t)")
    Sum(addends=(DelayedDeriv(m=2, a=1.0, b=1.0), Scaled(c=-1.0, inner=DelayedDeriv(m=0, a=1.0, b=1.0))))
    """
    if not text.strip():
        raise ParseDiagnostic("empty right-hand side", 0, "")
    return _Parser(text).expr()
