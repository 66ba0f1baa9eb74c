"""Seeded random generators and property checks for gseries and rhs_ast.

Each ``check_*`` draws one random case from ``rng`` and raises
AssertionError on failure.  The unit tests run a few hundred cases; the
acceptance suite runs 1000 of each with a fixed seed.
"""

from __future__ import annotations

import math

import numpy as np

from hptm.gseries import GSeries
from hptm.rhs_ast import (
    DelayedDeriv,
    Prod,
    Scaled,
    Sum,
    compositions,
    degree,
    format_rhs,
    homotopy_coeff,
    parse_rhs,
)

ALPHAS = (0.3, 0.5, 0.8, 1.0)
DELAYS = (0.25, 0.5, 0.75, 1.0)

BUILTIN_RHS = (
    "D2[u(1x,1t)] + u(0.5x,0.5t)*D1[u(1x,0.5t)] + 0.5*u(1x,1t)",
    "u(1x,0.5t)*D2[u(1x,0.5t)] - u(1x,1t)",
    "D2[u(0.5x,0.5t)]*D1[u(0.5x,0.5t)] - 0.125*D1[u(1x,1t)] - u(1x,1t)",
)


# -- generators ----------------------------------------------------------------


def rand_alpha(rng) -> float:
    if rng.random() < 0.5:
        return ALPHAS[rng.integers(len(ALPHAS))]
    return float(rng.uniform(0.05, 1.0))


def rand_series(rng, alpha, max_terms=8, max_p=4, max_j=3, max_k=3) -> GSeries:
    n = int(rng.integers(0, max_terms + 1))
    terms = {}
    for _ in range(n):
        key = (
            int(rng.integers(0, max_p + 1)),
            int(rng.integers(0, max_j + 1)),
            int(rng.integers(0, max_k + 1)),
        )
        terms[key] = float(rng.uniform(-10.0, 10.0))
    return GSeries(alpha, terms)


def rand_delay(rng) -> float:
    if rng.random() < 0.5:
        return DELAYS[rng.integers(len(DELAYS))]
    return round(float(rng.uniform(0.01, 1.0)), 4)


def rand_leaf(rng) -> DelayedDeriv:
    return DelayedDeriv(int(rng.integers(0, 3)), rand_delay(rng), rand_delay(rng))


def rand_term(rng):
    k = int(rng.integers(1, 5))
    body = rand_leaf(rng) if k == 1 else Prod(tuple(rand_leaf(rng) for _ in range(k)))
    roll = rng.random()
    if roll < 0.3:
        return body
    if roll < 0.45:
        return Scaled(float(rng.choice([-1.0, 1.0])), body)
    return Scaled(round(float(rng.uniform(-5.0, 5.0)), 3) or 0.5, body)


def rand_tree(rng):
    """A random tree in the form produced by the parser."""
    n = int(rng.integers(1, 5))
    terms = tuple(rand_term(rng) for _ in range(n))
    return terms[0] if n == 1 else Sum(terms)


# -- helpers -------------------------------------------------------------------


def absolute(s: GSeries) -> GSeries:
    return GSeries(s.alpha, {key: abs(c) for key, c in s.terms.items()})


def assert_close(got: GSeries, want: GSeries, rtol: float, scale: GSeries | None = None):
    """Coefficient-wise comparison.

    ``scale`` holds per-key magnitudes (for example ``|a|*|b|`` for a
    product), so a key whose value cancels is judged against the size of
    the contributions rather than the size of the result.
    """
    for key in set(got.terms) | set(want.terms):
        a, b = got.terms.get(key, 0.0), want.terms.get(key, 0.0)
        mag = max(abs(a), abs(b))
        if scale is not None:
            mag = max(mag, scale.terms.get(key, 0.0))
        assert abs(a - b) <= rtol * mag + 1e-300, f"key {key}: {a!r} != {b!r}"


# -- gseries properties --------------------------------------------------------


def check_ring_laws(rng) -> None:
    alpha = rand_alpha(rng)
    a, b, c = (rand_series(rng, alpha) for _ in range(3))
    A, B, C = absolute(a), absolute(b), absolute(c)
    assert_close(a + b, b + a, 1e-12, A + B)
    assert_close(a * b, b * a, 1e-12, A * B)
    assert_close((a * b) * c, a * (b * c), 1e-12, A * B * C)
    assert_close(a * (b + c), a * b + a * c, 1e-12, A * B + A * C)


def check_delay_composition(rng) -> None:
    alpha = rand_alpha(rng)
    s = rand_series(rng, alpha)
    a1, b1, a2, b2 = (float(rng.uniform(0.01, 1.0)) for _ in range(4))
    assert_close(s.delay(a1, b1).delay(a2, b2), s.delay(a1 * a2, b1 * b2), 1e-13)


def check_leibniz(rng) -> None:
    alpha = rand_alpha(rng)
    f, g = rand_series(rng, alpha), rand_series(rng, alpha)
    lhs = (f * g).dx(1)
    rhs = f.dx(1) * g + f * g.dx(1)
    scale = absolute(f.dx(1)) * absolute(g) + absolute(f) * absolute(g.dx(1))
    # exact on keys: a key may only be absent on one side through exact cancellation
    for key in set(lhs.terms) ^ set(rhs.terms):
        assert abs(lhs.coeff(*key) - rhs.coeff(*key)) <= 1e-12 * scale.coeff(*key), key
    assert_close(lhs, rhs, 1e-12, scale)


def check_jalpha_alpha1(rng) -> None:
    n = int(rng.integers(0, 21))
    p = int(rng.integers(0, 5))
    c = float(rng.uniform(-10.0, 10.0))
    for key in ((p, n, 0), (p, 0, n)):
        got = GSeries(1.0, {key: c}).jalpha()
        assert list(got.terms) == [(key[0], key[1], key[2] + 1)]
        want = c / (n + 1)
        (value,) = got.terms.values()
        assert abs(value - want) <= 1e-14 * abs(want), (key, value, want)


def check_eval_linear(rng) -> None:
    alpha = rand_alpha(rng)
    a, b = rand_series(rng, alpha), rand_series(rng, alpha)
    x, t = float(rng.uniform(-2.0, 2.0)), float(rng.uniform(0.0, 2.0))
    lhs = (a + b).evaluate(x, t)
    rhs = a.evaluate(x, t) + b.evaluate(x, t)
    mag = absolute(a).evaluate(abs(x), t) + absolute(b).evaluate(abs(x), t)
    assert abs(lhs - rhs) <= 1e-12 * max(mag, 1e-300), (lhs, rhs)


def check_bound_norm_dominates(rng) -> None:
    alpha = rand_alpha(rng)
    s = rand_series(rng, alpha)
    x_max, t_max = float(rng.uniform(0.1, 2.0)), float(rng.uniform(0.1, 2.0))
    bound = s.bound_norm(x_max, t_max)
    xs = rng.uniform(0.0, x_max, 100)
    ts = rng.uniform(0.0, t_max, 100)
    assert np.all(np.abs(s.evaluate(xs, ts)) <= bound + 1e-12)


# -- rhs_ast properties --------------------------------------------------------


def check_degree_bookkeeping(rng) -> None:
    alpha = rand_alpha(rng)
    tree = rand_tree(rng)
    n = int(rng.integers(0, 4))
    u = [rand_series(rng, alpha, max_terms=4, max_p=3, max_j=2, max_k=2) for _ in range(n + 1)]
    u = [s if s else GSeries.monomial(alpha, 1.0, 1, 0, 0) for s in u]
    P = max(s.max_x_pow() for s in u)
    Q = max(s.max_t_exponent() for s in u)
    deg = degree(tree)
    h = homotopy_coeff(tree, u, n)
    if h:
        assert h.max_x_pow() <= deg * P
        assert h.max_t_exponent() <= deg * Q + 1e-12


def check_composition_counts() -> None:
    one = GSeries.polynomial(1.0, {0: 1.0})
    leaf = DelayedDeriv(0, 1.0, 1.0)
    for k in (2, 3):
        prod = Prod((leaf,) * k)
        for n in range(6):
            want = math.comb(n + k - 1, k - 1)
            parts = list(compositions(n, k))
            assert len(parts) == len(set(parts)) == want
            assert all(len(c) == k and sum(c) == n and min(c) >= 0 for c in parts)
            # with every u_r = 1 each composition contributes exactly 1
            assert homotopy_coeff(prod, [one] * (n + 1), n).coeff(0) == want


def check_round_trip(rng) -> None:
    tree = rand_tree(rng)
    assert parse_rhs(format_rhs(tree)) == tree


def check_builtin_round_trips() -> None:
    for text in BUILTIN_RHS:
        tree = parse_rhs(text)
        assert format_rhs(tree) == text
        assert parse_rhs(format_rhs(tree)) == tree


def check_ex3_convention() -> None:
    for alpha in ALPHAS:
        u0 = GSeries.polynomial(alpha, {2: 1.0})
        h = homotopy_coeff(parse_rhs(BUILTIN_RHS[2]), [u0], 0)
        assert h == GSeries.polynomial(alpha, {2: -1.0}), h


RANDOM_CHECKS = (
    check_ring_laws,
    check_delay_composition,
    check_leibniz,
    check_jalpha_alpha1,
    check_eval_linear,
    check_bound_norm_dominates,
    check_degree_bookkeeping,
    check_round_trip,
)

FIXED_CHECKS = (check_composition_counts, check_builtin_round_trips, check_ex3_convention)
