"""Laguerre polynomials, Laguerre functions, and Hermite functions.

Two parallel tracks are deliberately kept apart:

* exact generalized Laguerre polynomials as :class:`~polyfock.ratpoly.RationalPoly`
  objects, built from the three-term recurrence over the rationals.  These
  feed the zero-tolerance identity checks (`check_laguerre_*`), where both
  sides are expanded and compared term by term;
* plain floating-point evaluators driven by the same recurrences, which are
  what the kernel and symbol code actually calls.

The Hermite functions use the normalized recurrence

    psi_0(t) = pi^(-1/4) exp(-t^2/2),
    psi_1(t) = sqrt(2) t psi_0(t),
    psi_{p+1}(t) = sqrt(2/(p+1)) t psi_p(t) - sqrt(p/(p+1)) psi_{p-1}(t),

so every psi_p comes out unit-normalized in L^2(R) without ever touching
factorials.  A Gaussian-free variant (psi_p scaled by e^{t^2/2}) is exposed
for quadrature code that folds the Gaussian into its weights.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .multiindex import build_index_table
from .ratpoly import RationalPoly

ExactScalar = Union[int, Fraction]


# ---------------------------------------------------------------------------
# exact track
# ---------------------------------------------------------------------------

def _laguerre_in(p: int, a: ExactScalar, s: RationalPoly) -> list[RationalPoly]:
    """All L_k^{(a)}(s) for k = 0..p with s an element of a rational polynomial ring."""
    if p < 0:
        raise ValueError(f"degree must be nonnegative, got {p}")
    a = Fraction(a)
    ring = s.variables
    one = RationalPoly.constant(1, ring)
    out = [one]
    if p == 0:
        return out
    out.append(RationalPoly.constant(1 + a, ring) - s)
    for k in range(1, p):
        lead = out[k].scale(Fraction(2 * k + 1) + a) - s * out[k]
        tail = out[k - 1].scale(Fraction(k) + a)
        out.append((lead - tail).scale(Fraction(1, k + 1)))
    return out


def laguerre_poly(p: int, a: ExactScalar = 0, var: str = "x") -> RationalPoly:
    """Generalized Laguerre polynomial L_p^{(a)} with exact coefficients.

    Satisfies the three-term recurrence
    (k+1) L_{k+1} = (2k+1+a-x) L_k - (k+a) L_{k-1}; the leading coefficient
    is (-1)^p / p!.
    """
    x = RationalPoly.variable(var, (var,))
    return _laguerre_in(p, a, x)[p]


def check_laguerre_of_sum(a: ExactScalar, b: ExactScalar, p: int) -> bool:
    """Exact check of L_p^{(a+b+1)}(x+y) = sum_k L_k^{(a)}(x) L_{p-k}^{(b)}(y)."""
    ring = ("x", "y")
    x = RationalPoly.variable("x", ring)
    y = RationalPoly.variable("y", ring)
    lhs = _laguerre_in(p, Fraction(a) + Fraction(b) + 1, x + y)[p]
    in_x = _laguerre_in(p, a, x)
    in_y = _laguerre_in(p, b, y)
    rhs = RationalPoly.zero(ring)
    for k in range(p + 1):
        rhs = rhs + in_x[k] * in_y[p - k]
    return (lhs - rhs).is_zero()


def check_laguerre_telescoping(a: ExactScalar, p: int) -> bool:
    """Exact check of sum_{k<=p} L_k^{(a)}(x) = L_p^{(a+1)}(x)."""
    x = RationalPoly.variable("x", ("x",))
    partial = _laguerre_in(p, a, x)
    total = RationalPoly.zero(("x",))
    for poly in partial:
        total = total + poly
    lhs = _laguerre_in(p, Fraction(a) + 1, x)[p]
    return (lhs - total).is_zero()


def check_laguerre_decomposition(n: int, p: int) -> tuple[bool, int]:
    """Exact check of L_p^{(n)}(t_1+...+t_n) = sum over |k| <= p of prod_r L_{k_r}(t_r).

    The sum runs over every multi-index k in N_0^n with |k| <= p; each
    summand is the product of plain (a=0) Laguerre polynomials in disjoint
    variables.  Returns ``(identity_holds, summand_count)`` so callers can
    compare the count against C(n+p, n) themselves.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    ring = tuple(f"t{r}" for r in range(1, n + 1))
    coords = [RationalPoly.variable(v, ring) for v in ring]
    total = RationalPoly.zero(ring)
    for c in coords:
        total = total + c
    lhs = _laguerre_in(p, n, total)[p]

    per_coord = [_laguerre_in(p, 0, c) for c in coords]
    table = build_index_table(n, p + 1)
    rhs = RationalPoly.zero(ring)
    for k in table:
        prod = per_coord[0][k[0]]
        for r in range(1, n):
            prod = prod * per_coord[r][k[r]]
        rhs = rhs + prod
    return (lhs - rhs).is_zero(), len(table)


# ---------------------------------------------------------------------------
# floating-point track
# ---------------------------------------------------------------------------

def laguerre_eval_all(p_max: int, a: float, x) -> np.ndarray:
    """Stack of L_k^{(a)}(x) for k = 0..p_max, shape (p_max+1,) + x.shape.

    Forward three-term recurrence; x may be real or complex, scalar or array.
    """
    if p_max < 0:
        raise ValueError(f"degree must be nonnegative, got {p_max}")
    x = np.asarray(x)
    out = np.empty((p_max + 1,) + x.shape, dtype=np.result_type(x.dtype, float))
    out[0] = 1.0
    if p_max >= 1:
        out[1] = 1.0 + a - x
    for k in range(1, p_max):
        out[k + 1] = ((2 * k + 1 + a - x) * out[k] - (k + a) * out[k - 1]) / (k + 1)
    return out


def laguerre_eval(p: int, a: float, x):
    """Generalized Laguerre polynomial L_p^{(a)} at x (scalar or array)."""
    return laguerre_eval_all(p, a, x)[p]


def laguerre_fn(p: int, t):
    """Laguerre function ell_p(t) = e^{-t/2} L_p(t)."""
    t = np.asarray(t)
    return np.exp(-t / 2) * laguerre_eval(p, 0.0, t)


def laguerre_fn_all(p_max: int, t) -> np.ndarray:
    """Stack of ell_k(t) for k = 0..p_max."""
    t = np.asarray(t)
    return np.exp(-t / 2) * laguerre_eval_all(p_max, 0.0, t)


def _hermite_recurrence(p_max: int, t: np.ndarray, start: np.ndarray) -> np.ndarray:
    out = np.empty((p_max + 1,) + t.shape, dtype=start.dtype)
    out[0] = start
    if p_max >= 1:
        out[1] = math.sqrt(2.0) * t * out[0]
    for p in range(1, p_max):
        out[p + 1] = (
            math.sqrt(2.0 / (p + 1)) * t * out[p]
            - math.sqrt(p / (p + 1)) * out[p - 1]
        )
    return out


def hermite_fn_table(p_max: int, t) -> np.ndarray:
    """Hermite functions psi_0..psi_{p_max} at t, shape (p_max+1,) + t.shape."""
    if p_max < 0:
        raise ValueError(f"degree must be nonnegative, got {p_max}")
    t = np.asarray(t, dtype=float)
    start = np.full(t.shape, math.pi ** -0.25) * np.exp(-t * t / 2)
    return _hermite_recurrence(p_max, t, start)


def hermite_fn(p: int, t):
    """Hermite function psi_p(t), unit-normalized in L^2(R)."""
    return hermite_fn_table(p, t)[p]


def hermite_poly_table(p_max: int, t) -> np.ndarray:
    """Gaussian-free Hermite functions, psi_p(t) * e^{t^2/2}.

    For quadrature rules that account for the e^{-t^2} factor in their
    weights: products of two entries times such a weight reproduce
    psi_i psi_j without evaluating huge exponentials.
    """
    if p_max < 0:
        raise ValueError(f"degree must be nonnegative, got {p_max}")
    t = np.asarray(t, dtype=float)
    start = np.full(t.shape, math.pi ** -0.25)
    return _hermite_recurrence(p_max, t, start)
