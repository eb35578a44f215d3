"""Matrix symbols of vertical Toeplitz operators on the fiber decomposition.

After the fiber decomposition, a vertical operator (multiplication by
g(v) compressed to the fibers) acts xi-by-xi as the d x d matrix

    gamma_g(xi)_{r,s} = 2^{n/2} int g(v) prod_p psi_{phi(r)_p}((xi_p + 2 v_p)/sqrt(2))
                                         prod_p psi_{phi(s)_p}((xi_p + 2 v_p)/sqrt(2)) dv,

a Toeplitz-type compression in the fiber basis.  Horizontal translations
come out as scalar characters e^{-i<xi, a>} I, convolutions as
(Fourier transform of the kernel) I, and the shifted-argument form

    sigma_g(eta) = gamma_g(-eta / sqrt(2))

is carried as a second evaluation route.  For m >= 2 the gamma matrices of
two symbols generally fail to commute, which is what distinguishes the
polyanalytic calculus from the classical m = 1 (scalar) one.

Quadrature: substituting t = (xi + 2v)/sqrt(2) turns every smooth axis into
a textbook Gauss-Hermite integral.  The sign and box symbol kinds jump at
axis-aligned breakpoints, so those axes use composite Gauss-Legendre panels
split exactly at the jumps instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .kernels import _rpoint
from .multiindex import IndexTable
from .orthopoly import hermite_fn_table
from .quadrature import default_order, gauss_hermite_1d, legendre_panels

# Gauss-Hermite tails are cut where e^{-t^2} has decayed to ~1e-35; the
# Legendre panels for discontinuous axes cover the matching v-interval.
T_CUT = 9.0

KINDS = (
    "constant",
    "polynomial",
    "gaussian-modulated-polynomial",
    "sign-of-coordinate",
    "box-indicator",
)


@dataclass(frozen=True)
class VerticalSymbol:
    """Multiplier g(v) on R^n from the closed family the calculus supports.

    Build through the constructors (:func:`constant`, :func:`polynomial`,
    :func:`gaussian_poly`, :func:`sign`, :func:`box`); ``terms`` holds
    (coefficient, exponent-tuple) pairs for the polynomial kinds.
    """

    n: int
    kind: str
    terms: tuple[tuple[complex, tuple[int, ...]], ...] = ()
    gauss_center: tuple[float, ...] = ()
    gauss_halfwidth: float = 1.0
    axis: int = 0
    lo: tuple[float, ...] = ()
    hi: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown symbol kind {self.kind!r}; expected one of {KINDS}")
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")

    # -- evaluation --------------------------------------------------------

    def __call__(self, v) -> np.ndarray:
        v = _rpoint(v, self.n)
        if self.kind == "constant":
            return np.full(v.shape[:-1], self.terms[0][0])
        if self.kind == "polynomial":
            return self._poly(v)
        if self.kind == "gaussian-modulated-polynomial":
            c = np.asarray(self.gauss_center, dtype=float)
            h = self.gauss_halfwidth
            envelope = np.exp(-np.sum((v - c) ** 2, axis=-1) / (2 * h * h))
            return self._poly(v) * envelope
        if self.kind == "sign-of-coordinate":
            return np.sign(v[..., self.axis]).astype(float)
        lo = np.asarray(self.lo, dtype=float)
        hi = np.asarray(self.hi, dtype=float)
        inside = np.all((v >= lo) & (v <= hi), axis=-1)
        return inside.astype(float)

    def _poly(self, v: np.ndarray) -> np.ndarray:
        total = np.zeros(v.shape[:-1], dtype=complex)
        for coeff, exps in self.terms:
            term = np.full(v.shape[:-1], coeff, dtype=complex)
            for r, e in enumerate(exps):
                if e:
                    term = term * v[..., r] ** e
            total = total + term
        if np.all(np.isreal([c for c, _ in self.terms])):
            return total.real
        return total

    # -- structure queries used by the quadrature assembly ------------------

    def breakpoints_on_axis(self, axis: int) -> tuple[float, ...]:
        """v-values where g may jump along the given axis (empty if smooth)."""
        if self.kind == "sign-of-coordinate":
            return (0.0,) if axis == self.axis else ()
        if self.kind == "box-indicator":
            return (self.lo[axis], self.hi[axis])
        return ()

    @property
    def is_real(self) -> bool:
        if self.kind in ("sign-of-coordinate", "box-indicator"):
            return True
        return all(complex(c).imag == 0 for c, _ in self.terms)

    def sup_bound(self) -> float | None:
        """Supremum of |g| when available; None for unbounded kinds.

        Exact for constant/sign/box.  The Gaussian-modulated kind is bounded
        but has no closed-form sup, so a dense scan over the envelope's
        effective support is used (adequate for test comparisons, not a
        certified bound).
        """
        if self.kind == "constant":
            return abs(self.terms[0][0])
        if self.kind in ("sign-of-coordinate", "box-indicator"):
            return 1.0
        if self.kind == "polynomial":
            if all(sum(e) == 0 for _, e in self.terms):
                return abs(sum(c for c, _ in self.terms))
            return None
        c = np.asarray(self.gauss_center, dtype=float)
        h = self.gauss_halfwidth
        axes = [np.linspace(ci - 10 * h, ci + 10 * h, 201) for ci in c]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
        return float(np.max(np.abs(self(mesh))))

    def conjugate(self) -> "VerticalSymbol":
        if self.kind in ("sign-of-coordinate", "box-indicator"):
            return self
        terms = tuple((complex(c).conjugate(), e) for c, e in self.terms)
        return VerticalSymbol(self.n, self.kind, terms, self.gauss_center,
                              self.gauss_halfwidth, self.axis, self.lo, self.hi)


def constant(c, n: int = 1) -> VerticalSymbol:
    return VerticalSymbol(n, "constant", ((complex(c), (0,) * n),))


def polynomial(terms, n: int = 1) -> VerticalSymbol:
    """Polynomial symbol; ``terms`` is [(coeff, exponents)] or, for n=1, a
    flat coefficient list in ascending degree."""
    norm = _normalize_terms(terms, n)
    return VerticalSymbol(n, "polynomial", norm)


def gaussian_poly(terms, center=0.0, halfwidth: float = 1.0, n: int = 1) -> VerticalSymbol:
    """Polynomial times exp(-|v - center|^2 / (2 halfwidth^2))."""
    if not halfwidth > 0:
        raise ValueError(f"halfwidth must be positive, got {halfwidth}")
    c = tuple(np.broadcast_to(np.asarray(center, dtype=float), (n,)).tolist())
    return VerticalSymbol(n, "gaussian-modulated-polynomial",
                          _normalize_terms(terms, n), c, float(halfwidth))


def sign(axis: int = 0, n: int = 1) -> VerticalSymbol:
    if not 0 <= axis < n:
        raise ValueError(f"axis {axis} outside 0..{n - 1}")
    return VerticalSymbol(n, "sign-of-coordinate", axis=axis)


def box(lo, hi, n: int = 1) -> VerticalSymbol:
    lo = tuple(np.broadcast_to(np.asarray(lo, dtype=float), (n,)).tolist())
    hi = tuple(np.broadcast_to(np.asarray(hi, dtype=float), (n,)).tolist())
    if any(a >= b for a, b in zip(lo, hi)):
        raise ValueError(f"box must have lo < hi on every axis, got lo={lo}, hi={hi}")
    return VerticalSymbol(n, "box-indicator", lo=lo, hi=hi)


def _normalize_terms(terms, n: int):
    out = []
    seq = list(terms)
    if seq and np.isscalar(seq[0]):
        if n != 1:
            raise ValueError("flat coefficient lists are only defined for n = 1")
        seq = [(c, (e,)) for e, c in enumerate(seq)]
    for coeff, exps in seq:
        exps = tuple(int(e) for e in np.atleast_1d(exps))
        if len(exps) != n or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent tuple {exps} for n={n}")
        out.append((complex(coeff), exps))
    if not out:
        out = [(0j, (0,) * n)]
    return tuple(out)


@dataclass(frozen=True)
class SymbolMatrix:
    """One fiber's d x d matrix at frequency xi."""

    xi: np.ndarray
    entries: np.ndarray

    @property
    def d(self) -> int:
        return self.entries.shape[0]


def _build_v_rule(xi_r: float, breakpoints: Sequence[float], order: int):
    lo = (-math.sqrt(2.0) * T_CUT - xi_r) / 2
    hi = (math.sqrt(2.0) * T_CUT - xi_r) / 2
    if breakpoints:
        cuts = sorted({lo, hi, *(b for b in breakpoints if lo < b < hi)})
        return legendre_panels(cuts, order)
    t, w = gauss_hermite_1d(order)
    v = (math.sqrt(2.0) * t - xi_r) / 2
    weights = w * np.exp(t * t) / math.sqrt(2.0)
    return v, weights


def _tensor_rule(per_axis: list[tuple[np.ndarray, np.ndarray]]):
    n = len(per_axis)
    sizes = [len(nodes) for nodes, _ in per_axis]
    total = int(np.prod(sizes))
    nodes = np.empty((total, n))
    weights = np.ones(total)
    for axis, (vn, vw) in enumerate(per_axis):
        inner = int(np.prod(sizes[axis + 1 :])) if axis + 1 < n else 1
        outer = total // (sizes[axis] * inner)
        nodes[:, axis] = np.tile(np.repeat(vn, inner), outer)
        weights *= np.tile(np.repeat(vw, inner), outer)
    return nodes, weights


def _psi_product_matrix(table: IndexTable, t: np.ndarray) -> np.ndarray:
    """Matrix [prod_r psi_{phi(j)_r}(t_r)]_{node, j}."""
    psi = hermite_fn_table(table.m - 1, t)  # (m, N, n)
    cols = []
    for k in table:
        prod = psi[k[0], ..., 0]
        for r in range(1, table.n):
            prod = prod * psi[k[r], ..., r]
        cols.append(prod)
    return np.stack(cols, axis=-1)


def gamma_toeplitz(table: IndexTable, g: VerticalSymbol, xi,
                   order: int | None = None) -> SymbolMatrix:
    """Matrix symbol gamma_g(xi) of the vertical multiplier g.

    entries[r-1, s-1] = 2^{n/2} int g(v) P_r(v) P_s(v) dv with
    P_j(v) = prod_p psi_{phi(j)_p}((xi_p + 2 v_p)/sqrt(2)).  Assembled as a
    weighted Gram matrix over one tensor rule, so symmetry is structural.
    """
    if g.n != table.n:
        raise ValueError(f"symbol dimension {g.n} != table dimension {table.n}")
    xi = _rpoint(xi, table.n)
    if order is None:
        order = max(default_order(table.n), 48)
    per_axis = [_build_v_rule(float(xi[r]), g.breakpoints_on_axis(r), order)
                for r in range(table.n)]
    v, w = _tensor_rule(per_axis)
    t = (xi + 2 * v) / math.sqrt(2.0)
    P = _psi_product_matrix(table, t)  # (N, d)
    gv = np.asarray(g(v))
    weighted = (w * gv)[:, None] * P
    entries = 2 ** (table.n / 2) * (P.T @ weighted)
    if g.is_real:
        entries = entries.real.astype(complex)
    return SymbolMatrix(xi=xi, entries=entries)


def sigma_from_gamma(table: IndexTable, g: VerticalSymbol, eta,
                     order: int | None = None, route: str = "via-gamma") -> SymbolMatrix:
    """Shifted-argument symbol sigma_g(eta) = gamma_g(-eta / sqrt(2)).

    route="via-gamma" evaluates exactly that composition.  route="direct"
    computes the equivalent integral
    int g((t + eta/2)/sqrt(2)) prod psi_{phi(r)}(t) prod psi_{phi(s)}(t) dt
    from scratch; the two agree and back each other up.
    """
    eta = _rpoint(eta, table.n)
    if route == "via-gamma":
        inner = gamma_toeplitz(table, g, -eta / math.sqrt(2.0), order)
        return SymbolMatrix(xi=eta, entries=inner.entries)
    if route != "direct":
        raise ValueError(f"route must be 'via-gamma' or 'direct', got {route!r}")
    if g.n != table.n:
        raise ValueError(f"symbol dimension {g.n} != table dimension {table.n}")
    if order is None:
        order = max(default_order(table.n), 48)

    per_axis = []
    for r in range(table.n):
        # g's argument on this axis is (t + eta_r/2)/sqrt(2); jumps at
        # v = b pull back to t = sqrt(2) b - eta_r/2.
        brk_t = [math.sqrt(2.0) * b - eta[r] / 2 for b in g.breakpoints_on_axis(r)]
        if brk_t:
            cuts = sorted({-T_CUT, T_CUT, *(b for b in brk_t if -T_CUT < b < T_CUT)})
            per_axis.append(legendre_panels(cuts, order))
        else:
            t, w = gauss_hermite_1d(order)
            per_axis.append((t, w * np.exp(t * t)))
    t, w = _tensor_rule(per_axis)
    P = _psi_product_matrix(table, t)
    gv = np.asarray(g((t + eta / 2) / math.sqrt(2.0)))
    entries = P.T @ ((w * gv)[:, None] * P)
    if g.is_real:
        entries = entries.real.astype(complex)
    return SymbolMatrix(xi=eta, entries=entries)


def weyl_symbol(table: IndexTable, a, xi) -> SymbolMatrix:
    """Symbol of the horizontal translation by a: the character e^{-i<xi, a>} I_d."""
    a = _rpoint(a, table.n)
    xi = _rpoint(xi, table.n)
    phase = np.exp(-1j * float(xi @ a))
    return SymbolMatrix(xi=xi, entries=phase * np.eye(table.d, dtype=complex))


def convolution_symbol(table: IndexTable, h_hat: Callable, xi) -> SymbolMatrix:
    """Symbol of a horizontal convolution: scalar h_hat(xi) I_d.

    ``h_hat`` is the normalized Fourier transform
    (2 pi)^{-n/2} int h(x) e^{-i<x, xi>} dx of the convolution kernel.
    """
    xi = _rpoint(xi, table.n)
    value = complex(h_hat(xi))
    return SymbolMatrix(xi=xi, entries=value * np.eye(table.d, dtype=complex))


def symbol_compose(a: SymbolMatrix, b: SymbolMatrix) -> SymbolMatrix:
    """Pointwise (same xi) matrix product; operator composition on the fiber."""
    if a.entries.shape != b.entries.shape:
        raise ValueError(f"size mismatch {a.entries.shape} vs {b.entries.shape}")
    if not np.allclose(a.xi, b.xi, rtol=0, atol=1e-12):
        raise ValueError(f"frequency mismatch {a.xi} vs {b.xi}")
    return SymbolMatrix(xi=a.xi, entries=a.entries @ b.entries)


def symbol_adjoint(a: SymbolMatrix) -> SymbolMatrix:
    """Conjugate transpose; matches the symbol of the conjugate multiplier."""
    return SymbolMatrix(xi=a.xi, entries=a.entries.conj().T)
