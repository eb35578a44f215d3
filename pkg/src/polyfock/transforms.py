"""Unitary maps between the Fock picture and the flattened picture.

The flattening map sends a function on C^n to one on R^n x R^n,

    (U f)(x, y) = 2^{n/2} e^{-|x|^2/2 - |y|^2/2 - i<x,y>} f((x + i y) / sqrt(alpha)),

and is unitary from the Fock space onto the flattened space; its inverse
multiplies back and rescales.  Under U the Fock-side Weyl shifts turn into
plain horizontal translations:

    U (rho_F(a) f) = translate by sqrt(alpha) a in x, then U f,

which is what makes the translation-invariant operator calculus on the
flattened side available to Fock-side operators.

Functions are carried around as thin evaluator wrappers tagged with the
picture they live in.  Fock-side callables take one complex (..., n) array;
flattened-side callables take the two real (..., n) arrays (x, y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .kernels import KernelSpec, _cpoint, _rpoint
from .quadrature import tensor_grid

FOCK = "fock"
FLAT = "flat"


@dataclass(frozen=True)
class FieldFunction:
    """Evaluator plus the tag of the picture its arguments live in."""

    evaluator: Callable
    side: str

    def __post_init__(self) -> None:
        if self.side not in (FOCK, FLAT):
            raise ValueError(f"side must be {FOCK!r} or {FLAT!r}, got {self.side!r}")

    def __call__(self, *args):
        return self.evaluator(*args)


def fock_function(evaluator: Callable) -> FieldFunction:
    return FieldFunction(evaluator, FOCK)


def flat_function(evaluator: Callable) -> FieldFunction:
    return FieldFunction(evaluator, FLAT)


def _require(f: FieldFunction, side: str) -> None:
    if not isinstance(f, FieldFunction):
        raise TypeError("expected a FieldFunction; wrap plain callables with "
                        "fock_function()/flat_function()")
    if f.side != side:
        raise ValueError(f"operator needs a {side}-side function, got {f.side}-side")


def flatten(spec: KernelSpec, f: FieldFunction) -> FieldFunction:
    """Unitary map from the Fock picture to the flattened picture."""
    _require(f, FOCK)
    n, alpha = spec.n, spec.alpha
    root = math.sqrt(alpha)

    def g(x, y):
        x = _rpoint(x, n)
        y = _rpoint(y, n)
        weight = np.exp(-np.sum(x * x, axis=-1) / 2
                        - np.sum(y * y, axis=-1) / 2
                        - 1j * np.sum(x * y, axis=-1))
        return 2 ** (n / 2) * weight * f((x + 1j * y) / root)

    return flat_function(g)


def unflatten(spec: KernelSpec, g: FieldFunction) -> FieldFunction:
    """Inverse of :func:`flatten`."""
    _require(g, FLAT)
    n, alpha = spec.n, spec.alpha
    root = math.sqrt(alpha)

    def f(z):
        z = _cpoint(z, n)
        u = np.real(z)
        v = np.imag(z)
        weight = np.exp(alpha * (np.sum(u * u, axis=-1) + np.sum(v * v, axis=-1)) / 2
                        + 1j * alpha * np.sum(u * v, axis=-1))
        return 2 ** (-n / 2) * weight * g(root * u, root * v)

    return fock_function(f)


def weyl_F(spec: KernelSpec, a, f: FieldFunction) -> FieldFunction:
    """Fock-side Weyl shift by the point a in C^n.

    (rho_F(a) f)(z) = f(z - a) e^{alpha <z, a> - alpha |a|^2 / 2}.  Unitary
    on the Fock space; kernel sections shift according to
    rho_F(a) K_z = e^{-alpha <a, z> - alpha |a|^2/2} K_{z + a}.
    """
    _require(f, FOCK)
    n, alpha = spec.n, spec.alpha
    a = _cpoint(a, n)
    norm2 = float(np.sum(np.abs(a) ** 2))
    a_bar = np.conj(a)

    def shifted(z):
        z = _cpoint(z, n)
        phase = np.exp(alpha * np.sum(z * a_bar, axis=-1) - alpha * norm2 / 2)
        return f(z - a) * phase

    return fock_function(shifted)


def translate_H(a, g: FieldFunction) -> FieldFunction:
    """Horizontal translation (x, y) -> (x - a, y) on the flattened side."""
    _require(g, FLAT)
    a = np.asarray(a, dtype=float)

    def shifted(x, y):
        return g(np.asarray(x, dtype=float) - a, y)

    return flat_function(shifted)


def check_intertwining(spec: KernelSpec, a, f: FieldFunction, x, y) -> float:
    """Max deviation of U rho_F(a) f from (translate by sqrt(alpha) a) U f.

    Evaluated pointwise on the sample arrays (x, y); exact up to rounding,
    so values around 1e-14 are what a correct pair of routes produces.
    """
    lhs = flatten(spec, weyl_F(spec, a, f))
    rhs = translate_H(math.sqrt(spec.alpha) * np.asarray(a, dtype=float),
                      flatten(spec, f))
    dev = np.abs(lhs(x, y) - rhs(x, y))
    return float(np.max(dev))


def to_gaussian_picture(spec: KernelSpec, sigma: float, f: FieldFunction) -> FieldFunction:
    """Multiply by exp(-sigma^2 sum z_r^2): Fock space onto the Gaussian-RBF space.

    Only defined when alpha = 2 sigma^2; any other combination is a
    different space and is rejected.
    """
    _require(f, FOCK)
    _check_sigma(spec, sigma)
    n = spec.n

    def g(z):
        z = _cpoint(z, n)
        return np.exp(-sigma**2 * np.sum(z * z, axis=-1)) * f(z)

    return fock_function(g)


def from_gaussian_picture(spec: KernelSpec, sigma: float, g: FieldFunction) -> FieldFunction:
    """Inverse of :func:`to_gaussian_picture` (multiply by exp(+sigma^2 sum z_r^2))."""
    _require(g, FOCK)
    _check_sigma(spec, sigma)
    n = spec.n

    def f(z):
        z = _cpoint(z, n)
        return np.exp(sigma**2 * np.sum(z * z, axis=-1)) * g(z)

    return fock_function(f)


def _check_sigma(spec: KernelSpec, sigma: float) -> None:
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if not math.isclose(spec.alpha, 2 * sigma**2, rel_tol=1e-12):
        raise ValueError(
            f"Gaussian picture requires alpha = 2 sigma^2; got alpha={spec.alpha}, "
            f"2 sigma^2={2 * sigma**2}"
        )


def fock_norm(spec: KernelSpec, f: FieldFunction, center=None, order: int | None = None) -> float:
    """Weighted L^2 norm of a Fock-side function by tensor quadrature.

    Computes ((alpha/pi)^n integral |f(z)|^2 e^{-alpha |z|^2} dA(z))^{1/2}
    over C^n = R^{2n}.  ``center`` (a complex point) places the grid; for a
    kernel section K_w pass center = w, where the weighted modulus peaks.
    """
    _require(f, FOCK)
    n, alpha = spec.n, spec.alpha
    c = np.zeros(2 * n) if center is None else np.concatenate(
        (np.real(_cpoint(center, n)), np.imag(_cpoint(center, n))))
    grid = tensor_grid(2 * n, order, center=c, scale=math.sqrt(2 / alpha))

    u = grid.nodes[:, :n]
    v = grid.nodes[:, n:]
    z = u + 1j * v
    vals = np.abs(f(z)) ** 2 * np.exp(-alpha * np.sum(u * u + v * v, axis=-1))
    total = float(np.sum(grid.weights * vals)) * (alpha / math.pi) ** n
    return math.sqrt(max(total, 0.0))


def flat_norm(n: int, g: FieldFunction, center=None, order: int | None = None) -> float:
    """L^2 norm of a flattened-side function against (2 pi)^{-n} dx dy.

    ``center`` is a real 2n-vector (x-part then y-part) placing the grid.
    """
    _require(g, FLAT)
    c = np.zeros(2 * n) if center is None else np.asarray(center, dtype=float)
    grid = tensor_grid(2 * n, order, center=c, scale=math.sqrt(2.0))
    x = grid.nodes[:, :n]
    y = grid.nodes[:, n:]
    vals = np.abs(g(x, y)) ** 2
    total = float(np.sum(grid.weights * vals)) / (2 * math.pi) ** n
    return math.sqrt(max(total, 0.0))
