"""Fiber decomposition of the flattened space under horizontal Fourier transform.

Taking a Fourier transform in the horizontal variable turns the flattened
space into a direct integral of d-dimensional fibers, d = C(n+m-1, n).  The
fiber over xi is spanned by the shifted Hermite products

    q_{k, xi}(v) = 2^{n/2} pi^{n/4} prod_r psi_{k_r}((xi_r + 2 v_r) / sqrt(2)),

orthonormal in L^2(R^n, (2 pi)^{-n/2} dv) for |k| <= m - 1.  The horizontal
Fourier transform of the kernel section at (0, y) collapses onto the fiber:

    (2 pi)^{-n/2} int K^H_{0,y}(u, v) e^{-i<u, xi>} du = sum_k q_{k,xi}(y) q_{k,xi}(v),

and the decomposition operator R (Fourier transform followed by fiberwise
coefficients) is what carries Toeplitz-type operators to matrix symbols.
Closed-form images of kernel sections are provided next to the quadrature
routes so each can check the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .kernels import KernelSpec, kernel_H, _cpoint, _rpoint
from .multiindex import IndexTable, build_index_table
from .orthopoly import hermite_fn_table
from .quadrature import default_order, tensor_grid
from .transforms import FieldFunction, FLAT, FOCK, _require


def q_eval(table: IndexTable, xi, k, v):
    """Fiber basis function q_{k, xi}(v); broadcasts over v of shape (..., n)."""
    k = tuple(int(c) for c in np.atleast_1d(k))
    table.position(k)  # membership check
    n = table.n
    xi = _rpoint(xi, n)
    v = _rpoint(v, n)
    t = (xi + 2 * v) / math.sqrt(2.0)
    out = np.full(t.shape[:-1], 2 ** (n / 2) * math.pi ** (n / 4))
    psi = hermite_fn_table(table.m - 1, t)
    for r, kr in enumerate(k):
        out = out * psi[kr, ..., r]
    return out


def q_matrix(table: IndexTable, xi, v) -> np.ndarray:
    """All fiber basis values q_{phi(j), xi}(v), stacked on a last axis of size d."""
    n = table.n
    xi = _rpoint(xi, n)
    v = _rpoint(v, n)
    t = (xi + 2 * v) / math.sqrt(2.0)
    psi = hermite_fn_table(table.m - 1, t)  # (m, ..., n)
    cols = []
    front = 2 ** (n / 2) * math.pi ** (n / 4)
    for k in table:
        prod = psi[k[0], ..., 0]
        for r in range(1, n):
            prod = prod * psi[k[r], ..., r]
        cols.append(front * prod)
    return np.stack(cols, axis=-1)


def L_closed(table: IndexTable, xi, y, v):
    """Transformed kernel L_{xi, y}(v) = sum over |k| <= m-1 of q_{k,xi}(y) q_{k,xi}(v).

    ``y`` and ``v`` broadcast against each other over leading axes.
    """
    qy = q_matrix(table, xi, y)
    qv = q_matrix(table, xi, v)
    return np.sum(qy * qv, axis=-1)


def L_via_fourier(table: IndexTable, xi, y, v, order: int | None = None):
    """Horizontal Fourier transform of the kernel section, by quadrature.

    (2 pi)^{-n/2} integral over u in R^n of K^H_{0,y}(u, v) e^{-i<u, xi>} du,
    computed on a tensor rule centered at the kernel's Gaussian peak u = 0.
    Independent route against :func:`L_closed`.
    """
    n, m = table.n, table.m
    xi = _rpoint(xi, n)
    y = _rpoint(y, n)
    v = _rpoint(v, n)
    if order is None:
        order = max(default_order(n), 48)
    grid = tensor_grid(n, order, center=0.0, scale=math.sqrt(2.0))
    u = grid.nodes
    vals = kernel_H(n, m, np.zeros(n), y, u, v) * np.exp(-1j * u @ xi)
    return complex(np.sum(grid.weights * vals)) / (2 * math.pi) ** (n / 2)


@dataclass(frozen=True)
class FiberVector:
    """Coefficient vector of one fiber, ordered by the index table positions."""

    xi: np.ndarray
    components: np.ndarray

    @property
    def d(self) -> int:
        return len(self.components)


def fiber_project(
    table: IndexTable,
    xi,
    g_slice: Callable,
    order: int | None = None,
    center=None,
    scale=None,
) -> FiberVector:
    """Coefficients <g(xi, .), q_{phi(j), xi}> of one vertical slice.

    ``g_slice`` maps v arrays of shape (..., n) to values.  The quadrature
    grid defaults to the placement dictated by the q factor itself (Gaussian
    centered at -xi/2, unit width); slices with additional decay elsewhere
    converge anyway, but a caller knowing the product's true peak can pass
    ``center``/``scale``.
    """
    n = table.n
    xi = _rpoint(xi, n)
    if order is None:
        order = max(default_order(n), 48)
    if center is None:
        center = -xi / 2
    if scale is None:
        scale = 1.0
    grid = tensor_grid(n, order, center=center, scale=scale)
    vals = np.asarray(g_slice(grid.nodes))
    q = q_matrix(table, xi, grid.nodes)  # (N, d)
    comps = q.T @ (grid.weights * vals) / (2 * math.pi) ** (n / 2)
    return FiberVector(xi=xi, components=comps)


def fiber_reconstruct(table: IndexTable, fiber: FiberVector) -> Callable:
    """Vertical slice v -> sum_j components_j q_{phi(j), xi}(v).

    Adjoint of :func:`fiber_project` on the fiber span; applying both in
    sequence reproduces a slice exactly iff the slice lies in the span.
    """

    def slice_fn(v):
        q = q_matrix(table, fiber.xi, v)
        return q @ fiber.components

    return slice_fn


def R_F_kernel_image(spec: KernelSpec, y, xi) -> FiberVector:
    """Closed-form fiber image of the Fock kernel section at z = i y.

    components_j = 2^{-n/2} e^{alpha |y|^2 / 2} q_{phi(j), xi}(sqrt(alpha) y).
    Its squared norm integrated over xi against (2 pi)^{-n/2} d xi equals
    C(n+m-1, n) e^{alpha |y|^2}.
    """
    table = build_index_table(spec.n, spec.m)
    y = _rpoint(y, spec.n)
    xi = _rpoint(xi, spec.n)
    front = 2 ** (-spec.n / 2) * math.exp(spec.alpha * float(np.sum(y * y)) / 2)
    comps = front * q_matrix(table, xi, math.sqrt(spec.alpha) * y)
    return FiberVector(xi=xi, components=comps.astype(complex))


def R_true_poly_image(spec: KernelSpec, beta, y, xi) -> FiberVector:
    """Closed-form fiber image of the true-polyanalytic kernel section at z = i y.

    For type beta = phi(j0) + 1 only component j0 survives:
    2^{-n/2} e^{alpha |y|^2 / 2} q_{phi(j0), xi}(sqrt(alpha) y).
    """
    table = build_index_table(spec.n, spec.m)
    beta = tuple(int(b) for b in np.atleast_1d(beta))
    k = tuple(b - 1 for b in beta)
    j0 = table.position(k)
    y = _rpoint(y, spec.n)
    xi = _rpoint(xi, spec.n)
    comps = np.zeros(table.d, dtype=complex)
    front = 2 ** (-spec.n / 2) * math.exp(spec.alpha * float(np.sum(y * y)) / 2)
    comps[j0 - 1] = front * q_eval(table, xi, k, math.sqrt(spec.alpha) * y)
    return FiberVector(xi=xi, components=comps)


def _uv_grid(n: int, xi: np.ndarray, order: int | None,
             u_center, v_center, u_scale, v_scale):
    if order is None:
        order = default_order(2 * n)
    u_center = np.zeros(n) if u_center is None else _rpoint(u_center, n)
    v_center = -xi / 2 if v_center is None else _rpoint(v_center, n)
    center = np.concatenate((u_center, np.broadcast_to(v_center, (n,))))
    scale = np.concatenate((np.full(n, math.sqrt(2.0) if u_scale is None else u_scale),
                            np.full(n, 1.0 if v_scale is None else v_scale)))
    return tensor_grid(2 * n, order, center=center, scale=scale)


def R_H_apply(
    table: IndexTable,
    g: FieldFunction,
    xi,
    order: int | None = None,
    u_center=None,
    v_center=None,
    u_scale=None,
    v_scale=None,
) -> FiberVector:
    """Decomposition operator on the flattened side, by 2n-dim quadrature.

    components_j = (2 pi)^{-n} iint g(u, v) e^{-i<u, xi>} q_{phi(j), xi}(v) du dv.
    Supported inputs are kernel-derived (Gaussian envelopes); the default
    grid assumes decay e^{-|u|^2/2} in u centered at 0 and the q-factor
    Gaussian in v, both overridable.
    """
    _require(g, FLAT)
    n = table.n
    xi = _rpoint(xi, n)
    grid = _uv_grid(n, xi, order, u_center, v_center, u_scale, v_scale)
    u = grid.nodes[:, :n]
    v = grid.nodes[:, n:]
    vals = np.asarray(g(u, v)) * np.exp(-1j * u @ xi)
    q = q_matrix(table, xi, v)  # (N, d)
    comps = q.T @ (grid.weights * vals) / (2 * math.pi) ** n
    return FiberVector(xi=xi, components=comps)


def R_F_apply(
    spec: KernelSpec,
    f: FieldFunction,
    xi,
    order: int | None = None,
    u_center=None,
    v_center=None,
    u_scale=None,
    v_scale=None,
) -> FiberVector:
    """Decomposition operator on the Fock side, by its explicit 2n-dim integral.

    components_j = pi^{-3n/4} iint f((u + i v)/sqrt(alpha))
        e^{-|u|^2/2 - |v|^2/2 - i<u, v> - i<u, xi>}
        prod_r psi_{phi(j)_r}((xi_r + 2 v_r)/sqrt(2)) du dv.

    Written out directly rather than composed from :func:`flatten` and
    :func:`R_H_apply`, so the two routes stay independent checks of the
    same operator.
    """
    _require(f, FOCK)
    n = spec.n
    table = build_index_table(spec.n, spec.m)
    xi = _rpoint(xi, n)
    grid = _uv_grid(n, xi, order, u_center, v_center, u_scale, v_scale)
    u = grid.nodes[:, :n]
    v = grid.nodes[:, n:]
    phase = np.exp(-np.sum(u * u, axis=-1) / 2 - np.sum(v * v, axis=-1) / 2
                   - 1j * np.sum(u * v, axis=-1) - 1j * (u @ xi))
    vals = np.asarray(f((u + 1j * v) / math.sqrt(spec.alpha))) * phase
    t = (xi + 2 * v) / math.sqrt(2.0)
    psi = hermite_fn_table(table.m - 1, t)
    cols = []
    for k in table:
        prod = psi[k[0], ..., 0]
        for r in range(1, n):
            prod = prod * psi[k[r], ..., r]
        cols.append(prod)
    big_psi = np.stack(cols, axis=-1)  # (N, d)
    comps = big_psi.T @ (grid.weights * vals) * math.pi ** (-3 * n / 4)
    return FiberVector(xi=xi, components=comps)


def default_xi_grid(count: int = 64, lo: float = -8.0, hi: float = 8.0) -> np.ndarray:
    """Uniform frequency grid used when a sweep does not specify one."""
    if count < 1:
        raise ValueError("count must be at least 1")
    return np.linspace(lo, hi, count)


def fiber_sweep(apply_at, xi_values) -> np.ndarray:
    """Evaluate a fixed-frequency fiber map over a grid of frequencies.

    apply_at: callable xi -> FiberVector (e.g. a partial of R_F_apply or
    R_F_kernel_image).  xi_values: iterable of frequency points, scalars in
    one variable or length-n vectors.  Returns a (len(xi_values), d) array;
    the direct integral itself is only ever represented as sampled data.
    """
    rows = [np.asarray(apply_at(xi).components) for xi in xi_values]
    return np.stack(rows, axis=0)
