"""Horizontal Fourier fibers: q functions, transformed kernel, R operators.

The closed forms are checked against quadrature routes that share no code
with them, and against each other on kernel sections.
"""

import math
from functools import partial

import numpy as np
import pytest
from numpy.testing import assert_allclose

from polyfock.kernels import KernelSpec, kernel_F
from polyfock.multiindex import build_index_table
from polyfock.quadrature import tensor_grid
from polyfock.spectral import (
    FiberVector,
    L_closed,
    L_via_fourier,
    R_F_apply,
    R_F_kernel_image,
    R_H_apply,
    R_true_poly_image,
    default_xi_grid,
    fiber_project,
    fiber_reconstruct,
    fiber_sweep,
    q_eval,
    q_matrix,
)
from polyfock.transforms import flatten, fock_function


def q_gram(table, xi, order=48):
    """Gram matrix of the fiber basis in L^2(R^n, (2 pi)^{-n/2} dv)."""
    n = table.n
    grid = tensor_grid(n, order, center=-np.asarray(xi) / 2, scale=1.0)
    mat = q_matrix(table, xi, grid.nodes)
    weighted = grid.weights[:, None] * mat
    return mat.T @ weighted / (2 * math.pi) ** (n / 2)


def test_q_closed_form_k0():
    xi = np.array([0.8])
    v = np.linspace(-2, 2, 9)[:, None]
    got = q_eval(build_index_table(1, 1), xi, (0,), v)
    expected = math.sqrt(2) * np.exp(-((0.8 + 2 * v[:, 0]) ** 2) / 4)
    assert_allclose(got, expected, rtol=1e-13)


def test_q_membership_enforced():
    table = build_index_table(1, 2)
    with pytest.raises(KeyError):
        q_eval(table, np.zeros(1), (5,), np.zeros((1, 1)))


def test_q_shift_covariance():
    table = build_index_table(2, 3)
    rng = np.random.default_rng(31)
    xi = rng.uniform(-2, 2, 2)
    v = rng.uniform(-2, 2, (20, 2))
    for k in table:
        lhs = q_eval(table, xi, k, v)
        rhs = q_eval(table, np.zeros(2), k, v + xi / 2)
        assert_allclose(lhs, rhs, rtol=1e-13)


@pytest.mark.parametrize("n,m", [(1, 4), (2, 3)])
def test_fiber_orthonormality(n, m):
    table = build_index_table(n, m)
    rng = np.random.default_rng(32)
    for _ in range(5):
        xi = rng.uniform(-3, 3, n)
        gram = q_gram(table, xi)
        assert_allclose(gram, np.eye(table.d), atol=1e-10)


def test_L_closed_matches_fourier_route():
    for n, m in [(1, 1), (1, 3), (2, 2)]:
        table = build_index_table(n, m)
        rng = np.random.default_rng(33 + n + m)
        for _ in range(5):
            xi = rng.uniform(-1.5, 1.5, n)
            y = rng.uniform(-1, 1, n)
            v = rng.uniform(-1, 1, n)
            closed = L_closed(table, xi, y, v)
            quad = L_via_fourier(table, xi, y, v)
            assert abs(quad - closed) < 1e-8 * max(1.0, abs(closed))


def test_L_single_term_m1():
    table = build_index_table(1, 1)
    xi, y, v = np.array([0.4]), np.array([0.7]), np.array([-0.2])
    got = L_closed(table, xi, y, v)
    expected = q_eval(table, xi, (0,), y[None, :]) * q_eval(table, xi, (0,), v[None, :])
    assert got == pytest.approx(float(expected[0]))


def test_L_diagonal_nonnegative():
    table = build_index_table(2, 3)
    rng = np.random.default_rng(34)
    for _ in range(10):
        xi = rng.uniform(-3, 3, 2)
        y = rng.uniform(-2, 2, 2)
        assert L_closed(table, xi, y, y) >= 0


def test_fiber_project_recovers_unit_vectors():
    table = build_index_table(1, 3)
    xi = np.array([0.6])
    for j in range(1, table.d + 1):
        k = table.phi(j)
        comps = fiber_project(table, xi, lambda v, k=k: q_eval(table, xi, k, v))
        expected = np.zeros(table.d)
        expected[j - 1] = 1.0
        assert_allclose(comps.components, expected, atol=1e-10)


def test_fiber_project_of_L_slice():
    # projecting L_{xi, y} gives the vector [q_{phi(j), xi}(y)]_j
    table = build_index_table(1, 2)
    xi = np.array([-0.3])
    y = np.array([0.9])
    comps = fiber_project(table, xi, lambda v: L_closed(table, xi, y, v))
    expected = q_matrix(table, xi, y[None, :])[0]
    assert_allclose(comps.components, expected, rtol=1e-9, atol=1e-12)


def test_fiber_parseval_inequality_and_span_equality():
    table = build_index_table(1, 2)
    xi = np.array([0.2])
    n = table.n

    def norm2(g_slice):
        grid = tensor_grid(1, 48, center=-xi / 2, scale=1.0)
        vals = np.asarray(g_slice(grid.nodes))
        return float(np.sum(grid.weights * np.abs(vals) ** 2)) / (2 * math.pi) ** (n / 2)

    # inside the span: equality
    def in_span(v):
        return (0.6 * q_eval(table, xi, (0,), v)
                - 1.1 * q_eval(table, xi, (1,), v))

    comps = fiber_project(table, xi, in_span).components
    assert np.sum(np.abs(comps) ** 2) == pytest.approx(norm2(in_span), rel=1e-8)

    # outside the span (Hermite index m): strict inequality, and the
    # reconstruction misses by a visible residual
    table_big = build_index_table(1, 3)

    def outside(v):
        return q_eval(table_big, xi, (2,), v)

    comps_out = fiber_project(table, xi, outside).components
    assert np.sum(np.abs(comps_out) ** 2) < norm2(outside) - 0.5
    rec = fiber_reconstruct(table, FiberVector(xi=xi, components=comps_out))
    v = np.array([[0.7]])
    assert abs(rec(v)[0] - outside(v)[0]) > 0.1


def test_R_F_kernel_image_closed_form():
    alpha = 1.6
    spec = KernelSpec(2, 2, alpha)
    table = build_index_table(2, 2)
    rng = np.random.default_rng(35)
    y = rng.uniform(-1, 1, 2)
    xi = rng.uniform(-2, 2, 2)
    fib = R_F_kernel_image(spec, y, xi)
    expected = (2 ** (-1.0)
                * math.exp(alpha * float(np.sum(y * y)) / 2)
                * q_matrix(table, xi, math.sqrt(alpha) * y[None, :])[0])
    assert_allclose(fib.components, expected, rtol=1e-13)


def test_R_two_routes_on_kernel_sections():
    """R_F directly vs flatten-then-R_H, on kernel sections at iy."""
    alpha = 1.0
    for n, m in [(1, 2), (1, 3), (2, 2)]:
        spec = KernelSpec(n, m, alpha)
        table = build_index_table(n, m)
        rng = np.random.default_rng(36 + n + m)
        y = rng.uniform(-0.8, 0.8, n)
        xi = rng.uniform(-1.5, 1.5, n)
        f = fock_function(lambda z: kernel_F(spec, 1j * y, z))
        direct = R_F_apply(spec, f, xi)
        via_flat = R_H_apply(table, flatten(spec, f), xi)
        closed = R_F_kernel_image(spec, y, xi)
        assert_allclose(direct.components, closed.components, atol=1e-7)
        assert_allclose(via_flat.components, closed.components, atol=1e-7)
        assert_allclose(direct.components, via_flat.components, atol=1e-7)


def test_R_F_zero_input():
    spec = KernelSpec(1, 2)
    f = fock_function(lambda z: np.zeros(z.shape[:-1], dtype=complex))
    fib = R_F_apply(spec, f, np.array([0.5]))
    assert_allclose(fib.components, 0.0, atol=1e-14)


def test_true_poly_image_single_component():
    spec = KernelSpec(2, 3, 1.2)
    table = build_index_table(2, 3)
    rng = np.random.default_rng(37)
    y = rng.uniform(-1, 1, 2)
    xi = rng.uniform(-2, 2, 2)
    full = R_F_kernel_image(spec, y, xi)
    for j0 in (1, 4, 6):
        beta = tuple(int(e) + 1 for e in table.phi(j0))
        fib = R_true_poly_image(spec, beta, y, xi)
        nonzero = np.nonzero(np.abs(fib.components) > 1e-14)[0]
        assert list(nonzero) == [j0 - 1]
        assert fib.components[j0 - 1] == pytest.approx(full.components[j0 - 1])


def test_kernel_image_norm_over_frequencies():
    """The squared L^2(dmu) norm over xi of the kernel image equals
    d e^{alpha |y|^2}, matching the norm of the kernel section."""
    alpha = 1.3
    spec = KernelSpec(1, 2, alpha)
    y = np.array([0.6])
    grid = tensor_grid(1, 48, center=0.0, scale=math.sqrt(2.0))
    total = 0.0
    for xi_pt, w in zip(grid.nodes, grid.weights):
        comps = R_F_kernel_image(spec, y, xi_pt).components
        total += w * float(np.sum(np.abs(comps) ** 2))
    total /= math.sqrt(2 * math.pi)
    expected = spec.d * math.exp(alpha * float(y[0]) ** 2)
    assert total == pytest.approx(expected, rel=1e-7)


def test_convolution_input_image():
    """Bochner-type input f = int h(x) e^{-|x|^2/2 + i<x,y>} K_{(x+iy)/sqrt(a)} dmu(x)
    maps to 2^{-n/2} e^{|y|^2/2} h_hat(xi) [q_j(y)]_j, with no alpha in sight."""
    alpha = 1.7
    spec = KernelSpec(1, 2, alpha)
    table = build_index_table(1, 2)
    y = np.array([0.5])
    root = math.sqrt(alpha)

    hgrid = tensor_grid(1, 48, center=0.0, scale=math.sqrt(2.0))
    xs = hgrid.nodes[:, 0]
    hw = hgrid.weights * np.exp(-xs**2 / 2) * np.exp(-xs**2 / 2 + 1j * xs * y[0])
    # first factor is h(x) = e^{-x^2/2}, second the example's weight
    z0s = (xs[:, None] + 1j * y[None, :]) / root

    def f(z):
        vals = kernel_F(spec, z0s[:, None, :], z[None, ...])
        return np.tensordot(hw, vals, axes=(0, 0)) / math.sqrt(2 * math.pi)

    for xi_val in (-1.0, 0.0, 0.8):
        xi = np.array([xi_val])
        got = R_F_apply(spec, fock_function(f), xi)
        h_hat = math.exp(-xi_val**2 / 2)
        expected = (2 ** -0.5 * math.exp(float(y[0]) ** 2 / 2) * h_hat
                    * q_matrix(table, xi, y[None, :])[0])
        assert_allclose(got.components, expected, atol=1e-7)


def test_fiber_sweep_shape_and_default_grid():
    spec = KernelSpec(1, 2, 1.0)
    xis = default_xi_grid(8, -2.0, 2.0)
    rows = fiber_sweep(lambda xi: R_F_kernel_image(spec, np.array([0.3]), np.atleast_1d(xi)), xis)
    assert rows.shape == (8, 2)
    assert default_xi_grid().shape == (64,)
    assert default_xi_grid()[0] == -8.0 and default_xi_grid()[-1] == 8.0
