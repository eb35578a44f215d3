"""Kernel oracle built from Gaussian monomial moments and Gram-Schmidt.

Nothing here touches the closed-form kernels: the only inputs are the exact
moments of the Gaussian measure (alpha/pi)^n e^{-alpha |z|^2}.  Against
those moments, the monomials z^p conj(z)^q satisfy, coordinate by
coordinate,

    <z^a conj(z)^b, z^c conj(z)^d> = (a+d)! / alpha^(a+d)   if a + d = b + c,
                                     0                      otherwise,

so two monomials are orthogonal unless p1 - q1 = p2 - q2 componentwise.
Gram-Schmidt therefore runs independently inside each such charge class,
always a family of at most C(n+m-1, n) monomials once conj-degree is capped
at m - 1.  Summing B(w) conj(B(z)) over the resulting orthonormal basis
(conj-degree <= m-1, holomorphic degree <= p_max) reproduces the space's
kernel up to a super-geometrically small truncation tail, which is what
makes this an independent check of the closed form.

Two factorization routes per class: exact rational LDL^T (alpha rational,
moderate p_max), where orthogonality is exact and only the final
normalization leaves the rationals; and a float Cholesky on norm-scaled
monomials, whose class Gram entries s!/sqrt((a+b)!(c+d)!) are alpha-free
and lie in (0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np
from scipy.linalg import solve_triangular

from .multiindex import build_index_table


def _as_tuple(p, n: int) -> tuple[int, ...]:
    t = tuple(int(c) for c in np.atleast_1d(p))
    if len(t) != n or any(c < 0 for c in t):
        raise ValueError(f"expected a multi-index of length {n}, got {t}")
    return t


def gaussian_monomial_inner(alpha, p1, q1, p2, q2):
    """Moment <z^p1 conj(z)^q1, z^p2 conj(z)^q2> against (alpha/pi)^n e^{-alpha|z|^2}.

    Exact Fraction when alpha is an int or Fraction, float otherwise.
    """
    n = len(np.atleast_1d(p1))
    p1, q1, p2, q2 = (_as_tuple(t, n) for t in (p1, q1, p2, q2))
    exact = isinstance(alpha, (int, Fraction))
    total = Fraction(1) if exact else 1.0
    for a, b, c, d in zip(p1, q1, p2, q2):
        if a + d != b + c:
            return Fraction(0) if exact else 0.0
        s = a + d
        if exact:
            total *= Fraction(math.factorial(s), 1) / Fraction(alpha) ** s
        else:
            total *= math.exp(math.lgamma(s + 1) - s * math.log(alpha))
    return total


def _degree_indices(n: int, bound: int) -> Iterator[tuple[int, ...]]:
    if bound < 0:
        return iter(())
    return iter(build_index_table(n, bound + 1))


@dataclass(frozen=True)
class BasisElement:
    """One orthonormal combination of monomials from a single charge class.

    ``monomials`` lists the (p, q) exponent pairs, ``coeffs`` the real
    coefficients; the element evaluates to sum coeffs_i w^{p_i} conj(w)^{q_i}.
    The leading pair (the one Gram-Schmidt introduced last) is (p, q).
    """

    p: tuple[int, ...]
    q: tuple[int, ...]
    monomials: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    coeffs: np.ndarray

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        if w.ndim == 0:
            w = w.reshape(1)
        total = np.zeros(w.shape[:-1], dtype=complex)
        for (p, q), c in zip(self.monomials, self.coeffs):
            term = np.full(w.shape[:-1], complex(c))
            for r, (pe, qe) in enumerate(zip(p, q)):
                if pe:
                    term = term * w[..., r] ** pe
                if qe:
                    term = term * np.conj(w[..., r]) ** qe
            total = total + term
        return total


def _charge_classes(n: int, m: int, p_max: int):
    """Group monomials (|q| <= m-1, |p| <= p_max) by the charge p - q.

    Yields (monomial list) per class, each list ordered by (|q|, q); the
    class Gram matrices are dense and everything across classes is
    orthogonal.
    """
    classes: dict[tuple[int, ...], list[tuple[tuple[int, ...], tuple[int, ...]]]] = {}
    qs = list(_degree_indices(n, m - 1))
    for p in _degree_indices(n, p_max):
        for q in qs:
            c = tuple(pe - qe for pe, qe in zip(p, q))
            classes.setdefault(c, []).append((p, q))
    for c in sorted(classes):
        members = sorted(classes[c], key=lambda pq: (sum(pq[1]), pq[1]))
        yield members


def _class_gram_scaled(members) -> np.ndarray:
    """Gram matrix of norm-scaled class monomials; entries are alpha-free.

    With hat{m} = m / ||m||, the (i, j) entry per coordinate is
    s! / sqrt((a+b)! (c+d)!) with s = a + d = b + c, computed through
    lgamma to stay in range.
    """
    k = len(members)
    G = np.eye(k)
    for i in range(k):
        p1, q1 = members[i]
        for j in range(i + 1, k):
            p2, q2 = members[j]
            log_entry = 0.0
            for a, b, c, d in zip(p1, q1, p2, q2):
                s = a + d
                log_entry += (math.lgamma(s + 1)
                              - 0.5 * (math.lgamma(a + b + 1) + math.lgamma(c + d + 1)))
            G[i, j] = G[j, i] = math.exp(log_entry)
    return G


def _class_factor_float(members, alpha: float):
    """Coefficient matrix C (upper triangular) with raw-monomial columns.

    Element j = sum_i C[i, j] * z^{p_i} conj(z)^{q_i} is the j-th
    Gram-Schmidt output (Cholesky realization: C = N L^{-T} with N the
    monomial normalizers).
    """
    G = _class_gram_scaled(members)
    L = np.linalg.cholesky(G)
    C = np.linalg.solve(L, np.eye(len(members))).T  # L^{-T}, upper triangular
    log_alpha = math.log(alpha)
    scales = np.array([
        math.exp(sum(0.5 * ((pe + qe) * log_alpha - math.lgamma(pe + qe + 1))
                     for pe, qe in zip(p, q)))
        for p, q in members
    ])
    return scales[:, None] * C


def _class_factor_exact(members, alpha: Fraction):
    """Rational Gram-Schmidt: orthogonal columns over Q, normalized at the end.

    Runs classical Gram-Schmidt on the raw monomials with Fraction
    arithmetic (inner products from :func:`gaussian_monomial_inner`), so the
    pairwise orthogonality of the output is exact; square roots enter only
    in the final scaling column by column.
    """
    k = len(members)
    G = [[gaussian_monomial_inner(alpha, members[i][0], members[i][1],
                                  members[j][0], members[j][1])
          for j in range(k)] for i in range(k)]
    cols: list[list[Fraction]] = []
    norms2: list[Fraction] = []
    for j in range(k):
        vec = [Fraction(0)] * k
        vec[j] = Fraction(1)
        for i in range(j):
            # <m_j, o_i> with o_i = cols[i]
            proj = sum(G[j][t] * cols[i][t] for t in range(k) if cols[i][t])
            if proj:
                ratio = proj / norms2[i]
                for t in range(k):
                    if cols[i][t]:
                        vec[t] -= ratio * cols[i][t]
        nrm2 = Fraction(0)
        for a in range(k):
            if not vec[a]:
                continue
            nrm2 += vec[a] * sum(G[a][b] * vec[b] for b in range(k) if vec[b])
        if nrm2 <= 0:
            raise ArithmeticError("class Gram matrix is not positive definite")
        cols.append(vec)
        norms2.append(nrm2)
    C = np.zeros((k, k))
    for j in range(k):
        scale = 1 / math.sqrt(norms2[j])
        for i in range(k):
            if cols[j][i]:
                C[i, j] = float(cols[j][i]) * scale
    return C


def build_orthonormal_basis(alpha, n: int, m: int, p_max: int,
                            exact: bool | None = None) -> list[BasisElement]:
    """Orthonormal basis of the span of z^p conj(z)^q, |q| <= m-1, |p| <= p_max.

    ``exact`` defaults to using rational arithmetic when alpha is rational
    and p_max <= 32, float Cholesky otherwise.  Output order is
    deterministic: classes sorted by charge, elements by conj-degree.
    """
    if p_max < 0:
        raise ValueError(f"p_max must be nonnegative, got {p_max}")
    if exact is None:
        exact = isinstance(alpha, (int, Fraction)) and p_max <= 32
    if exact and not isinstance(alpha, (int, Fraction)):
        raise ValueError("exact route requires a rational alpha")
    out = []
    for members in _charge_classes(n, m, p_max):
        if exact:
            C = _class_factor_exact(members, Fraction(alpha))
        else:
            C = _class_factor_float(members, float(alpha))
        for j in range(len(members)):
            p, q = members[j]
            out.append(BasisElement(p=p, q=q, monomials=tuple(members[: j + 1]),
                                    coeffs=C[: j + 1, j].copy()))
    return out


def kernel_via_basis(alpha, n: int, m: int, p_max: int, z, w):
    """Truncated kernel sum over the orthonormal basis: sum_B B(w) conj(B(z)).

    Streams charge class by charge class (elements are evaluated through
    their coefficient matrices, never materialized), so large p_max
    truncations stay affordable.  z and w broadcast over leading axes.
    """
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if z.ndim == 0:
        z = z.reshape(1)
    if w.ndim == 0:
        w = w.reshape(1)
    shape = np.broadcast_shapes(z.shape[:-1], w.shape[:-1])
    z = np.broadcast_to(z, shape + (n,)).reshape(-1, n)
    w = np.broadcast_to(w, shape + (n,)).reshape(-1, n)
    alpha_f = float(alpha)
    log_alpha = math.log(alpha_f)

    total = np.zeros(z.shape[0], dtype=complex)
    for members in _charge_classes(n, m, p_max):
        G = _class_gram_scaled(members)
        L = np.linalg.cholesky(G)
        k = len(members)
        vals_w = np.empty((k, w.shape[0]), dtype=complex)
        vals_z = np.empty((k, z.shape[0]), dtype=complex)
        for i, (p, q) in enumerate(members):
            log_scale = sum(0.5 * ((pe + qe) * log_alpha - math.lgamma(pe + qe + 1))
                            for pe, qe in zip(p, q))
            scale = math.exp(log_scale)
            mw = np.full(w.shape[0], scale, dtype=complex)
            mz = np.full(z.shape[0], scale, dtype=complex)
            for r, (pe, qe) in enumerate(zip(p, q)):
                if pe:
                    mw *= w[:, r] ** pe
                    mz *= z[:, r] ** pe
                if qe:
                    mw *= np.conj(w[:, r]) ** qe
                    mz *= np.conj(z[:, r]) ** qe
            vals_w[i] = mw
            vals_z[i] = mz
        ew = solve_triangular(L, vals_w, lower=True)
        ez = solve_triangular(L, vals_z, lower=True)
        total += np.sum(ew * np.conj(ez), axis=0)
    return total.reshape(shape)
