"""Shared numerical primitives.

Multi-index enumeration, Gauss-Hermite quadrature, scaled Hermite
functions, ladder matrices and the two dense factorizations used by the
quantization maps (unitary polar part, inverse square root of a PSD matrix).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import factorial, lgamma

import numpy as np
from numpy.polynomial.hermite import hermgauss
from scipy import sparse

# tolerance ladder
TOL_EXACT = 1e-12
TOL_QUAD = 1e-8
TOL_TRUNC = 1e-6

MAX_QUAD_ORDER = 200
MAX_HERMITE_DEGREE = 500


class RankDeficiencyError(ValueError):
    pass


class NotPositiveDefiniteError(ValueError):
    pass


# ---------------------------------------------------------------------------
# multi-indices
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _multi_indices(n: int, N: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for d in range(N + 1):
        block = [a for a in product(range(d, -1, -1), repeat=n) if sum(a) == d]
        out.extend(block)
    return tuple(out)


def multi_indices(n: int, N: int) -> np.ndarray:
    """All alpha in N^n with |alpha| <= N, graded by degree then reverse-lex.

    The ordering is stable: the indices of degree <= M are always the
    leading ``count(n, M)`` rows, so interior blocks are leading slices.
    """
    if n < 1 or N < 0:
        raise ValueError(f"need n >= 1 and N >= 0, got n={n}, N={N}")
    return np.array(_multi_indices(n, N), dtype=int).reshape(-1, n)


@lru_cache(maxsize=None)
def index_lookup(n: int, N: int) -> dict[tuple[int, ...], int]:
    return {a: i for i, a in enumerate(_multi_indices(n, N))}


def count(n: int, N: int) -> int:
    """Number of multi-indices of length n with |alpha| <= N."""
    if N < 0:
        return 0
    return len(_multi_indices(n, N))


def multi_factorial(alpha) -> float:
    return float(np.prod([factorial(int(a)) for a in alpha]))


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    kind: str = "gauss-hermite-1d"

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Contract the leading axis of ``values`` against the weights."""
        return np.tensordot(self.weights, values, axes=(0, 0))


@lru_cache(maxsize=64)
def _hermgauss(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = hermgauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_hermite(order: int) -> QuadratureRule:
    """Gauss-Hermite rule for the weight exp(-x**2).

    Exact for polynomials of degree <= 2*order - 1.
    """
    if order < 1:
        raise ValueError("quadrature order must be >= 1")
    if order > MAX_QUAD_ORDER:
        raise ValueError(f"quadrature order {order} exceeds cap {MAX_QUAD_ORDER}")
    x, w = _hermgauss(order)
    return QuadratureRule(x, w)


def tensor_gauss_hermite(order: int, dim: int) -> QuadratureRule:
    """Tensor-product Gauss-Hermite rule on R^dim, weight exp(-|x|^2).

    Nodes have shape (order**dim, dim).
    """
    x, w = _hermgauss(order)
    grids = np.meshgrid(*([x] * dim), indexing="ij")
    wgrids = np.meshgrid(*([w] * dim), indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=-1)
    weights = np.prod(np.stack([g.ravel() for g in wgrids], axis=-1), axis=-1)
    return QuadratureRule(nodes, weights, kind="tensor-product")


def complex_gaussian_rule(order: int, n: int, lam: float,
                          center=None, width: float | None = None):
    """Nodes/weights for integrals over C^n against dmu_lam = (2 pi lam)^-n dx dy.

    The rule integrates ``f(w) * exp(-|w - center|^2 / width)`` and returns
    (points, weights) so that the integral is ``sum(weights * f(points))``.
    ``width`` defaults to 2*lam, the Fock weight.
    """
    if width is None:
        width = 2.0 * lam
    rule = tensor_gauss_hermite(order, 2 * n)
    y = rule.nodes
    pts = np.sqrt(width) * (y[:, :n] + 1j * y[:, n:])
    if center is not None:
        pts = pts + np.asarray(center, dtype=complex)
    # dx dy = width du dv per complex coordinate
    w = rule.weights * (width / (2.0 * np.pi * lam)) ** n
    return pts, w


# ---------------------------------------------------------------------------
# Hermite functions
# ---------------------------------------------------------------------------

def hermite_table(kmax: int, y) -> np.ndarray:
    """Normalized Hermite polynomials psi_k(y) = pi^-1/4 (2^k k!)^-1/2 H_k(y).

    Returns shape (kmax + 1, *y.shape). Multiplying by exp(-y^2/2) gives the
    orthonormal Hermite functions at unit scale.
    """
    if kmax > MAX_HERMITE_DEGREE:
        raise OverflowError(f"Hermite degree {kmax} exceeds cap {MAX_HERMITE_DEGREE}")
    y = np.asarray(y, dtype=float)
    out = np.empty((kmax + 1,) + y.shape)
    out[0] = np.pi ** -0.25
    if kmax >= 1:
        out[1] = np.sqrt(2.0) * y * out[0]
    for k in range(1, kmax):
        out[k + 1] = np.sqrt(2.0 / (k + 1)) * y * out[k] - np.sqrt(k / (k + 1)) * out[k - 1]
    return out


def hermite_fn(k: int, lam: float, x):
    """k-th Hermite function at scale lam:

        (lam/pi)^(1/4) (2^k k!)^(-1/2) H_k(sqrt(lam) x) exp(-lam x^2 / 2)
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if lam <= 0:
        raise ValueError("lam must be positive")
    x = np.asarray(x, dtype=float)
    y = np.sqrt(lam) * x
    val = hermite_table(k, y)[k] * np.exp(-0.5 * y * y) * lam ** 0.25
    return val if val.ndim else float(val)


# ---------------------------------------------------------------------------
# ladder matrices on the graded multi-index basis
# ---------------------------------------------------------------------------

@lru_cache(maxsize=128)
def lowering(n: int, N: int, k: int) -> sparse.csr_matrix:
    """L_k e_alpha = sqrt(alpha_k) e_{alpha - e_k} on the truncated basis."""
    idx = _multi_indices(n, N)
    look = index_lookup(n, N)
    rows, cols, vals = [], [], []
    for j, a in enumerate(idx):
        if a[k] > 0:
            b = list(a)
            b[k] -= 1
            rows.append(look[tuple(b)])
            cols.append(j)
            vals.append(np.sqrt(a[k]))
    m = len(idx)
    return sparse.csr_matrix((vals, (rows, cols)), shape=(m, m))


def raising(n: int, N: int, k: int) -> sparse.csr_matrix:
    return lowering(n, N, k).T.tocsr()


def number_degree(n: int, N: int) -> np.ndarray:
    return multi_indices(n, N).sum(axis=1)


# ---------------------------------------------------------------------------
# factorizations
# ---------------------------------------------------------------------------

def polar_unitary(M, tol: float = 1e-12) -> np.ndarray:
    """Unitary factor U of the left polar decomposition M = P U.

    P = (M M*)^(1/2) is PSD; U = W V* from the SVD M = W S V*.
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("polar_unitary needs a square matrix")
    W, s, Vh = np.linalg.svd(M)
    if s[-1] < tol * max(1.0, s[0]):
        raise RankDeficiencyError(f"smallest singular value {s[-1]:.3e} below tolerance")
    return W @ Vh


def psd_inv_sqrt(M, tol: float = 1e-12) -> np.ndarray:
    """Hermitian R with R M R = I for Hermitian positive definite M."""
    M = np.asarray(M)
    H = 0.5 * (M + M.conj().T)
    evals, evecs = np.linalg.eigh(H)
    if evals[0] <= tol * max(1.0, abs(evals[-1])):
        raise NotPositiveDefiniteError(f"eigenvalue {evals[0]:.3e} not above tolerance")
    return (evecs * evals ** -0.5) @ evecs.conj().T


def log_sqrt_factorial_ratio(n: int, m: int) -> float:
    """log sqrt(n! / m!)."""
    return 0.5 * (lgamma(n + 1) - lgamma(m + 1))
