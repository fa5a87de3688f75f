"""Truncated Fock space, coherent states and the Segal-Bargmann pair."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from math import lgamma

import numpy as np

from . import numkit
from .heisenberg import min_quad_order
from .operators import OperatorMatrix


def norm_sq(n: int, N: int, lam: float) -> np.ndarray:
    """(2 lam)^|alpha| alpha! for every multi-index, the squared norm of z^alpha."""
    idx = numkit.multi_indices(n, N)
    logs = idx.sum(axis=1) * np.log(2 * lam) + np.array(
        [sum(lgamma(int(a) + 1) for a in row) for row in idx])
    return np.exp(logs)


def monomials(z, n: int, N: int) -> np.ndarray:
    """z^alpha for every multi-index; z has shape (..., n); result (..., count)."""
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0 or z.shape[-1] != n:
        z = z[..., None]
    idx = numkit.multi_indices(n, N)
    return np.prod(z[..., None, :] ** idx, axis=-1)


@dataclass(frozen=True, eq=False)
class FockVector:
    coeffs: np.ndarray
    n: int
    N: int
    lam: float

    def __call__(self, z):
        """Evaluate the holomorphic function at z."""
        basis = monomials(z, self.n, self.N) / np.sqrt(norm_sq(self.n, self.N, self.lam))
        return basis @ self.coeffs

    def inner(self, other: "FockVector") -> complex:
        return complex(self.coeffs @ np.conj(other.coeffs))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))


@dataclass(frozen=True, eq=False)
class SchrodingerVector:
    coeffs: np.ndarray
    n: int
    N: int
    lam: float

    def __call__(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        idx = numkit.multi_indices(self.n, self.N)
        vals = np.ones((x.shape[0], len(idx)))
        for k in range(self.n):
            tab = np.stack([numkit.hermite_fn(j, self.lam, x[:, k]) for j in range(self.N + 1)])
            vals *= tab[idx[:, k]].T
        return vals @ self.coeffs

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))


def coherent_coeffs(z, n: int, N: int, lam: float) -> np.ndarray:
    """Coefficients of e_z(w) = exp(conj(z) w / 2 lam) in the orthonormal basis."""
    return np.conj(monomials(z, n, N)) / np.sqrt(norm_sq(n, N, lam))


def coherent_state(z, N: int, lam: float) -> FockVector:
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    n = len(z)
    if np.sum(np.abs(z) ** 2) / (2 * lam) > N / 3:
        warnings.warn("coherent state poorly resolved at this truncation", RuntimeWarning)
    return FockVector(coherent_coeffs(z, n, N, lam), n, N, lam)


def fock_inner_quadrature(F, G, n: int, lam: float, order: int = 40) -> complex:
    """<F, G> = int F conj(G) exp(-|z|^2/2 lam) dmu_lam by tensor Gauss-Hermite."""
    pts, w = numkit.complex_gaussian_rule(order, n, lam)
    return complex(np.sum(w * F(pts) * np.conj(G(pts))))


# ---------------------------------------------------------------------------
# Segal-Bargmann transform
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _sb_1d(N: int, order: int) -> np.ndarray:
    """<B0 h_k, e_m> for one coordinate.

    The coefficient of z^m in exp(z^2/4 lam + i x z) is P_m(x); after the
    substitution x = y / sqrt(lam) and multiplication by the monomial norm,
    everything is lam-independent:
        Q_m(y) = sqrt(2^m m!) sum_{2j + l = m} 4^-j i^l y^l / (j! l!).
    """
    rule = numkit.gauss_hermite(order)
    y, w = rule.nodes, rule.weights
    psi = numkit.hermite_table(N, y)
    out = np.empty((N + 1, N + 1), dtype=complex)
    for m in range(N + 1):
        q = np.zeros_like(y, dtype=complex)
        for j in range(m // 2 + 1):
            l = m - 2 * j
            logc = 0.5 * (m * np.log(2) + lgamma(m + 1)) - j * np.log(4) - lgamma(j + 1) - lgamma(l + 1)
            q = q + np.exp(logc) * (1j ** l) * y ** l
        out[m] = np.pi ** -0.25 * (psi * w) @ q
    return out


def segal_bargmann_matrix(N: int, lam: float, n: int = 1, order: int = 60,
                          dim_v: int = 1) -> OperatorMatrix:
    """B0 (or B0 (x) I_V) from the Hermite basis to the normalized-monomial basis.

    Columns are Hermite inputs, rows Fock outputs. The returned matrix carries
    the ``"fock"`` tag: it is meant to be used as ``B @ A_hermite @ B^*``
    through :func:`conjugate_to_fock`.
    """
    if lam <= 0:
        raise ValueError("only lam > 0 is supported")
    if order < min_quad_order(N):
        raise ValueError(f"quadrature order {order} too small for N={N}")
    one = _sb_1d(N, order)
    idx = numkit.multi_indices(n, N)
    data = np.ones((len(idx), len(idx)), dtype=complex)
    for k in range(n):
        data *= one[np.ix_(idx[:, k], idx[:, k])]
    if dim_v > 1:
        data = np.kron(data, np.eye(dim_v))
    return OperatorMatrix(data, "fock", N, n, lam, dim_v)


def segal_bargmann_inverse_matrix(N: int, lam: float, n: int = 1, order: int = 60,
                                  dim_v: int = 1) -> OperatorMatrix:
    """B0^-1 = B0^*."""
    B = segal_bargmann_matrix(N, lam, n, order, dim_v)
    return OperatorMatrix(B.data.conj().T, "hermite", N, n, lam, dim_v)


def sb_phases(N: int, n: int = 1) -> np.ndarray:
    """Measured diagonal of B0 is i^|alpha|; returned for reference and tests."""
    return 1j ** numkit.number_degree(n, N)


def conjugate_to_fock(A: OperatorMatrix, B: OperatorMatrix) -> OperatorMatrix:
    """B A B^-1 for A in the Hermite basis."""
    if A.basis != "hermite":
        raise ValueError("expected a Hermite-basis operator")
    return OperatorMatrix(B.data @ A.data @ B.data.conj().T, "fock", A.N, A.n, A.lam, A.dim_v)


def conjugate_to_hermite(A: OperatorMatrix, B: OperatorMatrix) -> OperatorMatrix:
    """B^-1 A B for A in the Fock basis."""
    if A.basis != "fock":
        raise ValueError("expected a Fock-basis operator")
    return OperatorMatrix(B.data.conj().T @ A.data @ B.data, "hermite", A.N, A.n, A.lam, A.dim_v)


def sb_kernel(z, x, lam: float):
    """(lam/pi)^(n/4) exp(z.z / 4 lam + i x.z - lam x.x / 2)."""
    z = np.asarray(z, dtype=complex)
    x = np.asarray(x, dtype=float)
    n = z.shape[-1] if z.ndim else 1
    return (lam / np.pi) ** (n / 4) * np.exp(np.sum(z * z, -1) / (4 * lam) + 1j * np.sum(x * z, -1)
                                             - lam * np.sum(x * x, -1) / 2)

