"""The Heisenberg group G0 = H_n, its coadjoint action and its two models.

Elements are written [a, b, c] = exp(sum a_k X_k + b_k Y_k + c Z), so that

    [a, b, c] [a', b', c'] = [a + a', b + b', c + c' + (a.b' - b.a') / 2].

The Schrodinger model sigma0 acts on L^2(R^n) (Hermite basis), the Fock model
pi0 on the Gaussian-weighted holomorphic space (normalized monomial basis).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lgamma

import numpy as np

from . import numkit
from .operators import DiffOp, OperatorMatrix


def _vec(x, n=None):
    v = np.atleast_1d(np.asarray(x, dtype=float))
    if n is not None and v.shape != (n,):
        raise ValueError(f"expected a length-{n} vector, got shape {v.shape}")
    return v


@dataclass(frozen=True, eq=False)
class HeisElement:
    a: np.ndarray
    b: np.ndarray
    c: float

    def __post_init__(self):
        object.__setattr__(self, "a", _vec(self.a))
        object.__setattr__(self, "b", _vec(self.b, len(self.a)))
        object.__setattr__(self, "c", float(self.c))

    @property
    def n(self) -> int:
        return len(self.a)

    @classmethod
    def identity(cls, n: int) -> "HeisElement":
        return cls(np.zeros(n), np.zeros(n), 0.0)

    @classmethod
    def random(cls, n: int, rng, scale: float = 1.0) -> "HeisElement":
        return cls(rng.uniform(-scale, scale, n), rng.uniform(-scale, scale, n),
                   rng.uniform(-scale, scale))

    @property
    def z(self) -> np.ndarray:
        """Complex coordinate a + i b."""
        return self.a + 1j * self.b

    def __mul__(self, other: "HeisElement") -> "HeisElement":
        return h_mul(self, other)

    def inverse(self) -> "HeisElement":
        return HeisElement(-self.a, -self.b, -self.c)

    def close_to(self, other: "HeisElement", tol: float = 1e-12) -> bool:
        return (np.allclose(self.a, other.a, atol=tol) and np.allclose(self.b, other.b, atol=tol)
                and abs(self.c - other.c) <= tol)


@dataclass(frozen=True, eq=False)
class HeisAlgElement:
    a: np.ndarray
    b: np.ndarray
    c: float

    def __post_init__(self):
        object.__setattr__(self, "a", _vec(self.a))
        object.__setattr__(self, "b", _vec(self.b, len(self.a)))
        object.__setattr__(self, "c", float(self.c))

    @property
    def n(self) -> int:
        return len(self.a)

    @classmethod
    def basis(cls, n: int) -> list["HeisAlgElement"]:
        """X_1..X_n, Y_1..Y_n, Z."""
        out = []
        for k in range(n):
            e = np.zeros(n)
            e[k] = 1
            out.append(cls(e, np.zeros(n), 0.0))
        for k in range(n):
            e = np.zeros(n)
            e[k] = 1
            out.append(cls(np.zeros(n), e, 0.0))
        out.append(cls(np.zeros(n), np.zeros(n), 1.0))
        return out

    def bracket(self, other: "HeisAlgElement") -> "HeisAlgElement":
        n = self.n
        return HeisAlgElement(np.zeros(n), np.zeros(n),
                              float(self.a @ other.b - self.b @ other.a))


@dataclass(frozen=True, eq=False)
class HeisCoadjPoint:
    alpha: np.ndarray
    beta: np.ndarray
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _vec(self.alpha))
        object.__setattr__(self, "beta", _vec(self.beta, len(self.alpha)))
        object.__setattr__(self, "gamma", float(self.gamma))

    def pair(self, X: HeisAlgElement) -> float:
        return float(self.alpha @ X.a + self.beta @ X.b + self.gamma * X.c)

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.alpha, self.beta, [self.gamma]])


def h_mul(g: HeisElement, h: HeisElement) -> HeisElement:
    if g.n != h.n:
        raise ValueError(f"dimension mismatch: {g.n} vs {h.n}")
    return HeisElement(g.a + h.a, g.b + h.b,
                       g.c + h.c + 0.5 * float(g.a @ h.b - g.b @ h.a))


def h_coadjoint(g: HeisElement, xi: HeisCoadjPoint) -> HeisCoadjPoint:
    """Ad*([a,b,c]) (alpha, beta, gamma) = (alpha + gamma b, beta - gamma a, gamma)."""
    return HeisCoadjPoint(xi.alpha + xi.gamma * g.b, xi.beta - xi.gamma * g.a, xi.gamma)


def act_fock(g: HeisElement, z, lam: float):
    """g . z = z + lam (b - i a)."""
    return np.asarray(z, dtype=complex) + lam * (g.b - 1j * g.a)


def act_phase(g: HeisElement, p, q, lam: float):
    """g . (p, q) = (p + a, q + lam b)."""
    return np.asarray(p, dtype=float) + g.a, np.asarray(q, dtype=float) + lam * g.b


def _check_lam(lam: float):
    if lam <= 0:
        raise ValueError("only lam > 0 is supported")


def min_quad_order(N: int) -> int:
    """Heuristic lower bound on the Gauss-Hermite order for truncation N."""
    return N + 12


# ---------------------------------------------------------------------------
# Schrodinger model
# ---------------------------------------------------------------------------

def _sigma0_1d(a: float, b: float, N: int, lam: float, order: int) -> np.ndarray:
    rule = numkit.gauss_hermite(order)
    y, w = rule.nodes, rule.weights
    sl = np.sqrt(lam)
    psi_shift = numkit.hermite_table(N, y - sl * a / 2)   # h_beta(x - a)
    psi_here = numkit.hermite_table(N, y + sl * a / 2)    # h_alpha(x)
    x = a / 2 + y / sl
    phase = np.exp(1j * lam * (-b * x + a * b / 2)) * w
    return np.exp(-lam * a * a / 4) * (psi_here * phase) @ psi_shift.T


def _assemble(per_coord: list[np.ndarray], n: int, N: int) -> np.ndarray:
    idx = numkit.multi_indices(n, N)
    out = np.ones((len(idx), len(idx)), dtype=complex)
    for k, m in enumerate(per_coord):
        out *= m[np.ix_(idx[:, k], idx[:, k])]
    return out


def sigma0_matrix(g: HeisElement, N: int, lam: float, order: int = 60) -> OperatorMatrix:
    """<sigma0(g) h_beta, h_alpha> by Gauss-Hermite quadrature (one 1-d rule per coordinate)."""
    _check_lam(lam)
    if order < min_quad_order(N):
        raise ValueError(f"quadrature order {order} too small for N={N} "
                         f"(need >= {min_quad_order(N)})")
    per = [_sigma0_1d(g.a[k], g.b[k], N, lam, order) for k in range(g.n)]
    data = np.exp(1j * lam * g.c) * _assemble(per, g.n, N)
    return OperatorMatrix(data, "hermite", N, g.n, lam)


def dsigma0_op(X: HeisAlgElement, lam: float) -> DiffOp:
    """-sum a_k d_k - i lam sum b_k x_k + i lam c on L^2(R^n)."""
    n = X.n
    op = DiffOp.scalar(n, 1j * lam * X.c)
    for k in range(n):
        op = op + DiffOp.deriv(n, k, -X.a[k]) + DiffOp.var(n, k, -1j * lam * X.b[k])
    return op


def dsigma0_matrix(X: HeisAlgElement, N: int, lam: float) -> OperatorMatrix:
    _check_lam(lam)
    return dsigma0_op(X, lam).matrix("hermite", N, lam)


# ---------------------------------------------------------------------------
# Fock model
# ---------------------------------------------------------------------------

def displacement_1d(mu: complex, N: int) -> np.ndarray:
    """Displacement operator exp(mu a^* - conj(mu) a) on normalized monomials.

    Entry [m, beta] = exp(-|mu|^2/2) sum_j sqrt(m! beta!) / (j! (beta-j)! (m-j)!)
                      (-conj mu)^(beta-j) mu^(m-j).
    """
    out = np.zeros((N + 1, N + 1), dtype=complex)
    mb = -np.conj(mu)
    for m in range(N + 1):
        for beta in range(N + 1):
            s = 0j
            for j in range(min(m, beta) + 1):
                logc = 0.5 * (lgamma(m + 1) + lgamma(beta + 1)) - lgamma(j + 1) \
                    - lgamma(beta - j + 1) - lgamma(m - j + 1)
                s += np.exp(logc) * mb ** (beta - j) * mu ** (m - j)
            out[m, beta] = s
    return np.exp(-abs(mu) ** 2 / 2) * out


def pi0_matrix(g: HeisElement, N: int, lam: float) -> OperatorMatrix:
    """pi0(g) F(z) = alpha(g^-1, z) F(g^-1 . z) on normalized monomials (exact series)."""
    _check_lam(lam)
    u = g.b + 1j * g.a
    mus = u * np.sqrt(lam / 2)
    per = [displacement_1d(mus[k], N) for k in range(g.n)]
    data = np.exp(1j * lam * g.c) * _assemble(per, g.n, N)
    return OperatorMatrix(data, "fock", N, g.n, lam)


def cocycle(g: HeisElement, z, lam: float):
    """alpha(g, z) = exp(-i c lam + (b + i a)(-2 z + lam(-b + i a)) / 4), summed over coordinates."""
    z = np.asarray(z, dtype=complex)
    return np.exp(-1j * g.c * lam + 0.25 * np.sum((g.b + 1j * g.a) * (-2 * z + lam * (-g.b + 1j * g.a)),
                                                  axis=-1))


def dpi0_op(X: HeisAlgElement, lam: float) -> DiffOp:
    """sum a_k (i z_k / 2 + i lam d_k) + b_k (z_k / 2 - lam d_k) + i lam c."""
    n = X.n
    op = DiffOp.scalar(n, 1j * lam * X.c)
    for k in range(n):
        op = op + DiffOp.var(n, k, 0.5j * X.a[k] + 0.5 * X.b[k])
        op = op + DiffOp.deriv(n, k, 1j * lam * X.a[k] - lam * X.b[k])
    return op


def dpi0_matrix(X: HeisAlgElement, N: int, lam: float) -> OperatorMatrix:
    _check_lam(lam)
    return dpi0_op(X, lam).matrix("fock", N, lam)
