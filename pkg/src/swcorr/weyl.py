"""Weyl quantization W0, Wigner dequantization and the phase-space moment map.

Conventions: the position variable is ``p`` and the dual variable ``q``,

    W0(f) phi(p) = (2 pi)^-n int e^{i s q} f(p + s/2, q) phi(p + s) ds dq,

so W0(p_k) is multiplication by x_k and W0(q_k) = i d/dx_k. The inverse is

    W0^-1(A)(u, q) = int K_A(u - s/2, u + s/2) e^{-i s q} ds.

Phase space is identified with C^n through j(p, q) = q - i lam p. Wigner
functions of Hermite matrix units are Gaussian-Laguerre functions of z = j(p, q),
which is how matrix-backed symbols are evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial, lgamma

import numpy as np
from scipy.special import eval_genlaguerre

from . import numkit
from .heisenberg import HeisCoadjPoint
from .operators import DiffOp, OperatorMatrix
from .polysym import GaussPolySymbol, PolySymbol


def j_map(p, q, lam: float):
    """j(p, q) = q - i lam p."""
    return np.asarray(q, dtype=float) - 1j * lam * np.asarray(p, dtype=float)


def j_inverse(z, lam: float):
    z = np.asarray(z, dtype=complex)
    return -z.imag / lam, z.real


def psi_lambda(p, q, lam: float) -> HeisCoadjPoint:
    """sum q_k X_k* - lam p_k Y_k* + lam Z*."""
    return HeisCoadjPoint(np.atleast_1d(q), -lam * np.atleast_1d(p), lam)


# ---------------------------------------------------------------------------
# Wigner functions of Hermite matrix units
# ---------------------------------------------------------------------------

def wigner_table_1d(z, N: int, lam: float) -> np.ndarray:
    """T[m, k](z) = W0^-1(|h_m><h_k|) at the points z = j(p, q) (one coordinate).

    For m >= k:  2 (-1)^k sqrt(k!/m!) (2 i z / sqrt(2 lam))^(m-k)
                 L_k^(m-k)(2 |z|^2 / lam) exp(-|z|^2 / lam),
    and T[k, m] = conj(T[m, k]).
    """
    z = np.asarray(z, dtype=complex)
    r2 = np.abs(z) ** 2
    x = 2 * r2 / lam
    gauss = np.exp(-r2 / lam)
    out = np.empty((N + 1, N + 1) + z.shape, dtype=complex)
    w = 2j * z / np.sqrt(2 * lam)
    for m in range(N + 1):
        for k in range(m + 1):
            d = m - k
            coef = 2.0 * (-1) ** k * np.exp(0.5 * (lgamma(k + 1) - lgamma(m + 1)))
            val = coef * w ** d * eval_genlaguerre(k, d, x) * gauss
            out[m, k] = val
            if k != m:
                out[k, m] = np.conj(val)
    return out


def wigner_unit_gauss(m: int, k: int, lam: float) -> GaussPolySymbol:
    """Exact GaussPolySymbol (in z = j(p, q), kappa = 1/lam) of |h_m><h_k|, one coordinate."""
    if m < k:
        return wigner_unit_gauss(k, m, lam).conj()
    d = m - k
    pref = 2.0 * (-1) ** k * np.sqrt(factorial(k) / factorial(m)) * (2j / np.sqrt(2 * lam)) ** d
    coeffs = {}
    for i in range(k + 1):
        c = (-1) ** i * comb(m, k - i) / factorial(i) * (2 / lam) ** i
        coeffs[((d + i,), (i,))] = pref * c
    return GaussPolySymbol(PolySymbol(1, coeffs), 1.0 / lam)


def wigner_values(coeffs: np.ndarray, z, n: int, N: int, lam: float) -> np.ndarray:
    """sum_ab coeffs[a, b] W0^-1(|h_a><h_b|)(z) at points z of shape (P, n)."""
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    idx = numkit.multi_indices(n, N)
    P = z.shape[0]
    prod = np.ones((len(idx), len(idx), P), dtype=complex)
    for k in range(n):
        tab = wigner_table_1d(z[:, k], N, lam)
        prod *= tab[np.ix_(idx[:, k], idx[:, k])]
    return np.einsum("ab,abp->p", coeffs, prod)


# ---------------------------------------------------------------------------
# phase-space symbols
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PhaseSymbol:
    """A function on R^2n, either a polynomial or a Hermite-matrix-backed Wigner function."""
    n: int
    lam: float
    poly: PolySymbol | None = None
    coeffs: np.ndarray | None = None
    N: int | None = None

    def at_z(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        flat = z.reshape(-1, self.n)
        if self.poly is not None:
            p, q = j_inverse(flat, self.lam)
            out = self.poly(p, q)
        else:
            out = wigner_values(self.coeffs, flat, self.n, self.N, self.lam)
        return out.reshape(z.shape[:-1]) if z.ndim > 1 else out

    def __call__(self, p, q):
        return self.at_z(np.atleast_2d(j_map(p, q, self.lam)))

    def conj(self) -> "PhaseSymbol":
        if self.poly is not None:
            return PhaseSymbol(self.n, self.lam, poly=self.poly.conj())
        return PhaseSymbol(self.n, self.lam, coeffs=self.coeffs.conj().T, N=self.N)

    def to_gauss(self) -> GaussPolySymbol:
        """Exact GaussPolySymbol in z = j(p, q) for matrix-backed symbols."""
        if self.coeffs is None:
            raise ValueError("polynomial symbols have no Gaussian factor")
        idx = numkit.multi_indices(self.n, self.N)
        total = PolySymbol(self.n, {})
        tables = {}
        for i, a in enumerate(idx):
            for j, b in enumerate(idx):
                c = self.coeffs[i, j]
                if c == 0:
                    continue
                term = PolySymbol.constant(self.n, c)
                for k in range(self.n):
                    key = (int(a[k]), int(b[k]))
                    if key not in tables:
                        tables[key] = wigner_unit_gauss(key[0], key[1], self.lam).poly
                    term = term * _embed(tables[key], k, self.n)
                total = total + term
        return GaussPolySymbol(total, 1.0 / self.lam)


def _embed(p1: PolySymbol, k: int, n: int) -> PolySymbol:
    """Lift a one-variable symbol to coordinate k of C^n."""
    out = {}
    for (a, b), c in p1.coeffs.items():
        aa = [0] * n
        bb = [0] * n
        aa[k] = a[0]
        bb[k] = b[0]
        out[(tuple(aa), tuple(bb))] = c
    return PolySymbol(n, out, p1.kind)


# ---------------------------------------------------------------------------
# quantization
# ---------------------------------------------------------------------------

def _check_pq(f: PolySymbol):
    if f.kind != "pq":
        raise ValueError("Weyl quantization takes pq-kind symbols")


def weyl_op_derivative(f: PolySymbol) -> DiffOp:
    """W0 of a polynomial via the derivative formula for u(p) q^beta:

        (i d/ds)^beta (u(p + s/2) phi(p + s)) at s = 0.
    """
    _check_pq(f)
    n = f.n
    op = DiffOp(n, {})
    for (alpha, beta), c in f.coeffs.items():
        for gamma in np.ndindex(*[b + 1 for b in beta]):
            if any(g > a for g, a in zip(gamma, alpha)):
                continue
            coef = c * (1j) ** sum(beta) * 0.5 ** sum(gamma)
            for k in range(n):
                coef *= comb(beta[k], gamma[k]) * factorial(alpha[k]) / factorial(alpha[k] - gamma[k])
            xa = tuple(a - g for a, g in zip(alpha, gamma))
            db = tuple(b - g for b, g in zip(beta, gamma))
            op = op + DiffOp(n, {(xa, db): coef})
    return op


def weyl_op_symmetric(f: PolySymbol) -> DiffOp:
    """W0 of a polynomial as the fully symmetrized product of x and Q = i d/dx."""
    _check_pq(f)
    n = f.n
    op = DiffOp(n, {})
    for (alpha, beta), c in f.coeffs.items():
        term = DiffOp.scalar(n, c)
        for k in range(n):
            a, b = alpha[k], beta[k]
            total = a + b
            acc = DiffOp(n, {})
            X = DiffOp.var(n, k)
            Q = DiffOp.deriv(n, k, 1j)
            for pos in combinations(range(total), a):
                word = DiffOp.scalar(n, 1.0)
                ps = set(pos)
                for i in range(total):
                    word = word @ (X if i in ps else Q)
                acc = acc + word
            term = term @ (acc * (1.0 / comb(total, a)))
        op = op + term
    return op


def weyl_quantize_poly(f: PolySymbol, N: int, lam: float, method: str = "derivative") -> OperatorMatrix:
    """Hermite-basis matrix of W0(f) for a polynomial symbol f(p, q)."""
    if method == "derivative":
        op = weyl_op_derivative(f)
    elif method == "symmetric":
        op = weyl_op_symmetric(f)
    else:
        raise ValueError(method)
    return op.matrix("hermite", N, lam)


def weyl_symbol_of_op(op: DiffOp) -> PolySymbol:
    """Exact W0^-1 of a Schrodinger-side polynomial differential operator.

    The left symbol of x^a d^b is p^a (-i q)^b; the Weyl symbol is
    exp(-(i/2) sum d_p d_q) applied to it.
    """
    n = op.n
    left = {}
    for (a, b), c in op.terms.items():
        left[(a, b)] = left.get((a, b), 0) + c * (-1j) ** sum(b)
    return PolySymbol(n, left, "pq").mixed_exp(-0.5j)


def wigner_dequantize(A) -> PhaseSymbol:
    """W0^-1 of a Hermite-basis matrix (Wigner function) or of a DiffOp (exact polynomial)."""
    if isinstance(A, DiffOp):
        raise TypeError("pass lam: use wigner_dequantize_op(op, lam)")
    if A.basis != "hermite" or A.dim_v != 1:
        raise ValueError("expected a scalar Hermite-basis operator")
    return PhaseSymbol(A.n, A.lam, coeffs=np.array(A.data), N=A.N)


def wigner_dequantize_op(op: DiffOp, lam: float) -> PhaseSymbol:
    return PhaseSymbol(op.n, lam, poly=weyl_symbol_of_op(op))


def wigner_quadrature(A: OperatorMatrix, p, q, order: int = 80) -> np.ndarray:
    """Independent W0^-1 by direct quadrature of int K(u - s/2, u + s/2) e^{-isq} ds (n = 1)."""
    if A.n != 1:
        raise ValueError("direct quadrature implemented for n = 1")
    lam = A.lam
    rule = numkit.gauss_hermite(order)
    y, w = rule.nodes, rule.weights
    p = np.atleast_1d(np.asarray(p, dtype=float))
    q = np.atleast_1d(np.asarray(q, dtype=float))
    out = np.empty(p.shape, dtype=complex)
    sl = np.sqrt(lam)
    for i, (u, qq) in enumerate(zip(p, q)):
        # s = 2 y / sqrt(lam); Gaussian exp(-lam u^2) exp(-y^2) split off
        left = numkit.hermite_table(A.N, sl * u - y)     # psi_a(sqrt(lam)(u - s/2))
        right = numkit.hermite_table(A.N, sl * u + y)    # psi_b(sqrt(lam)(u + s/2))
        s = 2 * y / sl
        ph = np.exp(-1j * s * qq) * w
        M = (left * ph) @ right.T
        out[i] = np.exp(-lam * u * u) * sl * (2 / sl) * np.sum(A.data * M)
    return out


# ---------------------------------------------------------------------------
# phase-space integration
# ---------------------------------------------------------------------------

def phase_rule(order: int, n: int, lam: float, kappa: float = 2.0):
    """Points z = j(p, q) and weights for int F dmu~, dmu~ = (2 pi)^-n dp dq.

    Tuned to integrands carrying exp(-kappa |z|^2 / lam); the Gaussian
    compensation is folded into the weights.
    """
    rule = numkit.tensor_gauss_hermite(order, 2 * n)
    y = rule.nodes
    # |z|^2 kappa / lam = |y|^2  =>  z = sqrt(lam / kappa) (u + i v)
    s = np.sqrt(lam / kappa)
    z = s * (y[:, :n] + 1j * y[:, n:])
    # dmu~ = dmu_lam = (2 pi lam)^-n dx dy, dx dy = s^2 du dv
    w = rule.weights * np.exp(np.sum(y * y, axis=1)) * (s * s / (2 * np.pi * lam)) ** n
    return z, w


def opvalued_quantize(blocks: dict, dim_v: int, N: int, lam: float) -> OperatorMatrix:
    """Blockwise W0 of an End(V)-valued polynomial symbol {(a, b): PolySymbol}."""
    from .operators import block_from
    n = next(iter(blocks.values())).n
    mats = {}
    for a in range(dim_v):
        for b in range(dim_v):
            f = blocks.get((a, b))
            mats[(a, b)] = (weyl_quantize_poly(f, N, lam) if f is not None
                            else OperatorMatrix(np.zeros((numkit.count(n, N),) * 2, dtype=complex),
                                                "hermite", N, n, lam))
    return block_from(mats, dim_v)
