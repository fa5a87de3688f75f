"""Berezin calculus on the Fock space F0.

Symbols are functions of (z, zbar). The Berezin symbol of a truncated matrix
is a Gaussian-polynomial symbol with width kappa = 1/(2 lam); the Berezin
symbol of a polynomial differential operator is an exact polynomial.
"""

from __future__ import annotations

import numpy as np

from . import numkit
from .fock import norm_sq, sb_phases
from .heisenberg import HeisCoadjPoint
from .operators import DiffOp, OperatorMatrix
from .polysym import GaussPolySymbol, PolySymbol
from . import weyl


def phi_lambda(z, lam: float) -> HeisCoadjPoint:
    """sum Re z_k X_k* + Im z_k Y_k* + lam Z*."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    return HeisCoadjPoint(z.real, z.imag, lam)


def _keys(n: int, N: int):
    return [tuple(int(x) for x in a) for a in numkit.multi_indices(n, N)]


def berezin_symbol0(A, lam: float | None = None):
    """S0(A)(z) = <A e_z, e_z> / <e_z, e_z>.

    * Fock-basis OperatorMatrix: GaussPolySymbol with coefficients
      A[a, b] / sqrt(|z^a|^2 |z^b|^2) on z^a zbar^b, width 1/(2 lam).
    * DiffOp sum c z^a d^b: the polynomial sum c z^a (zbar / 2 lam)^b.
    """
    if isinstance(A, DiffOp):
        if lam is None:
            raise ValueError("lam is required for a differential operator")
        coeffs = {}
        for (a, b), c in A.terms.items():
            coeffs[(a, b)] = coeffs.get((a, b), 0) + c * (2 * lam) ** (-sum(b))
        return PolySymbol(A.n, coeffs)
    if A.basis != "fock" or A.dim_v != 1:
        raise ValueError("expected a scalar Fock-basis operator")
    keys = _keys(A.n, A.N)
    s = np.sqrt(norm_sq(A.n, A.N, A.lam))
    C = A.data / np.outer(s, s)
    rows, cols = np.nonzero(C)
    coeffs = {(keys[i], keys[j]): complex(C[i, j]) for i, j in zip(rows, cols)}
    return GaussPolySymbol(PolySymbol(A.n, coeffs), 1.0 / (2 * A.lam))


def berezin_transform0(f, lam: float):
    """B0 = exp(lam Delta / 2), exact on polynomials and on Gaussian-polynomial symbols."""
    if isinstance(f, (PolySymbol, GaussPolySymbol)):
        return f.heat(lam / 2)
    raise TypeError(f"unsupported symbol {type(f).__name__}")


def berezin_transform0_integral(f, z, lam: float, order: int = 30) -> np.ndarray:
    """B0 f(z) = int f(w) exp(-|z - w|^2 / 2 lam) dmu_lam(w) by tensor quadrature."""
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    out = np.empty(len(z), dtype=complex)
    for i, zi in enumerate(z):
        pts, w = numkit.complex_gaussian_rule(order, z.shape[1], lam, center=zi)
        out[i] = np.sum(w * f(pts))
    return out


# ---------------------------------------------------------------------------
# the unitary part through the Weyl calculus
# ---------------------------------------------------------------------------

def fock_op_to_hermite(op: DiffOp, lam: float) -> DiffOp:
    """B0^-1 op B0 as a Schrodinger-side differential operator.

    Under B0, z_k becomes -i (lam x_k - d_k) and d/dz_k becomes
    i (x_k / 2 + d_k / (2 lam)).
    """
    n = op.n
    zs = [DiffOp.var(n, k, -1j * lam) + DiffOp.deriv(n, k, 1j) for k in range(n)]
    ds = [DiffOp.var(n, k, 0.5j) + DiffOp.deriv(n, k, 0.5j / lam) for k in range(n)]
    out = DiffOp(n, {})
    for (a, b), c in op.terms.items():
        term = DiffOp.scalar(n, c)
        for k in range(n):
            for _ in range(a[k]):
                term = term @ zs[k]
        for k in range(n):
            for _ in range(b[k]):
                term = term @ ds[k]
        out = out + term
    return out


def hermite_conjugate(A: OperatorMatrix) -> OperatorMatrix:
    """B0^-1 A B0 using the exact diagonal form B0 h_a = i^|a| e_a."""
    if A.basis != "fock":
        raise ValueError("expected a Fock-basis operator")
    ph = np.repeat(sb_phases(A.N, A.n), A.dim_v)
    data = np.conj(ph)[:, None] * A.data * ph[None, :]
    return OperatorMatrix(data, "hermite", A.N, A.n, A.lam, A.dim_v)


def u0_via_weyl(A, lam: float | None = None):
    """U0(A) = W0^-1(B0^-1 A B0) o j^-1, as a function of (z, zbar).

    DiffOp input gives an exact PolySymbol. Matrix input gives a
    GaussPolySymbol of width 1/lam.
    """
    if isinstance(A, DiffOp):
        if lam is None:
            raise ValueError("lam is required for a differential operator")
        sch = fock_op_to_hermite(A, lam)
        return weyl.weyl_symbol_of_op(sch).to_complex(lam)
    H = hermite_conjugate(A)
    return weyl.wigner_dequantize(H).to_gauss()


def u0_values(A: OperatorMatrix, z) -> np.ndarray:
    """U0(A) evaluated at points z (shape (P, n)) without building the symbol."""
    H = hermite_conjugate(A)
    return weyl.wigner_values(H.data, z, A.n, A.N, A.lam)


def u0_from_berezin(A, lam: float | None = None):
    """exp(-lam Delta / 4) S0(A), evaluated exactly.

    On polynomials this is a finite series. On Gaussian-polynomial symbols it
    uses the analytic continuation of the Gaussian convolution, which is an
    exact algebraic identity (width 1/(2 lam) -> 1/lam) and serves only as an
    independent cross-check of :func:`u0_via_weyl`.
    """
    if isinstance(A, DiffOp):
        return berezin_symbol0(A, lam).heat(-lam / 4)
    return berezin_symbol0(A).heat(-A.lam / 4)
