"""Truncated operator matrices and polynomial differential operators.

Two orthonormal bases share the graded multi-index set ``|alpha| <= N``:

* ``"hermite"``: products of scaled Hermite functions h_alpha on R^n,
* ``"fock"``: normalized monomials e_alpha(z) = z^alpha / sqrt((2 lam)^|alpha| alpha!).

Either may be tensored with a finite-dimensional space V; the composite
index is ``alpha * dim_v + a`` (``numpy.kron`` order, V innermost).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from . import numkit

BASES = ("hermite", "fock")


class BasisMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class OperatorMatrix:
    data: np.ndarray
    basis: str
    N: int
    n: int
    lam: float
    dim_v: int = 1

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        size = numkit.count(self.n, self.N) * self.dim_v
        if self.data.shape != (size, size):
            raise ValueError(f"data shape {self.data.shape} does not match basis size {size}")

    # -- algebra -----------------------------------------------------------
    def _check(self, other: "OperatorMatrix"):
        if (self.basis, self.N, self.n, self.dim_v) != (other.basis, other.N, other.n, other.dim_v):
            raise BasisMismatchError(
                f"{self.basis}/N={self.N}/n={self.n}/V={self.dim_v} vs "
                f"{other.basis}/N={other.N}/n={other.n}/V={other.dim_v}")
        if not np.isclose(self.lam, other.lam):
            raise BasisMismatchError(f"lam {self.lam} vs {other.lam}")

    def like(self, data) -> "OperatorMatrix":
        return OperatorMatrix(np.asarray(data, dtype=complex), self.basis, self.N, self.n,
                              self.lam, self.dim_v)

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            self._check(other)
            return self.like(self.data @ other.data)
        return self.data @ other

    def __add__(self, other: "OperatorMatrix"):
        self._check(other)
        return self.like(self.data + other.data)

    def __sub__(self, other: "OperatorMatrix"):
        self._check(other)
        return self.like(self.data - other.data)

    def __mul__(self, c):
        return self.like(c * self.data)

    __rmul__ = __mul__

    def __neg__(self):
        return self.like(-self.data)

    def adjoint(self) -> "OperatorMatrix":
        return self.like(self.data.conj().T)

    @property
    def H(self) -> "OperatorMatrix":
        return self.adjoint()

    def commutator(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self @ other - other @ self

    # -- blocks ------------------------------------------------------------
    def interior(self, margin: int = 4) -> np.ndarray:
        """Leading sub-matrix on basis vectors of degree <= N - margin."""
        m = numkit.count(self.n, self.N - margin) * self.dim_v
        return self.data[:m, :m]

    def block(self, a: int, b: int) -> "OperatorMatrix":
        """Scalar operator A_ab with A = sum_ab A_ab (x) E_ab."""
        d = self.dim_v
        return OperatorMatrix(self.data[a::d, b::d].copy(), self.basis, self.N, self.n, self.lam)

    def kron(self, small) -> "OperatorMatrix":
        """self (x) small, for a scalar operator self and a matrix on V."""
        if self.dim_v != 1:
            raise ValueError("kron expects a scalar-space operator")
        small = np.atleast_2d(np.asarray(small, dtype=complex))
        return OperatorMatrix(np.kron(self.data, small), self.basis, self.N, self.n,
                              self.lam, small.shape[0])

    def trace(self) -> complex:
        return complex(np.trace(self.data))

    @property
    def size(self) -> int:
        return self.data.shape[0]


def identity(basis: str, N: int, n: int, lam: float, dim_v: int = 1) -> OperatorMatrix:
    m = numkit.count(n, N) * dim_v
    return OperatorMatrix(np.eye(m, dtype=complex), basis, N, n, lam, dim_v)


def rank_one(basis: str, N: int, n: int, lam: float, i: int, j: int,
             dim_v: int = 1) -> OperatorMatrix:
    """The matrix unit |e_i><e_j| (composite indices)."""
    m = numkit.count(n, N) * dim_v
    data = np.zeros((m, m), dtype=complex)
    data[i, j] = 1.0
    return OperatorMatrix(data, basis, N, n, lam, dim_v)


def block_from(blocks: dict[tuple[int, int], OperatorMatrix], dim_v: int) -> OperatorMatrix:
    """Assemble sum_ab A_ab (x) E_ab from scalar blocks."""
    ref = next(iter(blocks.values()))
    m = ref.size
    data = np.zeros((m * dim_v, m * dim_v), dtype=complex)
    for (a, b), blk in blocks.items():
        data[a::dim_v, b::dim_v] = blk.data
    return OperatorMatrix(data, ref.basis, ref.N, ref.n, ref.lam, dim_v)


# ---------------------------------------------------------------------------
# polynomial differential operators
# ---------------------------------------------------------------------------

def _add_terms(dst: dict, key, c):
    if c == 0:
        return
    dst[key] = dst.get(key, 0) + c


@dataclass(frozen=True)
class DiffOp:
    """sum c * v^alpha d^beta with all multiplications to the left.

    On the Fock side v = z; on the Schrodinger side v = x.
    """
    n: int
    terms: dict = field(default_factory=dict)

    @classmethod
    def scalar(cls, n: int, c: complex) -> "DiffOp":
        return cls(n, {((0,) * n, (0,) * n): complex(c)})

    @classmethod
    def var(cls, n: int, k: int, c: complex = 1.0) -> "DiffOp":
        e = [0] * n
        e[k] = 1
        return cls(n, {(tuple(e), (0,) * n): complex(c)})

    @classmethod
    def deriv(cls, n: int, k: int, c: complex = 1.0) -> "DiffOp":
        e = [0] * n
        e[k] = 1
        return cls(n, {((0,) * n, tuple(e)): complex(c)})

    def __add__(self, other: "DiffOp") -> "DiffOp":
        out = dict(self.terms)
        for key, c in other.terms.items():
            _add_terms(out, key, c)
        return DiffOp(self.n, out)

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-1) * other

    def __mul__(self, c) -> "DiffOp":
        return DiffOp(self.n, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "DiffOp") -> "DiffOp":
        """Composition, re-normal-ordered with d^b v^a = sum C(b,j) a!/(a-j)! v^(a-j) d^(b-j)."""
        from math import comb, factorial
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                # move each d_k^{b1k} past v_k^{a2k}, coordinatewise
                per = []
                for k in range(self.n):
                    opts = []
                    for j in range(min(b1[k], a2[k]) + 1):
                        coef = comb(b1[k], j) * factorial(a2[k]) / factorial(a2[k] - j)
                        opts.append((j, coef))
                    per.append(opts)
                for choice in np.ndindex(*[len(p) for p in per]):
                    coef = c1 * c2
                    a = []
                    b = []
                    for k, ci in enumerate(choice):
                        j, cj = per[k][ci]
                        coef *= cj
                        a.append(a1[k] + a2[k] - j)
                        b.append(b1[k] - j + b2[k])
                    _add_terms(out, (tuple(a), tuple(b)), coef)
        return DiffOp(self.n, out)

    def degree(self) -> int:
        return max((sum(a) + sum(b) for a, b in self.terms), default=0)

    def matrix(self, basis: str, N: int, lam: float) -> OperatorMatrix:
        """Exact truncated matrix (entries computed on a padded basis, then cropped)."""
        n = self.n
        Np = N + self.degree()
        m = numkit.count(n, Np)
        if basis == "fock":
            V = [np.sqrt(2 * lam) * numkit.raising(n, Np, k) for k in range(n)]
            D = [numkit.lowering(n, Np, k) / np.sqrt(2 * lam) for k in range(n)]
        elif basis == "hermite":
            V = [(numkit.lowering(n, Np, k) + numkit.raising(n, Np, k)) / np.sqrt(2 * lam)
                 for k in range(n)]
            D = [np.sqrt(lam / 2) * (numkit.lowering(n, Np, k) - numkit.raising(n, Np, k))
                 for k in range(n)]
        else:
            raise ValueError(basis)
        total = sparse.csr_matrix((m, m), dtype=complex)
        eye = sparse.identity(m, dtype=complex, format="csr")
        for (a, b), c in self.terms.items():
            op = eye
            for k in range(n):
                for _ in range(a[k]):
                    op = op @ V[k]
            for k in range(n):
                for _ in range(b[k]):
                    op = op @ D[k]
            total = total + c * op
        keep = numkit.count(n, N)
        return OperatorMatrix(total.toarray()[:keep, :keep].astype(complex), basis, N, n, lam)
