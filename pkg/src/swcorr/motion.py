"""The Heisenberg motion group G = H_n x| K.

Elements are ((z0, conj z0), c0, k), written here as (z0, c0, k), with

    (z, c, k)(z', c', k') = (z + k z', c + c' + omega(z, k z') / 2, k k'),
    omega((z, w), (z', w')) = (i/2)(z.w' - z'.w).

Fock model: (pi(g) f)(z) = exp(i lam c0 + (i/2) conj(z0).z - lam |z0|^2 / 4)
                            rho(k) f(k^-1 (z + i lam z0)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, lgamma

import numpy as np
from scipy.linalg import expm
from scipy import sparse

from . import numkit
from .berezin0 import berezin_symbol0, fock_op_to_hermite
from .compactk import CompactChoice, OrbitPoint, small_symbol
from .fock import segal_bargmann_matrix
from .heisenberg import HeisAlgElement, HeisElement, dsigma0_op, pi0_matrix, sigma0_matrix
from .operators import DiffOp, OperatorMatrix


def omega(u, v) -> complex:
    """omega((z, w), (z', w')) = (i/2)(z.w' - z'.w) on pairs of complex vectors."""
    (z, w), (zp, wp) = u, v
    return 0.5j * (np.dot(z, wp) - np.dot(zp, w))


def _is_identity(k) -> bool:
    return bool(np.array_equal(k, np.eye(k.shape[0])))


def _pair(z):
    z = np.asarray(z, dtype=complex)
    return (z, np.conj(z))


# ---------------------------------------------------------------------------
# group and algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MotionGroupElement:
    z0: np.ndarray
    c0: float
    k: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "z0", np.atleast_1d(np.asarray(self.z0, dtype=complex)))
        object.__setattr__(self, "c0", float(self.c0))
        object.__setattr__(self, "k", np.atleast_2d(np.asarray(self.k, dtype=complex)))
        if self.k.shape != (len(self.z0),) * 2:
            raise ValueError("k must be an n x n matrix")

    @property
    def n(self) -> int:
        return len(self.z0)

    @classmethod
    def identity(cls, n: int) -> "MotionGroupElement":
        return cls(np.zeros(n), 0.0, np.eye(n))

    @classmethod
    def random(cls, choice: CompactChoice, rng, scale: float = 1.0) -> "MotionGroupElement":
        n = choice.n
        z0 = rng.uniform(-scale, scale, n) + 1j * rng.uniform(-scale, scale, n)
        return cls(z0, rng.uniform(-scale, scale), choice.random_group(rng))

    @classmethod
    def from_heisenberg(cls, g: HeisElement) -> "MotionGroupElement":
        return cls(g.z, g.c, np.eye(g.n))

    def heisenberg_part(self) -> HeisElement:
        return HeisElement(self.z0.real, self.z0.imag, self.c0)

    def __mul__(self, other: "MotionGroupElement") -> "MotionGroupElement":
        return g_mul(self, other)

    def inverse(self) -> "MotionGroupElement":
        ki = self.k.conj().T
        return MotionGroupElement(-ki @ self.z0, -self.c0, ki)

    def close_to(self, other: "MotionGroupElement", tol: float = 1e-12) -> bool:
        return (np.allclose(self.z0, other.z0, atol=tol) and abs(self.c0 - other.c0) <= tol
                and np.allclose(self.k, other.k, atol=tol))


def g_mul(g: MotionGroupElement, h: MotionGroupElement) -> MotionGroupElement:
    if g.n != h.n:
        raise ValueError("dimension mismatch")
    kz = g.k @ h.z0
    # omega(z, kz') / 2 = (Re z . Im kz' - Im z . Re kz') / 2
    c = g.c0 + h.c0 + 0.5 * float(g.z0.real @ kz.imag - g.z0.imag @ kz.real)
    return MotionGroupElement(g.z0 + kz, c, g.k @ h.k)


@dataclass(frozen=True, eq=False)
class MotionAlgElement:
    a: np.ndarray
    c: float
    A: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", np.atleast_1d(np.asarray(self.a, dtype=complex)))
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "A", np.atleast_2d(np.asarray(self.A, dtype=complex)))

    @property
    def n(self) -> int:
        return len(self.a)

    @classmethod
    def basis(cls, choice: CompactChoice) -> list["MotionAlgElement"]:
        """Real basis: X_k (a = e_k), Y_k (a = i e_k), Z, then the k basis."""
        n = choice.n
        out = []
        for k in range(n):
            e = np.zeros(n, dtype=complex)
            e[k] = 1
            out.append(cls(e, 0.0, np.zeros((n, n))))
        for k in range(n):
            e = np.zeros(n, dtype=complex)
            e[k] = 1j
            out.append(cls(e, 0.0, np.zeros((n, n))))
        out.append(cls(np.zeros(n), 1.0, np.zeros((n, n))))
        for A in choice.basis:
            out.append(cls(np.zeros(n), 0.0, A))
        return out

    @classmethod
    def random(cls, choice: CompactChoice, rng, scale: float = 1.0) -> "MotionAlgElement":
        n = choice.n
        return cls(rng.uniform(-scale, scale, n) + 1j * rng.uniform(-scale, scale, n),
                   rng.uniform(-scale, scale), choice.random_algebra(rng, scale))

    def heisenberg_part(self) -> HeisAlgElement:
        return HeisAlgElement(self.a.real, self.a.imag, self.c)

    def __add__(self, other):
        return MotionAlgElement(self.a + other.a, self.c + other.c, self.A + other.A)

    def __mul__(self, t: float):
        return MotionAlgElement(t * self.a, t * self.c, t * self.A)

    __rmul__ = __mul__

    def bracket(self, other: "MotionAlgElement") -> "MotionAlgElement":
        """(A.w' - A'.w, omega(w, w'), [A, A']) with w = (a, conj a)."""
        a = self.A @ other.a - other.A @ self.a
        c = omega(_pair(self.a), _pair(other.a)).real
        return MotionAlgElement(a, c, self.A @ other.A - other.A @ self.A)

    def close_to(self, other, tol: float = 1e-12) -> bool:
        return (np.allclose(self.a, other.a, atol=tol) and abs(self.c - other.c) <= tol
                and np.allclose(self.A, other.A, atol=tol))


# ---------------------------------------------------------------------------
# complexification and the P+ K~c P- decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ComplexMotionElement:
    """((z, w), c, k) in G^c; K^c acts by k.(z, w) = (k z, (k^t)^-1 w)."""
    z: np.ndarray
    w: np.ndarray
    c: complex
    k: np.ndarray

    def __mul__(self, o: "ComplexMotionElement") -> "ComplexMotionElement":
        kz = self.k @ o.z
        kw = np.linalg.solve(self.k.T, o.w)
        c = self.c + o.c + 0.5 * omega((self.z, self.w), (kz, kw))
        return ComplexMotionElement(self.z + kz, self.w + kw, c, self.k @ o.k)

    @classmethod
    def from_real(cls, g: MotionGroupElement) -> "ComplexMotionElement":
        return cls(g.z0, np.conj(g.z0), complex(g.c0), g.k)

    def close_to(self, o, tol: float = 1e-12) -> bool:
        return (np.allclose(self.z, o.z, atol=tol) and np.allclose(self.w, o.w, atol=tol)
                and abs(self.c - o.c) <= tol and np.allclose(self.k, o.k, atol=tol))


def p_decompose(g: ComplexMotionElement):
    """g = ((z0, 0), 0, I) ((0, 0), c, k) ((0, k^t w0), 0, I) with c = c0 - (i/4) z0.w0.

    The P- factor carries k^t w0 so that the product reproduces g for any k.
    """
    n = len(g.z)
    zero = np.zeros(n, dtype=complex)
    eye = np.eye(n, dtype=complex)
    c = g.c - 0.25j * np.dot(g.z, g.w)
    return (ComplexMotionElement(g.z, zero, 0j, eye),
            ComplexMotionElement(zero, zero, c, g.k),
            ComplexMotionElement(zero, g.k.T @ g.w, 0j, eye))


def act_domain(g: MotionGroupElement, z) -> np.ndarray:
    """g . Z = log zeta(g exp Z) for Z = ((z, 0), 0, 0)."""
    n = g.n
    Z = ComplexMotionElement(np.asarray(z, dtype=complex), np.zeros(n, dtype=complex), 0j,
                             np.eye(n, dtype=complex))
    return p_decompose(ComplexMotionElement.from_real(g) * Z)[0].z


def section(z) -> MotionGroupElement:
    """g_Z = ((z, conj z), 0, I), which maps 0 to Z in the domain."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    return MotionGroupElement(z, 0.0, np.eye(len(z)))


def kernel_K(z, w, lam: float, dim_v: int) -> np.ndarray:
    """K(Z, W) = exp(lam z.conj(w) / 2) I_V."""
    return np.exp(lam * np.dot(z, np.conj(w)) / 2) * np.eye(dim_v)


def cocycle_J(g: MotionGroupElement, z, lam: float, choice: CompactChoice) -> np.ndarray:
    """J(g, Z) = exp(i lam c0 + (lam/2) conj(z0).(k z) + (lam/4)|z0|^2) rho(k)."""
    z = np.asarray(z, dtype=complex)
    e = 1j * lam * g.c0 + lam / 2 * np.dot(np.conj(g.z0), g.k @ z) + lam / 4 * np.sum(abs(g.z0) ** 2)
    return np.exp(e) * choice.rho(g.k)


# ---------------------------------------------------------------------------
# coadjoint action and moment map
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CoadjointPoint:
    """xi = (u, d, phi) with u = (u1, u2); <xi, (w, c, A)> = omega(u, w) + d c + <phi, A>."""
    u1: np.ndarray
    u2: np.ndarray
    d: float
    phi: np.ndarray

    def pair(self, X: MotionAlgElement, choice: CompactChoice) -> float:
        val = omega((self.u1, self.u2), _pair(X.a)) + self.d * X.c \
            + np.dot(self.phi, choice.coords(X.A))
        return float(np.real(val))

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.u1.real, self.u1.imag, self.u2.real, self.u2.imag,
                               [self.d], self.phi])

    def close_to(self, other, tol: float = 1e-10) -> bool:
        return bool(np.max(np.abs(self.as_array() - other.as_array())) <= tol)


def cross(v, u, choice: CompactChoice) -> np.ndarray:
    """Coordinates of v x u in k*: <v x u, A> = omega(u, A.v) with A.(z, w) = (A z, -A^t w)."""
    out = []
    for A in choice.basis:
        Av = (A @ v[0], -A.T @ v[1])
        out.append(np.real(omega(u, Av)))
    return np.array(out)


def g_coadjoint(g: MotionGroupElement, xi: CoadjointPoint, choice: CompactChoice) -> CoadjointPoint:
    """(k u - d v0, d, Ad*(k) phi + v0 x (k u - (d/2) v0)), v0 = (z0, conj z0)."""
    v0 = _pair(g.z0)
    ku = (g.k @ xi.u1, np.conj(g.k) @ xi.u2)
    u_new = (ku[0] - xi.d * v0[0], ku[1] - xi.d * v0[1])
    arg = (ku[0] - xi.d / 2 * v0[0], ku[1] - xi.d / 2 * v0[1])
    phi = choice.ad_star(g.k, xi.phi) + cross(v0, arg, choice)
    return CoadjointPoint(u_new[0], u_new[1], xi.d, phi)


def reach_generic(xi: CoadjointPoint) -> MotionGroupElement:
    """For d != 0, a g with Ad*(g) xi = (0, d, phi')."""
    if xi.d == 0:
        raise ValueError("orbit is not generic (d = 0)")
    n = len(xi.u1)
    return MotionGroupElement(xi.u1 / xi.d, 0.0, np.eye(n))


def big_phi(z, pt: OrbitPoint, lam: float, choice: CompactChoice) -> CoadjointPoint:
    """Phi(z, phi) = (i(-z, conj z), lam, phi - (1/2 lam) (z, conj z) x (z, conj z))."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    v = _pair(z)
    return CoadjointPoint(-1j * z, 1j * np.conj(z), lam, pt.phi - cross(v, v, choice) / (2 * lam))


def big_phi_inverse(xi: CoadjointPoint, lam: float, choice: CompactChoice):
    """(z, phi) with Phi(z, phi) = xi."""
    z = 1j * xi.u1
    v = _pair(z)
    return z, xi.phi + cross(v, v, choice) / (2 * lam)


def act_fock(g: MotionGroupElement, z, lam: float) -> np.ndarray:
    """g . z = k z - i lam z0."""
    return np.asarray(z, dtype=complex) @ g.k.T - 1j * lam * g.z0


def act_orbit(g: MotionGroupElement, z, pt: OrbitPoint, lam: float, choice: CompactChoice):
    """g . (z, phi) = (g . z, Ad*(k) phi)."""
    return act_fock(g, z, lam), choice.orbit_point(g.k @ pt.k)


# ---------------------------------------------------------------------------
# holomorphic polynomials: coefficient vectors on the raw monomials z^a, in
# graded multi-index order, truncated at total degree N
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _shift_matrices(n: int, N: int) -> tuple:
    """Multiplication by z_m on truncated coefficient vectors."""
    look = numkit.index_lookup(n, N)
    out = []
    for m in range(n):
        rows, cols = [], []
        for a, i in look.items():
            b = list(a)
            b[m] += 1
            j = look.get(tuple(b))
            if j is not None:
                rows.append(j)
                cols.append(i)
        out.append(sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(look),) * 2))
    return tuple(out)


def _monomial_images(L, shift, n: int, N: int) -> np.ndarray:
    """Column beta: coefficients of prod_l (L[l] . z + shift[l])^beta_l."""
    look = numkit.index_lookup(n, N)
    Z = _shift_matrices(n, N)
    mult = [shift[l] * sparse.identity(len(look), format="csr")
            + sum(L[l][m] * Z[m] for m in range(n)) for l in range(n)]
    C = np.zeros((len(look), len(look)), dtype=complex)
    C[0, 0] = 1
    # graded order: beta - e_l always precedes beta
    for beta, j in look.items():
        if j == 0:
            continue
        l = next(i for i, x in enumerate(beta) if x)
        prev = list(beta)
        prev[l] -= 1
        C[:, j] = mult[l] @ C[:, look[tuple(prev)]]
    return C


def _exp_multiplier(v, n: int, N: int) -> np.ndarray:
    """Multiplication by the Taylor polynomial of exp(v . z), truncated at degree N."""
    idx = numkit.multi_indices(n, N)
    D = idx[:, None, :] - idx[None, :, :]
    ok = np.all(D >= 0, axis=2)
    Dc = np.where(D >= 0, D, 0)
    inv_fact = np.array([1.0 / factorial(k) for k in range(N + 1)])
    v = np.asarray(v, dtype=complex)
    vals = np.prod(v[None, None, :] ** Dc * inv_fact[Dc], axis=2)
    return np.where(ok, vals, 0)


@lru_cache(maxsize=None)
def _log_factorials(n: int, N: int) -> np.ndarray:
    """log(alpha!) over the graded multi-indices."""
    return np.array([sum(lgamma(int(x) + 1) for x in a) for a in numkit.multi_indices(n, N)])


def _normalize(C: np.ndarray, n: int, N: int, lam: float | None = None) -> np.ndarray:
    """Raw-monomial matrix to the normalized monomial basis.

    Without ``lam`` the (2 lam)^|a|/2 weights cancel (degree-preserving maps).
    """
    lf = _log_factorials(n, N)
    out = C * np.exp(0.5 * (lf[:, None] - lf[None, :]))
    if lam is not None:
        deg = numkit.multi_indices(n, N).sum(axis=1)
        out = out * (2 * lam) ** ((deg[:, None] - deg[None, :]) / 2)
    return out


def tau_matrix(k, N: int, n: int, lam: float) -> OperatorMatrix:
    """tau(k) f(z) = f(k^-1 z) on normalized monomials (exact re-expansion)."""
    k = np.asarray(k, dtype=complex)
    kinv = k.conj().T
    if np.allclose(k, np.diag(np.diag(k))):
        idx = numkit.multi_indices(n, N)
        return OperatorMatrix(np.diag(np.prod(np.diag(kinv)[None, :] ** idx, axis=1)), "fock", N, n, lam)
    data = _normalize(_monomial_images(kinv, np.zeros(n), n, N), n, N)
    return OperatorMatrix(data, "fock", N, n, lam)


# ---------------------------------------------------------------------------
# Fock model
# ---------------------------------------------------------------------------

def pi_matrix(g: MotionGroupElement, N: int, lam: float, choice: CompactChoice,
              method: str = "product") -> OperatorMatrix:
    """pi(g) on F0 (x) V.

    ``product``: pi0(z0, c0) tau(k) (x) rho(k).
    ``direct``: Taylor coefficients of the closed-form action on each basis monomial.
    """
    if lam <= 0:
        raise ValueError("only lam > 0 is supported")
    choice.check_group(g.k, 1e-10)
    n = g.n
    R = choice.rho(g.k)
    if method == "product":
        P = pi0_matrix(g.heisenberg_part(), N, lam)
        if not _is_identity(g.k):
            P = P @ tau_matrix(g.k, N, n, lam)
        return P.kron(R)
    if method != "direct":
        raise ValueError(method)
    kinv = g.k.conj().T
    shift = 1j * lam * (kinv @ g.z0)
    pref = np.exp(1j * lam * g.c0 - lam / 4 * np.sum(abs(g.z0) ** 2))
    E = _exp_multiplier(0.5j * np.conj(g.z0), n, N)
    data = pref * _normalize(E @ _monomial_images(kinv, shift, n, N), n, N, lam)
    return OperatorMatrix(data, "fock", N, n, lam).kron(R)


@dataclass(frozen=True, eq=False)
class SplitOp:
    """D (x) I_V + I (x) R for a polynomial differential operator D and a matrix R on V."""
    scalar: DiffOp
    fiber: np.ndarray

    @property
    def dim_v(self) -> int:
        return self.fiber.shape[0]

    def matrix(self, basis: str, N: int, lam: float) -> OperatorMatrix:
        S = self.scalar.matrix(basis, N, lam)
        d = self.dim_v
        data = np.kron(S.data, np.eye(d)) + np.kron(np.eye(S.size), self.fiber)
        return OperatorMatrix(data, basis, N, S.n, lam, d)


def dtau_op(A) -> DiffOp:
    """d tau(A) = -(A z) . d_z on F0."""
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    op = DiffOp(n, {})
    for k in range(n):
        for l in range(n):
            if A[k, l] != 0:
                op = op + DiffOp.var(n, l, -A[k, l]) @ DiffOp.deriv(n, k)
    return op


def dpi_op(X: MotionAlgElement, lam: float, choice: CompactChoice) -> SplitOp:
    """i lam c + (i/2) conj(a).z + (i lam a - A z).d_z, plus I (x) drho(A)."""
    n = X.n
    op = DiffOp.scalar(n, 1j * lam * X.c)
    for k in range(n):
        op = op + DiffOp.var(n, k, 0.5j * np.conj(X.a[k])) + DiffOp.deriv(n, k, 1j * lam * X.a[k])
    op = op + dtau_op(X.A)
    return SplitOp(op, choice.drho(X.A))


def dpi_matrix(X: MotionAlgElement, N: int, lam: float, choice: CompactChoice) -> OperatorMatrix:
    return dpi_op(X, lam, choice).matrix("fock", N, lam)


# ---------------------------------------------------------------------------
# Schrodinger model
# ---------------------------------------------------------------------------

def dtau_tilde_op(A, lam: float) -> DiffOp:
    """(1/2 lam) sum a_kl d_k d_l + (1/2) sum a_kl (x_k d_l - x_l d_k) - (lam/2) x.(A x) + Tr(A)/2."""
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    op = DiffOp.scalar(n, 0.5 * np.trace(A))
    for k in range(n):
        for l in range(n):
            a = A[k, l]
            if a == 0:
                continue
            op = op + DiffOp.deriv(n, k, a / (2 * lam)) @ DiffOp.deriv(n, l)
            op = op + DiffOp.var(n, k, a / 2) @ DiffOp.deriv(n, l)
            op = op - DiffOp.var(n, l, a / 2) @ DiffOp.deriv(n, k)
            op = op - DiffOp.var(n, k, lam * a / 2) @ DiffOp.var(n, l)
    return op


def dtau_tilde_matrix(A, N: int, lam: float) -> OperatorMatrix:
    return dtau_tilde_op(A, lam).matrix("hermite", N, lam)


def tau_tilde_matrix(k, N: int, lam: float, choice: CompactChoice) -> OperatorMatrix:
    """exp(d tau~(log k)); d tau~ preserves the Hermite degree, so truncation is exact."""
    G = dtau_tilde_matrix(choice.log(k), N, lam)
    return G.like(expm(G.data))


def dsigma_op(X: MotionAlgElement, lam: float, choice: CompactChoice) -> SplitOp:
    """dsigma0(X0) (x) I + d tau~(A) (x) I + I (x) drho(A)."""
    op = dsigma0_op(X.heisenberg_part(), lam) + dtau_tilde_op(X.A, lam)
    return SplitOp(op, choice.drho(X.A))


def dsigma_matrix(X: MotionAlgElement, N: int, lam: float, choice: CompactChoice) -> OperatorMatrix:
    return dsigma_op(X, lam, choice).matrix("hermite", N, lam)


def dsigma_op_conjugated(X: MotionAlgElement, lam: float, choice: CompactChoice) -> SplitOp:
    """B^-1 dpi(X) B, computed symbolically."""
    sp = dpi_op(X, lam, choice)
    return SplitOp(fock_op_to_hermite(sp.scalar, lam), sp.fiber)


def sigma_matrix(g: MotionGroupElement, N: int, lam: float, choice: CompactChoice,
                 method: str = "product", order: int = 60) -> OperatorMatrix:
    """sigma(g) on L^2(R^n) (x) V.

    ``product``: sigma0(g0) tau~(k) (x) rho(k).
    ``conjugate``: B^-1 pi(g) B with B = B0 (x) I_V.
    """
    if method == "product":
        S = sigma0_matrix(g.heisenberg_part(), N, lam, order)
        if not _is_identity(g.k):
            S = S @ tau_tilde_matrix(g.k, N, lam, choice)
        return S.kron(choice.rho(g.k))
    if method != "conjugate":
        raise ValueError(method)
    P = pi_matrix(g, N, lam, choice)
    B = segal_bargmann_matrix(N, lam, g.n, order, choice.dim_v)
    return OperatorMatrix(B.data.conj().T @ P.data @ B.data, "hermite", N, g.n, lam, choice.dim_v)


# ---------------------------------------------------------------------------
# Berezin symbol on C^n x o(phi0)
# ---------------------------------------------------------------------------

def pre_symbol(A, z, lam: float | None = None) -> np.ndarray:
    """exp(-|z|^2 / 2 lam) E_z^* A E_z as a matrix on V."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if isinstance(A, SplitOp):
        s0 = berezin_symbol0(A.scalar, lam)(z[None])[0]
        return s0 * np.eye(A.dim_v) + A.fiber
    d = A.dim_v
    out = np.empty((d, d), dtype=complex)
    for a in range(d):
        for b in range(d):
            out[a, b] = berezin_symbol0(A.block(a, b))(z[None])[0]
    return out


def big_symbol(A, z, pt: OrbitPoint, choice: CompactChoice, lam: float | None = None) -> complex:
    """S(A)(z, phi) = s(S0(A)(z))(phi)."""
    return small_symbol(choice, pre_symbol(A, z, lam))(pt)


def big_symbol_of_pi(g: MotionGroupElement, z, pt: OrbitPoint, lam: float,
                     choice: CompactChoice) -> complex:
    """Closed form of S(pi(g))(z, phi)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    kinv = g.k.conj().T
    e = (1j * lam * g.c0 + 0.5j * np.dot(np.conj(g.z0), z) - lam / 4 * np.sum(abs(g.z0) ** 2)
         - np.sum(abs(z) ** 2) / (2 * lam) + np.dot(np.conj(z), kinv @ (z + 1j * lam * g.z0)) / (2 * lam))
    return np.exp(e) * small_symbol(choice, choice.rho(g.k))(pt)
