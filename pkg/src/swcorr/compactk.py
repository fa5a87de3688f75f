"""The compact factor K, its representation rho on V, and the orbit calculus.

Three choices are supported:

* ``trivial``: K = {I}, V = C; the motion group is the Heisenberg group itself;
* ``torus``:   K = U(1)^n (diagonal unitaries), V = C, rho(diag e^{i theta}) = e^{i m.theta};
* ``su2``:     K = SU(2) in U(2), V the spin-j representation of dimension 2j + 1.

k* is handled through coordinates against a fixed basis of k: iE_kk for the
torus and A_a = (i/2) sigma_a for su(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.linalg import expm, logm

from . import numkit

PAULI = np.array([[[0, 1], [1, 0]],
                  [[0, -1j], [1j, 0]],
                  [[1, 0], [0, -1]]], dtype=complex)


class MembershipError(ValueError):
    pass


def spin_matrices(j: float) -> np.ndarray:
    """J_1, J_2, J_3 on the basis |j, j>, |j, j-1>, ..., |j, -j>."""
    d = int(round(2 * j)) + 1
    m = j - np.arange(d)
    Jp = np.zeros((d, d), dtype=complex)
    for i in range(1, d):
        Jp[i - 1, i] = np.sqrt(j * (j + 1) - m[i] * (m[i] + 1))
    Jm = Jp.conj().T
    return np.array([(Jp + Jm) / 2, (Jp - Jm) / 2j, np.diag(m).astype(complex)])


@dataclass(frozen=True)
class CompactChoice:
    kind: str
    n: int
    m: tuple = ()
    j: float = 0.0

    @classmethod
    def trivial(cls, n: int) -> "CompactChoice":
        return cls("trivial", n)

    @classmethod
    def torus(cls, m) -> "CompactChoice":
        m = tuple(int(x) for x in np.atleast_1d(m))
        return cls("torus", len(m), m=m)

    @classmethod
    def su2(cls, j: float) -> "CompactChoice":
        if j < 0 or abs(2 * j - round(2 * j)) > 1e-12:
            raise ValueError("spin must be a non-negative half-integer")
        return cls("su2", 2, j=float(j))

    @property
    def dim_v(self) -> int:
        return int(round(2 * self.j)) + 1 if self.kind == "su2" else 1

    @property
    def degenerate(self) -> bool:
        """True when the orbit is a single point."""
        return self.kind != "su2" or self.j == 0

    # -- Lie algebra ------------------------------------------------------------
    @cached_property
    def basis(self) -> np.ndarray:
        if self.kind == "trivial":
            return np.zeros((0, self.n, self.n), dtype=complex)
        if self.kind == "torus":
            out = np.zeros((self.n, self.n, self.n), dtype=complex)
            for k in range(self.n):
                out[k, k, k] = 1j
            return out
        return 0.5j * PAULI

    def coords(self, A) -> np.ndarray:
        """Coordinates of A in k against the fixed basis."""
        A = np.asarray(A, dtype=complex)
        if self.kind == "trivial":
            return np.zeros(0)
        if self.kind == "torus":
            return np.diag(A).imag.copy()
        # tr((i/2) sigma_a sigma_b) = i delta_ab
        return np.real(-1j * np.einsum("aij,ji->a", PAULI, A))

    def from_coords(self, x) -> np.ndarray:
        if self.kind == "trivial":
            return np.zeros((self.n, self.n), dtype=complex)
        return np.einsum("a,aij->ij", np.asarray(x, dtype=float), self.basis)

    def check_algebra(self, A, tol: float = 1e-12):
        A = np.asarray(A, dtype=complex)
        if np.max(np.abs(A + A.conj().T)) > tol:
            raise MembershipError("not anti-Hermitian")
        if self.kind == "torus" and np.max(np.abs(A - np.diag(np.diag(A)))) > tol:
            raise MembershipError("not diagonal")
        if self.kind == "trivial" and np.max(np.abs(A)) > tol:
            raise MembershipError("the trivial group has a zero Lie algebra")
        if self.kind == "su2" and abs(np.trace(A)) > tol:
            raise MembershipError("not traceless")

    def check_group(self, k, tol: float = 1e-12):
        k = np.asarray(k, dtype=complex)
        if np.max(np.abs(k @ k.conj().T - np.eye(self.n))) > tol:
            raise MembershipError("not unitary")
        if self.kind == "torus" and np.max(np.abs(k - np.diag(np.diag(k)))) > tol:
            raise MembershipError("not diagonal")
        if self.kind == "trivial" and np.max(np.abs(k - np.eye(self.n))) > tol:
            raise MembershipError("not the identity")
        if self.kind == "su2" and abs(np.linalg.det(k) - 1) > tol:
            raise MembershipError("determinant is not 1")

    def random_algebra(self, rng, scale: float = 1.0) -> np.ndarray:
        return self.from_coords(rng.uniform(-scale, scale, len(self.basis)))

    def random_group(self, rng) -> np.ndarray:
        if self.kind == "trivial":
            return np.eye(self.n, dtype=complex)
        if self.kind == "torus":
            return np.diag(np.exp(1j * rng.uniform(-np.pi, np.pi, self.n)))
        q = rng.normal(size=4)
        q /= np.linalg.norm(q)
        a, b = q[0] + 1j * q[1], q[2] + 1j * q[3]
        return np.array([[a, -np.conj(b)], [b, np.conj(a)]])

    def log(self, k) -> np.ndarray:
        """A logarithm of k inside k (projected to remove round-off)."""
        k = np.asarray(k, dtype=complex)
        if self.kind == "trivial":
            return np.zeros((self.n, self.n), dtype=complex)
        if self.kind == "torus":
            return np.diag(1j * np.angle(np.diag(k)))
        A = logm(k)
        A = (A - A.conj().T) / 2
        return A - np.trace(A) / 2 * np.eye(2)

    # -- representation ---------------------------------------------------------
    @cached_property
    def _spin(self) -> np.ndarray:
        return spin_matrices(self.j)

    def drho(self, A) -> np.ndarray:
        """drho(A); on the basis A_a the su(2) images are i J_a."""
        if self.kind == "trivial":
            return np.zeros((1, 1), dtype=complex)
        if self.kind == "torus":
            return np.array([[1j * float(np.dot(self.m, self.coords(A)))]])
        return 1j * np.einsum("a,aij->ij", self.coords(A), self._spin)

    def rho(self, k) -> np.ndarray:
        k = np.asarray(k, dtype=complex)
        if self.kind == "trivial":
            return np.ones((1, 1), dtype=complex)
        if self.kind == "torus":
            return np.array([[np.prod(np.diag(k) ** np.array(self.m))]])
        if np.max(np.abs(k + np.eye(2))) < 1e-9:
            return (-1) ** int(round(2 * self.j)) * np.eye(self.dim_v, dtype=complex)
        return expm(self.drho(self.log(k)))

    # -- coadjoint orbit ----------------------------------------------------------
    def ad_star_matrix(self, k) -> np.ndarray:
        """M with Ad*(k) phi = M @ phi in coordinates: <Ad*(k) phi, A> = <phi, k^-1 A k>."""
        k = np.asarray(k, dtype=complex)
        ki = k.conj().T
        return np.array([self.coords(ki @ Aa @ k) for Aa in self.basis])

    def ad_star(self, k, phi) -> np.ndarray:
        return self.ad_star_matrix(k) @ np.asarray(phi, dtype=float)

    @cached_property
    def phi0(self) -> np.ndarray:
        if self.kind == "trivial":
            return np.zeros(0)
        if self.kind == "torus":
            return np.array(self.m, dtype=float)
        return np.array([0.0, 0.0, self.j])

    @cached_property
    def v_hw(self) -> np.ndarray:
        v = np.zeros(self.dim_v, dtype=complex)
        v[0] = 1
        return v

    def section(self, phi) -> np.ndarray:
        """A fixed representative k with Ad*(k) phi0 = phi (axis-angle from the north pole)."""
        phi = np.asarray(phi, dtype=float)
        if self.degenerate:
            return np.eye(self.n, dtype=complex)
        r = np.linalg.norm(phi)
        theta = np.arccos(np.clip(phi[2] / r, -1, 1))
        varphi = np.arctan2(phi[1], phi[0])
        return expm(-0.5j * varphi * PAULI[2]) @ expm(-0.5j * theta * PAULI[1])

    def orbit_point(self, k) -> "OrbitPoint":
        k = np.asarray(k, dtype=complex)
        return OrbitPoint(self.ad_star(k, self.phi0), k)

    def point(self, phi) -> "OrbitPoint":
        return OrbitPoint(np.asarray(phi, dtype=float), self.section(phi))

    def coherent_state(self, pt: "OrbitPoint") -> np.ndarray:
        """rho(k) v_hw for the stored representative."""
        return self.rho(pt.k) @ self.v_hw

    def random_point(self, rng) -> "OrbitPoint":
        return self.orbit_point(self.random_group(rng))

    def orbit_quadrature(self, order: int | None = None) -> "OrbitQuadrature":
        """K-invariant rule with total mass 1 (rescaled later by the calibration)."""
        if self.degenerate:
            return OrbitQuadrature([self.orbit_point(np.eye(self.n))], np.ones(1))
        if order is None:
            order = int(round(2 * self.j)) + 3
        x, wx = np.polynomial.legendre.leggauss(order)
        nphi = 2 * order + 1
        phis = 2 * np.pi * np.arange(nphi) / nphi
        pts, ws = [], []
        for xi, wi in zip(x, wx):
            for ph in phis:
                phi = self.j * np.array([np.sqrt(1 - xi * xi) * np.cos(ph),
                                         np.sqrt(1 - xi * xi) * np.sin(ph), xi])
                pts.append(self.point(phi))
                ws.append(wi / 2 / nphi)
        return OrbitQuadrature(pts, np.array(ws))


@dataclass(frozen=True, eq=False)
class OrbitPoint:
    phi: np.ndarray
    k: np.ndarray


@dataclass(frozen=True, eq=False)
class OrbitQuadrature:
    points: list
    weights: np.ndarray


@dataclass(frozen=True, eq=False)
class OrbitSymbol:
    """The function phi -> <B e_phi, e_phi> / <e_phi, e_phi>, stored through B."""
    choice: CompactChoice
    pre: np.ndarray

    def __call__(self, pt: OrbitPoint) -> complex:
        v = self.choice.coherent_state(pt)
        return complex(np.conj(v) @ self.pre @ v / np.vdot(v, v).real)

    def values(self, pts) -> np.ndarray:
        return np.array([self(p) for p in pts])


def small_symbol(choice: CompactChoice, B) -> OrbitSymbol:
    return OrbitSymbol(choice, np.asarray(B, dtype=complex))


def symbol_samples(choice: CompactChoice, pts) -> np.ndarray:
    """Rows: points; columns: s(E_ab) in row-major (a, b) order."""
    d = choice.dim_v
    out = np.empty((len(pts), d * d), dtype=complex)
    for i, p in enumerate(pts):
        v = choice.coherent_state(p)
        out[i] = np.outer(v, np.conj(v)).T.ravel() / np.vdot(v, v).real
    return out


@dataclass(frozen=True, eq=False)
class OrbitCalculus:
    """s, b = s*s and w = s b^-1/2 on End(V) for a K-invariant orbit measure nu.

    nu is calibrated to total mass dim V, which makes w(I) = 1.
    """
    choice: CompactChoice
    quad: OrbitQuadrature
    gram: np.ndarray

    @classmethod
    def build(cls, choice: CompactChoice, order: int | None = None) -> "OrbitCalculus":
        quad = choice.orbit_quadrature(order)
        d = choice.dim_v
        # calibration: total mass dim V
        quad = OrbitQuadrature(quad.points, quad.weights * d / quad.weights.sum())
        S = symbol_samples(choice, quad.points)
        # T[ab, cd] = int s(E_cd) conj(s(E_ab)) dnu
        gram = (S.conj() * quad.weights[:, None]).T @ S
        return cls(choice, quad, gram)

    @cached_property
    def inv_sqrt(self) -> np.ndarray:
        return numkit.psd_inv_sqrt(self.gram)

    def b(self, B) -> np.ndarray:
        """b on End(V): the preimage of the transformed symbol."""
        d = self.choice.dim_v
        return (self.gram @ np.asarray(B, dtype=complex).ravel()).reshape(d, d)

    def w_pre(self, B) -> np.ndarray:
        """b^-1/2 B, so that w(B) = s(w_pre(B))."""
        d = self.choice.dim_v
        return (self.inv_sqrt @ np.asarray(B, dtype=complex).ravel()).reshape(d, d)

    def w(self, B) -> OrbitSymbol:
        return small_symbol(self.choice, self.w_pre(B))

    def w_inverse(self, f: OrbitSymbol) -> np.ndarray:
        """w^-1 on Sy(o): the matrix C with w(C) = f."""
        d = self.choice.dim_v
        return (np.linalg.solve(self.inv_sqrt, f.pre.ravel())).reshape(d, d)

    def w_samples_polar(self) -> np.ndarray:
        """w(E_ab) at the quadrature nodes via the unitary polar factor (second path)."""
        S = symbol_samples(self.choice, self.quad.points)
        sw = np.sqrt(self.quad.weights)[:, None]
        Q, R = np.linalg.qr(sw * S)
        return Q @ numkit.polar_unitary(R) / sw

    def integrate(self, values) -> complex:
        return complex(np.sum(self.quad.weights * np.asarray(values)))

    def transform_kernel(self, psi: OrbitPoint, phi: OrbitPoint) -> float:
        """|<e_psi, e_phi>|^2 for unit coherent states."""
        a = self.choice.coherent_state(psi)
        b = self.choice.coherent_state(phi)
        return float(abs(np.vdot(b, a)) ** 2)

    def b_integral(self, f, psi: OrbitPoint) -> complex:
        """b(f)(psi) = int f(phi) |<e_psi, e_phi>|^2 dnu(phi) by the orbit rule."""
        vals = [f(p) * self.transform_kernel(psi, p) for p in self.quad.points]
        return self.integrate(vals)
