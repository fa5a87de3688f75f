"""Stratonovich-Weyl maps for the motion group and their verification harness.

Two maps are assembled from the scalar and compact pieces:

* Fock side:        U(A)(z, phi)      = sum_ab U0(A_ab)(z) w(E_ab)(phi),
* Schrodinger side: W^-1(A)(p, q, phi) = sum_ab W0^-1(A_ab)(p, q) w(E_ab)(phi),

where A = sum_ab A_ab (x) E_ab. Both are evaluated pointwise on tensor grids.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from . import heisenberg, numkit, weyl
from .berezin0 import (berezin_symbol0, berezin_transform0, hermite_conjugate, u0_from_berezin,
                       u0_via_weyl)
from .compactk import CompactChoice, OrbitCalculus, OrbitPoint, small_symbol
from .fock import coherent_coeffs
from .heisenberg import pi0_matrix, sigma0_matrix
from .motion import (MotionAlgElement, MotionGroupElement, SplitOp, act_fock, big_phi_inverse,
                     dpi_op, dsigma_op, pi_matrix, sigma_matrix)
from .operators import OperatorMatrix, rank_one

SCHEMA = "swcorr.report/1"


# ---------------------------------------------------------------------------
# symbols on C^n x o(phi0)
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiberSymbol:
    """F(z, phi) = sum_ab F_ab(z) w(E_ab)(phi), stored through the scalar block functions.

    ``blocks(z)`` returns an array of shape (P, d, d) for points z of shape (P, n).
    Points are always complex; Schrodinger-side symbols are read through j(p, q).
    """
    blocks: object
    calc: OrbitCalculus

    def fiber_values(self, z) -> np.ndarray:
        return self.blocks(np.atleast_2d(np.asarray(z, dtype=complex)))

    def values(self, z, pts) -> np.ndarray:
        """Grid of values, shape (P, Q)."""
        F = self.fiber_values(z)
        d = self.calc.choice.dim_v
        vs = np.array([self.calc.choice.coherent_state(p) for p in pts])       # (Q, d)
        # w(F)(phi) = <w_pre(F) e, e>
        pre = (F.reshape(len(F), d * d) @ self.calc.inv_sqrt.T).reshape(len(F), d, d)
        return np.einsum("qa,pab,qb->pq", np.conj(vs), pre, vs)

    def __call__(self, z, pt: OrbitPoint) -> complex:
        return complex(self.values(np.atleast_2d(z), [pt])[0, 0])


def _block_eval(A: OperatorMatrix, evaluator) -> object:
    d = A.dim_v
    blocks = [[A.block(a, b) for b in range(d)] for a in range(d)]

    def f(z):
        out = np.empty((len(z), d, d), dtype=complex)
        for a in range(d):
            for b in range(d):
                out[:, a, b] = evaluator(blocks[a][b], z)
        return out
    return f


@dataclass(frozen=True, eq=False)
class SWMap:
    """Operator-to-symbol map on one side ("fock" or "schrodinger")."""
    side: str
    choice: CompactChoice
    lam: float
    calc: OrbitCalculus

    @classmethod
    def build(cls, side: str, choice: CompactChoice, lam: float,
              orbit_order: int | None = None) -> "SWMap":
        if side not in ("fock", "schrodinger"):
            raise ValueError(side)
        return cls(side, choice, lam, OrbitCalculus.build(choice, orbit_order))

    def __call__(self, A) -> FiberSymbol:
        if isinstance(A, SplitOp):
            return self._split(A)
        want = "fock" if self.side == "fock" else "hermite"
        if A.basis != want:
            raise ValueError(f"{self.side} map expects a {want}-basis operator")
        if self.side == "fock":
            ev = lambda blk, z: weyl.wigner_values(hermite_conjugate(blk).data, z, blk.n, blk.N, blk.lam)
        else:
            ev = lambda blk, z: weyl.wigner_values(blk.data, z, blk.n, blk.N, blk.lam)
        return FiberSymbol(_block_eval(A, ev), self.calc)

    def _split(self, A: SplitOp) -> FiberSymbol:
        """Exact symbol of D (x) I + I (x) R."""
        lam = self.lam
        if self.side == "fock":
            poly = u0_via_weyl(A.scalar, lam)
            scalar = lambda z: poly(z)
        else:
            sym = weyl.weyl_symbol_of_op(A.scalar)
            scalar = lambda z: sym(*weyl.j_inverse(z, lam))
        d = A.dim_v
        R = A.fiber

        def f(z):
            out = np.broadcast_to(R, (len(z), d, d)).astype(complex)
            out = out + scalar(z)[:, None, None] * np.eye(d)
            return out
        return FiberSymbol(f, self.calc)

    def act(self, g: MotionGroupElement, z, pt: OrbitPoint):
        """g . (z, phi); on the Schrodinger side z stands for j(p, q)."""
        return act_fock(g, z, self.lam), self.choice.orbit_point(g.k @ pt.k)

    def represent(self, g: MotionGroupElement, N: int, order: int = 60) -> OperatorMatrix:
        if self.side == "fock":
            return pi_matrix(g, N, self.lam, self.choice)
        return sigma_matrix(g, N, self.lam, self.choice, order=order)

    def rank_one(self, N: int, i: int, j: int) -> OperatorMatrix:
        basis = "fock" if self.side == "fock" else "hermite"
        return rank_one(basis, N, self.choice.n, self.lam, i, j, self.choice.dim_v)

    def derived(self, X: MotionAlgElement) -> SplitOp:
        if self.side == "fock":
            return dpi_op(X, self.lam, self.choice)
        return dsigma_op(X, self.lam, self.choice)

    def random_group(self, rng, scale: float = 1.0) -> MotionGroupElement:
        return MotionGroupElement.random(self.choice, rng, scale)

    def group_coords(self, g: MotionGroupElement) -> np.ndarray:
        return np.concatenate([g.z0.real, g.z0.imag, [g.c0], g.k.real.ravel(), g.k.imag.ravel()])

    def algebra_basis(self) -> list:
        return MotionAlgElement.basis(self.choice)

    def derived_matrix(self, X: MotionAlgElement, N: int) -> OperatorMatrix:
        basis = "fock" if self.side == "fock" else "hermite"
        return self.derived(X).matrix(basis, N, self.lam)

    def random_point(self, rng) -> OrbitPoint:
        return self.choice.random_point(rng)

    def orbit_gram(self) -> np.ndarray:
        """int w(E_ab) w(E_cd) dnu over the orbit rule, shape (d^2, d^2)."""
        d = self.choice.dim_v
        pts, nu = self.calc.quad.points, self.calc.quad.weights
        E = np.eye(d * d).reshape(d * d, d, d)
        Wv = np.array([self.calc.w(e).values(pts) for e in E])            # (d^2, Q)
        return (Wv * nu) @ Wv.T


class _ScalarSymbol:
    def __init__(self, f):
        self._f = f

    def fiber_values(self, z) -> np.ndarray:
        return self._f(np.atleast_2d(np.asarray(z, dtype=complex)))[:, None, None]

    def values(self, z, pts) -> np.ndarray:
        v = self._f(np.atleast_2d(np.asarray(z, dtype=complex)))
        return np.repeat(v[:, None], len(pts), axis=1)


@dataclass(frozen=True, eq=False)
class ScalarSW:
    """The Heisenberg maps U0 (Fock) and W0^-1 (Schrodinger) behind the SWMap interface.

    Built only from the scalar modules; the orbit factor is a single point.
    With V trivial the motion-group harness must reproduce these numbers exactly.
    """
    side: str
    n: int
    lam: float

    @property
    def choice(self) -> CompactChoice:
        return CompactChoice.trivial(self.n)

    def __call__(self, A: OperatorMatrix) -> _ScalarSymbol:
        if self.side == "fock":
            H = hermite_conjugate(A)
        else:
            H = A
        return _ScalarSymbol(lambda z: weyl.wigner_values(H.data, z, A.n, A.N, A.lam))

    def rank_one(self, N: int, i: int, j: int) -> OperatorMatrix:
        basis = "fock" if self.side == "fock" else "hermite"
        return rank_one(basis, N, self.n, self.lam, i, j)

    def represent(self, g: heisenberg.HeisElement, N: int, order: int = 60) -> OperatorMatrix:
        if self.side == "fock":
            return pi0_matrix(g, N, self.lam)
        return sigma0_matrix(g, N, self.lam, order)

    def act(self, g: heisenberg.HeisElement, z, pt):
        return heisenberg.act_fock(g, z, self.lam), pt

    def random_group(self, rng, scale: float = 1.0) -> heisenberg.HeisElement:
        return heisenberg.HeisElement.random(self.n, rng, scale)

    def group_coords(self, g: heisenberg.HeisElement) -> np.ndarray:
        return np.concatenate([g.a, g.b, [g.c]])

    def algebra_basis(self) -> list:
        return heisenberg.HeisAlgElement.basis(self.n)

    def derived_matrix(self, X: heisenberg.HeisAlgElement, N: int) -> OperatorMatrix:
        if self.side == "fock":
            return heisenberg.dpi0_matrix(X, N, self.lam)
        return heisenberg.dsigma0_matrix(X, N, self.lam)

    def random_point(self, rng):
        return None

    def orbit_gram(self) -> np.ndarray:
        return np.ones((1, 1))


def fock_sw(A, choice: CompactChoice, lam: float) -> FiberSymbol:
    return SWMap.build("fock", choice, lam)(A)


def schrodinger_sw(A, choice: CompactChoice, lam: float) -> FiberSymbol:
    return SWMap.build("schrodinger", choice, lam)(A)


def schrodinger_values(sym: FiberSymbol, p, q, pts, lam: float) -> np.ndarray:
    """W^-1(A)(p, q, phi) on a grid."""
    return sym.values(weyl.j_map(np.atleast_2d(p), np.atleast_2d(q), lam), pts)


def dpi_symbol_closed_form(X: MotionAlgElement, z, pt: OrbitPoint, lam: float,
                           calc: OrbitCalculus) -> complex:
    """i c lam + w(drho(A)) + Tr(A)/2 + (i/2)(conj(a).z + a.conj(z)) - conj(z).(A z)/(2 lam)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    wA = calc.w(calc.choice.drho(X.A))(pt)
    return (1j * X.c * lam + wA + 0.5 * np.trace(X.A)
            + 0.5j * (np.dot(np.conj(X.a), z) + np.dot(X.a, np.conj(z)))
            - np.dot(np.conj(z), X.A @ z) / (2 * lam))


def dsigma_symbol_closed_form(X: MotionAlgElement, p, q, pt: OrbitPoint, lam: float,
                              calc: OrbitCalculus) -> complex:
    """The dpi closed form read at z = j(p, q)."""
    return dpi_symbol_closed_form(X, weyl.j_map(np.asarray(p, dtype=float),
                                                np.asarray(q, dtype=float), lam), pt, lam, calc)


def u_via_berezin(A: OperatorMatrix, calc: OrbitCalculus):
    """(exp(-lam Delta/4) (x) b^-1/2)(S0 (x) s) per block, for cross-checks.

    Returns a FiberSymbol built from the analytic continuation of the
    Gaussian heat flow, independent of the Wigner tables.
    """
    d = A.dim_v
    syms = [[u0_from_berezin(A.block(a, b)) for b in range(d)] for a in range(d)]

    def f(z):
        out = np.empty((len(z), d, d), dtype=complex)
        for a in range(d):
            for b in range(d):
                out[:, a, b] = syms[a][b](z)
        return out
    return FiberSymbol(f, calc)


# ---------------------------------------------------------------------------
# the big Berezin transform
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TensorSymbol:
    """sum_t f0_t (x) s(B_t) with f0_t a PolySymbol or GaussPolySymbol on C^n."""
    terms: tuple
    choice: CompactChoice

    def values(self, z, pts) -> np.ndarray:
        z = np.atleast_2d(np.asarray(z, dtype=complex))
        out = np.zeros((len(z), len(pts)), dtype=complex)
        for f0, B in self.terms:
            out += np.outer(f0(z), small_symbol(self.choice, B).values(pts))
        return out

    def __call__(self, z, pt: OrbitPoint) -> complex:
        return complex(self.values(z, [pt])[0, 0])


def big_berezin_tensor(f: TensorSymbol, calc: OrbitCalculus, lam: float) -> TensorSymbol:
    """B(f0 (x) f1) = B0(f0) (x) b(f1)."""
    return TensorSymbol(tuple((berezin_transform0(f0, lam), calc.b(B)) for f0, B in f.terms),
                        f.choice)


def big_berezin_kernel(f, z, psi: OrbitPoint, calc: OrbitCalculus, lam: float,
                       order: int = 30) -> complex:
    """int exp(-|z - w|^2 / 2 lam) |<e_psi, e_phi>|^2 f(w, phi) dmu_lam(w) dnu(phi)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    pts, wts = numkit.complex_gaussian_rule(order, len(z), lam, center=z)
    kern = np.array([calc.transform_kernel(psi, phi) for phi in calc.quad.points])
    vals = f.values(pts, calc.quad.points)
    return complex(wts @ vals @ (calc.quad.weights * kern))


def big_symbol_adjoint(f: TensorSymbol, N: int, calc: OrbitCalculus, lam: float,
                       order: int = 30) -> OperatorMatrix:
    """S* f = int f(z, phi) P_z (x) P_phi dmu_lam(z) dnu(phi) on the truncated Fock (x) V.

    P_z and P_phi are the normalized coherent projectors. Tensor terms are
    integrated factor by factor: Gaussian rule on C^n, orbit rule on o(phi0).
    """
    n, d = calc.choice.n, calc.choice.dim_v
    # f0 P_z carries exp(-|z|^2 / lam) for rank-one operator symbols
    z, wz = numkit.complex_gaussian_rule(order, n, lam, width=lam)
    C = coherent_coeffs(z, n, N, lam)                                   # (P, M)
    C = C / np.linalg.norm(C, axis=1)[:, None]
    comp = wz * np.exp(np.sum(np.abs(z) ** 2, axis=1) / lam)
    vs = np.array([calc.choice.coherent_state(p) for p in calc.quad.points])
    out = np.zeros((C.shape[1] * d, C.shape[1] * d), dtype=complex)
    for f0, B in f.terms:
        F0 = (C.T * (comp * f0(z))) @ C.conj()
        f1 = small_symbol(calc.choice, B).values(calc.quad.points)
        F1 = (vs.T * (calc.quad.weights * f1)) @ vs.conj()
        out += np.kron(F0, F1)
    return OperatorMatrix(out, "fock", N, n, lam, d)


def big_symbol_tensor(A: OperatorMatrix, choice: CompactChoice) -> TensorSymbol:
    """S(A) = sum_ab S0(A_ab) (x) s(E_ab)."""
    d = A.dim_v
    terms = []
    for a in range(d):
        for b in range(d):
            E = np.zeros((d, d), dtype=complex)
            E[a, b] = 1
            terms.append((berezin_symbol0(A.block(a, b)), E))
    return TensorSymbol(tuple(terms), choice)


# ---------------------------------------------------------------------------
# transfers to the coadjoint orbit
# ---------------------------------------------------------------------------

def orbit_transfer(sym: FiberSymbol, direction: str, lam: float):
    """tau_Phi (F -> F o Phi^-1) or tau_Psi (f -> f o Psi^-1), Psi = Phi o (j x 1).

    Both return functions of a CoadjointPoint. Schrodinger-side symbols are
    stored through j already, so tau_Psi only changes the reading of the chart.
    """
    choice = sym.calc.choice
    if direction not in ("phi", "psi"):
        raise ValueError(direction)

    def f(xi):
        z, phi = big_phi_inverse(xi, lam, choice)
        if direction == "psi":
            p, q = weyl.j_inverse(z, lam)
            z = weyl.j_map(p, q, lam)
        return sym(z, choice.point(phi))
    return f


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    residual: float
    tol: float
    passed: bool


@dataclass
class VerificationReport:
    suite: str
    params: dict
    checks: list = field(default_factory=list)

    def add(self, name: str, residual: float, tol: float) -> Check:
        residual = float(residual)
        c = Check(name, residual, float(tol), bool(residual <= tol))
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"schema": SCHEMA, "suite": self.suite, "params": self.params,
                "passed": self.passed, "checks": [asdict(c) for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(["suite", "check", "residual", "tol", "passed"])
        for c in self.checks:
            w.writerow([self.suite, c.name, f"{c.residual:.16e}", f"{c.tol:.16e}", int(c.passed)])
        return buf.getvalue()


# ---------------------------------------------------------------------------
# the Definition-1 axioms
# ---------------------------------------------------------------------------

def traciality_residual(sw, N: int, imax: int, order: int | None = None) -> float:
    """max |int W(A) W(B) - Tr(AB)| over rank-one A = |i><j|, B = |k><l| with indices <= imax.

    The rule is the tensor product of a phase-space Gauss-Hermite rule and the
    orbit rule. Symbols are sums of products, so the tensor sum is evaluated as
    a contraction of the two factor sums (same nodes, same weights).
    """
    n, d = sw.choice.n, sw.choice.dim_v
    if order is None:
        order = 2 * N + 8
    z, wz = weyl.phase_rule(order, n, sw.lam)
    m = imax + 1
    F = np.empty((m * m, len(z), d * d), dtype=complex)
    for i in range(m):
        for j in range(m):
            F[i * m + j] = sw(sw.rank_one(N, i, j)).fiber_values(z).reshape(len(z), d * d)
    orbit = sw.orbit_gram()
    phase = np.einsum("xpa,p,ypb->xayb", F, wz, F)
    G = np.einsum("xayb,ab->xy", phase, orbit)
    # Tr(|i><j| |k><l|) = delta_jk delta_il
    T = np.zeros((m, m, m, m))
    for i in range(m):
        for j in range(m):
            T[i, j, j, i] = 1
    return float(np.max(np.abs(G - T.reshape(m * m, m * m))))


def _random_hermitian(rng, m: int) -> np.ndarray:
    X = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    return X + X.conj().T


def reality_residual(sw, N: int, rng, npts: int = 8) -> float:
    n, d = sw.choice.n, sw.choice.dim_v
    size = numkit.count(n, N) * d
    m = min(size, 8)
    H = np.zeros((size, size), dtype=complex)
    H[:m, :m] = _random_hermitian(rng, m)
    A = OperatorMatrix(H, "fock" if sw.side == "fock" else "hermite", N, n, sw.lam, d)
    z = rng.normal(size=(npts, n)) + 1j * rng.normal(size=(npts, n))
    pts = [sw.random_point(rng) for _ in range(4)]
    return float(np.max(np.abs(sw(A).values(z, pts).imag)))


def covariance_residual(sw, N: int, rng, ngroup: int = 20, scale: float = 0.5,
                        order: int = 60, npts: int = 3) -> float:
    """max |W(R(g)^-1 A R(g))(x) - W(A)(g . x)| for rank-one A near the vacuum."""
    n, d = sw.choice.n, sw.choice.dim_v
    worst = 0.0
    for _ in range(ngroup):
        g = sw.random_group(rng, scale)
        i, j = rng.integers(0, min(4, numkit.count(n, N) * d), size=2)
        A = sw.rank_one(N, int(i), int(j))
        R = sw.represent(g, N, order)
        moved = R.adjoint() @ A @ R
        z = 0.6 * (rng.normal(size=(npts, n)) + 1j * rng.normal(size=(npts, n)))
        pt = sw.random_point(rng)
        lhs = sw(moved).values(z, [pt])[:, 0]
        gz, gpt = sw.act(g, z, pt)
        rhs = sw(A).values(gz, [gpt])[:, 0]
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def run_axiom_suite(side: str, choice: CompactChoice, lam: float = 1.0, N: int = 24,
                    seed: int = 0, imax: int = 6, order: int = 60, phase_order: int | None = None,
                    tol: dict | None = None) -> VerificationReport:
    tol = {"reality": 1e-8, "covariance": 1e-5, "traciality": 1e-5, **(tol or {})}
    rng = np.random.default_rng(seed)
    sw = SWMap.build(side, choice, lam)
    rep = VerificationReport(f"sw-axioms-{side}", {"side": side, "lambda": lam, "N": N,
                                                   "n": choice.n, "k": choice.kind,
                                                   "m": list(choice.m), "j": choice.j,
                                                   "seed": seed, "imax": imax})
    rep.add("reality", reality_residual(sw, N, rng), tol["reality"])
    rep.add("covariance", covariance_residual(sw, N, rng, order=order), tol["covariance"])
    n_small = 0
    while numkit.count(choice.n, n_small) * choice.dim_v <= imax:
        n_small += 1
    rep.add("traciality", traciality_residual(sw, n_small, imax, phase_order), tol["traciality"])
    return rep
