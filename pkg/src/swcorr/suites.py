"""Named verification suites.

A suite maps a run configuration to a :class:`~swcorr.swc.VerificationReport`.
Every check draws from its own generator, seeded by (seed, check name), so a
check computes the same numbers in whichever suite it appears. Checks that
exist in both a scalar suite and a motion-group suite are evaluated through
one shared harness; with the trivial compact factor they agree bit for bit.

The configuration object needs ``lam``, ``n``, ``N``, ``quad_order``,
``seed``, ``choice()``, ``tol_for(name, default)`` and ``params()``.
"""

from __future__ import annotations

import zlib

import numpy as np
from scipy.linalg import expm, sqrtm

from . import berezin0, fock, heisenberg, motion, numkit, swc, weyl
from .compactk import small_symbol, symbol_samples
from .heisenberg import HeisAlgElement, HeisCoadjPoint, HeisElement
from .motion import CoadjointPoint, MotionAlgElement, MotionGroupElement, SplitOp
from .operators import DiffOp, OperatorMatrix, identity, rank_one
from .polysym import PolySymbol

# interior margin for group homomorphisms: coherent displacements leak far
# beyond one degree, and a margin of 12 keeps the leak below 1e-14 at N = 16
HOM_MARGIN = 12
# ladder and second-order operators leak by at most 2 degrees per factor
OP_MARGIN = 4
# rank-one indices for the Definition-1 traciality check
AXIOM_IMAX = 6


def check_rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


class _Suite:
    def __init__(self, name: str, cfg):
        self.cfg = cfg
        self.report = swc.VerificationReport(name, cfg.params())

    def rng(self, name: str):
        return check_rng(self.cfg.seed, name)

    def add(self, name: str, residual: float, tol: float):
        self.report.add(name, residual, self.cfg.tol_for(name, tol))


def _amax(x) -> float:
    x = np.asarray(x)
    return float(np.max(np.abs(x))) if x.size else 0.0


def _small_N(n: int, dim_v: int, imax: int) -> int:
    """Smallest truncation whose composite index range contains imax."""
    N = 0
    while numkit.count(n, N) * dim_v <= imax:
        N += 1
    return N


# ---------------------------------------------------------------------------
# shared harness (scalar models and motion-group models)
# ---------------------------------------------------------------------------

def _group_checks(s: _Suite, model):
    rng = s.rng("group.associativity")
    worst = 0.0
    for _ in range(100):
        g, h, k = (model.random_group(rng) for _ in range(3))
        worst = max(worst, _amax(model.group_coords((g * h) * k) - model.group_coords(g * (h * k))))
    s.add("group.associativity", worst, 1e-12)
    rng = s.rng("group.inverse")
    worst = 0.0
    for _ in range(20):
        g, h = model.random_group(rng), model.random_group(rng)
        worst = max(worst, _amax(model.group_coords(g * g.inverse() * h) - model.group_coords(h)),
                    _amax(model.group_coords(h * g.inverse() * g) - model.group_coords(h)))
    s.add("group.inverse", worst, 1e-12)


def _homomorphism(s: _Suite, model, prefix: str, npairs: int = 5):
    cfg = s.cfg
    name = f"{prefix}.homomorphism"
    rng = s.rng(name)
    worst = 0.0
    for _ in range(npairs):
        g = model.random_group(rng, 0.5)
        h = model.random_group(rng, 0.5)
        L = model.represent(g * h, cfg.N, cfg.quad_order)
        R = model.represent(g, cfg.N, cfg.quad_order) @ model.represent(h, cfg.N, cfg.quad_order)
        worst = max(worst, _amax(L.interior(HOM_MARGIN) - R.interior(HOM_MARGIN)))
    s.add(name, worst, 1e-6)


def _bracket(s: _Suite, model, prefix: str):
    N = s.cfg.N
    basis = model.algebra_basis()
    mats = [model.derived_matrix(X, N) for X in basis]
    worst = 0.0
    for i, X in enumerate(basis):
        for j, Y in enumerate(basis):
            if j <= i:
                continue
            C = mats[i].commutator(mats[j])
            D = model.derived_matrix(X.bracket(Y), N)
            worst = max(worst, _amax(C.interior(OP_MARGIN) - D.interior(OP_MARGIN)))
    s.add(f"{prefix}.bracket", worst, 1e-6)


def _axioms(s: _Suite, model, side: str):
    cfg = s.cfg
    s.add(f"{side}.reality", swc.reality_residual(model, cfg.N, s.rng(f"{side}.reality")), 1e-8)
    s.add(f"{side}.covariance",
          swc.covariance_residual(model, cfg.N, s.rng(f"{side}.covariance"), ngroup=20,
                                  order=cfg.quad_order), 1e-5)
    Ns = _small_N(cfg.n, model.choice.dim_v, AXIOM_IMAX)
    s.add(f"{side}.traciality", swc.traciality_residual(model, Ns, AXIOM_IMAX), 1e-5)


# ---------------------------------------------------------------------------
# heisenberg-core
# ---------------------------------------------------------------------------

def _phi_poly(X: HeisAlgElement, lam: float) -> PolySymbol:
    """i <Phi_lam(z), X> = i (Re z . a + Im z . b + lam c) as a symbol in (z, zbar)."""
    n = X.n
    out = PolySymbol.constant(n, 1j * lam * X.c)
    for k in range(n):
        out = out + PolySymbol.first(n, k, 0.5j * X.a[k] + 0.5 * X.b[k])
        out = out + PolySymbol.second(n, k, 0.5j * X.a[k] - 0.5 * X.b[k])
    return out


def _psi_poly(X: HeisAlgElement, lam: float) -> PolySymbol:
    """i <Psi_lam(p, q), X> = i (q . a - lam p . b + lam c) as a symbol in (p, q)."""
    n = X.n
    out = PolySymbol.constant(n, 1j * lam * X.c, kind="pq")
    for k in range(n):
        out = out + PolySymbol.second(n, k, 1j * X.a[k], kind="pq")
        out = out + PolySymbol.first(n, k, -1j * lam * X.b[k], kind="pq")
    return out


def heisenberg_core(cfg) -> swc.VerificationReport:
    s = _Suite("heisenberg-core", cfg)
    n, lam, N = cfg.n, cfg.lam, cfg.N
    fock_model = swc.ScalarSW("fock", n, lam)
    sch_model = swc.ScalarSW("schrodinger", n, lam)
    _group_checks(s, fock_model)

    rng = s.rng("group.commutator")
    worst = 0.0
    for _ in range(20):
        a, b = rng.uniform(-1, 1, n), rng.uniform(-1, 1, n)
        A, B = HeisElement(a, np.zeros(n), 0), HeisElement(np.zeros(n), b, 0)
        C = A * B * A.inverse() * B.inverse()
        worst = max(worst, _amax(np.r_[C.a, C.b, C.c - a @ b]))
    s.add("group.commutator", worst, 1e-12)

    rng = s.rng("coadjoint.action")
    worst = 0.0
    for _ in range(50):
        g, h = HeisElement.random(n, rng), HeisElement.random(n, rng)
        xi = HeisCoadjPoint(rng.normal(size=n), rng.normal(size=n), rng.normal())
        lhs = heisenberg.h_coadjoint(g * h, xi)
        rhs = heisenberg.h_coadjoint(g, heisenberg.h_coadjoint(h, xi))
        worst = max(worst, _amax(lhs.as_array() - rhs.as_array()),
                    abs(lhs.gamma - xi.gamma))
    s.add("coadjoint.action", worst, 1e-12)

    rng = s.rng("coadjoint.orbit")
    worst = 0.0
    for _ in range(20):
        g = HeisElement.random(n, rng)
        out = heisenberg.h_coadjoint(g, HeisCoadjPoint(np.zeros(n), np.zeros(n), lam))
        worst = max(worst, _amax(out.as_array() - np.r_[lam * g.b, -lam * g.a, lam]))
        xi0 = HeisCoadjPoint(rng.normal(size=n), rng.normal(size=n), 0.0)
        worst = max(worst, _amax(heisenberg.h_coadjoint(g, xi0).as_array() - xi0.as_array()))
    s.add("coadjoint.orbit", worst, 1e-12)

    rng = s.rng("phi.equivariance")
    worst = 0.0
    for _ in range(50):
        g = HeisElement.random(n, rng)
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        lhs = berezin0.phi_lambda(heisenberg.act_fock(g, z, lam), lam)
        rhs = heisenberg.h_coadjoint(g, berezin0.phi_lambda(z, lam))
        worst = max(worst, _amax(lhs.as_array() - rhs.as_array()))
    s.add("phi.equivariance", worst, 1e-12)

    rng = s.rng("psi.equivariance")
    worst = 0.0
    for _ in range(50):
        g = HeisElement.random(n, rng)
        p, q = rng.normal(size=n), rng.normal(size=n)
        lhs = weyl.psi_lambda(*heisenberg.act_phase(g, p, q, lam), lam)
        rhs = heisenberg.h_coadjoint(g, weyl.psi_lambda(p, q, lam))
        worst = max(worst, _amax(lhs.as_array() - rhs.as_array()))
        jz = berezin0.phi_lambda(weyl.j_map(p, q, lam), lam)
        worst = max(worst, _amax(jz.as_array() - weyl.psi_lambda(p, q, lam).as_array()))
    s.add("psi.equivariance", worst, 1e-12)

    rng = s.rng("center.action")
    c = float(rng.uniform(-1, 1))
    gc = HeisElement(np.zeros(n), np.zeros(n), c)
    I = np.exp(1j * lam * c) * np.eye(numkit.count(n, N))
    s.add("sigma0.center", _amax(heisenberg.sigma0_matrix(gc, N, lam, cfg.quad_order).data - I), 1e-8)
    s.add("pi0.center", _amax(heisenberg.pi0_matrix(gc, N, lam).data - I), 1e-12)

    rng = s.rng("sigma0.unitarity")
    S = heisenberg.sigma0_matrix(HeisElement.random(n, rng, 0.5), N, lam, cfg.quad_order)
    s.add("sigma0.unitarity", _amax((S.adjoint() @ S).interior(HOM_MARGIN)
                                    - np.eye(len(S.interior(HOM_MARGIN)))), 1e-8)

    # pi0(g) e_0 = alpha(g^-1, z): exp(const + l.z) expanded in the orthonormal basis
    rng = s.rng("pi0.vacuum")
    g = HeisElement.random(n, rng)
    gi = g.inverse()
    const = heisenberg.cocycle(gi, np.zeros(n), lam)
    ell = -(gi.b + 1j * gi.a) / 2
    idx = numkit.multi_indices(n, N)
    col = const * np.prod(ell ** idx, axis=1) * np.sqrt(fock.norm_sq(n, N, lam)) / np.array(
        [numkit.multi_factorial(a) for a in idx])
    s.add("pi0.vacuum", _amax(heisenberg.pi0_matrix(g, N, lam).data[:, 0] - col), 1e-10)

    _homomorphism(s, fock_model, "pi")
    _homomorphism(s, sch_model, "sigma")
    _bracket(s, fock_model, "dpi")
    _bracket(s, sch_model, "dsigma")

    Z = HeisAlgElement(np.zeros(n), np.zeros(n), 1.0)
    Id = np.eye(numkit.count(n, N))
    s.add("dpi.center", _amax(heisenberg.dpi0_matrix(Z, N, lam).data - 1j * lam * Id), 1e-12)
    s.add("dsigma.center", _amax(heisenberg.dsigma0_matrix(Z, N, lam).data - 1j * lam * Id), 1e-12)
    worst = 0.0
    for X in HeisAlgElement.basis(n):
        for M in (heisenberg.dpi0_matrix(X, N, lam), heisenberg.dsigma0_matrix(X, N, lam)):
            worst = max(worst, _amax((M + M.adjoint()).interior(OP_MARGIN)))
    s.add("derived.skew", worst, 1e-12)
    return s.report


# ---------------------------------------------------------------------------
# segal-bargmann
# ---------------------------------------------------------------------------

def segal_bargmann(cfg) -> swc.VerificationReport:
    s = _Suite("segal-bargmann", cfg)
    n, lam, N, order = cfg.n, cfg.lam, cfg.N, cfg.quad_order
    B = fock.segal_bargmann_matrix(N, lam, n, order)
    Bi = fock.segal_bargmann_inverse_matrix(N, lam, n, order)
    I = np.eye(B.size)
    s.add("B.unitarity", _amax(B.data.conj().T @ B.data - I), 1e-8)
    s.add("B.inverse", _amax(Bi.data @ B.data - I), 1e-8)
    d = np.diag(B.data)
    s.add("B.diagonal", max(_amax(B.data - np.diag(d)), _amax(np.abs(d) - 1)), 1e-8)
    s.add("B.phases", _amax(d - fock.sb_phases(N, n)), 1e-8)
    B2 = fock.segal_bargmann_matrix(N, lam, n, order + 4)
    s.add("B.order_stability", _amax(B2.data - B.data), 1e-9)
    s.add("B.vacuum", _amax(np.abs(Bi.data[:, 0]) - np.eye(B.size)[:, 0]), 1e-8)

    worst = 0.0
    for X in HeisAlgElement.basis(n):
        L = B.data @ heisenberg.dsigma0_matrix(X, N, lam).data
        R = heisenberg.dpi0_matrix(X, N, lam).data @ B.data
        worst = max(worst, _amax(B.like(L - R).interior(OP_MARGIN)))
    s.add("B.intertwining", worst, 1e-6)

    rng = s.rng("B.group_intertwining")
    worst = 0.0
    for _ in range(3):
        g = HeisElement.random(n, rng, 0.5)
        L = B.data @ heisenberg.sigma0_matrix(g, N, lam, order).data
        R = heisenberg.pi0_matrix(g, N, lam).data @ B.data
        worst = max(worst, _amax(B.like(L - R).interior(HOM_MARGIN)))
    s.add("B.group_intertwining", worst, 1e-6)

    rng = s.rng("fock.reproducing")
    z = rng.uniform(-0.7, 0.7, (50, n)) + 1j * rng.uniform(-0.7, 0.7, (50, n))
    C = fock.coherent_coeffs(z, n, N, lam)
    direct = fock.monomials(z, n, N) / np.sqrt(fock.norm_sq(n, N, lam))
    s.add("fock.reproducing", _amax(np.conj(C) - direct), 1e-10)
    s.add("fock.coherent_norm",
          _amax(np.sum(np.abs(C) ** 2, axis=1) / np.exp(np.sum(np.abs(z) ** 2, axis=1) / (2 * lam)) - 1),
          1e-8)

    rng = s.rng("fock.quadrature_inner")
    m = numkit.count(n, min(N, 6))
    worst = 0.0
    for _ in range(5):
        a = np.zeros(numkit.count(n, N), dtype=complex)
        b = np.zeros_like(a)
        a[:m] = rng.normal(size=m) + 1j * rng.normal(size=m)
        b[:m] = rng.normal(size=m) + 1j * rng.normal(size=m)
        F, G = fock.FockVector(a, n, N, lam), fock.FockVector(b, n, N, lam)
        quad = fock.fock_inner_quadrature(F, G, n, lam, order=12)
        worst = max(worst, abs(quad - F.inner(G)))
    s.add("fock.quadrature_inner", worst, 1e-8)
    return s.report


# ---------------------------------------------------------------------------
# berezin-scalar
# ---------------------------------------------------------------------------

def _rank_one_pairs(n: int, imax: int):
    Ns = _small_N(n, 1, imax)
    return Ns, [(i, j) for i in range(imax + 1) for j in range(imax + 1)]


def berezin_scalar(cfg) -> swc.VerificationReport:
    s = _Suite("berezin-scalar", cfg)
    n, lam, N = cfg.n, cfg.lam, cfg.N
    basis = HeisAlgElement.basis(n)

    s.add("S0.moment_map", max(berezin0.berezin_symbol0(heisenberg.dpi0_op(X, lam), lam)
                               .max_coeff_diff(_phi_poly(X, lam)) for X in basis), 1e-12)
    rng = s.rng("S0.moment_map_matrix")
    z = 0.5 * (rng.normal(size=(10, n)) + 1j * rng.normal(size=(10, n)))
    s.add("S0.moment_map_matrix",
          max(_amax(berezin0.berezin_symbol0(heisenberg.dpi0_matrix(X, N, lam))(z) - _phi_poly(X, lam)(z))
              for X in basis), 1e-8)
    s.add("S0.identity", _amax(berezin0.berezin_symbol0(identity("fock", N, n, lam))(z) - 1), 1e-10)

    rng = s.rng("S0.adjoint")
    m = numkit.count(n, N)
    A = OperatorMatrix(rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m)), "fock", N, n, lam)
    zz = 0.5 * (rng.normal(size=(10, n)) + 1j * rng.normal(size=(10, n)))
    s.add("S0.adjoint", _amax(berezin0.berezin_symbol0(A.adjoint())(zz)
                              - np.conj(berezin0.berezin_symbol0(A)(zz))), 1e-12)

    rng = s.rng("S0.covariance")
    worst = 0.0
    for _ in range(5):
        g = HeisElement.random(n, rng, 0.5)
        i, j = (int(x) for x in rng.integers(0, min(4, m), 2))
        A = rank_one("fock", N, n, lam, i, j)
        P = heisenberg.pi0_matrix(g, N, lam)
        z = 0.6 * (rng.normal(size=(3, n)) + 1j * rng.normal(size=(3, n)))
        lhs = berezin0.berezin_symbol0(A)(heisenberg.act_fock(g, z, lam))
        rhs = berezin0.berezin_symbol0(P.adjoint() @ A @ P)(z)
        worst = max(worst, _amax(lhs - rhs))
    s.add("S0.covariance", worst, 1e-6)

    one = PolySymbol.constant(n, 1.0)
    s.add("B0.unit", one.heat(lam / 2).max_coeff_diff(one), 1e-15)
    zz1 = PolySymbol.monomial([1] + [0] * (n - 1), [1] + [0] * (n - 1))
    s.add("B0.zzbar", berezin0.berezin_transform0(zz1, lam).max_coeff_diff(zz1 + PolySymbol.constant(n, 2 * lam)),
          0.0)

    rng = s.rng("B0.heat_vs_integral")
    worst = 0.0
    for _ in range(20):
        f = PolySymbol.random(n, 6, rng)
        z = rng.uniform(-0.7, 0.7, (5, n)) + 1j * rng.uniform(-0.7, 0.7, (5, n))
        heat = berezin0.berezin_transform0(f, lam)(z)
        integral = berezin0.berezin_transform0_integral(f, z, lam, order=10)
        worst = max(worst, _amax(heat - integral))
    s.add("B0.heat_vs_integral", worst, 1e-6)

    rng = s.rng("B0.semigroup")
    f = PolySymbol.random(n, 6, rng)
    s.add("B0.semigroup", f.heat(lam / 2).heat(lam / 2).max_coeff_diff(f.heat(lam)), 1e-10)

    rng = s.rng("B0.self_adjoint")
    Ns = 4
    f = berezin0.berezin_symbol0(OperatorMatrix(_rand(rng, numkit.count(n, Ns)), "fock", Ns, n, lam))
    g = berezin0.berezin_symbol0(OperatorMatrix(_rand(rng, numkit.count(n, Ns)), "fock", Ns, n, lam))
    Bf, Bg = berezin0.berezin_transform0(f, lam), berezin0.berezin_transform0(g, lam)
    s.add("B0.self_adjoint", abs(_gauss_inner(Bf, g, lam) - _gauss_inner(f, Bg, lam)), 1e-8)

    # exp(lam Delta / 4) U0 = S0 on rank-one |e_j><e_k|
    Ns, pairs = _rank_one_pairs(n, 6)
    worst = 0.0
    for i, j in pairs:
        A = rank_one("fock", Ns, n, lam, i, j)
        fwd = berezin0.u0_via_weyl(A).heat(lam / 4)
        S0 = berezin0.berezin_symbol0(A)
        worst = max(worst, fwd.poly.max_coeff_diff(S0.poly), abs(fwd.kappa - S0.kappa))
    s.add("U0.forward_heat", worst, 1e-6)

    worst = 0.0
    for X in basis:
        op = heisenberg.dpi0_op(X, lam)
        worst = max(worst, berezin0.u0_via_weyl(op, lam).max_coeff_diff(
            berezin0.berezin_symbol0(op, lam).heat(-lam / 4)))
    s.add("U0.dpi0_routes", worst, 1e-12)

    rng = s.rng("U0.berezin_route")
    worst = 0.0
    for i, j in pairs[::5]:
        A = rank_one("fock", Ns, n, lam, i, j)
        z = rng.normal(size=(5, n)) + 1j * rng.normal(size=(5, n))
        worst = max(worst, _amax(berezin0.u0_from_berezin(A)(z) - berezin0.u0_values(A, z)))
    s.add("U0.berezin_route", worst, 1e-10)
    s.add("U0.identity", berezin0.u0_via_weyl(DiffOp.scalar(n, 1.0), lam).max_coeff_diff(one), 1e-15)

    _axioms(s, swc.ScalarSW("fock", n, lam), "fock")
    return s.report


def _rand(rng, m: int) -> np.ndarray:
    return rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))


def _gauss_inner(f, g, lam: float, order: int = 12) -> complex:
    """int f conj(g) dmu_lam for Gaussian-polynomial symbols."""
    kappa = f.kappa + g.kappa
    z, w = numkit.complex_gaussian_rule(order, f.n, lam, width=1.0 / kappa)
    comp = np.exp(kappa * np.sum(np.abs(z) ** 2, axis=1))
    return complex(np.sum(w * comp * f(z) * np.conj(g(z))))


# ---------------------------------------------------------------------------
# weyl-scalar
# ---------------------------------------------------------------------------

def weyl_scalar(cfg) -> swc.VerificationReport:
    s = _Suite("weyl-scalar", cfg)
    n, lam = cfg.n, cfg.lam
    basis = HeisAlgElement.basis(n)
    s.add("W0inv.moment_map", max(weyl.weyl_symbol_of_op(heisenberg.dsigma0_op(X, lam))
                                  .max_coeff_diff(_psi_poly(X, lam)) for X in basis), 1e-12)

    worst = 0.0
    for k in range(n):
        dp = weyl.weyl_op_derivative(PolySymbol.first(n, k, kind="pq")) - DiffOp.var(n, k)
        dq = weyl.weyl_op_derivative(PolySymbol.second(n, k, kind="pq")) - DiffOp.deriv(n, k, 1j)
        worst = max(worst, _amax(list(dp.terms.values())), _amax(list(dq.terms.values())))
    one = PolySymbol.constant(n, 1.0, kind="pq")
    worst = max(worst, _amax(list((weyl.weyl_op_derivative(one) - DiffOp.scalar(n, 1.0)).terms.values())))
    s.add("W0.basic", worst, 1e-15)

    rng = s.rng("W0.two_paths")
    worst = 0.0
    for deg in range(7):
        f = PolySymbol.random(n, deg, rng, kind="pq")
        d = weyl.weyl_op_derivative(f) - weyl.weyl_op_symmetric(f)
        worst = max(worst, _amax(list(d.terms.values())))
    s.add("W0.two_paths", worst, 1e-10)

    rng = s.rng("W0.roundtrip")
    worst = 0.0
    for deg in range(5):
        f = PolySymbol.random(n, deg, rng, kind="pq")
        worst = max(worst, weyl.weyl_symbol_of_op(weyl.weyl_op_derivative(f)).max_coeff_diff(f))
    s.add("W0.roundtrip", worst, 1e-12)
    s.add("W0inv.identity", weyl.weyl_symbol_of_op(DiffOp.scalar(n, 1.0)).max_coeff_diff(one), 1e-15)

    rng = s.rng("wigner.quadrature")
    A = OperatorMatrix(_rand(rng, 11), "hermite", 10, 1, lam)
    p, q = rng.uniform(-2, 2, 8), rng.uniform(-2, 2, 8)
    closed = weyl.wigner_dequantize(A)(p[:, None], q[:, None])
    s.add("wigner.quadrature", _amax(closed - weyl.wigner_quadrature(A, p, q)), 1e-10)

    model = swc.ScalarSW("schrodinger", n, lam)
    _axioms(s, model, "schrodinger")
    Ns = _small_N(n, 1, 8)
    s.add("schrodinger.traciality8", swc.traciality_residual(model, Ns, 8), 1e-5)
    return s.report


# ---------------------------------------------------------------------------
# compact-orbit
# ---------------------------------------------------------------------------

def _casimir(choice) -> np.ndarray:
    """sum_a ad(drho(A_a))^2 on vec(End V) (row-major vec)."""
    d = choice.dim_v
    I = np.eye(d)
    out = np.zeros((d * d, d * d), dtype=complex)
    for A in choice.basis:
        R = choice.drho(A)
        ad = np.kron(R, I) - np.kron(I, R.T)
        out += ad @ ad
    return out


def compact_orbit(cfg) -> swc.VerificationReport:
    s = _Suite("compact-orbit", cfg)
    ch = cfg.choice()
    d = ch.dim_v
    calc = swc.OrbitCalculus.build(ch)

    rng = s.rng("rho.homomorphism")
    worst = _amax(ch.rho(np.eye(ch.n)) - np.eye(d))
    for _ in range(20):
        k1, k2 = ch.random_group(rng), ch.random_group(rng)
        worst = max(worst, _amax(ch.rho(k1 @ k2) - ch.rho(k1) @ ch.rho(k2)))
        R = ch.rho(k1)
        worst = max(worst, _amax(R @ R.conj().T - np.eye(d)))
    s.add("rho.homomorphism", worst, 1e-10)

    rng = s.rng("rho.exp")
    worst = 0.0
    for _ in range(10):
        A = ch.random_algebra(rng)
        worst = max(worst, _amax(ch.rho(expm(A)) - expm(ch.drho(A))))
    s.add("rho.exp", worst, 1e-10)

    worst = 0.0
    for A in ch.basis:
        for B in ch.basis:
            worst = max(worst, _amax(ch.drho(A) @ ch.drho(B) - ch.drho(B) @ ch.drho(A)
                                     - ch.drho(A @ B - B @ A)))
    s.add("drho.bracket", worst, 1e-12)

    # highest weight: drho(A) v_hw = i <phi0, A> v_hw on the Cartan generators
    worst = 0.0
    cartan = [ch.basis[2]] if ch.kind == "su2" else list(ch.basis)
    for A in cartan:
        worst = max(worst, _amax(ch.drho(A) @ ch.v_hw - 1j * (ch.phi0 @ ch.coords(A)) * ch.v_hw))
    s.add("phi0.highest_weight", worst, 1e-12)

    rng = s.rng("orbit.points")
    pts = [ch.random_point(rng) for _ in range(50)]
    worst = 0.0
    for p in pts:
        worst = max(worst, abs(np.linalg.norm(p.phi) - np.linalg.norm(ch.phi0)),
                    _amax(ch.ad_star(p.k, ch.phi0) - p.phi),
                    abs(np.linalg.norm(ch.coherent_state(p)) - 1))
        if not ch.degenerate:
            q = ch.point(p.phi)
            worst = max(worst, _amax(ch.ad_star(q.k, ch.phi0) - p.phi))
    s.add("orbit.points", worst, 1e-12)

    worst = 0.0
    for A in ch.basis:
        vals = small_symbol(ch, ch.drho(A)).values(pts)
        worst = max(worst, _amax(vals - 1j * np.array([p.phi @ ch.coords(A) for p in pts])))
    s.add("s.moment_map", worst, 1e-10)

    rng = s.rng("s.injective")
    gen = [ch.random_point(rng) for _ in range(d * d)]
    sv = np.linalg.svd(symbol_samples(ch, gen), compute_uv=False)
    s.add("s.injective", float(d * d - np.sum(sv > 1e-10 * sv[0])), 0.0)

    rng = s.rng("s.properties")
    B = _rand(rng, d)
    worst = max(_amax(small_symbol(ch, np.eye(d)).values(pts) - 1),
                _amax(small_symbol(ch, B.conj().T).values(pts) - np.conj(small_symbol(ch, B).values(pts))))
    for _ in range(10):
        k = ch.random_group(rng)
        p = ch.random_point(rng)
        R = ch.rho(k)
        lhs = small_symbol(ch, B)(ch.orbit_point(k @ p.k))
        rhs = small_symbol(ch, R.conj().T @ B @ R)(p)
        worst = max(worst, abs(lhs - rhs))
    s.add("s.properties", worst, 1e-12)

    G = calc.gram
    ev = np.linalg.eigvalsh((G + G.conj().T) / 2)
    s.add("b.hermitian_psd", max(_amax(G - G.conj().T), max(0.0, -ev.min())), 1e-12)
    C = _casimir(ch)
    s.add("b.isotypic", _amax(G @ C - C @ G), 1e-10)
    rng = s.rng("b.equivariance")
    worst = 0.0
    for _ in range(5):
        B = _rand(rng, d)
        R = ch.rho(ch.random_group(rng))
        worst = max(worst, _amax(calc.b(R @ B @ R.conj().T) - R @ calc.b(B) @ R.conj().T))
    s.add("b.equivariance", worst, 1e-10)

    nodes = calc.quad.points
    nu = calc.quad.weights
    E = np.eye(d * d).reshape(d * d, d, d)
    Wv = np.array([calc.w(e).values(nodes) for e in E])
    s.add("w.isometry", _amax((Wv.conj() * nu) @ Wv.T - np.eye(d * d)), 1e-8)
    # Tr(E_ab E_cd) = delta_bc delta_ad
    T = np.einsum("aij,bji->ab", E, E)
    s.add("w.trace_dual", _amax((Wv * nu) @ Wv.T - T), 1e-8)
    s.add("w.identity", _amax(calc.w(np.eye(d)).values(pts) - 1), 1e-12)
    s.add("w.polar_two_paths", _amax(calc.w_samples_polar() - Wv.T), 1e-10)

    # b^1/2 w = s
    half = sqrtm(G)
    worst = 0.0
    for e in E:
        back = calc.w((half @ e.ravel()).reshape(d, d)).values(pts)
        worst = max(worst, _amax(back - small_symbol(ch, e).values(pts)))
    s.add("w.polar_forward", worst, 1e-10)

    rng = s.rng("w.covariance")
    worst = 0.0
    for _ in range(10):
        B = _rand(rng, d)
        k = ch.random_group(rng)
        p = ch.random_point(rng)
        R = ch.rho(k)
        lhs = calc.w(R.conj().T @ B @ R)(p)
        rhs = calc.w(B)(ch.orbit_point(k @ p.k))
        worst = max(worst, abs(lhs - rhs))
    s.add("w.covariance", worst, 1e-10)
    return s.report


# ---------------------------------------------------------------------------
# motion-fock
# ---------------------------------------------------------------------------

def _random_coadjoint(rng, ch, n):
    u = rng.normal(size=n) + 1j * rng.normal(size=n)
    return CoadjointPoint(u, np.conj(u), float(rng.normal()), rng.normal(size=len(ch.basis)))


def motion_fock(cfg) -> swc.VerificationReport:
    s = _Suite("motion-fock", cfg)
    ch = cfg.choice()
    n, lam, N, d = cfg.n, cfg.lam, cfg.N, ch.dim_v
    model = swc.SWMap.build("fock", ch, lam)
    _group_checks(s, model)

    rng = s.rng("group.heisenberg_subgroup")
    worst = 0.0
    for _ in range(20):
        g, h = HeisElement.random(n, rng), HeisElement.random(n, rng)
        gm = MotionGroupElement.from_heisenberg(g) * MotionGroupElement.from_heisenberg(h)
        worst = max(worst, _amax(model.group_coords(gm)[:2 * n + 1] - np.r_[(g * h).a, (g * h).b, (g * h).c]))
    s.add("group.heisenberg_subgroup", worst, 1e-15)

    rng = s.rng("motion.coadjoint_action")
    worst = 0.0
    for _ in range(50):
        g, h = MotionGroupElement.random(ch, rng), MotionGroupElement.random(ch, rng)
        xi = _random_coadjoint(rng, ch, n)
        lhs = motion.g_coadjoint(g * h, xi, ch)
        rhs = motion.g_coadjoint(g, motion.g_coadjoint(h, xi, ch), ch)
        worst = max(worst, _amax(lhs.as_array() - rhs.as_array()))
        central = MotionGroupElement(np.zeros(n), float(rng.normal()), np.eye(n))
        worst = max(worst, _amax(motion.g_coadjoint(central, xi, ch).as_array() - xi.as_array()))
    s.add("motion.coadjoint_action", worst, 1e-10)

    rng = s.rng("motion.coadjoint_reach")
    worst = 0.0
    for _ in range(20):
        xi = _random_coadjoint(rng, ch, n)
        r = motion.g_coadjoint(motion.reach_generic(xi), xi, ch)
        worst = max(worst, _amax(np.r_[r.u1, r.u2]), abs(r.d - xi.d))
    s.add("motion.coadjoint_reach", worst, 1e-10)

    rng = s.rng("motion.phi_equivariance")
    o = motion.big_phi(np.zeros(n), ch.orbit_point(np.eye(n)), lam, ch)
    worst = _amax(o.as_array() - CoadjointPoint(np.zeros(n), np.zeros(n), lam, ch.phi0).as_array())
    for _ in range(50):
        g = MotionGroupElement.random(ch, rng)
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        pt = ch.random_point(rng)
        zz, pp = motion.act_orbit(g, z, pt, lam, ch)
        lhs = motion.big_phi(zz, pp, lam, ch)
        rhs = motion.g_coadjoint(g, motion.big_phi(z, pt, lam, ch), ch)
        worst = max(worst, _amax(lhs.as_array() - rhs.as_array()))
        z2, phi2 = motion.big_phi_inverse(motion.big_phi(z, pt, lam, ch), lam, ch)
        worst = max(worst, _amax(z2 - z), _amax(phi2 - pt.phi))
    s.add("motion.phi_equivariance", worst, 1e-10)

    rng = s.rng("motion.phi_k_pairing")
    worst = 0.0
    for _ in range(20):
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        pt = ch.random_point(rng)
        xi = motion.big_phi(z, pt, lam, ch)
        for A in ch.basis:
            X = MotionAlgElement(np.zeros(n), 0.0, A)
            cf = -np.conj(z) @ (A @ z) / (2 * lam) + small_symbol(ch, ch.drho(A))(pt)
            worst = max(worst, abs(1j * xi.pair(X, ch) - cf))
    s.add("motion.phi_k_pairing", worst, 1e-10)

    rng = s.rng("cocycle.J")
    worst = 0.0
    for _ in range(20):
        g1, g2 = MotionGroupElement.random(ch, rng), MotionGroupElement.random(ch, rng)
        z, w = (rng.normal(size=n) + 1j * rng.normal(size=n) for _ in range(2))
        Jl = motion.cocycle_J(g1 * g2, z, lam, ch)
        Jr = motion.cocycle_J(g1, motion.act_domain(g2, z), lam, ch) @ motion.cocycle_J(g2, z, lam, ch)
        worst = max(worst, _amax(Jl - Jr) / _amax(Jl))
        # K(g.Z, g.W) = J(g, Z) K(Z, W) J(g, W)^*
        Kl = motion.kernel_K(motion.act_domain(g1, z), motion.act_domain(g1, w), lam, d)
        Kr = motion.cocycle_J(g1, z, lam, ch) @ motion.kernel_K(z, w, lam, d) @ \
            motion.cocycle_J(g1, w, lam, ch).conj().T
        worst = max(worst, _amax(Kl - Kr) / _amax(Kl))
        worst = max(worst, _amax(motion.act_domain(g1, z) - (g1.z0 + g1.k @ z)))
    s.add("cocycle.J", worst, 1e-10)

    rng = s.rng("p_decompose")
    worst = 0.0
    for _ in range(20):
        k = ch.random_group(rng)
        gc = motion.ComplexMotionElement(rng.normal(size=n) + 1j * rng.normal(size=n),
                                         rng.normal(size=n) + 1j * rng.normal(size=n),
                                         complex(rng.normal(), rng.normal()), k)
        pp, kk, qq = motion.p_decompose(gc)
        pr = pp * kk * qq
        worst = max(worst, _amax(np.r_[pr.z - gc.z, pr.w - gc.w, pr.c - gc.c]))
        g = MotionGroupElement.random(ch, rng)
        _, kk, _ = motion.p_decompose(motion.ComplexMotionElement.from_real(g))
        worst = max(worst, abs(kk.c - (g.c0 - 0.25j * g.z0 @ np.conj(g.z0))))
        kc = motion.ComplexMotionElement(np.zeros(n), np.zeros(n), complex(rng.normal()), k)
        a, b, c = motion.p_decompose(kc)
        worst = max(worst, _amax(np.r_[a.z, a.w, b.z, b.w, c.z, c.w, b.c - kc.c]), _amax(b.k - k))
    s.add("p_decompose", worst, 1e-12)

    rng = s.rng("pi.two_paths")
    worst = 0.0
    for _ in range(20):
        g = MotionGroupElement.random(ch, rng, 0.5)
        P1 = motion.pi_matrix(g, N, lam, ch)
        P2 = motion.pi_matrix(g, N, lam, ch, "direct")
        worst = max(worst, _amax(P1.interior(OP_MARGIN) - P2.interior(OP_MARGIN)))
    s.add("pi.two_paths", worst, 1e-8)

    rng = s.rng("pi.heisenberg_part")
    g = MotionGroupElement.from_heisenberg(HeisElement.random(n, rng, 0.5))
    P0 = heisenberg.pi0_matrix(g.heisenberg_part(), N, lam)
    s.add("pi.heisenberg_part", _amax(motion.pi_matrix(g, N, lam, ch).data - np.kron(P0.data, np.eye(d))),
          1e-15)

    rng = s.rng("tau.monomials")
    k = ch.random_group(rng)
    T = motion.tau_matrix(k, N, n, lam)
    if ch.kind != "su2":
        # tau(k) z^alpha = (k^-1 z)^alpha = exp(-i theta . alpha) z^alpha
        theta = np.angle(np.diag(k))
        want = np.diag(np.exp(-1j * numkit.multi_indices(n, N) @ theta))
        s.add("tau.monomials", _amax(T.data - want), 1e-12)
    else:
        s.add("tau.monomials", _amax(T.data.conj().T @ T.data - np.eye(T.size)), 1e-12)

    _homomorphism(s, model, "pi")
    _bracket(s, model, "dpi")

    worst = 0.0
    Id = np.eye(numkit.count(n, N) * d)
    Z = MotionAlgElement(np.zeros(n), 1.0, np.zeros((n, n)))
    worst = _amax(motion.dpi_matrix(Z, N, lam, ch).data - 1j * lam * Id)
    for A in ch.basis:
        X = MotionAlgElement(np.zeros(n), 0.0, A)
        want = np.kron(motion.dtau_op(A).matrix("fock", N, lam).data, np.eye(d)) + \
            np.kron(np.eye(numkit.count(n, N)), ch.drho(A))
        worst = max(worst, _amax(motion.dpi_matrix(X, N, lam, ch).data - want))
    s.add("dpi.structure", worst, 1e-12)

    rng = s.rng("S.moment_map")
    worst = 0.0
    for _ in range(5):
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        pt = ch.random_point(rng)
        xi = motion.big_phi(z, pt, lam, ch)
        for X in MotionAlgElement.basis(ch):
            S = motion.big_symbol(motion.dpi_op(X, lam, ch), z, pt, ch, lam)
            worst = max(worst, abs(S - 1j * xi.pair(X, ch)))
        one = SplitOp(DiffOp.scalar(n, 1.0), np.zeros((d, d)))
        worst = max(worst, abs(motion.big_symbol(one, z, pt, ch, lam) - 1))
    s.add("S.moment_map", worst, 1e-10)

    rng = s.rng("S.tensor")
    worst = 0.0
    Ns = 4
    for _ in range(5):
        A0 = OperatorMatrix(_rand(rng, numkit.count(n, Ns)), "fock", Ns, n, lam)
        A1 = _rand(rng, d)
        z = 0.7 * (rng.normal(size=n) + 1j * rng.normal(size=n))
        pt = ch.random_point(rng)
        big = motion.big_symbol(A0.kron(A1), z, pt, ch)
        worst = max(worst, abs(big - berezin0.berezin_symbol0(A0)(z[None])[0] * small_symbol(ch, A1)(pt)))
    s.add("S.tensor", worst, 1e-12)

    rng = s.rng("S.covariance")
    worst = 0.0
    for _ in range(5):
        g = MotionGroupElement.random(ch, rng, 0.5)
        i, j = (int(x) for x in rng.integers(0, min(4, numkit.count(n, N) * d), 2))
        A = rank_one("fock", N, n, lam, i, j, d)
        P = motion.pi_matrix(g, N, lam, ch)
        z = 0.6 * (rng.normal(size=n) + 1j * rng.normal(size=n))
        pt = ch.random_point(rng)
        gz, gpt = motion.act_orbit(g, z, pt, lam, ch)
        lhs = motion.big_symbol(A, gz, gpt, ch)
        rhs = motion.big_symbol(P.adjoint() @ A @ P, z, pt, ch)
        worst = max(worst, abs(lhs - rhs))
    s.add("S.covariance", worst, 1e-6)
    return s.report


# ---------------------------------------------------------------------------
# motion-schrodinger
# ---------------------------------------------------------------------------

def motion_schrodinger(cfg) -> swc.VerificationReport:
    s = _Suite("motion-schrodinger", cfg)
    ch = cfg.choice()
    n, lam, N, order, d = cfg.n, cfg.lam, cfg.N, cfg.quad_order, ch.dim_v
    model = swc.SWMap.build("schrodinger", ch, lam)
    B0 = fock.segal_bargmann_matrix(N, lam, n, order)
    B = fock.segal_bargmann_matrix(N, lam, n, order, d)

    rng = s.rng("sigma.two_paths")
    worst = 0.0
    for _ in range(20):
        g = MotionGroupElement.random(ch, rng, 0.5)
        S1 = motion.sigma_matrix(g, N, lam, ch, order=order)
        S2 = motion.sigma_matrix(g, N, lam, ch, "conjugate", order=order)
        worst = max(worst, _amax(S1.interior(OP_MARGIN) - S2.interior(OP_MARGIN)))
    s.add("sigma.two_paths", worst, 1e-7)

    rng = s.rng("sigma.heisenberg_part")
    g = MotionGroupElement.from_heisenberg(HeisElement.random(n, rng, 0.5))
    S0 = heisenberg.sigma0_matrix(g.heisenberg_part(), N, lam, order)
    s.add("sigma.heisenberg_part",
          _amax(motion.sigma_matrix(g, N, lam, ch, order=order).data - np.kron(S0.data, np.eye(d))), 1e-15)

    _homomorphism(s, model, "sigma")
    _bracket(s, model, "dsigma")

    worst = 0.0
    for X in MotionAlgElement.basis(ch):
        a, b = motion.dsigma_op(X, lam, ch), motion.dsigma_op_conjugated(X, lam, ch)
        worst = max(worst, _amax(list((a.scalar - b.scalar).terms.values())), _amax(a.fiber - b.fiber))
    s.add("dsigma.two_routes", worst, 1e-12)

    worst = 0.0
    for X in MotionAlgElement.basis(ch):
        L = B.data @ motion.dsigma_matrix(X, N, lam, ch).data
        R = motion.dpi_matrix(X, N, lam, ch).data @ B.data
        M = L - R
        worst = max(worst, _amax(B.like(M).interior(OP_MARGIN)))
        D = motion.dsigma_matrix(X, N, lam, ch)
        worst = max(worst, _amax((D + D.adjoint()).interior(OP_MARGIN)))
    s.add("dsigma.intertwining", worst, 1e-6)

    # n = 1, A = i: d tau~ is -i times the number operator
    D = motion.dtau_tilde_matrix(np.array([[1j]]), N, lam)
    k = np.arange(N - 1)
    s.add("dtau_tilde.spectral", max(_amax(np.diag(D.data)[:N - 1] + 1j * k),
                                     _amax(D.data - np.diag(np.diag(D.data)))), 1e-8)

    worst = 0.0
    gens = [(1, np.array([[1j]]))] + [(n, A) for A in ch.basis]
    for nn, A in gens:
        Bn = B0 if nn == n else fock.segal_bargmann_matrix(N, lam, nn, order)
        tilde = motion.dtau_tilde_matrix(A, N, lam)
        conj = fock.conjugate_to_hermite(motion.dtau_op(A).matrix("fock", N, lam), Bn)
        worst = max(worst, _amax(tilde.interior(OP_MARGIN) - conj.interior(OP_MARGIN)))
    s.add("dtau_tilde.two_paths", worst, 1e-7)

    worst = 0.0
    for nn, A in gens:
        sym = motion.dtau_tilde_op(A, lam) - berezin0.fock_op_to_hermite(motion.dtau_op(A), lam)
        worst = max(worst, _amax(list(sym.terms.values())))
        T = motion.dtau_tilde_matrix(A, N, lam)
        worst = max(worst, _amax((T + T.adjoint()).interior(OP_MARGIN)))
    s.add("dtau_tilde.formula", worst, 1e-12)
    return s.report


# ---------------------------------------------------------------------------
# sw-axioms
# ---------------------------------------------------------------------------

def sw_axioms(cfg) -> swc.VerificationReport:
    s = _Suite("sw-axioms", cfg)
    ch = cfg.choice()
    n, lam, d = cfg.n, cfg.lam, ch.dim_v
    for side in ("fock", "schrodinger"):
        sw = swc.SWMap.build(side, ch, lam)
        _axioms(s, sw, side)
        rng = s.rng(f"{side}.closed_form")
        worst = 0.0
        for X in MotionAlgElement.basis(ch):
            sym = sw(sw.derived(X))
            z = rng.normal(size=(3, n)) + 1j * rng.normal(size=(3, n))
            pt = ch.random_point(rng)
            got = sym.values(z, [pt])[:, 0]
            if side == "fock":
                cf = [swc.dpi_symbol_closed_form(X, zz, pt, lam, sw.calc) for zz in z]
            else:
                cf = [swc.dsigma_symbol_closed_form(X, *weyl.j_inverse(zz, lam), pt, lam, sw.calc)
                      for zz in z]
            worst = max(worst, _amax(got - np.array(cf)))
        one = sw(SplitOp(DiffOp.scalar(n, 1.0), np.zeros((d, d))))
        worst = max(worst, _amax(one.values(z, [pt]) - 1))
        s.add(f"{side}.closed_form", worst, 1e-6)

    fsw = swc.SWMap.build("fock", ch, lam)
    ssw = swc.SWMap.build("schrodinger", ch, lam)
    Ns = _small_N(n, 1, 4)
    rng = s.rng("W.tensor")
    worst = 0.0
    for _ in range(5):
        i, j = (int(x) for x in rng.integers(0, 5, 2))
        C = _rand(rng, d)
        A0 = rank_one("hermite", Ns, n, lam, i, j)
        z = rng.normal(size=(4, n)) + 1j * rng.normal(size=(4, n))
        pts = [ch.random_point(rng) for _ in range(3)]
        got = ssw(A0.kron(C)).values(z, pts)
        want = np.outer(weyl.wigner_dequantize(A0).at_z(z), fsw.calc.w(C).values(pts))
        worst = max(worst, _amax(got - want))
        f = PolySymbol.random(n, 3, rng, kind="pq")
        blocks = {(a, b): f * complex(C[a, b]) for a in range(d) for b in range(d)}
        Wf = weyl.opvalued_quantize(blocks, d, 8, lam)
        worst = max(worst, _amax(Wf.data - np.kron(weyl.weyl_quantize_poly(f, 8, lam).data, C)))
    s.add("W.tensor", worst, 1e-12)

    # Hilbert-Schmidt norm of a random combination of rank-one operators
    rng = s.rng("W.hs_norm")
    m = min(numkit.count(n, Ns) * d, 6)
    H = np.zeros((numkit.count(n, Ns) * d,) * 2, dtype=complex)
    H[:m, :m] = _rand(rng, m)
    A = OperatorMatrix(H, "hermite", Ns, n, lam, d)
    z, wz = weyl.phase_rule(2 * Ns + 8, n, lam)
    vals = ssw(A).values(z, fsw.calc.quad.points)
    norm2 = float(np.real(wz @ np.abs(vals) ** 2 @ fsw.calc.quad.weights))
    hs = float(np.sum(np.abs(H) ** 2))
    s.add("W.hs_norm", abs(norm2 - hs) / hs, 1e-5)

    # polar decomposition on each factor: exp(lam Delta / 4) U0 = S0 blockwise, b^1/2 w = s
    rng = s.rng("polar.forward")
    worst = 0.0
    G = fsw.calc.gram
    half = sqrtm(G)
    for _ in range(5):
        i, j = (int(x) for x in rng.integers(0, numkit.count(n, Ns) * d, 2))
        A = rank_one("fock", Ns, n, lam, i, j, d)
        for a in range(d):
            for b in range(d):
                blk = A.block(a, b)
                fwd = berezin0.u0_via_weyl(blk).heat(lam / 4)
                S0 = berezin0.berezin_symbol0(blk)
                worst = max(worst, fwd.poly.max_coeff_diff(S0.poly))
        e = np.zeros((d, d), dtype=complex)
        e[rng.integers(d), rng.integers(d)] = 1
        pts = [ch.random_point(rng) for _ in range(4)]
        back = fsw.calc.w((half @ e.ravel()).reshape(d, d)).values(pts)
        worst = max(worst, _amax(back - small_symbol(ch, e).values(pts)))
    s.add("polar.forward", worst, 1e-6)
    return s.report


# ---------------------------------------------------------------------------
# orbit-transfer
# ---------------------------------------------------------------------------

def _unit(d: int, a: int, b: int) -> np.ndarray:
    e = np.zeros((d, d), dtype=complex)
    e[a, b] = 1
    return e


def _orbit_samples(rng, ch, n, lam, count):
    out = []
    base = CoadjointPoint(np.zeros(n), np.zeros(n), lam, ch.phi0)
    for _ in range(count):
        out.append(motion.g_coadjoint(MotionGroupElement.random(ch, rng), base, ch))
    return out


def _random_tensor(rng, ch, n, lam):
    """One Gaussian term (Berezin symbol of a small operator) plus one polynomial term."""
    d = ch.dim_v
    Ns = 2
    A0 = OperatorMatrix(_rand(rng, numkit.count(n, Ns)), "fock", Ns, n, lam)
    terms = ((berezin0.berezin_symbol0(A0), _rand(rng, d)),
             (PolySymbol.random(n, 2, rng), _rand(rng, d)))
    return swc.TensorSymbol(terms, ch)


def orbit_transfer(cfg) -> swc.VerificationReport:
    s = _Suite("orbit-transfer", cfg)
    ch = cfg.choice()
    n, lam, order, d = cfg.n, cfg.lam, cfg.quad_order, ch.dim_v
    fsw = swc.SWMap.build("fock", ch, lam)
    ssw = swc.SWMap.build("schrodinger", ch, lam)
    calc = fsw.calc
    Ns = 6
    B = fock.segal_bargmann_matrix(Ns, lam, n, max(order, fock.min_quad_order(Ns)), d)
    size = numkit.count(n, Ns) * d

    rng = s.rng("U1.relation")
    w24 = w26 = wj = 0.0
    for _ in range(5):
        i, j = (int(x) for x in rng.integers(0, min(10, size), 2))
        A = ssw.rank_one(Ns, i, j)
        BAB = fock.conjugate_to_fock(A, B)
        z = rng.normal(size=(4, n)) + 1j * rng.normal(size=(4, n))
        pts = [ch.random_point(rng) for _ in range(3)]
        # U1(A) = U(B A B^-1) through the Berezin route; W^-1 through the Wigner tables
        u1 = swc.u_via_berezin(BAB, calc).values(z, pts)
        w24 = max(w24, _amax(u1 - ssw(A).values(z, pts)))
        W1 = swc.orbit_transfer(ssw(A), "psi", lam)
        W2 = swc.orbit_transfer(fsw(BAB), "phi", lam)
        for xi in _orbit_samples(rng, ch, n, lam, 3):
            w26 = max(w26, abs(W1(xi) - W2(xi)))
        # tau_Psi read back at Psi(p, q, phi); for n = 1 against the Wigner integral
        p, q = rng.normal(size=(2, n))
        pt = ch.random_point(rng)
        xi = motion.big_phi(weyl.j_map(p, q, lam), pt, lam, ch)
        if n == 1:
            want = sum(weyl.wigner_quadrature(A.block(a, b), p, q)[0] * calc.w(_unit(d, a, b))(pt)
                       for a in range(d) for b in range(d))
        else:
            want = swc.schrodinger_values(ssw(A), p, q, [pt], lam)[0, 0]
        wj = max(wj, abs(W1(xi) - want))
    s.add("U1.relation", w24, 1e-5)
    s.add("transfer.relation", w26, 1e-5)
    s.add("transfer.chart", wj, 1e-10)

    one = ssw(SplitOp(DiffOp.scalar(n, 1.0), np.zeros((d, d))))
    xs = _orbit_samples(s.rng("transfer.constants"), ch, n, lam, 5)
    s.add("transfer.constants", max(abs(swc.orbit_transfer(one, dirn, lam)(xi) - 1)
                                    for xi in xs for dirn in ("phi", "psi")), 1e-12)

    korder = 20 if n == 1 else 16
    rng = s.rng("B.tensor_vs_kernel")
    worst = 0.0
    for _ in range(10):
        f = _random_tensor(rng, ch, n, lam)
        z = 0.4 * (rng.normal(size=n) + 1j * rng.normal(size=n))
        pt = ch.random_point(rng)
        tens = swc.big_berezin_tensor(f, calc, lam)(z, pt)
        kern = swc.big_berezin_kernel(f, z, pt, calc, lam, order=korder)
        worst = max(worst, abs(tens - kern))
    s.add("B.tensor_vs_kernel", worst, 1e-5)

    unit = swc.TensorSymbol(((PolySymbol.constant(n, 1.0), np.eye(d)),), ch)
    pt = ch.random_point(s.rng("B.unit"))
    s.add("B.unit", max(abs(swc.big_berezin_tensor(unit, calc, lam)(np.zeros(n), pt) - 1),
                        abs(swc.big_berezin_kernel(unit, np.zeros(n), pt, calc, lam, order=korder) - 1)),
          1e-10)

    # B = S S^* with S^* computed by quadrature against the coherent states
    rng = s.rng("B.adjoint")
    # S^* f of a rank-one symbol is a Toeplitz operator with a slowly decaying tail
    Nb = 14 if n == 2 else 20
    worst = 0.0
    for _ in range(2):
        i, j = (int(x) for x in rng.integers(0, min(4, size), 2))
        f = swc.big_symbol_tensor(fsw.rank_one(Ns, i, j), ch)
        Sst = swc.big_symbol_adjoint(f, Nb, calc, lam, order=16 if n == 2 else 30)
        z = 0.4 * (rng.normal(size=(2, n)) + 1j * rng.normal(size=(2, n)))
        pts = [ch.random_point(rng) for _ in range(2)]
        want = swc.big_berezin_tensor(f, calc, lam).values(z, pts)
        worst = max(worst, _amax(swc.big_symbol_tensor(Sst, ch).values(z, pts) - want))
    s.add("B.adjoint", worst, 1e-5)
    return s.report


SUITES = {
    "heisenberg-core": heisenberg_core,
    "segal-bargmann": segal_bargmann,
    "berezin-scalar": berezin_scalar,
    "weyl-scalar": weyl_scalar,
    "compact-orbit": compact_orbit,
    "motion-fock": motion_fock,
    "motion-schrodinger": motion_schrodinger,
    "sw-axioms": sw_axioms,
    "orbit-transfer": orbit_transfer,
}

# motion-group suite -> scalar suites whose shared checks it must reproduce
REDUCTIONS = {
    "motion-fock": ("heisenberg-core",),
    "motion-schrodinger": ("heisenberg-core",),
    "sw-axioms": ("berezin-scalar", "weyl-scalar"),
}


def run_suite(name: str, cfg) -> swc.VerificationReport:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](cfg)


def shared_checks(motion_report: swc.VerificationReport, scalar_report: swc.VerificationReport) -> list:
    """(name, motion residual, scalar residual) for every check name both reports contain."""
    scal = {c.name: c.residual for c in scalar_report.checks}
    return [(c.name, c.residual, scal[c.name]) for c in motion_report.checks if c.name in scal]
