import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from swcorr import heisenberg as H, motion as M
from swcorr.compactk import CompactChoice

seeds = st.integers(0, 2 ** 31 - 1)
SU2 = CompactChoice.su2(1.0)
CHOICES = [CompactChoice.torus([1]), CompactChoice.torus([1, 2]), CompactChoice.su2(0.5), SU2]
IDS = ["t1", "t12", "j1/2", "j1"]


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_group_law(seed):
    rng = np.random.default_rng(seed)
    g, h, k = (M.MotionGroupElement.random(SU2, rng) for _ in range(3))
    e = M.MotionGroupElement.identity(2)
    assert (g * e).close_to(g, 0) and (e * g).close_to(g, 0)
    assert ((g * h) * k).close_to(g * (h * k), 1e-12)
    assert (g * g.inverse()).close_to(e, 1e-12)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_trivial_k_is_heisenberg(seed):
    rng = np.random.default_rng(seed)
    g, h = H.HeisElement.random(2, rng), H.HeisElement.random(2, rng)
    prod = M.MotionGroupElement.from_heisenberg(g) * M.MotionGroupElement.from_heisenberg(h)
    assert prod.heisenberg_part().close_to(H.h_mul(g, h), 0)


def test_bracket_reduces_to_heisenberg():
    rng = np.random.default_rng(0)
    ch = CompactChoice.trivial(2)
    X, Y = M.MotionAlgElement.random(ch, rng), M.MotionAlgElement.random(ch, rng)
    lhs = X.bracket(Y).heisenberg_part()
    rhs = X.heisenberg_part().bracket(Y.heisenberg_part())
    assert lhs.c == pytest.approx(rhs.c, abs=1e-14)


def _xi(rng, ch):
    u = rng.normal(size=ch.n) + 1j * rng.normal(size=ch.n)
    return M.CoadjointPoint(u, np.conj(u), rng.uniform(0.5, 2), ch.ad_star(ch.random_group(rng), ch.phi0))


@pytest.mark.parametrize("ch", CHOICES, ids=IDS)
def test_coadjoint_is_action_and_center_acts_trivially(ch):
    rng = np.random.default_rng(1)
    for _ in range(5):
        g, h = M.MotionGroupElement.random(ch, rng), M.MotionGroupElement.random(ch, rng)
        xi = _xi(rng, ch)
        lhs = M.g_coadjoint(g * h, xi, ch)
        rhs = M.g_coadjoint(g, M.g_coadjoint(h, xi, ch), ch)
        assert lhs.close_to(rhs, 1e-10)
        central = M.MotionGroupElement(np.zeros(ch.n), rng.normal(), np.eye(ch.n))
        assert M.g_coadjoint(central, xi, ch).close_to(xi, 0)


def test_generic_reach():
    rng = np.random.default_rng(2)
    xi = _xi(rng, SU2)
    out = M.g_coadjoint(M.reach_generic(xi), xi, SU2)
    assert np.max(np.abs(out.u1)) < 1e-14 and out.d == xi.d
    with pytest.raises(ValueError):
        M.reach_generic(M.CoadjointPoint(xi.u1, xi.u2, 0.0, xi.phi))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_p_decomposition(seed):
    rng = np.random.default_rng(seed)
    g = M.ComplexMotionElement.from_real(M.MotionGroupElement.random(SU2, rng))
    p, k, q = M.p_decompose(g)
    assert (p * k * q).close_to(g, 1e-12)


def test_p_decomposition_at_identity_k():
    g = M.ComplexMotionElement(np.array([1 + 1j]), np.array([2 - 1j]), 0.3 + 0j, np.eye(1))
    p, k, q = M.p_decompose(g)
    assert (p * k * q).close_to(g, 1e-15)
    assert np.allclose(q.w, g.w)


def test_domain_action_and_cocycle():
    rng = np.random.default_rng(3)
    lam = 1.1
    for _ in range(5):
        g, h = M.MotionGroupElement.random(SU2, rng), M.MotionGroupElement.random(SU2, rng)
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        assert np.allclose(M.act_domain(g, z), g.k @ z + g.z0, atol=1e-13)
        lhs = M.cocycle_J(g * h, z, lam, SU2)
        rhs = M.cocycle_J(g, M.act_domain(h, z), lam, SU2) @ M.cocycle_J(h, z, lam, SU2)
        assert np.allclose(lhs, rhs, rtol=1e-10, atol=1e-12)


def test_pi_reduces_to_heisenberg():
    lam, N = 1.0, 14
    g = H.HeisElement([0.3, -0.1], [0.2, 0.4], 0.5)
    P = M.pi_matrix(M.MotionGroupElement.from_heisenberg(g), N, lam, SU2)
    assert np.array_equal(P.data, H.pi0_matrix(g, N, lam).kron(np.eye(3)).data)
    S = M.sigma_matrix(M.MotionGroupElement.from_heisenberg(g), N, lam, CompactChoice.trivial(2),
                       order=40)
    assert np.array_equal(S.data, H.sigma0_matrix(g, N, lam, 40).data)


def test_torus_tau_is_diagonal():
    theta = np.array([0.4, -1.3])
    T = M.tau_matrix(np.diag(np.exp(1j * theta)), 6, 2, 1.0).data
    from swcorr import numkit
    idx = numkit.multi_indices(2, 6)
    assert np.allclose(T, np.diag(np.exp(-1j * idx @ theta)), atol=1e-15)


@pytest.mark.parametrize("ch", CHOICES, ids=IDS)
def test_pi_two_paths(ch):
    rng = np.random.default_rng(4)
    for _ in range(3):
        g = M.MotionGroupElement.random(ch, rng, 0.7)
        a = M.pi_matrix(g, 16, 1.2, ch).data
        b = M.pi_matrix(g, 16, 1.2, ch, method="direct").data
        assert np.max(np.abs(a - b)) < 1e-10


def test_derived_rep_parts():
    lam, N = 0.9, 10
    basis = M.MotionAlgElement.basis(SU2)
    Z = basis[4]
    D = M.dpi_matrix(Z, N, lam, SU2)
    assert np.allclose(D.data, 1j * lam * np.eye(D.size))
    for X in basis[5:]:
        D = M.dpi_matrix(X, N, lam, SU2)
        scalar = M.dtau_op(X.A).matrix("fock", N, lam)
        expect = np.kron(scalar.data, np.eye(3)) + np.kron(np.eye(scalar.size), SU2.drho(X.A))
        assert np.allclose(D.data, expect, atol=1e-14)


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_dtau_tilde_spectrum(lam):
    # d tau~(i) is -i times the Hermite degree
    D = M.dtau_tilde_matrix(np.array([[1j]]), 12, lam).data
    assert np.max(np.abs(D - np.diag(-1j * np.arange(13)))) < 1e-12


def test_dsigma_matches_conjugated_dpi():
    lam, N = 1.3, 10
    for X in M.MotionAlgElement.basis(SU2):
        a = M.dsigma_op(X, lam, SU2).matrix("hermite", N, lam).data
        b = M.dsigma_op_conjugated(X, lam, SU2).matrix("hermite", N, lam).data
        assert np.max(np.abs(a - b)) < 1e-12


def test_symbol_of_identity_and_of_pi():
    lam, N = 1.0, 30
    from swcorr.operators import identity
    rng = np.random.default_rng(5)
    pt = SU2.random_point(rng)
    z = np.array([0.2 + 0.1j, -0.3j])
    assert M.big_symbol(identity("fock", N, 2, lam, 3), z, pt, SU2) == pytest.approx(1.0, abs=1e-10)
    g = M.MotionGroupElement.random(SU2, rng, 0.3)
    S = M.big_symbol(M.pi_matrix(g, N, lam, SU2), z, pt, SU2)
    assert S == pytest.approx(M.big_symbol_of_pi(g, z, pt, lam, SU2), abs=1e-10)


@pytest.mark.parametrize("ch", CHOICES, ids=IDS)
def test_symbol_moment_map(ch):
    lam = 1.4
    rng = np.random.default_rng(6)
    for _ in range(4):
        z = rng.normal(size=ch.n) + 1j * rng.normal(size=ch.n)
        pt = ch.random_point(rng)
        xi = M.big_phi(z, pt, lam, ch)
        for X in M.MotionAlgElement.basis(ch):
            S = M.big_symbol(M.dpi_op(X, lam, ch), z, pt, ch, lam)
            assert S == pytest.approx(1j * xi.pair(X, ch), abs=1e-12)


def test_big_phi_at_base_point_and_inverse():
    lam = 1.7
    pt = SU2.orbit_point(np.eye(2))
    xi = M.big_phi(np.zeros(2), pt, lam, SU2)
    assert np.allclose(xi.as_array(), np.concatenate([np.zeros(8), [lam], SU2.phi0]))
    rng = np.random.default_rng(7)
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    pt = SU2.random_point(rng)
    z2, phi2 = M.big_phi_inverse(M.big_phi(z, pt, lam, SU2), lam, SU2)
    assert np.allclose(z2, z) and np.allclose(phi2, pt.phi)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_big_phi_equivariant(seed):
    rng = np.random.default_rng(seed)
    lam = 1.2
    g = M.MotionGroupElement.random(SU2, rng)
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    pt = SU2.random_point(rng)
    gz, gpt = M.act_orbit(g, z, pt, lam, SU2)
    assert M.big_phi(gz, gpt, lam, SU2).close_to(M.g_coadjoint(g, M.big_phi(z, pt, lam, SU2), SU2), 1e-10)


def test_compact_pairing_at_origin():
    rng = np.random.default_rng(8)
    pt = SU2.random_point(rng)
    xi = M.big_phi(np.zeros(2), pt, 1.0, SU2)
    for A in SU2.basis:
        X = M.MotionAlgElement(np.zeros(2), 0.0, A)
        assert xi.pair(X, SU2) == pytest.approx(np.dot(pt.phi, SU2.coords(A)), abs=1e-14)
