import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from swcorr.compactk import CompactChoice, MembershipError, OrbitCalculus, small_symbol

seeds = st.integers(0, 2 ** 31 - 1)
CHOICES = [CompactChoice.torus([1]), CompactChoice.torus([2, -1]), CompactChoice.su2(0.5),
           CompactChoice.su2(1.0), CompactChoice.su2(1.5)]
IDS = ["t1", "t2-1", "j1/2", "j1", "j3/2"]


@pytest.mark.parametrize("ch", CHOICES, ids=IDS)
def test_rho_identity(ch):
    assert np.allclose(ch.rho(np.eye(ch.n)), np.eye(ch.dim_v), atol=1e-14)


def test_torus_character():
    ch = CompactChoice.torus([2])
    theta = 0.7
    assert ch.rho(np.diag([np.exp(1j * theta)]))[0, 0] == pytest.approx(np.exp(2j * theta))


def test_spin_half_is_defining():
    ch = CompactChoice.su2(0.5)
    for A in ch.basis:
        assert np.allclose(ch.drho(A), A, atol=1e-15)


@pytest.mark.parametrize("ch", CHOICES, ids=IDS)
def test_drho_bracket(ch):
    for A in ch.basis:
        for B in ch.basis:
            lhs = ch.drho(A) @ ch.drho(B) - ch.drho(B) @ ch.drho(A)
            assert np.allclose(lhs, ch.drho(A @ B - B @ A), atol=1e-13)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_rho_homomorphism_and_exp(seed):
    rng = np.random.default_rng(seed)
    for ch in CHOICES:
        k1, k2 = ch.random_group(rng), ch.random_group(rng)
        assert np.allclose(ch.rho(k1 @ k2), ch.rho(k1) @ ch.rho(k2), atol=1e-10)
        A = ch.random_algebra(rng, 0.5)
        assert np.allclose(ch.rho(expm(A)), expm(ch.drho(A)), atol=1e-10)


def test_membership():
    ch = CompactChoice.su2(0.5)
    with pytest.raises(MembershipError):
        ch.check_group(np.diag([1.0, 1j]))
    with pytest.raises(MembershipError):
        CompactChoice.torus([1, 1]).check_algebra(np.array([[0, 1], [-1, 0]]))
    with pytest.raises(ValueError):
        CompactChoice.su2(0.3)


@pytest.mark.parametrize("ch", CHOICES, ids=IDS)
def test_highest_weight_pairing(ch):
    """i <phi0, A> = s(drho(A))(phi0) for every basis element."""
    pt = ch.orbit_point(np.eye(ch.n))
    assert np.allclose(pt.phi, ch.phi0)
    for A in ch.basis:
        val = small_symbol(ch, ch.drho(A))(pt)
        assert val == pytest.approx(1j * np.dot(ch.phi0, ch.coords(A)), abs=1e-13)


def test_spin_half_coherent_states():
    ch = CompactChoice.su2(0.5)
    v0 = ch.coherent_state(ch.point([0, 0, 0.5]))
    assert abs(abs(v0[0]) - 1) < 1e-14 and abs(v0[1]) < 1e-14
    v1 = ch.coherent_state(ch.point([0, 0, -0.5]))
    assert abs(v1[0]) < 1e-14 and abs(abs(v1[1]) - 1) < 1e-14


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_coherent_states_unit_and_section(seed):
    rng = np.random.default_rng(seed)
    ch = CompactChoice.su2(1.0)
    pt = ch.random_point(rng)
    assert np.linalg.norm(ch.coherent_state(pt)) == pytest.approx(1.0, abs=1e-12)
    sec = ch.point(pt.phi)
    assert np.allclose(ch.ad_star(sec.k, ch.phi0), pt.phi, atol=1e-12)


@pytest.mark.parametrize("ch", CHOICES, ids=IDS)
def test_symbol_moment_map(ch):
    rng = np.random.default_rng(1)
    for _ in range(5):
        pt = ch.random_point(rng)
        A = ch.random_algebra(rng)
        val = small_symbol(ch, ch.drho(A))(pt)
        assert val == pytest.approx(1j * np.dot(pt.phi, ch.coords(A)), abs=1e-12)


@pytest.mark.parametrize("ch", CHOICES, ids=IDS)
def test_unit_symbols(ch):
    cal = OrbitCalculus.build(ch)
    pts = cal.quad.points[:5]
    assert np.allclose(small_symbol(ch, np.eye(ch.dim_v)).values(pts), 1)
    assert np.allclose(cal.w(np.eye(ch.dim_v)).values(pts), 1, atol=1e-12)


@pytest.mark.parametrize("ch", CHOICES, ids=IDS)
def test_symbol_map_injective(ch):
    cal = OrbitCalculus.build(ch)
    d = ch.dim_v
    assert np.linalg.matrix_rank(cal.gram) == d * d


def test_torus_is_trivial_calculus():
    ch = CompactChoice.torus([3])
    cal = OrbitCalculus.build(ch)
    assert np.allclose(cal.gram, 1) and np.allclose(cal.b(np.eye(1)), 1)
    assert np.allclose(cal.w_pre(np.array([[2.5]])), 2.5)


@pytest.mark.parametrize("j", [0.5, 1.0, 1.5])
def test_w_is_isometric_and_tracial(j):
    ch = CompactChoice.su2(j)
    cal = OrbitCalculus.build(ch)
    d = ch.dim_v
    rng = np.random.default_rng(2)
    A = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    B = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    wa, wb = cal.w(A).values(cal.quad.points), cal.w(B).values(cal.quad.points)
    assert cal.integrate(wa * np.conj(wb)) == pytest.approx(np.trace(A @ B.conj().T), abs=1e-10)
    # symbols of matrices are linear, so w(B*) = conj w(B)
    assert cal.integrate(wa * cal.w(B.conj().T).values(cal.quad.points)) == pytest.approx(
        np.trace(A @ B.conj().T), abs=1e-10)


@pytest.mark.parametrize("j", [0.5, 1.0])
def test_b_hermitian_psd_and_polar_path(j):
    ch = CompactChoice.su2(j)
    cal = OrbitCalculus.build(ch)
    G = cal.gram
    assert np.allclose(G, G.conj().T, atol=1e-13)
    assert np.min(np.linalg.eigvalsh(G)) > 0
    d = ch.dim_v
    E = np.eye(d * d).reshape(d * d, d, d)
    direct = np.array([cal.w(e).values(cal.quad.points) for e in E]).T
    assert np.allclose(cal.w_samples_polar(), direct, atol=1e-10)


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_w_covariance(seed):
    rng = np.random.default_rng(seed)
    ch = CompactChoice.su2(1.0)
    cal = OrbitCalculus.build(ch)
    d = ch.dim_v
    B = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    k = ch.random_group(rng)
    pt = ch.random_point(rng)
    R = ch.rho(k)
    lhs = cal.w(R.conj().T @ B @ R)(pt)
    rhs = cal.w(B)(ch.orbit_point(k @ pt.k))
    assert lhs == pytest.approx(rhs, abs=1e-10)
