import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from swcorr import berezin0 as B0, fock, heisenberg as H, numkit, weyl
from swcorr.operators import DiffOp, OperatorMatrix, identity, rank_one
from swcorr.polysym import PolySymbol

seeds = st.integers(0, 2 ** 31 - 1)


def test_moment_map_at_origin():
    xi = B0.phi_lambda(np.zeros(2), 1.5)
    assert np.array_equal(xi.as_array(), [0, 0, 0, 0, 1.5])


@settings(max_examples=25, deadline=None)
@given(seeds, st.floats(0.2, 3))
def test_moment_map_equivariant(seed, lam):
    rng = np.random.default_rng(seed)
    g = H.HeisElement.random(2, rng)
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    lhs = B0.phi_lambda(H.act_fock(g, z, lam), lam).as_array()
    rhs = H.h_coadjoint(g, B0.phi_lambda(z, lam)).as_array()
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_moment_maps_agree_through_chart():
    lam, p, q = 0.7, np.array([0.3]), np.array([-1.2])
    assert np.allclose(B0.phi_lambda(weyl.j_map(p, q, lam), lam).as_array(),
                       weyl.psi_lambda(p, q, lam).as_array(), atol=1e-15)


def test_symbol_of_identity():
    z = np.array([[0.0], [1 + 1j], [-0.5j]])
    assert np.allclose(B0.berezin_symbol0(identity("fock", 20, 1, 1.0))(z), 1.0, atol=1e-10)
    assert np.allclose(B0.berezin_symbol0(DiffOp.scalar(1, 1.0), 1.0)(z), 1.0)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_symbol_matches_coherent_state_expectation(seed):
    rng = np.random.default_rng(seed)
    lam, N = rng.uniform(0.3, 2), 6
    m = numkit.count(2, N)
    A = OperatorMatrix(rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m)), "fock", N, 2, lam)
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    e = fock.coherent_coeffs(z, 2, N, lam)
    direct = (np.conj(e) @ A.data @ e) / np.exp(np.sum(abs(z) ** 2) / (2 * lam))
    assert B0.berezin_symbol0(A)(z[None])[0] == pytest.approx(direct, rel=1e-10, abs=1e-12)
    assert B0.berezin_symbol0(A.adjoint())(z[None])[0] == pytest.approx(np.conj(direct), rel=1e-10,
                                                                       abs=1e-12)


@pytest.mark.parametrize("n", [1, 2])
def test_symbol_of_derived_rep_is_moment_map(n):
    lam = 1.3
    rng = np.random.default_rng(3)
    z = rng.normal(size=(6, n)) + 1j * rng.normal(size=(6, n))
    for X in H.HeisAlgElement.basis(n):
        sym = B0.berezin_symbol0(H.dpi0_op(X, lam), lam)(z)
        expect = [1j * B0.phi_lambda(zi, lam).pair(X) for zi in z]
        assert np.allclose(sym, expect, atol=1e-13)


def test_transform_of_constants_and_zzbar():
    for lam in (0.5, 1.0, 3.0):
        one = PolySymbol.constant(1, 1.0)
        assert B0.berezin_transform0(one, lam).max_coeff_diff(one) == 0
        zz = PolySymbol.monomial((1,), (1,))
        assert B0.berezin_transform0(zz, lam).max_coeff_diff(zz + 2 * lam) == 0


@settings(max_examples=10, deadline=None)
@given(seeds, st.floats(0.3, 2))
def test_transform_heat_equals_integral(seed, lam):
    rng = np.random.default_rng(seed)
    f = PolySymbol.random(1, 5, rng)
    z = rng.uniform(-1, 1, (4, 1)) + 1j * rng.uniform(-1, 1, (4, 1))
    heat = B0.berezin_transform0(f, lam)(z)
    integral = B0.berezin_transform0_integral(f, z, lam, order=10)
    assert np.allclose(heat, integral, atol=1e-8)


def test_unitary_part_of_identity_and_derived_rep():
    lam = 0.8
    assert B0.u0_via_weyl(DiffOp.scalar(1, 1.0), lam).max_coeff_diff(PolySymbol.constant(1, 1.0)) == 0
    for X in H.HeisAlgElement.basis(2):
        op = H.dpi0_op(X, lam)
        # linear symbols are fixed by the heat flow, so U0 = S0 here
        assert B0.u0_via_weyl(op, lam).max_coeff_diff(B0.berezin_symbol0(op, lam)) < 1e-13


@pytest.mark.parametrize("ij", [(0, 0), (1, 0), (2, 3), (4, 4)])
def test_forward_heat_of_unitary_part(ij):
    lam, N = 1.2, 6
    A = rank_one("fock", N, 1, lam, *ij)
    fwd = B0.u0_via_weyl(A).heat(lam / 4)
    S0 = B0.berezin_symbol0(A)
    assert fwd.kappa == pytest.approx(S0.kappa)
    assert fwd.poly.max_coeff_diff(S0.poly) < 1e-12


def test_unitary_part_real_on_hermitian():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    A = OperatorMatrix(X + X.conj().T, "fock", 7, 1, 1.0)
    z = rng.normal(size=(10, 1)) + 1j * rng.normal(size=(10, 1))
    assert np.max(np.abs(B0.u0_values(A, z).imag)) < 1e-12
