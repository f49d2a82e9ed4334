import math

import numpy as np
import pytest

import qpgate


def matched_params(n=3, cutoff=1):
    p = qpgate.SystemParams()
    p.n_qutrits = n
    p.mu1 = 1.0
    p.delta1 = 10.7
    p.delta = 8.4
    p.mu = qpgate.matched_mu(10.7, 8.4, 1.0)
    p.fock_cutoff = cutoff
    return p


def test_matched_mu_value():
    mu = qpgate.matched_mu(10.7, 8.4, 1.0)
    oracle = math.sqrt(2 * 2.3 / 10.7) / (1 / 8.4 + 1 / 10.7)
    assert mu == pytest.approx(oracle, abs=1e-15)
    assert mu == pytest.approx(3.0854, abs=1e-4)


def test_derived_quantities():
    d = qpgate.derive(matched_params())
    assert d.delta_small == pytest.approx(2.3)
    assert d.gate_time == pytest.approx(2 * math.pi * 10.7, rel=1e-12)
    assert d.matching_residual <= 1e-12


def test_ideal_gate_is_controlled_z():
    u = qpgate.ideal_gate_matrix(2)
    assert np.allclose(u, np.diag([1, 1, 1, -1]))


def test_hamiltonian_hermitian_and_kron():
    p = matched_params(cutoff=2)
    space = qpgate.HilbertSpace(3, 2)
    h = qpgate.build_full_hamiltonian(p, space, 0.37)
    assert h.shape == (81, 81)
    assert np.allclose(h, h.conj().T, atol=1e-12)

    a = qpgate.annihilation(2)
    i3 = np.eye(3, dtype=complex)
    assert np.allclose(qpgate.kron(i3, a), np.kron(i3, a))


def test_encode_index():
    space = qpgate.HilbertSpace(3, 5)
    psi = qpgate.encode("111", space)
    assert psi.shape == (162,)
    assert psi[132] == 1.0
    assert np.count_nonzero(psi) == 1


def test_closed_form_realizes_gate_signs():
    p = matched_params()
    t_gate = qpgate.derive(p).gate_time
    u = qpgate.closed_form_unitary(p, 3, t_gate)
    # f e e -> +1, f g e -> -1 in the (g,e,f)=(0,1,2) base-3 index.
    fee = (2 * 3 + 1) * 3 + 1
    fge = (2 * 3 + 0) * 3 + 1
    assert u[fee, fee] == pytest.approx(1.0, abs=1e-10)
    assert u[fge, fge] == pytest.approx(-1.0, abs=1e-10)


def test_gate_fidelity_fast_point():
    # Cutoff 1 is exact for encoded inputs (at most one photon is ever
    # virtually excited), which keeps the smoke test quick.
    f = qpgate.gate_fidelity_ideal(matched_params(cutoff=1))
    assert f >= 0.97


def test_units_report():
    rep = qpgate.physical_units_report(
        2 * math.pi * 85e6, 2 * math.pi * 5.09e9, 0.01, 2 * math.pi * 10.7
    )
    assert rep["quality_factor"] == pytest.approx(5.99e3, rel=2e-3)
    assert rep["gate_time_s"] == pytest.approx(126e-9, rel=0.01)


def test_validation_errors_surface_as_python_exceptions():
    p = matched_params()
    p.delta = p.delta1
    with pytest.raises(ValueError):
        qpgate.derive(p)
