"""Simulator for a one-step controlled-phase gate on qutrits dispersively
coupled to a single cavity mode."""

from qpgate._core import (
    DerivedParams,
    HilbertSpace,
    SystemParams,
    __version__,
    annihilation,
    build_dispersive_hamiltonian,
    build_effective_hamiltonian_encoded,
    build_effective_hamiltonian_full,
    build_full_hamiltonian,
    closed_form_unitary,
    derive,
    encode,
    gate_fidelity_ideal,
    gate_fidelity_lossy,
    ideal_gate_matrix,
    kron,
    matched_mu,
    product_superposition_state,
    physical_units_report,
    run_gate_ideal,
    truth_table,
)

__all__ = [
    "DerivedParams",
    "HilbertSpace",
    "SystemParams",
    "__version__",
    "annihilation",
    "build_dispersive_hamiltonian",
    "build_effective_hamiltonian_encoded",
    "build_effective_hamiltonian_full",
    "build_full_hamiltonian",
    "closed_form_unitary",
    "derive",
    "encode",
    "gate_fidelity_ideal",
    "gate_fidelity_lossy",
    "ideal_gate_matrix",
    "kron",
    "matched_mu",
    "product_superposition_state",
    "physical_units_report",
    "run_gate_ideal",
    "truth_table",
]
