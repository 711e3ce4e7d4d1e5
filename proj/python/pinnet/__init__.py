"""Pinning control of coupled chaotic-oscillator networks.

Thin Python façade over the C++ core: network generation, spectral
criterion checks, quadratic-bound estimation, and controlled-network
simulation. See the individual function docstrings in :mod:`pinnet._pinnet`.
"""

from ._pinnet import (
    CouplingMatrix,
    DivergenceError,
    NetworkStructure,
    Oscillator,
    SpecError,
    analyze_structure,
    check_global_criterion,
    check_local_criterion,
    estimate_quad,
    generate,
    left_perron,
    pinned_dense,
    run_spec,
    simulate,
    symmetric_eigenvalues,
)

__all__ = [
    "CouplingMatrix",
    "DivergenceError",
    "NetworkStructure",
    "Oscillator",
    "SpecError",
    "analyze_structure",
    "check_global_criterion",
    "check_local_criterion",
    "estimate_quad",
    "generate",
    "left_perron",
    "pinned_dense",
    "run_spec",
    "simulate",
    "symmetric_eigenvalues",
]
