"""Thermal local quantum uncertainty of two coupled superconducting qubits.

Matrices cross the boundary as complex128 numpy arrays; internally the
library works in extended precision.
"""

from ._core import (
    ClosedFormDiagnostics,
    DomainError,
    InvalidSpec,
    IoError,
    XState,
    __version__,
    apply_channel,
    build_hamiltonian_tqs,
    build_hamiltonian_x,
    crossover_temperature,
    evaluate_point,
    figure_ids,
    gibbs_state_numeric,
    kraus_ops,
    lqu_bruteforce,
    lqu_closed_channel,
    lqu_closed_xstate,
    lqu_numeric,
    run_figure,
    selftest,
    skew_information,
    sweep_csv,
    thermal_xstate,
    w_matrix,
    xstate_after_channel,
)

__all__ = [
    "ClosedFormDiagnostics",
    "DomainError",
    "InvalidSpec",
    "IoError",
    "XState",
    "__version__",
    "apply_channel",
    "build_hamiltonian_tqs",
    "build_hamiltonian_x",
    "crossover_temperature",
    "evaluate_point",
    "figure_ids",
    "gibbs_state_numeric",
    "kraus_ops",
    "lqu_bruteforce",
    "lqu_closed_channel",
    "lqu_closed_xstate",
    "lqu_numeric",
    "run_figure",
    "selftest",
    "skew_information",
    "sweep_csv",
    "thermal_xstate",
    "w_matrix",
    "xstate_after_channel",
]
