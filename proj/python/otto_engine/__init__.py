from ._core import (
    EngineParams,
    Permutation,
    characteristic_function,
    cycle_statistics,
    detailed_ft_check,
    ergotropic_unitary,
    gibbs_state,
    integral_ft_residual,
    joint_distribution,
    named_unitary,
    permutation_work,
    sample_cycles,
    tur_report,
    work_distribution,
)

__all__ = [
    "EngineParams",
    "Permutation",
    "characteristic_function",
    "cycle_statistics",
    "detailed_ft_check",
    "ergotropic_unitary",
    "gibbs_state",
    "integral_ft_residual",
    "joint_distribution",
    "named_unitary",
    "permutation_work",
    "sample_cycles",
    "tur_report",
    "work_distribution",
]
