"""Fidelity susceptibility of the disordered quantum XY chain.

Thin wrapper over the compiled ``_core`` extension; see the CLI for batch
scans and CSV products.
"""

from ._core import (  # noqa: F401
    ChainSpec,
    ChiEstimate,
    CollapseFit,
    CollapseKind,
    ConfigError,
    Direction,
    DisorderRealization,
    EnsembleConfig,
    EnsembleSummary,
    NumericError,
    PolarFactors,
    PowerLawFit,
    SampleSet,
    Transition,
    __version__,
    build_matrices,
    chi,
    chi_frobenius,
    chi_log_fidelity,
    energy_gap,
    exact_fidelity,
    fidelity,
    fit_collapse,
    ks_distance,
    mckenzie_delta,
    polar_decompose,
    power_law_fit,
    run_ensemble,
    sample_realization,
    summarize_samples,
)

__all__ = [
    "ChainSpec",
    "ChiEstimate",
    "CollapseFit",
    "CollapseKind",
    "ConfigError",
    "Direction",
    "DisorderRealization",
    "EnsembleConfig",
    "EnsembleSummary",
    "NumericError",
    "PolarFactors",
    "PowerLawFit",
    "SampleSet",
    "Transition",
    "__version__",
    "build_matrices",
    "chi",
    "chi_frobenius",
    "chi_log_fidelity",
    "energy_gap",
    "exact_fidelity",
    "fidelity",
    "fit_collapse",
    "ks_distance",
    "mckenzie_delta",
    "polar_decompose",
    "power_law_fit",
    "run_ensemble",
    "sample_realization",
    "summarize_samples",
]
