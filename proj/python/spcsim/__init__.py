"""Pulsed-decoherence simulator.

Spectral densities, pulse schedules, coherence traces, peak-value analysis,
and a discrete-mode cross-check oracle, backed by a C++ core.
"""

from ._core import (
    AnalysisConfig,
    CoherenceTrace,
    CrossCheckReport,
    DiscreteMode,
    DiscreteModeSet,
    DiscretizationRule,
    EnvelopeFit,
    ExponentMethod,
    ExponentValue,
    InteractionModeReport,
    IntensityValue,
    KernelMethod,
    KernelValue,
    OptimizeResult,
    PeakSeries,
    PulseTrain,
    QuadratureConfig,
    SpectralDensity,
    SpectralFamily,
    SpectralMoments,
    SweepMaximum,
    SweepPoint,
    SweepResult,
    TracePoint,
    asymptotic_peak,
    cross_check,
    decoherence_exponent,
    discretize,
    displacement_amplitudes,
    intensity,
    interaction_mode_report,
    modulation_delta,
    optimize_interval,
    pair_expansion,
    sweep,
    trace,
)

__all__ = [
    "AnalysisConfig",
    "CoherenceTrace",
    "CrossCheckReport",
    "DiscreteMode",
    "DiscreteModeSet",
    "DiscretizationRule",
    "EnvelopeFit",
    "ExponentMethod",
    "ExponentValue",
    "InteractionModeReport",
    "IntensityValue",
    "KernelMethod",
    "KernelValue",
    "OptimizeResult",
    "PeakSeries",
    "PulseTrain",
    "QuadratureConfig",
    "SpectralDensity",
    "SpectralFamily",
    "SpectralMoments",
    "SweepMaximum",
    "SweepPoint",
    "SweepResult",
    "TracePoint",
    "asymptotic_peak",
    "cross_check",
    "decoherence_exponent",
    "discretize",
    "displacement_amplitudes",
    "intensity",
    "interaction_mode_report",
    "modulation_delta",
    "optimize_interval",
    "pair_expansion",
    "sweep",
    "trace",
]

__version__ = "0.1.0"
