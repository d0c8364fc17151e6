"""Bounded-confidence opinion dynamics with opinion-dependent mutation.

Thin Python surface over the C++ engine; see the README for the CLI.
"""

from ._core import (
    DegreeStats,
    Graph,
    MutationProfile,
    Peak,
    ProfileKind,
    Scheme,
    SimConfig,
    StreamTag,
    SweepPlan,
    __version__,
    cli,
    derive_seed,
    detect_peaks,
    generate_er,
    histogram_density,
    l1_distance,
    pair_update,
    run,
    sweep,
    symmetry_l1,
)

__all__ = [
    "DegreeStats",
    "Graph",
    "MutationProfile",
    "Peak",
    "ProfileKind",
    "Scheme",
    "SimConfig",
    "StreamTag",
    "SweepPlan",
    "__version__",
    "cli",
    "derive_seed",
    "detect_peaks",
    "generate_er",
    "histogram_density",
    "l1_distance",
    "pair_update",
    "run",
    "sweep",
    "symmetry_l1",
]
