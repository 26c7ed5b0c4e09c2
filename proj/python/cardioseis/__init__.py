"""SCG event detection and respiratory grouping analysis."""

from ._cardioseis import (
    DegenerateError,
    InputError,
    analyze,
    best_lag,
    build_matched_filter,
    check_report,
    detect_events,
    drms,
    hilbert_envelope,
    integrate_flow,
    lowpass,
    matched_filter_output,
    normalized_dissim,
    pick_winner,
    relative_difference,
    resample,
    rms,
    run,
    synth,
)

__all__ = [
    "DegenerateError",
    "InputError",
    "analyze",
    "best_lag",
    "build_matched_filter",
    "check_report",
    "detect_events",
    "drms",
    "hilbert_envelope",
    "integrate_flow",
    "lowpass",
    "matched_filter_output",
    "normalized_dissim",
    "pick_winner",
    "relative_difference",
    "resample",
    "rms",
    "run",
    "synth",
]
