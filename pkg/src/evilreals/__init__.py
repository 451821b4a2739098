"""Exact hitting probabilities and hit-location moments for digit partial sums,
plus certified digit scans of concrete constants."""

__version__ = "0.1.0"

from .digits import ConstantDescriptor, DigitStream, CertificationError  # noqa: E402
from .evilgf import (  # noqa: E402
    asymptotic_moment,
    build_H,
    build_h,
    conditional_moments,
    first_hit_distribution,
    hit_probability,
    hit_probability_recurrence,
    raw_moment_series,
)
from .scan import ScanMode, ScanResult, monte_carlo_scan, scan, scan_batch, scan_constant  # noqa: E402

__all__ = [
    "CertificationError",
    "ConstantDescriptor",
    "DigitStream",
    "ScanMode",
    "ScanResult",
    "asymptotic_moment",
    "build_H",
    "build_h",
    "conditional_moments",
    "first_hit_distribution",
    "hit_probability",
    "hit_probability_recurrence",
    "monte_carlo_scan",
    "raw_moment_series",
    "scan",
    "scan_batch",
    "scan_constant",
]
