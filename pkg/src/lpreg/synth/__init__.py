"""Synthetic signals, noise, error metrics and array I/O."""

from lpreg.synth.imageio import downsample_image, load_array, load_image, save_array, save_image
from lpreg.synth.metrics import ErrorReport, Improvement, error_metrics, improvement, pointwise_comparison
from lpreg.synth.noise import NoiseSpec, add_noise, snr_report
from lpreg.synth.signals import grid, make_signal_1d, make_signal_2d, plateau_chirp, ring_profile

__all__ = [
    "grid",
    "plateau_chirp",
    "ring_profile",
    "make_signal_1d",
    "make_signal_2d",
    "NoiseSpec",
    "add_noise",
    "snr_report",
    "ErrorReport",
    "Improvement",
    "error_metrics",
    "improvement",
    "pointwise_comparison",
    "load_image",
    "save_image",
    "downsample_image",
    "save_array",
    "load_array",
]
