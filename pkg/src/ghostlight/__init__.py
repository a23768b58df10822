"""Thermal-light ghost imaging simulator."""

from .geometry import PathGeometry, RayTransferMatrix, WaveContext
from .objects import PiecewiseAperture, double_slit, single_slit
from .source import BlackbodySpectrumParams, GaussianSchellSource, fit_coherence_width

__version__ = "0.1.0"

__all__ = [
    "BlackbodySpectrumParams",
    "GaussianSchellSource",
    "PathGeometry",
    "PiecewiseAperture",
    "RayTransferMatrix",
    "WaveContext",
    "double_slit",
    "fit_coherence_width",
    "single_slit",
]
