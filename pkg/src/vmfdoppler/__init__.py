"""Doppler power spectrum of mobile channels with von Mises-Fisher scattering."""

from .doppler import DopplerParams, DopplerSpectrum, cdf, deterministic_limit, endpoint_density, log_pdf, pdf, spectrum
from .geometry import AngleDir, MotionSpec, UnitVec3, cos_beta, doppler_shift, to_angles, to_unit_vector
from .mathkit import DomainError, IntegrationError, QuadratureSpec
from .vmf import VmfParams, mean_doa, sample, vmf_pdf

__version__ = "0.1.0"
