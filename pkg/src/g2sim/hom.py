"""HOM dip as a weighted average of per-pair g2 over a detuning spectrum.

Each photon pair with detuning ``delta`` (Hz) from line centre picks up a
relative phase ``-2 pi (delta + center_offset) tau`` at output delay
``tau`` (s), on top of the fixed pair phase ``phi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from g2sim.rng import uniforms

FWHM_PER_SIGMA = 2.0 * math.sqrt(2.0 * math.log(2.0))

DEFAULT_BW_HZ = 100e9
DEFAULT_STEP_HZ = 2e9
DEFAULT_HALF_SPAN_HZ = 200e9


def sigma_from_fwhm(bw_fwhm: float) -> float:
    return bw_fwhm / FWHM_PER_SIGMA


@dataclass(frozen=True)
class SpectralEnsemble:
    detunings: np.ndarray
    weights: np.ndarray
    bw_fwhm: float

    def __post_init__(self):
        d = np.asarray(self.detunings, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if d.ndim != 1 or d.shape != w.shape or d.size == 0:
            raise ValueError("detunings and weights must be equal-length non-empty 1-D arrays")
        if np.any(np.diff(d) <= 0):
            raise ValueError("detunings must be strictly increasing")
        if np.any(w < 0) or abs(math.fsum(w.tolist()) - 1.0) > 1e-12:
            raise ValueError("weights must be non-negative and sum to 1")
        object.__setattr__(self, "detunings", d)
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return self.detunings.size


@dataclass(frozen=True)
class HomDipCurve:
    taus: np.ndarray
    g2_values: np.ndarray
    phi: float
    center_offset: float


def gaussian_spectral_grid(bw_fwhm: float = DEFAULT_BW_HZ, step: float = DEFAULT_STEP_HZ,
                           half_span: float = DEFAULT_HALF_SPAN_HZ) -> SpectralEnsemble:
    """Uniform detuning grid on [-half_span, half_span] with Gaussian weights.

    The defaults (100 GHz FWHM, 2 GHz step, +-200 GHz) give 201 pairs.
    """
    if not (bw_fwhm > 0 and step > 0):
        raise ValueError("bw_fwhm and step must be > 0")
    if not half_span >= step:
        raise ValueError("half_span must be >= step")
    k = int(round(half_span / step))
    detunings = step * np.arange(-k, k + 1, dtype=float)
    sigma = sigma_from_fwhm(bw_fwhm)
    raw = np.exp(-detunings ** 2 / (2.0 * sigma ** 2))
    return SpectralEnsemble(detunings, raw / math.fsum(raw.tolist()), bw_fwhm)


def sampled_spectral_ensemble(bw_fwhm: float, n_events: int, seed: int) -> SpectralEnsemble:
    """Equal-weight ensemble of Gaussian-distributed detunings.

    Detunings come from Box-Muller on consecutive uniform pairs
    ``(u[2j], u[2j+1])`` (cosine branch only), then sorted.
    """
    if not bw_fwhm > 0:
        raise ValueError("bw_fwhm must be > 0")
    if n_events < 1:
        raise ValueError("n_events must be >= 1")
    u = uniforms(seed, 2 * n_events).reshape(n_events, 2)
    z = np.sqrt(-2.0 * np.log1p(-u[:, 0])) * np.cos(2.0 * np.pi * u[:, 1])
    d = np.sort(sigma_from_fwhm(bw_fwhm) * z)
    if np.any(np.diff(d) <= 0):
        raise ValueError("sampled detunings collided; use another seed")
    return SpectralEnsemble(d, np.full(n_events, 1.0 / n_events), bw_fwhm)


def event_g2(delta, tau, phi: float = math.pi / 2, center_offset: float = 0.0):
    """g2 of one pair at detuning ``delta`` (Hz) and delay ``tau`` (s).

    With ``phi = pi/2`` and no centre offset this is
    ``(1 - cos(4 pi delta tau)) / 2``, period ``1 / (2 delta)`` in ``tau``.
    Broadcasts over array arguments.
    """
    phase = -2.0 * np.pi * (np.add(delta, center_offset)) * np.asarray(tau) + phi
    out = 0.5 * (1.0 + np.cos(2.0 * phase))
    return float(out) if np.ndim(out) == 0 else out


def _weighted_rows(ensemble: SpectralEnsemble, taus: np.ndarray,
                   phi: float, center_offset: float) -> np.ndarray:
    per_event = event_g2(ensemble.detunings[None, :], taus[:, None], phi, center_offset)
    # one independent reduction per tau, in grid order
    return np.array([math.fsum((row * ensemble.weights).tolist()) for row in per_event])


def _as_grid(values, name: str) -> np.ndarray:
    a = np.atleast_1d(np.asarray(values, dtype=float))
    if a.ndim != 1 or a.size == 0:
        raise ValueError(f"{name} must be a non-empty 1-D grid")
    return a


def hom_dip_curve(ensemble: SpectralEnsemble, taus, phi: float = math.pi / 2,
                  center_offset: float = 0.0) -> HomDipCurve:
    t = _as_grid(taus, "taus")
    return HomDipCurve(t, _weighted_rows(ensemble, t, phi, center_offset), phi, center_offset)


def hom_dip_closed_form(bw_fwhm: float, tau, phi: float = math.pi / 2,
                        center_offset: float = 0.0):
    """Exact average of ``event_g2`` over a continuous Gaussian spectrum.

    ``(1 + cos(2 (phi - 2 pi center_offset tau)) exp(-8 pi^2 sigma^2 tau^2)) / 2``
    """
    if not bw_fwhm > 0:
        raise ValueError("bw_fwhm must be > 0")
    sigma = sigma_from_fwhm(bw_fwhm)
    tau = np.asarray(tau, dtype=float)
    carrier = np.cos(2.0 * (phi - 2.0 * np.pi * center_offset * tau))
    out = 0.5 * (1.0 + carrier * np.exp(-8.0 * np.pi ** 2 * sigma ** 2 * tau ** 2))
    return float(out) if out.ndim == 0 else out


def g2_phi_map(ensemble: SpectralEnsemble, taus, phis,
               center_offset: float = 0.0) -> np.ndarray:
    """Matrix of ensemble g2 with rows over ``taus`` and columns over ``phis``."""
    t = _as_grid(taus, "taus")
    p = _as_grid(phis, "phis")
    return np.column_stack([_weighted_rows(ensemble, t, float(phi), center_offset)
                            for phi in p])
