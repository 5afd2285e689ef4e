"""Second-order correlation of two fields combined on a 50:50 beam splitter.

For equal input amplitudes the normalized coincidence reduces to
``g2 = (1 + cos 2(delta + phi)) / 2 = cos^2(delta + phi)``, where ``delta``
collects propagation and detuning phase and ``phi`` is the difference
of initial phases. Perfect anticorrelation needs
``delta + phi = +-(n - 1/2) pi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from g2sim.fields import (
    FieldPair,
    PlaneWaveField,
    apply_two_port,
    bs_matrix,
    eval_plane_wave,
    intensity,
)
from g2sim.rng import uniforms


class UndefinedCorrelationError(ValueError):
    """Raised when the mean intensity in the g2 denominator is zero."""


@dataclass(frozen=True)
class RelativePhaseState:
    """Phase of input 1 relative to input 2.

    ``delta`` is ``(k1 - k2) r - (w1 - w2) t``; ``phi`` is ``phi1 - phi2``.
    Path-length differences are folded into ``delta``.
    """

    delta: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.delta) and math.isfinite(self.phi)):
            raise ValueError("delta and phi must be finite")

    @property
    def total(self) -> float:
        return self.delta + self.phi

    @classmethod
    def from_fields(cls, e1: PlaneWaveField, e2: PlaneWaveField,
                    r: float, t: float) -> RelativePhaseState:
        delta = ((e1.wavevector - e2.wavevector) * r
                 - (e1.angular_frequency - e2.angular_frequency) * t)
        return cls(delta, e1.initial_phase - e2.initial_phase)


@dataclass(frozen=True)
class CorrelationSample:
    i3: float
    i4: float
    product: float
    g2: float


@dataclass(frozen=True)
class AnticorrelationSolution:
    n: int
    sign: int

    @property
    def phase(self) -> float:
        return self.sign * (self.n - 0.5) * math.pi


def g2_coherent(state: RelativePhaseState) -> float:
    return 0.5 * (1.0 + math.cos(2.0 * state.total))


def g2_from_fields(e1: PlaneWaveField, e2: PlaneWaveField,
                   r: float = 0.0, t: float = 0.0) -> CorrelationSample:
    """Propagate both inputs through the beam splitter and correlate outputs.

    The denominator uses the single-port intensity averaged over the total
    relative phase, ``(E01^2 + E02^2) / 2`` for each port; for equal
    amplitudes this reproduces ``g2_coherent`` exactly.
    """
    if e1.amplitude <= 0 or e2.amplitude <= 0:
        raise UndefinedCorrelationError(
            "both inputs need a non-zero amplitude to normalize g2")
    out = apply_two_port(bs_matrix(), FieldPair(eval_plane_wave(e1, r, t),
                                                eval_plane_wave(e2, r, t)))
    i3 = intensity(out.port_a)
    i4 = intensity(out.port_b)
    mean_port = 0.5 * (e1.amplitude ** 2 + e2.amplitude ** 2)
    product = i3 * i4
    return CorrelationSample(i3, i4, product, product / (mean_port * mean_port))


def anticorrelation_phases(n_max: int) -> list[AnticorrelationSolution]:
    """Phases ``+-(n - 1/2) pi`` for ``n = 1..n_max``, positive sign first."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    return [AnticorrelationSolution(n, sign)
            for n in range(1, n_max + 1) for sign in (1, -1)]


def coincidence_time_average(intensity_a, intensity_b, duration: float) -> float:
    """Time-averaged product ``(1/T) int_0^T I_a I_b dt`` by the trapezoid rule.

    Both traces must be sampled on the same uniform grid spanning [0, T],
    endpoints included.
    """
    a = np.asarray(intensity_a, dtype=float)
    b = np.asarray(intensity_b, dtype=float)
    if a.ndim != 1 or a.shape != b.shape:
        raise ValueError(f"traces must be 1-D and equal length, got {a.shape} and {b.shape}")
    if a.size < 2:
        raise ValueError("need at least 2 samples")
    if not duration > 0:
        raise ValueError(f"duration must be > 0, got {duration}")
    dt = duration / (a.size - 1)
    return float(np.trapezoid(a * b, dx=dt)) / duration


def _mean(x: np.ndarray) -> float:
    # correctly rounded sum: independent of summation order
    return math.fsum(x.tolist()) / x.size


def _shifted_mean(x: np.ndarray) -> float:
    # exact for constant samples
    return float(x[0]) + _mean(x - x[0])


def incoherent_baseline(n_samples: int, seed: int, phi: float = 0.0) -> float:
    """Monte-Carlo mean of ``g2_coherent`` with ``delta`` uniform on [0, 2 pi).

    Sample ``j`` uses the ``j``-th uniform of the seeded stream.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    delta = 2.0 * math.pi * uniforms(seed, n_samples)
    return _mean(0.5 * (1.0 + np.cos(2.0 * (delta + phi))))


def chaotic_amplitudes(n_samples: int, seed: int) -> np.ndarray:
    """Circular complex Gaussian amplitudes with unit mean intensity.

    Event ``j`` consumes uniforms ``u[2j]`` and ``u[2j+1]``: the intensity
    ``-ln(1 - u[2j])`` is exponential (the limit of a sum of many random
    phasors) and the phase is ``2 pi u[2j+1]``.
    """
    u = uniforms(seed, 2 * n_samples).reshape(n_samples, 2)
    modulus = np.sqrt(-np.log1p(-u[:, 0]))
    return modulus * np.exp(2j * np.pi * u[:, 1])


def hbt_chaotic_g2(n_samples: int, seed: int, chaotic: bool = True) -> float:
    """``<I3 I4> / (<I3><I4>)`` for a single input split on the beam splitter.

    The second input port is vacuum. With ``chaotic=False`` the input is a
    constant unit amplitude, which gives exactly 1.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    if chaotic:
        e1 = chaotic_amplitudes(n_samples, seed)
    else:
        e1 = np.ones(n_samples, dtype=complex)
    bs = bs_matrix()
    e3 = bs.m11 * e1
    e4 = bs.m21 * e1
    i3 = e3.real ** 2 + e3.imag ** 2
    i4 = e4.real ** 2 + e4.imag ** 2
    m3 = _shifted_mean(i3)
    m4 = _shifted_mean(i4)
    return 1.0 + _mean((i3 - m3) * (i4 - m4)) / (m3 * m4)
