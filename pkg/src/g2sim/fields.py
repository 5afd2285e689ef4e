"""Complex field amplitudes and lossless two-port matrix algebra.

Amplitudes are plain Python ``complex`` values (a pair of IEEE doubles).
Global phase is kept as computed; nothing here normalizes it away.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

ComplexAmplitude = complex

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _check_finite(*values: complex | float) -> None:
    for v in values:
        if not cmath.isfinite(v):
            raise ValueError(f"non-finite value: {v!r}")


@dataclass(frozen=True)
class PlaneWaveField:
    """Traveling field ``amplitude * exp(i(k r - omega t + phase))``.

    Units: ``wavevector`` in rad/m, ``angular_frequency`` in rad/s,
    ``initial_phase`` in rad. ``amplitude`` is in arbitrary field units.
    """

    amplitude: float
    wavevector: float = 0.0
    angular_frequency: float = 0.0
    initial_phase: float = 0.0

    def __post_init__(self):
        _check_finite(self.amplitude, self.wavevector,
                      self.angular_frequency, self.initial_phase)
        if self.amplitude < 0:
            raise ValueError("amplitude must be >= 0")

    def total_phase(self, r: float, t: float) -> float:
        return self.wavevector * r - self.angular_frequency * t + self.initial_phase


class FieldPair(NamedTuple):
    """Amplitudes at the two ports of a two-port element."""

    port_a: complex
    port_b: complex


@dataclass(frozen=True)
class TwoPortMatrix:
    """2x2 complex transfer matrix ``[[m11, m12], [m21, m22]]``."""

    m11: complex
    m12: complex
    m21: complex
    m22: complex

    def __post_init__(self):
        _check_finite(self.m11, self.m12, self.m21, self.m22)

    @classmethod
    def identity(cls) -> TwoPortMatrix:
        return cls(1 + 0j, 0j, 0j, 1 + 0j)

    @classmethod
    def from_array(cls, a) -> TwoPortMatrix:
        a = np.asarray(a, dtype=complex)
        if a.shape != (2, 2):
            raise ValueError(f"expected a 2x2 array, got shape {a.shape}")
        return cls(complex(a[0, 0]), complex(a[0, 1]),
                   complex(a[1, 0]), complex(a[1, 1]))

    def to_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)

    def dagger(self) -> TwoPortMatrix:
        c = complex.conjugate
        return TwoPortMatrix(c(self.m11), c(self.m21), c(self.m12), c(self.m22))

    def __matmul__(self, other: TwoPortMatrix) -> TwoPortMatrix:
        return compose(self, other)

    def scaled(self, factor: complex) -> TwoPortMatrix:
        return TwoPortMatrix(factor * self.m11, factor * self.m12,
                             factor * self.m21, factor * self.m22)

    def max_abs_diff(self, other: TwoPortMatrix) -> float:
        return max(abs(self.m11 - other.m11), abs(self.m12 - other.m12),
                   abs(self.m21 - other.m21), abs(self.m22 - other.m22))

    def unitarity_error(self) -> float:
        """Largest entry of ``|M^dagger M - I|``."""
        return compose(self.dagger(), self).max_abs_diff(TwoPortMatrix.identity())


def eval_plane_wave(field: PlaneWaveField, r: float, t: float) -> complex:
    _check_finite(r, t)
    theta = field.total_phase(r, t)
    return complex(field.amplitude * math.cos(theta), field.amplitude * math.sin(theta))


def bs_matrix() -> TwoPortMatrix:
    """Lossless 50:50 beam splitter, with ``i`` (a pi/2 shift) on reflection."""
    return TwoPortMatrix(complex(_INV_SQRT2, 0.0), complex(0.0, _INV_SQRT2),
                         complex(0.0, _INV_SQRT2), complex(_INV_SQRT2, 0.0))


def phase_shifter(psi: float) -> TwoPortMatrix:
    """``diag(1, exp(i psi))``: phase ``psi`` added to the second arm."""
    _check_finite(psi)
    return TwoPortMatrix(1 + 0j, 0j, 0j, complex(math.cos(psi), math.sin(psi)))


def compose(second: TwoPortMatrix, first: TwoPortMatrix) -> TwoPortMatrix:
    """Matrix product ``second @ first`` (``first`` acts on the fields first)."""
    a, b = second, first
    return TwoPortMatrix(
        a.m11 * b.m11 + a.m12 * b.m21,
        a.m11 * b.m12 + a.m12 * b.m22,
        a.m21 * b.m11 + a.m22 * b.m21,
        a.m21 * b.m12 + a.m22 * b.m22,
    )


def apply_two_port(m: TwoPortMatrix, fields: FieldPair) -> FieldPair:
    a, b = fields
    return FieldPair(m.m11 * a + m.m12 * b, m.m21 * a + m.m22 * b)


def intensity(a: complex) -> float:
    return a.real * a.real + a.imag * a.imag
