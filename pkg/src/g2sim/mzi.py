"""Mach-Zehnder interferometer (BS, phase shifter, BS) and bunching-port routing."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from g2sim.fields import (
    FieldPair,
    TwoPortMatrix,
    apply_two_port,
    bs_matrix,
    intensity,
)
from g2sim.rng import uniforms

MODES = ("phase-sign", "psi-choice")

# psi-choice mode: choice +1 selects psi = pi (bunched into port 3) and
# choice -1 selects psi = 0 (port 4), matching phase-sign mode on input 1.
PSI_FOR_CHOICE = {1: math.pi, -1: 0.0}


@dataclass(frozen=True)
class MziConfig:
    psi: float
    input_port: int = 1
    e0: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.psi):
            raise ValueError("psi must be finite")
        if self.input_port not in (1, 2):
            raise ValueError(f"input_port must be 1 or 2, got {self.input_port}")
        if not (math.isfinite(self.e0) and self.e0 > 0):
            raise ValueError("e0 must be finite and > 0")


@dataclass(frozen=True)
class BunchingEvent:
    choice: int
    output_port: int
    i3: float
    i4: float

    @property
    def coincidence_product(self) -> float:
        return self.i3 * self.i4


def mzi_transfer(psi: float) -> TwoPortMatrix:
    """``(1/2) [[1 - e, i(1 + e)], [i(1 + e), -(1 - e)]]`` with ``e = exp(i psi)``."""
    if not math.isfinite(psi):
        raise ValueError("psi must be finite")
    e = complex(math.cos(psi), math.sin(psi))
    return TwoPortMatrix(0.5 * (1 - e), 0.5j * (1 + e), 0.5j * (1 + e), -0.5 * (1 - e))


def mzi_outputs(config: MziConfig) -> tuple[FieldPair, float, float]:
    """Output fields and intensities ``(I3, I4)`` for light entering one port.

    From port 1: ``I3 = E0^2 sin^2(psi/2)``, ``I4 = E0^2 cos^2(psi/2)``.
    """
    fields_in = (FieldPair(config.e0 + 0j, 0j) if config.input_port == 1
                 else FieldPair(0j, config.e0 + 0j))
    out = apply_two_port(mzi_transfer(config.psi), fields_in)
    return out, intensity(out.port_a), intensity(out.port_b)


def mzi_g2_normalized(psi):
    """``I3 I4`` scaled to unit peak, i.e. ``sin^2(psi)``; zero at ``psi = n pi``."""
    out = np.sin(psi) ** 2
    return float(out) if np.ndim(out) == 0 else out


def _port_of(i3: float, i4: float) -> int:
    return 3 if i3 > i4 else 4


def bunching_fields(sign: int, phase_carrier: int, e0: float = 1.0) -> FieldPair:
    """Beam-splitter outputs for equal inputs with ``sign * pi/2`` on one of them."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if phase_carrier not in (1, 2):
        raise ValueError(f"phase_carrier must be 1 or 2, got {phase_carrier}")
    shifted = e0 * cmath.exp(1j * sign * math.pi / 2)
    plain = complex(e0)
    inputs = FieldPair(shifted, plain) if phase_carrier == 1 else FieldPair(plain, shifted)
    return apply_two_port(bs_matrix(), inputs)


def bunching_port(sign: int, phase_carrier: int) -> int:
    """Output port (3 or 4) that receives all the light.

    ``phase_carrier`` names the input (1 or 2) holding the ``sign * pi/2``
    phase. On input 1, + goes to port 3; on input 2, + goes to port 4.
    """
    out = bunching_fields(sign, phase_carrier)
    return _port_of(intensity(out.port_a), intensity(out.port_b))


def _template_event(choice: int, mode: str) -> BunchingEvent:
    if mode == "phase-sign":
        out = bunching_fields(choice, 1)
        i3, i4 = intensity(out.port_a), intensity(out.port_b)
        return BunchingEvent(choice, bunching_port(choice, 1), i3, i4)
    _, i3, i4 = mzi_outputs(MziConfig(PSI_FOR_CHOICE[choice]))
    return BunchingEvent(choice, _port_of(i3, i4), i3, i4)


def random_choices(n_events: int, seed: int) -> np.ndarray:
    """Fair +-1 choices: event ``j`` is +1 when uniform ``u[j] < 1/2``."""
    return np.where(uniforms(seed, n_events) < 0.5, 1, -1)


def random_bunching_stream(n_events: int, seed: int,
                           mode: str = "phase-sign") -> list[BunchingEvent]:
    """Stream of fully bunched events with randomly chosen output port.

    ``phase-sign`` puts ``+-pi/2`` on input 1 of a beam splitter;
    ``psi-choice`` sends light into MZI port 1 with ``psi`` in {0, pi}.
    The port is a fixed function of the choice in either mode.
    """
    if n_events < 1:
        raise ValueError(f"n_events must be >= 1, got {n_events}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    templates = {c: _template_event(c, mode) for c in (1, -1)}
    return [templates[c] for c in random_choices(n_events, seed).tolist()]
