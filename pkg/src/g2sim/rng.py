"""Seeded random streams shared by every Monte-Carlo routine.

All stochastic code draws from a PCG64 bit generator (O'Neill's
permuted congruential generator, 128-bit state, XSL-RR output) seeded
through numpy's ``SeedSequence``. Only ``Generator.random`` is used,
which maps each 64-bit output ``x`` to ``(x >> 11) * 2**-53`` in [0, 1).
Derived variates are built from those uniforms with explicit formulas,
so a stream is reproducible from (seed, draw order) alone.
"""

from __future__ import annotations

import numpy as np

SEED_MAX = 2**64 - 1


def make_rng(seed: int) -> np.random.Generator:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    if not 0 <= seed <= SEED_MAX:
        raise ValueError(f"seed must fit in an unsigned 64-bit integer, got {seed}")
    return np.random.Generator(np.random.PCG64(int(seed)))


def uniforms(seed: int, n: int) -> np.ndarray:
    """First ``n`` doubles in [0, 1) of the stream for ``seed``."""
    return make_rng(seed).random(n)
