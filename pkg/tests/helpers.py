"""Shared test utilities: random link instances with known ground truth."""

import math

import numpy as np

from mimo3d import (
    encode_direct,
    make_equivalent,
    sample_channel,
    snr_to_sigma2,
)
from mimo3d.decoders import BRANCH_DIMS
from mimo3d.linalg import tilde_interleave, vec_stack


def random_instance(rng, constellation, snr_db, variant="new"):
    """One transmitted codeword through one channel draw.

    Returns (true symbols, EquivalentChannel, interleaved receive vector).
    ``snr_db=None`` means noiseless.
    """
    m = constellation.order
    s_true = constellation.points[rng.integers(0, m, 8)]
    h = sample_channel(rng)
    eq = make_equivalent(h, variant)
    x = encode_direct(s_true, variant)
    y = h @ x
    if snr_db is not None:
        sigma = np.sqrt(snr_to_sigma2(snr_db, constellation))
        y = y + sigma * (rng.standard_normal((2, 4)) + 1j * rng.standard_normal((2, 4)))
    return s_true, eq, tilde_interleave(vec_stack(y))


def random_branch_fixture(rng, pam):
    """Random (v, R) with the entries the parallel decisions actually read."""
    r = np.zeros((16, 16))
    for i in range(8):
        r[i, i] = 0.05 + abs(rng.standard_normal())
    for i1, i2 in BRANCH_DIMS:
        r[i1, i2] = rng.standard_normal()
    v = rng.standard_normal(8) * rng.uniform(0.2, 3.0)
    return v, r


def branch_oracle(v1, v2, r11, r12, r22, pam):
    """Exhaustive 2-dim PAM argmin for one parallel branch."""
    best, best_d = None, math.inf
    for s2 in pam.level_tuple:
        for s1 in pam.level_tuple:
            d = (v1 - r11 * s1 - r12 * s2) ** 2 + (v2 - r22 * s2) ** 2
            if d < best_d:
                best_d, best = d, (s1, s2)
    return best, best_d
