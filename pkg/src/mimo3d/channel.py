"""Quasi-static Rayleigh channel, AWGN and the equivalent real model.

One channel realization is held constant over one codeword (T = 4 uses) and
redrawn independently for the next codeword; the fast decoder's R-structure
results require exactly this quasi-static behavior.

SNR convention (fixed for every decoder in this package): SNR is the average
received signal energy per receive antenna per channel use divided by the
noise energy per complex sample, computed analytically from E|h|^2 = 1,
unit-energy symbols and the generator column norms:

    signal power / rx antenna / use = energy * trace(G^T G) / (2 T)
    SNR = signal power / (2 sigma^2)

where sigma^2 is the noise variance per real dimension.  For this code
trace(G^T G) = 32 and T = 4, so sigma^2 = 2 / SNR_linear.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .code import BLOCK_LEN, build_generator
from .linalg import (
    QRFactors,
    check_expand_matrix,
    gram_schmidt_qr,
    kron_identity_apply,
    tilde_interleave,
    vec_stack,
)

N_RX = 2


def derive_rng(seed, *stream_ids):
    """Deterministic, independent random stream for (seed, stream ids).

    Identical arguments always reproduce identical draws; distinct stream
    ids give statistically independent sequences.  Used to make Monte-Carlo
    trials reproducible and order-independent.
    """
    ids = tuple(int(x) for x in stream_ids)
    return np.random.default_rng(np.random.SeedSequence((int(seed),) + ids))


def sample_channel(rng):
    """Draw a 2x4 channel with i.i.d. CN(0, 1) entries (E|h|^2 = 1)."""
    re = rng.standard_normal((N_RX, 4))
    im = rng.standard_normal((N_RX, 4))
    return (re + 1j * im) / np.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class EquivalentChannel:
    """Real equivalent channel ``h_eq = (I_T kron check(H)) G`` plus its QR."""

    h: np.ndarray          # 2x4 complex realization
    variant: str
    h_eq: np.ndarray       # 16x16 real
    qr: QRFactors


def equivalent_matrix(h, variant="new"):
    """Build the 16x16 real equivalent channel matrix for a realization."""
    h_check = check_expand_matrix(h)
    return kron_identity_apply(h_check, BLOCK_LEN, build_generator(variant))


def make_equivalent(h, variant="new"):
    """Build and cache the equivalent channel and its Gram-Schmidt QR.

    Propagates :class:`~mimo3d.linalg.RankDeficiencyError` for degenerate
    realizations (callers resample the trial).
    """
    h_eq = equivalent_matrix(h, variant)
    return EquivalentChannel(h=np.asarray(h, dtype=complex), variant=variant,
                             h_eq=h_eq, qr=gram_schmidt_qr(h_eq))


def transmit(x, h, sigma2, rng):
    """Pass a codeword through the channel and add complex AWGN.

    Noise entries are i.i.d. complex Gaussian with variance ``2 * sigma2``
    per complex sample (``sigma2`` per real dimension).  Returns the 2x4
    received matrix and its interleaved real form (noise is added in the
    complex domain and then interleaved, so the real-model statistics are
    exact).
    """
    w = np.sqrt(sigma2) * (rng.standard_normal((N_RX, 4)) + 1j * rng.standard_normal((N_RX, 4)))
    y = h @ x + w
    return y, tilde_interleave(vec_stack(y))


def snr_to_sigma2(snr_db, constellation=None, generator=None):
    """Per-real-dimension noise variance for a target SNR in dB.

    Uses the module-level SNR convention (see module docstring).  The mean
    symbol energy is taken from ``constellation`` (1 by construction) and
    the transmit power from the generator's column norms.
    """
    if generator is None:
        generator = build_generator("new")
    energy = 1.0 if constellation is None else float(np.mean(np.abs(constellation.points) ** 2))
    signal_power = energy * float(np.trace(generator.T @ generator)) / (2.0 * BLOCK_LEN)
    return signal_power / (2.0 * 10.0 ** (snr_db / 10.0))


def sigma2_to_snr_db(sigma2, constellation=None, generator=None):
    """Inverse of :func:`snr_to_sigma2`."""
    if generator is None:
        generator = build_generator("new")
    energy = 1.0 if constellation is None else float(np.mean(np.abs(constellation.points) ** 2))
    signal_power = energy * float(np.trace(generator.T @ generator)) / (2.0 * BLOCK_LEN)
    return 10.0 * np.log10(signal_power / (2.0 * sigma2))
