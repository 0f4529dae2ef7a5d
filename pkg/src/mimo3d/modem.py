"""Square QAM constellations, PAM decomposition, slicing and S-E ordering.

A square M-QAM symbol is two independent sqrt(M)-PAM symbols, one on the
real axis and one on the imaginary axis.  Constellations are normalized to
unit average symbol energy, which pins the SNR definition used by the
channel module.  All tie handling is deterministic (toward the smaller PAM
level), so decoder outputs are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

SUPPORTED_ORDERS = (4, 16, 64)


@dataclass(frozen=True, eq=False)
class PamSet:
    """Ascending, zero-symmetric, uniformly spaced PAM levels."""

    order: int
    levels: np.ndarray  # ascending
    level_tuple: tuple = field(repr=False, default=())

    @property
    def spacing(self):
        return self.level_tuple[1] - self.level_tuple[0]


@dataclass(frozen=True, eq=False)
class QamConstellation:
    """Unit-average-energy square QAM as the product of a PamSet with itself."""

    order: int
    points: np.ndarray  # (M,), re-major then im order
    pam: PamSet

    @property
    def pam_order(self):
        return self.pam.order


def build_qam(m):
    """Build a unit-energy square M-QAM constellation, M in {4, 16, 64}.

    PAM levels are the odd integers {+-1, +-3, ...} scaled by
    ``1 / sqrt(2 (M - 1) / 3)``, which makes the mean of |point|^2 exactly 1.
    Point k is ``levels[k // n] + 1j * levels[k % n]`` with ``n = sqrt(M)``.
    """
    if m not in SUPPORTED_ORDERS:
        raise ValueError(f"unsupported constellation order {m}; expected one of {SUPPORTED_ORDERS}")
    n = math.isqrt(m)
    scale = 1.0 / math.sqrt(2.0 * (m - 1) / 3.0)
    levels = np.array([(2 * k - (n - 1)) * scale for k in range(n)])
    pam = PamSet(order=n, levels=levels, level_tuple=tuple(float(x) for x in levels))
    points = np.array([a + 1j * b for a in pam.level_tuple for b in pam.level_tuple])
    return QamConstellation(order=m, points=points, pam=pam)


def slice_index(x, pam):
    """Index of the PAM level nearest to x; ties go to the smaller level."""
    levels = pam.level_tuple
    n = len(levels)
    if x <= levels[0]:
        return 0
    if x >= levels[-1]:
        return n - 1
    k = int((x - levels[0]) // pam.spacing)
    k = min(k, n - 2)
    return k if (x - levels[k]) <= (levels[k + 1] - x) else k + 1


def slice_pam(x, pam):
    """Quantize x to the nearest PAM level (tie toward the smaller level)."""
    return pam.level_tuple[slice_index(x, pam)]


def se_order(estimate, pam):
    """All PAM levels ordered by ascending distance from the estimate.

    This is the Schnorr-Euchner visiting order for one decoding dimension:
    the first element is ``slice_pam(estimate)``, and the partial distances
    ``|estimate - level|`` are nondecreasing along the sequence.  Ties order
    the smaller level first.  Implemented as a two-pointer walk outward from
    the sliced level, which is exact for a uniform grid.
    """
    levels = pam.level_tuple
    n = len(levels)
    i0 = slice_index(estimate, pam)
    out = [levels[i0]]
    lo, hi = i0 - 1, i0 + 1
    while len(out) < n:
        if lo < 0:
            out.append(levels[hi])
            hi += 1
        elif hi >= n:
            out.append(levels[lo])
            lo -= 1
        else:
            # both distances are positive here; tie prefers the smaller level
            if (estimate - levels[lo]) <= (levels[hi] - estimate):
                out.append(levels[lo])
                lo -= 1
            else:
                out.append(levels[hi])
                hi += 1
    return tuple(out)


def nearest_qam(z, constellation):
    """Closest constellation point to z (componentwise PAM slicing)."""
    pam = constellation.pam
    return slice_pam(z.real, pam) + 1j * slice_pam(z.imag, pam)
