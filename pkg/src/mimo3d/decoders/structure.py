"""Zero-structure checks on the equivalent channel and its R factor.

For the "new" codeword ordering over a quasi-static channel, the
Gram-Schmidt R factor of the 16x16 equivalent channel satisfies:

* the (rows 1-4, cols 5-8) block is null -- the first two symbols are
  uncorrelated with the second two in the rotated receive signal;
* inside the leading 4x4 block, entries (1,2), (1,4), (2,3), (3,4) vanish --
  real and imaginary parts of the first symbol pair decouple;
* the second 4x4 diagonal block has the same pattern.

These reduce the joint 8-symbol ML search to the two-stage decoder.  The
same inner products vanish already at the Gram level, ``<h_j, h_k> = 0`` for
columns j = 1..4, k = 5..8, which is what the checks below measure.  All
checks are report-only; the original symbol ordering is expected to violate
the block-zero claim.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Asserted-zero strictly-upper positions inside a 4x4 diagonal block.
BLOCK_ZERO_POSITIONS = ((0, 1), (0, 3), (1, 2), (2, 3))

REL_TOL = 1e-9


@dataclass(frozen=True)
class StructureReport:
    """Max absolute violation per claim, against a relative threshold."""

    variant: str
    threshold: float          # REL_TOL * max |R|
    r12_block: float          # max |R[0:4, 4:8]|
    r11_zeros: float          # max over BLOCK_ZERO_POSITIONS in R[0:4, 0:4]
    r22_zeros: float          # same pattern in R[4:8, 4:8]
    gram_cross: float | None  # max |<h_j, h_k>|, j in 0..3, k in 4..7 (if h_eq given)

    @property
    def checks(self):
        out = {
            "r12_block": self.r12_block,
            "r11_zeros": self.r11_zeros,
            "r22_zeros": self.r22_zeros,
        }
        if self.gram_cross is not None:
            out["gram_cross"] = self.gram_cross
        return out

    @property
    def ok(self):
        return all(v <= self.threshold for v in self.checks.values())

    @property
    def expected_ok(self):
        return self.variant == "new"


def verify_r_structure(r, variant="new", h_eq=None, rel_tol=REL_TOL):
    """Measure the asserted-zero entries of R (and optionally the Gram block).

    The threshold is ``rel_tol * max|R|``.  Never raises; callers decide what
    a failure means (for variant "new" it is a bug or a non-quasi-static
    channel, for "original" it is the expected outcome of the block claim).
    """
    r = np.asarray(r, dtype=float)
    threshold = rel_tol * float(np.abs(r).max())
    r12 = float(np.abs(r[0:4, 4:8]).max())
    r11 = max(abs(float(r[i, j])) for i, j in BLOCK_ZERO_POSITIONS)
    r22 = max(abs(float(r[4 + i, 4 + j])) for i, j in BLOCK_ZERO_POSITIONS)
    gram = None
    if h_eq is not None:
        h_eq = np.asarray(h_eq, dtype=float)
        gram = float(np.abs(h_eq[:, 0:4].T @ h_eq[:, 4:8]).max())
    return StructureReport(
        variant=variant,
        threshold=threshold,
        r12_block=r12,
        r11_zeros=r11,
        r22_zeros=r22,
        gram_cross=gram,
    )
