"""Baseline depth-first sphere decoder with Schnorr-Euchner enumeration.

This is the classical 16-level real-valued tree search run to completion,
hence exactly ML: at each level the children are visited in ascending order
of distance from the conditional (Babai) center, the accumulated distance is
compared against an adaptive radius that shrinks at every improving leaf,
and the sibling loop is cut as soon as one child falls outside the sphere
(sound, because centered ordering makes the increments nondecreasing).
Per-node centering costs one division per expanded node; that is the price
the two-stage decoder's lookup tables avoid.
"""

from __future__ import annotations

import math

import numpy as np

from ..counters import OpCounters
from ..linalg import RANK_TOL, RankDeficiencyError, complex_from_interleaved
from ..modem import se_order
from .result import DecodeResult


def sd_baseline(z_tilde, r, constellation, counters=None):
    """Exact ML search of ``min ||z - R s||^2`` over all 16 real dimensions.

    ``r`` must be upper triangular with positive diagonal (Gram-Schmidt
    output).  Radius updates use strict less-than, so ties keep the first
    solution found.
    """
    c = counters if counters is not None else OpCounters()
    pam = constellation.pam
    rows = [tuple(row) for row in np.asarray(r, dtype=float)]
    z = [float(x) for x in np.asarray(z_tilde, dtype=float).ravel()]
    n = len(z)
    for i in range(n):
        if rows[i][i] <= RANK_TOL:
            raise RankDeficiencyError(f"degenerate R diagonal at {i}")

    s = [0.0] * n
    best = {"s": None, "d": math.inf}

    def descend(level, dist):
        row = rows[level]
        acc = z[level]
        for k in range(level + 1, n):
            acc -= row[k] * s[k]
        c.mults += n - 1 - level
        rll = row[level]
        center = acc / rll
        c.divs += 1
        for cand in se_order(center, pam):
            s[level] = cand
            c.tree_nodes += 1
            resid = acc - rll * cand
            d_new = dist + resid * resid
            c.mults += 2
            if d_new >= best["d"]:
                break  # later siblings are at least this far
            if level == 0:
                c.leaves += 1
                best["d"] = d_new
                best["s"] = s.copy()
            else:
                descend(level - 1, d_new)

    descend(n - 1, 0.0)
    return DecodeResult(
        symbols=complex_from_interleaved(np.array(best["s"])),
        metric=best["d"],
        counters=c,
    )
