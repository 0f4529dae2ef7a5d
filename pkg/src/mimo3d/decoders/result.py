"""Decode result shared by all decoders."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..counters import OpCounters


@dataclass
class DecodeResult:
    """Outcome of one codeword decode.

    ``symbols`` are the eight decoded complex symbols in canonical order
    (de-permuted if a column switch was applied) and are exact constellation
    entries, so they compare bit-exact against transmitted symbols.
    ``metric`` is the squared residual of the returned symbols; registry
    decoders report it uniformly in the received-signal domain,
    ``||y - H_eq s||^2``.
    """

    symbols: np.ndarray
    metric: float
    counters: OpCounters
