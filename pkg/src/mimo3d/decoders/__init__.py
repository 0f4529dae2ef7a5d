"""Decoder registry: every decoder shares one instrumentation contract.

Registry entries are callables ``fn(y_tilde, h_eq, constellation) ->
DecodeResult`` that perform their own counted preprocessing (QR, rotation,
linear estimation), so operation counts are comparable across decoders.
The reported metric is recomputed uniformly as ``||y - H_eq s||^2`` for the
returned symbols (uncharged; see :mod:`mimo3d.counters`).

Names: ``bruteforce``, ``sd-baseline``, ``simplified``, ``simplified-cs4``,
``simplified-cs2``.
"""

from __future__ import annotations

import numpy as np

from ..counters import OpCounters, charge_matvec, charge_qr
from ..linalg import gram_schmidt_qr, tilde_interleave
from .bruteforce import ml_bruteforce
from .result import DecodeResult
from .simplified import (
    ALLOWED_ORDERS,
    BRANCH_DIMS,
    SWITCH_MODES,
    ColumnSwitchPlan,
    column_switch,
    compute_v,
    parallel_decisions,
    simplified_ml,
    tree_search,
    zf_estimate,
)
from .sphere import sd_baseline
from .structure import BLOCK_ZERO_POSITIONS, StructureReport, verify_r_structure

__all__ = [
    "ALLOWED_ORDERS",
    "BLOCK_ZERO_POSITIONS",
    "BRANCH_DIMS",
    "SWITCH_MODES",
    "ColumnSwitchPlan",
    "DecodeResult",
    "StructureReport",
    "column_switch",
    "compute_v",
    "decoder_names",
    "get_decoder",
    "ml_bruteforce",
    "parallel_decisions",
    "register_decoder",
    "sd_baseline",
    "simplified_ml",
    "tree_search",
    "verify_r_structure",
    "zf_estimate",
]


def _reported_metric(result, y_tilde, h_eq):
    resid = np.asarray(y_tilde, dtype=float).ravel() - h_eq @ tilde_interleave(result.symbols)
    result.metric = float(resid @ resid)
    return result


def _decode_baseline(y_tilde, h_eq, constellation):
    counters = OpCounters()
    q, r = gram_schmidt_qr(h_eq)
    charge_qr(counters, 16, 16)
    z = q.T @ np.asarray(y_tilde, dtype=float).ravel()
    charge_matvec(counters, 16, 16)
    result = sd_baseline(z, r, constellation, counters=counters)
    return _reported_metric(result, y_tilde, h_eq)


def _make_simplified(mode):
    def decode(y_tilde, h_eq, constellation):
        return simplified_ml(y_tilde, h_eq, constellation, switch_mode=mode)

    decode.__name__ = f"decode_simplified_{mode}"
    return decode


REGISTRY = {
    "bruteforce": ml_bruteforce,
    "sd-baseline": _decode_baseline,
    "simplified": _make_simplified("none"),
    "simplified-cs4": _make_simplified("4by4"),
    "simplified-cs2": _make_simplified("2by2"),
}


def decoder_names():
    return tuple(REGISTRY)


def register_decoder(name, fn):
    """Add or replace a registry entry (used by tests and extensions)."""
    REGISTRY[name] = fn


def get_decoder(name, switch_mode="none"):
    """Resolve a registry name; bare ``simplified`` honors ``switch_mode``."""
    if name == "simplified" and switch_mode != "none":
        return _make_simplified(switch_mode)
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown decoder {name!r}; available: {sorted(REGISTRY)}") from None
