"""Two-stage reduced-complexity ML decoder with parallel PAM decisions.

The equivalent channel of the "new" codeword ordering has an R factor whose
(1:4, 5:8) block is zero and whose two leading 4x4 diagonal blocks decouple
real from imaginary parts (see :mod:`.structure`).  The decode therefore
splits into:

* an outer depth-first tree search over the 8 real dimensions of the last
  four symbols of the decode order, with lookup-table S-E enumeration built
  once from the zero-forcing estimate (no per-node division), every child of
  a visited node evaluated against the adaptive radius;
* at each surviving leaf, four *parallel decisions*: independent 2-dim PAM
  searches for (s1R,s2R), (s1I,s2I), (s3R,s4R), (s3I,s4I) on the
  interference-cancelled targets v, each a one-level S-E loop over the
  "s2-role" symbol with conditional slicing of the "s1-role" symbol.  The
  four branches run in lockstep and share termination information: a branch
  stops when its ascending partial distance exceeds its own best, or when it
  plus the recorded distances of already-finished branches and the outer
  distance exceeds the sphere radius.

The worst case is sqrt(M)^8 = M^4 tree leaves with sqrt(M) candidates per
branch per leaf, i.e. O(M^4.5) against O(M^8) for plain exhaustive search.
An optional column switch permutes symbol groups (equivalently H_eq column
pairs) among the four structure-preserving orderings so that the least
reliable half, measured by the aggregate zero-forcing slicing error, lands
in the tree stage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..counters import OpCounters, charge_backsolve, charge_matvec, charge_qr
from ..linalg import (
    RANK_TOL,
    RankDeficiencyError,
    back_substitute,
    complex_from_interleaved,
    gram_schmidt_qr,
    tilde_interleave,
)
from ..modem import nearest_qam, se_order, slice_pam
from .result import DecodeResult

SWITCH_MODES = ("none", "4by4", "2by2")

# The four decode orders that keep the R zero structure intact
# (position -> canonical symbol index, 0-based).
_IDENTITY = (0, 1, 2, 3, 4, 5, 6, 7)
_HALF_SWAP = (4, 5, 6, 7, 0, 1, 2, 3)
_PAIR_SWAP = (2, 3, 0, 1, 6, 7, 4, 5)
_PAIR_AND_HALF_SWAP = (6, 7, 4, 5, 2, 3, 0, 1)
ALLOWED_ORDERS = (_IDENTITY, _HALF_SWAP, _PAIR_SWAP, _PAIR_AND_HALF_SWAP)

# (s1-role dim, s2-role dim) of each parallel branch, 0-based real indices:
# branch 0/1 handle re/im of the first symbol pair, 2/3 of the second.
BRANCH_DIMS = ((0, 2), (1, 3), (4, 6), (5, 7))


@dataclass(frozen=True)
class ColumnSwitchPlan:
    """Chosen decode order and the reliability metrics that selected it."""

    mode: str
    order: tuple = _IDENTITY
    epsilons: dict = field(default_factory=dict)

    @property
    def is_identity(self):
        return self.order == _IDENTITY


def zf_estimate(y_tilde, h_eq, qr=None):
    """Unconstrained (zero-forcing) symbol estimate ``H_eq^-1 y``.

    Solved through the Gram-Schmidt QR and back-substitution; returns the
    eight complex symbols.  Linear in the received vector.
    """
    if qr is None:
        qr = gram_schmidt_qr(h_eq)
    s_tilde = back_substitute(qr.r, qr.q.T @ np.asarray(y_tilde, dtype=float).ravel())
    return complex_from_interleaved(s_tilde)


def column_switch(s_zf, h_eq, mode, constellation):
    """Pick a structure-preserving decode order from ZF reliability.

    The aggregate slicing error ``eps_jk = sum |Q(s_zf) - s_zf|^2`` over a
    symbol group measures how well the linear estimate already resolves it.
    The worse half goes to the tree stage; in ``2by2`` mode the worse pair
    inside the tree half is additionally moved toward the root, mirrored in
    the other half to keep the R structure.  Returns ``h_eq`` with column
    pairs permuted accordingly plus the plan for de-permutation.
    """
    if mode not in SWITCH_MODES:
        raise ValueError(f"unknown switch mode {mode!r}; expected one of {SWITCH_MODES}")
    if mode == "none":
        return h_eq, ColumnSwitchPlan(mode="none")

    err = [abs(nearest_qam(v, constellation) - v) ** 2 for v in np.asarray(s_zf, dtype=complex)]
    e12, e34 = err[0] + err[1], err[2] + err[3]
    e56, e78 = err[4] + err[5], err[6] + err[7]
    e14, e58 = e12 + e34, e56 + e78
    if e14 < e58:
        order = _IDENTITY  # second half decoded by the tree
        if mode == "2by2" and e78 < e56:
            order = _PAIR_SWAP
    else:
        order = _HALF_SWAP  # first half decoded by the tree
        if mode == "2by2" and e34 < e12:
            order = _PAIR_AND_HALF_SWAP
    plan = ColumnSwitchPlan(
        mode=mode,
        order=order,
        epsilons={"e12": e12, "e34": e34, "e14": e14, "e56": e56, "e78": e78, "e58": e58},
    )
    if plan.is_identity:
        return h_eq, plan
    cols = [c for sym in order for c in (2 * sym, 2 * sym + 1)]
    return np.asarray(h_eq)[:, cols], plan


def compute_v(z_tilde, r, c, d):
    """Interference-cancelled targets for the four parallel branches.

    Given the decided tree symbols (real 4-vectors ``c`` and ``d``), removes
    their contribution from the first eight rotated receive dimensions:
    ``v = z[0:8] - R[0:8, 8:16] [c; d]``.  Linear in (c, d); with c = d = 0
    this is just ``z[0:8]``.
    """
    z = np.asarray(z_tilde, dtype=float).ravel()
    outer = np.concatenate([np.asarray(c, dtype=float).ravel(), np.asarray(d, dtype=float).ravel()])
    return z[:8] - np.asarray(r, dtype=float)[:8, 8:16] @ outer


def parallel_decisions(v, r, radius, d_outer, pam, counters=None, cross_branch_stop=True):
    """Four synchronized 2-dim PAM searches; returns ``(a_hat, b_hat, d_p)``.

    Branch b solves ``min (v1 - r11 s1 - r12 s2)^2 + (v2 - r22 s2)^2`` over
    the PAM grid using the entries of R named by ``BRANCH_DIMS[b]``: an S-E
    loop over s2 (ordered by the branch's own unconstrained estimate
    ``v2 / r22``, so partial distances ascend), with s1 obtained by slicing
    ``(v1 - r12 s2) / r11``.  Iteration j of all branches completes before
    iteration j+1 starts.  A branch stops when its partial distance exceeds
    its own best, or -- with ``cross_branch_stop`` -- when it plus the
    recorded distances of finished branches plus ``d_outer`` exceeds
    ``radius``.  Cross-branch stopping never changes the decode outcome:
    it can only inflate ``d_p`` at leaves the radius test rejects anyway.

    ``a_hat`` is [s1R, s1I, s2R, s2I] and ``b_hat`` [s3R, s3I, s4R, s4I];
    ``d_p`` is the sum of branch minima (infinite if a branch was cut off
    before any decision, which only happens at already-hopeless leaves).
    """
    c = counters if counters is not None else OpCounters()
    branches = []
    for i1, i2 in BRANCH_DIMS:
        r11 = float(r[i1][i1])
        r12 = float(r[i1][i2])
        r22 = float(r[i2][i2])
        if r11 <= RANK_TOL or r22 <= RANK_TOL:
            raise RankDeficiencyError("degenerate R diagonal in parallel decision")
        order = se_order(float(v[i2]) / r22, pam)
        c.divs += 1
        branches.append((float(v[i1]), float(v[i2]), r11, r12, r22, order))

    active = [True] * 4
    p = [math.inf] * 4          # best full branch distance so far
    done_d = [math.inf] * 4     # recorded branch distance once stopped
    tau = [0.0] * 4
    cand = [0.0] * 4
    sol1 = [None] * 4
    sol2 = [None] * 4
    for j in range(pam.order):
        for b in range(4):
            if not active[b]:
                continue
            v1, v2, r11, r12, r22, order = branches[b]
            cand[b] = order[j]
            c.branch_nodes[b] += 1
            t = v2 - r22 * cand[b]
            tau[b] = t * t
            c.mults += 2
            stop = tau[b] > p[b]
            if not stop and cross_branch_stop:
                others = 0.0
                for k in range(4):
                    if k != b and not active[k]:
                        others += done_d[k]
                stop = tau[b] + others + d_outer > radius
            if stop:
                active[b] = False
                done_d[b] = p[b]
        if not (active[0] or active[1] or active[2] or active[3]):
            break
        for b in range(4):
            if not active[b]:
                continue
            v1, v2, r11, r12, r22, order = branches[b]
            cross = r12 * cand[b]
            s1 = slice_pam((v1 - cross) / r11, pam)
            resid = v1 - r11 * s1 - cross
            d_full = resid * resid + tau[b]
            c.mults += 3
            c.divs += 1
            if d_full < p[b]:
                p[b] = d_full
                sol1[b] = s1
                sol2[b] = cand[b]
    for b in range(4):
        if active[b]:
            done_d[b] = p[b]

    d_p = done_d[0] + done_d[1] + done_d[2] + done_d[3]
    a_hat = (sol1[0], sol1[1], sol2[0], sol2[1])
    b_hat = (sol1[2], sol1[3], sol2[2], sol2[3])
    return a_hat, b_hat, d_p


def tree_search(z_tail, r_tail, tables, leaf_fn, counters, radius=math.inf):
    """Depth-first lookup-table S-E search over an upper-triangular tail.

    Levels run from n (root, last dimension) down to 1; the candidate order
    per level is fixed up front by ``tables``, so expanding a node costs no
    division -- but sibling distances are not guaranteed monotone, so every
    child of a visited node is evaluated (pruned children are skipped, not
    cut).  ``leaf_fn(s, d_leaf, radius) -> (d_p, payload)`` completes the
    candidate; the engine updates the radius with ``d_leaf + d_p`` (strict
    improvement only).

    Returns ``(best_s, best_payload, best_distance)``.
    """
    rows = [tuple(row) for row in np.asarray(r_tail, dtype=float)]
    z = [float(x) for x in np.asarray(z_tail, dtype=float).ravel()]
    n = len(z)
    s = [0.0] * n
    state = {"radius": float(radius), "best": None, "payload": None}

    def descend(level, dist):
        i = level - 1
        row = rows[i]
        acc = z[i]
        for k in range(level, n):
            acc -= row[k] * s[k]
        counters.mults += n - level
        rii = row[i]
        for cand in tables[i]:
            s[i] = cand
            counters.tree_nodes += 1
            resid = acc - rii * cand
            d_new = dist + resid * resid
            counters.mults += 2
            if d_new < state["radius"]:
                if level > 1:
                    descend(level - 1, d_new)
                else:
                    counters.leaves += 1
                    d_p, payload = leaf_fn(s, d_new, state["radius"])
                    d_total = d_new + d_p
                    if d_total < state["radius"]:
                        state["radius"] = d_total
                        state["best"] = s.copy()
                        state["payload"] = payload

    descend(n, 0.0)
    return state["best"], state["payload"], state["radius"]


def simplified_ml(y_tilde, h_eq, constellation, switch_mode="none", cross_branch_stop=True):
    """Full two-stage decode of one received codeword.

    ``h_eq`` must come from the "new" codeword ordering (the R zero
    structure is trusted, not re-verified).  All three switch modes return
    the same ML solution; they differ only in search effort.  Propagates
    :class:`~mimo3d.linalg.RankDeficiencyError` on degenerate channels.
    """
    if switch_mode not in SWITCH_MODES:
        raise ValueError(f"unknown switch mode {switch_mode!r}; expected one of {SWITCH_MODES}")
    counters = OpCounters()
    y = np.asarray(y_tilde, dtype=float).ravel()
    h_eq = np.asarray(h_eq, dtype=float)

    qr0 = gram_schmidt_qr(h_eq)
    charge_qr(counters, 16, 16)
    z0 = qr0.q.T @ y
    charge_matvec(counters, 16, 16)
    s_zf_tilde = back_substitute(qr0.r, z0)
    charge_backsolve(counters, 16)
    s_zf = complex_from_interleaved(s_zf_tilde)

    if switch_mode == "none":
        plan = ColumnSwitchPlan(mode="none")
        h_perm = h_eq
    else:
        h_perm, plan = column_switch(s_zf, h_eq, switch_mode, constellation)
        counters.mults += 16  # |Q(s_zf) - s_zf|^2 over 8 complex entries
    if plan.is_identity:
        qr_use, z = qr0, z0
        s_zf_perm = s_zf
    else:
        qr_use = gram_schmidt_qr(h_perm)
        charge_qr(counters, 16, 16)
        z = qr_use.q.T @ y
        charge_matvec(counters, 16, 16)
        s_zf_perm = s_zf[list(plan.order)]

    pam = constellation.pam
    zf_perm_tilde = tilde_interleave(s_zf_perm)
    tables = [se_order(float(zf_perm_tilde[8 + i]), pam) for i in range(8)]
    rows = [tuple(row) for row in qr_use.r]

    def leaf(s_outer, d_leaf, radius):
        v = compute_v(z, qr_use.r, s_outer[:4], s_outer[4:])
        counters.mults += 64
        a_hat, b_hat, d_p = parallel_decisions(
            v, rows, radius, d_leaf, pam,
            counters=counters, cross_branch_stop=cross_branch_stop,
        )
        return d_p, (a_hat, b_hat)

    best_outer, payload, _ = tree_search(z[8:], qr_use.r[8:, 8:], tables, leaf, counters)
    if best_outer is None:  # unreachable: the first leaf always beats an infinite radius
        raise RuntimeError("tree search returned no candidate")

    a_hat, b_hat = payload
    s_perm_tilde = np.empty(16)
    s_perm_tilde[0:4] = a_hat
    s_perm_tilde[4:8] = b_hat
    s_perm_tilde[8:16] = best_outer
    s_perm = complex_from_interleaved(s_perm_tilde)
    symbols = np.empty(8, dtype=complex)
    for pos, sym in enumerate(plan.order):
        symbols[sym] = s_perm[pos]

    resid = y - h_eq @ tilde_interleave(symbols)  # reporting only, not charged
    return DecodeResult(symbols=symbols, metric=float(resid @ resid), counters=counters)
