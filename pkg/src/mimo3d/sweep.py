"""Monte-Carlo SNR sweep: decoders side by side on identical instances.

Every trial derives its own random stream from ``(seed, trial, attempt)``,
draws symbols, one quasi-static channel realization and one unit-variance
noise block, and reuses them across the whole SNR grid (noise scaled per
point).  All configured decoders therefore see exactly the same
``(symbols, channel, noise)`` per trial, results are independent of worker
scheduling, and identical configs produce byte-identical CSV output.

A decoder raising :class:`~mimo3d.linalg.RankDeficiencyError` aborts the
trial; the trial is redrawn with the next attempt index and the event is
counted.
"""

from __future__ import annotations

import csv
import math
import multiprocessing
from dataclasses import dataclass, field, replace

import numpy as np

from .channel import derive_rng, make_equivalent, sample_channel, snr_to_sigma2
from .code import VARIANTS, encode_direct
from .decoders import get_decoder, verify_r_structure
from .decoders.simplified import SWITCH_MODES
from .linalg import RankDeficiencyError, tilde_interleave, vec_stack
from .modem import build_qam

MODULATIONS = {"qpsk": 4, "16qam": 16, "64qam": 64}

CSV_HEADER = (
    "decoder", "snr_db", "trials", "symbol_errors", "ser", "cer",
    "mean_visited_nodes", "mean_mults", "mean_divs", "ci95_ser",
)

MAX_ATTEMPTS = 64


@dataclass
class SweepConfig:
    modulation: str = "qpsk"
    snr_start: float = 0.0
    snr_stop: float = 20.0
    snr_step: float = 2.0
    trials: int = 1000
    decoders: tuple = ("sd-baseline", "simplified-cs2")
    seed: int = 0
    variant: str = "new"
    switch_mode: str = "none"
    out_path: str | None = None
    workers: int = 1

    def validate(self):
        if self.modulation not in MODULATIONS:
            raise ValueError(f"unknown modulation {self.modulation!r}")
        if self.snr_step <= 0:
            raise ValueError("snr_step must be positive")
        if self.snr_stop < self.snr_start:
            raise ValueError("snr_stop must be >= snr_start")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.decoders:
            raise ValueError("need at least one decoder")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.switch_mode not in SWITCH_MODES:
            raise ValueError(f"unknown switch mode {self.switch_mode!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        for name in self.decoders:
            try:
                get_decoder(name, self.switch_mode)
            except KeyError as err:
                raise ValueError(str(err)) from None
            if self.variant == "original" and name.startswith("simplified"):
                # the two-stage decoder needs the R zero structure of the
                # "new" ordering; running it on "original" would silently
                # lose ML optimality
                raise ValueError(f"decoder {name!r} requires variant 'new'")
        if self.modulation != "qpsk" and "bruteforce" in self.decoders:
            raise ValueError("bruteforce decoder is limited to qpsk")

    def snr_points(self):
        points = []
        k = 0
        while True:
            snr = self.snr_start + k * self.snr_step
            if snr > self.snr_stop + 1e-9:
                break
            points.append(snr)
            k += 1
        return tuple(points)


@dataclass
class SweepRow:
    decoder: str
    snr_db: float
    trials: int
    symbol_errors: int
    ser: float
    cer: float
    mean_visited_nodes: float
    mean_mults: float
    mean_divs: float
    ci95_ser: float


@dataclass
class _BlockSums:
    """Integer accumulators; summation order cannot affect the totals."""

    symbol_errors: np.ndarray
    codeword_errors: np.ndarray
    visited: np.ndarray
    mults: np.ndarray
    divs: np.ndarray
    resamples: int = 0

    @classmethod
    def zeros(cls, n_dec, n_snr):
        z = lambda: np.zeros((n_dec, n_snr), dtype=np.int64)
        return cls(z(), z(), z(), z(), z())

    def merge(self, other):
        self.symbol_errors += other.symbol_errors
        self.codeword_errors += other.codeword_errors
        self.visited += other.visited
        self.mults += other.mults
        self.divs += other.divs
        self.resamples += other.resamples
        return self


def _run_block(config, t_start, t_stop):
    m = MODULATIONS[config.modulation]
    constellation = build_qam(m)
    decoders = [get_decoder(name, config.switch_mode) for name in config.decoders]
    snrs = config.snr_points()
    sigmas = [math.sqrt(snr_to_sigma2(snr, constellation)) for snr in snrs]
    sums = _BlockSums.zeros(len(decoders), len(snrs))

    for trial in range(t_start, t_stop):
        for attempt in range(MAX_ATTEMPTS):
            rng = derive_rng(config.seed, trial, attempt)
            s_true = constellation.points[rng.integers(0, m, 8)]
            h = sample_channel(rng)
            w_unit = rng.standard_normal((2, 4)) + 1j * rng.standard_normal((2, 4))
            try:
                eq = make_equivalent(h, config.variant)
                x = encode_direct(s_true, config.variant)
                outcomes = []
                for snr_i, sigma in enumerate(sigmas):
                    y_tilde = tilde_interleave(vec_stack(h @ x + sigma * w_unit))
                    for dec_i, fn in enumerate(decoders):
                        outcomes.append((dec_i, snr_i, fn(y_tilde, eq.h_eq, constellation)))
            except RankDeficiencyError:
                sums.resamples += 1
                continue
            break
        else:
            raise RuntimeError(f"trial {trial}: resample limit {MAX_ATTEMPTS} reached")
        for dec_i, snr_i, res in outcomes:
            errs = int(np.sum(res.symbols != s_true))
            sums.symbol_errors[dec_i, snr_i] += errs
            sums.codeword_errors[dec_i, snr_i] += errs > 0
            sums.visited[dec_i, snr_i] += res.counters.visited_nodes
            sums.mults[dec_i, snr_i] += res.counters.mults
            sums.divs[dec_i, snr_i] += res.counters.divs
    return sums


def run_sweep(config):
    """Run the sweep; returns ``(rows, resample_count)``.

    Rows come out in (decoder, snr) order.  Trial-level parallelism via
    ``config.workers`` changes nothing but wall time: per-trial streams and
    integer accumulators make the result independent of scheduling.
    """
    config.validate()
    trials = config.trials
    workers = min(config.workers, trials)
    if workers <= 1:
        sums = _run_block(config, 0, trials)
    else:
        bounds = np.linspace(0, trials, workers + 1).astype(int)
        jobs = [(config, int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if a < b]
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(len(jobs)) as pool:
            parts = pool.starmap(_run_block, jobs)
        sums = parts[0]
        for part in parts[1:]:
            sums.merge(part)

    n_sym = 8 * trials
    rows = []
    for dec_i, name in enumerate(config.decoders):
        for snr_i, snr in enumerate(config.snr_points()):
            errors = int(sums.symbol_errors[dec_i, snr_i])
            ser = errors / n_sym
            rows.append(SweepRow(
                decoder=name,
                snr_db=snr,
                trials=trials,
                symbol_errors=errors,
                ser=ser,
                cer=int(sums.codeword_errors[dec_i, snr_i]) / trials,
                mean_visited_nodes=int(sums.visited[dec_i, snr_i]) / trials,
                mean_mults=int(sums.mults[dec_i, snr_i]) / trials,
                mean_divs=int(sums.divs[dec_i, snr_i]) / trials,
                ci95_ser=1.96 * math.sqrt(max(ser * (1.0 - ser), 0.0) / n_sym),
            ))
    return rows, sums.resamples


def _fmt(value):
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.6g}"


def write_csv(rows, path):
    """Serialize rows: fixed header, 6 significant digits, LF line endings."""
    with open(path, "w", newline="") as fh:
        fh.write(",".join(CSV_HEADER) + "\n")
        for r in rows:
            fh.write(",".join([
                r.decoder, _fmt(r.snr_db), _fmt(r.trials), _fmt(r.symbol_errors),
                _fmt(r.ser), _fmt(r.cer), _fmt(r.mean_visited_nodes),
                _fmt(r.mean_mults), _fmt(r.mean_divs), _fmt(r.ci95_ser),
            ]) + "\n")


def read_csv(path):
    rows = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            rows.append(SweepRow(
                decoder=rec["decoder"],
                snr_db=float(rec["snr_db"]),
                trials=int(rec["trials"]),
                symbol_errors=int(rec["symbol_errors"]),
                ser=float(rec["ser"]),
                cer=float(rec["cer"]),
                mean_visited_nodes=float(rec["mean_visited_nodes"]),
                mean_mults=float(rec["mean_mults"]),
                mean_divs=float(rec["mean_divs"]),
                ci95_ser=float(rec["ci95_ser"]),
            ))
    return rows


def summarize(rows):
    """Aligned text report: per-decoder results and reductions vs baseline.

    The comparison section (1 - decoder/sd-baseline, per SNR) is emitted
    only when sd-baseline rows and at least one other decoder are present.
    """
    if not rows:
        raise ValueError("no rows to summarize")
    lines = ["Per-decoder results", ""]
    lines.append(f"{'decoder':<16}{'snr_db':>8}{'ser':>12}{'cer':>12}"
                 f"{'nodes':>12}{'mults':>12}{'divs':>12}")
    for r in rows:
        lines.append(
            f"{r.decoder:<16}{r.snr_db:>8.6g}{r.ser:>12.6g}{r.cer:>12.6g}"
            f"{r.mean_visited_nodes:>12.6g}{r.mean_mults:>12.6g}{r.mean_divs:>12.6g}"
        )

    baseline = {r.snr_db: r for r in rows if r.decoder == "sd-baseline"}
    names = []
    for r in rows:
        if r.decoder != "sd-baseline" and r.decoder not in names:
            names.append(r.decoder)
    if baseline and names:
        lines += ["", "Reduction vs sd-baseline (positive = fewer operations)", ""]
        lines.append(f"{'decoder':<16}{'snr_db':>8}{'nodes %':>10}{'mults %':>10}"
                     f"{'divs %':>10}{'delta_ser':>12}")

        def reduction(value, base):
            return 100.0 * (1.0 - value / base) if base else 0.0

        for name in names:
            for r in rows:
                if r.decoder != name or r.snr_db not in baseline:
                    continue
                b = baseline[r.snr_db]
                lines.append(
                    f"{name:<16}{r.snr_db:>8.6g}"
                    f"{reduction(r.mean_visited_nodes, b.mean_visited_nodes):>10.1f}"
                    f"{reduction(r.mean_mults, b.mean_mults):>10.1f}"
                    f"{reduction(r.mean_divs, b.mean_divs):>10.1f}"
                    f"{r.ser - b.ser:>12.3g}"
                )
    return "\n".join(lines) + "\n"


def structure_sweep(trials, seed):
    """Check the R-structure claims over random channels for both variants.

    Returns ``(report_text, ok)`` where ``ok`` reflects only the "new"
    variant (the "original" block claim is expected to fail and is reported
    as such).  One channel realization per trial, shared by both variants.
    """
    worst = {v: {"r12_block": 0.0, "r11_zeros": 0.0, "r22_zeros": 0.0, "gram_cross": 0.0}
             for v in VARIANTS}
    for trial in range(trials):
        rng = derive_rng(seed, trial)
        h = sample_channel(rng)
        for variant in VARIANTS:
            eq = make_equivalent(h, variant)
            rep = verify_r_structure(eq.qr.r, variant, h_eq=eq.h_eq)
            scale = rep.threshold / 1e-9  # max |R| for this trial
            for claim, value in rep.checks.items():
                worst[variant][claim] = max(worst[variant][claim], value / scale)

    lines = [f"R-structure verification over {trials} random quasi-static channels",
             "(values are max |entry| / max |R|; claim passes below 1e-09)", ""]
    ok = True
    for variant in VARIANTS:
        # the original ordering loses the cross-block orthogonality but keeps
        # the within-block real/imaginary decoupling
        expect_fail = {"r12_block", "gram_cross"} if variant == "original" else set()
        lines.append(f"variant {variant}:")
        for claim, value in worst[variant].items():
            passed = value <= 1e-9
            if claim in expect_fail:
                status = "expected-fail" if not passed else "UNEXPECTED-PASS"
            else:
                status = "pass" if passed else "FAIL"
                if variant == "new" and not passed:
                    ok = False
            lines.append(f"  {claim:<12} {value:12.3e}  {status}")
    return "\n".join(lines) + "\n", ok
