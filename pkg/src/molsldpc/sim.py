"""Binary erasure channel Monte Carlo with a peeling decoder.

Randomness is a counter-based SplitMix64 stream: trial ``t`` erases bit ``j``
iff ``draw53(trial_key(seed, t), j) < floor(eps * 2**53)``. A trial therefore
depends only on ``(seed, t)``, results do not depend on how trials are split
across workers, and every erasure probability reuses the same uniforms.
"""
from __future__ import annotations

import csv
import io
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._accel import USE_JIT
from .design import ParityCheckMatrix
from .errors import InconsistentWord

log = logging.getLogger(__name__)

DEFAULT_SEED = 20240601
CHUNK = 1 << 15

_TWO53 = float(1 << 53)


# --- channel and decoder -----------------------------------------------------------

def transmit_bec(codeword, epsilon: float, rng: np.random.Generator) -> np.ndarray:
    """Erase each bit independently with probability ``epsilon``; erasures are ``-1``."""
    word = np.asarray(codeword, dtype=np.int8).copy()
    word[rng.random(word.shape) < epsilon] = -1
    return word


def peel_decode(h: ParityCheckMatrix, received) -> tuple[np.ndarray, list[int]]:
    """Solve checks with a single erased bit until none is left.

    Returns the decoded word (``-1`` where unresolved) and the residual columns.
    """
    word = np.asarray(received, dtype=np.int64)
    if word.shape != (h.n_cols,):
        raise ValueError(f"received word must have length {h.n_cols}")
    out, status = _kernels.peel_word(h.col_ptr, h.col_idx, h.row_ptr, h.row_idx, word)
    if status:
        raise InconsistentWord("InconsistentWord: a fully known check has odd parity")
    return out.astype(np.int8), np.flatnonzero(out < 0).tolist()


def peel_random_order(h: ParityCheckMatrix, erased, rng: np.random.Generator) -> list[int]:
    """Residual of peeling with checks picked in random order (reference implementation)."""
    er = set(int(c) for c in erased)
    while True:
        rows = rng.permutation(h.n_rows)
        for r in rows:
            hit = [c for c in h.row(int(r)) if c in er]
            if len(hit) == 1:
                er.discard(hit[0])
                break
        else:
            return sorted(er)


# --- random stream -----------------------------------------------------------------

def seed_key(seed: int) -> np.uint64:
    # uint64 arithmetic wraps by design
    with np.errstate(over="ignore"):
        return np.uint64(_mix64_np(np.uint64(seed & 0xFFFFFFFFFFFFFFFF)))


def thresholds(epsilons) -> np.ndarray:
    eps = np.asarray(epsilons, dtype=np.float64)
    if ((eps < 0) | (eps > 1)).any():
        raise ValueError("erasure probabilities must lie in [0, 1]")
    thr = np.floor(eps * _TWO53)
    return np.array([min(int(t), 1 << 53) for t in thr], dtype=np.uint64)


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def uniforms(seed: int, t0: int, n_trials: int, n_bits: int) -> np.ndarray:
    """53-bit draws for trials ``t0..t0+n_trials-1`` (rows) and bits (columns)."""
    g = np.uint64(_kernels.GOLDEN)
    with np.errstate(over="ignore"):
        t = np.arange(t0 + 1, t0 + n_trials + 1, dtype=np.uint64)
        keys = _mix64_np(np.uint64(seed_key(seed)) + t * g)
        j = np.arange(1, n_bits + 1, dtype=np.uint64) * g
        return _mix64_np(keys[:, None] + j[None, :]) >> np.uint64(11)


def erasure_pattern(seed: int, trial: int, n_bits: int, epsilon: float) -> np.ndarray:
    return uniforms(seed, trial, 1, n_bits)[0] < thresholds([epsilon])[0]


# --- simulation --------------------------------------------------------------------

@dataclass(frozen=True)
class SimConfig:
    epsilons: tuple
    trials: int
    seed: int = DEFAULT_SEED
    det_cap: int = 12
    record_limit: int = 1000
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "epsilons", tuple(float(e) for e in self.epsilons))
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        for e in self.epsilons:
            if not 0.0 <= e <= 1.0:
                raise ValueError(f"erasure probability {e} outside [0, 1]")
        if self.det_cap < 1:
            raise ValueError("det_cap must be at least 1")


@dataclass
class EpsilonResult:
    epsilon: float
    trials: int
    n_bits: int
    bit_errors: int
    erased_bits: int
    word_failures: int
    detections: np.ndarray  # index s <= det_cap counts residuals of size s; last entry overflow
    failed_trials: list = field(default_factory=list)

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.trials * self.n_bits)

    @property
    def wer(self) -> float:
        return self.word_failures / self.trials

    def detection(self, size: int) -> int:
        return int(self.detections[size])

    @property
    def overflow(self) -> int:
        return int(self.detections[-1])


@dataclass
class SimResult:
    config: SimConfig
    n_bits: int
    per_eps: list
    backend: str

    def at(self, epsilon: float) -> EpsilonResult:
        for r in self.per_eps:
            if abs(r.epsilon - epsilon) < 1e-12:
                return r
        raise KeyError(epsilon)

    def to_csv(self) -> str:
        cap = self.config.det_cap
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(
            ["epsilon", "trials", "bit_errors", "ber", "word_failures"]
            + [f"det_{s}" for s in range(1, cap + 1)]
            + ["det_overflow"]
        )
        for r in self.per_eps:
            w.writerow(
                [repr(r.epsilon), r.trials, r.bit_errors, f"{r.ber:.6e}", r.word_failures]
                + [int(v) for v in r.detections[1:cap + 1]]
                + [r.overflow]
            )
        return buf.getvalue()


def _chunk_numba(h, thr, key, t0, n, cap, limit):
    return _kernels.simulate_chunk(
        h.col_ptr, h.col_idx, h.row_ptr, h.row_idx, thr, key, t0, n, cap, limit
    )


def _chunk_numpy(h, thr, seed, t0, n, cap, limit):
    """Vectorised batch peeling: resolve every singly-erased check at once until stuck."""
    dense = h.to_dense().astype(np.int32)
    E = thr.size
    u = uniforms(seed, t0, n, h.n_cols)
    bit_errors = np.zeros(E, np.int64)
    erased_bits = np.zeros(E, np.int64)
    failures = np.zeros(E, np.int64)
    hist = np.zeros((E, cap + 2), np.int64)
    recorded = np.full((E, max(limit, 1)), -1, np.int64)
    n_rec = np.zeros(E, np.int64)
    for e, t in enumerate(thr):
        er = u < t
        erased_bits[e] = int(er.sum())
        active = er.any(axis=1)
        while True:
            deg = er[active].astype(np.int32) @ dense.T
            solvable = ((deg == 1).astype(np.int32) @ dense) > 0
            resolve = solvable & er[active]
            if not resolve.any():
                break
            sub = er[active]
            sub &= ~resolve
            er[active] = sub
            active &= er.any(axis=1)
        left = er.sum(axis=1)
        bad = np.flatnonzero(left)
        bit_errors[e] = int(left.sum())
        failures[e] = bad.size
        sizes = np.minimum(left[bad], cap + 1)
        np.add.at(hist[e], sizes, 1)
        k = min(bad.size, limit)
        recorded[e, :k] = bad[:k] + t0
        n_rec[e] = k
    return bit_errors, erased_bits, failures, hist, recorded, n_rec


def run_simulation(h: ParityCheckMatrix, cfg: SimConfig, *, backend: str | None = None) -> SimResult:
    """All-zero-codeword trials; erasure recovery depends only on the erasure positions."""
    backend = backend or ("numba" if USE_JIT else "numpy")
    thr = thresholds(cfg.epsilons)
    key = seed_key(cfg.seed)
    chunks = [(t0, min(CHUNK, cfg.trials - t0)) for t0 in range(0, cfg.trials, CHUNK)]

    def job(chunk):
        t0, n = chunk
        if backend == "numba":
            return _chunk_numba(h, thr, key, t0, n, cfg.det_cap, cfg.record_limit)
        return _chunk_numpy(h, thr, cfg.seed, t0, n, cfg.det_cap, cfg.record_limit)

    if cfg.workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(job, chunks))
    else:
        results = [job(c) for c in chunks]

    E = thr.size
    per_eps = []
    for e in range(E):
        be = sum(int(r[0][e]) for r in results)
        eb = sum(int(r[1][e]) for r in results)
        wf = sum(int(r[2][e]) for r in results)
        hist = np.sum([r[3][e] for r in results], axis=0)
        failed: list = []
        for r in results:
            failed.extend(int(t) for t in r[4][e, : int(r[5][e])])
        per_eps.append(
            EpsilonResult(cfg.epsilons[e], cfg.trials, h.n_cols, be, eb, wf, hist,
                          failed[: cfg.record_limit])
        )
        log.info("eps=%g ber=%.3e failures=%d", cfg.epsilons[e], per_eps[-1].ber, wf)
    return SimResult(cfg, h.n_cols, per_eps, backend)


def replay_trial(h: ParityCheckMatrix, cfg: SimConfig, epsilon: float, trial: int) -> list[int]:
    """Residual of one trial, recomputed from its erasure pattern."""
    from .stopping.enumerate import maximal_stopping_subset

    pattern = erasure_pattern(cfg.seed, trial, h.n_cols, epsilon)
    return maximal_stopping_subset(h, np.flatnonzero(pattern))


def run_with_messages(h: ParityCheckMatrix, encoder, cfg: SimConfig) -> list[EpsilonResult]:
    """Slow reference path: random codewords through the real encoder and word decoder.

    Uses the same erasure uniforms as :func:`run_simulation`; message bits come
    from an independent generator seeded by ``cfg.seed``.
    """
    from .gf2 import encode

    rng = np.random.default_rng(cfg.seed)
    thr = thresholds(cfg.epsilons)
    out = []
    stats = np.zeros((thr.size, 3), dtype=np.int64)
    hists = np.zeros((thr.size, cfg.det_cap + 2), dtype=np.int64)
    for t in range(cfg.trials):
        cw = encode(encoder, rng.integers(0, 2, encoder.k))
        u = uniforms(cfg.seed, t, 1, h.n_cols)[0]
        for e, th in enumerate(thr):
            rx = cw.astype(np.int8).copy()
            er = u < th
            rx[er] = -1
            dec, residual = peel_decode(h, rx)
            known = dec >= 0
            if not np.array_equal(dec[known], cw[known]):
                raise AssertionError("peeling produced a wrong bit")
            stats[e] += (len(residual), int(er.sum()), 1 if residual else 0)
            if residual:
                hists[e, min(len(residual), cfg.det_cap + 1)] += 1
    for e, eps in enumerate(cfg.epsilons):
        out.append(EpsilonResult(eps, cfg.trials, h.n_cols, int(stats[e, 0]), int(stats[e, 1]),
                                 int(stats[e, 2]), hists[e]))
    return out


def parse_eps(text: str) -> list[float]:
    """``"0.05"``, ``"0.02,0.05"`` or ``"start:stop:step"`` (stop inclusive)."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"bad range {text!r}")
        start, stop, step = map(float, parts)
        if step <= 0:
            raise ValueError("step must be positive")
        n = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 12) for i in range(n)]
    return [float(v) for v in text.split(",") if v.strip()]
